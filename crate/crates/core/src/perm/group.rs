use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{Permutation, PointSet, StabChain};

/// Default bound on the number of sets explored by [`PermGroup::set_orbit`].
pub const DEFAULT_ORBIT_CAP: usize = 2_000_000;

/// A finitely generated permutation group with a lazily built stabilizer chain.
///
/// The chain is computed at most once (on first use) and the group is
/// read-only afterwards, so a `PermGroup` can be shared between threads.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
    label: Option<String>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
            label: self.label.clone(),
        }
    }
}

/// An orbit of sets, in breadth-first order, with its Schreier tree.
#[derive(Clone, Debug)]
pub struct SetOrbit {
    pub elements: Vec<PointSet>,
    index: HashMap<PointSet, u32>,
    /// `(parent index, generator index)`; the root points at itself.
    tree: Vec<(u32, u32)>,
}

impl SetOrbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, s: &PointSet) -> Option<usize> {
        self.index.get(s).map(|&i| i as usize)
    }

    pub fn contains(&self, s: &PointSet) -> bool {
        self.index.contains_key(s)
    }

    /// Element of the group carrying the root to element `i`, as a product of generators.
    fn representative(&self, gens: &[Permutation], i: usize) -> Permutation {
        let degree = gens[0].degree();
        let mut word = Vec::new();
        let mut cur = i;
        while self.tree[cur].0 as usize != cur {
            word.push(self.tree[cur].1 as usize);
            cur = self.tree[cur].0 as usize;
        }
        word.iter()
            .rev()
            .fold(Permutation::identity(degree), |acc, &g| acc.then(&gens[g]))
    }
}

impl PermGroup {
    /// Group generated by `generators` (all of the given degree). An empty
    /// list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
            label: None,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("positive degree")
    }

    /// Builds the group from generators and an already known chain.
    pub(crate) fn from_chain(
        degree: usize,
        generators: Vec<Permutation>,
        chain: StabChain,
    ) -> Self {
        let g = PermGroup::new(degree, generators).expect("valid generators");
        let _ = g.chain.set(chain);
        g
    }

    /// Group whose chain is built with a claimed order as the stopping rule,
    /// then completed by a deterministic verification pass; errors if the
    /// generators give a different order.
    pub fn with_known_order(
        degree: usize,
        generators: Vec<Permutation>,
        order: &BigUint,
    ) -> Result<Self> {
        let g = PermGroup::new(degree, generators)?;
        let mut chain = StabChain::build(degree, &g.generators, &[], Some(order));
        chain.verify();
        let _ = g.chain.set(chain);
        let got = g.order();
        if &got != order {
            return Err(Error::Verification(format!(
                "group order is {got}, expected {order}"
            )));
        }
        Ok(g)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[], None))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as `u128`; panics if the order does not fit.
    pub fn order_u128(&self) -> u128 {
        self.order().to_u128().expect("group order exceeds u128")
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: x.degree(),
            });
        }
        Ok(self.chain().contains(x))
    }

    fn check_point(&self, p: u32) -> Result<()> {
        if p == 0 || p as usize > self.degree {
            return Err(Error::PointOutOfRange {
                point: p as usize,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Orbit of the 1-based point `p`.
    pub fn orbit(&self, p: u32) -> Result<PointSet> {
        self.check_point(p)?;
        Ok(PointSet::from_zero_based(self.degree, self.orbit0(p - 1)))
    }

    pub(crate) fn orbit0(&self, p: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[p as usize] = true;
        let mut orbit = vec![p];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply0(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Orbit of `p` with, for each orbit point `q`, an element mapping `p` to `q`.
    pub fn orbit_transversal(&self, p: u32) -> Result<Vec<(u32, Permutation)>> {
        self.check_point(p)?;
        let mut reps: Vec<Option<Permutation>> = vec![None; self.degree];
        reps[p as usize - 1] = Some(Permutation::identity(self.degree));
        let mut order = vec![p - 1];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for g in &self.generators {
                let y = g.apply0(x);
                if reps[y as usize].is_none() {
                    reps[y as usize] = Some(reps[x as usize].as_ref().unwrap().then(g));
                    order.push(y);
                }
            }
            i += 1;
        }
        Ok(order
            .into_iter()
            .map(|q| (q + 1, reps[q as usize].take().unwrap()))
            .collect())
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit0(0).len() == self.degree
    }

    /// `{x in G : x(p) = p}`, with its chain taken from a chain of `G` based at `p`.
    pub fn point_stabilizer(&self, p: u32) -> Result<PermGroup> {
        self.check_point(p)?;
        let order = self.order();
        let chain = StabChain::build(
            self.degree,
            self.chain().strong_generators(),
            &[p - 1],
            Some(&order),
        );
        let sub = chain.suffix(1);
        let gens = sub.strong_generators().to_vec();
        Ok(PermGroup::from_chain(self.degree, gens, sub))
    }

    /// Pointwise stabilizer of a sequence of points.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Result<PermGroup> {
        for &p in points {
            self.check_point(p)?;
        }
        let order = self.order();
        let hint: Vec<u32> = points.iter().map(|p| p - 1).collect();
        let chain = StabChain::build(
            self.degree,
            self.chain().strong_generators(),
            &hint,
            Some(&order),
        );
        // Hint points that were already in the base collapse; count distinct ones.
        let mut distinct = hint.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let sub = chain.suffix(distinct.len());
        let gens = sub.strong_generators().to_vec();
        Ok(PermGroup::from_chain(self.degree, gens, sub))
    }

    /// Orbit of the set `b` by breadth-first closure, bounded by `cap` elements.
    pub fn set_orbit(&self, b: &PointSet, cap: usize) -> Result<SetOrbit> {
        if b.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: b.degree(),
            });
        }
        let mut elements = vec![b.clone()];
        let mut index = HashMap::new();
        index.insert(b.clone(), 0u32);
        let mut tree = vec![(0u32, 0u32)];
        let mut i = 0;
        while i < elements.len() {
            for (gi, g) in self.generators.iter().enumerate() {
                let img = elements[i].image(g);
                if !index.contains_key(&img) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    index.insert(img.clone(), elements.len() as u32);
                    elements.push(img);
                    tree.push((i as u32, gi as u32));
                }
            }
            i += 1;
        }
        Ok(SetOrbit {
            elements,
            index,
            tree,
        })
    }

    /// Size of the orbit of `b`, or [`Error::CapExceeded`].
    pub fn set_orbit_len(&self, b: &PointSet, cap: usize) -> Result<usize> {
        self.set_orbit(b, cap).map(|o| o.len())
    }

    /// `{x in G : x(b) = b}` via Schreier generators along the set orbit.
    pub fn setwise_stabilizer(&self, b: &PointSet, cap: usize) -> Result<PermGroup> {
        let orbit = self.set_orbit(b, cap)?;
        Ok(self.stabilizer_from_orbit(&orbit))
    }

    /// Stabilizer of the root of an orbit computed by [`PermGroup::set_orbit`].
    pub fn stabilizer_from_orbit(&self, orbit: &SetOrbit) -> PermGroup {
        let order = self.order();
        let len = BigUint::from(orbit.len());
        assert!(
            (&order % &len).is_zero(),
            "orbit length does not divide the group order"
        );
        let target = &order / &len;
        let mut chain = StabChain::trivial(self.degree);
        let mut gens = Vec::new();
        'outer: for i in 0..orbit.len() {
            if chain.order() == target {
                break;
            }
            let mut ui: Option<Permutation> = None;
            for (gi, g) in self.generators.iter().enumerate() {
                let img = orbit.elements[i].image(g);
                let j = orbit.index[&img] as usize;
                if orbit.tree[j] == (i as u32, gi as u32) && j != 0 {
                    continue;
                }
                let u = ui.get_or_insert_with(|| orbit.representative(&self.generators, i));
                let uj = orbit.representative(&self.generators, j);
                let s = u.then(g).then(&uj.inverse());
                if s.is_identity() {
                    continue;
                }
                if chain.insert(&s, Some(&target)) {
                    gens.push(s);
                    if chain.order() == target {
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(
            chain.order(),
            target,
            "Schreier generators must generate the stabilizer"
        );
        PermGroup::from_chain(self.degree, gens, chain)
    }

    /// Element of the group reproducible from `seed`.
    pub fn random_element(&self, seed: u64) -> Permutation {
        RandomElements::new(self, seed).next_element()
    }

    /// Product-replacement stream of random elements.
    pub fn random_elements(&self, seed: u64) -> RandomElements {
        RandomElements::new(self, seed)
    }

    /// All elements; intended for groups of modest order.
    pub fn elements(&self) -> Vec<Permutation> {
        self.chain().elements()
    }

    /// Conjugate group `x^-1 G x`.
    pub fn conjugate_by(&self, x: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|g| x.conjugate(g)).collect();
        PermGroup::new(self.degree, gens).expect("same degree")
    }
}

/// Product replacement: a state of at least 10 group elements plus an
/// accumulator, scrambled before the first output.
pub struct RandomElements {
    state: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

impl RandomElements {
    fn new(g: &PermGroup, seed: u64) -> Self {
        let mut state: Vec<Permutation> = g.generators.clone();
        let mut i = 0;
        while state.len() < 10 {
            state.push(g.generators[i % g.generators.len()].clone());
            i += 1;
        }
        let mut r = RandomElements {
            state,
            acc: Permutation::identity(g.degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..50 {
            r.next_element();
        }
        r
    }

    pub fn next_element(&mut self) -> Permutation {
        let n = self.state.len();
        let s = self.rng.gen_range(0..n);
        let mut t = self.rng.gen_range(0..n - 1);
        if t >= s {
            t += 1;
        }
        let x = if self.rng.gen_bool(0.5) {
            self.state[s].then(&self.state[t])
        } else {
            self.state[s].then(&self.state[t].inverse())
        };
        self.state[s] = x;
        self.acc = self.acc.then(&self.state[s]);
        self.acc.clone()
    }
}

impl Iterator for RandomElements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        Some(self.next_element())
    }
}
