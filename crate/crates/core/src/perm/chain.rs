//! Deterministic Schreier–Sims.
//!
//! A [`StabChain`] for `G` is a base `b_0, b_1, ...` together with, for each
//! level `i`, the strong generators `S_i` fixing `b_0..b_{i-1}`, the orbit of
//! `b_i` under `<S_i>`, and a transversal `u_p` (mapping `b_i` to `p`) for
//! every orbit point. Products are left-to-right, so a Schreier generator at
//! level `i` is `u_p * s * u_{p^s}^-1`.

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Level {
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// Indexed by 0-based point: `(u_p, u_p^-1)` for orbit points.
    transversal: Vec<Option<Box<(Permutation, Permutation)>>>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Self {
        let mut transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[base as usize] = Some(Box::new((id.clone(), id)));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    /// 1-based base point of this level.
    pub fn base_point(&self) -> u32 {
        self.base + 1
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Fundamental orbit, 1-based, in discovery order.
    pub fn orbit(&self) -> Vec<u32> {
        self.orbit.iter().map(|&p| p + 1).collect()
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    /// Coset representative carrying the base point to the 1-based point `p`.
    pub fn representative(&self, p: u32) -> Option<&Permutation> {
        self.transversal
            .get(p as usize - 1)
            .and_then(|t| t.as_ref())
            .map(|t| &t.0)
    }

    fn add_generator(&mut self, g: Permutation) {
        let start = self.orbit.len();
        // New generator applied to the existing orbit, then closure over all
        // generators for the newly discovered points.
        for idx in 0..start {
            let p = self.orbit[idx];
            self.visit(p, &g);
        }
        self.gens.push(g);
        let mut idx = start;
        while idx < self.orbit.len() {
            let p = self.orbit[idx];
            for gi in 0..self.gens.len() {
                let g = self.gens[gi].clone();
                self.visit(p, &g);
            }
            idx += 1;
        }
    }

    fn visit(&mut self, p: u32, g: &Permutation) {
        let q = g.apply0(p);
        if self.transversal[q as usize].is_none() {
            let u = self.transversal[p as usize].as_ref().unwrap().0.then(g);
            let inv = u.inverse();
            self.transversal[q as usize] = Some(Box::new((u, inv)));
            self.orbit.push(q);
        }
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Chain of the trivial group.
    pub fn trivial(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    /// Runs deterministic Schreier–Sims on `gens`.
    ///
    /// `base_hint` (0-based points) is used as a prefix of the base; further
    /// base points are the smallest points moved by the element that needs
    /// them. When `known_order` is given the completion loop stops as soon as
    /// the product of the fundamental orbit lengths reaches it; that product
    /// never exceeds the order of the generated group and equals it only for
    /// a complete chain, so the stop is exact.
    pub fn build(
        degree: usize,
        gens: &[Permutation],
        base_hint: &[u32],
        known_order: Option<&BigUint>,
    ) -> Self {
        let mut chain = StabChain::trivial(degree);
        for &b in base_hint {
            if !chain.levels.iter().any(|l| l.base == b) {
                chain.levels.push(Level::new(degree, b));
            }
        }
        let mut deepest = None;
        for g in gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if g.is_identity() {
                continue;
            }
            let depth = chain.install(g.clone());
            deepest = Some(deepest.map_or(depth, |d: usize| d.max(depth)));
        }
        if let Some(d) = deepest {
            chain.complete(d, known_order);
        }
        chain
    }

    /// Adds `g` to the group described by the chain; returns false if `g`
    /// was already a member.
    pub fn insert(&mut self, g: &Permutation, known_order: Option<&BigUint>) -> bool {
        let (residue, level) = self.strip(g, 0);
        if level == self.levels.len() && residue.is_identity() {
            return false;
        }
        let depth = self.install(residue);
        self.complete(depth, known_order);
        true
    }

    /// Adds a non-identity element as a strong generator on every level
    /// whose base prefix it fixes, extending the base if needed. Returns the
    /// deepest level it was added to.
    fn install(&mut self, g: Permutation) -> usize {
        let mut depth = 0;
        while depth < self.levels.len()
            && g.apply0(self.levels[depth].base) == self.levels[depth].base
        {
            depth += 1;
        }
        if depth == self.levels.len() {
            let moved = g.smallest_moved_point().expect("identity installed") - 1;
            self.levels.push(Level::new(self.degree, moved));
        }
        for l in 0..=depth {
            self.levels[l].add_generator(g.clone());
        }
        depth
    }

    fn complete(&mut self, start: usize, known_order: Option<&BigUint>) {
        if self.reached(known_order) {
            return;
        }
        let mut i = start as isize;
        while i >= 0 {
            let lvl = i as usize;
            let mut jumped = None;
            'scan: for oi in 0..self.levels[lvl].orbit.len() {
                let p = self.levels[lvl].orbit[oi];
                for si in 0..self.levels[lvl].gens.len() {
                    let level = &self.levels[lvl];
                    let s = &level.gens[si];
                    let q = s.apply0(p);
                    let up = &level.transversal[p as usize].as_ref().unwrap().0;
                    let uq_inv = &level.transversal[q as usize].as_ref().unwrap().1;
                    let h = up.then(s).then(uq_inv);
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, fail) = self.strip(&h, lvl + 1);
                    if fail < self.levels.len() || !residue.is_identity() {
                        if fail == self.levels.len() {
                            let moved = residue.smallest_moved_point().unwrap() - 1;
                            self.levels.push(Level::new(self.degree, moved));
                        }
                        for l in lvl + 1..=fail {
                            self.levels[l].add_generator(residue.clone());
                        }
                        if self.reached(known_order) {
                            return;
                        }
                        jumped = Some(fail);
                        break 'scan;
                    }
                }
            }
            match jumped {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Deterministic completeness pass: sifts every Schreier generator on
    /// every level and extends the chain where one fails. Use after a build
    /// whose `known_order` came from an untrusted source; a chain that is
    /// already complete is left unchanged.
    pub fn verify(&mut self) {
        if !self.levels.is_empty() {
            self.complete(self.levels.len() - 1, None);
        }
    }

    fn reached(&self, known_order: Option<&BigUint>) -> bool {
        known_order.is_some_and(|t| &self.order() == t)
    }

    /// Sifts `g` starting at `start`. Returns the residue and the level at
    /// which sifting stopped (`levels.len()` when it went all the way).
    fn strip(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.apply0(level.base);
            match &level.transversal[beta as usize] {
                Some(t) => {
                    if beta != level.base {
                        h = h.then(&t.1);
                    }
                }
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, level) = self.strip(g, 0);
        level == self.levels.len() && residue.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// 1-based base points.
    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base + 1).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strong generators of the whole group (level 0).
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels
            .first()
            .map(|l| l.gens.as_slice())
            .unwrap_or(&[])
    }

    /// Chain of the pointwise stabilizer of the first `depth` base points.
    pub fn suffix(&self, depth: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[depth.min(self.levels.len())..].to_vec(),
        }
    }

    /// Enumerates all elements (use only for small groups).
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for x in &out {
                for &p in &level.orbit {
                    let u = &level.transversal[p as usize].as_ref().unwrap().0;
                    next.push(x.then(u));
                }
            }
            out = next;
        }
        out
    }
}
