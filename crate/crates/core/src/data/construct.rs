use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, PointSet};

/// Action of `g` on a `g`-invariant list of distinct sets; the set at index
/// `i` becomes point `i + 1`. Returns the image of each generator, in order.
pub fn induced_action(g: &PermGroup, domain: &[PointSet]) -> Result<PermGroup> {
    let index: HashMap<&PointSet, u32> = domain
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i as u32))
        .collect();
    if index.len() != domain.len() {
        return Err(Error::InvalidInput(
            "induced action domain has repeated sets".into(),
        ));
    }
    let mut gens = Vec::with_capacity(g.generators().len());
    for x in g.generators() {
        let mut images = Vec::with_capacity(domain.len());
        for s in domain {
            let img = s.image(x);
            match index.get(&img) {
                Some(&j) => images.push(j),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "domain not invariant: {s} maps outside"
                    )))
                }
            }
        }
        gens.push(Permutation::from_zero_based_unchecked(images));
    }
    PermGroup::new(domain.len(), gens)
}

/// Action of `g` on one of its orbits (points relabelled `1..` in increasing order).
pub fn restrict_to_orbit(g: &PermGroup, orbit: &PointSet) -> Result<PermGroup> {
    let n = g.degree();
    let domain: Vec<PointSet> = orbit
        .points()
        .into_iter()
        .map(|p| PointSet::from_points(n, &[p]))
        .collect::<Result<_>>()?;
    induced_action(g, &domain)
}

/// Product action of `K wr S_2` on ordered pairs. Pair `(a, b)` of 1-based
/// component points is point `(a - 1) * n + b`, where `n` is the component degree.
pub fn wreath_product_action(k: &PermGroup, m: usize) -> Result<PermGroup> {
    if m != 2 {
        return Err(Error::Unsupported(format!(
            "wreath product with m = {m}; only m = 2 is implemented"
        )));
    }
    if !k.is_transitive() {
        return Err(Error::Intransitive { degree: k.degree() });
    }
    let n = k.degree() as u32;
    let pair = |a: u32, b: u32| a * n + b;
    let mut gens = Vec::new();
    for x in k.generators() {
        if x.is_identity() {
            continue;
        }
        let t = x.table();
        let first = (0..n * n)
            .map(|p| pair(t[(p / n) as usize], p % n))
            .collect();
        gens.push(Permutation::from_zero_based_unchecked(first));
        let second = (0..n * n)
            .map(|p| pair(p / n, t[(p % n) as usize]))
            .collect();
        gens.push(Permutation::from_zero_based_unchecked(second));
    }
    let swap = (0..n * n).map(|p| pair(p % n, p / n)).collect();
    gens.push(Permutation::from_zero_based_unchecked(swap));
    PermGroup::new((n * n) as usize, gens)
}
