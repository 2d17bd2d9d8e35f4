//! Orbit partitions, subdegrees, block systems and primitivity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, PointSet};

/// Orbits of a group on `{1..degree}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub degree: usize,
    /// Orbits ordered by their smallest point.
    #[serde(serialize_with = "serialize_sets")]
    pub orbits: Vec<PointSet>,
    /// Orbit lengths, ascending.
    pub signature: Vec<usize>,
}

fn serialize_sets<S: serde::Serializer>(
    sets: &[PointSet],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(sets.len()))?;
    for set in sets {
        seq.serialize_element(&set.points())?;
    }
    seq.end()
}

impl OrbitPartition {
    /// Orbit containing the 1-based point `p`.
    pub fn orbit_of(&self, p: u32) -> Option<&PointSet> {
        self.orbits.iter().find(|o| o.contains(p))
    }

    /// Orbits of the given length.
    pub fn orbits_of_len(&self, len: usize) -> Vec<&PointSet> {
        self.orbits.iter().filter(|o| o.len() == len).collect()
    }
}

/// A nontrivial partition of the points into equal-size classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub degree: usize,
    /// Classes ordered by smallest point.
    pub classes: Vec<PointSet>,
}

impl BlockSystem {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size(&self) -> usize {
        self.classes.first().map_or(0, |c| c.len())
    }
}

pub fn orbit_partition(g: &PermGroup) -> OrbitPartition {
    let n = g.degree();
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for p in 0..n as u32 {
        if seen[p as usize] {
            continue;
        }
        let orb = g.orbit0(p);
        for &q in &orb {
            seen[q as usize] = true;
        }
        orbits.push(PointSet::from_zero_based(n, orb));
    }
    let mut signature: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
    signature.sort_unstable();
    OrbitPartition {
        degree: n,
        orbits,
        signature,
    }
}

/// Subdegrees of a transitive group, measured at point 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subdegrees {
    /// All suborbit lengths including the trivial 1, ascending.
    pub values: Vec<usize>,
}

impl Subdegrees {
    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// Suborbit lengths with the fixed point's own suborbit removed.
    pub fn nontrivial(&self) -> Vec<usize> {
        let mut v = self.values.clone();
        if let Some(i) = v.iter().position(|&d| d == 1) {
            v.remove(i);
        }
        v
    }
}

fn require_transitive(g: &PermGroup) -> Result<()> {
    if !g.is_transitive() {
        return Err(Error::Intransitive { degree: g.degree() });
    }
    Ok(())
}

pub fn subdegrees(g: &PermGroup) -> Result<Subdegrees> {
    require_transitive(g)?;
    let stab = g.point_stabilizer(1)?;
    Ok(Subdegrees {
        values: orbit_partition(&stab).signature,
    })
}

pub fn is_2_transitive(g: &PermGroup) -> bool {
    if !g.is_transitive() {
        return false;
    }
    if g.degree() <= 2 {
        return true;
    }
    let stab = g.point_stabilizer(1).expect("point 1 exists");
    stab.orbit0(1).len() == g.degree() - 1
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = x;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    /// Merges the classes; returns true if they were distinct.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// Finest block system in which the 1-based points `alpha` and `beta` share a
/// class (Atkinson's union-find closure). Returns `None` when that system is
/// the trivial one with a single class.
pub fn minimal_block_system(g: &PermGroup, alpha: u32, beta: u32) -> Result<Option<BlockSystem>> {
    require_transitive(g)?;
    let n = g.degree();
    for p in [alpha, beta] {
        if p == 0 || p as usize > n {
            return Err(Error::PointOutOfRange {
                point: p as usize,
                degree: n,
            });
        }
    }
    if alpha == beta {
        return Err(Error::InvalidInput(
            "minimal block needs two distinct points".into(),
        ));
    }
    let mut uf = UnionFind::new(n);
    uf.union(alpha - 1, beta - 1);
    let mut queue = vec![(alpha - 1, beta - 1)];
    while let Some((a, b)) = queue.pop() {
        for gen in g.generators() {
            let (x, y) = (gen.apply0(a), gen.apply0(b));
            let (rx, ry) = (uf.find(x), uf.find(y));
            if rx != ry {
                uf.union(rx, ry);
                queue.push((rx, ry));
            }
        }
    }
    let mut classes: Vec<Vec<u32>> = Vec::new();
    let mut root_to_class = vec![usize::MAX; n];
    for p in 0..n as u32 {
        let r = uf.find(p) as usize;
        if root_to_class[r] == usize::MAX {
            root_to_class[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[root_to_class[r]].push(p);
    }
    if classes.len() == 1 {
        return Ok(None);
    }
    Ok(Some(BlockSystem {
        degree: n,
        classes: classes
            .into_iter()
            .map(|c| PointSet::from_zero_based(n, c))
            .collect(),
    }))
}

/// Primitivity verdict; when imprimitive, a nontrivial block system witnessing it.
#[derive(Clone, Debug)]
pub enum Primitivity {
    Primitive,
    Imprimitive(BlockSystem),
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Primitivity::Primitive)
    }
}

/// Checks the minimal block of `{1, beta}` for every `beta`. Restricting
/// `beta` to representatives of the point-1 stabilizer's orbits is enough,
/// since the minimal block only depends on that orbit.
pub fn primitivity(g: &PermGroup) -> Result<Primitivity> {
    require_transitive(g)?;
    if g.degree() <= 2 {
        return Ok(Primitivity::Primitive);
    }
    let stab = g.point_stabilizer(1)?;
    let part = orbit_partition(&stab);
    for orb in &part.orbits {
        let beta = orb.min_point().unwrap();
        if beta == 1 {
            continue;
        }
        if let Some(system) = minimal_block_system(g, 1, beta)? {
            return Ok(Primitivity::Imprimitive(system));
        }
    }
    Ok(Primitivity::Primitive)
}

pub fn is_primitive(g: &PermGroup) -> Result<bool> {
    Ok(primitivity(g)?.is_primitive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            n,
            gens.iter()
                .map(|s| Permutation::parse(s, n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn trivial_group_has_singleton_orbits() {
        let part = orbit_partition(&PermGroup::trivial(5));
        assert_eq!(part.signature, vec![1; 5]);
    }

    #[test]
    fn four_cycle_is_imprimitive() {
        let g = group(4, &["(1,2,3,4)"]);
        match primitivity(&g).unwrap() {
            Primitivity::Imprimitive(sys) => {
                assert_eq!(sys.classes.len(), 2);
                assert_eq!(sys.classes[0].points(), vec![1, 3]);
                assert_eq!(sys.classes[1].points(), vec![2, 4]);
            }
            Primitivity::Primitive => panic!("C4 is imprimitive"),
        }
    }

    #[test]
    fn symmetric_group_is_two_transitive() {
        for n in 2..7 {
            let cyc: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let g = group(n, &["(1,2)", &format!("({})", cyc.join(","))]);
            assert!(is_2_transitive(&g));
            assert_eq!(subdegrees(&g).unwrap().values, vec![1, n - 1]);
        }
    }

    #[test]
    fn intransitive_input_is_rejected() {
        let g = group(4, &["(1,2)"]);
        assert!(matches!(subdegrees(&g), Err(Error::Intransitive { .. })));
        assert!(primitivity(&g).is_err());
        assert!(!is_2_transitive(&g));
    }
}
