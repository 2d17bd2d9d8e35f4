//! Incidence structures, design axioms, and the flag / half-flag predicates.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::action::orbit_partition;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, PointSet, DEFAULT_ORBIT_CAP};

/// Largest `v` for which λ is verified by counting every pair.
pub const PAIR_COUNT_LIMIT: usize = 400;

/// Points `1..=v` and a list of blocks (repeats allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    v: usize,
    blocks: Vec<PointSet>,
}

impl IncidenceStructure {
    pub fn new(v: usize, blocks: Vec<PointSet>) -> Result<Self> {
        if v == 0 {
            return Err(Error::InvalidInput("v must be positive".into()));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidInput(
                "an incidence structure needs at least one block".into(),
            ));
        }
        if let Some(b) = blocks.iter().find(|b| b.degree() != v) {
            return Err(Error::DegreeMismatch {
                left: v,
                right: b.degree(),
            });
        }
        Ok(IncidenceStructure { v, blocks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    /// Indices of blocks containing the 1-based point `p`.
    pub fn blocks_through(&self, p: u32) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.blocks[i].contains(p))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("v {}\n", self.v);
        for b in &self.blocks {
            let _ = writeln!(s, "block {}", b.to_list_string());
        }
        s
    }

    /// Parses `v <n>` followed by `block <points>` lines; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut v = None;
        let mut blocks = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match key {
                "v" => {
                    let n: usize = rest
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("line {}: bad v {rest:?}", i + 1)))?;
                    if v.replace(n).is_some() {
                        return Err(Error::Parse(format!("line {}: v given twice", i + 1)));
                    }
                }
                "block" => {
                    let n =
                        v.ok_or_else(|| Error::Parse(format!("line {}: block before v", i + 1)))?;
                    blocks.push(PointSet::parse(rest, n)?);
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown keyword {other:?}",
                        i + 1
                    )))
                }
            }
        }
        let v = v.ok_or_else(|| Error::Parse("missing v line".into()))?;
        IncidenceStructure::new(v, blocks)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

/// Union of the full orbits of the base blocks, in orbit order.
pub fn from_base_blocks(
    g: &PermGroup,
    bases: &[PointSet],
    cap: usize,
) -> Result<IncidenceStructure> {
    let mut blocks = Vec::new();
    for b in bases {
        blocks.extend(g.set_orbit(b, cap)?.elements);
    }
    IncidenceStructure::new(g.degree(), blocks)
}

/// The `(v, b, r, k, λ)` profile of a verified 2-design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
    /// `2 < k < v - 1`
    pub nontrivial: bool,
    /// `b >= v`
    pub fisher: bool,
}

impl std::fmt::Display for DesignParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "2-({},{},{})", self.v, self.k, self.lambda)
    }
}

/// Pair coverage counts `c[a * v + b]` for `a < b` (0-based).
fn pair_counts(d: &IncidenceStructure) -> Result<Vec<u32>> {
    let v = d.v;
    if v > PAIR_COUNT_LIMIT {
        return Err(Error::Unsupported(format!(
            "pair counting is implemented for v <= {PAIR_COUNT_LIMIT}, got {v}"
        )));
    }
    let mut counts = vec![0u32; v * v];
    let mut pts = Vec::with_capacity(v);
    for b in &d.blocks {
        pts.clear();
        pts.extend(b.iter0());
        for (i, &x) in pts.iter().enumerate() {
            let row = &mut counts[x as usize * v..(x as usize + 1) * v];
            for &y in &pts[i + 1..] {
                row[y as usize] += 1;
            }
        }
    }
    Ok(counts)
}

/// Constant pair coverage, or an axiom error naming two pairs that differ.
fn constant_lambda(d: &IncidenceStructure) -> Result<u64> {
    let v = d.v;
    let counts = pair_counts(d)?;
    let mut lambda: Option<(u32, usize, usize)> = None;
    for a in 0..v {
        for b in a + 1..v {
            let c = counts[a * v + b];
            match lambda {
                None => lambda = Some((c, a, b)),
                Some((l, a0, b0)) if l != c => {
                    return Err(Error::Axiom(format!(
                        "pair {{{},{}}} lies in {c} blocks but pair {{{},{}}} lies in {l}",
                        a + 1,
                        b + 1,
                        a0 + 1,
                        b0 + 1
                    )));
                }
                _ => {}
            }
        }
    }
    Ok(lambda.map_or(0, |(l, _, _)| l as u64))
}

/// Verifies uniform block size, constant replication and constant pair
/// coverage by direct counting.
pub fn classify_parameters(d: &IncidenceStructure) -> Result<DesignParams> {
    let k = d.blocks[0].len();
    if let Some(i) = d.blocks.iter().position(|b| b.len() != k) {
        return Err(Error::Axiom(format!(
            "block size is not constant: block 1 has {k} points, block {} has {}",
            i + 1,
            d.blocks[i].len()
        )));
    }
    let mut rep = vec![0u64; d.v];
    for b in &d.blocks {
        for p in b.iter0() {
            rep[p as usize] += 1;
        }
    }
    let r = rep[0];
    if let Some(p) = rep.iter().position(|&x| x != r) {
        return Err(Error::Axiom(format!(
            "replication is not constant: point 1 lies in {r} blocks, point {} in {}",
            p + 1,
            rep[p]
        )));
    }
    let lambda = constant_lambda(d)?;
    let (v, b, k) = (d.v as u64, d.blocks.len() as u64, k as u64);
    assert_eq!(v * r, b * k, "vr = bk must hold by double counting");
    assert_eq!(
        lambda * (v - 1),
        r * (k.max(1) - 1),
        "λ(v-1) = r(k-1) must hold by double counting"
    );
    Ok(DesignParams {
        v,
        b,
        r,
        k,
        lambda,
        nontrivial: 2 < k && k + 1 < v,
        fisher: b >= v,
    })
}

/// Pairwise-balanced profile: block sizes, λ, and per-point replication by size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbdProfile {
    pub block_sizes: BTreeSet<usize>,
    pub lambda: u64,
    /// For each point (index `p - 1`): block size → number of blocks of that size through it.
    pub replication: Vec<BTreeMap<usize, u64>>,
}

pub fn pbd_profile(d: &IncidenceStructure) -> Result<PbdProfile> {
    let lambda = constant_lambda(d)?;
    let mut replication = vec![BTreeMap::new(); d.v];
    let mut block_sizes = BTreeSet::new();
    for b in &d.blocks {
        let k = b.len();
        block_sizes.insert(k);
        for p in b.iter0() {
            *replication[p as usize].entry(k).or_insert(0) += 1;
        }
    }
    for (p, rk) in replication.iter().enumerate() {
        let lhs: u64 = rk.iter().map(|(&k, &c)| c * (k.max(1) as u64 - 1)).sum();
        if lhs != lambda * (d.v as u64 - 1) {
            return Err(Error::Axiom(format!(
                "point {}: sum of r^(k)(k-1) is {lhs}, expected λ(v-1) = {}",
                p + 1,
                lambda * (d.v as u64 - 1)
            )));
        }
    }
    Ok(PbdProfile {
        block_sizes,
        lambda,
        replication,
    })
}

/// Block images under each generator of `g`, as indices into the block list.
/// Repeated blocks are matched copy-for-copy in list order.
struct BlockAction {
    images: Vec<Vec<u32>>,
}

fn block_action(g: &PermGroup, d: &IncidenceStructure) -> Result<BlockAction> {
    if g.degree() != d.v {
        return Err(Error::DegreeMismatch {
            left: g.degree(),
            right: d.v,
        });
    }
    let mut copies: HashMap<&PointSet, Vec<u32>> = HashMap::new();
    for (i, b) in d.blocks.iter().enumerate() {
        copies.entry(b).or_default().push(i as u32);
    }
    let mut copy_no = vec![0usize; d.blocks.len()];
    for list in copies.values() {
        for (j, &i) in list.iter().enumerate() {
            copy_no[i as usize] = j;
        }
    }
    let mut images = Vec::with_capacity(g.generators().len());
    for (gi, x) in g.generators().iter().enumerate() {
        let mut img = Vec::with_capacity(d.blocks.len());
        for (i, b) in d.blocks.iter().enumerate() {
            let target = b.image(x);
            let list = copies
                .get(&target)
                .filter(|l| l.len() == copies[b].len())
                .ok_or_else(|| {
                    Error::NotBlockPreserving(format!(
                        "generator {} maps block {} = {b} outside the block multiset",
                        gi + 1,
                        i + 1
                    ))
                })?;
            img.push(list[copy_no[i]]);
        }
        images.push(img);
    }
    Ok(BlockAction { images })
}

/// Orbits of `gens` (given as image tables on `0..n`) by union-find, as sizes
/// sorted ascending.
fn orbit_sizes_of_tables(n: usize, tables: &[Vec<u32>]) -> Vec<usize> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let p = parent[parent[x as usize] as usize];
            parent[x as usize] = p;
            x = p;
        }
        x
    }
    for t in tables {
        for x in 0..n as u32 {
            let (a, b) = (find(&mut parent, x), find(&mut parent, t[x as usize]));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut sizes: HashMap<u32, usize> = HashMap::new();
    for x in 0..n as u32 {
        *sizes.entry(find(&mut parent, x)).or_default() += 1;
    }
    let mut out: Vec<usize> = sizes.into_values().collect();
    out.sort_unstable();
    out
}

/// Errors unless every generator of `g` permutes the block multiset.
pub fn check_block_preserving(g: &PermGroup, d: &IncidenceStructure) -> Result<()> {
    block_action(g, d).map(|_| ())
}

/// Sizes of the block orbits, ascending.
pub fn block_orbit_sizes(g: &PermGroup, d: &IncidenceStructure) -> Result<Vec<usize>> {
    let act = block_action(g, d)?;
    Ok(orbit_sizes_of_tables(d.b(), &act.images))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagOrbitReport {
    pub total_flags: u64,
    /// Orbit sizes, ascending.
    pub orbit_sizes: Vec<usize>,
}

/// Orbits of `g` on incident (point, block) pairs.
pub fn flag_orbits(g: &PermGroup, d: &IncidenceStructure) -> Result<FlagOrbitReport> {
    let act = block_action(g, d)?;
    // Flags are numbered block by block, points in increasing order.
    let mut offset = Vec::with_capacity(d.b() + 1);
    let mut pos_in_block: Vec<HashMap<u32, u32>> = Vec::with_capacity(d.b());
    let mut total = 0usize;
    for b in &d.blocks {
        offset.push(total);
        pos_in_block.push(b.iter0().enumerate().map(|(j, p)| (p, j as u32)).collect());
        total += b.len();
    }
    let mut tables = Vec::with_capacity(g.generators().len());
    for (x, img) in g.generators().iter().zip(&act.images) {
        let t = x.table();
        let mut table = vec![0u32; total];
        for (i, b) in d.blocks.iter().enumerate() {
            let j = img[i] as usize;
            for (q, p) in b.iter0().enumerate() {
                table[offset[i] + q] =
                    (offset[j] + pos_in_block[j][&t[p as usize]] as usize) as u32;
            }
        }
        tables.push(table);
    }
    Ok(FlagOrbitReport {
        total_flags: total as u64,
        orbit_sizes: orbit_sizes_of_tables(total, &tables),
    })
}

pub fn is_block_transitive(g: &PermGroup, d: &IncidenceStructure) -> Result<bool> {
    Ok(block_orbit_sizes(g, d)?.len() == 1)
}

pub fn is_flag_transitive(g: &PermGroup, d: &IncidenceStructure) -> Result<bool> {
    Ok(flag_orbits(g, d)?.orbit_sizes.len() == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfFlagWitness {
    pub block_transitive: bool,
    /// Order of the setwise stabilizer of the representative block (block 1).
    pub stabilizer_order: String,
    /// Orbit lengths of that stabilizer on all points, ascending.
    pub stabilizer_signature: Vec<usize>,
    /// Orbit lengths of that stabilizer on the representative block, ascending.
    pub restricted_orbits: Vec<usize>,
    pub holds: bool,
}

/// Block-transitive, and the stabilizer of a block splits it into exactly
/// two orbits of length `k/2`.
pub fn is_half_flag_transitive(g: &PermGroup, d: &IncidenceStructure) -> Result<HalfFlagWitness> {
    let block_transitive = is_block_transitive(g, d)?;
    let b = &d.blocks[0];
    let st = g.setwise_stabilizer(b, DEFAULT_ORBIT_CAP.max(d.b()))?;
    let part = orbit_partition(&st);
    let mut restricted: Vec<usize> = part
        .orbits
        .iter()
        .filter(|o| o.intersection_len(b) > 0)
        .map(|o| o.len())
        .collect();
    restricted.sort_unstable();
    let k = b.len();
    let holds = block_transitive && k % 2 == 0 && restricted == [k / 2, k / 2];
    Ok(HalfFlagWitness {
        block_transitive,
        stabilizer_order: st.order().to_string(),
        stabilizer_signature: part.signature,
        restricted_orbits: restricted,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualWitness {
    pub point_transitive: bool,
    pub block_transitive: bool,
    /// Orbit lengths of the stabilizer of point 1 on the blocks through 1, ascending.
    pub orbits_through_point: Vec<usize>,
    pub replication: usize,
    pub holds: bool,
}

/// The point-side form of half-flag-transitivity: `g` is point- and
/// block-transitive and the stabilizer of point 1 has exactly two orbits,
/// each of length `r/2`, on the blocks through 1.
pub fn half_flag_dual_check(g: &PermGroup, d: &IncidenceStructure) -> Result<DualWitness> {
    check_block_preserving(g, d)?;
    let point_transitive = g.is_transitive();
    let block_transitive = is_block_transitive(g, d)?;
    let through = d.blocks_through(1);
    let stab = g.point_stabilizer(1)?;
    let index: HashMap<&PointSet, Vec<u32>> =
        through
            .iter()
            .enumerate()
            .fold(HashMap::new(), |mut m, (j, &i)| {
                m.entry(&d.blocks[i]).or_default().push(j as u32);
                m
            });
    let mut tables = Vec::new();
    for x in stab.generators() {
        let mut seen: HashMap<&PointSet, usize> = HashMap::new();
        let mut table = Vec::with_capacity(through.len());
        for &i in &through {
            let img = d.blocks[i].image(x);
            let list = index.get(&img).ok_or_else(|| {
                Error::NotBlockPreserving(format!(
                    "point stabilizer maps block {} outside the design",
                    i + 1
                ))
            })?;
            let c = seen.entry(&d.blocks[i]).or_default();
            table.push(list[*c % list.len()]);
            *c += 1;
        }
        tables.push(table);
    }
    let orbits = orbit_sizes_of_tables(through.len(), &tables);
    let r = through.len();
    let holds = point_transitive && block_transitive && r % 2 == 0 && orbits == [r / 2, r / 2];
    Ok(DualWitness {
        point_transitive,
        block_transitive,
        orbits_through_point: orbits,
        replication: r,
        holds,
    })
}

/// Image of a design under a point relabelling.
pub fn relabel(d: &IncidenceStructure, x: &Permutation) -> Result<IncidenceStructure> {
    if x.degree() != d.v {
        return Err(Error::DegreeMismatch {
            left: d.v,
            right: x.degree(),
        });
    }
    IncidenceStructure::new(d.v, d.blocks.iter().map(|b| b.image(x)).collect())
}
