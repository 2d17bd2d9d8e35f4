//! Subgroups of a given index: exhaustive up to conjugacy for small parents,
//! targeted random search for large ones, or verified fixture files.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::orbit_partition;
use crate::error::{Error, Result};
use crate::perm::io::GroupSpec;
use crate::perm::{PermGroup, Permutation};

/// How much of the index-`b` subgroup landscape a report covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Completeness {
    /// Every conjugacy class, pairwise non-conjugate representatives.
    Exhaustive,
    /// Verified subgroups found by search; classes may be missing.
    Partial,
    /// Verified subgroups supplied as files; classes may be missing.
    Fixture,
}

impl std::fmt::Display for Completeness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Completeness::Exhaustive => "exhaustive",
            Completeness::Partial => "partial",
            Completeness::Fixture => "fixture",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Parents up to this order are enumerated exhaustively.
    pub parent_order_bound: u64,
    /// Largest subgroup order the targeted search tries to reach.
    pub target_order_bound: u64,
    /// Random attempts per index in targeted mode.
    pub attempts: usize,
    /// Wall-clock cap per index in targeted mode.
    pub time_limit: Duration,
    pub seed: u64,
    /// Threads for independent indices in targeted mode.
    pub workers: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            parent_order_bound: 1_000_000,
            target_order_bound: 4000,
            attempts: 2000,
            time_limit: Duration::from_secs(60),
            seed: 1,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

/// One representative subgroup.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupClass {
    #[serde(skip)]
    pub group: PermGroup,
    pub order: u64,
    /// Orbit lengths on all points, ascending.
    pub signature: Vec<usize>,
    /// Element order → count; computed for subgroups of order at most 100,000.
    pub element_orders: Option<BTreeMap<u64, u64>>,
    /// `exhaustive`, `search`, or the fixture name.
    pub source: String,
}

impl SubgroupClass {
    pub fn from_group(group: PermGroup, source: impl Into<String>) -> Result<Self> {
        let order = group
            .order()
            .to_u64()
            .ok_or_else(|| Error::Unsupported("subgroup order exceeds 64 bits".into()))?;
        let element_orders = (order <= 100_000).then(|| {
            let mut h = BTreeMap::new();
            for x in group.elements() {
                *h.entry(x.order()).or_insert(0) += 1;
            }
            h
        });
        let signature = orbit_partition(&group).signature;
        Ok(SubgroupClass {
            group,
            order,
            signature,
            element_orders,
            source: source.into(),
        })
    }

    /// Orbit sizes occurring at least twice (candidates for Step 3 pairs).
    pub fn repeated_orbit_sizes(&self) -> Vec<usize> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &s in &self.signature {
            *counts.entry(s).or_default() += 1;
        }
        counts
            .into_iter()
            .filter(|&(_, c)| c >= 2)
            .map(|(s, _)| s)
            .collect()
    }

    fn key(&self) -> (u64, Vec<usize>, Option<BTreeMap<u64, u64>>) {
        (
            self.order,
            self.signature.clone(),
            self.element_orders.clone(),
        )
    }
}

/// Representatives of subgroups of index `b`.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupClassReport {
    pub index: u64,
    pub parent_order: String,
    pub target_order: u64,
    pub completeness: Completeness,
    /// Sorted by (signature, source).
    pub classes: Vec<SubgroupClass>,
    pub diagnostics: Vec<String>,
}

fn target_order(g: &PermGroup, b: u64) -> Result<u64> {
    let n = g.order();
    if b == 0 || !(&n % b).to_u64().is_some_and(|r| r == 0) {
        return Err(Error::InvalidInput(format!(
            "index {b} does not divide the group order {n}"
        )));
    }
    (&n / b)
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("subgroup order {} exceeds 64 bits", &n / b)))
}

fn sort_classes(classes: &mut [SubgroupClass]) {
    classes.sort_by(|a, b| {
        a.signature
            .cmp(&b.signature)
            .then_with(|| a.source.cmp(&b.source))
    });
}

/// Subgroups of index `b`: exhaustive when the parent order is within the
/// budget, otherwise targeted search flagged partial.
pub fn subgroups_of_index(
    g: &PermGroup,
    b: u64,
    budget: &SearchBudget,
) -> Result<SubgroupClassReport> {
    let t = target_order(g, b)?;
    let n = g.order();
    let small = n.to_u64().is_some_and(|n| n <= budget.parent_order_bound);
    let (classes, completeness, diagnostics) = if b == 1 {
        (
            vec![SubgroupClass::from_group(g.clone(), "exhaustive")?],
            Completeness::Exhaustive,
            Vec::new(),
        )
    } else if t == 1 {
        let triv = PermGroup::trivial(g.degree());
        (
            vec![SubgroupClass::from_group(triv, "exhaustive")?],
            Completeness::Exhaustive,
            Vec::new(),
        )
    } else if small {
        let mut all = exhaustive_classes(g, &[t])?;
        (
            all.remove(&t).unwrap_or_default(),
            Completeness::Exhaustive,
            Vec::new(),
        )
    } else {
        let (c, d) = targeted_search(g, t, budget)?;
        (c, Completeness::Partial, d)
    };
    let mut classes = classes;
    sort_classes(&mut classes);
    Ok(SubgroupClassReport {
        index: b,
        parent_order: n.to_string(),
        target_order: t,
        completeness,
        classes,
        diagnostics,
    })
}

/// [`subgroups_of_index`] for several indices; a small parent is enumerated
/// once for all of them, and targeted searches run on `workers` threads.
/// Reports come back in the order of `bs`.
pub fn subgroups_of_indices(
    g: &PermGroup,
    bs: &[u64],
    budget: &SearchBudget,
) -> Result<Vec<SubgroupClassReport>> {
    let n = g.order();
    let small = n.to_u64().is_some_and(|n| n <= budget.parent_order_bound);
    let targets: Vec<u64> = bs
        .iter()
        .map(|&b| target_order(g, b))
        .collect::<Result<_>>()?;
    if small {
        let all = exhaustive_classes(g, &targets)?;
        return bs
            .iter()
            .zip(&targets)
            .map(|(&b, t)| {
                let mut classes = all.get(t).cloned().unwrap_or_default();
                if *t == 1 {
                    classes = vec![SubgroupClass::from_group(
                        PermGroup::trivial(g.degree()),
                        "exhaustive",
                    )?];
                }
                sort_classes(&mut classes);
                Ok(SubgroupClassReport {
                    index: b,
                    parent_order: n.to_string(),
                    target_order: *t,
                    completeness: Completeness::Exhaustive,
                    classes,
                    diagnostics: Vec::new(),
                })
            })
            .collect();
    }
    let workers = budget.workers.max(1);
    let mut slots: Vec<Option<Result<SubgroupClassReport>>> = (0..bs.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let chunks: Vec<_> = slots
            .chunks_mut(bs.len().div_ceil(workers).max(1))
            .enumerate()
            .collect();
        let chunk_len = bs.len().div_ceil(workers).max(1);
        for (ci, chunk) in chunks {
            scope.spawn(move || {
                for (j, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(subgroups_of_index(g, bs[ci * chunk_len + j], budget));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every slot filled"))
        .collect()
}

/// Report from fixture subgroups only (those whose index is `b`).
pub fn subgroups_from_fixtures(
    g: &PermGroup,
    b: u64,
    fixtures: &[(String, PermGroup)],
) -> Result<SubgroupClassReport> {
    let t = target_order(g, b)?;
    let mut classes: Vec<SubgroupClass> = Vec::new();
    for (name, h) in fixtures {
        if h.order() != BigUint::from(t) {
            continue;
        }
        let c = SubgroupClass::from_group(h.clone(), name.clone())?;
        if !classes.iter().any(|d| d.key() == c.key()) {
            classes.push(c);
        }
    }
    sort_classes(&mut classes);
    Ok(SubgroupClassReport {
        index: b,
        parent_order: g.order().to_string(),
        target_order: t,
        completeness: Completeness::Fixture,
        classes,
        diagnostics: Vec::new(),
    })
}

/// Reads a subgroup file (with its mandatory `order` line), checks every
/// generator lies in `parent`, and checks the declared order.
pub fn load_subgroup_fixture(parent: &PermGroup, path: &Path) -> Result<PermGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_subgroup_fixture(parent, &text)
}

pub fn parse_subgroup_fixture(parent: &PermGroup, text: &str) -> Result<PermGroup> {
    let spec = GroupSpec::parse(text)?;
    if spec.degree != parent.degree() {
        return Err(Error::DegreeMismatch {
            left: parent.degree(),
            right: spec.degree,
        });
    }
    let order = spec
        .order
        .clone()
        .ok_or_else(|| Error::Parse("subgroup file needs an order line".into()))?;
    for (i, x) in spec.generators.iter().enumerate() {
        if !parent.contains(x)? {
            return Err(Error::Verification(format!(
                "generator {} is not in the parent group",
                i + 1
            )));
        }
    }
    spec.build().map_err(|e| match e {
        Error::Verification(m) => {
            Error::Verification(format!("declared order {order} does not match: {m}"))
        }
        e => e,
    })
}

// ---------------------------------------------------------------------------
// Exhaustive mode: cyclic extension over the parent's element list.

struct ElementTable {
    elems: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    orders: Vec<u64>,
}

impl ElementTable {
    fn new(g: &PermGroup) -> Self {
        let elems = g.elements();
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        let orders = elems.iter().map(|x| x.order()).collect();
        ElementTable {
            elems,
            index,
            orders,
        }
    }

    fn indices(&self, h: &PermGroup) -> Vec<u32> {
        let mut v: Vec<u32> = h.elements().iter().map(|x| self.index[x]).collect();
        v.sort_unstable();
        v
    }
}

struct Found {
    class: SubgroupClass,
    members: Vec<bool>,
}

/// `true` if some element of the parent conjugates `a` onto the subgroup
/// with membership vector `b_members`.
fn conjugate_onto(table: &ElementTable, a: &PermGroup, b_members: &[bool]) -> bool {
    table.elems.iter().any(|x| {
        a.generators()
            .iter()
            .all(|s| b_members[table.index[&x.conjugate(s)] as usize])
    })
}

/// Class representatives of every subgroup order dividing one of `targets`,
/// keyed by order.
fn exhaustive_classes(g: &PermGroup, targets: &[u64]) -> Result<BTreeMap<u64, Vec<SubgroupClass>>> {
    let allowed = |o: u64| targets.iter().any(|t| t % o == 0);
    let t_max = targets.iter().copied().max().unwrap_or(1);
    let table = ElementTable::new(g);
    let n = table.elems.len();
    let degree = g.degree();
    // Class representatives of every order dividing t, processed by order.
    let mut by_order: BTreeMap<u64, Vec<Found>> = BTreeMap::new();
    let trivial = PermGroup::trivial(degree);
    let mut members = vec![false; n];
    members[table.index[&Permutation::identity(degree)] as usize] = true;
    by_order.insert(
        1,
        vec![Found {
            class: SubgroupClass::from_group(trivial, "exhaustive")?,
            members,
        }],
    );
    let mut done_orders: Vec<u64> = Vec::new();
    loop {
        let Some(&ord) = by_order.keys().find(|o| !done_orders.contains(o)) else {
            break;
        };
        done_orders.push(ord);
        if !targets.iter().any(|&t| t != ord && t % ord == 0) {
            continue;
        }
        let count = by_order[&ord].len();
        for ci in 0..count {
            let (h, h_members) = {
                let f = &by_order[&ord][ci];
                (f.class.group.clone(), f.members.clone())
            };
            let h_elems: Vec<u32> = (0..n as u32).filter(|&i| h_members[i as usize]).collect();
            let mut covered = h_members.clone();
            for x in 0..n {
                if covered[x] || table.orders[x] > t_max || !allowed(ord.lcm(&table.orders[x])) {
                    continue;
                }
                // <H, x> = <H, h x^j> for h in H and j prime to the order of x.
                let xp = &table.elems[x];
                let xo = table.orders[x];
                for j in (1..xo).filter(|j| j.gcd(&xo) == 1) {
                    let xj = xp.pow(j);
                    for &h_i in &h_elems {
                        covered[table.index[&table.elems[h_i as usize].then(&xj)] as usize] = true;
                    }
                }
                let mut gens = h.generators().to_vec();
                gens.retain(|s| !s.is_identity());
                gens.push(xp.clone());
                let k = PermGroup::new(degree, gens)?;
                let ko = k.order().to_u64().expect("subgroup of a small group");
                if !allowed(ko) {
                    continue;
                }
                let k_idx = table.indices(&k);
                let mut k_members = vec![false; n];
                for &i in &k_idx {
                    k_members[i as usize] = true;
                }
                let class = SubgroupClass::from_group(k, "exhaustive")?;
                let list = by_order.entry(ko).or_default();
                let dup = list.iter().any(|f| {
                    f.class.key() == class.key()
                        && (f.members == k_members
                            || conjugate_onto(&table, &class.group, &f.members))
                });
                if !dup {
                    list.push(Found {
                        class,
                        members: k_members,
                    });
                }
            }
        }
    }
    Ok(by_order
        .into_iter()
        .filter(|(o, _)| targets.contains(o))
        .map(|(o, list)| (o, list.into_iter().map(|f| f.class).collect()))
        .collect())
}

// ---------------------------------------------------------------------------
// Targeted mode.

/// Power of `x` whose order is `gcd(order(x), t)`.
fn restrict_to_divisor(x: &Permutation, t: u64) -> Permutation {
    let o = x.order();
    x.pow(o / o.gcd(&t))
}

/// Power of `x` that is a `p`-element.
fn p_part(x: &Permutation, p: u64) -> Permutation {
    let mut o = x.order();
    while o % p == 0 {
        o /= p;
    }
    x.pow(o)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn extend(g: &PermGroup, h: &PermGroup, y: &Permutation) -> Result<PermGroup> {
    let mut gens: Vec<Permutation> = h
        .generators()
        .iter()
        .filter(|s| !s.is_identity())
        .cloned()
        .collect();
    gens.push(y.clone());
    PermGroup::new(g.degree(), gens)
}

fn order_u64(h: &PermGroup) -> Option<u64> {
    h.order().to_u64()
}

/// Random 2-generation, growth from p-subgroups, and growth from sets of
/// elements commuting with a random element; keeps subgroups of order
/// exactly `t`, one per invariant.
fn targeted_search(
    g: &PermGroup,
    t: u64,
    budget: &SearchBudget,
) -> Result<(Vec<SubgroupClass>, Vec<String>)> {
    let mut diagnostics = Vec::new();
    if t > budget.target_order_bound {
        diagnostics.push(format!(
            "target order {t} exceeds the search bound {}; no search attempted",
            budget.target_order_bound
        ));
        return Ok((Vec::new(), diagnostics));
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ t.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut stream = g.random_elements(rng.gen());
    let primes = prime_factors(t);
    let mut found: Vec<SubgroupClass> = Vec::new();
    let record = |h: PermGroup, found: &mut Vec<SubgroupClass>| -> Result<()> {
        let c = SubgroupClass::from_group(h, "search")?;
        if !found.iter().any(|d| d.key() == c.key()) {
            found.push(c);
        }
        Ok(())
    };
    let mut attempts = 0;
    while attempts < budget.attempts {
        if start.elapsed() > budget.time_limit {
            diagnostics.push(format!("time limit reached after {attempts} attempts"));
            break;
        }
        attempts += 1;
        // Seed subgroup: a random p-element, an element of order dividing t,
        // or a pair of commuting elements.
        let seed_group = match attempts % 3 {
            0 => {
                let p = primes[rng.gen_range(0..primes.len())];
                let x = p_part(&stream.next_element(), p);
                PermGroup::new(g.degree(), vec![x])?
            }
            1 => {
                let x = restrict_to_divisor(&stream.next_element(), t);
                let y = restrict_to_divisor(&stream.next_element(), t);
                PermGroup::new(g.degree(), vec![x, y])?
            }
            _ => {
                let x = restrict_to_divisor(&stream.next_element(), t);
                let mut gens = vec![x.clone()];
                for _ in 0..20 {
                    let y = restrict_to_divisor(&stream.next_element(), t);
                    if x.then(&y) == y.then(&x) {
                        gens.push(y);
                        break;
                    }
                }
                PermGroup::new(g.degree(), gens)?
            }
        };
        let Some(mut o) = order_u64(&seed_group) else {
            continue;
        };
        if t % o != 0 {
            continue;
        }
        let mut h = seed_group;
        let mut stalls = 0;
        while o < t && stalls < 40 {
            let y = restrict_to_divisor(&stream.next_element(), t);
            if h.contains(&y)? {
                stalls += 1;
                continue;
            }
            let k = extend(g, &h, &y)?;
            match order_u64(&k) {
                Some(ko) if t % ko == 0 => {
                    h = k;
                    o = ko;
                    stalls = 0;
                }
                _ => stalls += 1,
            }
        }
        if o == t {
            record(h, &mut found)?;
        }
    }
    diagnostics.push(format!(
        "targeted search: {attempts} attempts, {} subgroup(s) of order {t} with distinct invariants",
        found.len()
    ));
    Ok((found, diagnostics))
}

// ---------------------------------------------------------------------------
// Per-index orbit-signature reports.

#[derive(Clone, Debug, Serialize)]
pub struct SignatureRow {
    pub index: u64,
    pub completeness: Completeness,
    pub classes: Vec<SignatureEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureEntry {
    pub order: u64,
    pub signature: Vec<usize>,
    /// Orbit sizes occurring at least twice; each gives Step 3 pairs.
    pub equal_pairs: Vec<usize>,
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureTable {
    pub group: String,
    pub rows: Vec<SignatureRow>,
}

impl SignatureTable {
    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "| b | orbit lengths of H | \\|H\\| | equal-size orbits | coverage |"
        )
        .unwrap();
        writeln!(s, "|---|---|---|---|---|").unwrap();
        for row in &self.rows {
            if row.classes.is_empty() {
                writeln!(
                    s,
                    "| {} | (none found) | | | {} |",
                    row.index, row.completeness
                )
                .unwrap();
            }
            for c in &row.classes {
                let sig = c
                    .signature
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                let eq = c
                    .equal_pairs
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                writeln!(
                    s,
                    "| {} | {sig} | {} | {eq} | {} |",
                    row.index, c.order, row.completeness
                )
                .unwrap();
            }
        }
        s
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Orbit signatures of index-`b` subgroups for each `b`: fixture subgroups
/// when any has the right order, otherwise [`subgroups_of_index`].
pub fn signature_table(
    g: &PermGroup,
    b_values: &[u64],
    fixtures: &[(String, PermGroup)],
    budget: &SearchBudget,
) -> Result<SignatureTable> {
    let mut rows = Vec::new();
    for &b in b_values {
        let report = find_subgroups(g, b, fixtures, budget)?;
        rows.push(SignatureRow {
            index: b,
            completeness: report.completeness,
            classes: report
                .classes
                .iter()
                .map(|c| SignatureEntry {
                    order: c.order,
                    signature: c.signature.clone(),
                    equal_pairs: c.repeated_orbit_sizes(),
                    source: c.source.clone(),
                })
                .collect(),
        });
    }
    rows.sort_by_key(|r| r.index);
    Ok(SignatureTable {
        group: g.label().unwrap_or("G").to_string(),
        rows,
    })
}

/// Fixture subgroups of index `b` if there are any, else a search.
pub fn find_subgroups(
    g: &PermGroup,
    b: u64,
    fixtures: &[(String, PermGroup)],
    budget: &SearchBudget,
) -> Result<SubgroupClassReport> {
    let t = target_order(g, b)?;
    if fixtures.iter().any(|(_, h)| h.order() == BigUint::from(t)) {
        subgroups_from_fixtures(g, b, fixtures)
    } else {
        subgroups_of_index(g, b, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn s4_index_counts() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let b = SearchBudget::default();
        // order 12: A4; order 8: D8; order 6: S3; order 4: V4 (normal), V4 (non-normal), C4
        assert_eq!(subgroups_of_index(&s4, 2, &b).unwrap().classes.len(), 1);
        assert_eq!(subgroups_of_index(&s4, 3, &b).unwrap().classes.len(), 1);
        assert_eq!(subgroups_of_index(&s4, 4, &b).unwrap().classes.len(), 1);
        assert_eq!(subgroups_of_index(&s4, 6, &b).unwrap().classes.len(), 3);
        assert_eq!(subgroups_of_index(&s4, 12, &b).unwrap().classes.len(), 2);
        assert_eq!(
            subgroups_of_index(&s4, 24, &b).unwrap().classes[0].signature,
            vec![1, 1, 1, 1]
        );
    }

    #[test]
    fn index_must_divide() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        assert!(subgroups_of_index(&s4, 5, &SearchBudget::default()).is_err());
    }

    #[test]
    fn fixture_membership_and_order() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let ok = parse_subgroup_fixture(&s4, "degree 4\norder 4\ngen (1,2,3,4)\n").unwrap();
        assert_eq!(ok.order_u128(), 4);
        assert!(matches!(
            parse_subgroup_fixture(&s4, "degree 4\norder 3\ngen (1,2,3,4)\n"),
            Err(Error::Verification(_))
        ));
        let a4 = group(4, &["(1,2,3)", "(2,3,4)"]);
        assert!(matches!(
            parse_subgroup_fixture(&a4, "degree 4\norder 2\ngen (1,2)\n"),
            Err(Error::Verification(_))
        ));
        assert!(matches!(
            parse_subgroup_fixture(&s4, "degree 4\ngen (1,2)\n"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn targeted_search_finds_verified_subgroups() {
        let s6 = group(6, &["(1,2)", "(1,2,3,4,5,6)"]);
        let budget = SearchBudget {
            parent_order_bound: 1,
            attempts: 200,
            ..SearchBudget::default()
        };
        let r = subgroups_of_index(&s6, 6, &budget).unwrap();
        assert_eq!(r.completeness, Completeness::Partial);
        assert!(!r.classes.is_empty());
        for c in &r.classes {
            assert_eq!(c.order, 120);
            assert!(c.group.generators().iter().all(|x| s6.contains(x).unwrap()));
        }
    }
}
