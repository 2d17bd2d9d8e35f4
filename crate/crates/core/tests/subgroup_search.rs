mod common;

use std::collections::{BTreeMap, HashMap, HashSet};

use common::{closure, corpus, group};
use halfflag::action::orbit_partition;
use halfflag::data::{builtin_example, builtin_hs_subgroup, default_fixture_dir};
use halfflag::perm::io::GroupSpec;
use halfflag::subgroups::{
    load_subgroup_fixture, parse_subgroup_fixture, signature_table, subgroups_of_index,
    Completeness, SearchBudget,
};
use halfflag::{PermGroup, Permutation};

/// A finite group given by its multiplication table.
struct Table {
    elems: Vec<Vec<u32>>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl Table {
    fn new(g: &PermGroup) -> Self {
        let mut elems: Vec<Vec<u32>> = closure(g).into_iter().collect();
        elems.sort();
        let index: HashMap<&Vec<u32>, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e, i as u32))
            .collect();
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let ab: Vec<u32> = a.iter().map(|&p| b[p as usize]).collect();
                mul[i * n + j] = index[&ab];
            }
        }
        let id = index[&(0..g.degree() as u32).collect::<Vec<_>>()];
        let inv = (0..n)
            .map(|i| {
                (0..n as u32)
                    .find(|&j| mul[i * n + j as usize] == id)
                    .unwrap()
            })
            .collect();
        Table { elems, mul, inv }
    }

    fn n(&self) -> usize {
        self.elems.len()
    }

    fn closure(&self, gens: &[u32]) -> Vec<u64> {
        let n = self.n();
        let mut bits = vec![0u64; n.div_ceil(64)];
        let id = self.mul[self.inv[0] as usize];
        let mut list = vec![id];
        bits[id as usize / 64] |= 1 << (id % 64);
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let y = self.mul[x as usize * n + s as usize];
                if bits[y as usize / 64] >> (y % 64) & 1 == 0 {
                    bits[y as usize / 64] |= 1 << (y % 64);
                    list.push(y);
                }
            }
            i += 1;
        }
        bits
    }

    fn members(&self, bits: &[u64]) -> Vec<u32> {
        (0..self.n() as u32)
            .filter(|&i| bits[i as usize / 64] >> (i % 64) & 1 == 1)
            .collect()
    }

    /// Every subgroup, by repeatedly adjoining one element.
    fn all_subgroups(&self) -> Vec<(Vec<u64>, Vec<u32>)> {
        let triv = self.closure(&[]);
        let mut seen: HashSet<Vec<u64>> = HashSet::from([triv.clone()]);
        let mut subs = vec![(triv, Vec::new())];
        let mut i = 0;
        while i < subs.len() {
            let (bits, gens) = subs[i].clone();
            for x in 0..self.n() as u32 {
                if bits[x as usize / 64] >> (x % 64) & 1 == 1 {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let k = self.closure(&g2);
                if seen.insert(k.clone()) {
                    subs.push((k, g2));
                }
            }
            i += 1;
        }
        subs
    }

    fn conjugate(&self, bits: &[u64], x: u32) -> Vec<u64> {
        let n = self.n();
        let xi = self.inv[x as usize] as usize;
        let mut out = vec![0u64; bits.len()];
        for h in self.members(bits) {
            let y = self.mul[self.mul[xi * n + h as usize] as usize * n + x as usize];
            out[y as usize / 64] |= 1 << (y % 64);
        }
        out
    }
}

/// Conjugacy classes of subgroups of each order, with orbit signatures.
fn oracle_classes(g: &PermGroup) -> BTreeMap<u64, Vec<Vec<usize>>> {
    let t = Table::new(g);
    let subs = t.all_subgroups();
    let mut class_of: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut out: BTreeMap<u64, Vec<Vec<usize>>> = BTreeMap::new();
    for (bits, gens) in &subs {
        if class_of.contains_key(bits) {
            continue;
        }
        let id = class_of.len();
        for x in 0..t.n() as u32 {
            class_of.insert(t.conjugate(bits, x), id);
        }
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|&e| {
                Permutation::from_images(
                    &t.elems[e as usize]
                        .iter()
                        .map(|p| p + 1)
                        .collect::<Vec<_>>(),
                )
                .unwrap()
            })
            .collect();
        let h = PermGroup::new(g.degree(), perms).unwrap();
        let order = t.members(bits).len() as u64;
        out.entry(order)
            .or_default()
            .push(orbit_partition(&h).signature);
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

fn exhaustive_budget() -> SearchBudget {
    SearchBudget {
        parent_order_bound: 1_000_000,
        ..SearchBudget::default()
    }
}

#[test]
fn exhaustive_mode_matches_subgroup_oracle() {
    let names = [
        "S3",
        "D8",
        "S4",
        "A5",
        "S5",
        "AGL(1,5)",
        "AGL(1,7)",
        "L3(2)",
        "C2 wr C3",
        "psl29-10",
        "biplane-16",
        "S6",
        "imprimitive-25",
    ];
    for (name, g) in corpus().into_iter().filter(|(n, _)| names.contains(n)) {
        let order = g.order_u128() as u64;
        assert!(order <= 2000);
        let oracle = oracle_classes(&g);
        for (&t, sigs) in &oracle {
            let report = subgroups_of_index(&g, order / t, &exhaustive_budget()).unwrap();
            assert_eq!(report.completeness, Completeness::Exhaustive, "{name}");
            let mut got: Vec<Vec<usize>> =
                report.classes.iter().map(|c| c.signature.clone()).collect();
            got.sort();
            assert_eq!(&got, sigs, "{name}: subgroups of order {t}");
            for c in &report.classes {
                assert_eq!(c.order * (order / t), order);
                assert!(c.group.generators().iter().all(|x| g.contains(x).unwrap()));
            }
        }
    }
}

#[test]
fn m11_point_stabilizer_class() {
    let m11 = builtin_example("m11-11").unwrap().group;
    let r = subgroups_of_index(&m11, 11, &exhaustive_budget()).unwrap();
    assert_eq!(r.completeness, Completeness::Exhaustive);
    assert_eq!(r.classes.len(), 1);
    assert_eq!(r.classes[0].order, 720);
    assert_eq!(r.classes[0].signature, vec![1, 10]);
}

#[test]
fn trivial_indices() {
    let g = group(5, &["(1,2,3,4,5)", "(1,2)"]);
    let whole = subgroups_of_index(&g, 1, &exhaustive_budget()).unwrap();
    assert_eq!(whole.classes.len(), 1);
    assert_eq!(whole.classes[0].order, 120);
    let triv = subgroups_of_index(&g, 120, &exhaustive_budget()).unwrap();
    assert_eq!(triv.classes.len(), 1);
    assert_eq!(triv.classes[0].signature, vec![1; 5]);
    assert!(subgroups_of_index(&g, 7, &exhaustive_budget()).is_err());
}

#[test]
fn hs_subgroup_fixtures() {
    let hs = builtin_example("hs-176").unwrap().group;
    let expect = [
        ("h1", 1920, vec![16, 80, 80]),
        ("h2", 1920, vec![40, 40, 96]),
        ("h3", 1536, vec![16, 64, 96]),
        ("h4", 1536, vec![48, 64, 64]),
    ];
    for (name, order, sig) in &expect {
        let h = builtin_hs_subgroup(name).unwrap();
        assert!(
            h.generators().iter().all(|x| hs.contains(x).unwrap()),
            "{name}"
        );
        assert_eq!(h.order_u128(), *order as u128, "{name}");
        assert_eq!(&orbit_partition(&h).signature, sig, "{name}");
        // Conjugates have the same orbit signature.
        for seed in 0..3 {
            let x = hs.random_element(seed);
            assert_eq!(
                &orbit_partition(&h.conjugate_by(&x)).signature,
                sig,
                "{name}"
            );
        }
    }
    let path = default_fixture_dir().join("hs-176/subgroup-h4.grp");
    assert_eq!(
        load_subgroup_fixture(&hs, &path).unwrap().order_u128(),
        1536
    );
}

#[test]
fn hs_signature_table_from_fixtures() {
    let hs = builtin_example("hs-176").unwrap().group;
    let fixtures: Vec<(String, PermGroup)> = ["h1", "h2", "h3", "h4"]
        .iter()
        .map(|n| (n.to_string(), builtin_hs_subgroup(n).unwrap()))
        .collect();
    let t = signature_table(&hs, &[28875, 23100], &fixtures, &SearchBudget::default()).unwrap();
    assert_eq!(
        t.rows.iter().map(|r| r.index).collect::<Vec<_>>(),
        vec![23100, 28875]
    );
    let sigs = |i: usize| {
        let mut s: Vec<Vec<usize>> = t.rows[i]
            .classes
            .iter()
            .map(|c| c.signature.clone())
            .collect();
        s.sort();
        s
    };
    assert_eq!(sigs(0), vec![vec![16, 80, 80], vec![40, 40, 96]]);
    assert_eq!(sigs(1), vec![vec![16, 64, 96], vec![48, 64, 64]]);
    assert!(t
        .rows
        .iter()
        .all(|r| r.completeness == Completeness::Fixture));
}

#[test]
fn fixture_errors() {
    let m11 = builtin_example("m11-11").unwrap().group;
    let stab = m11.point_stabilizer(1).unwrap();
    let good = GroupSpec::from_group(&stab, true).to_text();
    assert_eq!(
        parse_subgroup_fixture(&m11, &good).unwrap().order_u128(),
        720
    );

    let outside = "degree 11\norder 2\ngen (1,2)\n";
    assert!(parse_subgroup_fixture(&m11, outside).is_err());
    let wrong_order = good.replace("order 720", "order 360");
    assert!(parse_subgroup_fixture(&m11, &wrong_order).is_err());
    let no_order: String = good
        .lines()
        .filter(|l| !l.starts_with("order"))
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(parse_subgroup_fixture(&m11, &no_order).is_err());
}

#[test]
fn targeted_search_reports_only_true_subgroups() {
    let m12 = builtin_example("m12-12").unwrap().group;
    let budget = SearchBudget {
        parent_order_bound: 1000,
        attempts: 200,
        ..SearchBudget::default()
    };
    for b in [12u64, 66, 144, 220] {
        let r = subgroups_of_index(&m12, b, &budget).unwrap();
        assert_eq!(r.completeness, Completeness::Partial);
        for c in &r.classes {
            assert_eq!(c.order * b, 95040);
            assert_eq!(c.group.order_u128() as u64, c.order);
            assert!(c
                .group
                .generators()
                .iter()
                .all(|x| m12.contains(x).unwrap()));
        }
    }
}
