#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use halfflag::data::{build_affine_biplane, builtin_example, wreath_product_action};
use halfflag::design::{from_base_blocks, IncidenceStructure};
use halfflag::perm::DEFAULT_ORBIT_CAP;
use halfflag::{PermGroup, Permutation, PointSet};

pub fn perm(n: usize, s: &str) -> Permutation {
    Permutation::parse(s, n).unwrap()
}

pub fn group(n: usize, gens: &[&str]) -> PermGroup {
    PermGroup::new(n, gens.iter().map(|s| perm(n, s)).collect()).unwrap()
}

pub fn set(n: usize, pts: &[u32]) -> PointSet {
    PointSet::from_points(n, pts).unwrap()
}

/// All elements generated by `gens`, as 0-based image vectors, by
/// breadth-first right multiplication. Independent of the crate's chain code.
pub fn closure(g: &PermGroup) -> HashSet<Vec<u32>> {
    let gens: Vec<Vec<u32>> = g
        .generators()
        .iter()
        .map(|x| x.images().iter().map(|&p| p - 1).collect())
        .collect();
    let id: Vec<u32> = (0..g.degree() as u32).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y: Vec<u32> = x.iter().map(|&p| s[p as usize]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Orbit of `p` under the group, by closure over generators.
pub fn naive_orbit(g: &PermGroup, p: u32) -> Vec<u32> {
    let mut seen = vec![p];
    let mut i = 0;
    while i < seen.len() {
        for x in g.generators() {
            let q = x.image(seen[i]);
            if !seen.contains(&q) {
                seen.push(q);
            }
        }
        i += 1;
    }
    seen.sort_unstable();
    seen
}

/// Small named groups, every one of order at most 5000.
pub fn corpus() -> Vec<(&'static str, PermGroup)> {
    let agl15 = group(5, &["(1,2,3,4,5)", "(2,3,5,4)"]);
    vec![
        ("S3", group(3, &["(1,2,3)", "(1,2)"])),
        ("D8", group(4, &["(1,2,3,4)", "(1,3)"])),
        ("C6", group(6, &["(1,2,3,4,5,6)"])),
        ("S4", group(4, &["(1,2,3,4)", "(1,2)"])),
        ("C2xC3 intransitive", group(5, &["(1,2)", "(3,4,5)"])),
        ("A5", group(5, &["(1,2,3,4,5)", "(1,2,3)"])),
        ("S5", group(5, &["(1,2,3,4,5)", "(1,2)"])),
        ("AGL(1,5)", agl15.clone()),
        ("AGL(1,7)", group(7, &["(1,2,3,4,5,6,7)", "(2,4,3,7,5,6)"])),
        ("L3(2)", group(7, &["(1,2,3,4,5,6,7)", "(3,5)(6,7)"])),
        ("A6", group(6, &["(1,2,3,4,5)", "(4,5,6)"])),
        ("S6", group(6, &["(1,2,3,4,5,6)", "(1,2)"])),
        ("A7", group(7, &["(1,2,3,4,5,6,7)", "(1,2,3)"])),
        ("C2 wr C3", group(6, &["(1,2)", "(1,3,5)(2,4,6)"])),
        ("psl29-10", builtin_example("psl29-10").unwrap().group),
        ("biplane-16", build_affine_biplane().unwrap().0),
        (
            "imprimitive-25",
            builtin_example("imprimitive-25").unwrap().group,
        ),
        ("AGL(1,5) wr S2", wreath_product_action(&agl15, 2).unwrap()),
    ]
}

/// Transitive members of the corpus of degree at most 10.
pub fn small_transitive() -> Vec<(&'static str, PermGroup)> {
    corpus()
        .into_iter()
        .filter(|(_, g)| g.degree() <= 10 && g.is_transitive())
        .collect()
}

/// Groups with designs they preserve: the built-in examples plus orbit
/// designs of a few small 2-transitive groups.
pub fn design_corpus() -> Vec<(String, PermGroup, IncidenceStructure)> {
    let mut out = Vec::new();
    for name in ["psl29-10", "biplane-16", "imprimitive-25"] {
        let ex = builtin_example(name).unwrap();
        out.push((name.to_string(), ex.group.clone(), ex.design().unwrap()));
        if ex.bases.len() > 1 {
            for (i, b) in ex.bases.iter().enumerate() {
                let d = from_base_blocks(&ex.group, std::slice::from_ref(b), DEFAULT_ORBIT_CAP)
                    .unwrap();
                out.push((format!("{name} base {}", i + 1), ex.group.clone(), d));
            }
        }
    }
    let orbit_designs: [(&str, PermGroup, &[u32]); 6] = [
        (
            "AGL(1,7) {1,2,4}",
            group(7, &["(1,2,3,4,5,6,7)", "(2,4,3,7,5,6)"]),
            &[1, 2, 4],
        ),
        (
            "AGL(1,7) {1,2,3,5}",
            group(7, &["(1,2,3,4,5,6,7)", "(2,4,3,7,5,6)"]),
            &[1, 2, 3, 5],
        ),
        (
            "L3(2) {1,2,4}",
            group(7, &["(1,2,3,4,5,6,7)", "(3,5)(6,7)"]),
            &[1, 2, 4],
        ),
        ("A5 {1,2}", group(5, &["(1,2,3,4,5)", "(1,2,3)"]), &[1, 2]),
        (
            "S6 {1,2,3}",
            group(6, &["(1,2,3,4,5,6)", "(1,2)"]),
            &[1, 2, 3],
        ),
        (
            "AGL(1,5) {1,2,3,4}",
            group(5, &["(1,2,3,4,5)", "(2,3,5,4)"]),
            &[1, 2, 3, 4],
        ),
    ];
    for (name, g, base) in orbit_designs {
        let d = from_base_blocks(&g, &[set(g.degree(), base)], DEFAULT_ORBIT_CAP).unwrap();
        out.push((name.to_string(), g, d));
    }
    out
}

/// Pair coverage counted directly from block point lists.
pub fn brute_lambda(d: &IncidenceStructure) -> Option<u64> {
    let v = d.v() as u32;
    let mut lambda = None;
    for a in 1..=v {
        for b in a + 1..=v {
            let c = d
                .blocks()
                .iter()
                .filter(|bl| bl.contains(a) && bl.contains(b))
                .count() as u64;
            match lambda {
                None => lambda = Some(c),
                Some(l) if l != c => return None,
                _ => {}
            }
        }
    }
    lambda
}
