//! Rebuilds the permutation fixtures under `crates/core/fixtures`.
//!
//! Everything is derived from first principles: M24 from the extended binary
//! Golay code, the smaller Mathieu actions from stabilizers and induced
//! actions, HS from the Higman–Sims graph, and the 176-point HS action from
//! its orbit on Hoffman–Singleton subgraphs. The subgroups behind the two HS
//! designs come from Sylow 2-subgroups and involution centralizers.
//!
//! Usage: `cargo run --release -p halfflag --example derive_fixtures [out-dir]`

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use halfflag::action::{orbit_partition, subdegrees};
use halfflag::data::{induced_action, restrict_to_orbit};
use halfflag::perm::io::write_group;
use halfflag::{PermGroup, Permutation, PointSet};
use serde_json::json;

const CAP: usize = 2_000_000;

// ---------------------------------------------------------------- Golay / M24

/// Points of the projective line over GF(23): residues 0..22 are points
/// 1..23, infinity is point 24.
fn m24_generators() -> Vec<Permutation> {
    let p = 23u64;
    let inf = 23u64;
    let inv = |x: u64| (0..p).find(|y| x * y % p == 1).unwrap();
    let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
    let mk = |f: &dyn Fn(u64) -> u64| {
        let images: Vec<u32> = (0..24).map(|x| f(x) as u32 + 1).collect();
        Permutation::from_images(&images).unwrap()
    };
    let alpha = mk(&|x| if x == inf { inf } else { (x + 1) % p });
    let beta = mk(&|x| if x == inf { inf } else { 2 * x % p });
    let gamma = mk(&|x| match x {
        23 => 0,
        0 => inf,
        _ => (p - inv(x)) % p,
    });
    let delta = mk(&|x| {
        if x == inf || x == 0 {
            return x;
        }
        let c = x * x % p * x % p;
        if squares.contains(&x) {
            c * inv(9) % p
        } else {
            9 * c % p
        }
    });
    vec![alpha, beta, gamma, delta]
}

/// Words of the extended Golay code (bit i = point i + 1).
fn golay_code() -> Vec<u32> {
    let exps = [11u32, 10, 6, 5, 4, 2, 0];
    let basis: Vec<u32> = (0..12)
        .map(|s| exps.iter().fold(0u32, |v, e| v | 1 << ((e + s) % 23)))
        .collect();
    (0u32..1 << 12)
        .map(|m| {
            let v = (0..12)
                .filter(|i| m >> i & 1 == 1)
                .fold(0u32, |v, i| v ^ basis[i]);
            if v.count_ones() % 2 == 1 {
                v | 1 << 23
            } else {
                v
            }
        })
        .collect()
}

fn mask_set(degree: usize, mask: u32) -> PointSet {
    let pts: Vec<u32> = (0..24)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect();
    PointSet::from_points(degree, &pts).unwrap()
}

// ---------------------------------------------------------------- output

struct Out {
    root: PathBuf,
}

impl Out {
    fn entry(&self, name: &str) -> PathBuf {
        let dir = self.root.join(name);
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    /// Writes `group.grp` and `meta.json` after recomputing the invariants.
    fn group(&self, name: &str, g: &PermGroup, description: &str) -> PathBuf {
        let dir = self.entry(name);
        let g = g.clone().with_label(name);
        let order = g.order();
        let stab = g.point_stabilizer(1).unwrap().order();
        let sub = subdegrees(&g).unwrap().values;
        write_group(&dir.join("group.grp"), &g, true).unwrap();
        let meta = json!({
            "name": name,
            "description": description,
            "degree": g.degree(),
            "order": order.to_string(),
            "stabilizer_order": stab.to_string(),
            "subdegrees": sub,
            "source": "derived",
        });
        fs::write(
            dir.join("meta.json"),
            serde_json::to_string_pretty(&meta).unwrap() + "\n",
        )
        .unwrap();
        println!(
            "{name}: degree {} order {order} stabilizer {stab} subdegrees {sub:?}",
            g.degree()
        );
        dir
    }
}

fn order_of(g: &PermGroup) -> u128 {
    g.order_u128()
}

fn group(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(degree, gens).unwrap()
}

// ---------------------------------------------------------------- graphs

/// Adjacency as bit rows.
struct Graph {
    n: usize,
    adj: Vec<Vec<u64>>,
}

impl Graph {
    fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![vec![0; n.div_ceil(64)]; n],
        }
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a][b / 64] |= 1 << (b % 64);
        self.adj[b][a / 64] |= 1 << (a % 64);
    }

    fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a][b / 64] >> (b % 64) & 1 == 1
    }

    fn degree(&self, a: usize) -> usize {
        self.adj[a].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Some automorphism sending `from` to `to`: depth-first search that
    /// always extends the partial map at the vertex with fewest candidates.
    fn automorphism(&self, from: usize, to: usize) -> Option<Permutation> {
        let words = self.n.div_ceil(64);
        let mut cand: Vec<Vec<u64>> = (0..self.n)
            .map(|u| {
                let mut c = vec![0u64; words];
                for w in 0..self.n {
                    if self.degree(u) == self.degree(w) {
                        c[w / 64] |= 1 << (w % 64);
                    }
                }
                c
            })
            .collect();
        let mut map = vec![usize::MAX; self.n];
        if !self.assign(from, to, &mut cand, &mut map) {
            return None;
        }
        if self.search(&cand, &mut map) {
            let images: Vec<u32> = map.iter().map(|&x| x as u32 + 1).collect();
            Some(Permutation::from_images(&images).unwrap())
        } else {
            None
        }
    }

    /// Maps `u` to `w` and narrows every other candidate set; false on a dead end.
    fn assign(&self, u: usize, w: usize, cand: &mut [Vec<u64>], map: &mut [usize]) -> bool {
        map[u] = w;
        for x in 0..self.n {
            if map[x] != usize::MAX && x != u {
                continue;
            }
            if x == u {
                cand[x].iter_mut().for_each(|c| *c = 0);
                cand[x][w / 64] |= 1 << (w % 64);
                continue;
            }
            let adjacent = self.has(x, u);
            for (i, c) in cand[x].iter_mut().enumerate() {
                let row = self.adj[w][i];
                *c &= if adjacent { row } else { !row };
            }
            cand[x][w / 64] &= !(1 << (w % 64));
            if cand[x].iter().all(|&c| c == 0) {
                return false;
            }
        }
        true
    }

    fn search(&self, cand: &[Vec<u64>], map: &mut [usize]) -> bool {
        let next = (0..self.n)
            .filter(|&u| map[u] == usize::MAX)
            .min_by_key(|&u| cand[u].iter().map(|c| c.count_ones()).sum::<u32>());
        let Some(u) = next else { return true };
        for w in 0..self.n {
            if cand[u][w / 64] >> (w % 64) & 1 == 0 {
                continue;
            }
            let mut c = cand.to_vec();
            let mut m = map.to_vec();
            if self.assign(u, w, &mut c, &mut m) && self.search(&c, &mut m) {
                map.copy_from_slice(&m);
                return true;
            }
        }
        false
    }
}

// ---------------------------------------------------------------- main

fn main() {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    let out = Out { root };

    // Small Mathieu groups from classical generators.
    let m11 = group(
        11,
        vec![
            Permutation::parse("(1,2,3,4,5,6,7,8,9,10,11)", 11).unwrap(),
            Permutation::parse("(3,7,11,8)(4,10,5,6)", 11).unwrap(),
        ],
    );
    assert_eq!(order_of(&m11), 7920);
    out.group("m11-11", &m11, "M11 on 11 points");
    let m12 = group(
        12,
        vec![
            Permutation::parse("(1,2,3,4,5,6,7,8,9,10,11)", 12).unwrap(),
            Permutation::parse("(3,7,11,8)(4,10,5,6)", 12).unwrap(),
            Permutation::parse("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12).unwrap(),
        ],
    );
    assert_eq!(order_of(&m12), 95040);
    out.group("m12-12", &m12, "M12 on 12 points");

    // M11 on 55 unordered pairs.
    let pairs11: Vec<PointSet> = (1..=11u32)
        .flat_map(|a| (a + 1..=11).map(move |b| PointSet::from_points(11, &[a, b]).unwrap()))
        .collect();
    let m11_55 = induced_action(&m11, &pairs11).unwrap();
    out.group(
        "m11-55",
        &m11_55,
        "M11 on the 55 unordered pairs of 11 points",
    );

    // Transitive M11 on 12 points: a 2-generated subgroup of M12 of order 7920.
    let m11_12 = {
        let mut rnd = m12.random_elements(11);
        loop {
            let a = rnd.next_element();
            let b = rnd.next_element();
            let h = group(12, vec![a, b]);
            if order_of(&h) == 7920 && h.is_transitive() {
                break h;
            }
        }
    };
    out.group(
        "m11-12",
        &m11_12,
        "M11 acting 3-transitively on 12 points inside M12",
    );

    // M24 and its relatives.
    let code = golay_code();
    let m24 = group(24, m24_generators());
    let octads: Vec<u32> = code
        .iter()
        .copied()
        .filter(|w| w.count_ones() == 8)
        .collect();
    assert_eq!(octads.len(), 759);
    {
        let octad_sets: Vec<PointSet> = octads.iter().map(|&o| mask_set(24, o)).collect();
        // Generators must permute the octads.
        induced_action(&m24, &octad_sets).expect("generators preserve the octads");
    }
    assert_eq!(order_of(&m24), 244_823_040);
    out.group(
        "m24-24",
        &m24,
        "M24 on the 24 coordinates of the extended Golay code",
    );

    let m23_full = m24.point_stabilizer(24).unwrap();
    let m23 = restrict_to_orbit(&m23_full, &m23_full.orbit(1).unwrap()).unwrap();
    assert_eq!(order_of(&m23), 10_200_960);
    out.group(
        "m23-23",
        &m23,
        "M23 as the stabilizer of a coordinate in M24",
    );

    // M22 fixes points 1 and 24; M22:2 fixes the pair {1,24}.
    let m22_full = m24.pointwise_stabilizer(&[24, 1]).unwrap();
    let duad = PointSet::from_points(24, &[1, 24]).unwrap();
    let m22x2_full = m24.setwise_stabilizer(&duad, CAP).unwrap();
    let rest22 = PointSet::from_points(24, &(2..=23).collect::<Vec<_>>()).unwrap();
    let m22 = restrict_to_orbit(&m22_full, &rest22).unwrap();
    let m22x2 = restrict_to_orbit(&m22x2_full, &rest22).unwrap();
    assert_eq!(order_of(&m22), 443_520);
    assert_eq!(order_of(&m22x2), 887_040);
    out.group(
        "m22-22",
        &m22,
        "M22 as the pointwise stabilizer of two coordinates in M24",
    );
    out.group(
        "m22x2-22",
        &m22x2,
        "M22:2 as the setwise stabilizer of two coordinates in M24",
    );

    // M22 on the 176 octads through 24 avoiding 1 (heptads).
    let heptads: Vec<PointSet> = octads
        .iter()
        .filter(|&&o| o >> 23 & 1 == 1 && o & 1 == 0)
        .map(|&o| mask_set(24, o))
        .collect();
    assert_eq!(heptads.len(), 176);
    let m22_176 = induced_action(&m22_full, &heptads).unwrap();
    out.group(
        "m22-176",
        &m22_176,
        "M22 on 176 heptads (octads through one fixed point avoiding the other)",
    );

    // M23 on 253 pairs and on 253 octads through the fixed coordinate.
    let pairs23: Vec<PointSet> = (1..=23u32)
        .flat_map(|a| (a + 1..=23).map(move |b| PointSet::from_points(24, &[a, b]).unwrap()))
        .collect();
    let m23_pairs = induced_action(&m23_full, &pairs23).unwrap();
    out.group(
        "m23-253-pairs",
        &m23_pairs,
        "M23 on the 253 unordered pairs of its 23 points",
    );
    let octads24: Vec<PointSet> = octads
        .iter()
        .filter(|&&o| o >> 23 & 1 == 1)
        .map(|&o| mask_set(24, o))
        .collect();
    let m23_heptads = induced_action(&m23_full, &octads24).unwrap();
    out.group(
        "m23-253-heptads",
        &m23_heptads,
        "M23 on the 253 octads through its fixed coordinate",
    );

    // M24 on the 1288 complementary dodecad pairs.
    {
        let dodecads: Vec<u32> = code
            .iter()
            .copied()
            .filter(|w| w.count_ones() == 12)
            .collect();
        let first: Vec<u32> = dodecads.iter().copied().filter(|d| d & 1 == 1).collect();
        let full = (1u32 << 24) - 1;
        let idx: HashMap<u32, usize> = first.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let canon = |d: u32| if d & 1 == 1 { d } else { full ^ d };
        let gens: Vec<Permutation> = m24
            .generators()
            .iter()
            .map(|x| {
                let images: Vec<u32> = first
                    .iter()
                    .map(|&d| {
                        let img = (0..24)
                            .filter(|i| d >> i & 1 == 1)
                            .fold(0u32, |v, i| v | 1 << (x.image(i + 1) - 1));
                        idx[&canon(img)] as u32 + 1
                    })
                    .collect();
                Permutation::from_images(&images).unwrap()
            })
            .collect();
        let m24_1288 = group(first.len(), gens);
        assert_eq!(first.len(), 1288);
        out.group(
            "m24-1288",
            &m24_1288,
            "M24 on the 1288 pairs of complementary dodecads",
        );
    }

    // ------------------------------------------------------------ HS on 100
    // Vertices: the pair {1,24} (the special vertex), the 22 remaining points,
    // and the 77 octads through 1 and 24 (hexads). M22:2 acts on all three.
    let hexads: Vec<u32> = octads
        .iter()
        .copied()
        .filter(|&o| o & 1 == 1 && o >> 23 & 1 == 1)
        .collect();
    assert_eq!(hexads.len(), 77);
    let mut vertices = vec![duad.clone()];
    for p in 2..=23 {
        vertices.push(PointSet::from_points(24, &[p]).unwrap());
    }
    vertices.extend(hexads.iter().map(|&h| mask_set(24, h)));
    let mut graph = Graph::new(100);
    for i in 1..=22 {
        graph.add_edge(0, i);
        for j in 23..100 {
            if vertices[j].contains(vertices[i].min_point().unwrap()) {
                graph.add_edge(i, j);
            }
        }
    }
    for i in 23..100 {
        for j in i + 1..100 {
            if vertices[i].intersection_len(&vertices[j]) == 2 {
                graph.add_edge(i, j);
            }
        }
    }
    assert!((0..100).all(|v| graph.degree(v) == 22));
    let m22x2_100 = induced_action(&m22x2_full, &vertices).unwrap();
    let m22_100 = induced_action(&m22_full, &vertices).unwrap();
    let sigma = graph
        .automorphism(0, 1)
        .expect("the graph is vertex-transitive");
    let mut gens = m22x2_100.generators().to_vec();
    gens.push(sigma.clone());
    let hs2_100 = group(100, gens);
    assert_eq!(order_of(&hs2_100), 88_704_000);
    // One of sigma, sigma*t (t outside M22) lies in HS.
    let t = m22x2_100
        .generators()
        .iter()
        .find(|x| !m22_100.contains(x).unwrap())
        .unwrap()
        .clone();
    let hs_100 = [sigma.clone(), sigma.then(&t)]
        .into_iter()
        .map(|s| {
            let mut gens = m22_100.generators().to_vec();
            gens.push(s);
            group(100, gens)
        })
        .find(|h| order_of(h) == 44_352_000)
        .expect("HS has index 2");
    out.group(
        "hs-100",
        &hs_100,
        "HS on the 100 vertices of the Higman-Sims graph",
    );
    out.group(
        "hs2-100",
        &hs2_100,
        "HS:2 as the full automorphism group of the Higman-Sims graph",
    );

    // ------------------------------------------------------------ HS on 176
    // A Hoffman–Singleton subgraph: the special vertex, a heptad (octad
    // through 24 avoiding 1, less 24) and the 42 hexads meeting it once.
    let hepta = heptads[0].intersection(&rest22);
    let mut hosi: Vec<u32> = vec![1];
    for i in 1..=22 {
        if hepta.contains(vertices[i].min_point().unwrap()) {
            hosi.push(i as u32 + 1);
        }
    }
    for i in 23..100 {
        if vertices[i].intersection_len(&hepta) == 1 {
            hosi.push(i as u32 + 1);
        }
    }
    assert_eq!(hosi.len(), 50);
    let hosi = PointSet::from_points(100, &hosi).unwrap();
    for v in hosi.points() {
        let nbrs = hosi
            .points()
            .iter()
            .filter(|&&w| graph.has(v as usize - 1, w as usize - 1))
            .count();
        assert_eq!(nbrs, 7, "induced subgraph must be 7-regular");
    }
    // HS has one orbit of 352 such subgraphs, closed under complement; the
    // 176 complementary pairs carry the primitive action of degree 176. Each
    // pair is represented by the member containing the special vertex.
    let hosi_orbit = hs_100.set_orbit(&hosi, CAP).unwrap();
    assert_eq!(hosi_orbit.len(), 352);
    let halves: Vec<PointSet> = hosi_orbit
        .elements
        .iter()
        .filter(|s| s.contains(1))
        .cloned()
        .collect();
    assert_eq!(halves.len(), 176);
    let half_index: HashMap<PointSet, u32> = halves
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i as u32 + 1))
        .collect();
    let to_176 = |x: &Permutation| {
        let images: Vec<u32> = halves
            .iter()
            .map(|s| {
                let img = s.image(x);
                let img = if img.contains(1) {
                    img
                } else {
                    img.complement()
                };
                half_index[&img]
            })
            .collect();
        Permutation::from_images(&images).unwrap()
    };
    let hs_176 = group(176, hs_100.generators().iter().map(|x| to_176(x)).collect());
    assert_eq!(order_of(&hs_176), 44_352_000);
    let hs_dir = out.group(
        "hs-176",
        &hs_176,
        "HS on the 176 splittings of the Higman-Sims graph into two Hoffman-Singleton subgraphs",
    );
    hs_subgroups(&hs_dir, &hs_176, &m22_full, &vertices, &to_176, &hexads);
    imprimitive_25(&out);
}

fn signature(g: &PermGroup) -> Vec<usize> {
    orbit_partition(g).signature
}

fn write_set_file(path: &Path, s: &PointSet) {
    halfflag::perm::io::write_set(path, s).unwrap();
}

fn write_subgroup(dir: &Path, name: &str, h: &PermGroup) {
    write_group(&dir.join(format!("{name}.grp")), h, true).unwrap();
    println!("  {name}: order {} signature {:?}", h.order(), signature(h));
}

/// The subgroups of index 23100 and 28875 and the two base blocks.
fn hs_subgroups(
    dir: &Path,
    hs: &PermGroup,
    m22_full: &PermGroup,
    vertices: &[PointSet],
    to_176: &dyn Fn(&Permutation) -> Permutation,
    hexads: &[u32],
) {
    let lift = |sub: &PermGroup| {
        let on100 = induced_action(sub, vertices).unwrap();
        group(176, on100.generators().iter().map(|x| to_176(x)).collect())
    };
    let hs_order = hs.order_u128();

    // H1: stabilizer in M22 of two of its 22 points; D1 is the complement of its 16-orbit.
    let duad = m22_full
        .setwise_stabilizer(&PointSet::from_points(24, &[2, 3]).unwrap(), CAP)
        .unwrap();
    let h1 = lift(&duad);
    assert_eq!(signature(&h1), vec![16, 80, 80]);
    let d1 = orbit_partition(&h1).orbits_of_len(16)[0].complement();
    assert_eq!(hs.set_orbit_len(&d1, CAP).unwrap(), 23100);
    write_subgroup(dir, "subgroup-h1", &h1);
    write_set_file(&dir.join("block-d1.set"), &d1);

    // H2: an index-6 subgroup of the stabilizer of the 80-orbit of a hexad
    // stabilizer, found by random 2-generation.
    let hx = lift(
        &m22_full
            .setwise_stabilizer(&mask_set(24, hexads[0]), CAP)
            .unwrap(),
    );
    let o80 = orbit_partition(&hx).orbits_of_len(80)[0].clone();
    let k = hs.setwise_stabilizer(&o80, CAP).unwrap();
    assert_eq!(k.order_u128(), 11520);
    let mut rnd = k.random_elements(23);
    let h2 = loop {
        let h = group(176, vec![rnd.next_element(), rnd.next_element()]);
        if h.order_u128() == 1920 && signature(&h) == vec![40, 40, 96] {
            break h;
        }
    };
    let forties = orbit_partition(&h2)
        .orbits_of_len(40)
        .into_iter()
        .cloned()
        .collect::<Vec<_>>();
    let b80 = forties[0].union(&forties[1]);
    assert_eq!(hs.set_orbit_len(&b80, CAP).unwrap(), 3850);
    write_subgroup(dir, "subgroup-h2", &h2);

    // H3 and H4 contain a Sylow 2-subgroup, which lives in the centralizer
    // of a 2A involution (16 fixed points); both are stabilizers of unions
    // of its orbits.
    let mut rnd = hs.random_elements(7);
    let t = loop {
        let x = rnd.next_element();
        let o = x.order();
        if o % 2 == 0 {
            let t = x.pow(o / 2);
            if (1..=176).filter(|&p| t.image(p) == p).count() == 16 {
                break t;
            }
        }
    };
    let cent = centralizer_of_involution(hs, &t, 7680, 3);
    let p = sylow2(&cent, 512, 5);
    let orbs = orbit_partition(&p).orbits;
    let n = orbs.len();
    let mut h3 = None;
    let mut d2 = None;
    for mask in 1u32..(1 << n) {
        let u = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(PointSet::empty(176), |a, i| a.union(&orbs[i]));
        if u.len() != 96 && u.len() != 128 {
            continue;
        }
        if hs_order / hs.set_orbit_len(&u, CAP).unwrap() as u128 != 1536 {
            continue;
        }
        let st = hs.setwise_stabilizer(&u, CAP).unwrap();
        match (u.len(), signature(&st).as_slice()) {
            (96, [16, 64, 96]) if h3.is_none() => h3 = Some(st),
            (128, [48, 64, 64]) if d2.is_none() => d2 = Some((u, st)),
            _ => {}
        }
    }
    let h3 = h3.expect("H3 found");
    let (d2, h4) = d2.expect("H4 found");
    write_subgroup(dir, "subgroup-h3", &h3);
    write_subgroup(dir, "subgroup-h4", &h4);
    write_set_file(&dir.join("block-d2.set"), &d2);
}

/// A transitive group of degree 25 and order 400 inside AGL(2,5) with a
/// 4-set whose orbit is a 2-(25,4,2) design with block stabilizer Z2 x Z2
/// splitting the block into two pairs; relabelled so that the block is
/// {1,2,9,24} with pairs {1,2} and {9,24}.
fn imprimitive_25(out: &Out) {
    use halfflag::action::is_primitive;
    // Point (x, y) of GF(5)^2 is 1 + x + 5y.
    let pt = |x: u32, y: u32| 1 + x % 5 + 5 * (y % 5);
    let affine = |m: [u32; 4], t: (u32, u32)| {
        let images: Vec<u32> = (0..25)
            .map(|i| {
                let (x, y) = (i % 5, i / 5);
                pt(m[0] * x + m[1] * y + t.0, m[2] * x + m[3] * y + t.1)
            })
            .collect();
        Permutation::from_images(&images).unwrap()
    };
    let translations = [affine([1, 0, 0, 1], (1, 0)), affine([1, 0, 0, 1], (0, 1))];
    let mats: Vec<[u32; 4]> = (0..625u32)
        .map(|i| [i % 5, i / 5 % 5, i / 25 % 5, i / 125])
        .filter(|m| (m[0] * m[3] + 5 * 5 - m[1] * m[2] % 5) % 5 != 0)
        .collect();
    let mut seen = std::collections::HashSet::new();
    for (i, &a) in mats.iter().enumerate() {
        for &b in &mats[i..] {
            let mut gens = translations.to_vec();
            gens.push(affine(a, (0, 0)));
            gens.push(affine(b, (0, 0)));
            let g = group(25, gens);
            if g.order_u128() != 400 || !g.is_transitive() || is_primitive(&g).unwrap() {
                continue;
            }
            let mut key: Vec<Vec<u32>> = g.elements().iter().map(|x| x.images()).collect();
            key.sort();
            if !seen.insert(key) {
                continue;
            }
            if let Some((g, block)) = find_25_block(&g) {
                let dir = out.group(
                    "imprimitive-25",
                    &g,
                    "transitive imprimitive group of order 400 on 25 points, inside AGL(2,5)",
                );
                write_set_file(&dir.join("block-b.set"), &block);
                return;
            }
        }
    }
    panic!("no suitable degree-25 group");
}

fn find_25_block(g: &PermGroup) -> Option<(PermGroup, PointSet)> {
    for mask in 0u32..(1 << 25) {
        if mask.count_ones() != 4 || mask & 1 == 0 {
            continue;
        }
        let pts: Vec<u32> = (0..25)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect();
        let b = PointSet::from_points(25, &pts).unwrap();
        if g.set_orbit_len(&b, CAP).unwrap() != 100 {
            continue;
        }
        let st = g.setwise_stabilizer(&b, CAP).unwrap();
        if st.elements().iter().any(|x| x.order() > 2) {
            continue;
        }
        let on_b: Vec<PointSet> = orbit_partition(&st)
            .orbits
            .into_iter()
            .filter(|o| o.intersection_len(&b) > 0)
            .collect();
        if on_b.len() != 2 || on_b.iter().any(|o| o.len() != 2) {
            continue;
        }
        // Pair coverage: every pair of points in exactly two blocks.
        let orbit = g.set_orbit(&b, CAP).unwrap();
        let mut cover = vec![0u32; 25 * 25];
        for blk in &orbit.elements {
            let p = blk.points();
            for x in 0..p.len() {
                for y in x + 1..p.len() {
                    cover[(p[x] as usize - 1) * 25 + p[y] as usize - 1] += 1;
                }
            }
        }
        if (0..25).any(|x| (x + 1..25).any(|y| cover[x * 25 + y] != 2)) {
            continue;
        }
        // Relabel: first pair -> {1,2}, second -> {9,24}, the rest in order.
        let (p1, p2) = (on_b[0].points(), on_b[1].points());
        let mut label = vec![0u32; 26];
        let targets = [1u32, 2, 9, 24];
        for (src, dst) in p1.iter().chain(p2.iter()).zip(targets) {
            label[*src as usize] = dst;
        }
        let mut free = (1..=25u32).filter(|x| !targets.contains(x));
        for q in 1..=25usize {
            if label[q] == 0 {
                label[q] = free.next().unwrap();
            }
        }
        let relabel = Permutation::from_images(&label[1..]).unwrap();
        let gens = g
            .generators()
            .iter()
            .map(|x| relabel.inverse().then(x).then(&relabel))
            .collect();
        let g2 = group(25, gens);
        let block = PointSet::from_points(25, &targets).unwrap();
        assert_eq!(g2.set_orbit_len(&block, CAP).unwrap(), 100);
        return Some((g2, block));
    }
    None
}

/// Bray's trick: for random g, the commutator c = [t, g] is inverted by t,
/// so either a power of c or g times a power of c centralizes t.
fn centralizer_of_involution(g: &PermGroup, t: &Permutation, target: u128, seed: u64) -> PermGroup {
    let mut gens = vec![t.clone()];
    let mut rnd = g.random_elements(seed);
    let mut c_group = group(g.degree(), gens.clone());
    while c_group.order_u128() < target {
        let x = rnd.next_element();
        let c = t.then(&x.inverse()).then(t).then(&x);
        let o = c.order();
        let cands = if o % 2 == 0 {
            vec![c.pow(o / 2)]
        } else {
            let m = (o - 1) / 2;
            vec![
                x.then(&c.pow(m)),
                c.pow(m).then(&x),
                x.then(&c.pow(m + 1)),
                c.pow(m + 1).then(&x),
            ]
        };
        for y in cands {
            if y.then(t) == t.then(&y) && !c_group.contains(&y).unwrap() {
                gens.push(y);
                c_group = group(g.degree(), gens.clone());
            }
        }
    }
    assert_eq!(c_group.order_u128(), target);
    c_group
}

/// Grows a 2-subgroup by adjoining 2-parts of random elements while the
/// result stays a 2-group, until it reaches `target`.
fn sylow2(g: &PermGroup, target: u128, seed: u64) -> PermGroup {
    let mut rnd = g.random_elements(seed);
    let two_part = |x: &Permutation| {
        let mut o = x.order();
        let mut y = x.clone();
        while o % 2 == 0 {
            o /= 2;
        }
        y = y.pow(o);
        y
    };
    let mut gens: Vec<Permutation> = Vec::new();
    let mut cur = group(g.degree(), vec![]);
    while cur.order_u128() < target {
        let y = two_part(&rnd.next_element());
        if y.is_identity() || cur.contains(&y).unwrap() {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(y);
        let h = group(g.degree(), trial.clone());
        if h.order_u128().is_power_of_two() {
            gens = trial;
            cur = h;
        }
    }
    cur
}
