mod common;

use std::collections::HashSet;

use common::{closure, corpus, group, naive_orbit, perm, set};
use halfflag::data::builtin_example;
use halfflag::perm::DEFAULT_ORBIT_CAP;
use halfflag::{PermGroup, Permutation, PointSet};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn composition_is_left_to_right_on_example_generators() {
    let a = perm(10, "(3,9,7,8)(4,10,5,6)");
    let b = perm(10, "(1,8,2)(3,4,5)(6,10,7)");
    let ab = a.then(&b);
    for x in 1..=10 {
        assert_eq!(ab.image(x), b.image(a.image(x)));
    }
    // 7 -> 8 under a, then 8 -> 2 under b.
    assert_eq!(ab.image(7), 2);
    assert_eq!(b.image(1), 8);
    assert_eq!(perm(3, "(1,2)").then(&perm(3, "(2,3)")), perm(3, "(1,3,2)"));
}

#[test]
fn chain_order_matches_closure() {
    for (name, g) in corpus() {
        let n = closure(&g).len();
        assert!(n <= 5000, "{name} is too large for the closure oracle");
        assert_eq!(g.order(), BigUint::from(n), "{name}");
    }
}

#[test]
fn membership_matches_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, g) in corpus() {
        let elements = closure(&g);
        let mut pts: Vec<u32> = (1..=g.degree() as u32).collect();
        for _ in 0..100 {
            pts.shuffle(&mut rng);
            let x = Permutation::from_images(&pts).unwrap();
            let zero: Vec<u32> = pts.iter().map(|p| p - 1).collect();
            assert_eq!(
                g.contains(&x).unwrap(),
                elements.contains(&zero),
                "{name}: {x}"
            );
        }
        // Members drawn from the closure itself.
        for zero in elements.iter().take(50) {
            let x =
                Permutation::from_images(&zero.iter().map(|p| p + 1).collect::<Vec<_>>()).unwrap();
            assert!(g.contains(&x).unwrap(), "{name}");
        }
    }
}

#[test]
fn rebuilding_is_deterministic() {
    for (name, g) in corpus() {
        let h = PermGroup::new(g.degree(), g.generators().to_vec()).unwrap();
        assert_eq!(g.chain().base(), h.chain().base(), "{name}");
        assert_eq!(
            g.chain().orbit_lengths(),
            h.chain().orbit_lengths(),
            "{name}"
        );
    }
}

#[test]
fn orbits_match_generator_closure() {
    for (name, g) in corpus() {
        for p in 1..=g.degree() as u32 {
            assert_eq!(
                g.orbit(p).unwrap().points(),
                naive_orbit(&g, p),
                "{name} point {p}"
            );
        }
    }
}

#[test]
fn spec_examples() {
    let s5 = group(5, &["(1,2)", "(1,2,3,4,5)"]);
    assert_eq!(s5.order_u128(), 120);
    let psl = builtin_example("psl29-10").unwrap().group;
    assert_eq!(psl.order_u128(), 360);
    assert_eq!(psl.orbit(1).unwrap().len(), 10);
    assert_eq!(
        psl.set_orbit_len(&set(10, &[1, 2, 4, 5]), DEFAULT_ORBIT_CAP)
            .unwrap(),
        15
    );
    let st = psl
        .setwise_stabilizer(&set(10, &[1, 2, 4, 5]), DEFAULT_ORBIT_CAP)
        .unwrap();
    assert_eq!(st.order_u128(), 24);
    assert_eq!(
        naive_orbit(&st, 1)
            .iter()
            .filter(|p| [1, 2, 4, 5].contains(*p))
            .count(),
        4
    );

    let c3 = group(3, &["(1,2,3)"]);
    assert!(!c3.contains(&perm(3, "(1,2)")).unwrap());
    assert!(c3.contains(&Permutation::identity(3)).unwrap());
    assert_eq!(group(3, &["(2,3)"]).orbit(1).unwrap().points(), vec![1]);
    assert_eq!(
        group(3, &["(1,2)", "(1,2,3)"])
            .point_stabilizer(3)
            .unwrap()
            .order_u128(),
        2
    );

    let full = PointSet::full(10);
    assert_eq!(psl.set_orbit_len(&full, DEFAULT_ORBIT_CAP).unwrap(), 1);
    let empty = PointSet::empty(10);
    assert_eq!(psl.set_orbit_len(&empty, DEFAULT_ORBIT_CAP).unwrap(), 1);
    assert_eq!(
        psl.setwise_stabilizer(&empty, DEFAULT_ORBIT_CAP)
            .unwrap()
            .order(),
        psl.order()
    );

    let m11 = builtin_example("m11-11").unwrap().group;
    assert_eq!(m11.point_stabilizer(1).unwrap().order_u128(), 720);
    assert!(m11
        .random_elements(5)
        .take(1000)
        .all(|x| m11.contains(&x).unwrap()));
}

#[test]
fn setwise_stabilizer_of_singleton_is_point_stabilizer() {
    for (name, g) in corpus() {
        let p = g.degree() as u32;
        let a = g
            .setwise_stabilizer(&set(g.degree(), &[p]), DEFAULT_ORBIT_CAP)
            .unwrap();
        let b = g.point_stabilizer(p).unwrap();
        assert_eq!(a.order(), b.order(), "{name}");
        assert!(
            a.generators().iter().all(|x| b.contains(x).unwrap()),
            "{name}"
        );
    }
}

#[test]
fn pointset_encoding_is_canonical_up_to_degree_20() {
    for n in 1..=20usize {
        let nbytes = n.div_ceil(8);
        let mut seen = HashSet::new();
        for mask in 0u32..1 << n {
            let pts: Vec<u32> = (0..n as u32)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            let mut rev = pts.clone();
            rev.reverse();
            let a = PointSet::from_points(n, &pts).unwrap();
            let b = PointSet::from_points(n, &rev).unwrap();
            let enc = a.encoding();
            assert_eq!(enc, b.encoding());
            assert_eq!(enc, mask.to_le_bytes()[..nbytes].to_vec());
            assert!(seen.insert(enc.clone()));
            assert_eq!(PointSet::from_encoding(n, &enc).unwrap(), a);
        }
        assert_eq!(seen.len(), 1 << n);
    }
}

fn corpus_instance() -> impl Strategy<Value = (usize, u32, u32)> {
    let n = corpus().len();
    (0..n, any::<u32>(), any::<u32>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_stabilizer_for_points_and_sets((gi, p, mask) in corpus_instance()) {
        let (_, g) = &corpus()[gi];
        let n = g.degree();
        let p = p % n as u32 + 1;
        let order = g.order();
        let orbit = g.orbit(p).unwrap().len();
        let stab = g.point_stabilizer(p).unwrap();
        prop_assert_eq!(&order, &(stab.order() * BigUint::from(orbit)));

        let pts: Vec<u32> = (0..n.min(32) as u32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let s = PointSet::from_points(n, &pts).unwrap();
        let so = g.set_orbit_len(&s, DEFAULT_ORBIT_CAP).unwrap();
        let st = g.setwise_stabilizer(&s, DEFAULT_ORBIT_CAP).unwrap();
        prop_assert_eq!(&order, &(st.order() * BigUint::from(so)));
        prop_assert!(st.generators().iter().all(|x| s.image(x) == s));
    }
}
