mod common;

use common::{brute_lambda, design_corpus, group, set};
use halfflag::action::{is_2_transitive, is_primitive, subdegrees};
use halfflag::data::{build_affine_biplane, builtin_example};
use halfflag::design::{
    classify_parameters, flag_orbits, from_base_blocks, half_flag_dual_check, is_block_transitive,
    is_flag_transitive, is_half_flag_transitive, pbd_profile, IncidenceStructure,
};
use halfflag::perm::DEFAULT_ORBIT_CAP;
use halfflag::sieve::{lemma23_divides, prop31_witness, theorem1_criteria};
use halfflag::PointSet;

#[test]
fn half_flag_predicates_agree_on_corpus() {
    for (name, g, d) in design_corpus() {
        let a = is_half_flag_transitive(&g, &d).unwrap().holds;
        let b = half_flag_dual_check(&g, &d).unwrap().holds;
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn half_flag_implies_two_equal_flag_orbits() {
    for (name, g, d) in design_corpus() {
        if !is_half_flag_transitive(&g, &d).unwrap().holds {
            continue;
        }
        let p = classify_parameters(&d).unwrap();
        let f = flag_orbits(&g, &d).unwrap();
        assert_eq!(f.orbit_sizes, vec![(p.b * p.k / 2) as usize; 2], "{name}");
    }
    // The converse fails on the PSL(2,9) example.
    let ex = builtin_example("psl29-10").unwrap();
    let d = ex.design().unwrap();
    assert_eq!(
        flag_orbits(&ex.group, &d).unwrap().orbit_sizes,
        vec![60, 60]
    );
    assert!(!is_half_flag_transitive(&ex.group, &d).unwrap().holds);
}

#[test]
fn lambda_counting_matches_parameters() {
    for (name, _, d) in design_corpus() {
        assert!(d.v() <= 30);
        let p = classify_parameters(&d).unwrap();
        assert_eq!(brute_lambda(&d), Some(p.lambda), "{name}");
        assert_eq!(p.lambda * (p.v - 1), p.r * (p.k - 1), "{name}");
        assert_eq!(p.v * p.r, p.b * p.k, "{name}");
    }
}

#[test]
fn orbit_designs_of_2_transitive_groups() {
    let groups = [
        group(7, &["(1,2,3,4,5,6,7)", "(2,4,3,7,5,6)"]),
        group(7, &["(1,2,3,4,5,6,7)", "(3,5)(6,7)"]),
        group(6, &["(1,2,3,4,5)", "(4,5,6)"]),
        builtin_example("psl29-10").unwrap().group,
    ];
    for g in &groups {
        assert!(is_2_transitive(g));
        let v = g.degree() as u64;
        for mask in 1u32..(1 << g.degree()) {
            let pts: Vec<u32> = (0..g.degree() as u32)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            if pts.len() < 2 || pts.len() % 3 != 0 {
                continue;
            }
            let b = set(g.degree(), &pts);
            let d = from_base_blocks(g, &[b.clone()], DEFAULT_ORBIT_CAP).unwrap();
            let p = classify_parameters(&d).unwrap();
            let k = pts.len() as u64;
            let n = g.set_orbit_len(&b, DEFAULT_ORBIT_CAP).unwrap() as u64;
            assert_eq!(p.lambda * v * (v - 1), n * k * (k - 1));
        }
    }
}

#[test]
fn subdegree_divisibility_on_half_flag_designs() {
    let mut seen = 0;
    for (name, g, d) in design_corpus() {
        if !is_half_flag_transitive(&g, &d).unwrap().holds {
            continue;
        }
        seen += 1;
        let p = classify_parameters(&d).unwrap();
        let sd: Vec<u64> = subdegrees(&g)
            .unwrap()
            .nontrivial()
            .iter()
            .map(|&x| x as u64)
            .collect();
        assert!(lemma23_divides(p.r, p.lambda, &sd), "{name}");
    }
    assert!(seen >= 2);
}

#[test]
fn strong_lambda_bound_forces_primitivity() {
    for (name, g, d) in design_corpus() {
        let p = classify_parameters(&d).unwrap();
        if !p.nontrivial {
            continue;
        }
        let c = theorem1_criteria(p.v, p.k, p.lambda, p.r).unwrap();
        let half = is_half_flag_transitive(&g, &d).unwrap().holds;
        if half && c.i {
            assert!(is_primitive(&g).unwrap(), "{name}");
        }
        if half && !is_primitive(&g).unwrap() {
            let w = prop31_witness(p.v, p.k, p.lambda, p.r).unwrap();
            assert!(w.both(), "{name}");
        }
    }
}

#[test]
fn psl29_example() {
    let ex = builtin_example("psl29-10").unwrap();
    let d = ex.design().unwrap();
    let p = classify_parameters(&d).unwrap();
    assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (10, 30, 12, 4, 4));
    assert!(!is_block_transitive(&ex.group, &d).unwrap());
    let w = is_half_flag_transitive(&ex.group, &d).unwrap();
    assert!(!w.holds);
    for base in &ex.bases {
        let c = from_base_blocks(&ex.group, std::slice::from_ref(base), DEFAULT_ORBIT_CAP).unwrap();
        let p = classify_parameters(&c).unwrap();
        assert_eq!((p.v, p.b, p.k, p.lambda), (10, 15, 4, 2));
        assert!(is_flag_transitive(&ex.group, &c).unwrap());
        assert_eq!(flag_orbits(&ex.group, &c).unwrap().orbit_sizes, vec![60]);
    }
    // G_B is transitive on B.
    let st = ex
        .group
        .setwise_stabilizer(&ex.bases[0], DEFAULT_ORBIT_CAP)
        .unwrap();
    assert_eq!(st.orbit(1).unwrap().intersection_len(&ex.bases[0]), 4);
}

#[test]
fn biplane_example() {
    let (g, d) = build_affine_biplane().unwrap();
    let p = classify_parameters(&d).unwrap();
    assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (16, 16, 6, 6, 2));
    let w = is_half_flag_transitive(&g, &d).unwrap();
    assert!(w.holds);
    assert_eq!(w.stabilizer_order, "3");
    assert_eq!(w.restricted_orbits, vec![3, 3]);
    let dual = half_flag_dual_check(&g, &d).unwrap();
    assert_eq!(dual.orbits_through_point, vec![3, 3]);
    assert!(!is_primitive(&g).unwrap());
    let c = theorem1_criteria(16, 6, 2, 6).unwrap();
    assert!(!c.iii);
}

#[test]
fn imprimitive_25_example() {
    let ex = builtin_example("imprimitive-25").unwrap();
    assert_eq!(ex.bases[0].points(), vec![1, 2, 9, 24]);
    let d = ex.design().unwrap();
    let p = classify_parameters(&d).unwrap();
    assert_eq!((p.b, p.r, p.k, p.lambda), (100, 16, 4, 2));
    let w = is_half_flag_transitive(&ex.group, &d).unwrap();
    assert!(w.holds);
    assert_eq!(w.stabilizer_order, "4");
    assert_eq!(w.restricted_orbits, vec![2, 2]);
    let st = ex
        .group
        .setwise_stabilizer(&ex.bases[0], DEFAULT_ORBIT_CAP)
        .unwrap();
    assert!(
        st.generators().iter().all(|x| x.order() <= 2),
        "G_B is elementary abelian"
    );
    assert_eq!(st.orbit(1).unwrap().points(), vec![1, 2]);
    assert_eq!(st.orbit(9).unwrap().points(), vec![9, 24]);
    assert!(!is_primitive(&ex.group).unwrap());
    let c = theorem1_criteria(25, 4, 2, 16).unwrap();
    assert!(!c.i && !c.ii && !c.iii);
    let w = prop31_witness(25, 4, 2, 16).unwrap();
    assert!(w.lambda_below_gcd_sq && w.r_at_most_bound);
}

#[test]
fn induced_structure_on_an_imprimitivity_class() {
    let ex = builtin_example("imprimitive-25").unwrap();
    let d = ex.design().unwrap();
    let halfflag::action::Primitivity::Imprimitive(sys) =
        halfflag::action::primitivity(&ex.group).unwrap()
    else {
        panic!("expected imprimitive");
    };
    let class = &sys.classes[0];
    let pts = class.points();
    let relabel = |p: u32| pts.iter().position(|&q| q == p).unwrap() as u32 + 1;
    let blocks: Vec<PointSet> = d
        .blocks()
        .iter()
        .map(|b| b.intersection(class))
        .filter(|b| !b.is_empty())
        .map(|b| {
            set(
                pts.len(),
                &b.points().into_iter().map(relabel).collect::<Vec<_>>(),
            )
        })
        .collect();
    let induced = IncidenceStructure::new(pts.len(), blocks).unwrap();
    let profile = pbd_profile(&induced).unwrap();
    assert!(profile.block_sizes.iter().all(|&k| k == 1 || k == 2));
    // r/2 (k1 + k2 - 2) = λ (w - 1) with r = 16, λ = 2, w = 5.
    assert_eq!(profile.lambda, 2);
    assert!(profile.block_sizes.contains(&1) && profile.block_sizes.contains(&2));
}

#[test]
fn design_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, _, d) in design_corpus() {
        let path = dir.path().join("d.design");
        d.write(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let back = IncidenceStructure::read(&path).unwrap();
        assert_eq!(back.blocks(), d.blocks(), "{name}");
        assert_eq!(back.to_text(), text, "{name}");
    }
}

#[test]
fn malformed_structures_are_diagnosed() {
    let d = IncidenceStructure::new(3, vec![set(3, &[1, 2]), set(3, &[1, 2, 3])]).unwrap();
    let e = classify_parameters(&d).unwrap_err().to_string();
    assert!(e.contains("block size"), "{e}");
    let e = pbd_profile(&d).unwrap_err().to_string();
    assert!(e.contains("pair"), "{e}");
}
