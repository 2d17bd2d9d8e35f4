mod common;

use common::{corpus, group, small_transitive};
use halfflag::action::{
    is_2_transitive, is_primitive, minimal_block_system, orbit_partition, primitivity, subdegrees,
    Primitivity,
};
use halfflag::data::{build_affine_biplane, builtin_example, wreath_product_action};
use halfflag::PermGroup;

/// Every set partition of `{0..n}` as a class label per point (restricted growth strings).
fn partitions(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut labels = vec![0u8; n];
    fn rec(i: usize, max: u8, labels: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == labels.len() {
            out.push(labels.clone());
            return;
        }
        for c in 0..=max + 1 {
            labels[i] = c;
            rec(i + 1, max.max(c), labels, out);
        }
    }
    if n > 0 {
        rec(1, 0, &mut labels, &mut out);
    }
    out
}

fn invariant(g: &PermGroup, labels: &[u8]) -> bool {
    g.generators().iter().all(|x| {
        // The image of each class must again be a single class.
        let mut map = vec![u8::MAX; labels.len()];
        (0..labels.len()).all(|p| {
            let img = labels[x.image(p as u32 + 1) as usize - 1];
            let c = labels[p] as usize;
            if map[c] == u8::MAX {
                map[c] = img;
            }
            map[c] == img
        })
    })
}

fn nontrivial(labels: &[u8]) -> bool {
    let k = *labels.iter().max().unwrap() as usize + 1;
    k > 1 && k < labels.len()
}

#[test]
fn primitivity_agrees_with_partition_enumeration() {
    for (name, g) in small_transitive() {
        let n = g.degree();
        let invariant_parts: Vec<Vec<u8>> = partitions(n)
            .into_iter()
            .filter(|l| nontrivial(l) && invariant(&g, l))
            .collect();
        let verdict = primitivity(&g).unwrap();
        assert_eq!(verdict.is_primitive(), invariant_parts.is_empty(), "{name}");
        if let Primitivity::Imprimitive(sys) = verdict {
            let mut labels = vec![0u8; n];
            for (i, c) in sys.classes.iter().enumerate() {
                for p in c.points() {
                    labels[p as usize - 1] = i as u8;
                }
            }
            assert!(
                invariant_parts.contains(&relabel(&labels)),
                "{name}: returned system is not invariant"
            );
        }
        // Minimal blocks: the class of 1 is contained in the class of 1 of
        // every invariant partition joining 1 and beta.
        for beta in 2..=n as u32 {
            let joined: Vec<&Vec<u8>> = invariant_parts
                .iter()
                .filter(|l| l[0] == l[beta as usize - 1])
                .collect();
            match minimal_block_system(&g, 1, beta).unwrap() {
                None => assert!(joined.is_empty(), "{name} beta {beta}"),
                Some(sys) => {
                    let class = sys.classes.iter().find(|c| c.contains(1)).unwrap();
                    assert!(class.contains(beta));
                    for l in joined {
                        assert!(
                            class.points().iter().all(|&p| l[p as usize - 1] == l[0]),
                            "{name} beta {beta}"
                        );
                    }
                }
            }
        }
    }
}

fn relabel(labels: &[u8]) -> Vec<u8> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|c| {
            let next = map.len() as u8;
            *map.entry(*c).or_insert(next)
        })
        .collect()
}

#[test]
fn subdegrees_sum_to_degree() {
    for (name, g) in corpus() {
        if !g.is_transitive() {
            assert!(subdegrees(&g).is_err(), "{name}");
            continue;
        }
        let sd = subdegrees(&g).unwrap();
        assert_eq!(sd.values.iter().sum::<usize>(), g.degree(), "{name}");
        let fixed = g.point_stabilizer(1).unwrap();
        let fixed_points = (1..=g.degree() as u32)
            .filter(|&p| fixed.orbit(p).unwrap().len() == 1)
            .count();
        assert_eq!(
            sd.values.iter().filter(|&&d| d == 1).count(),
            fixed_points,
            "{name}"
        );
        if is_2_transitive(&g) {
            assert_eq!(sd.rank(), 2, "{name}");
            assert_eq!(sd.values, vec![1, g.degree() - 1], "{name}");
        }
    }
}

#[test]
fn conjugate_subgroups_share_signatures() {
    let m11 = builtin_example("m11-11").unwrap().group;
    let subs = [
        m11.point_stabilizer(1).unwrap(),
        m11.pointwise_stabilizer(&[1, 2]).unwrap(),
        PermGroup::new(11, vec![m11.random_element(3)]).unwrap(),
        PermGroup::new(11, vec![m11.random_element(4), m11.random_element(5)]).unwrap(),
    ];
    for (i, h) in subs.iter().enumerate() {
        let sig = orbit_partition(h).signature;
        for seed in 0..10 {
            let x = m11.random_element(100 + seed);
            assert_eq!(
                orbit_partition(&h.conjugate_by(&x)).signature,
                sig,
                "subgroup {i}"
            );
        }
    }
}

#[test]
fn spec_examples() {
    let m11_55 = builtin_example("m11-55").unwrap().group;
    assert_eq!(subdegrees(&m11_55).unwrap().values, vec![1, 18, 36]);
    let hs = builtin_example("hs-176").unwrap().group;
    assert_eq!(subdegrees(&hs).unwrap().values, vec![1, 175]);
    assert!(is_primitive(&hs).unwrap());
    let s5 = group(5, &["(1,2,3,4,5)", "(1,2)"]);
    assert_eq!(
        subdegrees(&wreath_product_action(&s5, 2).unwrap())
            .unwrap()
            .values,
        vec![1, 8, 16]
    );

    let imp = builtin_example("imprimitive-25").unwrap().group;
    match primitivity(&imp).unwrap() {
        Primitivity::Imprimitive(sys) => {
            assert_eq!(sys.class_count(), 5);
            assert_eq!(sys.class_size(), 5);
        }
        Primitivity::Primitive => panic!("imprimitive-25 reported primitive"),
    }
    match primitivity(&group(4, &["(1,2,3,4)"])).unwrap() {
        Primitivity::Imprimitive(sys) => {
            let classes: Vec<Vec<u32>> = sys.classes.iter().map(|c| c.points()).collect();
            assert_eq!(classes, vec![vec![1, 3], vec![2, 4]]);
        }
        Primitivity::Primitive => panic!("C4 reported primitive"),
    }

    assert!(is_2_transitive(&builtin_example("psl29-10").unwrap().group));
    assert!(!is_2_transitive(&build_affine_biplane().unwrap().0));
    for n in 2..=7 {
        let sym = if n == 2 {
            group(2, &["(1,2)"])
        } else {
            group(
                n,
                &[
                    &format!(
                        "({})",
                        (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(",")
                    ),
                    "(1,2)",
                ],
            )
        };
        assert!(is_2_transitive(&sym), "S{n}");
    }
}

#[test]
fn intransitive_groups_are_rejected() {
    let g = group(5, &["(1,2)", "(3,4,5)"]);
    assert!(primitivity(&g).is_err());
    assert!(minimal_block_system(&g, 1, 2).is_err());
    assert!(!is_2_transitive(&g));
}
