use crate::design::{from_base_blocks, IncidenceStructure};
use crate::error::{Error, Result};
use crate::perm::io::{parse_group, parse_set};
use crate::perm::{PermGroup, Permutation, PointSet, DEFAULT_ORBIT_CAP};

/// A group together with the base blocks of a design it acts on.
#[derive(Clone, Debug)]
pub struct Example {
    pub name: String,
    pub group: PermGroup,
    pub bases: Vec<PointSet>,
}

impl Example {
    /// Union of the orbits of the base blocks.
    pub fn design(&self) -> Result<IncidenceStructure> {
        from_base_blocks(&self.group, &self.bases, DEFAULT_ORBIT_CAP)
    }
}

macro_rules! fixture {
    ($path:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/", $path))
    };
}

/// Names accepted by [`builtin_example`].
pub const BUILTIN_NAMES: &[&str] = &[
    "psl29-10",
    "biplane-16",
    "imprimitive-25",
    "hs-176-d1",
    "hs-176-d2",
    "m11-11",
    "m11-12",
    "m11-55",
    "m12-12",
    "m22-22",
    "m22x2-22",
    "m23-23",
    "m24-24",
    "hs-176",
];

/// Group text of a built-in group.
pub fn builtin_group_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "psl29-10" => fixture!("psl29-10/group.grp"),
        "imprimitive-25" => fixture!("imprimitive-25/group.grp"),
        "hs-176" | "hs-176-d1" | "hs-176-d2" => fixture!("hs-176/group.grp"),
        "m11-11" => fixture!("m11-11/group.grp"),
        "m11-12" => fixture!("m11-12/group.grp"),
        "m11-55" => fixture!("m11-55/group.grp"),
        "m12-12" => fixture!("m12-12/group.grp"),
        "m22-22" => fixture!("m22-22/group.grp"),
        "m22x2-22" => fixture!("m22x2-22/group.grp"),
        "m23-23" => fixture!("m23-23/group.grp"),
        "m24-24" => fixture!("m24-24/group.grp"),
        _ => return None,
    })
}

/// Built-in subgroups of HS on 176 points: `h1`..`h4`.
pub fn builtin_hs_subgroup(name: &str) -> Result<PermGroup> {
    let text = match name {
        "h1" => fixture!("hs-176/subgroup-h1.grp"),
        "h2" => fixture!("hs-176/subgroup-h2.grp"),
        "h3" => fixture!("hs-176/subgroup-h3.grp"),
        "h4" => fixture!("hs-176/subgroup-h4.grp"),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    Ok(parse_group(text)?.with_label(name))
}

fn sets(degree: usize, lists: &[&[u32]]) -> Result<Vec<PointSet>> {
    lists
        .iter()
        .map(|l| PointSet::from_points(degree, l))
        .collect()
}

/// A verified built-in group with the base blocks of its design (none for
/// the bare group fixtures).
pub fn builtin_example(name: &str) -> Result<Example> {
    let (group, bases) = match name {
        "biplane-16" => {
            let (g, d) = build_affine_biplane()?;
            (g, vec![d.blocks()[0].clone()])
        }
        "psl29-10" => {
            let g = parse_group(builtin_group_text(name).unwrap())?;
            (g, sets(10, &[&[1, 2, 4, 5], &[1, 2, 3, 7]])?)
        }
        "imprimitive-25" => {
            let g = parse_group(builtin_group_text(name).unwrap())?;
            (g, vec![parse_set(fixture!("imprimitive-25/block-b.set"))?])
        }
        "hs-176-d1" => (
            parse_group(builtin_group_text(name).unwrap())?,
            vec![parse_set(fixture!("hs-176/block-d1.set"))?],
        ),
        "hs-176-d2" => (
            parse_group(builtin_group_text(name).unwrap())?,
            vec![parse_set(fixture!("hs-176/block-d2.set"))?],
        ),
        other => match builtin_group_text(other) {
            Some(text) => (parse_group(text)?, Vec::new()),
            None => return Err(Error::UnknownName(other.to_string())),
        },
    };
    if !group.is_transitive() {
        return Err(Error::Verification(format!(
            "{name}: built-in group is not transitive"
        )));
    }
    Ok(Example {
        name: name.to_string(),
        group: group.with_label(name),
        bases,
    })
}

/// Point number of the vector `(c1, c2, c3, c4)` of GF(2)^4: `1 + Σ c_i 2^(i-1)`.
pub fn biplane_point(v: u32) -> u32 {
    v + 1
}

/// The (16,6,2) biplane from the difference set
/// `{0, e1, e2, e3, e4, e1+e2+e3+e4}` in GF(2)^4, with the group generated
/// by the translations and an affine map of order 3 that fixes the base
/// block and splits it into two 3-cycles. The affine map is the first one
/// found in a fixed enumeration order of (matrix, translation) pairs.
pub fn build_affine_biplane() -> Result<(PermGroup, IncidenceStructure)> {
    let base: Vec<u32> = vec![0, 1, 2, 4, 8, 15];
    let base_set = PointSet::from_points(
        16,
        &base.iter().map(|&x| biplane_point(x)).collect::<Vec<_>>(),
    )?;
    let translation = |t: u32| {
        let images: Vec<u32> = (0..16u32).map(|x| biplane_point(x ^ t)).collect();
        Permutation::from_images(&images)
    };
    // Column j of a matrix is the image of e_{j+1}; matrices enumerated as 16-bit codes.
    let apply = |m: u32, x: u32| {
        (0..4)
            .filter(|j| x >> j & 1 == 1)
            .fold(0u32, |acc, j| acc ^ (m >> (4 * j) & 15))
    };
    let mut element = None;
    'search: for m in 0u32..1 << 16 {
        for c in 0u32..16 {
            let images: Vec<u32> = (0..16u32).map(|x| biplane_point(apply(m, x) ^ c)).collect();
            let Ok(p) = Permutation::from_images(&images) else {
                continue;
            };
            if p.order() != 3 || base_set.image(&p) != base_set {
                continue;
            }
            let on_block = base_set
                .points()
                .iter()
                .filter(|&&q| p.image(q) != q)
                .count();
            if on_block == 6 {
                element = Some(p);
                break 'search;
            }
        }
    }
    let element =
        element.ok_or_else(|| Error::Verification("no affine element of order 3 found".into()))?;
    let mut gens: Vec<Permutation> = [1u32, 2, 4, 8]
        .iter()
        .map(|&t| translation(t))
        .collect::<Result<_>>()?;
    gens.push(element);
    let g = PermGroup::new(16, gens)?;
    if g.order_u128() != 48 {
        return Err(Error::Verification(format!(
            "biplane group has order {}, expected 48",
            g.order()
        )));
    }
    let blocks: Vec<PointSet> = (0..16u32)
        .map(|t| translation(t).map(|x| base_set.image(&x)))
        .collect::<Result<_>>()?;
    Ok((
        g.with_label("biplane-16"),
        IncidenceStructure::new(16, blocks)?,
    ))
}
