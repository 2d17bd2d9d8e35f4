//! The four-step search: parameter sieve, subgroups of index `b`, equal-size
//! orbit pairs, and block-orbit verification; plus the candidate table and
//! the product-action search.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::action::{orbit_partition, primitivity, subdegrees};
use crate::data::{wreath_product_action, FixtureCatalog};
use crate::design::{
    classify_parameters, is_half_flag_transitive, DesignParams, HalfFlagWitness, IncidenceStructure,
};
use crate::error::{Error, Result};
use crate::perm::io::write_set;
use crate::perm::{PermGroup, Permutation, PointSet, SetOrbit, DEFAULT_ORBIT_CAP};
use crate::sieve::{
    group_by_b, lemma23_divides, step1_enumerate, theorem1_criteria, CandidateAction, ParamTuple,
    Step1Options, Theorem1Criteria,
};
use crate::subgroups::{
    subgroups_from_fixtures, subgroups_of_indices, Completeness, SearchBudget, SubgroupClassReport,
};

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub budget: SearchBudget,
    pub orbit_cap: usize,
    /// Apply the `r_max` divisibility filter after Step 1 (on by default).
    pub rmax_filter: bool,
    /// Search for subgroups when no fixture covers an index. Small parents
    /// are always enumerated exhaustively.
    pub search: bool,
    /// Upper bound on Step 3 orbit pairs tried per subgroup.
    pub max_pairs: usize,
    /// Verified subgroups to use at Step 2, by name.
    pub fixtures: Vec<(String, PermGroup)>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            budget: SearchBudget::default(),
            orbit_cap: DEFAULT_ORBIT_CAP,
            rmax_filter: true,
            search: true,
            max_pairs: 10_000,
            fixtures: Vec::new(),
        }
    }
}

/// Everything checked about one candidate base block `O1 ∪ O2`.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateVerdict {
    pub k: usize,
    pub expected_b: u64,
    pub orbit_len: usize,
    pub orbit_matches: bool,
    pub design: Option<DesignCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DesignCheck {
    pub params: DesignParams,
    pub half_flag: HalfFlagWitness,
    pub theorem1: Theorem1Criteria,
    pub primitive: bool,
    /// `r / gcd(r, 2λ)` divides every nontrivial subdegree.
    pub lemma23: bool,
    #[serde(skip)]
    pub design: IncidenceStructure,
}

impl DesignCheck {
    /// Half-flag-transitive, `λ >= gcd(r, 2λ)²`, and point-primitive.
    pub fn accepted(&self) -> bool {
        self.half_flag.holds && self.theorem1.i && self.primitive
    }
}

impl CandidateVerdict {
    pub fn accepted(&self) -> bool {
        self.orbit_matches && self.design.as_ref().is_some_and(|d| d.accepted())
    }
}

/// Step 4 for one pair of disjoint equal-size sets: `|B^G| = b`, then the
/// full design checks on `B^G`.
pub fn verify_design_candidate(
    g: &PermGroup,
    o1: &PointSet,
    o2: &PointSet,
    b_expected: u64,
    cap: usize,
) -> Result<CandidateVerdict> {
    let (verdict, _) = verify_candidate_with_orbit(g, o1, o2, b_expected, cap)?;
    Ok(verdict)
}

fn verify_candidate_with_orbit(
    g: &PermGroup,
    o1: &PointSet,
    o2: &PointSet,
    b_expected: u64,
    cap: usize,
) -> Result<(CandidateVerdict, SetOrbit)> {
    if o1.degree() != g.degree() || o2.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: g.degree(),
            right: o1.degree().max(o2.degree()),
        });
    }
    if o1.len() != o2.len() || !o1.is_disjoint(o2) {
        return Err(Error::InvalidInput(
            "the two orbits must be disjoint and of equal size".into(),
        ));
    }
    let block = o1.union(o2);
    let (k, v) = (block.len(), g.degree());
    if k <= 2 || k + 1 >= v {
        return Err(Error::InvalidInput(format!(
            "block size {k} is outside 2 < k < v - 1 = {}",
            v - 1
        )));
    }
    let orbit = g.set_orbit(&block, cap)?;
    let orbit_matches = orbit.len() as u64 == b_expected;
    let mut verdict = CandidateVerdict {
        k,
        expected_b: b_expected,
        orbit_len: orbit.len(),
        orbit_matches,
        design: None,
    };
    if orbit_matches {
        let design = IncidenceStructure::new(v, orbit.elements.clone())?;
        let params = classify_parameters(&design)?;
        let half_flag = is_half_flag_transitive(g, &design)?;
        let theorem1 = theorem1_criteria(params.v, params.k, params.lambda, params.r)?;
        let primitive = primitivity(g)?.is_primitive();
        let sub: Vec<u64> = subdegrees(g)?
            .nontrivial()
            .iter()
            .map(|&d| d as u64)
            .collect();
        let lemma23 = lemma23_divides(params.r, params.lambda, &sub);
        verdict.design = Some(DesignCheck {
            params,
            half_flag,
            theorem1,
            primitive,
            lemma23,
            design,
        });
    }
    Ok((verdict, orbit))
}

#[derive(Clone, Debug, Serialize)]
pub struct Step4Rejection {
    pub subgroup: String,
    pub signature: Vec<usize>,
    pub k: usize,
    pub orbit_len: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FoundDesign {
    pub params: DesignParams,
    pub base_block: Vec<u32>,
    pub subgroup: String,
    pub subgroup_signature: Vec<usize>,
    pub stabilizer_order: String,
    pub stabilizer_signature: Vec<usize>,
    pub restricted_orbits: Vec<usize>,
    pub theorem1_i: bool,
    pub primitive: bool,
    pub lemma23: bool,
    /// Design isomorphism is not tested.
    pub uniqueness: String,
    #[serde(skip)]
    pub design: IncidenceStructure,
}

/// Fate of one value of `b`.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BOutcome {
    /// No tuple at this `b` passes the `r_max` filter.
    EliminatedStep1,
    /// No subgroup of index `b` (exhaustive enumeration).
    EliminatedStep2,
    /// No subgroup has two orbits of a common size `k/2` for a surviving `k`.
    EliminatedStep3,
    /// Every orbit pair fails `|B^G| = b` or the design checks.
    EliminatedStep4 { rejections: Vec<Step4Rejection> },
    Found {
        designs: Vec<FoundDesign>,
        rejections: Vec<Step4Rejection>,
    },
    /// Not decided: subgroup coverage is partial and nothing was found.
    Unresolved {
        reached_step: u8,
        reason: String,
        rejections: Vec<Step4Rejection>,
    },
}

impl BOutcome {
    pub fn label(&self) -> String {
        match self {
            BOutcome::EliminatedStep1 => "eliminated@Step1".into(),
            BOutcome::EliminatedStep2 => "eliminated@Step2".into(),
            BOutcome::EliminatedStep3 => "eliminated@Step3".into(),
            BOutcome::EliminatedStep4 { .. } => "eliminated@Step4".into(),
            BOutcome::Found { designs, .. } => {
                let p: Vec<String> = designs.iter().map(|d| d.params.to_string()).collect();
                format!("FOUND {}", p.join(", "))
            }
            BOutcome::Unresolved { reached_step, .. } => format!("unresolved@Step{reached_step}"),
        }
    }

    pub fn eliminated_at(&self) -> Option<u8> {
        match self {
            BOutcome::EliminatedStep1 => Some(1),
            BOutcome::EliminatedStep2 => Some(2),
            BOutcome::EliminatedStep3 => Some(3),
            BOutcome::EliminatedStep4 { .. } => Some(4),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BEntry {
    pub b: u64,
    pub tuples: Vec<ParamTuple>,
    /// Block sizes surviving the `r_max` filter at this `b`.
    pub k_values: Vec<u64>,
    pub coverage: Option<Completeness>,
    pub subgroup_signatures: Vec<Vec<usize>>,
    pub outcome: BOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub label: String,
    pub v: u64,
    pub group_order: String,
    pub stab_order: u64,
    pub r_max: u64,
    pub primitive: bool,
    pub entries: Vec<BEntry>,
    /// True when every entry is decided by exhaustive data.
    pub complete: bool,
    pub notes: Vec<String>,
}

impl CaseReport {
    pub fn found(&self) -> Vec<&FoundDesign> {
        self.entries
            .iter()
            .flat_map(|e| match &e.outcome {
                BOutcome::Found { designs, .. } => designs.iter().collect(),
                _ => Vec::new(),
            })
            .collect()
    }

    pub fn entry(&self, b: u64) -> Option<&BEntry> {
        self.entries.iter().find(|e| e.b == b)
    }

    /// Short verdict for the candidate table's "ref." column.
    pub fn summary(&self) -> String {
        if self.entries.is_empty() {
            return "eliminated at Step 1".into();
        }
        let found = self.found();
        if !found.is_empty() {
            let p: Vec<String> = found
                .iter()
                .map(|d| format!("{} (b={})", d.params, d.params.b))
                .collect();
            return format!("FOUND {}", p.join("; "));
        }
        let steps: Option<Vec<u8>> = self
            .entries
            .iter()
            .map(|e| e.outcome.eliminated_at())
            .collect();
        match steps {
            Some(s) => match s.iter().max() {
                Some(1) | None => "eliminated at Step 1".into(),
                Some(m) => format!("eliminated by Step {m}"),
            },
            None => {
                let open = self
                    .entries
                    .iter()
                    .filter(|e| e.outcome.eliminated_at().is_none())
                    .count();
                format!(
                    "partial: {open} of {} b values unresolved",
                    self.entries.len()
                )
            }
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "## {} (v = {}, |G| = {}, r_max = {})",
            self.label, self.v, self.group_order, self.r_max
        )
        .unwrap();
        writeln!(s).unwrap();
        writeln!(s, "| b | k | subgroups | orbit lengths | outcome |").unwrap();
        writeln!(s, "|---|---|---|---|---|").unwrap();
        for e in &self.entries {
            let ks = e
                .k_values
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            let cov = e.coverage.map_or("-".to_string(), |c| c.to_string());
            let sigs = e
                .subgroup_signatures
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                })
                .collect::<Vec<_>>()
                .join("; ");
            writeln!(
                s,
                "| {} | {ks} | {cov} | {sigs} | {} |",
                e.b,
                e.outcome.label()
            )
            .unwrap();
        }
        writeln!(s).unwrap();
        writeln!(s, "Verdict: {}", self.summary()).unwrap();
        s
    }

    /// Writes each found design as `<stem>.design` plus its base block as `<stem>.set`.
    pub fn write_found(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut out = Vec::new();
        for (i, d) in self.found().iter().enumerate() {
            let stem = format!("{}-b{}-{}", self.label, d.params.b, i + 1);
            let dp = dir.join(format!("{stem}.design"));
            d.design.write(&dp)?;
            let sp = dir.join(format!("{stem}.set"));
            write_set(&sp, &PointSet::from_points(self.v as usize, &d.base_block)?)?;
            out.push(dp);
            out.push(sp);
        }
        Ok(out)
    }
}

/// Runs Steps 1–4 for `c` realized by `g`.
pub fn run_case(c: &CandidateAction, g: &PermGroup, config: &PipelineConfig) -> Result<CaseReport> {
    if g.degree() as u64 != c.v {
        return Err(Error::InvalidInput(format!(
            "group has degree {}, case has v = {}",
            g.degree(),
            c.v
        )));
    }
    if !g.is_transitive() {
        return Err(Error::Intransitive { degree: g.degree() });
    }
    let order = g.order();
    if order != c.group_order() {
        return Err(Error::InvalidInput(format!(
            "group order {order} differs from v · |G_α| = {}",
            c.group_order()
        )));
    }
    let primitive = primitivity(g)?.is_primitive();
    let tuples = step1_enumerate(c.v, c.stab_order, Step1Options::default())?;
    let mut entries = Vec::new();
    let mut live: Vec<(usize, Vec<u64>)> = Vec::new();
    for (b, ts) in group_by_b(&tuples) {
        let kept: Vec<u64> = ts
            .iter()
            .filter(|t| !config.rmax_filter || c.r_max % t.reduced_r() == 0)
            .map(|t| t.k)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let outcome = if kept.is_empty() {
            Some(BOutcome::EliminatedStep1)
        } else {
            None
        };
        if outcome.is_none() {
            live.push((entries.len(), kept.clone()));
        }
        entries.push(BEntry {
            b,
            tuples: ts,
            k_values: kept,
            coverage: None,
            subgroup_signatures: Vec::new(),
            // Placeholder replaced below for live entries.
            outcome: outcome.unwrap_or(BOutcome::EliminatedStep1),
        });
    }
    let mut notes = Vec::new();
    let small = order
        .to_u64()
        .is_some_and(|n| n <= config.budget.parent_order_bound);

    // Step 2: fixtures where they cover b, otherwise exhaustive or targeted search.
    let live_bs: Vec<u64> = live.iter().map(|&(i, _)| entries[i].b).collect();
    let mut reports: Vec<Option<SubgroupClassReport>> = vec![None; live_bs.len()];
    let mut to_search = Vec::new();
    for (j, &b) in live_bs.iter().enumerate() {
        let t = BigUint::from(&order / b);
        if config.fixtures.iter().any(|(_, h)| h.order() == t) {
            reports[j] = Some(subgroups_from_fixtures(g, b, &config.fixtures)?);
        } else if small || config.search {
            to_search.push(j);
        }
    }
    if !to_search.is_empty() {
        let bs: Vec<u64> = to_search.iter().map(|&j| live_bs[j]).collect();
        for (j, r) in to_search
            .iter()
            .zip(subgroups_of_indices(g, &bs, &config.budget)?)
        {
            reports[*j] = Some(r);
        }
    }
    if !small && !config.search && reports.iter().any(Option::is_none) {
        notes.push("subgroup search disabled; indices without fixtures are unresolved".into());
    }

    for ((i, ks), report) in live.iter().zip(reports) {
        let entry = &mut entries[*i];
        entry.outcome = match report {
            None => BOutcome::Unresolved {
                reached_step: 2,
                reason: "no subgroup source for this index".into(),
                rejections: Vec::new(),
            },
            Some(report) => {
                entry.coverage = Some(report.completeness);
                entry.subgroup_signatures =
                    report.classes.iter().map(|c| c.signature.clone()).collect();
                steps_3_and_4(g, entry.b, ks, &report, config)?
            }
        };
    }
    let complete = entries.iter().all(|e| {
        e.outcome.eliminated_at().is_some() || e.coverage == Some(Completeness::Exhaustive)
    }) && entries
        .iter()
        .all(|e| !matches!(e.outcome, BOutcome::Unresolved { .. }));
    Ok(CaseReport {
        label: c.label.clone(),
        v: c.v,
        group_order: order.to_string(),
        stab_order: c.stab_order,
        r_max: c.r_max,
        primitive,
        entries,
        complete,
        notes,
    })
}

fn steps_3_and_4(
    g: &PermGroup,
    b: u64,
    ks: &[u64],
    report: &SubgroupClassReport,
    config: &PipelineConfig,
) -> Result<BOutcome> {
    let exhaustive = report.completeness == Completeness::Exhaustive;
    if report.classes.is_empty() {
        return Ok(if exhaustive {
            BOutcome::EliminatedStep2
        } else {
            BOutcome::Unresolved {
                reached_step: 2,
                reason: format!(
                    "no subgroup of index {b} found ({} coverage)",
                    report.completeness
                ),
                rejections: Vec::new(),
            }
        });
    }
    let mut any_pair = false;
    let mut pair_cap_hit = false;
    let mut rejections = Vec::new();
    let mut designs: Vec<FoundDesign> = Vec::new();
    let mut orbits_found: Vec<SetOrbit> = Vec::new();
    for class in &report.classes {
        let part = orbit_partition(&class.group);
        let mut tried = 0usize;
        for &k in ks {
            let half = (k / 2) as usize;
            let same: Vec<&PointSet> = part.orbits.iter().filter(|o| o.len() == half).collect();
            for (a, o1) in same.iter().enumerate() {
                for o2 in &same[a + 1..] {
                    any_pair = true;
                    if tried >= config.max_pairs {
                        pair_cap_hit = true;
                        continue;
                    }
                    tried += 1;
                    let block = o1.union(o2);
                    if orbits_found.iter().any(|o| o.contains(&block)) {
                        continue;
                    }
                    let (verdict, orbit) =
                        verify_candidate_with_orbit(g, o1, o2, b, config.orbit_cap)?;
                    let rejection = |reason: String| Step4Rejection {
                        subgroup: class.source.clone(),
                        signature: class.signature.clone(),
                        k: verdict.k,
                        orbit_len: verdict.orbit_len,
                        reason,
                    };
                    if !verdict.orbit_matches {
                        rejections.push(rejection(format!("|B^G| = {} ≠ {b}", verdict.orbit_len)));
                        continue;
                    }
                    let check = verdict
                        .design
                        .as_ref()
                        .expect("design built when the orbit matches");
                    if !check.accepted() {
                        let mut why = Vec::new();
                        if !check.half_flag.holds {
                            why.push(format!(
                                "not half-flag-transitive (orbits on B {:?})",
                                check.half_flag.restricted_orbits
                            ));
                        }
                        if !check.theorem1.i {
                            why.push("λ < gcd(r,2λ)²".to_string());
                        }
                        if !check.primitive {
                            why.push("point-imprimitive".to_string());
                        }
                        rejections.push(rejection(why.join("; ")));
                        continue;
                    }
                    let check = verdict.design.expect("checked above");
                    orbits_found.push(orbit);
                    designs.push(FoundDesign {
                        params: check.params,
                        base_block: block.points(),
                        subgroup: class.source.clone(),
                        subgroup_signature: class.signature.clone(),
                        stabilizer_order: check.half_flag.stabilizer_order.clone(),
                        stabilizer_signature: check.half_flag.stabilizer_signature.clone(),
                        restricted_orbits: check.half_flag.restricted_orbits.clone(),
                        theorem1_i: check.theorem1.i,
                        primitive: check.primitive,
                        lemma23: check.lemma23,
                        uniqueness: "unverified".into(),
                        design: check.design,
                    });
                }
            }
        }
    }
    if !designs.is_empty() {
        return Ok(BOutcome::Found {
            designs,
            rejections,
        });
    }
    let decided = exhaustive && !pair_cap_hit;
    Ok(match (any_pair, decided) {
        (false, true) => BOutcome::EliminatedStep3,
        (true, true) => BOutcome::EliminatedStep4 { rejections },
        (false, false) => BOutcome::Unresolved {
            reached_step: 3,
            reason: format!(
                "no equal-size orbit pair in the subgroups found ({} coverage)",
                report.completeness
            ),
            rejections,
        },
        (true, false) => BOutcome::Unresolved {
            reached_step: 4,
            reason: if pair_cap_hit {
                format!("pair cap {} reached", config.max_pairs)
            } else {
                format!(
                    "all pairs rejected, but subgroup coverage is {}",
                    report.completeness
                )
            },
            rejections,
        },
    })
}

// ---------------------------------------------------------------------------
// The candidate table.

/// One row of the candidate table, as printed.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CandidateRow {
    pub case: u8,
    pub group: &'static str,
    pub stabilizer: &'static str,
    pub v: u64,
    pub stab_order: u64,
    /// Nontrivial subdegrees as printed.
    pub subdegrees: &'static [u64],
    pub r_max: u64,
    /// Printed elimination reference.
    pub reference: &'static str,
    /// Catalog entry realizing the row, if any.
    pub fixture: Option<&'static str>,
}

pub const CANDIDATE_ROWS: [CandidateRow; 16] = [
    row(
        1,
        "M11",
        "M10",
        11,
        720,
        &[10],
        10,
        "Step 1",
        Some("m11-11"),
    ),
    row(
        2,
        "M11",
        "L2(11)",
        12,
        660,
        &[11],
        11,
        "Step 3",
        Some("m11-12"),
    ),
    row(
        3,
        "M11",
        "M9:2",
        55,
        144,
        &[18, 36],
        18,
        "Step 1",
        Some("m11-55"),
    ),
    row(
        4,
        "M12",
        "M11",
        12,
        7920,
        &[11],
        11,
        "Step 3",
        Some("m12-12"),
    ),
    row(
        5,
        "M22",
        "L3(4)",
        22,
        20160,
        &[21],
        21,
        "Step 3",
        Some("m22-22"),
    ),
    row(
        6,
        "M22",
        "A7",
        176,
        2520,
        &[70, 105],
        35,
        "Step 3",
        Some("m22-176"),
    ),
    row(
        7,
        "M22:2",
        "L3(4):2",
        22,
        40320,
        &[21],
        21,
        "Step 3",
        Some("m22x2-22"),
    ),
    row(
        8,
        "M23",
        "M22",
        23,
        443520,
        &[22],
        22,
        "Step 1",
        Some("m23-23"),
    ),
    row(
        9,
        "M23",
        "L3(4):2_2",
        253,
        40320,
        &[252],
        252,
        "Step 3",
        Some("m23-253-pairs"),
    ),
    row(
        10,
        "M23",
        "2^4:A7",
        253,
        40320,
        &[252],
        252,
        "Step 3",
        Some("m23-253-heptads"),
    ),
    row(
        11,
        "HS",
        "M22",
        100,
        443520,
        &[99],
        99,
        "Step 3",
        Some("hs-100"),
    ),
    row(
        12,
        "HS",
        "U3(5):2",
        176,
        252000,
        &[175],
        175,
        "Proposition",
        Some("hs-176"),
    ),
    row(
        13,
        "HS:2",
        "M22:2",
        100,
        887040,
        &[99],
        99,
        "Step 3",
        Some("hs2-100"),
    ),
    row(
        14,
        "M24",
        "M23",
        24,
        10200960,
        &[23],
        23,
        "Step 3",
        Some("m24-24"),
    ),
    row(
        15,
        "M24",
        "M12:2",
        1288,
        190080,
        &[495, 792],
        99,
        "Step 3",
        Some("m24-1288"),
    ),
    row(
        16,
        "Co3",
        "McL:2",
        276,
        1796256000,
        &[275],
        275,
        "Step 3",
        None,
    ),
];

#[allow(clippy::too_many_arguments)]
const fn row(
    case: u8,
    group: &'static str,
    stabilizer: &'static str,
    v: u64,
    stab_order: u64,
    subdegrees: &'static [u64],
    r_max: u64,
    reference: &'static str,
    fixture: Option<&'static str>,
) -> CandidateRow {
    CandidateRow {
        case,
        group,
        stabilizer,
        v,
        stab_order,
        subdegrees,
        r_max,
        reference,
        fixture,
    }
}

impl CandidateRow {
    pub fn candidate(&self) -> Result<CandidateAction> {
        CandidateAction::new(
            format!("{}-{}", self.group, self.v),
            self.v,
            self.stab_order,
            self.subdegrees.to_vec(),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedRow {
    pub row: CandidateRow,
    pub r_max_recomputed: u64,
    pub r_max_agrees: bool,
    /// `skipped`, `run`, or `error`.
    pub status: String,
    pub verdict: String,
    pub warnings: Vec<String>,
    pub case: Option<CaseReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub rows: Vec<ClassifiedRow>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "| Case | G | G_α | v | Subdegrees | r_max | ref. | computed |"
        )
        .unwrap();
        writeln!(s, "|---|---|---|---|---|---|---|---|").unwrap();
        for r in &self.rows {
            let sd: Vec<String> = std::iter::once(1)
                .chain(r.row.subdegrees.iter().copied())
                .map(|d| d.to_string())
                .collect();
            let rm = if r.r_max_agrees {
                r.row.r_max.to_string()
            } else {
                format!("{} (recomputed {})", r.row.r_max, r.r_max_recomputed)
            };
            writeln!(
                s,
                "| {} | {} | {} | {} | {} | {rm} | {} | {} |",
                r.row.case,
                r.row.group,
                r.row.stabilizer,
                r.row.v,
                sd.join(", "),
                r.row.reference,
                r.verdict
            )
            .unwrap();
        }
        s
    }
}

/// Selects rows by case number, fixture name or `<group>-<v>` label
/// (case-insensitive).
pub fn select_rows(name: &str) -> Vec<CandidateRow> {
    let n = name.to_ascii_lowercase();
    CANDIDATE_ROWS
        .iter()
        .filter(|r| {
            r.case.to_string() == n
                || r.fixture == Some(n.as_str())
                || format!("{}-{}", r.group, r.v).to_ascii_lowercase() == n
        })
        .copied()
        .collect()
}

/// Runs the candidate table rows against a fixture catalog. Rows without a
/// fixture are reported as skipped after the `r_max` recomputation; the
/// catalog's subgroup files feed Step 2.
pub fn classify_sporadic_cases(
    fixtures: &Path,
    rows: &[CandidateRow],
    config: &PipelineConfig,
) -> Result<ClassificationReport> {
    let catalog = FixtureCatalog::load(fixtures)?;
    let mut out = Vec::new();
    for row in rows {
        let c = row.candidate()?;
        let mut classified = ClassifiedRow {
            row: *row,
            r_max_recomputed: c.r_max,
            r_max_agrees: c.r_max == row.r_max,
            status: "skipped".into(),
            verdict: String::new(),
            warnings: Vec::new(),
            case: None,
        };
        let entry = row.fixture.and_then(|f| catalog.get(f));
        match entry {
            None => {
                let tuples = step1_enumerate(c.v, c.stab_order, Step1Options::with_rmax(c.r_max))?;
                classified.verdict = if tuples.is_empty() {
                    "eliminated at Step 1".into()
                } else {
                    format!(
                        "skipped: no group fixture ({} b values survive Step 1)",
                        group_by_b(&tuples).len()
                    )
                };
                classified.warnings.push("no group fixture".into());
            }
            Some(entry) => {
                let run = || -> Result<CaseReport> {
                    let g = entry.load_group()?;
                    let mut cfg = config.clone();
                    for (name, path) in &entry.subgroups {
                        let h = crate::subgroups::load_subgroup_fixture(&g, path)?;
                        cfg.fixtures.push((format!("{}/{name}", entry.name), h));
                    }
                    run_case(&c, &g, &cfg)
                };
                match run() {
                    Ok(case) => {
                        classified.status = "run".into();
                        classified.verdict = case.summary();
                        classified.case = Some(case);
                    }
                    Err(e) => {
                        classified.status = "error".into();
                        classified.verdict = format!("error: {e}");
                        classified.warnings.push(e.to_string());
                    }
                }
            }
        }
        out.push(classified);
    }
    Ok(ClassificationReport { rows: out })
}

// ---------------------------------------------------------------------------
// Product action.

/// `K wr S_2` on `Δ²` for a 2-transitive `K` of odd degree `v0 >= 5`.
#[derive(Clone, Debug, Serialize)]
pub struct ProductActionSpec {
    pub v0: usize,
    pub component_label: String,
    pub component_order: String,
    pub degree: usize,
    /// `{1, 2(v0 - 1), (v0 - 1)²}`
    pub expected_subdegrees: Vec<usize>,
    #[serde(skip)]
    pub component: PermGroup,
}

impl ProductActionSpec {
    pub fn new(component: PermGroup) -> Result<Self> {
        let v0 = component.degree();
        if v0 % 2 == 0 || v0 < 5 {
            return Err(Error::InvalidInput(format!(
                "component degree must be odd and at least 5, got {v0}"
            )));
        }
        if !component.is_transitive() {
            return Err(Error::Intransitive { degree: v0 });
        }
        if !crate::action::is_2_transitive(&component) {
            return Err(Error::InvalidInput(
                "component group is not 2-transitive".into(),
            ));
        }
        let mut expected = vec![1, 2 * (v0 - 1), (v0 - 1) * (v0 - 1)];
        expected.sort_unstable();
        Ok(ProductActionSpec {
            v0,
            component_label: component.label().unwrap_or("K").to_string(),
            component_order: component.order().to_string(),
            degree: v0 * v0,
            expected_subdegrees: expected,
            component,
        })
    }
}

/// The 2-transitive groups of degree 5 and 7 used as components, by label.
pub fn product_components(v0: usize) -> Result<Vec<PermGroup>> {
    if v0 % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "component degree must be odd, got {v0}"
        )));
    }
    let gens: &[(&str, &[&str])] = match v0 {
        5 => &[
            ("AGL(1,5)", &["(1,2,3,4,5)", "(2,3,5,4)"]),
            ("A5", &["(1,2,3,4,5)", "(1,2,3)"]),
            ("S5", &["(1,2,3,4,5)", "(1,2)"]),
        ],
        7 => &[
            ("AGL(1,7)", &["(1,2,3,4,5,6,7)", "(2,4,3,7,5,6)"]),
            ("L3(2)", &["(1,2,3,4,5,6,7)", "(3,5)(6,7)"]),
            ("A7", &["(1,2,3,4,5,6,7)", "(1,2,3)"]),
            ("S7", &["(1,2,3,4,5,6,7)", "(1,2)"]),
        ],
        _ => {
            return Err(Error::InvalidInput(format!(
                "no built-in 2-transitive components of degree {v0}"
            )))
        }
    };
    gens.iter()
        .map(|(label, gs)| {
            let ps = gs
                .iter()
                .map(|s| Permutation::parse(s, v0))
                .collect::<Result<Vec<_>>>()?;
            Ok(PermGroup::new(v0, ps)?.with_label(*label))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductSearchReport {
    pub spec: ProductActionSpec,
    pub group_order: String,
    pub subdegrees: Vec<usize>,
    pub case: CaseReport,
}

impl ProductSearchReport {
    /// Designs found with `λ >= gcd(r, 2λ)²` (expected: none).
    pub fn designs_found(&self) -> usize {
        self.case.found().iter().filter(|d| d.theorem1_i).count()
    }
}

/// Builds the product action, checks its subdegrees, and runs the pipeline.
pub fn product_type_search(
    spec: &ProductActionSpec,
    config: &PipelineConfig,
) -> Result<ProductSearchReport> {
    let g = wreath_product_action(&spec.component, 2)?;
    let sd = subdegrees(&g)?;
    if sd.values != spec.expected_subdegrees {
        return Err(Error::Verification(format!(
            "product action subdegrees {:?}, expected {:?}",
            sd.values, spec.expected_subdegrees
        )));
    }
    let order = g.order();
    let stab = (&order / BigUint::from(spec.degree))
        .to_u64()
        .ok_or_else(|| Error::Unsupported("stabilizer order exceeds 64 bits".into()))?;
    let nontrivial: Vec<u64> = sd.nontrivial().iter().map(|&d| d as u64).collect();
    let label = format!("{}wrS2-{}", spec.component_label, spec.degree);
    let c = CandidateAction::new(label, spec.degree as u64, stab, nontrivial)?;
    let case = run_case(&c, &g, config)?;
    Ok(ProductSearchReport {
        spec: spec.clone(),
        group_order: order.to_string(),
        subdegrees: sd.values,
        case,
    })
}
