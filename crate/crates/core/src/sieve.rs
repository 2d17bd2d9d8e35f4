//! Parameter arithmetic: Step-1 enumeration, `r_max`, and the predicate forms
//! of the primitivity criteria and necessary conditions.
//!
//! All arithmetic is exact: `u64`/`u128` for design parameters and
//! [`BigUint`] for group orders.

use std::collections::BTreeSet;
use std::io::Write;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

/// One admissible parameter set `(v, b, r, k, λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ParamTuple {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
}

impl ParamTuple {
    /// `gcd(r, 2λ)`.
    pub fn gcd_r_2lambda(&self) -> u64 {
        self.r.gcd(&(2 * self.lambda))
    }

    /// `r / gcd(r, 2λ)`, the quantity bounded by `r_max`.
    pub fn reduced_r(&self) -> u64 {
        self.r / self.gcd_r_2lambda()
    }
}

/// A named transitive action: one row of the candidate table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateAction {
    pub label: String,
    pub v: u64,
    pub stab_order: u64,
    /// Nontrivial subdegrees.
    pub subdegrees: Vec<u64>,
    pub r_max: u64,
}

impl CandidateAction {
    pub fn new(
        label: impl Into<String>,
        v: u64,
        stab_order: u64,
        subdegrees: Vec<u64>,
    ) -> Result<Self> {
        let r_max = r_max(v, stab_order, &subdegrees)?;
        Ok(CandidateAction {
            label: label.into(),
            v,
            stab_order,
            subdegrees,
            r_max,
        })
    }

    pub fn group_order(&self) -> BigUint {
        BigUint::from(self.v) * BigUint::from(self.stab_order)
    }
}

/// `gcd(v - 1, |G_α|, d_1, ..., d_s)` over the nontrivial subdegrees.
pub fn r_max(v: u64, stab_order: u64, subdegrees: &[u64]) -> Result<u64> {
    if v < 2 {
        return Err(Error::InconsistentParameters(format!(
            "degree {v} is too small"
        )));
    }
    let sum: u64 = subdegrees.iter().sum();
    if sum != v - 1 || subdegrees.contains(&0) {
        return Err(Error::InconsistentParameters(format!(
            "nontrivial subdegrees {subdegrees:?} sum to {sum}, expected v - 1 = {}",
            v - 1
        )));
    }
    Ok(subdegrees
        .iter()
        .fold((v - 1).gcd(&stab_order), |g, d| g.gcd(d)))
}

/// The necessary inequality `r_max² > v`.
pub fn passes_rmax(v: u64, r_max: u64) -> bool {
    (r_max as u128) * (r_max as u128) > v as u128
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Step1Options {
    /// Additionally require `r / gcd(r, 2λ)` to divide `r_max`.
    pub require_rmax_divisibility: bool,
    pub r_max: Option<u64>,
}

impl Step1Options {
    pub fn with_rmax(r_max: u64) -> Self {
        Step1Options {
            require_rmax_divisibility: true,
            r_max: Some(r_max),
        }
    }
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Step 1: every `(v, b, r, k, λ)` with `2 < k < v - 1`, `k` and `r` even,
/// `r/2 | |G_α|`, `λ = r(k-1)/(v-1)` a positive integer, `b = vr/k` an integer
/// with `b >= v`, and `λ >= gcd(r, 2λ)²`; optionally also `r/gcd(r,2λ) | r_max`.
/// Sorted by `(b, k)`.
pub fn step1_enumerate(v: u64, stab_order: u64, opts: Step1Options) -> Result<Vec<ParamTuple>> {
    if v < 4 {
        return Err(Error::InvalidInput(format!("step 1 needs v >= 4, got {v}")));
    }
    if stab_order == 0 {
        return Err(Error::InvalidInput(
            "stabilizer order must be positive".into(),
        ));
    }
    if opts.require_rmax_divisibility && opts.r_max.is_none() {
        return Err(Error::InvalidInput(
            "r_max divisibility requested without r_max".into(),
        ));
    }
    let rs: Vec<u64> = divisors(stab_order).into_iter().map(|d| 2 * d).collect();
    let mut out = Vec::new();
    for k in (4..v - 1).step_by(2) {
        for &r in &rs {
            if let Some(t) = admissible(v, r, k) {
                if opts.require_rmax_divisibility && opts.r_max.unwrap() % t.reduced_r() != 0 {
                    continue;
                }
                out.push(t);
            }
        }
    }
    out.sort_by_key(|t| (t.b, t.k, t.r));
    Ok(out)
}

/// The Step-1 conditions that depend only on `(v, r, k)`.
fn admissible(v: u64, r: u64, k: u64) -> Option<ParamTuple> {
    let (v128, r128, k128) = (v as u128, r as u128, k as u128);
    let num = r128 * (k128 - 1);
    if num % (v128 - 1) != 0 || (v128 * r128) % k128 != 0 {
        return None;
    }
    let lambda = (num / (v128 - 1)) as u64;
    let b = (v128 * r128 / k128) as u64;
    if lambda == 0 || b < v {
        return None;
    }
    let t = ParamTuple { v, b, r, k, lambda };
    let g = t.gcd_r_2lambda() as u128;
    if (lambda as u128) < g * g {
        return None;
    }
    Some(t)
}

/// Distinct `b` values of a tuple list, ascending.
pub fn b_values(tuples: &[ParamTuple]) -> Vec<u64> {
    tuples
        .iter()
        .map(|t| t.b)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Tuples grouped by `b`, in ascending `b`.
pub fn group_by_b(tuples: &[ParamTuple]) -> Vec<(u64, Vec<ParamTuple>)> {
    let mut out: Vec<(u64, Vec<ParamTuple>)> = Vec::new();
    for t in tuples {
        match out.last_mut() {
            Some((b, list)) if *b == t.b => list.push(*t),
            _ => out.push((t.b, vec![*t])),
        }
    }
    out
}

fn check_counting_identities(v: u64, k: u64, lambda: u64, r: u64) -> Result<()> {
    if v < 2 || k < 2 || (lambda as u128) * (v as u128 - 1) != (r as u128) * (k as u128 - 1) {
        return Err(Error::InconsistentParameters(format!(
            "λ(v-1) = r(k-1) fails for v={v}, k={k}, λ={lambda}, r={r}"
        )));
    }
    Ok(())
}

/// The three sufficient conditions for point-primitivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Criteria {
    /// `λ >= gcd(r, 2λ)²`
    pub i: bool,
    /// `r > 4λ(k - 2)`
    pub ii: bool,
    /// `gcd(v - 1, 2k - 2) <= 2`
    pub iii: bool,
}

impl Theorem1Criteria {
    pub fn any(&self) -> bool {
        self.i || self.ii || self.iii
    }
}

pub fn theorem1_criteria(v: u64, k: u64, lambda: u64, r: u64) -> Result<Theorem1Criteria> {
    check_counting_identities(v, k, lambda, r)?;
    let g = r.gcd(&(2 * lambda)) as u128;
    Ok(Theorem1Criteria {
        i: lambda as u128 >= g * g,
        ii: r as u128 > 4 * lambda as u128 * (k as u128).saturating_sub(2),
        iii: (v - 1).gcd(&(2 * k - 2)) <= 2,
    })
}

/// Necessary conditions for a half-flag-transitive group to be point-imprimitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prop31Witness {
    /// `λ < gcd(r, 2λ)²`
    pub lambda_below_gcd_sq: bool,
    /// `r <= 4λ(k - 2)`
    pub r_at_most_bound: bool,
}

impl Prop31Witness {
    pub fn both(&self) -> bool {
        self.lambda_below_gcd_sq && self.r_at_most_bound
    }
}

pub fn prop31_witness(v: u64, k: u64, lambda: u64, r: u64) -> Result<Prop31Witness> {
    let c = theorem1_criteria(v, k, lambda, r)?;
    Ok(Prop31Witness {
        lambda_below_gcd_sq: !c.i,
        r_at_most_bound: !c.ii,
    })
}

/// `r² / gcd(r, 2λ)² > v`.
pub fn reduced_r_exceeds_sqrt_v(t: &ParamTuple) -> bool {
    let q = t.reduced_r() as u128;
    q * q > t.v as u128
}

/// `|G| <= 4 |G_α|³`: true when the candidate survives.
pub fn lemma25_filter(group_order: &BigUint, stab_order: &BigUint) -> Result<bool> {
    if stab_order.is_zero() || !(group_order % stab_order).is_zero() {
        return Err(Error::InconsistentParameters(format!(
            "stabilizer order {stab_order} does not divide group order {group_order}"
        )));
    }
    Ok(group_order <= &(BigUint::from(4u32) * stab_order * stab_order * stab_order))
}

/// Order of the Monster.
pub fn monster_order() -> BigUint {
    "808017424794512875886459904961710757005754368000000000"
        .parse()
        .unwrap()
}

/// `r / gcd(r, 2λ)` divides every nontrivial subdegree.
pub fn lemma23_divides(r: u64, lambda: u64, subdegrees: &[u64]) -> bool {
    let q = r / r.gcd(&(2 * lambda));
    subdegrees.iter().all(|d| d % q == 0)
}

/// One output row of a sieve run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SieveRow {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
    pub gcd_r_2lambda: u64,
    /// Passes the `r_max` divisibility filter (true when no `r_max` was given).
    pub passes: bool,
}

/// Rows for every tuple of `step1_enumerate` without the `r_max` filter,
/// marking which survive it.
pub fn sieve_rows(v: u64, stab_order: u64, r_max: Option<u64>) -> Result<Vec<SieveRow>> {
    let tuples = step1_enumerate(v, stab_order, Step1Options::default())?;
    Ok(tuples
        .iter()
        .map(|t| SieveRow {
            v: t.v,
            b: t.b,
            r: t.r,
            k: t.k,
            lambda: t.lambda,
            gcd_r_2lambda: t.gcd_r_2lambda(),
            passes: r_max.is_none_or(|m| m % t.reduced_r() == 0),
        })
        .collect())
}

pub fn write_csv<W: Write>(rows: &[SieveRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(["v", "b", "r", "k", "lambda", "gcd_r_2lambda", "passes"])
            .map_err(csv_err)?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidInput(format!("csv: {e}"))
}

pub fn to_json(rows: &[SieveRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(rows)?)
}

/// Three-way comparison of b-value lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BDiff {
    pub only_in_sieve: Vec<u64>,
    pub only_in_list: Vec<u64>,
    pub common: Vec<u64>,
}

pub fn compare_b_lists(sieve: &[u64], list: &[u64]) -> BDiff {
    let a: BTreeSet<u64> = sieve.iter().copied().collect();
    let b: BTreeSet<u64> = list.iter().copied().collect();
    BDiff {
        only_in_sieve: a.difference(&b).copied().collect(),
        only_in_list: b.difference(&a).copied().collect(),
        common: a.intersection(&b).copied().collect(),
    }
}

/// [`compare_b_lists`] with each list value `n` read as a subgroup order,
/// i.e. as the index `group_order / n`. Values not dividing the group order
/// are returned separately.
pub fn compare_as_subgroup_orders(
    sieve: &[u64],
    list: &[u64],
    group_order: u64,
) -> (BDiff, Vec<u64>) {
    let (divisors, rest): (Vec<u64>, Vec<u64>) =
        list.iter().partition(|&&n| n != 0 && group_order % n == 0);
    let indices: Vec<u64> = divisors.iter().map(|n| group_order / n).collect();
    (compare_b_lists(sieve, &indices), rest)
}

/// Integers in free text: any run of digits is a value, everything else
/// separates. Lines starting with `#` are skipped.
pub fn parse_b_list(text: &str) -> Result<Vec<u64>> {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.split(|c: char| !c.is_ascii_digit()))
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        })
        .collect()
}
