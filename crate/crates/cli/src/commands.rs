use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Duration;

use halfflag::action::{primitivity, Primitivity};
use halfflag::data::{
    builtin_example, catalog_verify as verify_catalog, default_fixture_dir, FixtureCatalog,
};
use halfflag::design::{
    classify_parameters, flag_orbits, from_base_blocks, half_flag_dual_check,
    is_half_flag_transitive, IncidenceStructure,
};
use halfflag::perm::io::{read_group, read_set};
use halfflag::perm::{PermGroup, PointSet};
use halfflag::pipeline::{
    classify_sporadic_cases, product_components, product_type_search, select_rows, PipelineConfig,
    ProductActionSpec, CANDIDATE_ROWS,
};
use halfflag::sieve::{
    b_values, compare_as_subgroup_orders, compare_b_lists, group_by_b, parse_b_list,
    prop31_witness, r_max, sieve_rows, step1_enumerate, theorem1_criteria, to_json, write_csv,
    Step1Options,
};
use halfflag::subgroups::{load_subgroup_fixture, signature_table, SearchBudget};
use halfflag::{Error, Result};

use crate::{
    BudgetArgs, CatalogArgs, ClassifyArgs, Format, GroupSource, ProductArgs, SieveArgs,
    SubgroupsArgs, VerifyArgs,
};

/// 2 for unreadable or malformed input, 1 for everything else.
pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Io { .. }
        | Error::Json(_)
        | Error::InvalidInput(_)
        | Error::UnknownName(_)
        | Error::DegreeMismatch { .. }
        | Error::PointOutOfRange { .. } => 2,
        _ => 1,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn budget(a: &BudgetArgs) -> SearchBudget {
    let mut b = SearchBudget {
        parent_order_bound: a.parent_order_bound,
        target_order_bound: a.target_order_bound,
        attempts: a.attempts as usize,
        time_limit: Duration::from_secs(a.time_limit),
        seed: a.seed,
        ..SearchBudget::default()
    };
    if let Some(w) = a.workers {
        b.workers = w as usize;
    }
    b
}

fn pipeline_config(a: &BudgetArgs) -> PipelineConfig {
    PipelineConfig {
        budget: budget(a),
        orbit_cap: a.orbit_cap as usize,
        max_pairs: a.max_pairs as usize,
        ..PipelineConfig::default()
    }
}

/// The group and any base blocks named by `--group` / `--builtin`.
fn load_source(src: &GroupSource) -> Result<(PermGroup, Vec<PointSet>)> {
    match (&src.group, &src.builtin) {
        (Some(path), _) => Ok((read_group(path)?, Vec::new())),
        (None, Some(name)) => match builtin_example(name) {
            Ok(ex) => Ok((ex.group, ex.bases)),
            Err(Error::UnknownName(_)) => {
                let cat = FixtureCatalog::load(&default_fixture_dir())?;
                let entry = cat
                    .get(name)
                    .ok_or_else(|| Error::UnknownName(name.clone()))?;
                Ok((entry.load_group()?, Vec::new()))
            }
            Err(e) => Err(e),
        },
        (None, None) => Err(Error::InvalidInput("give --group or --builtin".into())),
    }
}

pub fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let (g, builtin_bases) = load_source(&a.source)?;
    let design = if let Some(p) = &a.design {
        IncidenceStructure::read(p)?
    } else {
        let bases: Vec<PointSet> = if a.bases.is_empty() {
            builtin_bases
        } else {
            a.bases.iter().map(|p| read_set(p)).collect::<Result<_>>()?
        };
        if bases.is_empty() {
            return Err(Error::InvalidInput(
                "no design: give --design, --base, or a built-in with base blocks".into(),
            ));
        }
        log::info!("building block orbits of {} base block(s)", bases.len());
        from_base_blocks(&g, &bases, halfflag::perm::DEFAULT_ORBIT_CAP)?
    };
    let params = match classify_parameters(&design) {
        Ok(p) => p,
        Err(e @ Error::Axiom(_)) => {
            println!("not a 2-design: {e}");
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e),
    };
    log::info!("computing flag orbits");
    let flags = flag_orbits(&g, &design)?;
    let hf = is_half_flag_transitive(&g, &design)?;
    let dual = half_flag_dual_check(&g, &design)?;
    let prim = primitivity(&g)?;
    let t1 = theorem1_criteria(params.v, params.k, params.lambda, params.r)?;
    let p31 = prop31_witness(params.v, params.k, params.lambda, params.r)?;
    let flag_transitive = flags.orbit_sizes.len() == 1;

    let mut failures = Vec::new();
    if a.assert_half_flag && !hf.holds {
        let k = params.k as usize;
        let why = if hf.restricted_orbits == [k] {
            "G_B transitive on block".to_string()
        } else if !hf.block_transitive {
            "not block-transitive".to_string()
        } else {
            format!("G_B orbits on the block are {:?}", hf.restricted_orbits)
        };
        failures.push(format!("half-flag assertion failed: {why}"));
    }
    if a.assert_flag && !flag_transitive {
        failures.push(format!(
            "flag assertion failed: flag orbits {:?}",
            flags.orbit_sizes
        ));
    }
    if a.assert_primitive && !prim.is_primitive() {
        failures.push("primitivity assertion failed".into());
    }

    match a.format {
        Format::Json => {
            let blocks = match &prim {
                Primitivity::Primitive => None,
                Primitivity::Imprimitive(bs) => {
                    Some(bs.classes.iter().map(|c| c.points()).collect::<Vec<_>>())
                }
            };
            let v = serde_json::json!({
                "params": params,
                "design": params.to_string(),
                "flag_orbits": flags,
                "flag_transitive": flag_transitive,
                "half_flag": hf,
                "dual_check": dual,
                "primitive": prim.is_primitive(),
                "block_system": blocks,
                "theorem1": t1,
                "prop31": p31,
                "failures": failures,
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        _ => {
            println!("{params}, b={}, r={}", params.b, params.r);
            println!(
                "flag orbits: {:?} ({} flags)",
                flags.orbit_sizes, flags.total_flags
            );
            println!("flag-transitive: {}", yes_no(flag_transitive));
            println!(
                "half-flag: {} (G_B order {}, orbits {:?}, on B {:?})",
                yes_no(hf.holds),
                hf.stabilizer_order,
                hf.stabilizer_signature,
                hf.restricted_orbits
            );
            println!(
                "point-side check: {} (orbits on blocks through 1: {:?})",
                yes_no(dual.holds),
                dual.orbits_through_point
            );
            match &prim {
                Primitivity::Primitive => println!("primitive: yes"),
                Primitivity::Imprimitive(bs) => {
                    println!(
                        "primitive: no ({} classes of size {})",
                        bs.class_count(),
                        bs.class_size()
                    )
                }
            }
            println!(
                "primitivity criteria: λ ≥ (r,2λ)²: {}; r > 4λ(k-2): {}; (v-1,2k-2) ≤ 2: {}",
                yes_no(t1.i),
                yes_no(t1.ii),
                yes_no(t1.iii)
            );
            println!(
                "imprimitivity conditions: λ < (r,2λ)²: {}; r ≤ 4λ(k-2): {}",
                yes_no(p31.lambda_below_gcd_sq),
                yes_no(p31.r_at_most_bound)
            );
            for f in &failures {
                println!("{f}");
            }
        }
    }
    Ok(if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn sieve(a: SieveArgs) -> Result<ExitCode> {
    let rmax = if a.subdegrees.is_empty() {
        None
    } else {
        Some(r_max(a.v, a.stab_order, &a.subdegrees)?)
    };
    if a.rmax_filter && rmax.is_none() {
        return Err(Error::InvalidInput(
            "--rmax-filter needs --subdegrees".into(),
        ));
    }
    let opts = match (a.rmax_filter, rmax) {
        (true, Some(m)) => Step1Options::with_rmax(m),
        _ => Step1Options::default(),
    };
    let tuples = step1_enumerate(a.v, a.stab_order, opts)?;
    let diff = match &a.compare {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io {
                path: p.clone(),
                source: e,
            })?;
            let list = parse_b_list(&text)?;
            let bs = b_values(&tuples);
            let as_orders = (a.v as u128 * a.stab_order as u128)
                .try_into()
                .ok()
                .map(|n: u64| compare_as_subgroup_orders(&bs, &list, n));
            Some((compare_b_lists(&bs, &list), as_orders))
        }
        None => None,
    };
    match a.format {
        Format::Csv => {
            let rows: Vec<_> = sieve_rows(a.v, a.stab_order, rmax)?
                .into_iter()
                .filter(|r| !a.rmax_filter || r.passes)
                .collect();
            write_csv(&rows, std::io::stdout())?;
        }
        Format::Json => {
            let rows: Vec<_> = sieve_rows(a.v, a.stab_order, rmax)?
                .into_iter()
                .filter(|r| !a.rmax_filter || r.passes)
                .collect();
            let v = serde_json::json!({
                "v": a.v,
                "stab_order": a.stab_order,
                "r_max": rmax,
                "rows": serde_json::from_str::<serde_json::Value>(&to_json(&rows)?)?,
                "b_values": b_values(&tuples),
                "compare": diff.as_ref().map(|(d, _)| d),
                "compare_as_subgroup_orders": diff.as_ref().and_then(|(_, o)| o.as_ref()).map(|(d, rest)| serde_json::json!({
                    "diff": d,
                    "not_dividing_group_order": rest,
                })),
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Md => {
            let mut s = String::new();
            if let Some(m) = rmax {
                writeln!(s, "r_max = {m}").unwrap();
            }
            if tuples.is_empty() {
                writeln!(s, "no admissible parameters: eliminated at Step 1").unwrap();
            } else {
                writeln!(
                    s,
                    "{} tuples, {} values of b",
                    tuples.len(),
                    b_values(&tuples).len()
                )
                .unwrap();
                writeln!(s).unwrap();
                writeln!(s, "| b | (r, k, λ) |").unwrap();
                writeln!(s, "|---|---|").unwrap();
                for (b, ts) in group_by_b(&tuples) {
                    let cells: Vec<String> = ts
                        .iter()
                        .map(|t| format!("({}, {}, {})", t.r, t.k, t.lambda))
                        .collect();
                    writeln!(s, "| {b} | {} |", cells.join(" ")).unwrap();
                }
            }
            if let Some((d, as_orders)) = &diff {
                writeln!(s).unwrap();
                writeln!(
                    s,
                    "comparison with the list as b values: {} common, {} only in sieve, {} only in list",
                    d.common.len(),
                    d.only_in_sieve.len(),
                    d.only_in_list.len()
                )
                .unwrap();
                writeln!(s, "only in sieve: {:?}", d.only_in_sieve).unwrap();
                writeln!(s, "only in list: {:?}", d.only_in_list).unwrap();
                if let Some((o, rest)) = as_orders {
                    writeln!(
                        s,
                        "comparison with the list as subgroup orders |G|/b: {} common, {} only in sieve, {} only in list, {} not dividing |G|",
                        o.common.len(),
                        o.only_in_sieve.len(),
                        o.only_in_list.len(),
                        rest.len()
                    )
                    .unwrap();
                }
            }
            print!("{s}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn classify(a: ClassifyArgs) -> Result<ExitCode> {
    let rows = if a.all {
        CANDIDATE_ROWS.to_vec()
    } else {
        let mut rows = Vec::new();
        for c in &a.cases {
            let found = select_rows(c);
            if found.is_empty() {
                return Err(Error::UnknownName(c.clone()));
            }
            rows.extend(found);
        }
        rows
    };
    let mut cfg = pipeline_config(&a.budget);
    cfg.search = a.search;
    cfg.rmax_filter = !a.no_rmax_filter;
    let dir = a.fixtures.clone().unwrap_or_else(default_fixture_dir);
    let report = classify_sporadic_cases(&dir, &rows, &cfg)?;
    for r in &report.rows {
        for w in &r.warnings {
            log::warn!("case {}: {w}", r.row.case);
        }
    }
    if let Some(out) = &a.out {
        for r in &report.rows {
            if let Some(c) = &r.case {
                for p in c.write_found(out)? {
                    log::info!("wrote {}", p.display());
                }
            }
        }
    }
    match a.format {
        Format::Json => println!("{}", report.to_json()?),
        _ => {
            print!("{}", report.to_markdown());
            for r in &report.rows {
                if let Some(c) = &r.case {
                    println!();
                    print!("{}", c.to_markdown());
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn subgroups(a: SubgroupsArgs) -> Result<ExitCode> {
    let (g, _) = load_source(&a.source)?;
    let mut fixtures = Vec::new();
    for p in &a.fixtures {
        let h = load_subgroup_fixture(&g, p)?;
        let name = p.file_stem().map_or_else(
            || p.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        );
        fixtures.push((name, h));
    }
    let table = signature_table(&g, &a.index, &fixtures, &budget(&a.budget))?;
    match a.format {
        Format::Json => println!("{}", table.to_json()?),
        _ => print!("{}", table.to_markdown()),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn product_search(a: ProductArgs) -> Result<ExitCode> {
    let comps = product_components(a.v0)?;
    let comps: Vec<PermGroup> = match &a.component {
        Some(name) => {
            let c: Vec<_> = comps
                .into_iter()
                .filter(|g| g.label() == Some(name.as_str()))
                .collect();
            if c.is_empty() {
                return Err(Error::UnknownName(name.clone()));
            }
            c
        }
        None => comps,
    };
    let cfg = pipeline_config(&a.budget);
    let mut reports = Vec::new();
    for k in comps {
        let spec = ProductActionSpec::new(k)?;
        log::info!(
            "product action of {} wr S2 on {} points",
            spec.component_label,
            spec.degree
        );
        reports.push(product_type_search(&spec, &cfg)?);
    }
    let found: usize = reports.iter().map(|r| r.designs_found()).sum();
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
        _ => {
            for r in &reports {
                println!(
                    "{} wr S2: degree {}, order {}, subdegrees {:?}: {}",
                    r.spec.component_label,
                    r.spec.degree,
                    r.group_order,
                    r.subdegrees,
                    r.case.summary()
                );
            }
            if found == 0 {
                println!("no half-flag-transitive design with λ ≥ (r,2λ)² found");
            } else {
                println!("{found} half-flag-transitive design(s) with λ ≥ (r,2λ)² found");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn catalog_verify(a: CatalogArgs) -> Result<ExitCode> {
    let dir = a.fixtures.clone().unwrap_or_else(default_fixture_dir);
    let report = verify_catalog(&dir)?;
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        _ => {
            for e in &report.entries {
                if e.passed {
                    println!(
                        "PASS {}: order {}, stabilizer {}, subdegrees {:?}",
                        e.name,
                        e.order.as_deref().unwrap_or("?"),
                        e.stabilizer_order.as_deref().unwrap_or("?"),
                        e.subdegrees.as_deref().unwrap_or(&[])
                    );
                } else {
                    println!("FAIL {}: {}", e.name, e.problems.join("; "));
                }
            }
        }
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
