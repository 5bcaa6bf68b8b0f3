//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use llab_core::abelfiber::{self, components, eh_exists, VanishingSequence};
use llab_core::degeneration::{sample_containment, special_fiber_contains_union, DegenerationFamily};
use llab_core::exactmath::{binom_poly, interpolate_grid, rat, BinomVar, Grid, Rat};
use llab_core::limitseries::generate_exact;
use llab_core::oracle::{certify, compare, grid_minor_combinatorial, grid_union, LinearAlgebraOracle};
use llab_core::schemes::{
    component_schemes, consecutive_intersection, enumerate_specs, hilbert_minor, hilbert_union, MinorScheme,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID: u32 = 5;
const CORPUS_SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn minor_certification() -> Outcome {
    let mut count = 0;
    for p in 0..=3 {
        for q in 0..=3 {
            for m in 0..=3usize {
                let sch = MinorScheme::new(p, q, m as i64).map_err(|e| e.to_string())?;
                let closed = hilbert_minor(&sch).map_err(|e| e.to_string())?;
                let label = format!("Q_{{{p},{q},{m}}}");
                let degree = closed.total_degree().unwrap_or(0);
                // The combinatorial oracle is cheap enough to run up to the
                // degree, which turns agreement into a polynomial identity.
                let wide = GRID.max(degree);
                let comb = grid_minor_combinatorial(p, q, m, wide);
                let report = certify(&label, &closed, &comb, wide).map_err(|e| e.to_string())?;
                check(report.verdict.passed(), || {
                    format!("{label} vs combinatorial: first mismatch {:?}", report.first_mismatch())
                })?;
                let values: Grid = comb.iter().map(|(&k, &v)| (k, rat(v as i64))).collect();
                let fitted = interpolate_grid(&values, degree).map_err(|e| format!("{label}: {e}"))?;
                check(fitted == closed, || format!("{label}: interpolated {fitted} != {closed}"))?;

                let xs: Vec<usize> = sch.x_coords().collect();
                let ys: Vec<usize> = sch.y_coords().collect();
                let la = LinearAlgebraOracle::new(&sch.generators(), &xs, &ys)
                    .and_then(|o| o.grid(GRID))
                    .map_err(|e| format!("{label}: {e}"))?;
                let report = compare(&label, &closed, &la, GRID).map_err(|e| e.to_string())?;
                check(report.verdict.passed(), || {
                    format!("{label} vs linear algebra: first mismatch {:?}", report.first_mismatch())
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} schemes, both oracles on [0,{GRID}]^2, identity up to the degree"))
}

fn union_certification() -> Outcome {
    let mut count = 0;
    for r in 0..=4 {
        for spec in enumerate_specs(r, false) {
            let closed = hilbert_union(&spec);
            let grid = grid_union(&spec, GRID).map_err(|e| format!("{spec}: {e}"))?;
            let report = certify(&spec.to_string(), &closed, &grid, GRID).map_err(|e| e.to_string())?;
            check(report.verdict.passed(), || format!("{spec}: first mismatch {:?}", report.first_mismatch()))?;
            if let Some(prefix) = spec.prefix() {
                let n = spec.last();
                let last = &component_schemes(&spec)[n].scheme;
                let meet = consecutive_intersection(&spec, n).map_err(|e| e.to_string())?;
                let recursed = &(&hilbert_union(&prefix) + &last.hilbert()) - &meet.hilbert();
                check(recursed == closed, || format!("{spec}: inclusion-exclusion gives {recursed}"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} specs with r <= 4"))
}

fn full_case_identity() -> Outcome {
    let mut count = 0;
    for r in 0..=8 {
        let target = binom_poly(BinomVar::SPlusT, r as i64, r as u32);
        for spec in enumerate_specs(r, true) {
            let closed = hilbert_union(&spec);
            check(closed == target, || format!("{spec}: {closed} != {target}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} full specs with r <= 8"))
}

fn fixtures() -> Outcome {
    let seq = |d, v: &[usize]| VanishingSequence::new(d, v.to_vec()).map_err(|e| e.to_string());

    let (ay, az) = (seq(2, &[0, 2])?, seq(2, &[0, 1])?);
    let comps = components(&ay, &az).map_err(|e| e.to_string())?;
    check(comps.len() == 1 && comps[0].dim == 1, || format!("(a) components {comps:?}"))?;
    let eh = eh_exists(&ay, &az, 1).map_err(|e| e.to_string())?;
    check(!eh.exists, || "(a) limit series exists".into())?;

    let comps = components(&seq(3, &[0, 1, 3])?, &seq(3, &[0, 1, 2])?).map_err(|e| e.to_string())?;
    let mut dims: Vec<usize> = comps.iter().map(|c| c.dim).collect();
    dims.sort_unstable();
    check(dims == [1, 2], || format!("(b) component dimensions {dims:?}"))?;

    for r in 0..=4usize {
        let jumps: Vec<usize> = (0..=r).collect();
        let series = generate_exact(r as u64, r, r, &jumps).map_err(|e| e.to_string())?;
        let spec = series.pg_union().map_err(|e| format!("(c) r={r}: {e}"))?;
        let comps = component_schemes(&spec);
        check(comps.len() == r + 1, || format!("(c) r={r}: {} components", comps.len()))?;
        for c in &comps {
            let (x, y) = c.scheme.ambient_dims();
            check(c.scheme.m == 0 && x + y == r, || format!("(c) r={r}: component {:?}", c.scheme))?;
        }
    }
    Ok("elliptic specimen, two-component fiber, refined series r <= 4".into())
}

fn no_grds_property() -> Outcome {
    let summary = abelfiber::no_grds_scan(CORPUS_SEED, 1000, 10, 4);
    check(summary.violations.is_empty(), || format!("violations: {:?}", summary.violations))?;
    check(summary.reference_is_converse_failure, || "reference specimen not flagged".into())?;
    Ok(format!(
        "{} checks, {} with a small component, 0 violations",
        summary.checks, summary.premise_cases
    ))
}

fn diagonalization_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    for trial in 0..100 {
        let r = rng.gen_range(0..=4usize);
        let d = rng.gen_range(0..=8usize);
        let mut jumps: Vec<usize> = (0..=r).map(|_| rng.gen_range(0..=d)).collect();
        jumps.sort_unstable();
        let seed = rng.gen();
        let ctx = format!("trial {trial} (seed {seed}, r={r}, d={d}, jumps {jumps:?})");
        let series = generate_exact(seed, r, d, &jumps).map_err(|e| format!("{ctx}: {e}"))?;
        let report = series.validate();
        check(report.passed(), || format!("{ctx}: {:?}", report.violations))?;
        check(series.is_exact() == Ok(true), || format!("{ctx}: not exact"))?;
        let diag = series.diagonalize().map_err(|e| format!("{ctx}: {e}"))?;
        check(diag.jump_indices == jumps, || format!("{ctx}: got {:?}", diag.jump_indices))?;
        let mut expected_mults = Vec::new();
        for w in jumps.chunk_by(|a, b| a == b) {
            expected_mults.push(w.len() - 1);
        }
        check(diag.mults == expected_mults, || format!("{ctx}: mults {:?}", diag.mults))?;
        let spec = series.pg_union().map_err(|e| format!("{ctx}: {e}"))?;
        check(spec.is_full(), || format!("{ctx}: union not full"))?;
    }
    Ok("100 generated series".into())
}

fn degeneration_certificates() -> Outcome {
    let mut count = 0;
    for r in 0..=4 {
        for spec in enumerate_specs(r, true) {
            let fam = DegenerationFamily::new(&spec).map_err(|e| e.to_string())?;
            let at_one: Vec<(usize, usize, Rat, Rat)> =
                fam.specialize(&rat(1)).into_iter().map(|g| (g.i, g.j, g.lead, g.trail)).collect();
            let minors: Vec<(usize, usize, Rat, Rat)> = (0..=r)
                .flat_map(|i| (i + 1..=r).map(move |j| (i, j, rat(1), rat(1))))
                .collect();
            check(at_one == minors, || format!("{spec}: z=1 generators differ from the diagonal"))?;
            check(special_fiber_contains_union(&fam), || format!("{spec}: z=0 generator survives"))?;
            let report = sample_containment(&fam, CORPUS_SEED + count, 200);
            check(report.verdict.passed(), || format!("{spec}: {:?}", report.failures.first()))?;
            count += 1;
        }
    }
    Ok(format!("{count} full specs, 200 points each"))
}

fn cross_method_agreement() -> Outcome {
    let summary = abelfiber::no_grds_scan(CORPUS_SEED, 1000, 10, 4);
    check(summary.component_disagreements.is_empty(), || {
        format!("component methods disagree on {:?}", summary.component_disagreements)
    })?;
    check(summary.eh_disagreements.is_empty(), || {
        format!("search methods disagree on {:?}", summary.eh_disagreements)
    })?;
    Ok("maximality = witnesses, exhaustive = greedy on 1001 pairs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Hilbert closed-form certification", minor_certification),
        ("union certification", union_certification),
        ("full-case identity", full_case_identity),
        ("fixtures", fixtures),
        ("no-small-component property", no_grds_property),
        ("diagonalization roundtrip", diagonalization_roundtrip),
        ("degeneration certificates", degeneration_certificates),
        ("cross-method agreement", cross_method_agreement),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
