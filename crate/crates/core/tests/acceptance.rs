//! Acceptance run. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use blowup_betti::betti::{gottsche_blowup_series, FamilyParams};
use blowup_betti::character::{ext1_character, tangent_character, Ext1Method};
use blowup_betti::laurent::{FactorRange, QExp};
use blowup_betti::marked::{enumerate_marked, enumerate_pairs, merge, split, staircase, MarkedDiagram};
use blowup_betti::{
    enumerate_fixed_points, gen_fun_enumeration, gen_fun_product, morse_index, verify_identity, Execution,
    PoincareMethod, Suite, VerifyRequest,
};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn q(n: i64) -> QExp {
    QExp::from_integer(n)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// All marked diagrams with at most `max_size` boxes and at most `max_marks` marks.
fn marked_up_to(max_size: usize, max_marks: usize) -> Vec<MarkedDiagram> {
    let mut out = Vec::new();
    for m in 0..=max_marks {
        for n in staircase(m)..=max_size {
            out.extend(enumerate_marked(n, m).unwrap());
        }
    }
    out
}

fn rank1_wall_crossing() -> Outcome {
    let req = VerifyRequest::new(Suite::Rank1, 0..=3, q(10));
    let report = verify_identity(&req).map_err(|e| e.to_string())?;
    match report.first_mismatch {
        None => Ok(format!("m=0..3, Q=10, {} series equal", report.cases_checked)),
        Some(mm) => Err(format!("m={} differs at q^{}", mm.family.m, mm.mismatch.q)),
    }
}

fn gottsche_limit() -> Outcome {
    let family = FamilyParams::new(1, 0, 8).unwrap();
    let order = q(8);
    let lhs = gen_fun_enumeration(&family, order, PoincareMethod::Closed, Execution::Parallel)
        .map_err(|e| e.to_string())?;
    let rhs = gottsche_blowup_series(order, FactorRange::UpTo(8)).map_err(|e| e.to_string())?;
    match lhs.first_difference(&rhs).map_err(|e| e.to_string())? {
        None => Ok("m=8, Q=8".into()),
        Some(mm) => Err(format!("differs at q^{}", mm.q)),
    }
}

fn ext_consistency() -> Outcome {
    let all = marked_up_to(10, 3);
    let pairs: Vec<(usize, usize)> = (0..all.len()).flat_map(|i| (0..all.len()).map(move |j| (i, j))).collect();
    let failures = Execution::Parallel.map(&pairs, |&(i, j)| {
        let (a, b) = (&all[i], &all[j]);
        let rel = ext1_character(a, b, Ext1Method::Relevant);
        let sub = ext1_character(a, b, Ext1Method::Subtraction);
        match (rel, sub) {
            (Ok(r), Ok(s)) if r == s && r.has_nonnegative_coefficients() => None,
            (r, s) => Some(format!("{a} vs {b}: {r:?} / {s:?}")),
        }
    });
    match failures.into_iter().flatten().next() {
        None => Ok(format!("{} ordered pairs", pairs.len())),
        Some(f) => Err(f),
    }
}

fn morse_matches_closed_form() -> Outcome {
    let mut count = 0;
    for m in 0.. {
        if staircase(m) > 12 {
            break;
        }
        for budget in staircase(m)..=12 {
            let points = enumerate_fixed_points(1, m as i64, budget, &[]);
            let bad = Execution::Parallel.map(&points, |fp| {
                let d = &fp.parts()[0];
                let expected = (budget - staircase(m) + m - d.diagram().num_columns()) as u64;
                let got = morse_index(&tangent_character(fp).unwrap());
                (got != expected).then(|| format!("{d}: index {got}, expected {expected}"))
            });
            if let Some(f) = bad.into_iter().flatten().next() {
                return Err(f);
            }
            count += points.len();
        }
    }
    Ok(format!("{count} rank-1 fixed points"))
}

fn bijection() -> Outcome {
    let diagrams = marked_up_to(14, 4);
    for d in &diagrams {
        let p = split(d);
        let y = d.diagram();
        check(merge(&p) == *d, || format!("merge(split({d})) differs"))?;
        check(y.size() - staircase(p.m) == p.first.size() + p.second.size(), || format!("size transport fails for {d}"))?;
        check(y.num_columns() == p.first.num_columns() + p.m, || format!("column transport fails for {d}"))?;
        check(p.second.num_columns() <= p.m, || format!("{d}: Y2 too wide"))?;
    }
    let mut pair_count = 0;
    for m in 0..=4 {
        for n in 0..=12 {
            for p in enumerate_pairs(n, m) {
                check(split(&merge(&p)) == p, || format!("split(merge({}, {}, {m})) differs", p.first, p.second))?;
                pair_count += 1;
            }
        }
    }
    let fig = MarkedDiagram::parse("5,5,4,3,3,1", "2,3,5").unwrap();
    let p = split(&fig);
    check(
        p.first.to_string() == "5,3,1" && p.second.to_string() == "2,2,2" && p.m == 3,
        || format!("six-column example gave ({}, {}, {})", p.first, p.second, p.m),
    )?;
    Ok(format!("{} marked diagrams, {pair_count} pairs, six-column example", diagrams.len()))
}

fn higher_rank() -> Outcome {
    let mut req = VerifyRequest::new(Suite::HigherRank, 0..=1, q(6));
    req.rank = 2;
    req.c1c = -1..=1;
    let report = verify_identity(&req).map_err(|e| e.to_string())?;
    if let Some(mm) = report.first_mismatch {
        return Err(format!("m={} c1c={} differs at q^{}", mm.family.m, mm.family.c1c, mm.mismatch.q));
    }
    // the q-exponents must genuinely use the denominator 4
    let family = FamilyParams::new(2, 1, 0).unwrap();
    let s = gen_fun_product(&family, q(6)).map_err(|e| e.to_string())?;
    check(s.denom() == 4, || format!("denominator {}", s.denom()))?;
    check(s.iter().any(|(e, _)| *e.denom() == 4), || "no quarter exponents".into())?;
    Ok(format!("r=2, {} families, Q=6", report.cases_checked))
}

/// Families and truncation orders used for criteria 7 and 8.
fn families() -> Vec<(FamilyParams, QExp)> {
    let mut out = Vec::new();
    for m in 0..=3 {
        out.push((FamilyParams::new(1, 0, m).unwrap(), q(10)));
    }
    for c1c in -1..=1 {
        for m in 0..=1 {
            out.push((FamilyParams::new(2, c1c, m).unwrap(), q(6)));
        }
    }
    out
}

fn budgets_below(family: &FamilyParams, order: QExp) -> Vec<usize> {
    (0..).take_while(|&b| family.discriminant_of_boxes(b) < order).collect()
}

fn dimension_constancy() -> Outcome {
    let mut strata = 0;
    for (family, order) in families() {
        for budget in budgets_below(&family, order) {
            let points = enumerate_fixed_points(family.rank, family.total_marks(), budget, &[]);
            if points.is_empty() {
                continue;
            }
            let dims: BTreeSet<u64> = Execution::Parallel
                .map(&points, |fp| tangent_character(fp).unwrap().dimension())
                .into_iter()
                .collect();
            check(dims.len() == 1, || format!("{family:?} budget {budget}: dimensions {dims:?}"))?;
            if family.rank == 1 {
                let marks = family.total_marks() as usize;
                let expected = 2 * (budget - marks * (marks + 1) / 2) as u64;
                check(dims.contains(&expected), || format!("rank 1 budget {budget}: {dims:?} vs {expected}"))?;
            }
            strata += 1;
        }
    }
    Ok(format!("{strata} strata"))
}

fn euler_specialization() -> Outcome {
    let mut coefficients = 0;
    for (family, order) in families() {
        let series = gen_fun_product(&family, order).map_err(|e| e.to_string())?;
        let mut seen = BTreeSet::new();
        for budget in budgets_below(&family, order) {
            let delta = family.discriminant_of_boxes(budget);
            seen.insert(delta);
            let count = enumerate_fixed_points(family.rank, family.total_marks(), budget, &[]).len();
            let at_one = series.coeff(delta).eval_at_ones();
            check(at_one == BigInt::from(count), || format!("{family:?} q^{delta}: {at_one} vs {count} points"))?;
            coefficients += 1;
        }
        let stray = series.iter().find(|(e, p)| !seen.contains(e) && !p.is_zero()).map(|(e, _)| e);
        if let Some(e) = stray {
            return Err(format!("{family:?}: product has a term at q^{e} with no fixed points"));
        }
    }
    Ok(format!("{coefficients} coefficients"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("rank-1 wall-crossing identity", rank1_wall_crossing),
        ("Göttsche limit", gottsche_limit),
        ("Ext character consistency", ext_consistency),
        ("Morse index closed form", morse_matches_closed_form),
        ("bijection", bijection),
        ("higher-rank identity", higher_rank),
        ("dimension constancy", dimension_constancy),
        ("Euler specialization", euler_specialization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail}; {secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
