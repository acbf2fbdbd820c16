//! Acceptance criteria. Runs every criterion, prints one
//! `criterion N: PASS|FAIL ...` line each, and exits nonzero if any failed.

use std::time::{Duration, Instant};

use pdo_cocycles::cocycles::{chern_cocycle, curvature, nonvanishing_witness, ScalarCochain};
use pdo_cocycles::harness::{
    bianchi_sweep, case_table, closedness_sweep, commutator_trace_sweep, four_cocycle_table,
    residue_trace_sweep, schwinger_comparison, SweepConfig,
};
use pdo_cocycles::lattice::{GaussianRational, LatticeOperator, LaurentPoly};
use pdo_cocycles::symbols::DEFAULT_DEPTH;

fn z(m: i64, dim: usize) -> LatticeOperator {
    LatticeOperator::from_laurent(&LaurentPoly::z(m, dim))
}

type Outcome = (bool, String);

fn criterion_01_case_table() -> Outcome {
    let start = Instant::now();
    let report = case_table(6);
    let elapsed = start.elapsed();
    let ok =
        report.all_agree && report.checked == 13 * 13 * 13 && elapsed < Duration::from_secs(10);
    (ok,
        format!(
            "case predicates vs operator vs dense window on [-6,6]^3: {} triples, {} mismatches, {:.2?}",
            report.checked,
            report.mismatches.len(),
            elapsed
        ),
    )
}

fn criterion_02_base_trace() -> Outcome {
    let values: Vec<GaussianRational> = (1..=3)
        .map(|d| {
            curvature(&z(-2, d), &z(2, d))
                .trace_of_product(&curvature(&z(-3, d), &z(3, d)))
                .unwrap()
        })
        .collect();
    let ok = values
        .iter()
        .zip(1..=3)
        .all(|(v, d)| *v == GaussianRational::from_int(2 * d));
    let shown: Vec<String> = values.iter().map(ToString::to_string).collect();
    (
        ok,
        format!(
            "tr(Ω(z^-2,z^2) Ω(z^-3,z^3)) for d = 1,2,3: {}",
            shown.join(", ")
        ),
    )
}

fn criterion_03_permutation_table() -> Outcome {
    let table = four_cocycle_table([-2, 2, -3, 3], 1).unwrap();
    let c = &table.claims;
    let ok = c.counts_in_zero_two
        && c.even_rows_have_no_negative_count
        && c.odd_rows_have_no_positive_count
        && c.total_positive;
    (
        ok,
        format!(
            "counts in {{0,2}}^2: {}, ε=+1 ⇒ n₋₁=0: {}, ε=-1 ⇒ n₁=0: {}, total {} > 0: {}",
            c.counts_in_zero_two,
            c.even_rows_have_no_negative_count,
            c.odd_rows_have_no_positive_count,
            table.total,
            c.total_positive
        ),
    )
}

fn criterion_04_unbalanced_degrees() -> Outcome {
    let omegas: Vec<Vec<LatticeOperator>> = (-3..=3)
        .map(|m| (-3..=3).map(|n| curvature(&z(m, 1), &z(n, 1))).collect())
        .collect();
    let (mut checked, mut bad) = (0, Vec::new());
    for m in -3i64..=3 {
        for n in -3i64..=3 {
            for p in -3i64..=3 {
                for q in -3i64..=3 {
                    if m + n + p + q == 0 {
                        continue;
                    }
                    checked += 1;
                    let left = &omegas[(m + 3) as usize][(n + 3) as usize];
                    let right = &omegas[(p + 3) as usize][(q + 3) as usize];
                    if !left.trace_of_product(right).unwrap().is_zero() {
                        bad.push((m, n, p, q));
                    }
                }
            }
        }
    }
    (
        bad.is_empty(),
        format!("{checked} tuples with m+n+p+q ≠ 0, nonzero traces at {bad:?}"),
    )
}

fn criterion_05_closedness() -> Outcome {
    let start = Instant::now();
    let k1 = closedness_sweep(
        1,
        &SweepConfig {
            samples: 100,
            seed: 7,
            dim: 2,
            degree: 4,
            abs_derivative: false,
        },
    );
    let k2 = closedness_sweep(
        2,
        &SweepConfig {
            samples: 25,
            seed: 11,
            dim: 2,
            degree: 4,
            abs_derivative: false,
        },
    );
    let elapsed = start.elapsed();
    let ok = k1.passed && k2.passed && elapsed < Duration::from_secs(300);
    (ok,
        format!(
            "CE coboundary of tr Ω on {} triples: {}, of tr Ω² on {} 5-tuples: {} (d=2, degree ≤ 4, {:.1?}; \
             Hochschild diagnostic nonzero on {}/{} and {}/{})",
            k1.rows.len(),
            if k1.passed { "all zero" } else { "NONZERO" },
            k2.rows.len(),
            if k2.passed { "all zero" } else { "NONZERO" },
            elapsed,
            k1.hochschild_nonzero,
            k1.rows.len(),
            k2.hochschild_nonzero,
            k2.rows.len()
        ),
    )
}

fn criterion_06_structure_and_bianchi() -> Outcome {
    let r = bianchi_sweep(&SweepConfig {
        samples: 50,
        seed: 5,
        dim: 2,
        degree: 3,
        abs_derivative: true,
    });
    (
        r.passed,
        format!(
            "dθ+θ∧θ = Ω and dΩ+[θ,Ω] = 0 on 50 triples: {} checks, {} failures",
            r.checks,
            r.failures.len()
        ),
    )
}

fn criterion_07_residue_traciality() -> Outcome {
    let r = residue_trace_sweep(
        &SweepConfig {
            samples: 60,
            seed: 9,
            dim: 2,
            degree: 3,
            abs_derivative: false,
        },
        DEFAULT_DEPTH,
    );
    (r.passed,
        format!("res of star commutators, orders in [-2,2], depth {DEFAULT_DEPTH}: {} pairs, {} failures", r.checks, r.failures.len()),
    )
}

fn criterion_08_trace_of_commutator() -> Outcome {
    let r = commutator_trace_sweep(&SweepConfig {
        samples: 60,
        seed: 13,
        dim: 2,
        degree: 3,
        abs_derivative: true,
    });
    (
        r.passed,
        format!(
            "tr[F, B] = 0 with F finite rank: {} pairs, {} failures",
            r.checks,
            r.failures.len()
        ),
    )
}

fn criterion_09_cross_level_consistency() -> Outcome {
    let c = schwinger_comparison(1..=5, 1).unwrap();
    let ok = c.proportional && c.chern_nonzero && c.chern_linear;
    let show =
        |r: &Option<GaussianRational>| r.as_ref().map_or("none".to_string(), ToString::to_string);
    (
        ok,
        format!(
            "m = 1..5: schwinger/chern = {}, radul/chern = {}, chern linear in m: {}",
            show(&c.schwinger_over_chern),
            show(&c.radul_over_chern),
            c.chern_linear
        ),
    )
}

fn criterion_10_nonvanishing_witnesses() -> Outcome {
    let family: Vec<LatticeOperator> = (-3..=3).map(|m| z(m, 1)).collect();
    let degrees = |idx: &Option<Vec<usize>>| {
        idx.as_ref().map_or("none".to_string(), |v| {
            format!("{:?}", v.iter().map(|&i| i as i64 - 3).collect::<Vec<_>>())
        })
    };
    let w1 = nonvanishing_witness(&ScalarCochain::chern(1), &family).unwrap();
    let w2 = nonvanishing_witness(&ScalarCochain::chern(2), &family).unwrap();
    let base = chern_cocycle(2, &[z(-2, 1), z(2, 1), z(-3, 1), z(3, 1)]);
    (
        w1.is_some() && w2.is_some(),
        format!(
            "witness degrees for tr Ω: {}, for tr Ω²: {} (tr Ω²(z^-2,z^2,z^-3,z^3) = {base})",
            degrees(&w1),
            degrees(&w2)
        ),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_01_case_table),
        (2, criterion_02_base_trace),
        (3, criterion_03_permutation_table),
        (4, criterion_04_unbalanced_degrees),
        (5, criterion_05_closedness),
        (6, criterion_06_structure_and_bianchi),
        (7, criterion_07_residue_traciality),
        (8, criterion_08_trace_of_commutator),
        (9, criterion_09_cross_level_consistency),
        (10, criterion_10_nonvanishing_witnesses),
    ];
    let mut failed = Vec::new();
    for (n, run) in criteria {
        let (ok, detail) = match std::panic::catch_unwind(run) {
            Ok(outcome) => outcome,
            Err(_) => (false, "panicked".to_string()),
        };
        println!(
            "criterion {n}: {} {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed.push(n);
        }
    }
    println!(
        "acceptance: {} passed, {} failed {failed:?}",
        criteria.len() - failed.len(),
        failed.len()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
