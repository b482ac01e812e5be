//! End-to-end acceptance suite: one line per criterion, then a single
//! assertion so that every line is printed even when one fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rookdist::bounds::{self, Precision};
use rookdist::constructor::{self, SolveOutcome};
use rookdist::exact::{distinguishing_number, Resolution};
use rookdist::oracle;
use rookdist::poly;
use rookdist::validation::{self, rng_seeded, run_criterion, Status, ValidationConfig, CRITERIA};
use rookdist::GridSpec;

/// Least number of colors for a distinguishing coloring, frozen from the
/// exhaustive search.
const MIN_COLORS: [(usize, usize, usize); 15] = [
    (1, 2, 2),
    (1, 3, 3),
    (2, 3, 2),
    (1, 4, 4),
    (2, 4, 3),
    (3, 4, 2),
    (1, 5, 5),
    (2, 5, 3),
    (3, 5, 2),
    (4, 5, 2),
    (1, 6, 6),
    (2, 6, 3),
    (3, 6, 2),
    (4, 6, 2),
    (5, 6, 2),
];

/// Wall-clock allowance per criterion.
const LIMITS_SECS: [u64; 8] = [300, 60, 300, 300, 600, 60, 300, 600];

fn extra_checks(id: u8) -> Result<(), String> {
    match id {
        1 => {
            for &(n, m, k) in &MIN_COLORS {
                let r = distinguishing_number(n, m, oracle::DEFAULT_SEARCH_BUDGET).map_err(|e| e.to_string())?;
                if r.value != k {
                    return Err(format!("({n},{m}): {} vs frozen {k}", r.value));
                }
            }
            let border = distinguishing_number(2, 3, oracle::DEFAULT_SEARCH_BUDGET).unwrap();
            if !(border.borderline && border.resolution == Resolution::Search && border.value == 2) {
                return Err(format!("(2,3) borderline resolved as {border:?}"));
            }
            let above = distinguishing_number(2, 4, oracle::DEFAULT_SEARCH_BUDGET).unwrap();
            if above.value != above.k_band + 1 {
                return Err(format!("(2,4) should need k + 1 colors, got {above:?}"));
            }
        }
        2 => {
            for (n, v) in [(1, 1), (2, 2), (3, 12), (4, 288)] {
                if poly::closed_form_coefficient(n) != BigInt::from(v) {
                    return Err(format!("closed form at n={n}"));
                }
            }
        }
        3 => {
            // the first instances again, this time against the naive verifier
            for n in 2..=4usize {
                let mut rng = rng_seeded(1 ^ ((n as u64) << 32));
                for _ in 0..50 {
                    let lists = validation::two_list_instance(&mut rng, n);
                    let c = poly::cn_list_coloring(&lists).map_err(|e| e.to_string())?;
                    let cert = oracle::naive_is_distinguishing(&c, oracle::DEFAULT_NAIVE_BUDGET).unwrap();
                    if !cert.verdict {
                        return Err(format!("naive verifier rejects an n={n} output"));
                    }
                }
            }
        }
        4 => {
            for n in 1..=6 {
                let r = bounds::check_lemma4(n, 2 * n, bounds::DEFAULT_FORM_BUDGET).map_err(|e| e.to_string())?;
                let identical = bounds::FormAssignment::identical(n, 2).to_string();
                if !r.maximizers.contains(&identical) {
                    return Err(format!("n={n}: identical factors not among maximizers"));
                }
            }
        }
        5 => {
            let prec = Precision::new(96);
            for n in 1..=5usize {
                let b = bounds::forms::lemma6_bound(n, 3, &prec);
                let approx = 0.409_916_3 * 3f64.powi(n as i32 + 1) / (n as f64).powf(0.25);
                if (b.midpoint_f64() - approx).abs() > 1e-4 * approx {
                    return Err(format!("n={n}: bound enclosure {b} far from {approx}"));
                }
            }
        }
        6 => {
            let prec = Precision::new(128);
            let c = prec.c_constant();
            if !(c.lo_f64() > 0.409_916 && c.hi_f64() < 0.409_917) {
                return Err(format!("C enclosure {c}"));
            }
        }
        7 => {
            let grids = validation::small_grids(validation::CONSISTENCY_PERM_LIMIT);
            if grids.iter().any(|g| {
                oracle::factorial_saturating(g.rows()) * oracle::factorial_saturating(g.cols()) > 1_000_000
            }) {
                return Err("grid family exceeds n! m! <= 10^6".into());
            }
        }
        8 => {
            // two-element lists on K_n x K_(n+1) always admit a coloring
            let mut rng = rng_seeded(99);
            for n in 1..=3usize {
                for _ in 0..30 {
                    let lists = validation::two_list_instance(&mut rng, n);
                    let out = constructor::solve(&lists, constructor::DEFAULT_SOLVE_BUDGET);
                    if !matches!(out, SolveOutcome::Found { .. }) {
                        return Err(format!("n={n}, m={}: {}", n + 1, out.status()));
                    }
                }
            }
            let grid = GridSpec::new(2, 4).unwrap();
            let two = rookdist::ListAssignment::constant(grid, &[1, 2]).unwrap();
            if !matches!(constructor::solve(&two, constructor::DEFAULT_SOLVE_BUDGET), SolveOutcome::Nonexistent { .. }) {
                return Err("K_2 x K_4 with lists {1,2} must have no distinguishing coloring".into());
            }
        }
        _ => {}
    }
    Ok(())
}

#[test]
fn acceptance() {
    let cfg = ValidationConfig::default();
    let mut failures = Vec::new();
    for (c, limit) in CRITERIA.iter().zip(LIMITS_SECS) {
        let start = Instant::now();
        let report = run_criterion(c, &cfg);
        let extra = extra_checks(c.id);
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = report.status == Status::Pass && extra.is_ok() && in_time;
        println!(
            "criterion {} ({}): {} in {:.2}s; {}{}",
            c.id,
            c.name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            report.detail,
            extra.err().map(|e| format!("; extra check: {e}")).unwrap_or_default()
        );
        if !pass {
            failures.push(c.id);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
