//! Acceptance grid: one test per criterion, each printing a single
//! pass/fail line (written to stderr directly so it shows without
//! `--nocapture`).

use std::io::Write;
use std::time::{Duration, Instant};

use orthoinv::grid::{run_criterion, CriterionOutcome, GridOptions};

fn run(k: u8, budget_secs: u64) {
    let opts = GridOptions {
        parallel: true,
        ..GridOptions::default()
    };
    let start = Instant::now();
    let outcome = run_criterion(k, &opts).unwrap();
    let elapsed = start.elapsed();
    report(&outcome, elapsed, budget_secs);
    if let Some(f) = outcome.first_failure() {
        panic!(
            "criterion {k} failed in {} {}: {}",
            f.suite,
            f.cell,
            f.counterexample
                .as_ref()
                .map(|c| format!("{} vs {}", c.lhs, c.rhs))
                .unwrap_or_default()
        );
    }
    assert!(
        elapsed <= Duration::from_secs(budget_secs),
        "criterion {k} took {elapsed:?}, budget {budget_secs}s"
    );
}

fn report(o: &CriterionOutcome, elapsed: Duration, budget: u64) {
    let status = if o.pass && elapsed.as_secs() <= budget { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(
        err,
        "acceptance criterion {:>2} [{status}] {} ({} cases, {:.1}s of {budget}s)",
        o.criterion,
        o.title,
        o.cases,
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_01_pfaffian_soundness() {
    run(1, 30);
}

#[test]
fn criterion_02_f_equals_n_squared() {
    run(2, 120);
}

#[test]
fn criterion_03_basis_correspondence() {
    run(3, 120);
}

#[test]
fn criterion_04_type_d_closed_form() {
    run(4, 120);
}

#[test]
fn criterion_05_degree_bound() {
    run(5, 600);
}

#[test]
fn criterion_06_odd_determinants() {
    run(6, 60);
}

#[test]
fn criterion_07_pfaffian_of_triples() {
    run(7, 60);
}

#[test]
fn criterion_08_trace_identity() {
    run(8, 120);
}

#[test]
fn criterion_09_witness() {
    run(9, 300);
}

#[test]
fn criterion_10_zero_pattern_expansion() {
    run(10, 60);
}

#[test]
fn criterion_11_homogenized_determinant() {
    run(11, 300);
}
