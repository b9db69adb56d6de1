//! Acceptance gate: every test runs one verification check at its pinned
//! tolerances and prints a single pass/fail line (visible under
//! `cargo test -- --nocapture` and in failure output).

use hypercross::verify::{run_check, SuiteConfig};

fn gate(id: u32) {
    let cfg = SuiteConfig::default();
    let r = run_check(id, &cfg);
    println!(
        "[{}] criterion {:2}: {} ({:.2}s) {}",
        if r.passed { "PASS" } else { "FAIL" },
        r.id,
        r.name,
        r.seconds,
        r.details
    );
    assert!(
        r.passed,
        "criterion {} ({}) failed: {}",
        r.id, r.name, r.details
    );
}

#[test]
fn criterion_01_counting_oracle_equivalence() {
    gate(1);
}

#[test]
fn criterion_02_counting_spot_values() {
    gate(2);
}

#[test]
fn criterion_03_remainder_bracket_series_identity() {
    gate(3);
}

#[test]
fn criterion_04_volume_oracle_agreement() {
    gate(4);
}

#[test]
fn criterion_05_cardinality_volume_sandwiches() {
    gate(5);
}

// The witness exists for s >= 2 and is verified on 200 extra samples there;
// at s = 1 the predicate fails on a dense set of thresholds (see the check's
// diagnostics), so the stated grid cannot go green.
#[test]
fn criterion_06_half_shift_domination_witness() {
    gate(6);
}

// Every jump after the first satisfies the ratio-2 property; the very first
// jump from the all-zero index has ratio (1+a)/a, above 2 for a = 0.75, so
// the stated grid cannot go green.
#[test]
fn criterion_07_width_threshold_sandwich() {
    gate(7);
}

#[test]
fn criterion_08_explicit_width_bounds() {
    gate(8);
}

#[test]
fn criterion_09_tractability_classification() {
    gate(9);
}

#[test]
fn criterion_10_spectral_projection_jacobi() {
    gate(10);
}
