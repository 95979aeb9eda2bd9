//! The acceptance suite: every numbered criterion runs at its stated
//! tolerance and prints one pass/fail line.

use segalkit_cli::{report::Report, suite};
use std::process::Command;
use std::time::Instant;

fn criterion(n: usize, name: &str, budget_ms: u128, r: segalkit::Result<Report>) {
    let r = match r {
        Ok(r) => r,
        Err(e) => {
            println!("criterion {n:2} [{name}]: FAIL (error: {e})");
            panic!("criterion {n} errored: {e}");
        }
    };
    let ok = r.passed() && r.wall_ms < budget_ms;
    println!(
        "criterion {n:2} [{name}]: {} ({} ms, budget {} ms, tier {})",
        if ok { "pass" } else { "FAIL" },
        r.wall_ms,
        budget_ms,
        r.tier
    );
    assert!(r.passed(), "criterion {n} failed: {:?}", r.certificate);
    assert!(
        r.wall_ms < budget_ms,
        "criterion {n} exceeded budget: {} ms >= {} ms",
        r.wall_ms,
        budget_ms
    );
}

const SEED: u64 = 1729;

#[test]
fn criterion_01_ordinal_algebra() {
    criterion(1, "ordinal algebra", 5_000, suite::ordinal_algebra());
}

#[test]
fn criterion_02_counting_oracle() {
    criterion(2, "counting oracle", 10_000, suite::counting_oracle());
}

#[test]
fn criterion_03_prism_decompositions() {
    criterion(3, "prism decompositions", 30_000, suite::prisms());
}

#[test]
fn criterion_04_retract_witness() {
    criterion(4, "retract witness", 1_000, suite::retract_witness());
}

#[test]
fn criterion_05_cylinder_fiber_formula() {
    criterion(5, "cylinder fiber formula", 60_000, suite::cylinder_fibers(SEED, 50, 3));
}

#[test]
fn criterion_06_left_fibration_routes() {
    criterion(6, "left fibration dual routes", 120_000, suite::left_fibration_routes(SEED, 100, 3));
}

#[test]
fn criterion_07_segal_round_trip() {
    criterion(7, "segal/homotopy-category round trip", 30_000, suite::segal_round_trip(4));
}

#[test]
fn criterion_08_completeness_discriminator() {
    criterion(8, "completeness discriminator", 30_000, suite::completeness_discriminator());
}

#[test]
fn criterion_09_discrete_yoneda() {
    criterion(9, "discrete yoneda", 60_000, suite::discrete_yoneda());
}

#[test]
fn criterion_10_skeleton_pushout() {
    criterion(10, "skeleton pushout", 30_000, suite::skeleton_pushouts());
}

#[test]
fn criterion_11_homology_sanity() {
    criterion(11, "homology sanity", 10_000, suite::homology_sanity());
}

#[test]
fn criterion_12_suite_determinism() {
    // two consecutive binary runs with the same seed produce byte-identical
    // JSON reports
    let bin = env!("CARGO_BIN_EXE_segalkit");
    let tmp = std::env::temp_dir().join("segalkit-acceptance-corpus");
    let _ = std::fs::remove_dir_all(&tmp);
    let start = Instant::now();
    let run = || {
        Command::new(bin)
            .args(["suite", "--corpus"])
            .arg(&tmp)
            .args(["--seed", "7", "--json"])
            .output()
            .expect("suite run")
    };
    let one = run();
    let two = run();
    let ok = one.status.success()
        && two.status.success()
        && one.stdout == two.stdout
        && !one.stdout.is_empty();
    println!(
        "criterion 12 [suite determinism]: {} ({} ms, two full runs)",
        if ok { "pass" } else { "FAIL" },
        start.elapsed().as_millis()
    );
    assert!(one.status.success(), "first suite run failed: {}", String::from_utf8_lossy(&one.stderr));
    assert!(two.status.success(), "second suite run failed");
    assert_eq!(one.stdout, two.stdout, "suite reports differ between runs");
}
