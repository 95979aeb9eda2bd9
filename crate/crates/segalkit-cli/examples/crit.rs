//! Timing harness: run one suite criterion by number.

fn main() {
    let which: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let seed = 42u64;
    let r = match which {
        1 => segalkit_cli::suite::ordinal_algebra(),
        2 => segalkit_cli::suite::counting_oracle(),
        3 => segalkit_cli::suite::prisms(),
        4 => segalkit_cli::suite::retract_witness(),
        5 => segalkit_cli::suite::cylinder_fibers(seed, 50, 3),
        6 => segalkit_cli::suite::left_fibration_routes(seed, 100, 3),
        7 => segalkit_cli::suite::segal_round_trip(4),
        8 => segalkit_cli::suite::completeness_discriminator(),
        9 => segalkit_cli::suite::discrete_yoneda(),
        10 => segalkit_cli::suite::skeleton_pushouts(),
        11 => segalkit_cli::suite::homology_sanity(),
        12 => segalkit_cli::suite::stability_checks(seed),
        _ => segalkit_cli::suite::determinism(seed),
    };
    match r {
        Ok(rep) => println!(
            "crit {which}: {} {} ms",
            if rep.passed() { "pass" } else { "FAIL" },
            rep.wall_ms
        ),
        Err(e) => println!("crit {which}: ERROR {e}"),
    }
}
