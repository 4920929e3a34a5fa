//! Continuum-limit rates for the three discretizations.
//!
//! For each model the surrogate distance `D(h)` is computed on
//! `h = 2^-3 .. 2^-9` with `z = i`, `m = 1`, and a line is fitted to
//! `log D` against `log h`.
//!
//! ```bash
//! cargo run --release --example convergence_rates
//! ```

use std::time::Instant;

use lattice_dirac::continuum::{convergence_sweep, make_window, ConvergenceParams, Pairing, RhoRule};

fn main() -> lattice_dirac::Result<()> {
    let window = make_window();
    let cases = [
        (Pairing::Ks, vec![1, 2, 3]),
        (Pairing::Wilson(RhoRule::H), vec![1, 2, 3]),
        (Pairing::Wilson(RhoRule::H15), vec![1, 2, 3]),
        (Pairing::Wilson(RhoRule::Const(0.5)), vec![1]),
        (Pairing::Naive, vec![1, 2, 3]),
    ];
    println!("{:<18} {:>3} {:>8} {:>8} {:>11} {:>11} {:>7}", "model", "d", "slope", "r2", "D(h_max)", "D(h_min)", "secs");
    for (pairing, dims) in cases {
        for d in dims {
            let start = Instant::now();
            let report = convergence_sweep(&ConvergenceParams::new(pairing, d, 1.0), &window)?;
            let label = match pairing {
                Pairing::Wilson(rule) => format!("wilson {rule:?}"),
                other => other.name().to_string(),
            };
            println!(
                "{:<18} {:>3} {:>8.4} {:>8.4} {:>11.3e} {:>11.3e} {:>7.2}",
                label,
                d,
                report.slope,
                report.r2,
                report.samples.first().unwrap().distance,
                report.samples.last().unwrap().distance,
                start.elapsed().as_secs_f64()
            );
        }
    }
    Ok(())
}
