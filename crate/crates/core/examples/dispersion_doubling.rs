//! Dispersion relations and the count of light minima per discretization.
//!
//! ```bash
//! cargo run --release --example dispersion_doubling
//! ```

use lattice_dirac::symbols::{count_light_minima, default_threshold, SymbolSpec};

fn main() -> lattice_dirac::Result<()> {
    let (h, m) = (0.1, 1.0);
    let one_d = [SymbolSpec::naive(1, m, h)?, SymbolSpec::wilson(1, m, h, h)?, SymbolSpec::ks_lattice(1, m, h)?];
    println!("{:>6} {:>9} {:>9} {:>9}", "xi", "naive", "wilson", "ks");
    for k in 0..=10 {
        let xi = k as f64 * 0.5;
        let e: Vec<f64> = one_d.iter().map(|s| s.energy(&[xi])).collect();
        println!("{xi:>6.2} {:>9.4} {:>9.4} {:>9.4}", e[0], e[1], e[2]);
    }
    for d in 1..=3 {
        let specs = [SymbolSpec::naive(d, m, h)?, SymbolSpec::wilson(d, m, h, h)?, SymbolSpec::ks_lattice(d, m, h)?];
        for spec in &specs {
            let r = count_light_minima(spec, 64, default_threshold(spec))?;
            println!("d={d} {:<12} light minima {:>2} at {:?}", spec.model().name(), r.count, r.locations);
        }
    }
    Ok(())
}
