//! Standard Dirac matrices and the staggered generator family.
//!
//! ```bash
//! cargo run --example clifford_algebra
//! ```

use lattice_dirac::clifford::{canonical_ordering, ks_clifford, standard_clifford, verify_clifford};

fn main() -> lattice_dirac::Result<()> {
    for d in 1..=3 {
        let report = verify_clifford(&standard_clifford(d)?, 1e-13);
        println!("standard d={d}: {} relations, max residual {:e}", report.relations.len(), report.max_residual);
    }
    for d in 1..=6 {
        let set = ks_clifford(d, &canonical_ordering(d)?)?;
        let report = verify_clifford(&set, 1e-13);
        println!(
            "staggered d={d}: {}x{} matrices, {} relations, pass={}",
            set.size(),
            set.size(),
            report.relations.len(),
            report.pass
        );
    }
    Ok(())
}
