//! Conjugating the staggered symbol into two decoupled Dirac blocks.
//!
//! ```bash
//! cargo run --example block_diagonalization
//! ```

use lattice_dirac::diag::{block_check, conjugated, conjugator, one_dimensional_check};

fn main() -> lattice_dirac::Result<()> {
    let xi = [0.3, -0.1, 0.2];
    for d in [2, 3] {
        let case = conjugator(d)?;
        let r = block_check(&case, &xi[..d], 1.0, 1e-12)?;
        println!("d={d}: off-block {:e}, block1 {:e}, block2 {:e}", r.offblock, r.block1, r.block2);
        println!("{:.3}", conjugated(&case, &xi[..d], 1.0)?);
    }
    let r = one_dimensional_check(0.3, 1.0, 1e-12)?;
    println!("d=1: residual {:e}", r.max_residual());
    Ok(())
}
