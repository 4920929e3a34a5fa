//! The smooth window and the isometric embedding of lattice fields.
//!
//! ```bash
//! cargo run --release --example window_embedding
//! ```

use lattice_dirac::continuum::{adjoint_embed, embed, make_window};
use lattice_dirac::lattice::{LatticeField, LatticeGrid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lattice_dirac::Result<()> {
    let window = make_window();
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        println!("profile({t:.2}) = {:.6}", window.profile(t));
    }
    println!("partition residual {:e}", window.partition_residual(10_000));

    let grid = LatticeGrid::new(2, 8, 0.125)?;
    let u = LatticeField::random(grid, 2, &mut ChaCha8Rng::seed_from_u64(3));
    let f = embed(&u, &window);
    let back = adjoint_embed(&f, &window, &grid)?;
    println!("|Ju| / |u| - 1 = {:e}", f.norm() / u.norm() - 1.0);
    println!("|J*Ju - u|     = {:e}", back.max_abs_diff(&u));
    println!("(Ju)(0.3, 0.6) = {:?}", f.evaluate(&[0.3, 0.6]));
    Ok(())
}
