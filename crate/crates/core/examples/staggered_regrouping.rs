//! Regrouping the one-component staggered field into multi-component form.
//!
//! ```bash
//! cargo run --release --example staggered_regrouping
//! ```

use lattice_dirac::clifford::canonical_ordering;
use lattice_dirac::lattice::LatticeField;
use lattice_dirac::staggered::{u_adjoint, u_transform, verify_pair, StaggeredPair};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lattice_dirac::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for d in 1..=3 {
        let pair = StaggeredPair::from_fine_side(4, 0.125, canonical_ordering(d)?)?;
        let u = LatticeField::random(*pair.fine(), 1, &mut rng);
        let w = u_transform(&u, &pair)?;
        let back = u_adjoint(&w, &pair)?;
        println!(
            "d={d}: {} fine sites -> {} coarse sites x {} components, norm ratio {:.15}, round trip {:e}",
            pair.fine().sites(),
            pair.coarse().sites(),
            w.components(),
            w.norm() / u.norm(),
            back.max_abs_diff(&u)
        );
        let r = verify_pair(&pair, 1.0, 1e-12)?;
        println!("      intertwine {:e}, square {:e}, pass={}", r.intertwine, r.square, r.pass);
    }
    Ok(())
}
