//! Dense lattice operators against their momentum-space symbols.
//!
//! Each Hamiltonian is materialized as a matrix on a small torus and its
//! eigenvalues compared with the symbol eigenvalues at the discrete momenta.
//!
//! ```bash
//! cargo run --release --example spectral_oracle
//! ```

use lattice_dirac::clifford::{canonical_ordering, standard_clifford};
use lattice_dirac::lattice::{build_dense, LatticeGrid, LatticeHamiltonian};
use lattice_dirac::linalg::max_sorted_difference;
use lattice_dirac::symbols::{discrete_spectrum, SymbolSpec};

fn main() -> lattice_dirac::Result<()> {
    let (d, n, h, m) = (2, 6, 0.25, 0.5);
    let grid = LatticeGrid::new(d, n, h)?;
    let cases = [
        ("naive", LatticeHamiltonian::naive(standard_clifford(d)?, m), grid, SymbolSpec::naive(d, m, h)?),
        ("wilson", LatticeHamiltonian::wilson(standard_clifford(d)?, h, m), grid, SymbolSpec::wilson(d, m, h, h)?),
        (
            "staggered",
            LatticeHamiltonian::ks_multi_component(canonical_ordering(d)?, m),
            LatticeGrid::new(d, n, 2.0 * h)?,
            SymbolSpec::ks_lattice(d, m, h)?,
        ),
    ];
    for (name, hamiltonian, grid, spec) in cases {
        let dense = build_dense(&hamiltonian, grid)?;
        let deviation = max_sorted_difference(&dense.eigenvalues(), &discrete_spectrum(&spec, n)?);
        println!(
            "{name:<10} dimension {:>4}, hermiticity {:e}, spectrum deviation {deviation:e}",
            dense.dimension(),
            dense.hermiticity_residual()
        );
    }
    Ok(())
}
