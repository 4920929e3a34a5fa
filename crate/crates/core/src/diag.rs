//! Explicit block-diagonalizations of the staggered continuum symbol.
//!
//! For `d = 2, 3` a fixed matrix `M` with `M^†M = 2` conjugates the
//! `2^d × 2^d` staggered symbol into a standard Dirac symbol plus its entrywise
//! complex conjugate. For `d = 1` the staggered family is already `(σ_1, σ_3)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::{canonical_ordering, standard_clifford, ComponentOrdering};
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};
use crate::symbols::{symbol_at, SymbolModel, SymbolSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct DiagCase {
    pub dim: usize,
    pub m_matrix: CMatrix,
    /// Positions in the canonical ordering of the components, in the order
    /// the conjugating matrix expects.
    pub permutation: Vec<usize>,
}

impl DiagCase {
    pub fn ordering(&self) -> Result<ComponentOrdering> {
        canonical_ordering(self.dim)?.permuted(&self.permutation)
    }

    /// `M^{-1} = M^†/2`.
    pub fn inverse(&self) -> CMatrix {
        self.m_matrix.adjoint() / c(2.0, 0.0)
    }
}

/// The conjugating matrix for `d ∈ {2, 3}`.
pub fn conjugator(d: usize) -> Result<DiagCase> {
    let rows: &[&str] = match d {
        2 => &["1 0 1 0", "i 0 -i 0", "0 1 0 1", "0 i 0 -i"],
        3 => &[
            "1 0 0 0 1 0 0 0",
            "i 0 0 0 -i 0 0 0",
            "0 1 0 0 0 1 0 0",
            "0 -i 0 0 0 i 0 0",
            "0 0 1 0 0 0 1 0",
            "0 0 i 0 0 0 -i 0",
            "0 0 0 1 0 0 0 1",
            "0 0 0 -i 0 0 0 i",
        ],
        _ => {
            return Err(Error::UnsupportedDimension {
                dim: d,
                supported: "2..=3",
            })
        }
    };
    let n = rows.len();
    let entry = |e: &str| match e {
        "0" => c(0.0, 0.0),
        "1" => c(1.0, 0.0),
        "i" => c(0.0, 1.0),
        "-i" => c(0.0, -1.0),
        _ => unreachable!("unexpected matrix entry {e}"),
    };
    let cells: Vec<Vec<Complex64>> = rows.iter().map(|r| r.split(' ').map(entry).collect()).collect();
    let m_matrix = CMatrix::from_fn(n, n, |r, col| cells[r][col]);
    // The d = 2 matrix expects the last two canonical components swapped.
    let permutation = if d == 2 { vec![0, 1, 3, 2] } else { (0..n).collect() };
    Ok(DiagCase {
        dim: d,
        m_matrix,
        permutation,
    })
}

/// Staggered continuum symbol in the component order of `case`.
pub fn staggered_symbol(case: &DiagCase, xi: &[f64], m: f64) -> Result<CMatrix> {
    if xi.len() != case.dim {
        return Err(Error::arg("momentum has the wrong dimension"));
    }
    let spec = SymbolSpec::staggered(SymbolModel::KsContinuum, case.ordering()?, m)?;
    Ok(symbol_at(&spec, xi).matrix)
}

/// The standard Dirac symbol the first block is compared against:
/// `conj(S)` with `S = 2πξ_1σ_1 + 2πξ_2σ_2 + mσ_3` for `d = 2`, and
/// `2πξ_1α_2 + 2πξ_2α_1 + 2πξ_3α_3 + mβ` for `d = 3`.
pub fn expected_first_block(d: usize, xi: &[f64], m: f64) -> Result<CMatrix> {
    let k: Vec<Complex64> = xi.iter().map(|x| c(2.0 * PI * x, 0.0)).collect();
    let mass = c(m, 0.0);
    match d {
        2 => {
            let s = linalg::pauli(1) * k[0] + linalg::pauli(2) * k[1] + linalg::pauli(3) * mass;
            Ok(s.map(|z| z.conj()))
        }
        3 => {
            let cl = standard_clifford(3)?;
            Ok(cl.alpha(2) * k[0] + cl.alpha(1) * k[1] + cl.alpha(3) * k[2] + cl.beta() * mass)
        }
        _ => Err(Error::UnsupportedDimension {
            dim: d,
            supported: "2..=3",
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockReport {
    pub dim: usize,
    pub xi: Vec<f64>,
    pub m: f64,
    /// Frobenius norm of everything outside the two diagonal blocks.
    pub offblock: f64,
    /// Distance of the upper block to its expected standard Dirac symbol.
    pub block1: f64,
    /// Distance of the lower block to the entrywise conjugate of the upper target.
    pub block2: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl BlockReport {
    pub fn max_residual(&self) -> f64 {
        self.offblock.max(self.block1).max(self.block2)
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::arg(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// `M^{-1} Ĥ(ξ) M` for the staggered continuum symbol `Ĥ`.
pub fn conjugated(case: &DiagCase, xi: &[f64], m: f64) -> Result<CMatrix> {
    let h = staggered_symbol(case, xi, m)?;
    Ok(case.inverse() * h * &case.m_matrix)
}

pub fn block_check(case: &DiagCase, xi: &[f64], m: f64, tol: f64) -> Result<BlockReport> {
    check_tol(tol)?;
    let k = conjugated(case, xi, m)?;
    let n = k.nrows();
    let half = n / 2;
    let mut off = 0.0;
    for r in 0..n {
        for col in 0..n {
            if (r < half) != (col < half) {
                off += k[(r, col)].norm_sqr();
            }
        }
    }
    let target = expected_first_block(case.dim, xi, m)?;
    let upper = k.view((0, 0), (half, half)).into_owned();
    let lower = k.view((half, half), (half, half)).into_owned();
    let block1 = linalg::frobenius(&(upper - &target));
    let block2 = linalg::frobenius(&(lower - target.map(|z| z.conj())));
    let offblock = off.sqrt();
    Ok(BlockReport {
        dim: case.dim,
        xi: xi.to_vec(),
        m,
        offblock,
        block1,
        block2,
        tolerance: tol,
        pass: offblock.max(block1).max(block2) <= tol,
    })
}

/// In one dimension the staggered continuum symbol is `2πξσ_1 + mσ_3`
/// without any conjugation; `block1` holds that distance.
pub fn one_dimensional_check(xi: f64, m: f64, tol: f64) -> Result<BlockReport> {
    check_tol(tol)?;
    let spec = SymbolSpec::ks_continuum(1, m)?;
    let h = symbol_at(&spec, &[xi]).matrix;
    let target = linalg::pauli(1) * c(2.0 * PI * xi, 0.0) + linalg::pauli(3) * c(m, 0.0);
    let block1 = linalg::frobenius(&(h - target));
    Ok(BlockReport {
        dim: 1,
        xi: vec![xi],
        m,
        offblock: 0.0,
        block1,
        block2: 0.0,
        tolerance: tol,
        pass: block1 <= tol,
    })
}
