use num_complex::Complex64;

use super::{symbol_at, SymbolSpec};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

fn check_pairing(a: &SymbolSpec, b: &SymbolSpec) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::arg("paired symbols differ in dimension"));
    }
    if a.mass() != b.mass() {
        return Err(Error::arg("paired symbols differ in mass"));
    }
    if a.model().is_staggered() != b.model().is_staggered() {
        return Err(Error::arg(
            "staggered symbols pair only with staggered symbols, standard with standard",
        ));
    }
    if a.clifford() != b.clifford() {
        return Err(Error::arg("paired symbols use different matrix families"));
    }
    Ok(())
}

fn check_z(z: Complex64) -> Result<()> {
    if z.im == 0.0 || !z.is_finite() {
        return Err(Error::arg(format!("spectral parameter must be non-real, got {z}")));
    }
    Ok(())
}

fn resolvent(m: &CMatrix, z: Complex64) -> CMatrix {
    let n = m.nrows();
    (m - linalg::identity(n) * z)
        .try_inverse()
        .expect("a Hermitian matrix minus a non-real shift is invertible")
}

/// `‖(Ĥ_h(ξ) − z)^{-1} − (Ĥ_0(ξ) − z)^{-1}‖` in the operator 2-norm,
/// computed from explicit inverses and a Hermitian eigensolve.
pub fn resolvent_diff_norm(
    lattice: &SymbolSpec,
    continuum: &SymbolSpec,
    xi: &[f64],
    z: Complex64,
) -> Result<f64> {
    check_z(z)?;
    check_pairing(lattice, continuum)?;
    let a = resolvent(&symbol_at(lattice, xi).matrix, z);
    let b = resolvent(&symbol_at(continuum, xi).matrix, z);
    Ok(linalg::spectral_norm(&(a - b)))
}

/// Same quantity as [`resolvent_diff_norm`] from the generator expansions
/// of the two symbols.
///
/// Two Hermitian elements `u·Γ`, `v·Γ` of an anticommuting unit-square
/// family generate a copy of the 2×2 matrix algebra (or a commutative
/// quotient of it when `u ∥ v`), so every function of the pair has the norm
/// of its image under `u·Γ ↦ |u| σ_1`,
/// `v·Γ ↦ (u·v/|u|) σ_1 + √(|v|² − (u·v)²/|u|²) σ_2`.
pub fn fast_resolvent_diff_norm(u: &[f64], v: &[f64], z: Complex64) -> f64 {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let eu2 = dot(u, u);
    let ev2 = dot(v, v);
    let (h_model, c_model) = if eu2 > 0.0 {
        let eu = eu2.sqrt();
        let par = dot(u, v) / eu;
        ((eu, 0.0), (par, (ev2 - par * par).max(0.0).sqrt()))
    } else {
        ((0.0, 0.0), (ev2.sqrt(), 0.0))
    };
    // (aσ1 + bσ2 − z)^{-1} = (aσ1 + bσ2 + z) / (a² + b² − z²)
    let res = |(a, b): (f64, f64)| -> [Complex64; 4] {
        let den = Complex64::new(a * a + b * b, 0.0) - z * z;
        [z / den, Complex64::new(a, -b) / den, Complex64::new(a, b) / den, z / den]
    };
    let r1 = res(h_model);
    let r0 = res(c_model);
    let m: Vec<Complex64> = r1.iter().zip(&r0).map(|(x, y)| x - y).collect();
    let fro2: f64 = m.iter().map(|x| x.norm_sqr()).sum();
    let det = (m[0] * m[3] - m[1] * m[2]).norm();
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    ((fro2 + disc) / 2.0).sqrt()
}
