use std::f64::consts::PI;

use num_complex::Complex64;

use super::Window;
use crate::error::{Error, Result};
use crate::lattice::{dft, idft, LatticeField, LatticeGrid, MomentumField};

/// A band-limited periodic function on the torus `[0, L)^d`, `L = n h`,
/// stored as Fourier-series coefficients `c(k/L)` for `k ∈ [−(n−1), n−1]^d`:
/// `f(x) = L^{-d} Σ_k c(k/L) e^{2πi x·k/L}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuumFunction {
    dim: usize,
    components: usize,
    period: f64,
    spacing: f64,
    side: usize,
    coeffs: Vec<Complex64>,
}

impl ContinuumFunction {
    /// Zero function with the same frequency support as embeddings from `grid`.
    pub fn zeros(grid: &LatticeGrid, components: usize) -> Self {
        let width = 2 * grid.side() - 1;
        Self {
            dim: grid.dim(),
            components,
            period: grid.period(),
            spacing: grid.spacing(),
            side: grid.side(),
            coeffs: vec![Complex64::new(0.0, 0.0); width.pow(grid.dim() as u32) * components],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    fn width(&self) -> usize {
        2 * self.side - 1
    }

    /// Number of stored frequencies.
    pub fn modes(&self) -> usize {
        self.width().pow(self.dim as u32)
    }

    /// Integer frequency vector of mode `idx`, each entry in `[−(n−1), n−1]`.
    pub fn frequency(&self, mut idx: usize) -> Vec<i64> {
        let w = self.width();
        let mut out = vec![0; self.dim];
        for k in (0..self.dim).rev() {
            out[k] = (idx % w) as i64 - (self.side as i64 - 1);
            idx /= w;
        }
        out
    }

    fn weight(&self) -> f64 {
        self.period.powi(-(self.dim as i32))
    }

    /// `L²` norm over one period.
    pub fn norm(&self) -> f64 {
        (self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>() * self.weight()).sqrt()
    }

    /// `⟨self, other⟩`, linear in the first argument.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            * self.weight()
    }

    /// Point values of every component at `x`.
    pub fn evaluate(&self, x: &[f64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "point has the wrong dimension");
        let mut out = vec![Complex64::new(0.0, 0.0); self.components];
        for idx in 0..self.modes() {
            let k = self.frequency(idx);
            let phase: f64 = k.iter().zip(x).map(|(&kj, &xj)| kj as f64 * xj).sum::<f64>() / self.period;
            let e = Complex64::from_polar(1.0, 2.0 * PI * phase);
            for (comp, o) in out.iter_mut().enumerate() {
                *o += self.coeffs[idx * self.components + comp] * e;
            }
        }
        out.iter().map(|v| v * self.weight()).collect()
    }

    fn check_grid(&self, grid: &LatticeGrid) -> Result<()> {
        if grid.dim() != self.dim || grid.side() != self.side || grid.spacing() != self.spacing {
            return Err(Error::arg("continuum function does not match the lattice"));
        }
        Ok(())
    }
}

/// Lattice site index of the frequency `k` reduced modulo `n`.
fn reduced_site(grid: &LatticeGrid, k: &[i64]) -> usize {
    let n = grid.side() as i64;
    let coords: Vec<usize> = k.iter().map(|&kj| kj.rem_euclid(n) as usize).collect();
    grid.site(&coords)
}

/// `J_h u`: each lattice value spread by the shifted window `φ((x − z)/h)`,
/// computed as `φ̂(hξ) · F_h u(ξ)` on the frequencies `ξ = k/L`.
pub fn embed(u: &LatticeField, window: &Window) -> ContinuumFunction {
    let grid = *u.grid();
    let comps = u.components();
    let f = dft(u);
    let h = grid.spacing();
    let l = grid.period();
    let mut out = ContinuumFunction::zeros(&grid, comps);
    for idx in 0..out.modes() {
        let k = out.frequency(idx);
        let xi: Vec<f64> = k.iter().map(|&kj| h * kj as f64 / l).collect();
        let w = window.phi_hat(&xi);
        let site = reduced_site(&grid, &k);
        for comp in 0..comps {
            out.coeffs[idx * comps + comp] = f.get(site, comp) * w;
        }
    }
    out
}

/// `J_h^* v`, the adjoint of [`embed`] for the weighted inner products.
pub fn adjoint_embed(v: &ContinuumFunction, window: &Window, grid: &LatticeGrid) -> Result<LatticeField> {
    v.check_grid(grid)?;
    let comps = v.components;
    let h = grid.spacing();
    let l = grid.period();
    let mut folded = vec![Complex64::new(0.0, 0.0); grid.sites() * comps];
    for idx in 0..v.modes() {
        let k = v.frequency(idx);
        let xi: Vec<f64> = k.iter().map(|&kj| h * kj as f64 / l).collect();
        let w = window.phi_hat(&xi);
        let site = reduced_site(grid, &k);
        for comp in 0..comps {
            folded[site * comps + comp] += v.coeffs[idx * comps + comp] * w;
        }
    }
    Ok(idft(&MomentumField::from_parts(*grid, comps, folded)))
}
