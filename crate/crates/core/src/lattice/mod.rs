//! Fields on finite periodic lattices `hZ^d / (nhZ)^d`, difference
//! operators, the lattice Hamiltonians and their dense matrices.
//!
//! Sites are linearized lexicographically with the first axis most
//! significant; within a site, components are contiguous. The flat index of
//! `(site, component)` is therefore `site * components + component`.

mod dense;
mod fourier;
mod io;
mod operators;

pub use dense::{build_dense, DenseOperator, DENSE_LIMIT};
pub use fourier::{dft, idft, MomentumField};
pub use io::{FieldHeader, FieldJson};
pub use operators::{
    diff_apply, hamiltonian_apply, laplacian_apply, parity_apply, staggered_apply, DiffKind,
    HamiltonianKind, LatticeHamiltonian,
};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A periodic lattice with `side^dim` sites and spacing `spacing`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeGrid {
    dim: usize,
    side: usize,
    spacing: f64,
}

impl LatticeGrid {
    /// Side length 1 is accepted: it appears as the coarse grid of the
    /// smallest staggered lattices, where every difference vanishes.
    pub fn new(dim: usize, side: usize, spacing: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::arg("lattice dimension must be at least 1"));
        }
        if side == 0 {
            return Err(Error::arg("lattice side must be at least 1"));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::arg(format!("lattice spacing must be positive, got {spacing}")));
        }
        side.checked_pow(dim as u32)
            .filter(|&n| n <= 1 << 26)
            .ok_or_else(|| Error::arg("lattice too large"))?;
        Ok(Self { dim, side, spacing })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn sites(&self) -> usize {
        self.side.pow(self.dim as u32)
    }

    /// Torus period `n h`.
    pub fn period(&self) -> f64 {
        self.side as f64 * self.spacing
    }

    /// Integer coordinates `z / h` of a site.
    pub fn coords(&self, mut site: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim];
        for k in (0..self.dim).rev() {
            out[k] = site % self.side;
            site /= self.side;
        }
        out
    }

    pub fn site(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &x| acc * self.side + x % self.side)
    }

    /// Stride of `axis` (0-based) in the site linearization.
    pub fn stride(&self, axis: usize) -> usize {
        self.side.pow((self.dim - 1 - axis) as u32)
    }

    /// The site displaced by `shift` lattice steps along `axis`, wrapping.
    pub fn shifted(&self, site: usize, axis: usize, shift: isize) -> usize {
        let stride = self.stride(axis);
        let x = (site / stride) % self.side;
        let nx = (x as isize + shift).rem_euclid(self.side as isize) as usize;
        site + nx * stride - x * stride
    }

    /// `s_j(z/h)` for `j` in `0..=d`.
    pub fn partial_sum(&self, site: usize, j: usize) -> usize {
        self.coords(site)[..j].iter().sum()
    }

    pub(crate) fn require_even(&self, what: &str) -> Result<()> {
        if self.side % 2 != 0 {
            return Err(Error::precondition(format!(
                "{what} needs an even lattice side, got {}",
                self.side
            )));
        }
        Ok(())
    }

    /// Discrete momenta `k / (n h)`, `k ∈ {0..n-1}^d`, of a site index.
    pub fn momentum(&self, index: usize) -> Vec<f64> {
        let p = self.period();
        self.coords(index).into_iter().map(|k| k as f64 / p).collect()
    }

    /// Volume element `h^d`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.powi(self.dim as i32)
    }
}

/// A complex multi-component field on a [`LatticeGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeField {
    grid: LatticeGrid,
    components: usize,
    values: Vec<Complex64>,
}

impl LatticeField {
    pub fn new(grid: LatticeGrid, components: usize, values: Vec<Complex64>) -> Result<Self> {
        if components == 0 {
            return Err(Error::arg("a field needs at least one component"));
        }
        if values.len() != grid.sites() * components {
            return Err(Error::arg(format!(
                "expected {} values, got {}",
                grid.sites() * components,
                values.len()
            )));
        }
        Ok(Self {
            grid,
            components,
            values,
        })
    }

    pub fn zeros(grid: LatticeGrid, components: usize) -> Self {
        Self {
            grid,
            components,
            values: vec![Complex64::new(0.0, 0.0); grid.sites() * components.max(1)],
        }
    }

    pub fn from_fn(
        grid: LatticeGrid,
        components: usize,
        f: impl Fn(usize, usize) -> Complex64,
    ) -> Self {
        let values = (0..grid.sites())
            .flat_map(|s| (0..components).map(move |c| (s, c)))
            .map(|(s, c)| f(s, c))
            .collect();
        Self {
            grid,
            components,
            values,
        }
    }

    /// Independent standard normal real and imaginary parts.
    pub fn random(grid: LatticeGrid, components: usize, rng: &mut impl Rng) -> Self {
        let values = (0..grid.sites() * components)
            .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
            .collect();
        Self {
            grid,
            components,
            values,
        }
    }

    /// `v · e^{2πi z·ξ}`.
    pub fn plane_wave(grid: LatticeGrid, xi: &[f64], spinor: &[Complex64]) -> Self {
        let h = grid.spacing();
        Self::from_fn(grid, spinor.len(), |s, c| {
            let phase: f64 = grid
                .coords(s)
                .iter()
                .zip(xi)
                .map(|(&x, &k)| x as f64 * h * k)
                .sum();
            spinor[c] * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase)
        })
    }

    /// Unit field at one `(site, component)`.
    pub fn delta(grid: LatticeGrid, components: usize, site: usize, component: usize) -> Self {
        let mut f = Self::zeros(grid, components);
        f.values[site * components + component] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn grid(&self) -> &LatticeGrid {
        &self.grid
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn get(&self, site: usize, component: usize) -> Complex64 {
        self.values[site * self.components + component]
    }

    pub fn set(&mut self, site: usize, component: usize, v: Complex64) {
        self.values[site * self.components + component] = v;
    }

    /// `⟨u, v⟩ = h^d Σ u conj(v)`, linear in the first slot.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        s * self.grid.cell_volume()
    }

    pub fn norm(&self) -> f64 {
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.cell_volume()).sqrt()
    }

    /// Unweighted maximum entry difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(mut self, k: Complex64) -> Self {
        self.values.iter_mut().for_each(|v| *v *= k);
        self
    }

    pub fn add(mut self, other: &Self) -> Self {
        self.values
            .iter_mut()
            .zip(&other.values)
            .for_each(|(a, b)| *a += b);
        self
    }

    pub fn sub(mut self, other: &Self) -> Self {
        self.values
            .iter_mut()
            .zip(&other.values)
            .for_each(|(a, b)| *a -= b);
        self
    }

    pub(crate) fn require_components(&self, expected: usize, what: &str) -> Result<()> {
        if self.components != expected {
            return Err(Error::arg(format!(
                "{what} expects {expected} component(s), field has {}",
                self.components
            )));
        }
        Ok(())
    }
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
