use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::{LatticeField, LatticeGrid};

/// A field in the momentum representation on the discrete dual torus
/// `ξ_k = k / (n h)`, `k ∈ {0..n-1}^d`, indexed like lattice sites.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumField {
    grid: LatticeGrid,
    components: usize,
    values: Vec<Complex64>,
}

impl MomentumField {
    pub fn grid(&self) -> &LatticeGrid {
        &self.grid
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, k: usize, component: usize) -> Complex64 {
        self.values[k * self.components + component]
    }

    pub(crate) fn from_parts(grid: LatticeGrid, components: usize, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.sites() * components);
        Self {
            grid,
            components,
            values,
        }
    }

    /// Norm with the dual cell weight `(n h)^{-d}`.
    pub fn norm(&self) -> f64 {
        let w = self.grid.period().powi(-(self.grid.dim() as i32));
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * w).sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        let w = self.grid.period().powi(-(self.grid.dim() as i32));
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            * w
    }
}

fn transform_in_place(grid: &LatticeGrid, components: usize, data: &mut [Complex64], dir: FftDirection) {
    let n = grid.side();
    let fft = FftPlanner::new().plan_fft(n, dir);
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for axis in 0..grid.dim() {
        let stride = grid.stride(axis);
        for site in 0..grid.sites() {
            // Each line is visited once, from its first site.
            if (site / stride) % n != 0 {
                continue;
            }
            for comp in 0..components {
                for (i, v) in line.iter_mut().enumerate() {
                    *v = data[(site + i * stride) * components + comp];
                }
                fft.process(&mut line);
                for (i, v) in line.iter().enumerate() {
                    data[(site + i * stride) * components + comp] = *v;
                }
            }
        }
    }
}

/// `F u(ξ_k) = h^d Σ_z e^{−2πi z·ξ_k} u(z)`.
pub fn dft(u: &LatticeField) -> MomentumField {
    let grid = *u.grid();
    let mut data = u.values().to_vec();
    transform_in_place(&grid, u.components(), &mut data, FftDirection::Forward);
    let w = grid.cell_volume();
    data.iter_mut().for_each(|v| *v *= w);
    MomentumField::from_parts(grid, u.components(), data)
}

/// Inverse of [`dft`]: `u(z) = (n h)^{-d} Σ_k e^{2πi z·ξ_k} F(ξ_k)`.
pub fn idft(f: &MomentumField) -> LatticeField {
    let grid = f.grid;
    let mut data = f.values.clone();
    transform_in_place(&grid, f.components, &mut data, FftDirection::Inverse);
    let w = grid.period().powi(-(grid.dim() as i32));
    data.iter_mut().for_each(|v| *v *= w);
    LatticeField::new(grid, f.components, data).expect("shape preserved by the transform")
}
