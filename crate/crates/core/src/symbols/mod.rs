//! Momentum-space symbols of the continuum and lattice Dirac operators.
//!
//! Momenta are in cycles per unit length: a plane wave is `e^{2πi x·ξ}`.
//! Every symbol here is Hermitian and squares to a scalar, so its spectrum
//! is `±E(ξ)` with multiplicity `N/2` each; [`dispersion`] returns that
//! closed form and [`symbol_at`] the matrix itself.

mod minima;
mod resolvent;

pub use minima::{count_light_minima, default_threshold, MinimaReport};
pub use resolvent::{fast_resolvent_diff_norm, resolvent_diff_norm};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::{canonical_ordering, ks_clifford, standard_clifford, CliffordSet, ComponentOrdering};
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};

/// Operator whose symbol is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum SymbolModel {
    Continuum,
    Naive { spacing: f64 },
    Wilson { spacing: f64, rho: f64 },
    /// Regrouped staggered operator of fine spacing `h`; its symbol uses
    /// differences of step `2h`.
    KsLattice { spacing: f64 },
    KsContinuum,
}

impl SymbolModel {
    pub fn name(&self) -> &'static str {
        match self {
            SymbolModel::Continuum => "continuum",
            SymbolModel::Naive { .. } => "naive",
            SymbolModel::Wilson { .. } => "wilson",
            SymbolModel::KsLattice { .. } => "ks",
            SymbolModel::KsContinuum => "ks-continuum",
        }
    }

    pub fn is_lattice(&self) -> bool {
        matches!(
            self,
            SymbolModel::Naive { .. } | SymbolModel::Wilson { .. } | SymbolModel::KsLattice { .. }
        )
    }

    pub fn is_staggered(&self) -> bool {
        matches!(self, SymbolModel::KsLattice { .. } | SymbolModel::KsContinuum)
    }
}

/// A model together with its dimension, mass and matrix family.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolSpec {
    model: SymbolModel,
    dim: usize,
    mass: f64,
    clifford: CliffordSet,
    ordering: Option<ComponentOrdering>,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::arg(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

fn check_mass(m: f64) -> Result<()> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::arg(format!("mass must be non-negative, got {m}")));
    }
    Ok(())
}

impl SymbolSpec {
    /// Builds a spec with the default matrix family of the model: the
    /// Pauli-based set for the standard models and the canonically ordered
    /// staggered set otherwise.
    pub fn new(model: SymbolModel, dim: usize, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        match model {
            SymbolModel::Naive { spacing } => check_positive("spacing", spacing)?,
            SymbolModel::Wilson { spacing, rho } => {
                check_positive("spacing", spacing)?;
                check_positive("Wilson coupling", rho)?;
            }
            SymbolModel::KsLattice { spacing } => check_positive("spacing", spacing)?,
            _ => {}
        }
        if model.is_staggered() {
            Self::staggered(model, canonical_ordering(dim)?, mass)
        } else {
            Ok(Self {
                model,
                dim,
                mass,
                clifford: standard_clifford(dim)?,
                ordering: None,
            })
        }
    }

    /// Standard-family model with a caller-supplied Clifford set.
    pub fn with_clifford(model: SymbolModel, clifford: CliffordSet, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        if model.is_staggered() {
            return Err(Error::arg("staggered models take a component ordering, not a Clifford set"));
        }
        Ok(Self {
            model,
            dim: clifford.dim(),
            mass,
            clifford,
            ordering: None,
        })
    }

    /// Staggered model with a given component ordering.
    pub fn staggered(model: SymbolModel, ordering: ComponentOrdering, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        if !model.is_staggered() {
            return Err(Error::arg("component orderings apply to staggered models only"));
        }
        let dim = ordering.dim();
        Ok(Self {
            model,
            dim,
            mass,
            clifford: ks_clifford(dim, &ordering)?,
            ordering: Some(ordering),
        })
    }

    pub fn continuum(dim: usize, mass: f64) -> Result<Self> {
        Self::new(SymbolModel::Continuum, dim, mass)
    }

    pub fn naive(dim: usize, mass: f64, spacing: f64) -> Result<Self> {
        Self::new(SymbolModel::Naive { spacing }, dim, mass)
    }

    pub fn wilson(dim: usize, mass: f64, spacing: f64, rho: f64) -> Result<Self> {
        Self::new(SymbolModel::Wilson { spacing, rho }, dim, mass)
    }

    pub fn ks_lattice(dim: usize, mass: f64, spacing: f64) -> Result<Self> {
        Self::new(SymbolModel::KsLattice { spacing }, dim, mass)
    }

    pub fn ks_continuum(dim: usize, mass: f64) -> Result<Self> {
        Self::new(SymbolModel::KsContinuum, dim, mass)
    }

    pub fn model(&self) -> SymbolModel {
        self.model
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn clifford(&self) -> &CliffordSet {
        &self.clifford
    }

    pub fn ordering(&self) -> Option<&ComponentOrdering> {
        self.ordering.as_ref()
    }

    /// Matrix size `N`.
    pub fn size(&self) -> usize {
        self.clifford.size()
    }

    pub fn spacing(&self) -> Option<f64> {
        match self.model {
            SymbolModel::Naive { spacing }
            | SymbolModel::Wilson { spacing, .. }
            | SymbolModel::KsLattice { spacing } => Some(spacing),
            _ => None,
        }
    }

    pub fn rho(&self) -> Option<f64> {
        match self.model {
            SymbolModel::Wilson { rho, .. } => Some(rho),
            _ => None,
        }
    }

    /// Period of the symbol in each momentum coordinate, if it is periodic.
    pub fn period(&self) -> Option<f64> {
        match self.model {
            SymbolModel::Naive { spacing } | SymbolModel::Wilson { spacing, .. } => Some(1.0 / spacing),
            SymbolModel::KsLattice { spacing } => Some(0.5 / spacing),
            _ => None,
        }
    }

    fn check_xi(&self, xi: &[f64]) {
        assert_eq!(xi.len(), self.dim, "momentum has the wrong dimension");
    }

    /// Coefficients of the symbol in the generator basis returned by
    /// [`generators`]: `(α_1..α_d, β)` for the standard family and
    /// `(A_1..A_d, G_1..G_d, B)` for the staggered one.
    pub fn expansion(&self, xi: &[f64]) -> Vec<f64> {
        self.check_xi(xi);
        let m = self.mass;
        match self.model {
            SymbolModel::Continuum => xi.iter().map(|k| 2.0 * PI * k).chain([m]).collect(),
            SymbolModel::Naive { spacing: h } => {
                xi.iter().map(|k| (2.0 * PI * h * k).sin() / h).chain([m]).collect()
            }
            SymbolModel::Wilson { spacing: h, rho } => xi
                .iter()
                .map(|k| (2.0 * PI * h * k).sin() / h)
                .chain([wilson_mass(m, h, rho, xi)])
                .collect(),
            SymbolModel::KsLattice { spacing: h } => {
                let d: Vec<Complex64> = xi.iter().map(|&k| forward_symbol(2.0 * h, k)).collect();
                d.iter()
                    .map(|z| z.re)
                    .chain(d.iter().map(|z| z.im))
                    .chain([m])
                    .collect()
            }
            SymbolModel::KsContinuum => xi
                .iter()
                .map(|k| 2.0 * PI * k)
                .chain(std::iter::repeat(0.0).take(self.dim))
                .chain([m])
                .collect(),
        }
    }

    /// Positive branch `E(ξ)` of the closed-form dispersion relation.
    pub fn energy(&self, xi: &[f64]) -> f64 {
        self.check_xi(xi);
        let m = self.mass;
        let sq: f64 = match self.model {
            SymbolModel::Continuum | SymbolModel::KsContinuum => {
                xi.iter().map(|k| (2.0 * PI * k).powi(2)).sum::<f64>() + m * m
            }
            SymbolModel::Naive { spacing: h } => {
                xi.iter().map(|k| (2.0 * PI * h * k).sin().powi(2)).sum::<f64>() / (h * h) + m * m
            }
            SymbolModel::Wilson { spacing: h, rho } => {
                xi.iter().map(|k| (2.0 * PI * h * k).sin().powi(2)).sum::<f64>() / (h * h)
                    + wilson_mass(m, h, rho, xi).powi(2)
            }
            SymbolModel::KsLattice { spacing: h } => {
                xi.iter().map(|k| 1.0 - (4.0 * PI * h * k).cos()).sum::<f64>() / (2.0 * h * h) + m * m
            }
        };
        sq.max(0.0).sqrt()
    }
}

/// `m + ρ Σ_j 2h^{-2}(1 − cos(2πhξ_j))`.
fn wilson_mass(m: f64, h: f64, rho: f64, xi: &[f64]) -> f64 {
    m + rho * xi.iter().map(|k| 2.0 / (h * h) * (1.0 - (2.0 * PI * h * k).cos())).sum::<f64>()
}

/// `d^+_{s}(ξ) = (e^{2πisξ} − 1) / (is)`.
pub fn forward_symbol(step: f64, xi: f64) -> Complex64 {
    (Complex64::from_polar(1.0, 2.0 * PI * step * xi) - 1.0) / Complex64::new(0.0, step)
}

/// `d^-_{s}(ξ) = −(e^{−2πisξ} − 1) / (is)`.
pub fn backward_symbol(step: f64, xi: f64) -> Complex64 {
    -(Complex64::from_polar(1.0, -2.0 * PI * step * xi) - 1.0) / Complex64::new(0.0, step)
}

/// A symbol matrix at a momentum.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolMatrix {
    pub xi: Vec<f64>,
    pub matrix: CMatrix,
}

/// The symbol of `spec` at momentum `xi`.
pub fn symbol_at(spec: &SymbolSpec, xi: &[f64]) -> SymbolMatrix {
    spec.check_xi(xi);
    let m = spec.mass;
    let cl = &spec.clifford;
    let matrix = match spec.model {
        SymbolModel::Continuum | SymbolModel::KsContinuum => {
            let t: Vec<f64> = xi.iter().map(|k| 2.0 * PI * k).collect();
            cl.combine(&t, m)
        }
        SymbolModel::Naive { spacing: h } => {
            let t: Vec<f64> = xi.iter().map(|k| (2.0 * PI * h * k).sin() / h).collect();
            cl.combine(&t, m)
        }
        SymbolModel::Wilson { spacing: h, rho } => {
            let t: Vec<f64> = xi.iter().map(|k| (2.0 * PI * h * k).sin() / h).collect();
            cl.combine(&t, wilson_mass(m, h, rho, xi))
        }
        SymbolModel::KsLattice { spacing: h } => {
            let ordering = spec.ordering.as_ref().expect("staggered spec has an ordering");
            let n = ordering.len();
            let mut out = CMatrix::zeros(n, n);
            for (p, a) in ordering.order().iter().enumerate() {
                out[(p, p)] = c(m * a.sign(spec.dim), 0.0);
                for (axis, &k) in xi.iter().enumerate() {
                    let q = ordering.position(&a.flipped(axis));
                    // b = a − e_j carries d^+, b = a + e_j carries d^-.
                    let entry = if a.entries()[axis] == 1 {
                        forward_symbol(2.0 * h, k)
                    } else {
                        backward_symbol(2.0 * h, k)
                    };
                    out[(p, q)] = entry * a.sign(axis);
                }
            }
            out
        }
    };
    SymbolMatrix {
        xi: xi.to_vec(),
        matrix,
    }
}

/// Closed-form eigenvalues of the symbol, ascending, each branch repeated
/// `N/2` times.
pub fn dispersion(spec: &SymbolSpec, xi: &[f64]) -> Vec<f64> {
    let e = spec.energy(xi);
    let half = spec.size() / 2;
    std::iter::repeat(-e)
        .take(half)
        .chain(std::iter::repeat(e).take(half))
        .collect()
}

/// Generator basis matching [`SymbolSpec::expansion`].
///
/// For the staggered family, `G_j` has entries `i(−1)^{s_{j−1}(a)}` at
/// `(a, a − e_j)` and `−i(−1)^{s_{j−1}(a)}` at `(a, a + e_j)`; together with
/// `A_j` and `B` these are `2d + 1` anticommuting unit-square Hermitian
/// matrices.
pub fn generators(spec: &SymbolSpec) -> Vec<CMatrix> {
    let cl = &spec.clifford;
    let mut out: Vec<CMatrix> = cl.alphas().to_vec();
    if let Some(ordering) = &spec.ordering {
        let n = ordering.len();
        for axis in 0..spec.dim {
            let mut g = CMatrix::zeros(n, n);
            for (p, a) in ordering.order().iter().enumerate() {
                let q = ordering.position(&a.flipped(axis));
                let s = a.sign(axis);
                g[(p, q)] = if a.entries()[axis] == 1 { c(0.0, s) } else { c(0.0, -s) };
            }
            out.push(g);
        }
    }
    out.push(cl.beta().clone());
    out
}

/// Rows `(ξ, E_1..E_N)` on the uniform grid `ξ_k = k · extent / points`,
/// `k ∈ {0..points-1}^d`, in lexicographic order.
pub fn dispersion_surface(spec: &SymbolSpec, points: usize, extent: f64) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    if points < 2 {
        return Err(Error::arg(format!("grid density must be at least 2, got {points}")));
    }
    check_positive("grid extent", extent)?;
    let d = spec.dim;
    let total = points
        .checked_pow(d as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::arg("dispersion grid too large"))?;
    Ok((0..total)
        .map(|mut idx| {
            let mut xi = vec![0.0; d];
            for k in (0..d).rev() {
                xi[k] = (idx % points) as f64 * extent / points as f64;
                idx /= points;
            }
            let e = dispersion(spec, &xi);
            (xi, e)
        })
        .collect())
}

/// Symbol eigenvalues at every discrete momentum `k/(n a)` of a periodic
/// lattice with `side` sites per axis, sorted ascending. The lattice spacing
/// `a` is `h`, or `2h` for the staggered symbol.
pub fn discrete_spectrum(spec: &SymbolSpec, side: usize) -> Result<Vec<f64>> {
    let h = spec
        .spacing()
        .ok_or_else(|| Error::arg("discrete spectra exist for lattice models only"))?;
    if side == 0 {
        return Err(Error::arg("lattice side must be positive"));
    }
    let a = if spec.model.is_staggered() { 2.0 * h } else { h };
    let grid = crate::lattice::LatticeGrid::new(spec.dim, side, a)?;
    let mut out = Vec::with_capacity(grid.sites() * spec.size());
    for k in 0..grid.sites() {
        out.extend(linalg::hermitian_eigenvalues(&symbol_at(spec, &grid.momentum(k)).matrix));
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}
