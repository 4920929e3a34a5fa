use num_complex::Complex64;

use super::{LatticeField, LatticeGrid};
use crate::clifford::{parity_sign, CliffordSet, ComponentOrdering};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Which first-order difference to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffKind {
    /// `D^+ u(z) = (u(z + h e_j) − u(z)) / (ih)`
    Forward,
    /// `D^- u(z) = (u(z) − u(z − h e_j)) / (ih)`
    Backward,
    /// `D^S u(z) = (u(z + h e_j) − u(z − h e_j)) / (2ih)`
    Symmetric,
}

fn check_axis(grid: &LatticeGrid, axis: usize) -> Result<()> {
    if axis >= grid.dim() {
        return Err(Error::arg(format!(
            "axis {axis} out of range for a {}-dimensional lattice",
            grid.dim()
        )));
    }
    Ok(())
}

/// Difference along `axis` at one site/component, divided by `i h`.
#[inline]
fn difference_at(
    u: &LatticeField,
    site: usize,
    comp: usize,
    axis: usize,
    kind: DiffKind,
) -> Complex64 {
    let g = u.grid();
    let ih = Complex64::new(0.0, g.spacing());
    let fwd = u.get(g.shifted(site, axis, 1), comp);
    let bwd = u.get(g.shifted(site, axis, -1), comp);
    let here = u.get(site, comp);
    match kind {
        DiffKind::Forward => (fwd - here) / ih,
        DiffKind::Backward => (here - bwd) / ih,
        DiffKind::Symmetric => (fwd - bwd) / (ih * 2.0),
    }
}

/// Applies a difference operator along `axis` (0-based) to every component.
pub fn diff_apply(u: &LatticeField, axis: usize, kind: DiffKind) -> Result<LatticeField> {
    check_axis(u.grid(), axis)?;
    Ok(LatticeField::from_fn(*u.grid(), u.components(), |s, c| {
        difference_at(u, s, c, axis, kind)
    }))
}

/// `(−Δ_{s h}) u` with stencil reach `scale ∈ {1, 2}` lattice steps.
pub fn laplacian_apply(u: &LatticeField, scale: usize) -> Result<LatticeField> {
    if !(scale == 1 || scale == 2) {
        return Err(Error::arg(format!("laplacian scale must be 1 or 2, got {scale}")));
    }
    let g = *u.grid();
    if g.side() % scale != 0 {
        return Err(Error::arg(format!(
            "lattice side {} is not divisible by the stencil scale {scale}",
            g.side()
        )));
    }
    let step = scale as isize;
    let inv = 1.0 / (scale as f64 * g.spacing()).powi(2);
    Ok(LatticeField::from_fn(g, u.components(), |s, c| {
        let here = u.get(s, c);
        let acc: Complex64 = (0..g.dim())
            .map(|ax| here * 2.0 - u.get(g.shifted(s, ax, step), c) - u.get(g.shifted(s, ax, -step), c))
            .sum();
        acc * inv
    }))
}

/// `X_{h;j} u(z) = (−1)^{s_{j−1}(z/h)} D^S_{h;j} u(z)` with `j = axis + 1`.
pub fn staggered_apply(u: &LatticeField, axis: usize) -> Result<LatticeField> {
    u.require_components(1, "the staggered difference")?;
    check_axis(u.grid(), axis)?;
    u.grid().require_even("the staggered difference")?;
    let g = *u.grid();
    Ok(LatticeField::from_fn(g, 1, |s, _| {
        difference_at(u, s, 0, axis, DiffKind::Symmetric) * parity_sign(g.partial_sum(s, axis) as i64)
    }))
}

/// `Y_h u(z) = (−1)^{s_d(z/h)} u(z)`.
pub fn parity_apply(u: &LatticeField) -> Result<LatticeField> {
    u.require_components(1, "the parity operator")?;
    u.grid().require_even("the parity operator")?;
    let g = *u.grid();
    Ok(LatticeField::from_fn(g, 1, |s, _| {
        u.get(s, 0) * parity_sign(g.partial_sum(s, g.dim()) as i64)
    }))
}

/// The lattice Hamiltonians.
#[derive(Clone, Debug, PartialEq)]
pub enum HamiltonianKind {
    /// `Σ_j D^S_j α_j + m β` on `N`-component fields.
    Naive { clifford: CliffordSet },
    /// The naive operator plus `ρ (−Δ_h) β`.
    Wilson { clifford: CliffordSet, rho: f64 },
    /// `Σ_j X_{h;j} + m Y_h` on one-component fields over an even lattice.
    KsOneComponent,
    /// The regrouped staggered operator on `2^d`-component fields. The
    /// field's lattice is the coarse one; differences use its spacing.
    KsMultiComponent { ordering: ComponentOrdering },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeHamiltonian {
    pub kind: HamiltonianKind,
    pub mass: f64,
}

impl LatticeHamiltonian {
    pub fn naive(clifford: CliffordSet, mass: f64) -> Self {
        Self {
            kind: HamiltonianKind::Naive { clifford },
            mass,
        }
    }

    pub fn wilson(clifford: CliffordSet, rho: f64, mass: f64) -> Self {
        Self {
            kind: HamiltonianKind::Wilson { clifford, rho },
            mass,
        }
    }

    pub fn ks_one_component(mass: f64) -> Self {
        Self {
            kind: HamiltonianKind::KsOneComponent,
            mass,
        }
    }

    pub fn ks_multi_component(ordering: ComponentOrdering, mass: f64) -> Self {
        Self {
            kind: HamiltonianKind::KsMultiComponent { ordering },
            mass,
        }
    }

    /// Number of field components the operator acts on.
    pub fn components(&self) -> usize {
        match &self.kind {
            HamiltonianKind::Naive { clifford } | HamiltonianKind::Wilson { clifford, .. } => {
                clifford.size()
            }
            HamiltonianKind::KsOneComponent => 1,
            HamiltonianKind::KsMultiComponent { ordering } => ordering.len(),
        }
    }

    /// Checks the field shape against the model.
    pub fn validate(&self, grid: &LatticeGrid, components: usize) -> Result<()> {
        if components != self.components() {
            return Err(Error::arg(format!(
                "model acts on {} component(s), field has {components}",
                self.components()
            )));
        }
        match &self.kind {
            HamiltonianKind::Naive { clifford } | HamiltonianKind::Wilson { clifford, .. }
                if clifford.dim() != grid.dim() =>
            {
                Err(Error::arg("Clifford set dimension differs from the lattice"))
            }
            HamiltonianKind::KsMultiComponent { ordering } if ordering.dim() != grid.dim() => {
                Err(Error::arg("component ordering dimension differs from the lattice"))
            }
            HamiltonianKind::KsOneComponent => grid.require_even("the staggered Hamiltonian"),
            _ => Ok(()),
        }
    }

    pub fn apply(&self, u: &LatticeField) -> Result<LatticeField> {
        self.validate(u.grid(), u.components())?;
        let g = *u.grid();
        let m = self.mass;
        match &self.kind {
            HamiltonianKind::Naive { clifford } => Ok(spinor_apply(u, clifford, m, None)),
            HamiltonianKind::Wilson { clifford, rho } => {
                let lap = laplacian_apply(u, 1)?;
                Ok(spinor_apply(u, clifford, m, Some((*rho, &lap))))
            }
            HamiltonianKind::KsOneComponent => {
                let mut out = parity_apply(u)?.scaled(Complex64::new(m, 0.0));
                for axis in 0..g.dim() {
                    out = out.add(&staggered_apply(u, axis)?);
                }
                Ok(out)
            }
            HamiltonianKind::KsMultiComponent { ordering } => Ok(LatticeField::from_fn(
                g,
                ordering.len(),
                |s, p| {
                    let a = ordering.index(p);
                    let mut acc = u.get(s, p) * (m * a.sign(g.dim()));
                    for axis in 0..g.dim() {
                        let q = ordering.position(&a.flipped(axis));
                        // b = a − e_j takes D^+, b = a + e_j takes D^-.
                        let kind = if a.entries()[axis] == 1 {
                            DiffKind::Forward
                        } else {
                            DiffKind::Backward
                        };
                        acc += difference_at(u, s, q, axis, kind) * a.sign(axis);
                    }
                    acc
                },
            )),
        }
    }
}

fn spinor_apply(
    u: &LatticeField,
    clifford: &CliffordSet,
    mass: f64,
    wilson: Option<(f64, &LatticeField)>,
) -> LatticeField {
    let g = *u.grid();
    let n = clifford.size();
    let mut out = LatticeField::zeros(g, n);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let mat_vec = |m: &CMatrix, v: &[Complex64], out: &mut [Complex64], k: Complex64| {
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (cidx, x) in v.iter().enumerate() {
                acc += m[(r, cidx)] * x;
            }
            *o += acc * k;
        }
    };
    for s in 0..g.sites() {
        let here: Vec<Complex64> = (0..n).map(|c| u.get(s, c)).collect();
        buf.iter_mut().for_each(|b| *b = Complex64::new(0.0, 0.0));
        for axis in 0..g.dim() {
            let d: Vec<Complex64> = (0..n)
                .map(|c| difference_at(u, s, c, axis, DiffKind::Symmetric))
                .collect();
            mat_vec(clifford.alpha(axis + 1), &d, &mut buf, Complex64::new(1.0, 0.0));
        }
        mat_vec(clifford.beta(), &here, &mut buf, Complex64::new(mass, 0.0));
        if let Some((rho, lap)) = wilson {
            let l: Vec<Complex64> = (0..n).map(|c| lap.get(s, c)).collect();
            mat_vec(clifford.beta(), &l, &mut buf, Complex64::new(rho, 0.0));
        }
        for (c, v) in buf.iter().enumerate() {
            out.set(s, c, *v);
        }
    }
    out
}

/// Matrix-free application of `hamiltonian` to `u`.
pub fn hamiltonian_apply(u: &LatticeField, hamiltonian: &LatticeHamiltonian) -> Result<LatticeField> {
    hamiltonian.apply(u)
}
