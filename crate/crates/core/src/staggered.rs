//! Regrouping of one-component fields on spacing `h` into `2^d`-component
//! fields on spacing `2h`.
//!
//! `(U u)_a(z) = 2^{-d/2} u(z + h a)` for coarse sites `z` and corners
//! `a ∈ {0,1}^d`; with the `h^d` and `(2h)^d` weighted norms this map is
//! unitary, and it carries the one-component staggered operator onto the
//! multi-component one.

use rand::Rng;
use serde::Serialize;

use crate::clifford::{AlgebraReport, ComponentOrdering, Relation};
use crate::error::{Error, Result};
use crate::lattice::{
    build_dense, diff_apply, laplacian_apply, parity_apply, staggered_apply, DenseOperator, DiffKind, LatticeField,
    LatticeGrid, LatticeHamiltonian,
};
use crate::linalg::{self, CMatrix};

/// A fine lattice (spacing `h`, side `2n`) paired with its coarse lattice
/// (spacing `2h`, side `n`).
#[derive(Clone, Debug, PartialEq)]
pub struct StaggeredPair {
    fine: LatticeGrid,
    coarse: LatticeGrid,
    ordering: ComponentOrdering,
}

impl StaggeredPair {
    /// Pair with a coarse lattice of side `coarse_side`.
    pub fn new(coarse_side: usize, spacing: f64, ordering: ComponentOrdering) -> Result<Self> {
        let d = ordering.dim();
        let fine = LatticeGrid::new(d, 2 * coarse_side, spacing)?;
        let coarse = LatticeGrid::new(d, coarse_side, 2.0 * spacing)?;
        Ok(Self {
            fine,
            coarse,
            ordering,
        })
    }

    /// Pair built from the fine lattice side, which must be even.
    pub fn from_fine_side(fine_side: usize, spacing: f64, ordering: ComponentOrdering) -> Result<Self> {
        if fine_side == 0 || fine_side % 2 != 0 {
            return Err(Error::precondition(format!(
                "the fine lattice side must be even and positive, got {fine_side}"
            )));
        }
        Self::new(fine_side / 2, spacing, ordering)
    }

    pub fn fine(&self) -> &LatticeGrid {
        &self.fine
    }

    pub fn coarse(&self) -> &LatticeGrid {
        &self.coarse
    }

    pub fn ordering(&self) -> &ComponentOrdering {
        &self.ordering
    }

    pub fn dim(&self) -> usize {
        self.fine.dim()
    }

    fn fine_site(&self, coarse_site: usize, component: usize) -> usize {
        let a = self.ordering.index(component).entries();
        let coords: Vec<usize> = self
            .coarse
            .coords(coarse_site)
            .iter()
            .zip(a)
            .map(|(&c, &ak)| 2 * c + ak as usize)
            .collect();
        self.fine.site(&coords)
    }

    fn scale(&self) -> f64 {
        2f64.powf(-(self.dim() as f64) / 2.0)
    }
}

/// `U_h u`.
pub fn u_transform(u: &LatticeField, pair: &StaggeredPair) -> Result<LatticeField> {
    u.require_components(1, "the regrouping map")?;
    if u.grid() != pair.fine() {
        return Err(Error::arg("field does not live on the pair's fine lattice"));
    }
    let s = pair.scale();
    Ok(LatticeField::from_fn(*pair.coarse(), pair.ordering.len(), |site, p| {
        u.get(pair.fine_site(site, p), 0) * s
    }))
}

/// `U_h^* w`.
pub fn u_adjoint(w: &LatticeField, pair: &StaggeredPair) -> Result<LatticeField> {
    w.require_components(pair.ordering.len(), "the adjoint regrouping map")?;
    if w.grid() != pair.coarse() {
        return Err(Error::arg("field does not live on the pair's coarse lattice"));
    }
    let s = 1.0 / pair.scale();
    let mut out = LatticeField::zeros(*pair.fine(), 1);
    for site in 0..pair.coarse.sites() {
        for p in 0..pair.ordering.len() {
            out.set(pair.fine_site(site, p), 0, w.get(site, p) * s);
        }
    }
    Ok(out)
}

/// Largest fine-lattice site count accepted by the dense pair checks, which
/// hold and multiply several square matrices of that size.
pub const PAIR_LIMIT: usize = 4096;

/// Dense matrices of `U_h` (coarse × fine) and `U_h^*` (fine × coarse).
pub fn dense_transforms(pair: &StaggeredPair) -> Result<(CMatrix, CMatrix)> {
    let fine_n = pair.fine.sites();
    let comps = pair.ordering.len();
    let coarse_n = pair.coarse.sites() * comps;
    let limit = PAIR_LIMIT;
    if fine_n > limit {
        return Err(Error::Resource {
            requested: fine_n,
            limit,
        });
    }
    let mut u = CMatrix::zeros(coarse_n, fine_n);
    for col in 0..fine_n {
        let img = u_transform(&LatticeField::delta(pair.fine, 1, col, 0), pair)?;
        for (row, v) in img.values().iter().enumerate() {
            u[(row, col)] = *v;
        }
    }
    let mut ua = CMatrix::zeros(fine_n, coarse_n);
    for col in 0..coarse_n {
        let img = u_adjoint(
            &LatticeField::delta(pair.coarse, comps, col / comps, col % comps),
            pair,
        )?;
        for (row, v) in img.values().iter().enumerate() {
            ua[(row, col)] = *v;
        }
    }
    Ok((u, ua))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StaggeredReport {
    pub dim: usize,
    pub fine_side: usize,
    pub mass: f64,
    /// `‖U^*U − I‖_F` on the fine space.
    pub unitarity_fine: f64,
    /// `‖UU^* − I‖_F` on the coarse space.
    pub unitarity_coarse: f64,
    /// `‖U H̃ U^* − H_KS‖_F`.
    pub intertwine: f64,
    /// `‖H_KS² − (−Δ_{2h} + m²)‖_F`.
    pub square: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `‖U · dense(one-component) · U^* − dense(multi-component)‖_F`.
pub fn intertwine_check(pair: &StaggeredPair, mass: f64) -> Result<f64> {
    let (u, ua) = dense_transforms(pair)?;
    let one = build_dense(&LatticeHamiltonian::ks_one_component(mass), pair.fine)?;
    let multi = multi_component_dense(pair, mass)?;
    Ok(linalg::frobenius(&(&u * &one.matrix * &ua - &multi.matrix)))
}

fn multi_component_dense(pair: &StaggeredPair, mass: f64) -> Result<DenseOperator> {
    build_dense(
        &LatticeHamiltonian::ks_multi_component(pair.ordering.clone(), mass),
        pair.coarse,
    )
}

/// Runs every staggered identity on the pair and compares against `tol`.
pub fn verify_pair(pair: &StaggeredPair, mass: f64, tol: f64) -> Result<StaggeredReport> {
    let (u, ua) = dense_transforms(pair)?;
    let fine_id = linalg::identity(pair.fine.sites());
    let coarse_id = linalg::identity(u.nrows());
    let unitarity_fine = linalg::frobenius(&(&ua * &u - &fine_id));
    let unitarity_coarse = linalg::frobenius(&(&u * &ua - &coarse_id));
    let intertwine = intertwine_check(pair, mass)?;

    let multi = multi_component_dense(pair, mass)?;
    let comps = pair.ordering.len();
    let lap = DenseOperator::from_linear_map(pair.coarse, comps, |w| laplacian_apply(w, 1))?;
    let target = &lap.matrix + coarse_id.scale(mass * mass);
    let square = linalg::frobenius(&(&multi.matrix * &multi.matrix - target));

    let pass = [unitarity_fine, unitarity_coarse, intertwine, square]
        .iter()
        .all(|&r| r <= tol);
    Ok(StaggeredReport {
        dim: pair.dim(),
        fine_side: pair.fine.side(),
        mass,
        unitarity_fine,
        unitarity_coarse,
        intertwine,
        square,
        tolerance: tol,
        pass,
    })
}

/// Relations of the one-component sign operators `X_j`, `Y` applied to a
/// random field: `Y² = 1`, `X_j² = (D^S_j)²`, and the anticommutators
/// `{X_j, Y}`, `{X_j, X_k}`. Residuals are norms relative to `‖u‖`.
pub fn operator_relations(grid: LatticeGrid, rng: &mut impl Rng, tol: f64) -> Result<AlgebraReport> {
    grid.require_even("the staggered sign operators")?;
    let u = LatticeField::random(grid, 1, rng);
    let scale = u.norm().max(f64::MIN_POSITIVE);
    let y = parity_apply(&u)?;
    let x: Vec<LatticeField> = (0..grid.dim()).map(|j| staggered_apply(&u, j)).collect::<Result<_>>()?;
    let mut relations = vec![Relation {
        name: "Y squared".into(),
        residual: parity_apply(&y)?.sub(&u).norm() / scale,
    }];
    for j in 0..grid.dim() {
        let sym = diff_apply(&diff_apply(&u, j, DiffKind::Symmetric)?, j, DiffKind::Symmetric)?;
        relations.push(Relation {
            name: format!("X_{} squared", j + 1),
            residual: staggered_apply(&x[j], j)?.sub(&sym).norm() / scale,
        });
        relations.push(Relation {
            name: format!("anticommutator X_{} Y", j + 1),
            residual: staggered_apply(&y, j)?.add(&parity_apply(&x[j])?).norm() / scale,
        });
        for k in j + 1..grid.dim() {
            relations.push(Relation {
                name: format!("anticommutator X_{} X_{}", j + 1, k + 1),
                residual: staggered_apply(&x[k], j)?.add(&staggered_apply(&x[j], k)?).norm() / scale,
            });
        }
    }
    Ok(AlgebraReport::from_relations(relations, tol))
}
