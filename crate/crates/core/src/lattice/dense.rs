use super::{LatticeField, LatticeGrid, LatticeHamiltonian};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Largest dense dimension `components · sites` that will be materialized.
pub const DENSE_LIMIT: usize = 20_000;

/// A lattice operator as an explicit matrix in the flat field indexing.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    pub matrix: CMatrix,
    pub grid: LatticeGrid,
    pub components: usize,
}

impl DenseOperator {
    /// Materializes a linear map column by column from basis fields.
    pub fn from_linear_map(
        grid: LatticeGrid,
        components: usize,
        map: impl Fn(&LatticeField) -> Result<LatticeField>,
    ) -> Result<Self> {
        let n = grid.sites() * components;
        if n > DENSE_LIMIT {
            return Err(Error::Resource {
                requested: n,
                limit: DENSE_LIMIT,
            });
        }
        let mut matrix = CMatrix::zeros(n, n);
        for site in 0..grid.sites() {
            for comp in 0..components {
                let col = site * components + comp;
                let image = map(&LatticeField::delta(grid, components, site, comp))?;
                if image.values().len() != n {
                    return Err(Error::arg("linear map changed the field shape"));
                }
                for (row, v) in image.values().iter().enumerate() {
                    matrix[(row, col)] = *v;
                }
            }
        }
        Ok(Self {
            matrix,
            grid,
            components,
        })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        linalg::hermiticity_residual(&self.matrix)
    }

    /// Ascending eigenvalues of the Hermitian part.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    pub fn apply(&self, u: &LatticeField) -> Result<LatticeField> {
        if u.values().len() != self.dimension() {
            return Err(Error::arg("field does not match the operator dimension"));
        }
        let v = nalgebra::DVector::from_column_slice(u.values());
        let out = &self.matrix * v;
        LatticeField::new(self.grid, self.components, out.as_slice().to_vec())
    }
}

/// Dense matrix of a lattice Hamiltonian on `grid`.
pub fn build_dense(hamiltonian: &LatticeHamiltonian, grid: LatticeGrid) -> Result<DenseOperator> {
    let comps = hamiltonian.components();
    hamiltonian.validate(&grid, comps)?;
    DenseOperator::from_linear_map(grid, comps, |u| hamiltonian.apply(u))
}
