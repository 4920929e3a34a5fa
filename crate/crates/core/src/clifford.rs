//! Anticommuting Hermitian matrix families.
//!
//! Two constructions are provided: the textbook Pauli-based Dirac matrices
//! for `d = 1, 2, 3`, and the staggered family `A_1..A_d, B` of size `2^d`
//! acting on components labelled by the corners `{0,1}^d` of the unit cell.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, ZERO};

/// Largest dimension supported by the staggered constructions (`N = 64`).
pub const MAX_D: usize = 6;

/// `s_j(n) = n_1 + … + n_j`, with `s_0 = 0`.
pub fn sign_exponent(n: &[i64], j: usize) -> Result<i64> {
    if j > n.len() {
        return Err(Error::arg(format!(
            "sign exponent index {j} out of range 0..={}",
            n.len()
        )));
    }
    Ok(n[..j].iter().sum())
}

/// `(-1)^k` for a possibly negative integer.
pub fn parity_sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A set of Hermitian matrices `α_1..α_d, β` with pairwise anticommutation
/// and unit squares.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordSet {
    dim: usize,
    size: usize,
    alphas: Vec<CMatrix>,
    beta: CMatrix,
}

impl CliffordSet {
    /// Assembles a set without checking the algebra; use
    /// [`verify_clifford`] to check it.
    pub fn from_matrices(alphas: Vec<CMatrix>, beta: CMatrix) -> Result<Self> {
        let size = beta.nrows();
        if alphas.is_empty() {
            return Err(Error::arg("a Clifford set needs at least one alpha"));
        }
        if size < 2 || beta.ncols() != size {
            return Err(Error::arg("beta must be square of size at least 2"));
        }
        if alphas.iter().any(|a| a.nrows() != size || a.ncols() != size) {
            return Err(Error::arg("all matrices must share the size of beta"));
        }
        Ok(Self {
            dim: alphas.len(),
            size,
            alphas,
            beta,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn alphas(&self) -> &[CMatrix] {
        &self.alphas
    }

    /// `α_j` with 1-based `j`.
    pub fn alpha(&self, j: usize) -> &CMatrix {
        &self.alphas[j - 1]
    }

    pub fn beta(&self) -> &CMatrix {
        &self.beta
    }

    pub fn beta_mut(&mut self) -> &mut CMatrix {
        &mut self.beta
    }

    /// `Σ_j t_j α_j + m β`.
    pub fn combine(&self, t: &[f64], m: f64) -> CMatrix {
        debug_assert_eq!(t.len(), self.dim);
        let mut out = self.beta.scale(m);
        for (a, &tj) in self.alphas.iter().zip(t) {
            out += a.scale(tj);
        }
        out
    }
}

/// Pauli-based Dirac matrices for `d ∈ {1, 2, 3}`.
pub fn standard_clifford(d: usize) -> Result<CliffordSet> {
    let s = linalg::pauli;
    match d {
        1 => CliffordSet::from_matrices(vec![s(1)], s(3)),
        2 => CliffordSet::from_matrices(vec![s(1), s(2)], s(3)),
        3 => {
            let zero = CMatrix::zeros(2, 2);
            let one = linalg::identity(2);
            let alphas = (1..=3)
                .map(|j| linalg::block2(&zero, &s(j), &s(j), &zero))
                .collect();
            let beta = linalg::block2(&one, &zero, &zero, &(-one.clone()));
            CliffordSet::from_matrices(alphas, beta)
        }
        _ => Err(Error::UnsupportedDimension {
            dim: d,
            supported: "1..=3",
        }),
    }
}

/// A corner `a ∈ {0,1}^d` of the unit cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if entries.iter().any(|&e| e > 1) {
            return Err(Error::arg("multi-index entries must be 0 or 1"));
        }
        Ok(Self(entries))
    }

    /// Bit `j` of `bits` becomes entry `j` (0-based).
    pub fn from_bits(d: usize, bits: usize) -> Self {
        Self((0..d).map(|j| ((bits >> j) & 1) as u8).collect())
    }

    pub fn bits(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &e)| (e as usize) << j)
            .sum()
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `s_j(a)` for `j` in `0..=d`.
    pub fn partial_sum(&self, j: usize) -> i64 {
        self.0[..j].iter().map(|&e| e as i64).sum()
    }

    /// `(-1)^{s_j(a)}`.
    pub fn sign(&self, j: usize) -> f64 {
        parity_sign(self.partial_sum(j))
    }

    /// The corner obtained by flipping entry `axis` (0-based); this is the
    /// unique one of `a ± e_axis` lying in `{0,1}^d`.
    pub fn flipped(&self, axis: usize) -> Self {
        let mut e = self.0.clone();
        e[axis] ^= 1;
        Self(e)
    }
}

/// A listing of the `2^d` corners, fixing the component order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentOrdering {
    dim: usize,
    order: Vec<MultiIndex>,
    #[serde(skip)]
    position: Vec<usize>,
}

impl ComponentOrdering {
    pub fn new(dim: usize, order: Vec<MultiIndex>) -> Result<Self> {
        check_staggered_dim(dim)?;
        let n = 1usize << dim;
        if order.len() != n {
            return Err(Error::arg(format!(
                "ordering lists {} indices, expected {n}",
                order.len()
            )));
        }
        let mut position = vec![usize::MAX; n];
        for (p, a) in order.iter().enumerate() {
            if a.dim() != dim {
                return Err(Error::arg("multi-index has the wrong dimension"));
            }
            let slot = &mut position[a.bits()];
            if *slot != usize::MAX {
                return Err(Error::arg("ordering repeats a multi-index"));
            }
            *slot = p;
        }
        Ok(Self {
            dim,
            order,
            position,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[MultiIndex] {
        &self.order
    }

    /// Multi-index at component `p` (0-based).
    pub fn index(&self, p: usize) -> &MultiIndex {
        &self.order[p]
    }

    /// Component position of `a`.
    pub fn position(&self, a: &MultiIndex) -> usize {
        self.position[a.bits()]
    }

    /// Component position of the corner whose bitmask is `bits`.
    pub fn position_of_bits(&self, bits: usize) -> usize {
        self.position[bits]
    }

    /// Reorders components: entry `p` of the result is entry `perm[p]` of self.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.len() {
            return Err(Error::arg("permutation length mismatch"));
        }
        Self::new(self.dim, perm.iter().map(|&p| self.order[p].clone()).collect())
    }
}

fn check_staggered_dim(d: usize) -> Result<()> {
    if d == 0 || d > MAX_D {
        return Err(Error::UnsupportedDimension {
            dim: d,
            supported: "1..=6",
        });
    }
    Ok(())
}

/// Even-parity corners first, then odd, built recursively so that `d = 3`
/// reproduces the listing `(0,0,0),(1,1,0),(0,1,1),(1,0,1),(0,0,1),…`.
pub fn canonical_ordering(d: usize) -> Result<ComponentOrdering> {
    check_staggered_dim(d)?;
    let mut even = vec![vec![0u8]];
    let mut odd = vec![vec![1u8]];
    for _ in 1..d {
        let ext = |v: &[Vec<u8>], bit: u8| -> Vec<Vec<u8>> {
            v.iter()
                .map(|a| {
                    let mut a = a.clone();
                    a.push(bit);
                    a
                })
                .collect()
        };
        let next_even = [ext(&even, 0), ext(&odd, 1)].concat();
        let next_odd = [ext(&even, 1), ext(&odd, 0)].concat();
        even = next_even;
        odd = next_odd;
    }
    let order = even
        .into_iter()
        .chain(odd)
        .map(MultiIndex)
        .collect();
    ComponentOrdering::new(d, order)
}

/// The staggered matrices `A_1..A_d` (as alphas) and `B` (as beta).
pub fn ks_clifford(d: usize, ordering: &ComponentOrdering) -> Result<CliffordSet> {
    if ordering.dim() != d {
        return Err(Error::arg(format!(
            "ordering is for dimension {}, requested {d}",
            ordering.dim()
        )));
    }
    let n = ordering.len();
    let alphas = (0..d)
        .map(|axis| {
            let mut m = CMatrix::zeros(n, n);
            for (p, a) in ordering.order().iter().enumerate() {
                let q = ordering.position(&a.flipped(axis));
                m[(p, q)] = c(a.sign(axis), 0.0);
            }
            m
        })
        .collect();
    let beta = CMatrix::from_fn(n, n, |p, q| {
        if p == q {
            c(ordering.index(p).sign(d), 0.0)
        } else {
            ZERO
        }
    });
    CliffordSet::from_matrices(alphas, beta)
}

/// A named relation residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub residual: f64,
}

/// Outcome of checking a family of algebraic relations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub relations: Vec<Relation>,
    pub max_residual: f64,
    pub pass: bool,
}

impl AlgebraReport {
    pub fn from_relations(relations: Vec<Relation>, tol: f64) -> Self {
        let max_residual = relations.iter().map(|r| r.residual).fold(0.0, f64::max);
        Self {
            relations,
            max_residual,
            pass: max_residual <= tol,
        }
    }
}

/// Checks Hermiticity, squares and all pairwise anticommutators.
pub fn verify_clifford(set: &CliffordSet, tol: f64) -> AlgebraReport {
    let id = linalg::identity(set.size());
    let mut named: Vec<(String, &CMatrix)> = set
        .alphas()
        .iter()
        .enumerate()
        .map(|(j, a)| (format!("alpha_{}", j + 1), a))
        .collect();
    named.push(("beta".to_string(), set.beta()));

    let mut relations = Vec::new();
    for (name, m) in &named {
        relations.push(Relation {
            name: format!("hermitian {name}"),
            residual: linalg::hermiticity_residual(m),
        });
        relations.push(Relation {
            name: format!("square {name}"),
            residual: linalg::frobenius(&(*m * *m - &id)),
        });
    }
    for i in 0..named.len() {
        for j in i + 1..named.len() {
            relations.push(Relation {
                name: format!("anticommutator {} {}", named[i].0, named[j].0),
                residual: linalg::frobenius(&linalg::anticommutator(named[i].1, named[j].1)),
            });
        }
    }
    AlgebraReport::from_relations(relations, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits_of(o: &ComponentOrdering) -> Vec<Vec<u8>> {
        o.order().iter().map(|a| a.entries().to_vec()).collect()
    }

    #[test]
    fn sign_exponent_examples() {
        assert_eq!(sign_exponent(&[1, 1, 0], 2).unwrap(), 2);
        assert_eq!(sign_exponent(&[5, -3], 0).unwrap(), 0);
        assert_eq!(sign_exponent(&[1, 0, 1, 1], 4).unwrap(), 3);
        assert!(matches!(sign_exponent(&[1, 2], 3), Err(Error::Argument(_))));
    }

    #[test]
    fn standard_sets() {
        let s1 = standard_clifford(1).unwrap();
        assert_eq!(s1.alpha(1), &linalg::pauli(1));
        assert_eq!(s1.beta(), &linalg::pauli(3));
        let s3 = standard_clifford(3).unwrap();
        assert_eq!(s3.size(), 4);
        let diag: Vec<f64> = (0..4).map(|i| s3.beta()[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
        let s2 = standard_clifford(2).unwrap();
        assert_eq!(
            linalg::frobenius(&linalg::anticommutator(s2.alpha(1), s2.alpha(2))),
            0.0
        );
        for d in 1..=3 {
            let r = verify_clifford(&standard_clifford(d).unwrap(), 1e-13);
            assert!(r.pass);
            assert_eq!(r.max_residual, 0.0);
        }
        assert!(matches!(
            standard_clifford(4),
            Err(Error::UnsupportedDimension { dim: 4, .. })
        ));
    }

    #[test]
    fn canonical_orderings_match_listings() {
        assert_eq!(bits_of(&canonical_ordering(1).unwrap()), vec![vec![0], vec![1]]);
        assert_eq!(
            bits_of(&canonical_ordering(2).unwrap()),
            vec![vec![0, 0], vec![1, 1], vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            bits_of(&canonical_ordering(3).unwrap()),
            vec![
                vec![0, 0, 0],
                vec![1, 1, 0],
                vec![0, 1, 1],
                vec![1, 0, 1],
                vec![0, 0, 1],
                vec![1, 1, 1],
                vec![0, 1, 0],
                vec![1, 0, 0],
            ]
        );
        assert!(canonical_ordering(7).is_err());
        assert!(canonical_ordering(0).is_err());
    }

    #[test]
    fn canonical_ordering_parity_split() {
        for d in 1..=MAX_D {
            let o = canonical_ordering(d).unwrap();
            let half = o.len() / 2;
            for (p, a) in o.order().iter().enumerate() {
                assert_eq!(a.partial_sum(d) % 2 == 0, p < half, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn invalid_orderings_rejected() {
        let dup = vec![MultiIndex::from_bits(1, 0), MultiIndex::from_bits(1, 0)];
        assert!(ComponentOrdering::new(1, dup).is_err());
        assert!(ComponentOrdering::new(2, vec![MultiIndex::from_bits(2, 0)]).is_err());
        assert!(MultiIndex::new(vec![0, 2]).is_err());
        let o = canonical_ordering(2).unwrap();
        assert!(ks_clifford(3, &o).is_err());
    }

    #[test]
    fn ks_one_dimensional_is_pauli() {
        let k = ks_clifford(1, &canonical_ordering(1).unwrap()).unwrap();
        assert_eq!(k.alpha(1), &linalg::pauli(1));
        assert_eq!(k.beta(), &linalg::pauli(3));
    }

    #[test]
    fn ks_two_dimensional_beta() {
        let k = ks_clifford(2, &canonical_ordering(2).unwrap()).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| k.beta()[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn ks_sets_satisfy_the_algebra() {
        for d in 1..=MAX_D {
            let k = ks_clifford(d, &canonical_ordering(d).unwrap()).unwrap();
            let r = verify_clifford(&k, 1e-13);
            assert!(r.pass, "d={d}: {}", r.max_residual);
            assert_eq!(r.max_residual, 0.0);
        }
    }

    #[test]
    fn ks_rows_have_single_unit_entry() {
        for d in 1..=MAX_D {
            let k = ks_clifford(d, &canonical_ordering(d).unwrap()).unwrap();
            for a in k.alphas() {
                for row in a.row_iter() {
                    let nz: Vec<_> = row.iter().filter(|z| z.norm() > 0.0).collect();
                    assert_eq!(nz.len(), 1);
                    assert_eq!(nz[0].norm(), 1.0);
                }
            }
        }
    }

    #[test]
    fn corrupted_beta_fails() {
        let mut s = standard_clifford(1).unwrap();
        s.beta_mut()[(0, 0)] += c(1e-6, 0.0);
        let r = verify_clifford(&s, 1e-13);
        assert!(!r.pass);
        // (1+ε)² − 1 = 2ε + ε²
        assert!((r.max_residual - (2e-6 + 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn report_serializes() {
        let r = verify_clifford(&standard_clifford(1).unwrap(), 1e-13);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert!(v["relations"][0]["name"].is_string());
        assert!(v["relations"][0]["residual"].is_number());
        assert_eq!(v["pass"], true);
        assert_eq!(v["max_residual"], 0.0);
    }

    proptest! {
        #[test]
        fn dirac_square_is_scalar(d in 1usize..=4, t in proptest::collection::vec(-5.0f64..5.0, 4), m in 0.0f64..3.0) {
            let k = ks_clifford(d, &canonical_ordering(d).unwrap()).unwrap();
            let h = k.combine(&t[..d], m);
            let scalar: f64 = t[..d].iter().map(|x| x * x).sum::<f64>() + m * m;
            let resid = linalg::frobenius(&(&h * &h - linalg::identity(k.size()).scale(scalar)));
            prop_assert!(resid <= 1e-12 * (1.0 + scalar));
        }

        #[test]
        fn any_valid_ordering_gives_a_clifford_set(seed in 0u64..1000, d in 1usize..=4) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..1 << d).collect();
            perm.shuffle(&mut rng);
            let o = canonical_ordering(d).unwrap().permuted(&perm).unwrap();
            prop_assert!(verify_clifford(&ks_clifford(d, &o).unwrap(), 1e-13).pass);
        }
    }
}
