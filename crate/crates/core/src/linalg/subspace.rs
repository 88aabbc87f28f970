use num_traits::Zero;

use super::{RationalMatrix, Q};
use crate::error::{Error, Result};

/// Rational subspace of `Q^ambient_dim`, stored as the nonzero rows of its
/// reduced row echelon form. Two equal subspaces have identical bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        RationalMatrix::identity(ambient_dim).row_space()
    }

    pub fn from_spanning(ambient_dim: usize, vectors: Vec<Vec<Q>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let m = RationalMatrix::from_rows(vectors);
        assert_eq!(m.cols(), ambient_dim);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row_vec(i)).collect();
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    /// Basis as the rows of a matrix.
    pub fn matrix(&self) -> RationalMatrix {
        RationalMatrix::from_rows_with_cols(self.basis.clone(), self.ambient_dim)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.to_vec();
        for b in &self.basis {
            let p = b
                .iter()
                .position(|x| !x.is_zero())
                .expect("nonzero basis row");
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (wi, bi) in w.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *wi -= &f * bi;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Ok(Self::from_spanning(self.ambient_dim, v))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        // x = sum a_i A_i = sum b_j B_j  <=>  (a, b) in ker [A^T | -B^T]
        let a = self.matrix().transpose();
        let b = other
            .matrix()
            .transpose()
            .scale(&-Q::from_integer(1.into()));
        let ker = a.hstack(&b).kernel_basis();
        let k = self.dim();
        let vecs = ker
            .basis()
            .iter()
            .map(|c| {
                let mut x = vec![Q::zero(); self.ambient_dim];
                for (ai, row) in c[..k].iter().zip(&self.basis) {
                    if ai.is_zero() {
                        continue;
                    }
                    for (xj, rj) in x.iter_mut().zip(row) {
                        *xj += ai * rj;
                    }
                }
                x
            })
            .collect();
        Ok(Self::from_spanning(self.ambient_dim, vecs))
    }

    /// Image under a linear map given by a matrix acting on column vectors.
    pub fn image(&self, m: &RationalMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim);
        Self::from_spanning(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)).collect())
    }

    /// Coordinates of `v` in this subspace's echelon basis.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        // Echelon basis: the coordinate of row i is v at its pivot column.
        Some(
            self.basis
                .iter()
                .map(|b| {
                    let p = b.iter().position(|x| !x.is_zero()).unwrap();
                    v[p].clone()
                })
                .collect(),
        )
    }
}
