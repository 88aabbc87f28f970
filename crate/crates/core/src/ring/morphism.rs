use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::GradedAlgebra;
use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;

/// Degree-preserving linear map given on basis elements.
#[derive(Clone)]
pub struct AlgebraMorphism {
    pub source: Arc<GradedAlgebra>,
    pub target: Arc<GradedAlgebra>,
    images: Vec<SparseVec>,
}

impl std::fmt::Debug for AlgebraMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "AlgebraMorphism({} -> {})",
            self.source.name(),
            self.target.name()
        )
    }
}

impl AlgebraMorphism {
    pub fn new(
        source: Arc<GradedAlgebra>,
        target: Arc<GradedAlgebra>,
        images: Vec<SparseVec>,
    ) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for a source of dimension {}",
                images.len(),
                source.dim()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.keys().any(|&j| target.degree(j) != source.degree(i)) {
                return Err(Error::DegreeMismatch(format!("image of basis element {i}")));
            }
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    pub fn image(&self, i: usize) -> &SparseVec {
        &self.images[i]
    }

    pub fn images(&self) -> &[SparseVec] {
        &self.images
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in v {
            sparse::axpy(&mut out, c, &self.images[i]);
        }
        out
    }

    /// Matrix in degree `k`, acting on column coordinate vectors.
    pub fn matrix(&self, k: usize) -> RationalMatrix {
        let src = self.source.basis_in_degree(k);
        let tgt = self.target.basis_in_degree(k);
        let cols: Vec<Vec<_>> = src
            .iter()
            .map(|&i| sparse::to_dense(&self.images[i], tgt))
            .collect();
        RationalMatrix::from_fn(tgt.len(), src.len(), |r, c| cols[c][r].clone())
    }

    pub fn is_unital(&self) -> bool {
        self.target.is_unit(&self.images[0])
    }

    fn multiplicative_on(&self, i: usize, j: usize) -> bool {
        let lhs = self.apply(&self.source.mul_basis(i, j));
        let rhs = self.target.mul(&self.images[i], &self.images[j]);
        lhs == rhs
    }

    /// Check `f(ab) = f(a) f(b)` on all basis pairs when there are at most
    /// `limit` of them, otherwise on `limit` seeded random pairs.
    pub fn check_multiplicative(&self, limit: usize, seed: u64) -> bool {
        let d = self.source.dim();
        if d * d <= limit {
            (0..d).all(|i| (0..d).all(|j| self.multiplicative_on(i, j)))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..limit).all(|_| self.multiplicative_on(rng.gen_range(0..d), rng.gen_range(0..d)))
        }
    }

    pub fn compose(&self, after: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        let images = self.images.iter().map(|v| after.apply(v)).collect();
        AlgebraMorphism::new(self.source.clone(), after.target.clone(), images)
    }

    /// Rank of the map in every degree equals the source dimension.
    pub fn is_injective(&self) -> bool {
        let mut hit = std::collections::BTreeSet::new();
        if self
            .images
            .iter()
            .all(|v| v.len() == 1 && hit.insert(*v.keys().next().unwrap()))
        {
            return true;
        }
        (0..=self.source.top_degree()).all(|k| {
            let m = self.matrix(k);
            m.rank() == m.cols()
        })
    }
}
