//! Weight-one Hodge data of the torus `T = Γ_C / (Γ' ⊕ Γ)` attached to a
//! polynomial, the Néron–Severi orbit count, and the four kernel
//! sublattices of `H^1(T × T)` together with recovery of the endomorphism.
//!
//! Convention: `φ` acts on `Γ = Z^{2n}` (column vectors); the induced action
//! on `H^1(T) = Hom(Γ, Z)` is written in the dual basis as `ᵗφ`.

mod hodge;
mod kernels;
mod ns;

pub use hodge::{hodge_compatibility, HodgeAmbient, HodgeCheck, HodgeMethod};
pub use kernels::{
    kernel_sublattices, recover_endomorphism, verify_torus_decomposition, DecompositionReport,
    KernelLattices,
};
pub use ns::{ns_orbit_analysis, GroupModel, NSOrbitReport};

use crate::error::Result;
use crate::linalg::{IntMatrix, IntegerLattice};
use crate::poly::{isolate_roots, IntPolynomial, RootSystem};

#[derive(Clone, Debug)]
pub struct TorusDatum {
    pub n: usize,
    pub f: IntPolynomial,
    pub gamma: IntegerLattice,
    pub phi: IntMatrix,
    pub roots: RootSystem,
}

impl TorusDatum {
    /// `ᵗφ`, the action on `H^1(T)`.
    pub fn phi_star(&self) -> IntMatrix {
        self.phi.transpose()
    }

    pub fn product(&self) -> ProductH1 {
        ProductH1::new(self.phi_star())
    }
}

/// `φ` = companion matrix of `f`. Checks (P) and isolates the roots; the
/// Galois hypothesis is the caller's business (controls such as `x^4 + 1`
/// are built on purpose).
pub fn build_torus(f: &IntPolynomial, selection_flip: Option<&[bool]>) -> Result<TorusDatum> {
    let mut roots = isolate_roots(f)?;
    if let Some(fl) = selection_flip {
        roots.flip(fl)?;
    }
    let n = f.degree() / 2;
    Ok(TorusDatum {
        n,
        f: f.clone(),
        gamma: IntegerLattice::full(2 * n),
        phi: f.companion(),
        roots,
    })
}

/// `H^1(T × T) = H^1(T) ⊕ H^1(T)`, vectors written `(α, β)`.
#[derive(Clone, Debug)]
pub struct ProductH1 {
    /// `ᵗφ` on one factor.
    pub phi_star: IntMatrix,
}

impl ProductH1 {
    pub fn new(phi_star: IntMatrix) -> Self {
        assert_eq!(phi_star.rows, phi_star.cols);
        Self { phi_star }
    }

    /// Rank of one factor.
    pub fn half(&self) -> usize {
        self.phi_star.rows
    }

    pub fn rank(&self) -> usize {
        2 * self.half()
    }

    fn block_row(&self, left: &IntMatrix, right: &IntMatrix) -> IntMatrix {
        let h = self.half();
        let mut m = IntMatrix::zeros(h, 2 * h);
        for i in 0..h {
            for j in 0..h {
                m.set(i, j, left.get(i, j).clone());
                m.set(i, h + j, right.get(i, j).clone());
            }
        }
        m
    }

    pub fn pr1(&self) -> IntMatrix {
        let h = self.half();
        self.block_row(&IntMatrix::identity(h), &IntMatrix::zeros(h, h))
    }

    pub fn pr2(&self) -> IntMatrix {
        let h = self.half();
        self.block_row(&IntMatrix::zeros(h, h), &IntMatrix::identity(h))
    }

    /// `pr1 + pr2`.
    pub fn sum_map(&self) -> IntMatrix {
        let h = self.half();
        self.block_row(&IntMatrix::identity(h), &IntMatrix::identity(h))
    }

    /// `pr1 + φ* ∘ pr2`.
    pub fn graph_map(&self) -> IntMatrix {
        self.block_row(&IntMatrix::identity(self.half()), &self.phi_star)
    }

    /// Block-diagonal `ᵗφ ⊕ ᵗφ`.
    pub fn phi_star_diag(&self) -> IntMatrix {
        let h = self.half();
        let mut m = IntMatrix::zeros(2 * h, 2 * h);
        for i in 0..h {
            for j in 0..h {
                m.set(i, j, self.phi_star.get(i, j).clone());
                m.set(h + i, h + j, self.phi_star.get(i, j).clone());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_companion_datum() {
        let t = build_torus(&IntPolynomial::from_i64(&[1, 1, 0, 0, 1]), None).unwrap();
        assert_eq!(t.n, 2);
        assert_eq!(t.phi, IntPolynomial::from_i64(&[1, 1, 0, 0, 1]).companion());
        let t6 = build_torus(&IntPolynomial::from_i64(&[1, 1, 0, 0, 0, 0, 1]), None).unwrap();
        assert_eq!(t6.n, 3);
        assert!(build_torus(&IntPolynomial::from_i64(&[5, 0, -5, 0, 1]), None).is_err());
    }
}
