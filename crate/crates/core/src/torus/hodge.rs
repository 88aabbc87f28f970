use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::TorusDatum;
use crate::error::Result;
use crate::linalg::{IntMatrix, IntegerLattice, RationalMatrix};

/// `H^1` of a product of tori with its `(1,0)` part.
///
/// `operator` acts on column vectors and each of its eigenspaces lies in
/// `H^{1,0}` or in `H^{0,1}`, so stable rational subspaces are automatically
/// sub-Hodge structures.
#[derive(Clone, Debug)]
pub struct HodgeAmbient {
    pub operator: RationalMatrix,
    pub h10: Vec<Vec<Complex64>>,
}

fn null_vector(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested");
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    vt.row(k).iter().map(|z| z.conj()).collect()
}

fn to_complex(m: &RationalMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        Complex64::new(m[(i, j)].to_f64().unwrap_or(f64::NAN), 0.0)
    })
}

impl HodgeAmbient {
    /// `H^1(T)`: the holomorphic forms kill `Γ'`, so they are the
    /// eigenvectors of `ᵗφ` for the conjugates of the selected roots.
    pub fn torus(t: &TorusDatum) -> Self {
        let op = t.phi_star().to_rational();
        let a = to_complex(&op);
        let d = a.nrows();
        let h10 = t
            .roots
            .selection
            .iter()
            .map(|&s| {
                let mu = t.roots.value(t.roots.conjugate(s));
                null_vector(&(a.clone() - DMatrix::identity(d, d) * mu))
            })
            .collect();
        Self { operator: op, h10 }
    }

    /// `H^1(F)` of the square elliptic curve `C / Z[i]`, `dz = dx + i dy`.
    pub fn elliptic() -> Self {
        Self {
            operator: RationalMatrix::from_i64(&[vec![0, -1], vec![1, 0]]),
            h10: vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]],
        }
    }

    pub fn dim(&self) -> usize {
        self.operator.rows()
    }

    /// `H^1(A × B) = H^1(A) ⊕ H^1(B)`.
    pub fn product(&self, other: &Self) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let op = RationalMatrix::from_fn(a + b, a + b, |i, j| {
            if i < a && j < a {
                self.operator[(i, j)].clone()
            } else if i >= a && j >= a {
                other.operator[(i - a, j - a)].clone()
            } else {
                crate::linalg::q(0)
            }
        });
        let zero = Complex64::new(0.0, 0.0);
        let mut h10: Vec<Vec<Complex64>> = self
            .h10
            .iter()
            .map(|v| {
                v.iter()
                    .copied()
                    .chain(std::iter::repeat_n(zero, b))
                    .collect()
            })
            .collect();
        h10.extend(other.h10.iter().map(|v| {
            std::iter::repeat_n(zero, a)
                .chain(v.iter().copied())
                .collect()
        }));
        Self { operator: op, h10 }
    }

    pub fn power(&self, k: usize) -> Self {
        let mut out = self.clone();
        for _ in 1..k {
            out = out.product(self);
        }
        out
    }

    pub fn operator_int(&self) -> Option<IntMatrix> {
        self.operator.to_int()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HodgeMethod {
    /// `L` is stable under the operator; exact.
    OperatorStable,
    /// Numeric dimension count of `L_C ∩ H^{1,0}`.
    Numeric,
    /// Singular values too close to the tolerance to decide.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct HodgeCheck {
    pub compatible: bool,
    pub method: HodgeMethod,
    pub rank: usize,
    /// `dim L_C ∩ H^{1,0}` and `dim L_C ∩ H^{0,1}` when computed numerically.
    pub dims: Option<(usize, usize)>,
}

fn numeric_rank(rows: &[Vec<Complex64>], tol: f64) -> (usize, bool) {
    if rows.is_empty() {
        return (0, false);
    }
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let sv = m.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return (0, false);
    }
    let ambiguous = sv.iter().any(|s| s / top > tol && s / top < tol.sqrt());
    (sv.iter().filter(|s| *s / top > tol).count(), ambiguous)
}

fn intersection_dim(l: &[Vec<Complex64>], h: &[Vec<Complex64>], tol: f64) -> (usize, bool) {
    let (rl, a1) = numeric_rank(l, tol);
    let (rh, a2) = numeric_rank(h, tol);
    let mut both = l.to_vec();
    both.extend(h.iter().cloned());
    let (rb, a3) = numeric_rank(&both, tol);
    ((rl + rh).saturating_sub(rb), a1 || a2 || a3)
}

/// Is `L_C = L^{1,0} ⊕ L^{0,1}`? Exact when `L` is operator-stable,
/// otherwise a numeric count with singular-value tolerance `tol`.
pub fn hodge_compatibility(l: &IntegerLattice, amb: &HodgeAmbient, tol: f64) -> Result<HodgeCheck> {
    let rank = l.rank();
    let span = l.rational_span();
    let stable = span
        .basis()
        .iter()
        .all(|v| span.contains(&amb.operator.mul_vec(v)));
    if stable && rank.is_multiple_of(2) {
        return Ok(HodgeCheck {
            compatible: true,
            method: HodgeMethod::OperatorStable,
            rank,
            dims: None,
        });
    }
    let lc: Vec<Vec<Complex64>> = l
        .basis_q()
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect()
        })
        .collect();
    let h01: Vec<Vec<Complex64>> = amb
        .h10
        .iter()
        .map(|v| v.iter().map(|z| z.conj()).collect())
        .collect();
    let (d10, amb1) = intersection_dim(&lc, &amb.h10, tol);
    let (d01, amb2) = intersection_dim(&lc, &h01, tol);
    let method = if amb1 || amb2 {
        HodgeMethod::Inconclusive
    } else {
        HodgeMethod::Numeric
    };
    let compatible = method == HodgeMethod::Numeric
        && rank.is_multiple_of(2)
        && d10 == rank / 2
        && d01 == rank / 2;
    Ok(HodgeCheck {
        compatible,
        method,
        rank,
        dims: Some((d10, d01)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;
    use crate::torus::{build_torus, kernel_sublattices};

    fn torus() -> TorusDatum {
        build_torus(&IntPolynomial::from_i64(&[1, 1, 0, 0, 1]), None).unwrap()
    }

    #[test]
    fn h10_vectors_are_eigenvectors() {
        let t = torus();
        let amb = HodgeAmbient::torus(&t);
        let a = to_complex(&amb.operator);
        for (k, v) in amb.h10.iter().enumerate() {
            let mu = t.roots.value(t.roots.conjugate(t.roots.selection[k]));
            let x = nalgebra::DVector::from_vec(v.clone());
            assert!((&a * &x - &x * mu).norm() < 1e-10);
        }
    }

    #[test]
    fn full_and_kernel_lattices_are_compatible() {
        let t = torus();
        let amb = HodgeAmbient::torus(&t).power(2);
        let full = IntegerLattice::full(8);
        assert!(hodge_compatibility(&full, &amb, 1e-10).unwrap().compatible);
        for l in kernel_sublattices(&t.product()).l {
            let c = hodge_compatibility(&l, &amb, 1e-10).unwrap();
            assert!(c.compatible && c.method == HodgeMethod::OperatorStable);
        }
    }

    #[test]
    fn generic_plane_is_not() {
        let t = torus();
        let amb = HodgeAmbient::torus(&t);
        let l = IntegerLattice::from_i64(4, &[vec![1, 0, 2, 0], vec![0, 1, 0, -1]]);
        let c = hodge_compatibility(&l, &amb, 1e-10).unwrap();
        assert_eq!(c.method, HodgeMethod::Numeric);
        assert!(!c.compatible);
        assert_eq!(c.dims, Some((0, 0)));
    }
}
