use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Transverse intersection counts of the graph of `φ` with two subtori.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionCounts {
    /// `|det(φ - 1)|`, the number of points of `Δ ∩ Γ_φ`.
    #[serde(serialize_with = "crate::ser::display")]
    pub n: BigInt,
    /// `|det φ|`, the number of points of `(T × 0) ∩ Γ_φ`.
    #[serde(serialize_with = "crate::ser::display")]
    pub m: BigInt,
}

/// Requires `φ - 1` and `φ` nonsingular, otherwise the graph meets the
/// diagonal or `T × 0` in positive dimension.
pub fn intersection_counts(phi: &IntMatrix) -> Result<IntersectionCounts> {
    if phi.rows != phi.cols {
        return Err(Error::NotSquare {
            rows: phi.rows,
            cols: phi.cols,
        });
    }
    let mut shifted = phi.clone();
    for i in 0..phi.rows {
        let v = shifted.get(i, i) - BigInt::from(1);
        shifted.set(i, i, v);
    }
    let n = shifted.det().abs();
    if n.is_zero() {
        return Err(Error::NonTransverse("phi - 1 is singular".into()));
    }
    let m = phi.det().abs();
    if m.is_zero() {
        return Err(Error::NonTransverse("phi is singular".into()));
    }
    Ok(IntersectionCounts { n, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    #[test]
    fn small_companions() {
        let c = IntPolynomial::from_i64(&[1, 1, 0, 0, 1]).companion();
        let r = intersection_counts(&c).unwrap();
        assert_eq!((r.n, r.m), (BigInt::from(3), BigInt::from(1)));
        let two = IntMatrix::from_i64(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(intersection_counts(&two).unwrap().n, BigInt::from(1));
        assert!(intersection_counts(&IntMatrix::identity(2)).is_err());
    }
}
