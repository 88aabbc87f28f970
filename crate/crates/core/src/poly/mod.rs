//! Integer polynomials: condition (P), discriminants, Dedekind cycle
//! patterns, symmetric-Galois certificates and complex root isolation.

mod finite_field;
mod galois;
mod intersection;
mod qpoly;
mod roots;
mod sturm;

pub use finite_field::{factor_pattern_mod_p, is_prime, FpPoly};
pub use galois::{
    certify_symmetric_galois, discriminant, resolvent_cubic, GaloisCertificate, GaloisVerdict,
    PatternWitness, ResolventData,
};
pub use intersection::{intersection_counts, IntersectionCounts};
pub use qpoly::QPoly;
pub use roots::{isolate_roots, RootBox, RootSystem};
pub use sturm::{
    check_property_p, sturm_chain, sturm_changes_at, sturm_real_root_count, PropertyPReport,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{qint, IntMatrix};

/// Polynomial with integer coefficients, constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degree of the polynomial; zero polynomial has degree 0 here.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn require_monic(&self) -> Result<()> {
        if self.is_monic() {
            Ok(())
        } else {
            Err(Error::NotMonic)
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(qint).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Companion matrix; its characteristic polynomial is `self`.
    pub fn companion(&self) -> IntMatrix {
        let d = self.degree();
        let mut m = IntMatrix::zeros(d, d);
        for i in 1..d {
            m.set(i, i - 1, BigInt::one());
        }
        for i in 0..d {
            m.set(i, d - 1, -self.coeffs[i].clone());
        }
        m
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            let mono = match (i, a.is_one()) {
                (0, _) => a.to_string(),
                (1, true) => "x".to_string(),
                (1, false) => format!("{a}x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{a}x^{i}"),
            };
            terms.push((sign, mono));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (k, (sign, mono)) in terms.iter().enumerate() {
            if k == 0 {
                if *sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            s.push_str(mono);
        }
        write!(f, "{s}")
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = String;
    fn try_from(v: Vec<String>) -> std::result::Result<Self, String> {
        v.iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|e| format!("bad coefficient {s:?}: {e}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Self::new)
    }
}
