//! Exact linear algebra over the rationals and the integers.
//!
//! Everything here is exact: rationals are arbitrary precision, integer
//! lattices are kept in Hermite normal form and subspaces in reduced row
//! echelon form, so equality of subspaces and lattices is structural.

mod lattice;
mod matrix;
mod similarity;
mod subspace;

pub use lattice::{smith_normal_form, IntegerLattice, SmithForm};
pub use matrix::{IntMatrix, RationalMatrix};
pub use similarity::{invariant_factors, rational_canonical_form, similar, Similarity};
pub use subspace::Subspace;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qint(n: &BigInt) -> Q {
    BigRational::from_integer(n.clone())
}

/// Returns the integer value when `x` has denominator one.
pub fn as_integer(x: &Q) -> Option<BigInt> {
    if x.denom().is_one() {
        Some(x.numer().clone())
    } else {
        None
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().ok()?;
        let d: BigInt = b.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

/// Least common multiple of the denominators, used to clear a rational vector.
pub fn clear_denominators(v: &[Q]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * qint(&l)).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &out {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut out {
            *x /= &g;
        }
    }
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -x.clone();
            }
        }
    }
    out
}
