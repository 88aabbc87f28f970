use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::finite_field::{ddf_pattern, is_prime, FpPoly};
use super::IntPolynomial;
use crate::error::{Error, Result};
use crate::linalg::{as_integer, qint, RationalMatrix};

/// Resultant via the Sylvester determinant.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let (m, n) = (f.degree(), g.degree());
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            rows[i][i + j] = f.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            rows[n + i][i + j] = g.coeff(n - j);
        }
    }
    let q = RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(qint).collect()).collect());
    as_integer(&q.det().expect("square")).expect("integral determinant")
}

/// Discriminant of a polynomial with integer coefficients.
pub fn discriminant(f: &IntPolynomial) -> BigInt {
    let d = f.degree();
    let r = resultant(f, &f.derivative());
    let lead = f.coeff(d);
    let sign = if (d * (d.saturating_sub(1)) / 2) % 2 == 1 {
        -1
    } else {
        1
    };
    BigInt::from(sign) * r / lead
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Resolvent cubic of a monic quartic `x^4 + a x^3 + b x^2 + c x + d`.
pub fn resolvent_cubic(f: &IntPolynomial) -> Result<IntPolynomial> {
    if f.degree() != 4 {
        return Err(Error::WrongDegree {
            expected: 4,
            got: f.degree(),
        });
    }
    f.require_monic()?;
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let c0 = -(&a * &a * &d - BigInt::from(4) * &b * &d + &c * &c);
    let c1 = &a * &c - BigInt::from(4) * &d;
    Ok(IntPolynomial::new(vec![c0, c1, -b, BigInt::one()]))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

/// Integer roots of a monic integer polynomial (rational roots theorem).
pub fn integer_roots(f: &IntPolynomial) -> Vec<BigInt> {
    if f.coeff(0).is_zero() {
        let shifted = IntPolynomial::new(f.coeffs()[1..].to_vec());
        let mut r = integer_roots(&shifted);
        if !r.contains(&BigInt::zero()) {
            r.push(BigInt::zero());
        }
        r.sort();
        return r;
    }
    let mut out = Vec::new();
    for d in divisors(&f.coeff(0)) {
        for r in [d.clone(), -d] {
            if f.eval(&r).is_zero() {
                out.push(r);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub prime: u64,
    pub pattern: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolventData {
    pub cubic: IntPolynomial,
    #[serde(serialize_with = "crate::ser::display_vec")]
    pub rational_roots: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GaloisVerdict {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisCertificate {
    pub degree: usize,
    pub verdict: GaloisVerdict,
    pub reason: String,
    #[serde(serialize_with = "crate::ser::display")]
    pub discriminant: BigInt,
    pub discriminant_is_square: bool,
    pub prime_bound: u64,
    pub irreducible_witness: Option<PatternWitness>,
    pub transposition_witness: Option<PatternWitness>,
    pub long_cycle_witness: Option<PatternWitness>,
    #[serde(serialize_with = "crate::ser::display_vec")]
    pub rational_roots: Vec<BigInt>,
    pub resolvent: Option<ResolventData>,
}

fn is_transposition_type(pat: &[usize]) -> bool {
    pat.iter().filter(|&&k| k == 2).count() == 1 && pat.iter().all(|&k| k == 2 || k % 2 == 1)
}

fn long_prime_part(pat: &[usize], m: usize) -> bool {
    pat.iter().any(|&k| 2 * k > m && is_prime(k as u64))
}

/// Try to certify `Gal(f/Q) = S_m` using Frobenius cycle types for primes
/// up to `prime_bound`, plus exact resolvent data in degree 4.
///
/// Refutations are exact (square discriminant, a rational root, or a
/// reducible resolvent next to a proof of irreducibility); a certificate
/// found for some bound stays valid for every larger one.
pub fn certify_symmetric_galois(f: &IntPolynomial, prime_bound: u64) -> Result<GaloisCertificate> {
    f.require_monic()?;
    let m = f.degree();
    let disc = discriminant(f);
    if disc.is_zero() {
        return Err(Error::NotSquarefree(m));
    }
    let disc_sq = is_square(&disc);
    let mut cert = GaloisCertificate {
        degree: m,
        verdict: GaloisVerdict::Inconclusive,
        reason: String::new(),
        discriminant: disc.clone(),
        discriminant_is_square: disc_sq,
        prime_bound,
        irreducible_witness: None,
        transposition_witness: None,
        long_cycle_witness: None,
        rational_roots: if m >= 2 { integer_roots(f) } else { vec![] },
        resolvent: None,
    };
    if m < 2 {
        cert.verdict = GaloisVerdict::Certified;
        cert.reason = "degree below 2".into();
        return Ok(cert);
    }
    if !cert.rational_roots.is_empty() {
        cert.verdict = GaloisVerdict::Refuted;
        cert.reason = "f has a rational root".into();
        return Ok(cert);
    }
    if m == 2 {
        // no rational root means irreducible, and S_2 is then the whole group
        cert.verdict = GaloisVerdict::Certified;
        cert.reason = "irreducible quadratic".into();
        return Ok(cert);
    }
    if disc_sq {
        cert.verdict = GaloisVerdict::Refuted;
        cert.reason = "discriminant is a square, group lies in A_m".into();
        return Ok(cert);
    }

    let want_jordan = m != 3;
    for p in 2..=prime_bound {
        if !is_prime(p) || (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let pat = ddf_pattern(&FpPoly::reduce(f, p));
        let w = || PatternWitness {
            prime: p,
            pattern: pat.clone(),
        };
        if cert.irreducible_witness.is_none() && pat == [m] {
            cert.irreducible_witness = Some(w());
        }
        if cert.transposition_witness.is_none() && is_transposition_type(&pat) {
            cert.transposition_witness = Some(w());
        }
        if cert.long_cycle_witness.is_none() && long_prime_part(&pat, m) {
            cert.long_cycle_witness = Some(w());
        }
        let jordan_done = cert.transposition_witness.is_some() && cert.long_cycle_witness.is_some();
        if cert.irreducible_witness.is_some() && (!want_jordan || jordan_done || m == 4) {
            break;
        }
    }

    let irreducible = cert.irreducible_witness.is_some();
    if m == 3 {
        if irreducible {
            cert.verdict = GaloisVerdict::Certified;
            cert.reason = "irreducible cubic with non-square discriminant".into();
        }
    } else if m == 4 && irreducible {
        let cubic = resolvent_cubic(f)?;
        let roots = integer_roots(&cubic);
        let reducible = !roots.is_empty();
        cert.resolvent = Some(ResolventData {
            cubic,
            rational_roots: roots,
        });
        if reducible {
            cert.verdict = GaloisVerdict::Refuted;
            cert.reason = "resolvent cubic has a rational root, group lies in D_4".into();
        } else {
            cert.verdict = GaloisVerdict::Certified;
            cert.reason =
                "irreducible quartic, irreducible resolvent, non-square discriminant".into();
        }
    } else if irreducible
        && cert.transposition_witness.is_some()
        && cert.long_cycle_witness.is_some()
    {
        cert.verdict = GaloisVerdict::Certified;
        cert.reason = "transitive with a transposition and a prime cycle longer than m/2".into();
    }
    if cert.verdict == GaloisVerdict::Inconclusive {
        cert.reason = format!("no complete certificate for primes up to {prime_bound}");
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    // Product of squared root differences from numerically found roots.
    fn numeric_disc(f: &IntPolynomial) -> f64 {
        let rs = super::super::roots::aberth_roots(&f.to_f64());
        let mut d = num_complex::Complex64::new(1.0, 0.0);
        for i in 0..rs.len() {
            for j in i + 1..rs.len() {
                d *= (rs[i] - rs[j]) * (rs[i] - rs[j]);
            }
        }
        d.re
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p(&[1, 0, 1])), BigInt::from(-4));
        assert_eq!(discriminant(&p(&[1, 1, 0, 0, 1])), BigInt::from(229));
        assert_eq!(discriminant(&p(&[1, 0, 0, 0, 1])), BigInt::from(256));
        for c in [
            vec![3, 1, 2, 0, 1],
            vec![1, 1, 0, 0, 0, 0, 1],
            vec![5, 0, 3, 1, 1],
        ] {
            let f = p(&c);
            let exact: f64 = discriminant(&f).to_string().parse().unwrap();
            let num = numeric_disc(&f);
            assert!(
                (exact - num).abs() < 1e-6 * exact.abs().max(1.0),
                "{f}: {exact} vs {num}"
            );
        }
    }

    #[test]
    fn resolvent_formula() {
        // x^4 + 1: resolvent y^3 - 4y = y(y-2)(y+2)
        let r = resolvent_cubic(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(r, p(&[0, -4, 0, 1]));
    }

    #[test]
    fn certificates() {
        let c = certify_symmetric_galois(&p(&[1, 1, 0, 0, 1]), 1000).unwrap();
        assert_eq!(c.verdict, GaloisVerdict::Certified);
        let c = certify_symmetric_galois(&p(&[1, 0, 0, 0, 1]), 1000).unwrap();
        assert_eq!(c.verdict, GaloisVerdict::Refuted);
        let c = certify_symmetric_galois(&p(&[1, 1, 0, 0, 0, 0, 1]), 1000).unwrap();
        assert_eq!(c.verdict, GaloisVerdict::Certified, "{}", c.reason);
        let c = certify_symmetric_galois(&p(&[1, 1, 0, 0, 0, 0, 1]), 2).unwrap();
        assert_eq!(c.verdict, GaloisVerdict::Inconclusive);
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2), resolvent y^3 - 16y reducible
        let c = certify_symmetric_galois(&p(&[4, 0, 0, 0, 1]), 1000).unwrap();
        assert_ne!(c.verdict, GaloisVerdict::Certified);
    }
}
