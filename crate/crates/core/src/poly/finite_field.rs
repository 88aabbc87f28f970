use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::IntPolynomial;
use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomial over F_p, constant term first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    pub fn reduce(f: &IntPolynomial, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|a| a.mod_floor(&pb).to_u64().unwrap())
            .collect();
        Self::new(p, c)
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat
        let mut r = 1u64;
        let mut b = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, b);
            }
            b = self.mulm(b, b);
            e >>= 1;
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mulm(a, b)) % self.p;
            }
        }
        Self::new(self.p, c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.degree();
        let li = self.inv(*d.c.last().unwrap());
        let mut q = vec![0u64; self.c.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let t = self.mulm(*r.last().unwrap(), li);
            q[k] = t;
            for (j, &b) in d.c.iter().enumerate() {
                let s = self.mulm(t, b);
                r[k + j] = (r[k + j] + self.p - s) % self.p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Self::new(self.p, q), Self::new(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.inv(*self.c.last().unwrap());
        Self::new(self.p, self.c.iter().map(|&a| self.mulm(a, li)).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut r = Self::new(self.p, vec![1]).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        r
    }
}

/// Degrees of the irreducible factors of `f mod p`, sorted descending.
///
/// Requires `p` prime and `p` not dividing the discriminant, so the
/// reduction is squarefree and the pattern is a Frobenius cycle type.
pub fn factor_pattern_mod_p(f: &IntPolynomial, p: u64) -> Result<Vec<usize>> {
    f.require_monic()?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let disc = super::discriminant(f);
    if (disc % BigInt::from(p)).is_zero() {
        return Err(Error::PrimeDividesDiscriminant { p });
    }
    Ok(ddf_pattern(&FpPoly::reduce(f, p)))
}

// Distinct-degree factorization of a squarefree monic polynomial.
pub(crate) fn ddf_pattern(f: &FpPoly) -> Vec<usize> {
    let p = f.p;
    let mut rest = f.clone();
    let mut h = FpPoly::x(p);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree() >= 2 * d {
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&h.sub(&FpPoly::x(p)));
        if g.degree() > 0 {
            for _ in 0..g.degree() / d {
                out.push(d);
            }
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.degree() > 0 {
        out.push(rest.degree());
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    // Brute force over F_2: is a polynomial (bitmask, bit i = x^i) irreducible?
    fn f2_irreducible(f: u32) -> bool {
        let deg = 31 - f.leading_zeros();
        (2u32..(1 << (deg / 2 + 1))).all(|g| {
            let gd = 31 - g.leading_zeros();
            if gd == 0 || gd > deg / 2 {
                return true;
            }
            let mut r = f;
            while r != 0 && 31 - r.leading_zeros() >= gd {
                r ^= g << (31 - r.leading_zeros() - gd);
            }
            r != 0
        })
    }

    #[test]
    fn known_patterns() {
        assert_eq!(
            factor_pattern_mod_p(&p(&[1, 1, 0, 0, 1]), 2).unwrap(),
            vec![4]
        );
        assert!(matches!(
            factor_pattern_mod_p(&p(&[1, 0, 0, 0, 1]), 2),
            Err(Error::PrimeDividesDiscriminant { p: 2 })
        ));
        assert_eq!(factor_pattern_mod_p(&p(&[1, 0, 1]), 5).unwrap(), vec![1, 1]);
        assert_eq!(factor_pattern_mod_p(&p(&[1, 0, 1]), 3).unwrap(), vec![2]);
        assert!(matches!(
            factor_pattern_mod_p(&p(&[1, 0, 1]), 4),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn f2_irreducibility_agrees_with_brute_force() {
        for mask in 0u32..(1 << 6) {
            let f = mask | (1 << 6) | 1;
            let fp = FpPoly::new(2, (0..7).map(|i| ((f >> i) & 1) as u64).collect());
            let sqfree = fp
                .gcd(&FpPoly::new(
                    2,
                    vec![
                        (f >> 1 & 1) as u64,
                        0,
                        (f >> 3 & 1) as u64,
                        0,
                        (f >> 5 & 1) as u64,
                    ],
                ))
                .degree()
                == 0;
            if !sqfree {
                continue;
            }
            let pat = ddf_pattern(&fp);
            assert_eq!(pat.iter().sum::<usize>(), 6);
            assert_eq!(pat == vec![6], f2_irreducible(f), "mask {f:b}");
        }
    }
}
