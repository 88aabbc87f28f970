use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{IntPolynomial, QPoly};
use crate::error::{Error, Result};
use crate::linalg::Q;

/// Standard Sturm chain `f, f', -rem(..)`, stopping at the last nonzero term.
pub fn sturm_chain(f: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut prev = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

fn sign_at_infinity(p: &QPoly, positive: bool) -> i32 {
    let lead = if p.leading().is_positive() { 1 } else { -1 };
    let odd = p.degree().unwrap_or(0) % 2 == 1;
    if positive || !odd {
        lead
    } else {
        -lead
    }
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn sturm_real_root_count(f: &IntPolynomial) -> Result<usize> {
    let fq = f.to_qpoly();
    if fq.is_zero() {
        return Err(Error::NotSquarefree(0));
    }
    let g = fq.gcd(&fq.derivative());
    if let Some(d) = g.degree() {
        if d > 0 {
            return Err(Error::NotSquarefree(d));
        }
    }
    let chain = sturm_chain(&fq);
    let minus = sign_changes(chain.iter().map(|p| sign_at_infinity(p, false)));
    let plus = sign_changes(chain.iter().map(|p| sign_at_infinity(p, true)));
    Ok(minus - plus)
}

/// Sign changes of the Sturm chain at a rational point.
pub fn sturm_changes_at(chain: &[QPoly], x: &Q) -> usize {
    sign_changes(chain.iter().map(|p| {
        let v = p.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyPReport {
    pub holds: bool,
    pub degree: usize,
    pub squarefree: bool,
    pub real_roots: Option<usize>,
    pub diagnosis: String,
}

/// Condition (P): monic, even degree, squarefree, no real roots.
pub fn check_property_p(f: &IntPolynomial) -> Result<PropertyPReport> {
    f.require_monic()?;
    let degree = f.degree();
    if degree % 2 == 1 || degree == 0 {
        return Err(Error::OddDegree(degree));
    }
    let report = match sturm_real_root_count(f) {
        Err(Error::NotSquarefree(d)) => PropertyPReport {
            holds: false,
            degree,
            squarefree: false,
            real_roots: None,
            diagnosis: format!("gcd(f, f') has degree {d}"),
        },
        Err(e) => return Err(e),
        Ok(0) => PropertyPReport {
            holds: true,
            degree,
            squarefree: true,
            real_roots: Some(0),
            diagnosis: "squarefree with no real roots".into(),
        },
        Ok(k) => PropertyPReport {
            holds: false,
            degree,
            squarefree: true,
            real_roots: Some(k),
            diagnosis: format!("{k} real roots"),
        },
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    // Count sign changes of f on a fine grid; enough for these small cases.
    fn grid_roots(f: &IntPolynomial) -> usize {
        let c = f.to_f64();
        let ev = |x: f64| c.iter().rev().fold(0.0, |a, &k| a * x + k);
        let mut n = 0;
        let mut prev = ev(-50.0);
        for i in 1..=200_000 {
            let v = ev(-50.0 + (i as f64 + 0.37) * 5e-4);
            if v == 0.0 || v.signum() != prev.signum() {
                n += 1;
            }
            prev = v;
        }
        n
    }

    #[test]
    fn counts_match_grid() {
        for c in [
            vec![1, 0, 1],
            vec![-1, 0, 1],
            vec![1, 1, 0, 0, 1],
            vec![-2, 0, 0, 0, 1],
            vec![1, 0, -5, 0, 1],
            vec![6, -5, -5, 5, 1],
        ] {
            let f = p(&c);
            assert_eq!(sturm_real_root_count(&f).unwrap(), grid_roots(&f), "{f}");
        }
    }

    #[test]
    fn property_p_cases() {
        assert!(check_property_p(&p(&[1, 0, 1])).unwrap().holds);
        assert!(check_property_p(&p(&[1, 1, 0, 0, 1])).unwrap().holds);
        let r = check_property_p(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(r.real_roots, Some(2));
        let r = check_property_p(&p(&[1, 0, 2, 0, 1])).unwrap();
        assert!(!r.squarefree && !r.holds);
        assert!(matches!(
            check_property_p(&p(&[1, 1, 0, 1])),
            Err(Error::OddDegree(3))
        ));
        assert!(matches!(
            check_property_p(&p(&[1, 0, 2])),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn changes_at_point() {
        let f = p(&[-1, 0, 1]).to_qpoly();
        let ch = sturm_chain(&f);
        assert_eq!(
            sturm_changes_at(&ch, &q(-2)) - sturm_changes_at(&ch, &q(0)),
            1
        );
    }
}
