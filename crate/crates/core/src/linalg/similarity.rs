use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{RationalMatrix, Q};
use crate::error::{Error, Result};
use crate::poly::QPoly;

/// Outcome of a similarity test over Q.
#[derive(Clone, Debug)]
pub struct Similarity {
    pub similar: bool,
    /// `g` with `g M g^{-1} = N` when similar.
    pub witness: Option<RationalMatrix>,
}

/// Monic invariant factors of `xI - M` (constant factors dropped), each
/// dividing the next.
pub fn invariant_factors(m: &RationalMatrix) -> Result<Vec<QPoly>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a: Vec<Vec<QPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = QPoly::constant(-m[(i, j)].clone());
                    if i == j {
                        c.add(&QPoly::x())
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();

    let deg = |p: &QPoly| p.degree().unwrap_or(usize::MAX);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| deg(&a[i][j]) < deg(&a[bi][bj]))
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let piv = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let (qt, _) = a[i][t].div_rem(&piv);
                let src = a[t].clone();
                for (x, s) in a[i].iter_mut().zip(&src) {
                    *x = x.sub(&qt.mul(s));
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (qt, _) = a[t][j].div_rem(&piv);
                for row in a.iter_mut() {
                    let s = row[t].clone();
                    row[j] = row[j].sub(&qt.mul(&s));
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..n).find(|&i| (t + 1..n).any(|j| !a[i][j].rem(&piv).is_zero()));
            if let Some(i) = offending {
                let src = a[i].clone();
                for (x, s) in a[t].iter_mut().zip(&src) {
                    *x = x.add(s);
                }
                continue;
            }
            break;
        }
    }
    Ok((0..n)
        .map(|i| a[i][i].monic())
        .filter(|p| p.degree().is_some_and(|d| d > 0))
        .collect())
}

fn companion_q(p: &QPoly) -> RationalMatrix {
    let d = p.degree().unwrap();
    let mut m = RationalMatrix::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Q::one();
    }
    for i in 0..d {
        m[(i, d - 1)] = -p.coeff(i);
    }
    m
}

/// Frobenius normal form: block diagonal of companion matrices of the
/// invariant factors.
pub fn rational_canonical_form(m: &RationalMatrix) -> Result<RationalMatrix> {
    let factors = invariant_factors(m)?;
    let n = m.rows();
    let mut out = RationalMatrix::zeros(n, n);
    let mut off = 0;
    for f in &factors {
        let c = companion_q(f);
        for i in 0..c.rows() {
            for j in 0..c.cols() {
                out[(off + i, off + j)] = c[(i, j)].clone();
            }
        }
        off += c.rows();
    }
    Ok(out)
}

/// Decides similarity over Q by comparing invariant factors; when similar,
/// finds an invertible `g` with `g M = N g`.
pub fn similar(m: &RationalMatrix, n: &RationalMatrix) -> Result<Similarity> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !n.is_square() {
        return Err(Error::NotSquare {
            rows: n.rows(),
            cols: n.cols(),
        });
    }
    if m.rows() != n.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            m.rows(),
            m.cols(),
            n.rows(),
            n.cols()
        )));
    }
    if invariant_factors(m)? != invariant_factors(n)? {
        return Ok(Similarity {
            similar: false,
            witness: None,
        });
    }
    let d = m.rows();
    // X M - N X = 0, unknown X[i][j] at index i*d + j
    let mut sys = RationalMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let row = i * d + j;
            for k in 0..d {
                sys[(row, i * d + k)] += &m[(k, j)];
                sys[(row, k * d + j)] -= &n[(i, k)];
            }
        }
    }
    let ker = sys.kernel_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..64 {
        let mut x = vec![Q::zero(); d * d];
        for (idx, b) in ker.basis().iter().enumerate() {
            let c: i64 = if attempt == 0 {
                (idx as i64 % 3) + 1
            } else {
                rng.gen_range(-5..=5)
            };
            if c == 0 {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += bi * Q::from_integer(c.into());
            }
        }
        let g = RationalMatrix::from_fn(d, d, |i, j| x[i * d + j].clone());
        if !g.det()?.is_zero() {
            return Ok(Similarity {
                similar: true,
                witness: Some(g),
            });
        }
    }
    // Equal invariant factors guarantee an invertible solution exists; a
    // run of singular random draws is astronomically unlikely.
    Err(Error::Singular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn transpose_is_similar() {
        let m = RationalMatrix::from_i64(&[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]]);
        let s = similar(&m, &m.transpose()).unwrap();
        assert!(s.similar);
        let g = s.witness.unwrap();
        assert_eq!(g.mul(&m).unwrap(), m.transpose().mul(&g).unwrap());
    }

    #[test]
    fn identity_vs_unipotent() {
        let i = RationalMatrix::identity(2);
        let u = RationalMatrix::from_i64(&[vec![1, 1], vec![0, 1]]);
        assert!(!similar(&i, &u).unwrap().similar);
        let f = invariant_factors(&u).unwrap();
        assert_eq!(f, vec![QPoly::linear(q(1)).pow(2)]);
        let f = invariant_factors(&i).unwrap();
        assert_eq!(f, vec![QPoly::linear(q(1)), QPoly::linear(q(1))]);
    }

    #[test]
    fn non_square_rejected() {
        let m = RationalMatrix::zeros(2, 3);
        assert!(matches!(similar(&m, &m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn rcf_of_companion_is_itself() {
        let c = RationalMatrix::from_i64(&[
            vec![0, 0, 0, -1],
            vec![1, 0, 0, -1],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
        ]);
        assert_eq!(rational_canonical_form(&c).unwrap(), c);
    }
}
