use num_complex::Complex64;
use serde::Serialize;

use super::{check_property_p, IntPolynomial};
use crate::error::{Error, Result};

/// Disc in C that provably contains exactly one root.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RootBox {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl RootBox {
    pub fn center(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Roots of a polynomial satisfying (P), labelled so that labels `0..n`
/// have positive imaginary part (sorted by argument) and label `n + i` is
/// the conjugate of label `i`.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    pub half_degree: usize,
    pub roots: Vec<RootBox>,
    /// For each conjugate pair `i`, the label of the selected root.
    pub selection: Vec<usize>,
}

impl RootSystem {
    pub fn conjugate(&self, label: usize) -> usize {
        let n = self.half_degree;
        if label < n {
            label + n
        } else {
            label - n
        }
    }

    pub fn is_selected(&self, label: usize) -> bool {
        self.selection.contains(&label)
    }

    pub fn value(&self, label: usize) -> Complex64 {
        self.roots[label].center()
    }

    /// Flip the choice inside the given pairs.
    pub fn flip(&mut self, flips: &[bool]) -> Result<()> {
        if flips.len() != self.half_degree {
            return Err(Error::DimensionMismatch(format!(
                "selection flip has {} entries, expected {}",
                flips.len(),
                self.half_degree
            )));
        }
        for (i, &fl) in flips.iter().enumerate() {
            if fl {
                self.selection[i] = self.conjugate(self.selection[i]);
            }
        }
        Ok(())
    }
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let az = z.norm();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        bound = bound * az + a.abs();
    }
    (p, dp, bound)
}

/// Simultaneous Aberth iteration; numerics only, no guarantees.
pub(crate) fn aberth_roots(c: &[f64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let lead = c[d];
    let r = 1.0 + c[..d].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp, _) = horner(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-16 {
            break;
        }
    }
    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = horner(c, *zi);
            if dp.norm() > 0.0 {
                *zi -= p / dp;
            }
        }
    }
    z
}

/// Isolate the complex roots of `f` (which must satisfy (P)).
///
/// Each radius is `deg * |f(z)| / |f'(z)|` with `|f(z)|` inflated by a
/// rounding bound, which contains a root. Discs are checked to be disjoint
/// and off the real axis, so each holds exactly one root.
pub fn isolate_roots(f: &IntPolynomial) -> Result<RootSystem> {
    let rep = check_property_p(f)?;
    if !rep.holds {
        return Err(Error::PropertyP(rep.diagnosis));
    }
    let c = f.to_f64();
    let d = f.degree();
    let n = d / 2;
    let zs = aberth_roots(&c);
    let eps = 8.0 * (d as f64 + 2.0) * f64::EPSILON;
    let mut boxes: Vec<RootBox> = zs
        .iter()
        .map(|&z| {
            let (p, dp, bound) = horner(&c, z);
            let radius = d as f64 * (p.norm() + eps * bound) / dp.norm();
            RootBox {
                re: z.re,
                im: z.im,
                radius,
            }
        })
        .collect();
    for b in &boxes {
        if !(b.radius.is_finite() && b.radius < b.im.abs()) {
            return Err(Error::RootIsolation(format!(
                "disc around {}+{}i meets the real axis",
                b.re, b.im
            )));
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            let dist = (boxes[i].center() - boxes[j].center()).norm();
            if dist <= boxes[i].radius + boxes[j].radius {
                return Err(Error::RootIsolation("discs overlap".into()));
            }
        }
    }
    let mut upper: Vec<RootBox> = boxes.iter().copied().filter(|b| b.im > 0.0).collect();
    if upper.len() != n {
        return Err(Error::RootIsolation(format!(
            "{} roots in the upper half plane, expected {n}",
            upper.len()
        )));
    }
    upper.sort_by(|a, b| a.center().arg().total_cmp(&b.center().arg()));
    let mut lower = Vec::with_capacity(n);
    for u in &upper {
        let target = u.center().conj();
        let k = boxes
            .iter()
            .enumerate()
            .filter(|(_, b)| b.im < 0.0)
            .min_by(|(_, a), (_, b)| {
                (a.center() - target)
                    .norm()
                    .total_cmp(&(b.center() - target).norm())
            })
            .map(|(k, _)| k)
            .unwrap();
        let b = boxes.remove(k);
        if (b.center() - target).norm() > b.radius + u.radius {
            return Err(Error::RootIsolation("conjugate pairing failed".into()));
        }
        lower.push(b);
    }
    upper.extend(lower);
    Ok(RootSystem {
        half_degree: n,
        roots: upper,
        selection: (0..n).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x4_plus_1() {
        let rs = isolate_roots(&IntPolynomial::from_i64(&[1, 0, 0, 0, 1])).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((rs.value(0) - Complex64::new(s, s)).norm() < 1e-12);
        assert!((rs.value(1) - Complex64::new(-s, s)).norm() < 1e-12);
        assert!((rs.value(2) - Complex64::new(s, -s)).norm() < 1e-12);
        assert_eq!(rs.selection, vec![0, 1]);
    }

    #[test]
    fn residuals_small_and_selection_flip() {
        let f = IntPolynomial::from_i64(&[1, 1, 0, 0, 0, 0, 1]);
        let mut rs = isolate_roots(&f).unwrap();
        let c = f.to_f64();
        for b in &rs.roots {
            assert!(horner(&c, b.center()).0.norm() < 1e-12);
            assert!(b.radius < 1e-10);
        }
        rs.flip(&[false, true, false]).unwrap();
        assert_eq!(rs.selection, vec![0, 4, 2]);
    }

    #[test]
    fn real_roots_rejected() {
        let f = IntPolynomial::from_i64(&[-1, 0, 1]);
        assert!(matches!(isolate_roots(&f), Err(Error::PropertyP(_))));
    }
}
