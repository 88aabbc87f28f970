use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_integer::binomial;

use super::algebra::{exterior_sign, GradedAlgebra};
use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{q, qfrac, Q};

/// `∧* Q^m` with `∫ e_1 ⋯ e_m = 1`.
pub fn exterior_model(m: usize) -> Result<Arc<GradedAlgebra>> {
    Ok(Arc::new(GradedAlgebra::exterior(m, q(1))?))
}

pub fn tensor_model(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> Arc<GradedAlgebra> {
    Arc::new(GradedAlgebra::tensor(a.clone(), b.clone()))
}

/// The one-point algebra `Q` in degree 0.
pub fn point_model() -> Arc<GradedAlgebra> {
    Arc::new(GradedAlgebra::table(
        "pt",
        vec!["1".into()],
        vec![0],
        0,
        HashMap::new(),
        BTreeMap::from([(0, q(1))]),
    ))
}

/// `H*(CP^k)` with hyperplane class `h`, `∫ h^k = 1`.
pub fn projective_space_model(k: usize) -> Arc<GradedAlgebra> {
    let mut products = HashMap::new();
    for a in 1..=k {
        for b in 1..=k {
            if a + b <= k {
                products.insert((a, b), sparse::unit(a + b));
            }
        }
    }
    let labels = (0..=k)
        .map(|i| {
            if i == 0 {
                "1".to_string()
            } else {
                format!("h^{i}")
            }
        })
        .collect();
    Arc::new(GradedAlgebra::table(
        &format!("CP{k}"),
        labels,
        (0..=k).map(|i| 2 * i).collect(),
        2 * k,
        products,
        BTreeMap::from([(k, q(1))]),
    ))
}

fn even_masks(m: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..1usize << m)
        .filter(|s| s.count_ones() % 2 == 0)
        .collect();
    v.sort_by_key(|s| (s.count_ones(), *s));
    v
}

fn mask_label(s: usize, m: usize) -> String {
    if s == 0 {
        return "1".into();
    }
    (0..m)
        .filter(|b| s >> b & 1 == 1)
        .map(|b| format!("e{}", b + 1))
        .collect()
}

/// Structure constants of the even part of `∧* Q^m`; `pos` maps mask to index.
fn even_part_tables(
    masks: &[usize],
    pos: &HashMap<usize, usize>,
) -> HashMap<(usize, usize), SparseVec> {
    let mut products = HashMap::new();
    for (i, &s) in masks.iter().enumerate() {
        for (j, &t) in masks.iter().enumerate() {
            if i == 0 || j == 0 || s & t != 0 {
                continue;
            }
            products.insert(
                (i, j),
                sparse::scaled_unit(pos[&(s | t)], q(exterior_sign(s, t))),
            );
        }
    }
    products
}

/// Invariants of `-1` acting on `∧* Q^m`: the even-degree part, with the
/// integral scaled by `scale`.
pub fn invariant_even_part_scaled(m: usize, scale: Q) -> Result<Arc<GradedAlgebra>> {
    if m > 16 || m % 2 == 1 {
        return Err(Error::RankTooLarge(m));
    }
    let masks = even_masks(m);
    let pos: HashMap<usize, usize> = masks.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let products = even_part_tables(&masks, &pos);
    let full = (1usize << m) - 1;
    Ok(Arc::new(GradedAlgebra::table(
        &format!("ext{m}^+"),
        masks.iter().map(|&s| mask_label(s, m)).collect(),
        masks.iter().map(|s| s.count_ones() as usize).collect(),
        m,
        products,
        BTreeMap::from([(pos[&full], scale)]),
    )))
}

pub fn invariant_even_part(m: usize) -> Result<Arc<GradedAlgebra>> {
    invariant_even_part_scaled(m, q(1))
}

/// Basis layout of the Kummer model.
#[derive(Clone, Debug)]
pub struct KummerLayout {
    pub n: usize,
    /// Exterior masks of the invariant part, in index order.
    pub masks: Vec<usize>,
    /// Points of order two, as bitmasks in `(Z/2)^{2n}`.
    pub points: usize,
}

impl KummerLayout {
    pub fn invariant_count(&self) -> usize {
        self.masks.len()
    }

    pub fn mask_index(&self, s: usize) -> usize {
        self.masks.iter().position(|&t| t == s).expect("even mask")
    }

    /// Index of `e_x^k`, `1 ≤ k ≤ n-1`.
    pub fn exc_index(&self, x: usize, k: usize) -> usize {
        self.invariant_count() + x * (self.n - 1) + (k - 1)
    }

    /// Class of a point, `2 e_{1..2n}` (the torus integral is halved).
    pub fn point_class(&self) -> SparseVec {
        let full = (1usize << (2 * self.n)) - 1;
        sparse::scaled_unit(self.mask_index(full), q(2))
    }
}

/// `H*(K)` for the Kummer `K = Bl_{T[2]}(T) / ±1` of an `n`-dimensional torus.
///
/// Invariant part: even part of `∧* Q^{2n}` with `∫ e_{1..2n} = 1/2`.
/// Each of the `2^{2n}` points contributes `e_x, …, e_x^{n-1}`; the
/// exceptional divisor is `P^{n-1}` with normal bundle `O(-2)`, so
/// `e_x^n = (-2)^{n-1} [pt]`.
pub fn kummer_model(n: usize) -> Result<(Arc<GradedAlgebra>, KummerLayout)> {
    if n < 2 {
        return Err(Error::Config(format!("Kummer model needs n >= 2, got {n}")));
    }
    let m = 2 * n;
    if m > 12 {
        return Err(Error::RankTooLarge(m));
    }
    let masks = even_masks(m);
    let pos: HashMap<usize, usize> = masks.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut products = even_part_tables(&masks, &pos);
    let layout = KummerLayout {
        n,
        masks: masks.clone(),
        points: 1 << m,
    };
    let mut labels: Vec<String> = masks.iter().map(|&s| mask_label(s, m)).collect();
    let mut degrees: Vec<usize> = masks.iter().map(|s| s.count_ones() as usize).collect();
    for x in 0..layout.points {
        for k in 1..n {
            labels.push(if k == 1 {
                format!("E{x}")
            } else {
                format!("E{x}^{k}")
            });
            degrees.push(2 * k);
        }
    }
    let top_value = {
        let mut v = layout.point_class();
        let c = q(-2).pow((n - 1) as i32);
        v.values_mut().for_each(|x| *x *= &c);
        v
    };
    for x in 0..layout.points {
        for a in 1..n {
            for b in 1..n {
                let key = (layout.exc_index(x, a), layout.exc_index(x, b));
                if a + b < n {
                    products.insert(key, sparse::unit(layout.exc_index(x, a + b)));
                } else if a + b == n {
                    products.insert(key, top_value.clone());
                }
            }
        }
    }
    let full = (1usize << m) - 1;
    let alg = GradedAlgebra::table(
        &format!("Kummer{n}"),
        labels,
        degrees,
        m,
        products,
        BTreeMap::from([(pos[&full], qfrac(1, 2))]),
    );
    Ok((Arc::new(alg), layout))
}

/// Chern classes of the tangent bundle of the Kummer model.
///
/// The invariant part contributes nothing (the torus is parallelizable);
/// near each exceptional `P^{n-1}` with normal bundle `O(-2)` one gets
/// `c_i = a_i Σ_x e_x^i` with `a_i = (C(n,i) - 2 C(n,i-1)) / (-2)^i`.
pub fn kummer_chern_classes(layout: &KummerLayout) -> Vec<SparseVec> {
    let n = layout.n;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let num = binomial(n as i64, i as i64) - 2 * binomial(n as i64, (i - 1) as i64);
        let a = q(num) / q(-2).pow(i as i32);
        let mut c = SparseVec::new();
        if i < n {
            for x in 0..layout.points {
                sparse::add_coeff(&mut c, layout.exc_index(x, i), a.clone());
            }
        } else {
            // e_x^n = (-2)^{n-1} [pt]
            let total = &a * q(layout.points as i64) * q(-2).pow((n - 1) as i32);
            sparse::axpy(&mut c, &total, &layout.point_class());
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_small() {
        let e = exterior_model(2).unwrap();
        assert_eq!(e.betti(), vec![1, 2, 1]);
        assert_eq!(e.mul_basis(1, 2), sparse::unit(3));
        assert_eq!(e.mul_basis(2, 1), sparse::scaled_unit(3, q(-1)));
        let e8 = exterior_model(8).unwrap();
        assert_eq!(e8.dim(), 256);
        assert_eq!(e8.betti_at(4), 70);
        assert_eq!(e8.integral_basis(255), q(1));
        assert!(matches!(exterior_model(17), Err(Error::RankTooLarge(17))));
    }

    #[test]
    fn even_part_dims() {
        let a = invariant_even_part(6).unwrap();
        assert_eq!(a.betti(), vec![1, 0, 15, 0, 15, 0, 1]);
        assert!(a.pairing_nondegenerate());
    }

    #[test]
    fn kummer_betti_and_euler() {
        let (k, layout) = kummer_model(3).unwrap();
        assert_eq!(k.dim(), 160);
        assert_eq!(k.betti_at(2), 79);
        assert_eq!(k.betti_at(1), 0);
        assert!(k.pairing_nondegenerate());
        let c = kummer_chern_classes(&layout);
        assert_eq!(k.integrate(&c[2]), q(160));
    }
}
