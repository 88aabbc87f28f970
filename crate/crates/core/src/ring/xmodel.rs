//! Ring models of `X` (four subtori of `T × T` blown up, optionally after
//! the points where they meet) and of `X_1` (extra sections of the
//! exceptional divisors blown up).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::algebra::GradedAlgebra;
use super::blowup::{blow_up, BlowupSpec};
use super::models::{exterior_model, point_model};
use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{q, IntMatrix, RationalMatrix};

/// Names of the four subtori, in blow-up order.
pub const SUBTORI: [&str; 4] = ["T×0", "0×T", "diag", "graph"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CenterKind {
    Point { on: Vec<usize> },
    Subtorus { index: usize },
    Section { subtorus: usize, copy: usize },
}

/// One blow-up step: its index range in the final algebra and its data.
#[derive(Clone)]
pub struct Step {
    pub label: String,
    pub kind: CenterKind,
    pub start: usize,
    pub end: usize,
    pub center: Arc<GradedAlgebra>,
    pub restriction: Vec<SparseVec>,
    pub codim: usize,
}

impl Step {
    pub fn zdim(&self) -> usize {
        self.center.dim()
    }

    /// `[E]` of this step.
    pub fn class(&self) -> SparseVec {
        sparse::unit(self.start)
    }

    fn locate(&self, i: usize) -> Option<(usize, usize)> {
        (self.start..self.end).contains(&i).then(|| {
            (
                (i - self.start) % self.zdim(),
                (i - self.start) / self.zdim(),
            )
        })
    }
}

pub struct XModel {
    pub n: usize,
    pub level: u8,
    pub ambient: Arc<GradedAlgebra>,
    pub algebra: Arc<GradedAlgebra>,
    pub steps: Vec<Step>,
    /// Degree-one restriction `H^1(T × T) → H^1(T)` of each subtorus.
    pub h1_restrictions: [RationalMatrix; 4],
    /// Centers of the subtori after the point blow-ups (level 2) or `∧* Q^{2n}`.
    pub subtorus_centers: [Arc<GradedAlgebra>; 4],
    /// Sum of point exceptional classes inside each subtorus center.
    pub subtorus_eps: [SparseVec; 4],
}

impl XModel {
    pub fn subtorus_step(&self, c: usize) -> &Step {
        self.steps
            .iter()
            .find(|s| s.kind == CenterKind::Subtorus { index: c })
            .expect("all four subtori are blown up")
    }

    pub fn point_steps(&self) -> impl Iterator<Item = &Step> {
        self.steps
            .iter()
            .filter(|s| matches!(s.kind, CenterKind::Point { .. }))
    }

    pub fn section_steps(&self, c: usize) -> impl Iterator<Item = &Step> {
        self.steps.iter().filter(
            move |s| matches!(s.kind, CenterKind::Section { subtorus, .. } if subtorus == c),
        )
    }

    /// Exceptional classes of the subtorus and its sections.
    pub fn group_classes(&self, c: usize) -> Vec<(String, SparseVec)> {
        let mut out = vec![(
            self.subtorus_step(c).label.clone(),
            self.subtorus_step(c).class(),
        )];
        out.extend(self.section_steps(c).map(|s| (s.label.clone(), s.class())));
        out
    }
}

/// Image of every exterior basis element under the algebra map sending
/// generator `g` to `gens[g]`.
pub fn extend_from_generators(
    m: usize,
    target: &GradedAlgebra,
    gens: &[SparseVec],
) -> Vec<SparseVec> {
    assert_eq!(gens.len(), m);
    let mut out: Vec<SparseVec> = Vec::with_capacity(1 << m);
    out.push(target.unit());
    for s in 1usize..(1 << m) {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        out.push(target.mul(&gens[low], &out[rest]));
    }
    out
}

fn h1_matrices(phi_star: &IntMatrix) -> [RationalMatrix; 4] {
    let h = phi_star.rows;
    let i = RationalMatrix::identity(h);
    let z = RationalMatrix::zeros(h, h);
    [
        i.hstack(&z),
        z.hstack(&i),
        i.hstack(&i),
        i.hstack(&phi_star.to_rational()),
    ]
}

/// Generator images `e_j ↦ Σ_i R[i][j] f_i` of a degree-one map.
pub(crate) fn gens_from_matrix(r: &RationalMatrix) -> Vec<SparseVec> {
    (0..r.cols())
        .map(|j| {
            let mut v = SparseVec::new();
            for i in 0..r.rows() {
                sparse::add_coeff(&mut v, 1 << i, r[(i, j)].clone());
            }
            v
        })
        .collect()
}

/// Points where the subtori meet: `x_1 = 0` on all four, the other fixed
/// points of `φ` on diag and graph, the other points of `Ker φ` on `T×0`
/// and graph.
pub fn intersection_points(phi: &IntMatrix) -> Result<Vec<Vec<usize>>> {
    let counts = crate::poly::intersection_counts(phi)?;
    let small = |b: &BigInt| b.abs().to_usize().filter(|&v| v <= 256);
    let nn =
        small(&counts.n).ok_or_else(|| Error::NonTransverse("too many fixed points".into()))?;
    let mm =
        small(&counts.m).ok_or_else(|| Error::NonTransverse("too many kernel points".into()))?;
    let mut pts = vec![vec![0, 1, 2, 3]];
    pts.extend((1..nn).map(|_| vec![2, 3]));
    pts.extend((1..mm).map(|_| vec![0, 3]));
    Ok(pts)
}

/// Build the ring model of `X` for `φ` acting on `Z^{2n}`.
pub fn build_x_model(phi: &IntMatrix, level: u8) -> Result<XModel> {
    if phi.rows != phi.cols || phi.rows % 2 == 1 {
        return Err(Error::NotSquare {
            rows: phi.rows,
            cols: phi.cols,
        });
    }
    if !(1..=2).contains(&level) {
        return Err(Error::Config(format!(
            "model level must be 1 or 2, got {level}"
        )));
    }
    let n = phi.rows / 2;
    let h = 2 * n;
    let phi_star = phi.transpose();
    let mats = h1_matrices(&phi_star);
    let ambient = exterior_model(2 * h)?;
    let torus = exterior_model(h)?;
    let pt = point_model();
    let points = if level == 2 {
        intersection_points(phi)?
    } else {
        Vec::new()
    };

    // subtorus centers: blow up the points lying on each of them
    let mut centers: Vec<Arc<GradedAlgebra>> = Vec::new();
    let mut eps: Vec<SparseVec> = Vec::new();
    // for each subtorus, the exceptional class in its center of every point on it
    let mut point_exc: Vec<Vec<Option<SparseVec>>> = Vec::new();
    for c in 0..4 {
        let mut cur = torus.clone();
        let mut classes = vec![None; points.len()];
        for (p, on) in points.iter().enumerate() {
            if !on.contains(&c) {
                continue;
            }
            let restriction = (0..cur.dim())
                .map(|i| {
                    if i == 0 {
                        sparse::unit(0)
                    } else {
                        SparseVec::new()
                    }
                })
                .collect();
            let spec =
                BlowupSpec::trivial_normal(&format!("p{}", p + 1), pt.clone(), restriction, n);
            let (next, _) = blow_up(cur, spec)?;
            classes[p] = Some(next.as_blowup().unwrap().exceptional_class());
            cur = next;
        }
        let mut e = SparseVec::new();
        for cl in classes.iter().flatten() {
            e = sparse::add(&e, cl);
        }
        centers.push(cur);
        eps.push(e);
        point_exc.push(classes);
    }

    let mut steps: Vec<Step> = Vec::new();
    let mut cur = ambient.clone();
    for (p, on) in points.iter().enumerate() {
        let restriction: Vec<SparseVec> = (0..cur.dim())
            .map(|i| {
                if i == 0 {
                    sparse::unit(0)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        let label = format!("p{}", p + 1);
        let spec = BlowupSpec::trivial_normal(&label, pt.clone(), restriction.clone(), 2 * n);
        let start = cur.dim();
        cur = blow_up(cur, spec)?.0;
        steps.push(Step {
            label,
            kind: CenterKind::Point { on: on.clone() },
            start,
            end: cur.dim(),
            center: pt.clone(),
            restriction,
            codim: 2 * n,
        });
    }

    for c in 0..4 {
        let center = centers[c].clone();
        let ext_images = extend_from_generators(2 * h, &center, &gens_from_matrix(&mats[c]));
        let mut restriction = Vec::with_capacity(cur.dim());
        for i in 0..cur.dim() {
            let img = if i < ambient.dim() {
                ext_images[i].clone()
            } else if let Some((p, st)) = steps
                .iter()
                .enumerate()
                .find(|(_, s)| s.locate(i).is_some())
            {
                let (_, k) = st.locate(i).unwrap();
                match (&st.kind, point_exc[c].get(p).cloned().flatten()) {
                    (CenterKind::Point { .. }, Some(e)) => center.pow(&e, k + 1),
                    _ => SparseVec::new(),
                }
            } else {
                SparseVec::new()
            };
            restriction.push(img);
        }
        // N = σ^* N_T ⊗ O(-ε) with N_T trivial: c(N) = (1 - ε)^n
        let minus_eps = sparse::scale(&eps[c], &q(-1));
        let chern = (1..=n)
            .map(|k| {
                let binom = num_integer::binomial(n as i64, k as i64);
                sparse::scale(&center.pow(&minus_eps, k), &q(binom))
            })
            .collect();
        let spec = BlowupSpec {
            label: SUBTORI[c].into(),
            center: center.clone(),
            restriction: restriction.clone(),
            codim: n,
            chern,
        };
        let start = cur.dim();
        cur = blow_up(cur, spec)?.0;
        steps.push(Step {
            label: SUBTORI[c].into(),
            kind: CenterKind::Subtorus { index: c },
            start,
            end: cur.dim(),
            center,
            restriction,
            codim: n,
        });
    }

    Ok(XModel {
        n,
        level,
        ambient,
        algebra: cur,
        steps,
        h1_restrictions: mats,
        subtorus_centers: [0, 1, 2, 3].map(|c| centers[c].clone()),
        subtorus_eps: [0, 1, 2, 3].map(|c| eps[c].clone()),
    })
}

/// `X_1`: inside the exceptional divisor `E_c = T̃_c × P^{n-1}` over each
/// subtorus, blow up `m_c - 1` further sections `T̃_c × {a_j}`.
pub fn build_x1_model(phi: &IntMatrix, level: u8, multiplicities: &[usize; 4]) -> Result<XModel> {
    if multiplicities.contains(&0) {
        return Err(Error::Config("multiplicities must be positive".into()));
    }
    let mut x = build_x_model(phi, level)?;
    let n = x.n;
    let mut cur = x.algebra.clone();
    for c in 0..4 {
        let st = x.subtorus_step(c).clone();
        let center = st.center.clone();
        // ξ restricted to a constant section is c_1(O(-ε))
        let xi = sparse::scale(&x.subtorus_eps[c], &q(-1));
        for j in 1..multiplicities[c] {
            let mut restriction = Vec::with_capacity(cur.dim());
            for i in 0..cur.dim() {
                let img = if i < st.start {
                    st.restriction[i].clone()
                } else if let Some((z, k)) = st.locate(i) {
                    center.mul(&sparse::unit(z), &center.pow(&xi, k + 1))
                } else {
                    SparseVec::new()
                };
                restriction.push(img);
            }
            let mut chern = vec![SparseVec::new(); n];
            chern[0] = xi.clone();
            let label = format!("{}#{}", SUBTORI[c], j);
            let spec = BlowupSpec {
                label: label.clone(),
                center: center.clone(),
                restriction: restriction.clone(),
                codim: n,
                chern,
            };
            let start = cur.dim();
            cur = blow_up(cur, spec)?.0;
            x.steps.push(Step {
                label,
                kind: CenterKind::Section {
                    subtorus: c,
                    copy: j,
                },
                start,
                end: cur.dim(),
                center: center.clone(),
                restriction,
                codim: n,
            });
        }
    }
    x.algebra = cur;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn phi() -> IntMatrix {
        IntPolynomial::from_i64(&[1, 1, 0, 0, 1]).companion()
    }

    #[test]
    fn level_one_betti() {
        let x = build_x_model(&phi(), 1).unwrap();
        assert_eq!(x.algebra.betti_at(1), 8);
        assert_eq!(x.algebra.betti_at(2), 32);
        assert!(x.algebra.pairing_nondegenerate());
    }

    #[test]
    fn level_two_betti() {
        let x = build_x_model(&phi(), 2).unwrap();
        assert_eq!(x.point_steps().count(), 3);
        assert_eq!(x.algebra.betti_at(1), 8);
        assert_eq!(x.algebra.betti_at(2), 35);
        assert!(x.algebra.pairing_nondegenerate());
    }

    #[test]
    fn x1_betti() {
        let x = build_x1_model(&phi(), 1, &[1, 2, 3, 4]).unwrap();
        assert_eq!(x.algebra.betti_at(2), 28 + 10);
    }

    #[test]
    fn level_two_is_a_ring() {
        let x = build_x_model(&phi(), 2).unwrap();
        assert!(x.algebra.commutativity_defects().is_empty());
        assert!(x
            .algebra
            .associativity_defects(x.algebra.top_degree())
            .is_empty());
    }

    #[test]
    fn x1_is_a_ring() {
        let x = build_x1_model(&phi(), 2, &[1, 2, 3, 4]).unwrap();
        assert!(x.algebra.commutativity_defects().is_empty());
        assert!(x
            .algebra
            .associativity_defects(x.algebra.top_degree())
            .is_empty());
    }

    // Level 1 treats the subtori as disjoint although they meet in points;
    // the product is associative only below degree 2n + 2.
    #[test]
    fn level_one_associative_below_2n_plus_2() {
        let x = build_x_model(&phi(), 1).unwrap();
        let n = x.n;
        assert!(x.algebra.commutativity_defects().is_empty());
        assert!(x.algebra.associativity_defects(2 * n + 1).is_empty());
        let bad = x.algebra.associativity_defects(2 * n + 2);
        assert!(!bad.is_empty());
        let (e1, e2) = (x.subtorus_step(0).class(), x.subtorus_step(1).class());
        let alg = &x.algebra;
        assert_ne!(
            alg.mul(&alg.mul(&e1, &e1), &e2),
            alg.mul(&e1, &alg.mul(&e1, &e2))
        );
    }
}
