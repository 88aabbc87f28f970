//! `X_2`: blow up the diagonal of `K × K`, then the proper transform of the
//! graph of `φ_K`, for the Kummer `K` of `T = C^n / Λ`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::algebra::GradedAlgebra;
use super::blowup::{blow_up, BlowupSpec};
use super::models::{
    exterior_model, kummer_chern_classes, kummer_model, point_model, tensor_model, KummerLayout,
};
use super::morphism::AlgebraMorphism;
use super::sparse::{self, SparseVec};
use super::xmodel::{extend_from_generators, gens_from_matrix};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RationalMatrix, Q};

pub struct KummerPair {
    pub n: usize,
    pub phi: IntMatrix,
    pub kummer: Arc<GradedAlgebra>,
    pub layout: KummerLayout,
    pub product: Arc<GradedAlgebra>,
    /// `φ_K^*` on the basis of `H^*(K)`.
    pub phi_k: AlgebraMorphism,
    /// `Bl_F(K)`, the proper transform of the graph.
    pub graph_center: Arc<GradedAlgebra>,
    pub fixed_points: usize,
    pub lefschetz: BigInt,
    pub algebra: Arc<GradedAlgebra>,
    /// First index of the exceptional classes over the diagonal and the graph.
    pub diag_start: usize,
    pub graph_start: usize,
}

impl KummerPair {
    pub fn diag_class(&self) -> SparseVec {
        sparse::unit(self.diag_start)
    }

    pub fn graph_class(&self) -> SparseVec {
        sparse::unit(self.graph_start)
    }

    /// Indices in `K` of the invariant classes `e_S` with `|S| = 2`.
    pub fn wedge2_indices(&self) -> Vec<usize> {
        (0..self.layout.invariant_count())
            .filter(|&i| self.layout.masks[i].count_ones() == 2)
            .collect()
    }

    /// `A^2 = τ^*(∧^2 ⊗ 1) ⊕ τ^*(1 ⊗ ∧^2)`, first block first.
    pub fn a2_basis(&self) -> Vec<SparseVec> {
        let w = self.wedge2_indices();
        let mut out: Vec<SparseVec> = w
            .iter()
            .map(|&i| self.pullback(1, &sparse::unit(i)))
            .collect();
        out.extend(w.iter().map(|&i| self.pullback(2, &sparse::unit(i))));
        out
    }

    /// Exceptional divisor classes of `X_2` over `(T/±1)^2`.
    pub fn exceptional_classes(&self) -> Vec<(String, SparseVec)> {
        let mut out = Vec::new();
        for factor in [1, 2] {
            for x in 0..self.layout.points {
                let e = sparse::unit(self.layout.exc_index(x, 1));
                let label = if factor == 1 {
                    format!("E{x}×K")
                } else {
                    format!("K×E{x}")
                };
                out.push((label, self.pullback(factor, &e)));
            }
        }
        out.push(("Δ_diag".into(), self.diag_class()));
        out.push(("Δ_graph".into(), self.graph_class()));
        out
    }

    /// `∧^2 φ_K^*` on the invariant block, columns = sources.
    pub fn wedge2_action(&self) -> RationalMatrix {
        let w = self.wedge2_indices();
        let m = self.phi_k.matrix(2);
        let h2 = self.kummer.basis_in_degree(2);
        let pos: Vec<usize> = w
            .iter()
            .map(|i| h2.iter().position(|j| j == i).unwrap())
            .collect();
        RationalMatrix::from_fn(w.len(), w.len(), |r, c| m[(pos[r], pos[c])].clone())
    }

    /// `τ^* pr_i^*` of a class of `K` (`i ∈ {1, 2}`).
    pub fn pullback(&self, factor: usize, v: &SparseVec) -> SparseVec {
        let kd = self.kummer.dim();
        v.iter()
            .map(|(&x, c)| (if factor == 1 { x * kd } else { x }, c.clone()))
            .collect()
    }
}

/// 2-torsion point `x` (bit `i` = coordinate `i` mod 2) mapped by `φ`.
fn act_mod2(phi: &IntMatrix, x: usize) -> usize {
    let m = phi.rows;
    let mut y = 0;
    for i in 0..m {
        let mut s = 0u32;
        for j in 0..m {
            if x >> j & 1 == 1 && phi.get(i, j).is_odd() {
                s ^= 1;
            }
        }
        y |= (s as usize) << i;
    }
    y
}

fn phi_k_images(
    phi: &IntMatrix,
    kummer: &GradedAlgebra,
    layout: &KummerLayout,
) -> Result<Vec<SparseVec>> {
    let m = 2 * layout.n;
    let ext = exterior_model(m)?;
    let ext_images =
        extend_from_generators(m, &ext, &gens_from_matrix(&phi.transpose().to_rational()));
    let mut inv = vec![usize::MAX; layout.points];
    for x in 0..layout.points {
        inv[act_mod2(phi, x)] = x;
    }
    if inv.contains(&usize::MAX) {
        return Err(Error::Config("φ is not invertible mod 2".into()));
    }
    let mut out = vec![SparseVec::new(); kummer.dim()];
    for (i, &s) in layout.masks.iter().enumerate() {
        out[i] = ext_images[s]
            .iter()
            .map(|(&t, c)| (layout.mask_index(t), c.clone()))
            .collect();
    }
    for y in 0..layout.points {
        for k in 1..layout.n {
            out[layout.exc_index(y, k)] = sparse::unit(layout.exc_index(inv[y], k));
        }
    }
    Ok(out)
}

/// Fixed points of `φ_K`: pairs `±x ∉ T[2]` with `φx = ±x`, and `n` eigenlines
/// on the exceptional `P^{n-1}` over each fixed 2-torsion point.
fn fixed_point_count(phi: &IntMatrix, layout: &KummerLayout) -> Result<usize> {
    let m = phi.rows;
    let id = IntMatrix::identity(m);
    let shifted = |s: i64| {
        let mut a = phi.clone();
        for i in 0..m {
            a.set(i, i, phi.get(i, i) - BigInt::from(s) * id.get(i, i));
        }
        a.abs_det()
    };
    let (plus, minus) = (shifted(1), shifted(-1));
    if plus.is_zero() || minus.is_zero() {
        return Err(Error::NonTransverse("φ has eigenvalue ±1".into()));
    }
    let t = (0..layout.points)
        .filter(|&x| act_mod2(phi, x) == x)
        .count();
    let free = (plus + minus - BigInt::from(2 * t))
        .to_usize()
        .unwrap_or(usize::MAX);
    if free % 2 == 1 || free > 1 << 16 {
        return Err(Error::NonTransverse("unexpected fixed point count".into()));
    }
    Ok(free / 2 + t * layout.n)
}

fn lefschetz(phi_k: &AlgebraMorphism) -> BigInt {
    let k = &phi_k.source;
    let mut sum = Q::zero();
    for d in 0..=k.top_degree() {
        let tr = phi_k.matrix(d).trace();
        if d % 2 == 0 {
            sum += tr
        } else {
            sum -= tr
        }
    }
    assert!(sum.is_integer());
    sum.to_integer()
}

/// Build `X_2` for `φ ∈ GL(2n, Z)`. `diag_c1_shift` is added to `c_1` of the
/// normal bundle of the diagonal (a negative control hook).
pub fn build_kummer_pair(phi: &IntMatrix, diag_c1_shift: Option<SparseVec>) -> Result<KummerPair> {
    if phi.rows != phi.cols || phi.rows % 2 == 1 {
        return Err(Error::NotSquare {
            rows: phi.rows,
            cols: phi.cols,
        });
    }
    if !phi.abs_det().is_one() {
        return Err(Error::Config(
            "the graph model needs |det φ| = 1 so that φ_K is biregular".into(),
        ));
    }
    let n = phi.rows / 2;
    let (kummer, layout) = kummer_model(n)?;
    let phi_k = AlgebraMorphism::new(
        kummer.clone(),
        kummer.clone(),
        phi_k_images(phi, &kummer, &layout)?,
    )?;
    let fixed = fixed_point_count(phi, &layout)?;
    let lef = lefschetz(&phi_k);
    if lef != BigInt::from(fixed) {
        return Err(Error::NonTransverse(format!(
            "{fixed} fixed points but Lefschetz number {lef}"
        )));
    }
    let kd = kummer.dim();
    let product = tensor_model(&kummer, &kummer);
    let chern = kummer_chern_classes(&layout);

    // diagonal: a ⊗ b ↦ ab, N = T_K
    let restriction: Vec<SparseVec> = (0..product.dim())
        .map(|i| kummer.mul_basis(i / kd, i % kd))
        .collect();
    let mut diag_chern = chern.clone();
    if let Some(s) = diag_c1_shift {
        diag_chern[0] = sparse::add(&diag_chern[0], &s);
    }
    let spec = BlowupSpec {
        label: "diag".into(),
        center: kummer.clone(),
        restriction,
        codim: n,
        chern: diag_chern,
    };
    let diag_start = product.dim();
    let (b1, _) = blow_up(product.clone(), spec)?;

    // graph center Bl_F(K)
    let pt = point_model();
    let mut g = kummer.clone();
    let mut exc = Vec::new();
    for p in 0..fixed {
        let restriction = (0..g.dim())
            .map(|i| {
                if i == 0 {
                    sparse::unit(0)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        let (next, _) = blow_up(
            g,
            BlowupSpec::trivial_normal(&format!("f{}", p + 1), pt.clone(), restriction, n),
        )?;
        exc.push(next.as_blowup().unwrap().exceptional_class());
        g = next;
    }
    // (Σ_p e'_p)^{k+1} = Σ_p e'_p^{k+1}
    let exc_sum = exc.iter().fold(SparseVec::new(), |a, e| sparse::add(&a, e));
    let exc_pows: Vec<SparseVec> = (0..n - 1).map(|k| g.pow(&exc_sum, k + 1)).collect();

    let mut restriction = Vec::with_capacity(b1.dim());
    for i in 0..product.dim() {
        let b = phi_k.image(i % kd);
        restriction.push(kummer.mul(&sparse::unit(i / kd), b));
    }
    for k in 0..n - 1 {
        for z in 0..kd {
            // u_{z,k} = τ^* z̃ · E^{k+1}, and z̃ restricts to z_0 at each fixed point
            restriction.push(if z == 0 {
                exc_pows[k].clone()
            } else {
                SparseVec::new()
            });
        }
    }
    // transverse intersection: N_Γ̃ = σ^* N_Γ = σ^* φ_K^* T_K
    let graph_chern = chern.iter().map(|c| phi_k.apply(c)).collect();
    let spec = BlowupSpec {
        label: "graph".into(),
        center: g.clone(),
        restriction,
        codim: n,
        chern: graph_chern,
    };
    let graph_start = b1.dim();
    let (x2, _) = blow_up(b1, spec)?;
    Ok(KummerPair {
        n,
        phi: phi.clone(),
        kummer,
        layout,
        product,
        phi_k,
        graph_center: g,
        fixed_points: fixed,
        lefschetz: lef,
        algebra: x2,
        diag_start,
        graph_start,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn phi() -> IntMatrix {
        IntPolynomial::from_i64(&[1, 1, 0, 0, 0, 0, 1]).companion()
    }

    #[test]
    fn kummer_is_a_ring() {
        let (k, _) = kummer_model(3).unwrap();
        assert!(k.commutativity_defects().is_empty());
        assert!(k.associativity_defects(k.top_degree()).is_empty());
    }

    // far too many triples to enumerate; sample them instead
    #[test]
    fn x2_sampled_triples_associate() {
        use rand::{Rng, SeedableRng};
        let x = build_kummer_pair(&phi(), None).unwrap();
        let alg = &x.algebra;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let positive: Vec<usize> = (1..alg.top_degree())
            .flat_map(|d| alg.basis_in_degree(d).to_vec())
            .collect();
        let mut checked = 0;
        while checked < 3000 {
            let [i, j, k] = [0; 3].map(|_| positive[rng.gen_range(0..positive.len())]);
            if alg.degree(i) + alg.degree(j) + alg.degree(k) > alg.top_degree() {
                continue;
            }
            let (u, v, w) = (sparse::unit(i), sparse::unit(j), sparse::unit(k));
            assert_eq!(
                alg.mul(&alg.mul(&u, &v), &w),
                alg.mul(&u, &alg.mul(&v, &w)),
                "({i}, {j}, {k})"
            );
            checked += 1;
        }
    }

    #[test]
    fn fixed_points_match_lefschetz() {
        let (k, layout) = kummer_model(3).unwrap();
        let imgs = phi_k_images(&phi(), &k, &layout).unwrap();
        let m = AlgebraMorphism::new(k.clone(), k, imgs).unwrap();
        assert!(m.check_multiplicative(200, 3));
        assert_eq!(fixed_point_count(&phi(), &layout).unwrap(), 4);
        assert_eq!(lefschetz(&m), BigInt::from(4));
    }
}

#[cfg(test)]
mod x2_tests {
    use super::*;
    use crate::linalg::{q, Subspace};
    use crate::poly::IntPolynomial;
    use crate::ring::analysis::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pair(shift: bool) -> KummerPair {
        let phi = IntPolynomial::from_i64(&[1, 1, 0, 0, 0, 0, 1]).companion();
        let shift = shift.then(|| {
            let (_, layout) = kummer_model(3).unwrap();
            sparse::unit(layout.mask_index(0b11))
        });
        build_kummer_pair(&phi, shift).unwrap()
    }

    fn q_table_zero(x: &KummerPair, cs: &[SparseVec]) -> bool {
        let a2 = x.a2_basis();
        cs.iter()
            .all(|c| q_form(&x.algebra, c, &a2).unwrap().is_zero())
    }

    #[test]
    fn x2_structure() {
        let x = pair(false);
        let alg = &x.algebra;
        assert_eq!(x.kummer.betti_at(2), 79);
        assert_eq!(alg.betti_at(2), 160);
        let a2 = x.a2_basis();
        let spans = subalgebra_spans(alg, &a2);
        assert_eq!(spans[5].len(), 30);
        let p = orthocomplement(alg, 2, &spans[5]);
        assert_eq!(p.dim(), 130);
        let h2 = alg.basis_in_degree(2);
        let exc = x.exceptional_classes();
        let e = Subspace::from_spanning(
            h2.len(),
            exc.iter().map(|(_, v)| sparse::to_dense(v, h2)).collect(),
        );
        assert_eq!(p, e);
        for blk in [&a2[..15], &a2[15..]] {
            assert_eq!(decomposable_span(alg, blk).unwrap().dim(), 15);
        }
    }

    #[test]
    fn x2_components_and_recovery() {
        let x = pair(false);
        let a2 = x.a2_basis();
        let classes: Vec<KernelClass> = x
            .exceptional_classes()
            .into_iter()
            .map(|(label, class)| {
                let kernel = Some(cup_kernel_on(&x.algebra, &class, &a2));
                KernelClass {
                    label,
                    class,
                    kernel,
                }
            })
            .collect();
        let comps = noninjective_locus_components(&classes).unwrap();
        let mut dims: Vec<usize> = comps.iter().map(|c| c.0.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 64, 64]);
        assert!(verify_components(&x.algebra, &classes, &comps, &a2, 5));
        let graph_of = |label: &str| {
            let k = &comps.iter().find(|c| c.0.members == [label]).unwrap().1;
            let a = RationalMatrix::from_fn(15, 15, |r, c| k.basis()[c][r].clone());
            let b = RationalMatrix::from_fn(15, 15, |r, c| k.basis()[c][15 + r].clone());
            b.mul(&a.inverse().unwrap()).unwrap()
        };
        let theta = graph_of("Δ_diag");
        let chi = graph_of("Δ_graph");
        assert_eq!(theta, RationalMatrix::identity(15).scale(&q(-1)));
        assert_eq!(
            chi.inverse().unwrap().mul(&theta).unwrap(),
            x.wedge2_action()
        );
    }

    #[test]
    fn x2_q_vanishes_on_a2() {
        let x = pair(false);
        let exc: Vec<SparseVec> = x
            .exceptional_classes()
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        assert!(q_table_zero(&x, &exc));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let random: Vec<SparseVec> = (0..3)
            .map(|_| {
                let mut c = SparseVec::new();
                for e in &exc {
                    sparse::axpy(&mut c, &q(rng.gen_range(-5..=5)), e);
                }
                c
            })
            .collect();
        assert!(q_table_zero(&x, &random));
    }

    #[test]
    fn x2_negative_control() {
        let x = pair(true);
        assert!(!q_table_zero(&x, &[x.diag_class()]));
    }

    #[test]
    fn x2_isotropic_plane() {
        let x = pair(false);
        let a2 = x.a2_basis();
        // e1∧e2, e1∧e3 in the first block
        let w = x.wedge2_indices();
        let pick = |mask: usize| w.iter().position(|&i| x.layout.masks[i] == mask).unwrap();
        let v = [a2[pick(0b011)].clone(), a2[pick(0b101)].clone()];
        for a in &v {
            for b in &v {
                assert!(x.algebra.mul(a, b).is_empty());
            }
        }
    }
}
