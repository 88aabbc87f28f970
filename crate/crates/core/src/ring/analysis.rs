use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::GradedAlgebra;
use super::models::exterior_model;
use super::morphism::AlgebraMorphism;
use super::sparse::{self, SparseVec};
use super::xmodel::extend_from_generators;
use crate::error::{Error, Result};
use crate::linalg::{q, RationalMatrix, Subspace, Q};

/// Matrix of `x ↦ α · x` from degree `k` to degree `k + |α|`.
pub fn cup_matrix(alg: &GradedAlgebra, alpha: &SparseVec, k: usize) -> RationalMatrix {
    let deg = alpha.keys().next().map(|&i| alg.degree(i)).unwrap_or(0);
    let src = alg.basis_in_degree(k);
    let tgt = alg.basis_in_degree(k + deg);
    let cols: Vec<Vec<Q>> = src
        .iter()
        .map(|&i| sparse::to_dense(&alg.mul(alpha, &sparse::unit(i)), tgt))
        .collect();
    RationalMatrix::from_fn(tgt.len(), src.len(), |r, c| cols[c][r].clone())
}

/// Kernel of `∪α` on degree `source_degree`, in coordinates of that degree.
pub fn cup_kernel(alg: &GradedAlgebra, alpha: &SparseVec, source_degree: usize) -> Subspace {
    let src = alg.basis_in_degree(source_degree).len();
    if alpha.is_empty() {
        return Subspace::full(src);
    }
    cup_matrix(alg, alpha, source_degree).kernel_basis()
}

/// Kernel of `∪α` restricted to `span(source)`, in coordinates of `source`.
pub fn cup_kernel_on(alg: &GradedAlgebra, alpha: &SparseVec, source: &[SparseVec]) -> Subspace {
    let images: Vec<SparseVec> = source.iter().map(|x| alg.mul(alpha, x)).collect();
    let support: Vec<usize> = images
        .iter()
        .flat_map(|v| v.keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if support.is_empty() {
        return Subspace::full(source.len());
    }
    let cols: Vec<Vec<Q>> = images
        .iter()
        .map(|v| sparse::to_dense(v, &support))
        .collect();
    RationalMatrix::from_fn(support.len(), source.len(), |r, c| cols[c][r].clone()).kernel_basis()
}

/// `{x ∈ H^k : x·a = 0 for all a in span}`, in coordinates of `H^k`.
pub fn annihilator(alg: &GradedAlgebra, k: usize, span: &[SparseVec]) -> Subspace {
    let hk = alg.basis_in_degree(k);
    let mut rows: std::collections::BTreeMap<(usize, usize), Vec<Q>> = Default::default();
    for (ai, a) in span.iter().enumerate() {
        for (c, &i) in hk.iter().enumerate() {
            for (t, x) in alg.mul(&sparse::unit(i), a) {
                rows.entry((ai, t))
                    .or_insert_with(|| vec![Q::zero(); hk.len()])[c] = x;
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(hk.len());
    }
    RationalMatrix::from_rows_with_cols(rows.into_values().collect(), hk.len()).kernel_basis()
}

/// Incremental row echelon form over sparse vectors.
#[derive(Clone, Debug, Default)]
pub struct SparseSpan {
    pivots: std::collections::BTreeMap<usize, SparseVec>,
}

impl SparseSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            let hit = v
                .iter()
                .find_map(|(&i, c)| self.pivots.get(&i).map(|p| (c.clone(), p)));
            match hit {
                Some((c, p)) => sparse::axpy(&mut v, &-c, p),
                None => return v,
            }
        }
    }

    /// Insert `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&lead, c)) = r.iter().next() else {
            return false;
        };
        let r = sparse::scale(&r, &(Q::from_integer(1.into()) / c.clone()));
        for p in self.pivots.values_mut() {
            if let Some(x) = p.get(&lead).cloned() {
                sparse::axpy(p, &-x, &r);
            }
        }
        self.pivots.insert(lead, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.pivots.values().cloned().collect()
    }
}

/// Spans of the subalgebra generated by `gens` (all of degree `d`) in the
/// degrees `0, d, 2d, …` up to the top.
pub fn subalgebra_spans(alg: &GradedAlgebra, gens: &[SparseVec]) -> Vec<Vec<SparseVec>> {
    let d = gens
        .iter()
        .flat_map(|g| g.keys())
        .map(|&i| alg.degree(i))
        .next()
        .unwrap_or(0);
    let mut out = vec![vec![alg.unit()]];
    if d == 0 {
        return out;
    }
    while (out.len()) * d <= alg.top_degree() {
        let mut span = SparseSpan::new();
        for a in out.last().unwrap() {
            for g in gens {
                span.insert(&alg.mul(a, g));
            }
        }
        out.push(span.basis());
    }
    out
}

/// `{x ∈ H^k : ∫ x·a = 0 for all a in span}`, in coordinates of `H^k`.
pub fn orthocomplement(alg: &GradedAlgebra, k: usize, span: &[SparseVec]) -> Subspace {
    let hk = alg.basis_in_degree(k);
    if span.is_empty() {
        return Subspace::full(hk.len());
    }
    let rows: Vec<Vec<Q>> = span
        .iter()
        .map(|a| {
            hk.iter()
                .map(|&i| alg.pairing(&sparse::unit(i), a))
                .collect()
        })
        .collect();
    RationalMatrix::from_rows_with_cols(rows, hk.len()).kernel_basis()
}

#[derive(Clone, Debug, Serialize)]
pub struct TopDegreeCheck {
    pub b1: usize,
    pub top_degree: usize,
    pub top_rank: usize,
    pub isomorphism: bool,
}

/// The map `∧* H^1 → H^*` induced by cup product, and whether it is an
/// isomorphism in the top degree.
pub fn exterior_subring_map(alg: &Arc<GradedAlgebra>) -> Result<(AlgebraMorphism, TopDegreeCheck)> {
    let h1 = alg.basis_in_degree(1).to_vec();
    let ext = exterior_model(h1.len())?;
    let gens: Vec<SparseVec> = h1.iter().map(|&i| sparse::unit(i)).collect();
    let images = extend_from_generators(h1.len(), alg, &gens);
    let m = AlgebraMorphism::new(ext.clone(), alg.clone(), images)?;
    let top = alg.top_degree();
    let top_rank = if top <= h1.len() {
        m.matrix(top).rank()
    } else {
        0
    };
    let check = TopDegreeCheck {
        b1: h1.len(),
        top_degree: top,
        top_rank,
        isomorphism: top == ext.top_degree() && top_rank == 1 && alg.betti_at(top) == 1,
    };
    Ok((m, check))
}

/// Poincaré adjoint `f_*` of `f^*: H^k(S) → H^k(X)` between algebras of
/// the same top degree: `∫_S f_*(y) x = ∫_X y f^*(x)`.
pub fn gysin_adjoint(m: &AlgebraMorphism, k: usize) -> Result<RationalMatrix> {
    let (s, x) = (&m.source, &m.target);
    if s.top_degree() != x.top_degree() {
        return Err(Error::DegreeMismatch(
            "adjoint needs equal top degrees".into(),
        ));
    }
    let top = s.top_degree();
    let ps = s.pairing_matrix(k);
    let px = x.pairing_matrix(k);
    let f = m.matrix(top - k);
    let ps_inv = ps.inverse().map_err(|_| Error::DegeneratePairing(k))?;
    Ok(px.mul(&f)?.mul(&ps_inv)?.transpose())
}

#[derive(Clone, Debug)]
pub struct ObstructionSubspaces {
    /// Annihilator in `H^2` of `∧^{b_1-2} H^1`; on a manifold with
    /// `b_1` = real dimension this is the Poincaré orthocomplement.
    pub p: Subspace,
    /// Elements of `P` annihilating `H^1`.
    pub p0: Subspace,
}

pub fn obstruction_subspaces(alg: &Arc<GradedAlgebra>) -> Result<ObstructionSubspaces> {
    let (ext, _) = exterior_subring_map(alg)?;
    let h2 = alg.basis_in_degree(2);
    let b1 = alg.betti_at(1);
    let span: Vec<SparseVec> = if b1 >= 2 {
        ext.source
            .basis_in_degree(b1 - 2)
            .iter()
            .map(|&i| ext.image(i).clone())
            .filter(|v| !v.is_empty())
            .collect()
    } else {
        Vec::new()
    };
    let p = if b1 >= 2 {
        annihilator(alg, 2, &span)
    } else {
        Subspace::zero(h2.len())
    };
    let mut p0_gens = Vec::new();
    let h1 = alg.basis_in_degree(1).len();
    if h1 == 0 {
        p0_gens = p.basis().to_vec();
    } else {
        // x in P with x · e = 0 for all e in H^1: solve on P-coordinates
        let pb = p.basis();
        let h3 = alg.basis_in_degree(3);
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let cups: Vec<Vec<Vec<Q>>> = pb
            .iter()
            .map(|v| {
                let x = alg.from_coords(v, 2);
                alg.basis_in_degree(1)
                    .iter()
                    .map(|&e| sparse::to_dense(&alg.mul(&x, &sparse::unit(e)), h3))
                    .collect()
            })
            .collect();
        for e in 0..h1 {
            for t in 0..h3.len() {
                rows.push((0..pb.len()).map(|a| cups[a][e][t].clone()).collect());
            }
        }
        let ker = if rows.is_empty() {
            Subspace::full(pb.len())
        } else {
            RationalMatrix::from_rows_with_cols(rows, pb.len()).kernel_basis()
        };
        for c in ker.basis() {
            let mut v = vec![Q::zero(); h2.len()];
            for (a, ca) in c.iter().enumerate() {
                for (t, x) in pb[a].iter().enumerate() {
                    v[t] += ca * x;
                }
            }
            p0_gens.push(v);
        }
    }
    let p0 = Subspace::from_spanning(h2.len(), p0_gens);
    Ok(ObstructionSubspaces { p, p0 })
}

/// A labelled class together with the kernel of its cup product.
#[derive(Clone, Debug)]
pub struct KernelClass {
    pub label: String,
    pub class: SparseVec,
    pub kernel: Option<Subspace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub members: Vec<String>,
    pub dim: usize,
    pub kernel_dim: usize,
}

/// Components of the locus where `∪α` fails to be injective, for `α`
/// ranging over the span of classes whose kernels are known: classes with
/// equal kernel form one component (a coordinate subspace), provided the
/// kernels of different groups meet trivially.
pub fn noninjective_locus_components(
    classes: &[KernelClass],
) -> Result<Vec<(Component, Subspace)>> {
    let mut groups: Vec<(Subspace, Vec<String>)> = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        let k = c.kernel.clone().ok_or(Error::MissingKernel(i))?;
        if k.is_zero() {
            continue;
        }
        match groups.iter_mut().find(|(g, _)| *g == k) {
            Some((_, m)) => m.push(c.label.clone()),
            None => groups.push((k, vec![c.label.clone()])),
        }
    }
    for a in 0..groups.len() {
        for b in a + 1..groups.len() {
            if !groups[a].0.intersect(&groups[b].0)?.is_zero() {
                return Err(Error::Decomposition(format!(
                    "kernels of {:?} and {:?} meet",
                    groups[a].1, groups[b].1
                )));
            }
        }
    }
    Ok(groups
        .into_iter()
        .map(|(k, members)| {
            (
                Component {
                    dim: members.len(),
                    kernel_dim: k.dim(),
                    members,
                },
                k,
            )
        })
        .collect())
}

/// Check on the algebra itself: a random combination inside each group has
/// the group kernel, and a random combination across two groups is injective.
pub fn verify_components(
    alg: &GradedAlgebra,
    classes: &[KernelClass],
    comps: &[(Component, Subspace)],
    source: &[SparseVec],
    seed: u64,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let combo = |labels: &[String], rng: &mut ChaCha8Rng| {
        let mut v = SparseVec::new();
        for c in classes.iter().filter(|c| labels.contains(&c.label)) {
            sparse::axpy(&mut v, &q(rng.gen_range(1..=97)), &c.class);
        }
        v
    };
    for (comp, k) in comps {
        let v = combo(&comp.members, &mut rng);
        if cup_kernel_on(alg, &v, source) != *k {
            return false;
        }
    }
    for a in 0..comps.len() {
        for b in a + 1..comps.len() {
            let mut labels = comps[a].0.members.clone();
            labels.extend(comps[b].0.members.iter().cloned());
            let v = combo(&labels, &mut rng);
            if !cup_kernel_on(alg, &v, source).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Span of the square-zero elements of `span(v)`, in coordinates of the
/// given spanning classes. Handled exactly in two cases: every class
/// squares to zero (a block of decomposables, span = everything), or the
/// classes multiply to zero pairwise with independent squares (only `0`
/// squares to zero, over C as well).
pub fn decomposable_span(alg: &GradedAlgebra, v: &[SparseVec]) -> Result<Subspace> {
    let m = v.len();
    if m == 0 {
        return Ok(Subspace::zero(0));
    }
    let squares: Vec<SparseVec> = v.iter().map(|x| alg.mul(x, x)).collect();
    if squares.iter().all(SparseVec::is_empty) {
        return Ok(Subspace::full(m));
    }
    let pairwise_zero = (0..m).all(|a| (a + 1..m).all(|b| alg.mul(&v[a], &v[b]).is_empty()));
    if pairwise_zero {
        let support: BTreeSet<usize> = squares.iter().flat_map(|s| s.keys().copied()).collect();
        let idx: Vec<usize> = support.into_iter().collect();
        let rows: Vec<Vec<Q>> = squares.iter().map(|s| sparse::to_dense(s, &idx)).collect();
        if RationalMatrix::from_rows_with_cols(rows, idx.len()).rank() == m {
            return Ok(Subspace::zero(m));
        }
    }
    Err(Error::UnsupportedBlock(
        "neither a block of square-zero classes nor of orthogonal classes with independent squares"
            .into(),
    ))
}

/// `q_c(α, β) = ∫ c^{d-2} α β` on the given degree-two classes, where `d`
/// is the complex dimension.
pub fn q_form(alg: &GradedAlgebra, c: &SparseVec, basis: &[SparseVec]) -> Result<RationalMatrix> {
    if c.keys().any(|&i| alg.degree(i) != 2)
        || basis.iter().any(|b| b.keys().any(|&i| alg.degree(i) != 2))
    {
        return Err(Error::DegreeMismatch("q_c needs degree-two classes".into()));
    }
    let top = alg.top_degree();
    if top % 2 == 1 || top < 4 {
        return Err(Error::DegreeMismatch(format!("top degree {top}")));
    }
    let cp = alg.pow(c, top / 2 - 2);
    let left: Vec<SparseVec> = basis.iter().map(|a| alg.mul(&cp, a)).collect();
    let m = basis.len();
    let mut out = RationalMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let x = alg.pairing(&left[i], &basis[j]);
            out[(i, j)] = x.clone();
            out[(j, i)] = x;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotropyReport {
    pub rank: usize,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    /// Dimension of a maximal totally isotropic subspace over R.
    pub max_isotropic_dim: usize,
    #[serde(serialize_with = "crate::ser::display_vec_vec")]
    pub witnesses: Vec<Vec<Q>>,
    pub contradicts_one_positive_sign: bool,
}

/// Rational congruence diagonalization: returns `(P, d)` with `P A Pᵀ = diag(d)`.
pub fn diagonalize(a: &RationalMatrix) -> (RationalMatrix, Vec<Q>) {
    let n = a.rows();
    let mut m = a.clone();
    let mut p = RationalMatrix::identity(n);
    let add_row_col =
        |m: &mut RationalMatrix, p: &mut RationalMatrix, dst: usize, src: usize, c: &Q| {
            for k in 0..n {
                let v = m[(src, k)].clone() * c;
                m[(dst, k)] += v;
            }
            for k in 0..n {
                let v = m[(k, src)].clone() * c;
                m[(k, dst)] += v;
            }
            for k in 0..n {
                let v = p[(src, k)].clone() * c;
                p[(dst, k)] += v;
            }
        };
    for i in 0..n {
        if m[(i, i)].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                add_row_col(&mut m, &mut p, i, j, &q(1));
                if m[(i, i)].is_zero() {
                    add_row_col(&mut m, &mut p, i, j, &q(1));
                }
            }
            if m[(i, i)].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !m[(i, j)].is_zero()) {
                    add_row_col(&mut m, &mut p, i, j, &q(1));
                }
            }
        }
        if m[(i, i)].is_zero() {
            continue;
        }
        for j in i + 1..n {
            if !m[(j, i)].is_zero() {
                let c = -(m[(j, i)].clone() / m[(i, i)].clone());
                add_row_col(&mut m, &mut p, j, i, &c);
            }
        }
    }
    let d = (0..n).map(|i| m[(i, i)].clone()).collect();
    (p, d)
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    let r = Q::new(n, d);
    (&r * &r == *x).then_some(r)
}

pub fn isotropy_report(form: &RationalMatrix) -> IsotropyReport {
    let (p, d) = diagonalize(form);
    let positive = d.iter().filter(|x| x.is_positive()).count();
    let negative = d.iter().filter(|x| x.is_negative()).count();
    let zero = d.len() - positive - negative;
    let mut witnesses: Vec<Vec<Q>> = (0..d.len())
        .filter(|&i| d[i].is_zero())
        .map(|i| p.row_vec(i))
        .collect();
    'outer: for i in 0..d.len() {
        for j in i + 1..d.len() {
            if d[i].is_positive() && d[j].is_negative() {
                if let Some(t) = rational_sqrt(&(-(d[i].clone()) / d[j].clone())) {
                    let v: Vec<Q> = (0..d.len())
                        .map(|k| p[(i, k)].clone() + &t * p[(j, k)].clone())
                        .collect();
                    witnesses.push(v);
                    break 'outer;
                }
            }
        }
    }
    let max_iso = zero + positive.min(negative);
    IsotropyReport {
        rank: positive + negative,
        positive,
        negative,
        zero,
        max_isotropic_dim: max_iso,
        witnesses,
        contradicts_one_positive_sign: max_iso >= 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;
    use crate::ring::xmodel::{build_x1_model, build_x_model};
    use crate::ring::{blow_up, exterior_model, BlowupSpec};

    fn phi() -> crate::linalg::IntMatrix {
        IntPolynomial::from_i64(&[1, 1, 0, 0, 1]).companion()
    }

    #[test]
    fn obstruction_dims() {
        let x1 = build_x_model(&phi(), 1).unwrap();
        let s = obstruction_subspaces(&x1.algebra).unwrap();
        assert_eq!((s.p.dim(), s.p0.dim()), (4, 0));
        let x2 = build_x_model(&phi(), 2).unwrap();
        let s = obstruction_subspaces(&x2.algebra).unwrap();
        assert_eq!((s.p.dim(), s.p0.dim()), (7, 3));
        let h2 = x2.algebra.basis_in_degree(2);
        let pts = Subspace::from_spanning(
            h2.len(),
            x2.point_steps()
                .map(|st| sparse::to_dense(&st.class(), h2))
                .collect(),
        );
        assert_eq!(s.p0, pts);
        let t = exterior_model(8).unwrap();
        assert_eq!(obstruction_subspaces(&t).unwrap().p.dim(), 0);
    }

    #[test]
    fn degree_one_kernels_are_restriction_kernels() {
        for level in [1, 2] {
            let x = build_x_model(&phi(), level).unwrap();
            for c in 0..4 {
                let k = cup_kernel(&x.algebra, &x.subtorus_step(c).class(), 1);
                assert_eq!(
                    k,
                    x.h1_restrictions[c].kernel_basis(),
                    "level {level} subtorus {c}"
                );
            }
        }
    }

    fn components(x: &crate::ring::XModel) -> (Vec<KernelClass>, Vec<(Component, Subspace)>) {
        let classes: Vec<KernelClass> = (0..4)
            .flat_map(|c| x.group_classes(c))
            .map(|(label, class)| {
                let kernel = Some(cup_kernel(&x.algebra, &class, 1));
                KernelClass {
                    label,
                    class,
                    kernel,
                }
            })
            .collect();
        let comps = noninjective_locus_components(&classes).unwrap();
        (classes, comps)
    }

    fn h1(x: &crate::ring::XModel) -> Vec<SparseVec> {
        x.algebra
            .basis_in_degree(1)
            .iter()
            .map(|&i| sparse::unit(i))
            .collect()
    }

    #[test]
    fn four_line_components() {
        let x = build_x_model(&phi(), 1).unwrap();
        let (classes, comps) = components(&x);
        assert_eq!(
            comps.iter().map(|c| c.0.dim).collect::<Vec<_>>(),
            vec![1, 1, 1, 1]
        );
        assert!(comps.iter().all(|c| c.0.kernel_dim == 4));
        assert!(verify_components(&x.algebra, &classes, &comps, &h1(&x), 7));
    }

    #[test]
    fn x1_component_dims() {
        let x = build_x1_model(&phi(), 1, &[1, 2, 3, 4]).unwrap();
        let (classes, comps) = components(&x);
        let mut dims: Vec<usize> = comps.iter().map(|c| c.0.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2, 3, 4]);
        assert!(verify_components(&x.algebra, &classes, &comps, &h1(&x), 11));
    }

    #[test]
    fn adjoint_inverts_pullback() {
        let base = exterior_model(4).unwrap();
        let pt = exterior_model(0).unwrap();
        let spec = BlowupSpec::trivial_normal(
            "p",
            pt,
            vec![sparse::unit(0); 1]
                .into_iter()
                .chain((1..base.dim()).map(|_| SparseVec::new()))
                .collect(),
            2,
        );
        let (_, tau) = blow_up(base.clone(), spec).unwrap();
        for k in 0..=4 {
            let a = gysin_adjoint(&tau, k).unwrap();
            let f = tau.matrix(k);
            assert_eq!(
                a.mul(&f).unwrap(),
                RationalMatrix::identity(base.betti_at(k)),
                "k = {k}"
            );
        }
    }

    #[test]
    fn decomposables() {
        let e = exterior_model(4).unwrap();
        let v = [
            sparse::unit(e.basis_in_degree(2)[0]),
            sparse::unit(e.basis_in_degree(2)[1]),
        ];
        assert_eq!(decomposable_span(&e, &v).unwrap().dim(), 2);
        let x = build_x_model(&phi(), 2).unwrap();
        let pts: Vec<SparseVec> = x.point_steps().map(|s| s.class()).collect();
        assert_eq!(decomposable_span(&x.algebra, &pts).unwrap().dim(), 0);
    }

    #[test]
    fn isotropy_of_forms() {
        let h = RationalMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
        let r = isotropy_report(&h);
        assert_eq!((r.positive, r.negative, r.max_isotropic_dim), (1, 1, 1));
        assert!(!r.contradicts_one_positive_sign);
        let (p, d) = diagonalize(&h);
        let back = p.mul(&h).unwrap().mul(&p.transpose()).unwrap();
        for i in 0..2 {
            assert_eq!(back[(i, i)], d[i]);
        }
        let z = RationalMatrix::zeros(3, 3);
        let r = isotropy_report(&z);
        assert_eq!(r.max_isotropic_dim, 3);
        assert!(r.contradicts_one_positive_sign);
        for w in &r.witnesses {
            assert!(w.iter().any(|x| !x.is_zero()));
        }
    }
}
