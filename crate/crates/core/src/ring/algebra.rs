use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use super::blowup::Blowup;
use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{q, RationalMatrix, Q};

/// Finite-dimensional graded-commutative algebra over Q with an
/// integration functional on the top degree.
///
/// Basis elements are homogeneous and indexed globally; degrees are
/// cohomological (a torus of complex dimension `d` has top degree `2d`).
pub struct GradedAlgebra {
    name: String,
    degrees: Vec<usize>,
    by_degree: Vec<Vec<usize>>,
    top: usize,
    pub(crate) kind: Kind,
    duals: Mutex<HashMap<usize, SparseVec>>,
}

pub(crate) enum Kind {
    /// `∧* Q^m`, basis index = bitmask of generators; `∫ e_{1..m} = scale`.
    Exterior {
        m: usize,
        scale: Q,
    },
    /// Explicit structure constants.
    Table(Table),
    /// Koszul-signed tensor product, index `a * dim(b) + b`.
    Tensor {
        a: Arc<GradedAlgebra>,
        b: Arc<GradedAlgebra>,
    },
    Blowup(Box<Blowup>),
}

pub(crate) struct Table {
    pub labels: Vec<String>,
    pub products: HashMap<(usize, usize), SparseVec>,
    pub integrals: BTreeMap<usize, Q>,
}

impl std::fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedAlgebra({}, betti {:?})", self.name, self.betti())
    }
}

pub(crate) fn exterior_sign(s: usize, t: usize) -> i64 {
    // (-1)^{#{(a, b) : a in s, b in t, a > b}}
    let mut inv = 0u32;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        inv += (s >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl GradedAlgebra {
    pub(crate) fn from_parts(name: String, degrees: Vec<usize>, top: usize, kind: Kind) -> Self {
        let mut by_degree = vec![Vec::new(); top + 1];
        for (i, &d) in degrees.iter().enumerate() {
            assert!(d <= top, "basis element {i} has degree {d} > {top}");
            by_degree[d].push(i);
        }
        Self {
            name,
            degrees,
            by_degree,
            top,
            kind,
            duals: Mutex::new(HashMap::new()),
        }
    }

    pub fn exterior(m: usize, scale: Q) -> Result<Self> {
        if m > 16 {
            return Err(Error::RankTooLarge(m));
        }
        let degrees = (0..1usize << m).map(|s| s.count_ones() as usize).collect();
        Ok(Self::from_parts(
            format!("ext{m}"),
            degrees,
            m,
            Kind::Exterior { m, scale },
        ))
    }

    /// Algebra from explicit structure constants. Products of basis pairs
    /// not listed are zero; index 0 must be the unit.
    pub fn table(
        name: &str,
        labels: Vec<String>,
        degrees: Vec<usize>,
        top: usize,
        products: HashMap<(usize, usize), SparseVec>,
        integrals: BTreeMap<usize, Q>,
    ) -> Self {
        assert_eq!(labels.len(), degrees.len());
        Self::from_parts(
            name.to_string(),
            degrees,
            top,
            Kind::Table(Table {
                labels,
                products,
                integrals,
            }),
        )
    }

    pub fn tensor(a: Arc<GradedAlgebra>, b: Arc<GradedAlgebra>) -> Self {
        let mut degrees = Vec::with_capacity(a.dim() * b.dim());
        for i in 0..a.dim() {
            for j in 0..b.dim() {
                degrees.push(a.degree(i) + b.degree(j));
            }
        }
        let name = format!("{}⊗{}", a.name, b.name);
        let top = a.top + b.top;
        Self::from_parts(name, degrees, top, Kind::Tensor { a, b })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn top_degree(&self) -> usize {
        self.top
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Basis indices of degree `k` (empty beyond the top).
    pub fn basis_in_degree(&self, k: usize) -> &[usize] {
        self.by_degree.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn betti(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }

    pub fn betti_at(&self, k: usize) -> usize {
        self.basis_in_degree(k).len()
    }

    pub fn unit(&self) -> SparseVec {
        sparse::unit(0)
    }

    pub fn label(&self, i: usize) -> String {
        match &self.kind {
            Kind::Exterior { m, .. } => {
                if i == 0 {
                    return "1".into();
                }
                (0..*m)
                    .filter(|b| i >> b & 1 == 1)
                    .map(|b| format!("e{}", b + 1))
                    .collect()
            }
            Kind::Table(t) => t.labels[i].clone(),
            Kind::Tensor { a, b } => {
                let (x, y) = (i / b.dim(), i % b.dim());
                format!("{}⊗{}", a.label(x), b.label(y))
            }
            Kind::Blowup(bl) => bl.label(i),
        }
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> SparseVec {
        if self.degrees[i] + self.degrees[j] > self.top {
            return SparseVec::new();
        }
        match &self.kind {
            Kind::Exterior { .. } => {
                if i & j != 0 {
                    SparseVec::new()
                } else {
                    sparse::scaled_unit(i | j, q(exterior_sign(i, j)))
                }
            }
            Kind::Table(t) => {
                if i == 0 {
                    return sparse::unit(j);
                }
                if j == 0 {
                    return sparse::unit(i);
                }
                t.products.get(&(i, j)).cloned().unwrap_or_default()
            }
            Kind::Tensor { a, b } => {
                let n = b.dim();
                let (x, y, x2, y2) = (i / n, i % n, j / n, j % n);
                let sign = if (b.degree(y) * a.degree(x2)) % 2 == 1 {
                    -1
                } else {
                    1
                };
                let pa = a.mul_basis(x, x2);
                if pa.is_empty() {
                    return SparseVec::new();
                }
                let pb = b.mul_basis(y, y2);
                let mut out = SparseVec::new();
                for (u, cu) in &pa {
                    for (v, cv) in &pb {
                        sparse::add_coeff(&mut out, u * n + v, cu * cv * q(sign));
                    }
                }
                out
            }
            Kind::Blowup(bl) => bl.mul_basis(self, i, j),
        }
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, x) in a {
            for (&j, y) in b {
                let p = self.mul_basis(i, j);
                if !p.is_empty() {
                    sparse::axpy(&mut out, &(x * y), &p);
                }
            }
        }
        out
    }

    /// Basis pairs with `ij ≠ (-1)^{|i||j|} ji`.
    pub fn commutativity_defects(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 1..self.dim() {
            for j in i + 1..self.dim() {
                if self.degrees[i] + self.degrees[j] > self.top {
                    continue;
                }
                let mut ji = self.mul_basis(j, i);
                if (self.degrees[i] * self.degrees[j]) % 2 == 1 {
                    ji = sparse::scale(&ji, &q(-1));
                }
                if self.mul_basis(i, j) != ji {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Basis triples `i ≤ j ≤ k` of positive degree, total degree at most
    /// `max_degree`, on which `(ij)k`, `i(jk)` and `±(ik)j` disagree.
    /// Together with graded commutativity this covers every ordering.
    pub fn associativity_defects(&self, max_degree: usize) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        let n = self.dim();
        let deg = &self.degrees;
        for i in 1..n {
            for j in i..n {
                if deg[i] + deg[j] > max_degree {
                    continue;
                }
                let ij = self.mul_basis(i, j);
                for k in j..n {
                    if deg[i] + deg[j] + deg[k] > max_degree {
                        continue;
                    }
                    let a = self.mul(&ij, &sparse::unit(k));
                    let b = self.mul(&sparse::unit(i), &self.mul_basis(j, k));
                    let mut c = self.mul(&self.mul_basis(i, k), &sparse::unit(j));
                    if (deg[j] * deg[k]) % 2 == 1 {
                        c = sparse::scale(&c, &q(-1));
                    }
                    if a != b || a != c {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    pub fn pow(&self, a: &SparseVec, k: usize) -> SparseVec {
        let mut out = self.unit();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    pub fn integral_basis(&self, i: usize) -> Q {
        if self.degrees[i] != self.top {
            return Q::zero();
        }
        match &self.kind {
            Kind::Exterior { m, scale } => {
                if i == (1usize << m) - 1 {
                    scale.clone()
                } else {
                    Q::zero()
                }
            }
            Kind::Table(t) => t.integrals.get(&i).cloned().unwrap_or_else(Q::zero),
            Kind::Tensor { a, b } => {
                let n = b.dim();
                a.integral_basis(i / n) * b.integral_basis(i % n)
            }
            Kind::Blowup(bl) => {
                if i < bl.base.dim() {
                    bl.base.integral_basis(i)
                } else {
                    Q::zero()
                }
            }
        }
    }

    pub fn integrate(&self, v: &SparseVec) -> Q {
        v.iter().map(|(&i, x)| x * self.integral_basis(i)).sum()
    }

    /// `∫ a · b`.
    pub fn pairing(&self, a: &SparseVec, b: &SparseVec) -> Q {
        let mut acc = Q::zero();
        for (&i, x) in a {
            for (&j, y) in b {
                if self.degrees[i] + self.degrees[j] == self.top {
                    let c = self.integrate(&self.mul_basis(i, j));
                    if !c.is_zero() {
                        acc += x * y * c;
                    }
                }
            }
        }
        acc
    }

    /// Pairing matrix between degree `k` and degree `top - k`.
    pub fn pairing_matrix(&self, k: usize) -> RationalMatrix {
        let rows = self.basis_in_degree(k);
        let cols = self.basis_in_degree(self.top.saturating_sub(k));
        RationalMatrix::from_fn(rows.len(), cols.len(), |a, b| {
            self.integrate(&self.mul_basis(rows[a], cols[b]))
        })
    }

    /// Is the Poincaré pairing perfect in every degree?
    pub fn pairing_nondegenerate(&self) -> bool {
        (0..=self.top).all(|k| {
            let m = self.pairing_matrix(k);
            m.is_square() && m.rank() == m.rows()
        })
    }

    /// Dual basis element: `∫ b_j · dual(i) = δ_ij`.
    pub fn dual(&self, i: usize) -> Result<SparseVec> {
        if let Some(v) = self.duals.lock().unwrap().get(&i) {
            return Ok(v.clone());
        }
        let v = match &self.kind {
            Kind::Exterior { m, scale } => {
                let full = (1usize << m) - 1;
                let c = full ^ i;
                sparse::scaled_unit(c, q(exterior_sign(i, c)) / scale)
            }
            Kind::Tensor { a, b } => {
                let n = b.dim();
                let (x, y) = (i / n, i % n);
                let (dx, dy) = (a.dual(x)?, b.dual(y)?);
                let dxdeg = a.top - a.degree(x);
                let sign = if (b.degree(y) * dxdeg) % 2 == 1 {
                    -1
                } else {
                    1
                };
                let mut out = SparseVec::new();
                for (u, cu) in &dx {
                    for (v, cv) in &dy {
                        sparse::add_coeff(&mut out, u * n + v, cu * cv * q(sign));
                    }
                }
                out
            }
            Kind::Blowup(bl) if i < bl.base.dim() => bl.base.dual(i)?,
            Kind::Blowup(bl) => {
                let k = self.degrees[i];
                let own: Vec<usize> = bl.exceptional_in_degree(self, k);
                let comp: Vec<usize> = bl.exceptional_in_degree(self, self.top - k);
                self.gram_duals(&own, &comp)?;
                return Ok(self.duals.lock().unwrap()[&i].clone());
            }
            Kind::Table(_) => {
                let k = self.degrees[i];
                let own = self.basis_in_degree(k).to_vec();
                let comp = self.basis_in_degree(self.top - k).to_vec();
                self.gram_duals(&own, &comp)?;
                return Ok(self.duals.lock().unwrap()[&i].clone());
            }
        };
        self.duals.lock().unwrap().insert(i, v.clone());
        Ok(v)
    }

    // Duals of `own` inside span(comp), from the inverse Gram matrix.
    fn gram_duals(&self, own: &[usize], comp: &[usize]) -> Result<()> {
        if own.len() != comp.len() {
            return Err(Error::DegeneratePairing(
                self.degrees[own.first().copied().unwrap_or(0)],
            ));
        }
        let g = RationalMatrix::from_fn(own.len(), comp.len(), |a, b| {
            self.integrate(&self.mul_basis(own[a], comp[b]))
        });
        let ginv = g.inverse().map_err(|_| {
            Error::DegeneratePairing(own.first().map(|&i| self.degrees[i]).unwrap_or(0))
        })?;
        let mut cache = self.duals.lock().unwrap();
        for (a, &i) in own.iter().enumerate() {
            let coeffs: Vec<Q> = (0..comp.len()).map(|b| ginv[(b, a)].clone()).collect();
            cache.insert(i, sparse::from_dense(&coeffs, comp));
        }
        Ok(())
    }

    /// Components of the basis element `i` in the tensor factors.
    pub fn tensor_parts(&self, i: usize) -> Option<(usize, usize)> {
        match &self.kind {
            Kind::Tensor { b, .. } => Some((i / b.dim(), i % b.dim())),
            _ => None,
        }
    }

    pub fn tensor_factors(&self) -> Option<(&Arc<GradedAlgebra>, &Arc<GradedAlgebra>)> {
        match &self.kind {
            Kind::Tensor { a, b } => Some((a, b)),
            _ => None,
        }
    }

    pub fn tensor_index(&self, x: usize, y: usize) -> usize {
        match &self.kind {
            Kind::Tensor { b, .. } => x * b.dim() + y,
            _ => panic!("not a tensor product"),
        }
    }

    pub fn as_blowup(&self) -> Option<&Blowup> {
        match &self.kind {
            Kind::Blowup(b) => Some(b),
            _ => None,
        }
    }

    pub fn is_unit(&self, v: &SparseVec) -> bool {
        v.len() == 1 && v.get(&0).is_some_and(One::is_one)
    }

    /// Dense coordinates of `v` in degree `k`.
    pub fn coords(&self, v: &SparseVec, k: usize) -> Vec<Q> {
        sparse::to_dense(v, self.basis_in_degree(k))
    }

    pub fn from_coords(&self, c: &[Q], k: usize) -> SparseVec {
        sparse::from_dense(c, self.basis_in_degree(k))
    }
}
