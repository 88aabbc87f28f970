use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::{q, Q};

/// Sparse vector over a fixed basis; zero coefficients are never stored.
pub type SparseVec = BTreeMap<usize, Q>;

pub fn unit(i: usize) -> SparseVec {
    BTreeMap::from([(i, q(1))])
}

pub fn scaled_unit(i: usize, c: Q) -> SparseVec {
    let mut v = SparseVec::new();
    if !c.is_zero() {
        v.insert(i, c);
    }
    v
}

/// `acc += c * v`.
pub fn axpy(acc: &mut SparseVec, c: &Q, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&i, x) in v {
        add_coeff(acc, i, c * x);
    }
}

pub fn add_coeff(acc: &mut SparseVec, i: usize, x: Q) {
    if x.is_zero() {
        return;
    }
    let e = acc.entry(i).or_insert_with(Q::zero);
    *e += x;
    if e.is_zero() {
        acc.remove(&i);
    }
}

pub fn scale(v: &SparseVec, c: &Q) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&i, x)| (i, x * c)).collect()
}

pub fn add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = a.clone();
    axpy(&mut out, &q(1), b);
    out
}

pub fn sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = a.clone();
    axpy(&mut out, &q(-1), b);
    out
}

pub fn from_dense(v: &[Q], indices: &[usize]) -> SparseVec {
    let mut out = SparseVec::new();
    for (x, &i) in v.iter().zip(indices) {
        add_coeff(&mut out, i, x.clone());
    }
    out
}

pub fn to_dense(v: &SparseVec, indices: &[usize]) -> Vec<Q> {
    indices
        .iter()
        .map(|i| v.get(i).cloned().unwrap_or_else(Q::zero))
        .collect()
}
