use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{clear_denominators, IntMatrix, Subspace, Q};
use crate::error::{Error, Result};

/// Sublattice of `Z^ambient_rank`, basis rows in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    ambient_rank: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Smith normal form `D = U M V` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries, nonnegative, each dividing the next; zeros last.
    pub invariants: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl IntegerLattice {
    pub fn new(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> Self {
        assert!(generators.iter().all(|g| g.len() == ambient_rank));
        Self {
            ambient_rank,
            basis: hermite_normal_form(generators, ambient_rank),
        }
    }

    pub fn from_i64(ambient_rank: usize, generators: &[Vec<i64>]) -> Self {
        Self::new(
            ambient_rank,
            generators
                .iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::new(
            ambient_rank,
            (0..ambient_rank)
                .map(|i| {
                    (0..ambient_rank)
                        .map(|j| BigInt::from((i == j) as i64))
                        .collect()
                })
                .collect(),
        )
    }

    /// Saturated lattice `span_Q(S) ∩ Z^m` of a rational subspace.
    pub fn from_subspace(s: &Subspace) -> Self {
        let gens = s.basis().iter().map(|v| clear_denominators(v)).collect();
        Self::new(s.ambient_dim(), gens).saturate()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_q(&self) -> Vec<Vec<Q>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
            .collect()
    }

    pub fn rational_span(&self) -> Subspace {
        Subspace::from_spanning(self.ambient_rank, self.basis_q())
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.basis.clone(), self.ambient_rank)
    }

    /// Primitive closure: the largest lattice of the same rank containing this one.
    pub fn saturate(&self) -> Self {
        if self.basis.is_empty() {
            return self.clone();
        }
        let snf = smith_normal_form(&self.basis_matrix());
        let r = snf.invariants.iter().filter(|d| !d.is_zero()).count();
        let gens = (0..r).map(|i| snf.v_inverse_row(i)).collect();
        Self::new(self.ambient_rank, gens)
    }

    pub fn is_saturated(&self) -> bool {
        self.saturate() == *self
    }

    /// Index of this lattice in its saturation.
    pub fn saturation_index(&self) -> BigInt {
        let snf = smith_normal_form(&self.basis_matrix());
        snf.invariants
            .iter()
            .filter(|d| !d.is_zero())
            .fold(BigInt::one(), |a, d| a * d)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut gens = self.basis.clone();
        gens.push(v.to_vec());
        Self::new(self.ambient_rank, gens) == *self
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &IntegerLattice) -> Result<IntegerLattice> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch(
                "lattice ambient ranks differ".into(),
            ));
        }
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Ok(Self::new(self.ambient_rank, gens))
    }

    /// Rational intersection, saturated.
    pub fn intersect_saturated(&self, other: &IntegerLattice) -> Result<IntegerLattice> {
        let s = self.rational_span().intersect(&other.rational_span())?;
        Ok(Self::from_subspace(&s))
    }

    /// Apply an integer matrix (acting on column vectors) to every basis vector.
    pub fn transform(&self, g: &IntMatrix) -> IntegerLattice {
        assert_eq!(g.cols, self.ambient_rank);
        let gens = self
            .basis
            .iter()
            .map(|b| {
                (0..g.rows)
                    .map(|i| (0..g.cols).map(|j| g.get(i, j) * &b[j]).sum::<BigInt>())
                    .collect()
            })
            .collect();
        Self::new(g.rows, gens)
    }
}

impl SmithForm {
    /// Row `i` of `V^{-1}`; the first `rank` rows span the saturation of the row lattice.
    fn v_inverse_row(&self, i: usize) -> Vec<BigInt> {
        let vinv = self.v.to_rational().inverse().expect("unimodular");
        (0..vinv.cols())
            .map(|j| vinv[(i, j)].to_integer())
            .collect()
    }
}

/// Row-style Hermite normal form: nonzero rows, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below r
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if !a[i][c].is_zero() && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot_row = a[r].clone();
            for i in 0..r {
                let f = a[i][c].div_floor(&pivot_row[c]);
                if f.is_zero() {
                    continue;
                }
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    fn row_op(a: &mut [Vec<BigInt>], u: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
        // row dst -= f * row src
        let s = a[src].clone();
        for (x, y) in a[dst].iter_mut().zip(&s) {
            *x -= f * y;
        }
        for j in 0..u.cols {
            let val = u.get(dst, j) - f * u.get(src, j);
            u.set(dst, j, val);
        }
    }
    fn col_op(a: &mut [Vec<BigInt>], v: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
        for row in a.iter_mut() {
            let s = row[src].clone();
            row[dst] -= f * s;
        }
        for i in 0..v.rows {
            let val = v.get(i, dst) - f * v.get(i, src);
            v.set(i, dst, val);
        }
    }
    fn swap_rows(a: &mut [Vec<BigInt>], u: &mut IntMatrix, i: usize, j: usize) {
        a.swap(i, j);
        for c in 0..u.cols {
            let t = u.get(i, c).clone();
            let s = u.get(j, c).clone();
            u.set(i, c, s);
            u.set(j, c, t);
        }
    }
    fn swap_cols(a: &mut [Vec<BigInt>], v: &mut IntMatrix, i: usize, j: usize) {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for r in 0..v.rows {
            let t = v.get(r, i).clone();
            let s = v.get(r, j).clone();
            v.set(r, i, s);
            v.set(r, j, t);
        }
    }

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // pivot: smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, &mut u, t, pi);
        swap_cols(&mut a, &mut v, t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let f = a[i][t].div_floor(&a[t][t]);
                row_op(&mut a, &mut u, i, t, &f);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let f = a[t][j].div_floor(&a[t][t]);
                col_op(&mut a, &mut v, j, t, &f);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t
        let mut offending = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    offending = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = offending {
            row_op(&mut a, &mut u, t, i, &BigInt::from(-1));
            continue;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for j in 0..u.cols {
                let val = -u.get(t, j).clone();
                u.set(t, j, val);
            }
        }
        t += 1;
    }
    let invariants = (0..n).map(|i| a[i][i].clone()).collect();
    SmithForm { invariants, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let d = smith_normal_form(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(d.invariants, bi(&[1, 6]));
        let d = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(d.invariants, bi(&[1, 1, 1]));
        let d = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert_eq!(d.invariants, bi(&[0, 0]));
    }

    #[test]
    fn snf_transforms_reproduce_diagonal() {
        let m = IntMatrix::from_i64(&[vec![4, 6, 2], vec![2, 8, 10], vec![6, 2, -4]]);
        let s = smith_normal_form(&m);
        let d = s.u.mul(&m).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j {
                    s.invariants[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(d.get(i, j), &expect);
            }
        }
        for w in s.invariants.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn saturation_examples() {
        let l = IntegerLattice::from_i64(2, &[vec![2, 0]]);
        assert_eq!(l.saturate(), IntegerLattice::from_i64(2, &[vec![1, 0]]));
        let l = IntegerLattice::from_i64(3, &[vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(l.saturate(), l);
        // rank-2 lattice in Z^2 saturates to everything
        let l = IntegerLattice::from_i64(2, &[vec![2, 2], vec![0, 4]]);
        assert_eq!(l.saturation_index(), BigInt::from(8));
        assert_eq!(l.saturate(), IntegerLattice::full(2));
        // rank-1 non-primitive vector in Z^3
        let l = IntegerLattice::from_i64(3, &[vec![2, 4, 6]]);
        assert_eq!(l.saturate(), IntegerLattice::from_i64(3, &[vec![1, 2, 3]]));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntegerLattice::from_i64(2, &[vec![1, 1], vec![0, 2]]);
        let b = IntegerLattice::from_i64(2, &[vec![1, 3], vec![1, 1]]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[bi(&[1, 1]), bi(&[0, 2])]);
    }
}
