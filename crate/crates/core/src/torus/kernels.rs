use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ProductH1;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntegerLattice, RationalMatrix};

/// `L1 = Ker pr1`, `L2 = Ker pr2`, `L3 = Ker(pr1 + pr2)`, `L4 = Ker(pr1 + φ* pr2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelLattices {
    pub l: [IntegerLattice; 4],
}

impl KernelLattices {
    pub fn transform(&self, g: &IntMatrix) -> Self {
        Self {
            l: self.l.clone().map(|x| x.transform(g)),
        }
    }

    pub fn swap_first_two(&self) -> Self {
        let [a, b, c, d] = self.l.clone();
        Self { l: [b, a, c, d] }
    }
}

fn kernel_lattice(m: &IntMatrix) -> IntegerLattice {
    IntegerLattice::from_subspace(&m.to_rational().kernel_basis())
}

pub fn kernel_sublattices(p: &ProductH1) -> KernelLattices {
    KernelLattices {
        l: [
            kernel_lattice(&p.pr1()),
            kernel_lattice(&p.pr2()),
            kernel_lattice(&p.sum_map()),
            kernel_lattice(&p.graph_map()),
        ],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub ranks: [usize; 4],
    pub all_saturated: bool,
    /// `L1 ⊕ L2` is the whole ambient lattice.
    pub direct_sum: bool,
    /// Both projections of `L3` onto the summands are isomorphisms over Z.
    pub l3_graph: bool,
    /// Both projections of `L4` onto the summands are injective.
    pub l4_graph: bool,
    /// Pairwise rational intersections vanish.
    pub pairwise_trivial: bool,
    pub passed: bool,
}

/// Coordinates of the rows of `l` in the basis `L1 ∪ L2`; `None` unless
/// that union is a basis of the ambient lattice.
fn split_coords(
    ls: &KernelLattices,
    l: &IntegerLattice,
) -> Option<(RationalMatrix, RationalMatrix)> {
    let h = ls.l[0].rank();
    let b = ls.l[0]
        .basis_matrix()
        .to_rational()
        .vstack(&ls.l[1].basis_matrix().to_rational());
    if !b.is_square() {
        return None;
    }
    let binv = b.inverse().ok()?;
    let c = l.basis_matrix().to_rational().mul(&binv).ok()?;
    let r = c.rows();
    Some((c.block(0, 0, r, h), c.block(0, h, r, b.rows() - h)))
}

fn square_det(m: &RationalMatrix) -> Option<crate::linalg::Q> {
    if m.is_square() {
        m.det().ok()
    } else {
        None
    }
}

pub fn verify_torus_decomposition(ls: &KernelLattices) -> DecompositionReport {
    let ranks = ls.l.clone().map(|x| x.rank());
    let amb = ls.l[0].ambient_rank();
    let all_saturated = ls.l.iter().all(IntegerLattice::is_saturated);
    let b = IntMatrix::from_rows(
        ls.l[0]
            .basis()
            .iter()
            .chain(ls.l[1].basis())
            .cloned()
            .collect(),
        amb,
    );
    let direct_sum = b.rows == amb && b.abs_det().is_one();

    let graph = |l: &IntegerLattice, integral: bool| -> bool {
        if !direct_sum || l.rank() != ls.l[0].rank() || ls.l[0].rank() != ls.l[1].rank() {
            return false;
        }
        let Some((c1, c2)) = split_coords(ls, l) else {
            return false;
        };
        [c1, c2].iter().all(|c| match square_det(c) {
            Some(d) if integral => d.abs().is_one() && c.is_integral(),
            Some(d) => !d.is_zero(),
            None => false,
        })
    };
    let l3_graph = graph(&ls.l[2], true);
    let l4_graph = graph(&ls.l[3], false);

    let mut pairwise_trivial = true;
    for i in 0..4 {
        for j in i + 1..4 {
            let s = ls.l[i].rational_span().intersect(&ls.l[j].rational_span());
            pairwise_trivial &= s.map(|s| s.is_zero()).unwrap_or(false);
        }
    }
    DecompositionReport {
        ranks,
        all_saturated,
        direct_sum,
        l3_graph,
        l4_graph,
        pairwise_trivial,
        passed: all_saturated && direct_sum && l3_graph && l4_graph,
    }
}

/// Read off `θ: L1 → L2` from `L3` and `χ: L1 → L2` from `L4`, and return
/// `ψ = θ^{-1} χ` as a matrix on `L1` (columns = images of the HNF basis).
///
/// For the lattices of `kernel_sublattices` this is exactly `ᵗφ`.
pub fn recover_endomorphism(ls: &KernelLattices) -> Result<RationalMatrix> {
    let rep = verify_torus_decomposition(ls);
    if !(rep.direct_sum && rep.l3_graph && rep.l4_graph) {
        return Err(Error::Decomposition(format!("{rep:?}")));
    }
    let (a3, b3) = split_coords(ls, &ls.l[2]).expect("checked");
    let (a4, b4) = split_coords(ls, &ls.l[3]).expect("checked");
    // row convention: L1-coordinates times θ give L2-coordinates
    let theta = a3.inverse()?.mul(&b3)?;
    let chi = a4.inverse()?.mul(&b4)?;
    let psi_rows = chi.mul(&theta.inverse()?)?;
    Ok(psi_rows.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::similar;
    use crate::poly::IntPolynomial;

    fn lattices() -> (IntMatrix, KernelLattices) {
        let phi = IntPolynomial::from_i64(&[1, 1, 0, 0, 1]).companion();
        let p = ProductH1::new(phi.transpose());
        (phi, kernel_sublattices(&p))
    }

    #[test]
    fn shapes_of_the_four_lattices() {
        let (phi, ls) = lattices();
        assert!(ls.l.iter().all(|l| l.rank() == 4));
        // L3 is the anti-diagonal, L4 = {(-ᵗφβ, β)}
        let phit = phi.transpose().to_rational();
        for v in ls.l[3].basis_q() {
            let (a, b) = v.split_at(4);
            let want: Vec<_> = phit.mul_vec(b).into_iter().map(|x| -x).collect();
            assert_eq!(a, &want[..]);
        }
        for v in ls.l[2].basis_q() {
            let (a, b) = v.split_at(4);
            assert!(a.iter().zip(b).all(|(x, y)| *x == -y.clone()));
        }
        let r = verify_torus_decomposition(&ls);
        assert!(r.passed && r.pairwise_trivial, "{r:?}");
    }

    #[test]
    fn round_trip_is_exact() {
        let (phi, ls) = lattices();
        assert_eq!(
            recover_endomorphism(&ls).unwrap(),
            phi.transpose().to_rational()
        );
    }

    #[test]
    fn controls() {
        let (phi, ls) = lattices();
        let mut bad = ls.clone();
        bad.l[3] = ls.l[0].clone();
        assert!(!verify_torus_decomposition(&bad).l4_graph);
        assert!(recover_endomorphism(&bad).is_err());
        let swapped = ls.swap_first_two();
        assert!(verify_torus_decomposition(&swapped).passed);
        // swapping the summands inverts the recovered map
        let inv = recover_endomorphism(&swapped).unwrap();
        let prod = inv.mul(&phi.transpose().to_rational()).unwrap();
        assert_eq!(prod, RationalMatrix::identity(4));
        let mut same = ls.clone();
        same.l[3] = ls.l[2].clone();
        assert_eq!(
            recover_endomorphism(&same).unwrap(),
            RationalMatrix::identity(4)
        );
    }

    #[test]
    fn unimodular_change_keeps_similarity_class() {
        let (phi, ls) = lattices();
        let mut g = IntMatrix::identity(8);
        for (i, j, v) in [(0, 5, 2), (3, 1, -1), (6, 2, 1), (7, 4, 3), (2, 7, 1)] {
            g.set(i, j, v.into());
        }
        assert!(g.abs_det().is_one());
        let psi = recover_endomorphism(&ls.transform(&g)).unwrap();
        assert!(
            similar(&psi, &phi.transpose().to_rational())
                .unwrap()
                .similar
        );
    }
}
