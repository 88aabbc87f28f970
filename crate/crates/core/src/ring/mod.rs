//! Graded-commutative rational algebras modelling cohomology rings:
//! exterior, tensor and Kummer models, blow-ups, and the linear algebra
//! on top of them (cup kernels, Gysin adjoints, obstruction subspaces,
//! quadratic forms).

mod algebra;
mod analysis;
mod blowup;
mod dump;
mod kummer_pair;
mod models;
mod morphism;
pub mod sparse;
mod xmodel;

pub use algebra::GradedAlgebra;
pub use analysis::{
    annihilator, cup_kernel, cup_kernel_on, cup_matrix, decomposable_span, diagonalize,
    exterior_subring_map, gysin_adjoint, isotropy_report, noninjective_locus_components,
    obstruction_subspaces, orthocomplement, q_form, subalgebra_spans, verify_components, Component,
    IsotropyReport, KernelClass, ObstructionSubspaces, SparseSpan, TopDegreeCheck,
};
pub use blowup::{blow_up, iterated_blow_up, Blowup, BlowupSpec, Part};
pub use dump::{dump_algebra, AlgebraDump, DUMP_SCHEMA_VERSION};
pub use kummer_pair::{build_kummer_pair, KummerPair};
pub use models::{
    exterior_model, invariant_even_part, invariant_even_part_scaled, kummer_chern_classes,
    kummer_model, point_model, projective_space_model, tensor_model, KummerLayout,
};
pub use morphism::AlgebraMorphism;
pub use sparse::SparseVec;
pub use xmodel::{
    build_x1_model, build_x_model, extend_from_generators, intersection_points, CenterKind, Step,
    XModel, SUBTORI,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use std::sync::Arc;

    fn point_blowup(dim: usize) -> (Arc<GradedAlgebra>, SparseVec) {
        let y = projective_space_model(dim);
        let pt = point_model();
        let restriction = (0..y.dim())
            .map(|i| {
                if i == 0 {
                    sparse::unit(0)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        let spec = BlowupSpec::trivial_normal("p", pt, restriction, dim);
        let (bl, _) = blow_up(y, spec).unwrap();
        let e = bl.as_blowup().unwrap().exceptional_class();
        (bl, e)
    }

    #[test]
    fn sign_anchors() {
        let (s, e) = point_blowup(2);
        assert_eq!(s.integrate(&s.pow(&e, 2)), q(-1));
        let (t, e) = point_blowup(3);
        assert_eq!(t.integrate(&t.pow(&e, 3)), q(1));
        assert!(t.pairing_nondegenerate());
    }

    #[test]
    fn blowup_betti() {
        let (t, _) = point_blowup(3);
        assert_eq!(t.betti(), vec![1, 0, 2, 0, 2, 0, 1]);
    }
}
