//! The blown-up `T × T` at both levels: Betti numbers, the top-degree
//! check, and the subspaces `P_0 ⊂ P` of `H^2`.

use hodge_obstruct::poly::IntPolynomial;
use hodge_obstruct::ring::{
    build_x_model, cup_kernel, exterior_subring_map, obstruction_subspaces,
};

fn main() -> hodge_obstruct::Result<()> {
    let phi = IntPolynomial::from_i64(&[1, 1, 0, 0, 1]).companion();
    for level in [1, 2] {
        let x = build_x_model(&phi, level)?;
        let (_, top) = exterior_subring_map(&x.algebra)?;
        let s = obstruction_subspaces(&x.algebra)?;
        println!(
            "level {level}: dim {}, betti {:?}",
            x.algebra.dim(),
            x.algebra.betti()
        );
        println!(
            "  ∧^top H^1 ≅ H^top: {}; dim P = {}, dim P0 = {}",
            top.isomorphism,
            s.p.dim(),
            s.p0.dim()
        );
        for c in 0..4 {
            let st = x.subtorus_step(c);
            println!(
                "  ker ∪[{}] on H^1: rank {}",
                st.label,
                cup_kernel(&x.algebra, &st.class(), 1).dim()
            );
        }
    }
    Ok(())
}
