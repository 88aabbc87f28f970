//! Recover `ᵗφ` from the four kernel lattices, before and after a random
//! unimodular change of basis of `H^1(T × T)`.

use hodge_obstruct::linalg::{similar, IntMatrix};
use hodge_obstruct::poly::IntPolynomial;
use hodge_obstruct::torus::{
    build_torus, kernel_sublattices, recover_endomorphism, verify_torus_decomposition,
};

fn main() -> hodge_obstruct::Result<()> {
    let t = build_torus(&IntPolynomial::from_i64(&[1, 1, 0, 0, 1]), None)?;
    let ls = kernel_sublattices(&t.product());
    println!("{:?}", verify_torus_decomposition(&ls));
    let psi = recover_endomorphism(&ls)?;
    println!("ψ = ᵗφ: {}", psi == t.phi_star().to_rational());

    // an elementary unimodular change mixing the two factors
    let mut g = IntMatrix::identity(8);
    g.set(0, 5, 3.into());
    g.set(6, 1, (-2).into());
    let moved = ls.transform(&g);
    let psi2 = recover_endomorphism(&moved)?;
    let s = similar(&psi2, &t.phi_star().to_rational())?;
    println!(
        "after change of basis: similar {} (witness found: {})",
        s.similar,
        s.witness.is_some()
    );
    Ok(())
}
