//! `X_2` over the Kummer: the form `q_c` vanishes on `A^2` for `c` in the
//! exceptional span, and stops vanishing once the normal bundle data is tampered with.

use hodge_obstruct::poly::IntPolynomial;
use hodge_obstruct::ring::{build_kummer_pair, kummer_model, q_form, sparse};

fn main() -> hodge_obstruct::Result<()> {
    let phi = IntPolynomial::from_i64(&[1, 1, 0, 0, 0, 0, 1]).companion();
    let x = build_kummer_pair(&phi, None)?;
    println!(
        "X2: dim {}, b2 {}, fixed points of φ_K {}",
        x.algebra.dim(),
        x.algebra.betti_at(2),
        x.fixed_points
    );
    let a2 = x.a2_basis();
    let zero = x.exceptional_classes().iter().all(|(_, c)| {
        q_form(&x.algebra, c, &a2)
            .map(|m| m.is_zero())
            .unwrap_or(false)
    });
    println!("q_c|A^2 = 0 for every exceptional class: {zero}");

    let (_, layout) = kummer_model(3)?;
    let shift = sparse::unit(layout.mask_index(0b11));
    let bad = build_kummer_pair(&phi, Some(shift))?;
    let q = q_form(&bad.algebra, &bad.diag_class(), &bad.a2_basis())?;
    println!(
        "tampered diagonal normal bundle: q_δ|A^2 zero: {}",
        q.is_zero()
    );
    Ok(())
}
