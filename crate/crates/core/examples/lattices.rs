//! Hermite and Smith forms, saturation of sublattices, rational canonical form.

use hodge_obstruct::linalg::{
    rational_canonical_form, smith_normal_form, IntMatrix, IntegerLattice,
};
use hodge_obstruct::pipeline::matrix_rows;
use hodge_obstruct::poly::IntPolynomial;

fn main() -> hodge_obstruct::Result<()> {
    let l = IntegerLattice::from_i64(3, &[vec![2, 4, 6], vec![0, 3, 3]]);
    println!("basis {:?}", l.basis());
    println!(
        "saturated {} index {}",
        l.is_saturated(),
        l.saturation_index()
    );
    println!("saturation {:?}", l.saturate().basis());

    let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    println!("smith invariants {:?}", smith_normal_form(&m).invariants);

    let phi = IntPolynomial::from_i64(&[1, 1, 0, 0, 1]).companion();
    for row in matrix_rows(&rational_canonical_form(&phi.transpose().to_rational())?) {
        println!("{}", row.join(" "));
    }
    Ok(())
}
