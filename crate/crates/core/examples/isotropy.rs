//! Signatures and isotropic subspaces of rational quadratic forms.

use hodge_obstruct::linalg::RationalMatrix;
use hodge_obstruct::ring::isotropy_report;

fn main() {
    let forms = [
        ("hyperbolic plane", vec![vec![0, 1], vec![1, 0]]),
        ("diag(1, 1)", vec![vec![1, 0], vec![0, 1]]),
        (
            "diag(1, -1, -1, 0)",
            vec![
                vec![1, 0, 0, 0],
                vec![0, -1, 0, 0],
                vec![0, 0, -1, 0],
                vec![0, 0, 0, 0],
            ],
        ),
    ];
    for (name, rows) in forms {
        let r = isotropy_report(&RationalMatrix::from_i64(&rows));
        println!(
            "{name}: signature ({}, {}), isotropic dim {}, contradicts one positive sign: {}",
            r.positive, r.negative, r.max_isotropic_dim, r.contradicts_one_positive_sign
        );
    }
}
