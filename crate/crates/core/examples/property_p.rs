//! Condition (P): squarefree, even degree, no real roots, by Sturm chains.

use hodge_obstruct::poly::{check_property_p, sturm_real_root_count, IntPolynomial};

fn main() {
    for coeffs in [
        &[1, 1, 0, 0, 1][..],
        &[5, 0, -5, 0, 1],
        &[1, 0, 2, 0, 1],
        &[1, 1, 0, 0, 0, 0, 1],
    ] {
        let f = IntPolynomial::from_i64(coeffs);
        let count = sturm_real_root_count(&f)
            .map(|c| c.to_string())
            .unwrap_or_else(|e| e.to_string());
        match check_property_p(&f) {
            Ok(r) => println!("{f}: real roots {count}, (P) {}", r.holds),
            Err(e) => println!("{f}: {e}"),
        }
    }
}
