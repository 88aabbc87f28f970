//! Fixed points and kernel points of `φ` on `T`: `|det(φ - 1)| = |f(1)|`
//! and `|det φ| = |f(0)|`.

use hodge_obstruct::poly::{intersection_counts, IntPolynomial};

fn main() -> hodge_obstruct::Result<()> {
    for coeffs in [
        &[1, 1, 0, 0, 1][..],
        &[3, -1, 2, 0, 1],
        &[1, 1, 0, 0, 0, 0, 1],
    ] {
        let f = IntPolynomial::from_i64(coeffs);
        let c = intersection_counts(&f.companion())?;
        println!("{f}: N = {}, |det φ| = {}", c.n, c.m);
    }
    Ok(())
}
