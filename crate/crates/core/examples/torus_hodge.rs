//! Root isolation, the choice of `H^{1,0}` and Hodge compatibility of the
//! kernel lattices of `T × T`.

use hodge_obstruct::poly::IntPolynomial;
use hodge_obstruct::torus::{build_torus, hodge_compatibility, kernel_sublattices, HodgeAmbient};

fn main() -> hodge_obstruct::Result<()> {
    let f = IntPolynomial::from_i64(&[1, 1, 0, 0, 1]);
    for flip in [None, Some(&[true, false][..])] {
        let t = build_torus(&f, flip)?;
        println!("selection {:?}", t.roots.selection);
        for (i, r) in t.roots.roots.iter().enumerate() {
            println!(
                "  root {i}: {:+.6} {:+.6}i (radius {:.1e})",
                r.re, r.im, r.radius
            );
        }
        let amb = HodgeAmbient::torus(&t);
        let amb = amb.product(&amb);
        for (c, l) in kernel_sublattices(&t.product()).l.iter().enumerate() {
            let h = hodge_compatibility(l, &amb, 1e-9)?;
            println!(
                "  L{}: rank {}, sub-Hodge {} via {:?}",
                c + 1,
                h.rank,
                h.compatible,
                h.method
            );
        }
    }
    Ok(())
}
