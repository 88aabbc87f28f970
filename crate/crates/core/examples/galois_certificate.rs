//! Symmetric Galois certificates from Frobenius cycle types and resolvents.

use hodge_obstruct::poly::{certify_symmetric_galois, IntPolynomial};

fn main() -> hodge_obstruct::Result<()> {
    for coeffs in [
        &[1, 1, 0, 0, 1][..],
        &[1, 0, 0, 0, 1],
        &[1, 1, 0, 0, 0, 0, 1],
    ] {
        let f = IntPolynomial::from_i64(coeffs);
        let c = certify_symmetric_galois(&f, 1000)?;
        println!("{f}: {:?} ({})", c.verdict, c.reason);
        println!(
            "  discriminant {} square: {}",
            c.discriminant, c.discriminant_is_square
        );
        for (what, w) in [
            ("irreducible", &c.irreducible_witness),
            ("transposition", &c.transposition_witness),
            ("long cycle", &c.long_cycle_witness),
        ] {
            if let Some(w) = w {
                println!("  {what}: p = {} pattern {:?}", w.prime, w.pattern);
            }
        }
        if let Some(r) = &c.resolvent {
            println!(
                "  resolvent cubic {} with rational roots {:?}",
                r.cubic, r.rational_roots
            );
        }
    }
    Ok(())
}
