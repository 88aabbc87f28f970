//! Degree patterns of `f mod p` by distinct-degree factorization.

use hodge_obstruct::poly::{factor_pattern_mod_p, is_prime, IntPolynomial};

fn main() {
    let f = IntPolynomial::from_i64(&[1, 1, 0, 0, 0, 0, 1]);
    for p in (2..60).filter(|&p| is_prime(p)) {
        match factor_pattern_mod_p(&f, p) {
            Ok(pattern) => println!("p = {p:2}: {pattern:?}"),
            Err(e) => println!("p = {p:2}: {e}"),
        }
    }
}
