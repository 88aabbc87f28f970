//! Orbit bound on the Néron–Severi rank of `T`: full symmetric group
//! against the Klein four-group of `x^4 + 1`.

use hodge_obstruct::poly::IntPolynomial;
use hodge_obstruct::torus::{build_torus, ns_orbit_analysis, GroupModel};

fn main() -> hodge_obstruct::Result<()> {
    let t = build_torus(&IntPolynomial::from_i64(&[1, 1, 0, 0, 1]), None)?;
    let r = ns_orbit_analysis(&t, Some(&GroupModel::Symmetric))?;
    println!(
        "x^4 + x + 1, S_4: {} (1,1)-pairs, bound {}",
        r.type_11_pairs.len(),
        r.ns_rank_bound
    );

    let t = build_torus(&IntPolynomial::from_i64(&[1, 0, 0, 0, 1]), None)?;
    let klein = GroupModel::Generators {
        generators: vec![vec![1, 0, 3, 2], vec![3, 2, 1, 0]],
    };
    let r = ns_orbit_analysis(&t, Some(&klein))?;
    println!(
        "x^4 + 1, V_4: stable pairs {:?}, bound {}",
        r.stable_subset, r.ns_rank_bound
    );
    Ok(())
}
