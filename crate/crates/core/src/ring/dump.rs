use serde::Serialize;

use super::algebra::GradedAlgebra;
use super::sparse;
use crate::error::{Error, Result};
use crate::linalg::fmt_q;

pub const DUMP_SCHEMA_VERSION: &str = "1.0";

/// Structure constants of a graded algebra, for regression files.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraDump {
    pub schema_version: &'static str,
    pub name: String,
    pub dim: usize,
    pub top_degree: usize,
    pub degrees: Vec<usize>,
    pub labels: Vec<String>,
    pub betti: Vec<usize>,
    /// `[i, j, [[k, c], ...]]` for `i <= j` with `e_i e_j ≠ 0`, `i, j > 0`.
    pub products: Vec<(usize, usize, Vec<(usize, String)>)>,
    /// `[i, ∫ e_i]` for nonzero integrals.
    pub integrals: Vec<(usize, String)>,
    /// Poincaré pairing `H^k × H^{top-k}` for `k <= top/2`, rows in basis order.
    pub pairings: Vec<Vec<Vec<String>>>,
}

/// Dump every structure constant; refused above `max_dim` basis elements.
pub fn dump_algebra(alg: &GradedAlgebra, max_dim: usize) -> Result<AlgebraDump> {
    if alg.dim() > max_dim {
        return Err(Error::Config(format!(
            "algebra of dimension {} exceeds dump limit {max_dim}",
            alg.dim()
        )));
    }
    let mut products = Vec::new();
    for i in 1..alg.dim() {
        for j in i..alg.dim() {
            let p = alg.mul_basis(i, j);
            if !p.is_empty() {
                products.push((i, j, p.iter().map(|(&k, c)| (k, fmt_q(c))).collect()));
            }
        }
    }
    let integrals = (0..alg.dim())
        .filter_map(|i| {
            let x = alg.integrate(&sparse::unit(i));
            (x != num_traits::Zero::zero()).then(|| (i, fmt_q(&x)))
        })
        .collect();
    let pairings = (0..=alg.top_degree() / 2)
        .map(|k| {
            alg.pairing_matrix(k)
                .to_rows()
                .iter()
                .map(|r| r.iter().map(fmt_q).collect())
                .collect()
        })
        .collect();
    Ok(AlgebraDump {
        schema_version: DUMP_SCHEMA_VERSION,
        name: alg.name().to_string(),
        dim: alg.dim(),
        top_degree: alg.top_degree(),
        degrees: (0..alg.dim()).map(|i| alg.degree(i)).collect(),
        labels: (0..alg.dim()).map(|i| alg.label(i)).collect(),
        betti: alg.betti(),
        products,
        integrals,
        pairings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::projective_space_model;

    #[test]
    fn p2_dump() {
        let d = dump_algebra(&projective_space_model(2), 100).unwrap();
        assert_eq!(d.betti, vec![1, 0, 1, 0, 1]);
        assert_eq!(d.products, vec![(1, 1, vec![(2, "1".to_string())])]);
        assert_eq!(d.integrals, vec![(2, "1".to_string())]);
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.contains("\"schema_version\":\"1.0\""));
        assert!(dump_algebra(&projective_space_model(2), 2).is_err());
    }
}
