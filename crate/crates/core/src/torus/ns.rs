use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::TorusDatum;
use crate::error::{Error, Result};

/// How the Galois group acts on the `2n` root labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupModel {
    /// Full symmetric group on all labels, as certified.
    Symmetric,
    /// Explicit permutations of the labels.
    Generators { generators: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, Serialize)]
pub struct NSOrbitReport {
    pub labels: usize,
    /// Formal `(1,1)` eigenvalue labels `{λ_i, λ̄_j}` as label pairs.
    pub type_11_pairs: Vec<(usize, usize)>,
    pub orbit_count: usize,
    /// Union of the orbits lying entirely in the `(1,1)` set.
    pub stable_subset: Vec<(usize, usize)>,
    pub ns_rank_bound: usize,
    /// Advisory: are the products of pairs of distinct roots numerically distinct?
    pub products_distinct: bool,
}

fn generators(model: &GroupModel, m: usize) -> Result<Vec<Vec<usize>>> {
    match model {
        GroupModel::Symmetric => {
            if m < 2 {
                return Ok(vec![]);
            }
            let mut swap: Vec<usize> = (0..m).collect();
            swap.swap(0, 1);
            let cycle = (0..m).map(|i| (i + 1) % m).collect();
            Ok(vec![swap, cycle])
        }
        GroupModel::Generators { generators } => {
            for g in generators {
                let set: BTreeSet<usize> = g.iter().copied().collect();
                if g.len() != m || set.len() != m || set.iter().any(|&x| x >= m) {
                    return Err(Error::InvalidPermutation(format!("{g:?} on {m} labels")));
                }
            }
            Ok(generators.clone())
        }
    }
}

fn norm(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Orbits of the group on unordered pairs of distinct root labels; the
/// Néron–Severi space is bounded by the orbits made only of `λ_i λ̄_j`.
pub fn ns_orbit_analysis(t: &TorusDatum, group: Option<&GroupModel>) -> Result<NSOrbitReport> {
    let group = group.ok_or(Error::GroupModelMissing)?;
    let rs = &t.roots;
    let m = 2 * rs.half_degree;
    let gens = generators(group, m)?;

    let selected: Vec<usize> = rs.selection.clone();
    let mut type11 = BTreeSet::new();
    for &i in &selected {
        for &j in &selected {
            type11.insert(norm(i, rs.conjugate(j)));
        }
    }

    let mut seen = BTreeSet::new();
    let mut orbit_count = 0;
    let mut stable = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if seen.contains(&(a, b)) {
                continue;
            }
            orbit_count += 1;
            let mut orbit = vec![(a, b)];
            seen.insert((a, b));
            let mut queue = VecDeque::from([(a, b)]);
            while let Some((x, y)) = queue.pop_front() {
                for g in &gens {
                    let img = norm(g[x], g[y]);
                    if seen.insert(img) {
                        orbit.push(img);
                        queue.push_back(img);
                    }
                }
            }
            if orbit.iter().all(|p| type11.contains(p)) {
                stable.extend(orbit);
            }
        }
    }
    stable.sort();

    let mut prods = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            prods.push(rs.value(a) * rs.value(b));
        }
    }
    let products_distinct =
        (0..prods.len()).all(|i| (i + 1..prods.len()).all(|j| (prods[i] - prods[j]).norm() > 1e-8));

    Ok(NSOrbitReport {
        labels: m,
        type_11_pairs: type11.into_iter().collect(),
        orbit_count,
        ns_rank_bound: stable.len(),
        stable_subset: stable,
        products_distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;
    use crate::torus::build_torus;

    #[test]
    fn symmetric_group_kills_ns() {
        let t = build_torus(&IntPolynomial::from_i64(&[1, 1, 0, 0, 1]), None).unwrap();
        let r = ns_orbit_analysis(&t, Some(&GroupModel::Symmetric)).unwrap();
        assert_eq!(r.ns_rank_bound, 0);
        assert_eq!(r.orbit_count, 1);
        assert!(r.products_distinct);
    }

    #[test]
    fn elliptic_curve_case() {
        let t = build_torus(&IntPolynomial::from_i64(&[1, 0, 1]), None).unwrap();
        let r = ns_orbit_analysis(&t, Some(&GroupModel::Symmetric)).unwrap();
        assert_eq!(r.stable_subset, vec![(0, 1)]);
        assert_eq!(r.ns_rank_bound, 1);
    }

    #[test]
    fn klein_four_leaves_classes() {
        let t = build_torus(&IntPolynomial::from_i64(&[1, 0, 0, 0, 1]), None).unwrap();
        let g = GroupModel::Generators {
            generators: vec![vec![1, 0, 3, 2], vec![3, 2, 1, 0]],
        };
        let r = ns_orbit_analysis(&t, Some(&g)).unwrap();
        assert!(r.ns_rank_bound >= 1);
        assert!(!r.products_distinct);
        assert!(matches!(
            ns_orbit_analysis(&t, None),
            Err(Error::GroupModelMissing)
        ));
    }
}
