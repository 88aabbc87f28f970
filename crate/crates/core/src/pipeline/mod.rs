//! Config-driven pipelines, one per command, each producing a report.

mod config;
mod kummer;
mod report;
mod steps;

use std::sync::Arc;

use serde_json::json;

pub use config::{KummerConfig, PipelineConfig};
pub use kummer::pipeline_kummer;
pub use report::{matrix_rows, ObstructionReport, Status, StepRecord, Verdict, SCHEMA_VERSION};

use crate::linalg::{Subspace, Q};
use crate::ring::{
    build_x1_model, build_x_model, cup_kernel, exterior_model, exterior_subring_map,
    noninjective_locus_components, obstruction_subspaces, projective_space_model, sparse,
    tensor_model, verify_components, GradedAlgebra, KernelClass, SparseVec, XModel, SUBTORI,
};
use crate::torus::kernel_sublattices;
use num_traits::Zero;

/// Which coefficient field the component argument runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientMode {
    Q,
    C,
}

fn report_for(name: &str, cfg: &PipelineConfig) -> ObstructionReport {
    ObstructionReport::new(name, cfg.poly().to_string(), cfg.seed)
}

fn config_ok(rep: &mut ObstructionReport, cfg: &PipelineConfig) -> bool {
    match cfg.validate() {
        Ok(()) => true,
        Err(e) => {
            rep.error("config", &e);
            false
        }
    }
}

/// `certify-poly`: condition (P) and the symmetric Galois certificate.
pub fn pipeline_certify(cfg: &PipelineConfig) -> ObstructionReport {
    let mut rep = report_for("certify-poly", cfg);
    if config_ok(&mut rep, cfg) {
        let f = cfg.poly();
        if steps::property_p(&mut rep, &f).is_some() {
            steps::galois(&mut rep, &f, cfg.prime_bound);
        }
    }
    rep.finish()
}

/// `build-torus`: the torus, its Hodge data and the kernel lattices of the
/// four subtori computed directly from `H^1(T × T)`.
pub fn pipeline_build_torus(cfg: &PipelineConfig) -> ObstructionReport {
    let mut rep = report_for("build-torus", cfg);
    if config_ok(&mut rep, cfg) {
        if let Some(t) = steps::torus(&mut rep, cfg) {
            if steps::intersections(&mut rep, &t).is_some() {
                let ls = kernel_sublattices(&t.product());
                let kernels = ls.l.clone().map(|l| l.rational_span());
                steps::recovery(&mut rep, &t, &kernels, cfg.tolerance);
            }
        }
    }
    rep.finish()
}

/// `ns-check`: the orbit bound on the Néron–Severi rank.
pub fn pipeline_ns_check(cfg: &PipelineConfig) -> ObstructionReport {
    let mut rep = report_for("ns-check", cfg);
    if config_ok(&mut rep, cfg) {
        let f = cfg.poly();
        let proceed = if cfg.group.is_some() {
            steps::property_p(&mut rep, &f).is_some()
        } else {
            steps::property_p(&mut rep, &f).is_some()
                && steps::galois(&mut rep, &f, cfg.prime_bound).is_some()
        };
        if proceed {
            if let Some(t) = steps::torus(&mut rep, cfg) {
                steps::ns(&mut rep, &t, cfg);
            }
        }
    }
    rep.finish()
}

/// Certificate, torus and NS bound: the common prefix of the theorem pipelines.
fn prefix(rep: &mut ObstructionReport, cfg: &PipelineConfig) -> Option<crate::torus::TorusDatum> {
    if !config_ok(rep, cfg) {
        return None;
    }
    let f = cfg.poly();
    steps::property_p(rep, &f)?;
    steps::galois(rep, &f, cfg.prime_bound)?;
    let t = steps::torus(rep, cfg)?;
    steps::ns(rep, &t, cfg)?;
    steps::intersections(rep, &t)?;
    Some(t)
}

fn build_model(
    rep: &mut ObstructionReport,
    t: &crate::torus::TorusDatum,
    level: u8,
    mult: Option<[usize; 4]>,
) -> Option<XModel> {
    let built = match mult {
        None => build_x_model(&t.phi, level),
        Some(m) => build_x1_model(&t.phi, level, &m),
    };
    match built {
        Ok(x) => {
            let b = x.algebra.betti();
            let data = json!({ "level": level, "dim": x.algebra.dim(), "betti": b, "blowups": x.steps.iter().map(|s| &s.label).collect::<Vec<_>>() });
            rep.push(
                "model",
                Status::Passed,
                format!("level {level}, b1 = {}, b2 = {}", b[1], b[2]),
                data,
            );
            Some(x)
        }
        Err(e) => {
            rep.error("model", &e);
            None
        }
    }
}

fn albanese(rep: &mut ObstructionReport, alg: &Arc<GradedAlgebra>) -> Option<()> {
    match exterior_subring_map(alg) {
        Ok((_, c)) => rep
            .check(
                "albanese",
                c.isomorphism,
                format!(
                    "∧^{} H^1 → H^{} has rank {}",
                    c.top_degree, c.top_degree, c.top_rank
                ),
                &c,
            )
            .then_some(()),
        Err(e) => {
            rep.error("albanese", &e);
            None
        }
    }
}

/// Degree-one kernels of the four subtorus classes, checked against the
/// kernels of the restriction maps.
fn subtorus_kernels(rep: &mut ObstructionReport, x: &XModel) -> Option<[Subspace; 4]> {
    let ks = [0, 1, 2, 3].map(|c| cup_kernel(&x.algebra, &x.subtorus_step(c).class(), 1));
    let agree = (0..4).all(|c| ks[c] == x.h1_restrictions[c].kernel_basis());
    let ranks: Vec<usize> = ks.iter().map(Subspace::dim).collect();
    rep.check(
        "subtorus_kernels",
        agree,
        format!("ranks {ranks:?}, equal to restriction kernels: {agree}"),
        json!({ "ranks": ranks }),
    )
    .then_some(ks)
}

/// `theorem-even`.
pub fn pipeline_theorem_even(cfg: &PipelineConfig) -> ObstructionReport {
    let mut rep = report_for("theorem-even", cfg);
    let run = |rep: &mut ObstructionReport| -> Option<()> {
        let t = prefix(rep, cfg)?;
        let x = build_model(rep, &t, cfg.level, None)?;
        albanese(rep, &x.algebra)?;
        let ks = subtorus_kernels(rep, &x)?;
        steps::recovery(rep, &t, &ks, cfg.tolerance)
    };
    run(&mut rep);
    rep.finish()
}

/// Split a degree-one vector of `X ⊗ Z` into its `H^1(X)` and `H^1(Z)` parts.
fn split_h1(xz: &GradedAlgebra, x: &GradedAlgebra, z: &GradedAlgebra, v: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let s = xz.from_coords(v, 1);
    let get = |i: usize| s.get(&i).cloned().unwrap_or_else(Q::zero);
    let xs = x
        .basis_in_degree(1)
        .iter()
        .map(|&i| get(xz.tensor_index(i, 0)))
        .collect();
    let zs = z
        .basis_in_degree(1)
        .iter()
        .map(|&j| get(xz.tensor_index(0, j)))
        .collect();
    (xs, zs)
}

fn tensor_one(xz: &GradedAlgebra, v: &SparseVec) -> SparseVec {
    v.iter()
        .map(|(&i, c)| (xz.tensor_index(i, 0), c.clone()))
        .collect()
}

/// `theorem-odd`: `X × F` with `F` an elliptic curve.
pub fn pipeline_theorem_odd(cfg: &PipelineConfig) -> ObstructionReport {
    let mut rep = report_for("theorem-odd", cfg);
    let run = |rep: &mut ObstructionReport| -> Option<()> {
        if cfg.factor.as_deref() != Some("elliptic") {
            rep.error(
                "config",
                &crate::Error::Config("theorem-odd needs factor = \"elliptic\"".into()),
            );
            return None;
        }
        let t = prefix(rep, cfg)?;
        // the exceptional divisor over point × F only exists at level 2
        let x = build_model(rep, &t, 2, None)?;
        let f = exterior_model(2).ok()?;
        let xf = tensor_model(&x.algebra, &f);
        let b1 = xf.betti_at(1);
        let h1x = x.algebra.betti_at(1);
        rep.push(
            "product",
            Status::Passed,
            format!("X × F: dim {}, b1 = {b1}", xf.dim()),
            json!({ "b1": b1, "top": xf.top_degree() }),
        );
        albanese(rep, &xf)?;
        let p = x.point_steps().next()?;
        let l = cup_kernel(&xf, &tensor_one(&xf, &p.class()), 1);
        let in_x = l
            .basis()
            .iter()
            .all(|v| split_h1(&xf, &x.algebra, &f, v).1.iter().all(Q::is_zero));
        if !rep.check(
            "point_kernel",
            l.dim() == h1x && in_x,
            format!(
                "L = ker ∪[{} × F] has rank {} inside H^1(T×T)",
                p.label,
                l.dim()
            ),
            json!({ "rank": l.dim(), "h1_rank": b1 }),
        ) {
            return None;
        }
        let mut ks = Vec::new();
        for c in 0..4 {
            let k = cup_kernel(&xf, &tensor_one(&xf, &x.subtorus_step(c).class()), 1);
            let parts: Vec<(Vec<Q>, Vec<Q>)> = k
                .basis()
                .iter()
                .map(|v| split_h1(&xf, &x.algebra, &f, v))
                .collect();
            if parts.iter().any(|(_, z)| z.iter().any(|q| !q.is_zero())) {
                rep.check(
                    "subtorus_kernels",
                    false,
                    format!("kernel of {} leaves L", SUBTORI[c]),
                    (),
                );
                return None;
            }
            ks.push(Subspace::from_spanning(
                h1x,
                parts.into_iter().map(|p| p.0).collect(),
            ));
        }
        let ranks: Vec<usize> = ks.iter().map(Subspace::dim).collect();
        rep.check(
            "subtorus_kernels",
            true,
            format!("L_i ⊂ L with ranks {ranks:?}"),
            json!({ "ranks": ranks }),
        );
        let ks: [Subspace; 4] = ks.try_into().ok()?;
        steps::recovery(rep, &t, &ks, cfg.tolerance)
    };
    run(&mut rep);
    rep.finish()
}

fn simply_connected_factor(name: &str) -> crate::Result<Arc<GradedAlgebra>> {
    match name.strip_prefix('p').and_then(|k| k.parse::<usize>().ok()) {
        Some(k) if (1..=4).contains(&k) => Ok(projective_space_model(k)),
        _ => Err(crate::Error::Config(format!(
            "factor {name:?} is not a simply connected model (use p1..p4)"
        ))),
    }
}

/// `deligne-q` / `deligne-c`: components of the locus where `∪α: H^1 → H^3`
/// is not injective, for `α ∈ P / P_0`.
pub fn pipeline_deligne(cfg: &PipelineConfig, mode: CoefficientMode) -> ObstructionReport {
    let name = if mode == CoefficientMode::Q {
        "deligne-q"
    } else {
        "deligne-c"
    };
    let mut rep = report_for(name, cfg);
    let run = |rep: &mut ObstructionReport| -> Option<()> {
        let mult = match mode {
            CoefficientMode::Q => None,
            CoefficientMode::C => {
                let m = cfg.multiplicities;
                if (0..4).any(|a| (a + 1..4).any(|b| m[a] == m[b])) {
                    rep.error(
                        "config",
                        &crate::Error::Config(format!(
                            "multiplicities {m:?} repeat; components would not be forced rational"
                        )),
                    );
                    return None;
                }
                Some(m)
            }
        };
        let factor = match cfg
            .factor
            .as_deref()
            .map(simply_connected_factor)
            .transpose()
        {
            Ok(f) => f,
            Err(e) => {
                rep.error("config", &e);
                return None;
            }
        };
        let t = prefix(rep, cfg)?;
        let x = build_model(rep, &t, cfg.level, mult)?;
        let (alg, lift): (Arc<GradedAlgebra>, Box<dyn Fn(&SparseVec) -> SparseVec>) = match &factor
        {
            None => (x.algebra.clone(), Box::new(|v: &SparseVec| v.clone())),
            Some(z) => {
                let xz = tensor_model(&x.algebra, z);
                let xz2 = xz.clone();
                (xz, Box::new(move |v: &SparseVec| tensor_one(&xz2, v)))
            }
        };
        let s = match obstruction_subspaces(&alg) {
            Ok(s) => s,
            Err(e) => {
                rep.error("p_subspaces", &e);
                return None;
            }
        };
        let h2 = alg.basis_in_degree(2);
        let dense = |v: &SparseVec| sparse::to_dense(&lift(v), h2);
        let pts = Subspace::from_spanning(
            h2.len(),
            x.point_steps().map(|p| dense(&p.class())).collect(),
        );
        let exc = Subspace::from_spanning(
            h2.len(),
            x.steps.iter().map(|st| dense(&st.class())).collect(),
        );
        let ok = s.p == exc && s.p0 == pts;
        rep.check(
            "p_subspaces",
            ok,
            format!(
                "dim P = {}, dim P0 = {}; P = exceptional span, P0 = point span: {ok}",
                s.p.dim(),
                s.p0.dim()
            ),
            json!({ "dim_p": s.p.dim(), "dim_p0": s.p0.dim() }),
        )
        .then_some(())?;

        let h1: Vec<SparseVec> = alg
            .basis_in_degree(1)
            .iter()
            .map(|&i| sparse::unit(i))
            .collect();
        let classes: Vec<KernelClass> = (0..4)
            .flat_map(|c| x.group_classes(c))
            .map(|(label, class)| {
                let class = lift(&class);
                let kernel = Some(cup_kernel(&alg, &class, 1));
                KernelClass {
                    label,
                    class,
                    kernel,
                }
            })
            .collect();
        let comps = match noninjective_locus_components(&classes) {
            Ok(c) => c,
            Err(e) => {
                rep.error("components", &e);
                return None;
            }
        };
        let verified = verify_components(&alg, &classes, &comps, &h1, cfg.seed);
        let mut dims: Vec<usize> = comps.iter().map(|c| c.0.dim).collect();
        dims.sort_unstable();
        let expected: Vec<usize> = match mult {
            None => vec![1; 4],
            Some(m) => {
                let mut m = m.to_vec();
                m.sort_unstable();
                m
            }
        };
        let distinct = dims.windows(2).all(|w| w[0] != w[1]);
        let rational = match mode {
            CoefficientMode::Q => true,
            CoefficientMode::C => distinct,
        };
        let data = json!({
            "components": comps.iter().map(|c| &c.0).collect::<Vec<_>>(),
            "verified_on_random_combinations": verified,
            "rational_forced": rational,
        });
        rep.check(
            "components",
            verified && dims == expected && rational,
            format!("{} components of dims {dims:?}", comps.len()),
            data,
        )
        .then_some(())?;

        // the common kernel of each component is the kernel of its subtorus
        let mut ks = Vec::new();
        for c in 0..4 {
            let comp = comps
                .iter()
                .find(|k| k.0.members.iter().any(|m| m == SUBTORI[c]))?;
            ks.push(comp.1.clone());
        }
        let ks: [Subspace; 4] = ks.try_into().ok()?;
        steps::recovery(rep, &t, &ks, cfg.tolerance)
    };
    run(&mut rep);
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: &[i64]) -> PipelineConfig {
        PipelineConfig::for_polynomial(p)
    }

    fn verdict(r: &ObstructionReport) -> Verdict {
        eprint!("{}", r.to_text());
        r.verdict
    }

    #[test]
    fn even_and_controls() {
        assert_eq!(
            verdict(&pipeline_theorem_even(&cfg(&[1, 1, 0, 0, 1]))),
            Verdict::ObstructionCertified
        );
        let r = pipeline_theorem_even(&cfg(&[1, 0, 0, 0, 1]));
        assert_eq!(verdict(&r), Verdict::Failed);
        assert!(r.diagnosis.unwrap().starts_with("galois"));
        let r = pipeline_theorem_even(&cfg(&[5, 0, -5, 0, 1]));
        assert_eq!(verdict(&r), Verdict::Failed);
        assert!(r.diagnosis.unwrap().starts_with("property_p"));
        let mut c = cfg(&[1, 1, 0, 0, 1]);
        c.level = 2;
        assert_eq!(
            verdict(&pipeline_theorem_even(&c)),
            Verdict::ObstructionCertified
        );
    }

    #[test]
    fn odd() {
        let mut c = cfg(&[1, 1, 0, 0, 1]);
        assert_eq!(verdict(&pipeline_theorem_odd(&c)), Verdict::Inconclusive);
        c.factor = Some("elliptic".into());
        assert_eq!(
            verdict(&pipeline_theorem_odd(&c)),
            Verdict::ObstructionCertified
        );
    }

    #[test]
    fn deligne() {
        let mut c = cfg(&[1, 1, 0, 0, 1]);
        assert_eq!(
            verdict(&pipeline_deligne(&c, CoefficientMode::Q)),
            Verdict::ObstructionCertified
        );
        assert_eq!(
            verdict(&pipeline_deligne(&c, CoefficientMode::C)),
            Verdict::ObstructionCertified
        );
        c.factor = Some("p2".into());
        assert_eq!(
            verdict(&pipeline_deligne(&c, CoefficientMode::Q)),
            Verdict::ObstructionCertified
        );
        c.factor = None;
        c.multiplicities = [2, 2, 3, 4];
        assert_eq!(
            verdict(&pipeline_deligne(&c, CoefficientMode::C)),
            Verdict::Inconclusive
        );
    }

    #[test]
    fn standalone() {
        assert_eq!(
            verdict(&pipeline_certify(&cfg(&[1, 1, 0, 0, 0, 0, 1]))),
            Verdict::ObstructionCertified
        );
        assert_eq!(
            verdict(&pipeline_build_torus(&cfg(&[1, 1, 0, 0, 1]))),
            Verdict::ObstructionCertified
        );
        assert_eq!(
            verdict(&pipeline_ns_check(&cfg(&[1, 1, 0, 0, 1]))),
            Verdict::ObstructionCertified
        );
    }

    #[test]
    fn kummer() {
        let c = cfg(&[1, 1, 0, 0, 0, 0, 1]);
        assert_eq!(verdict(&pipeline_kummer(&c)), Verdict::ObstructionCertified);
        assert_eq!(
            verdict(&pipeline_kummer(&cfg(&[1, 1, 0, 0, 1]))),
            Verdict::Inconclusive
        );
        let mut bad = c.clone();
        bad.kummer.diag_c1_shift = vec![[1, 2, 1]];
        let r = pipeline_kummer(&bad);
        assert_eq!(verdict(&r), Verdict::Failed);
        assert!(r.diagnosis.unwrap().starts_with("q_vanishing"));
    }
}
