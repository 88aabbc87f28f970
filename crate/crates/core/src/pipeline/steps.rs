//! Steps shared by the pipelines. Each returns `None` once the run must stop.

use serde_json::json;

use super::report::{matrix_rows, ObstructionReport, Status};
use super::PipelineConfig;
use crate::linalg::{similar, IntegerLattice, Subspace};
use crate::poly::{
    certify_symmetric_galois, check_property_p, intersection_counts, GaloisCertificate,
    GaloisVerdict, IntPolynomial,
};
use crate::torus::{
    build_torus, hodge_compatibility, ns_orbit_analysis, recover_endomorphism,
    verify_torus_decomposition, GroupModel, HodgeAmbient, HodgeMethod, KernelLattices, TorusDatum,
};

pub(crate) fn property_p(rep: &mut ObstructionReport, f: &IntPolynomial) -> Option<()> {
    match check_property_p(f) {
        Ok(r) => {
            let summary = if r.holds {
                format!("squarefree of degree {}, no real roots", r.degree)
            } else {
                r.diagnosis.clone()
            };
            rep.check("property_p", r.holds, summary, &r).then_some(())
        }
        Err(e) => {
            rep.check("property_p", false, e.to_string(), ());
            None
        }
    }
}

pub(crate) fn galois(
    rep: &mut ObstructionReport,
    f: &IntPolynomial,
    bound: u64,
) -> Option<GaloisCertificate> {
    match certify_symmetric_galois(f, bound) {
        Ok(c) => {
            let status = match c.verdict {
                GaloisVerdict::Certified => Status::Passed,
                GaloisVerdict::Refuted => Status::Failed,
                GaloisVerdict::Inconclusive => Status::Inconclusive,
            };
            let summary = format!("S_{}: {}", c.degree, c.reason);
            rep.push("galois", status, summary, &c).then_some(c)
        }
        Err(e) => {
            rep.error("galois", &e);
            None
        }
    }
}

pub(crate) fn torus(rep: &mut ObstructionReport, cfg: &PipelineConfig) -> Option<TorusDatum> {
    match build_torus(&cfg.poly(), cfg.selection_flip.as_deref()) {
        Ok(t) => {
            let data = json!({
                "n": t.n,
                "selection": t.roots.selection,
                "phi": t.phi.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            rep.push(
                "torus",
                Status::Passed,
                format!("T of dimension {} with φ = companion(f)", t.n),
                data,
            );
            Some(t)
        }
        Err(e) => {
            rep.error("torus", &e);
            None
        }
    }
}

pub(crate) fn ns(rep: &mut ObstructionReport, t: &TorusDatum, cfg: &PipelineConfig) -> Option<()> {
    let group = cfg.group.clone().unwrap_or(GroupModel::Symmetric);
    match ns_orbit_analysis(t, Some(&group)) {
        Ok(r) => rep
            .check(
                "ns_vanishing",
                r.ns_rank_bound == 0,
                format!("NS rank bound {}", r.ns_rank_bound),
                &r,
            )
            .then_some(()),
        Err(e) => {
            rep.error("ns_vanishing", &e);
            None
        }
    }
}

pub(crate) fn intersections(rep: &mut ObstructionReport, t: &TorusDatum) -> Option<()> {
    match intersection_counts(&t.phi) {
        Ok(c) => rep
            .push(
                "intersections",
                Status::Passed,
                format!("N = {}, |det φ| = {}", c.n, c.m),
                &c,
            )
            .then_some(()),
        Err(e) => {
            rep.check("intersections", false, e.to_string(), ());
            None
        }
    }
}

/// Saturated kernel lattices, Hodge compatibility, decomposition and the
/// recovery of `ᵗφ` from the four kernels (in `H^1(T × T)` coordinates).
pub(crate) fn recovery(
    rep: &mut ObstructionReport,
    t: &TorusDatum,
    kernels: &[Subspace; 4],
    tol: f64,
) -> Option<()> {
    let ls = KernelLattices {
        l: kernels.clone().map(|k| IntegerLattice::from_subspace(&k)),
    };
    let amb = HodgeAmbient::torus(t);
    let amb = amb.product(&amb);
    let mut checks = Vec::new();
    for l in &ls.l {
        match hodge_compatibility(l, &amb, tol) {
            Ok(c) => checks.push(c),
            Err(e) => {
                rep.error("hodge_kernels", &e);
                return None;
            }
        }
    }
    let status = if checks.iter().any(|c| c.method == HodgeMethod::Inconclusive) {
        Status::Inconclusive
    } else if checks.iter().all(|c| c.compatible) {
        Status::Passed
    } else {
        Status::Failed
    };
    if !rep.push(
        "hodge_kernels",
        status,
        "kernels are sub-Hodge structures of H^1(T×T)",
        &checks,
    ) {
        return None;
    }
    let d = verify_torus_decomposition(&ls);
    let summary = format!(
        "ranks {:?}, direct sum {}, graphs {}/{}",
        d.ranks, d.direct_sum, d.l3_graph, d.l4_graph
    );
    if !rep.check("decomposition", d.passed, summary, &d) {
        return None;
    }
    let psi = match recover_endomorphism(&ls) {
        Ok(p) => p,
        Err(e) => {
            rep.error("recovery", &e);
            return None;
        }
    };
    let target = t.phi_star().to_rational();
    match similar(&psi, &target) {
        Ok(s) => {
            let data =
                json!({ "psi": matrix_rows(&psi), "equal": psi == target, "similar": s.similar });
            rep.check(
                "recovery",
                s.similar,
                format!("ψ similar to ᵗφ: {}, equal: {}", s.similar, psi == target),
                data,
            )
            .then_some(())
        }
        Err(e) => {
            rep.error("recovery", &e);
            None
        }
    }
}
