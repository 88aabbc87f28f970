//! Acceptance run: one line per criterion, nonzero exit if any is red.
//! Every numeric expectation is recomputed here by a route independent of
//! the code under test where one exists (closed-form discriminants, grid
//! sign changes, polynomial evaluation, the projection formula).

use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hodge_obstruct::linalg::{q, similar, IntMatrix, Q};
use hodge_obstruct::pipeline::{self, CoefficientMode, PipelineConfig, Verdict};
use hodge_obstruct::poly::{
    certify_symmetric_galois, check_property_p, intersection_counts, is_prime,
    sturm_real_root_count, GaloisVerdict, IntPolynomial,
};
use hodge_obstruct::ring::{
    blow_up, build_kummer_pair, build_x1_model, build_x_model, cup_kernel, decomposable_span,
    kummer_model, noninjective_locus_components, point_model, projective_space_model, q_form,
    sparse, BlowupSpec, GradedAlgebra, KernelClass, SparseVec, XModel,
};
use hodge_obstruct::torus::{
    build_torus, kernel_sublattices, ns_orbit_analysis, recover_endomorphism, GroupModel, ProductH1,
};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

// ---- 1

fn galois() -> Check {
    // x^4 + p x + r: disc = -27 p^4 + 256 r^3, resolvent y^3 - 4r y - p^2
    let quartic_disc = |p: i64, r: i64| BigInt::from(-27 * p.pow(4) + 256 * r.pow(3));
    let c = certify_symmetric_galois(&poly(&[1, 1, 0, 0, 1]), 1000).map_err(e)?;
    ensure(
        c.verdict == GaloisVerdict::Certified,
        "x^4+x+1 not certified",
    )?;
    ensure(
        c.discriminant == quartic_disc(1, 1) && c.discriminant == BigInt::from(229),
        "disc(x^4+x+1) != 229",
    )?;
    ensure(!c.discriminant_is_square, "229 reported square")?;
    let cubic = hodge_obstruct::poly::resolvent_cubic(&poly(&[1, 1, 0, 0, 1])).map_err(e)?;
    ensure(cubic == poly(&[-1, -4, 0, 1]), format!("resolvent {cubic}"))?;
    for y in [-1i64, 1] {
        ensure(
            !cubic.eval(&y.into()).is_zero(),
            "resolvent has a rational root",
        )?;
    }

    let r = certify_symmetric_galois(&poly(&[1, 0, 0, 0, 1]), 1000).map_err(e)?;
    ensure(r.verdict == GaloisVerdict::Refuted, "x^4+1 not refuted")?;
    ensure(
        r.discriminant == quartic_disc(0, 1) && r.discriminant_is_square,
        "disc(x^4+1) != 256 = 16^2",
    )?;

    let f6 = poly(&[1, 1, 0, 0, 0, 0, 1]);
    let s = certify_symmetric_galois(&f6, 1000).map_err(e)?;
    ensure(
        s.verdict == GaloisVerdict::Certified,
        "x^6+x+1 not certified",
    )?;
    let ws = [
        &s.irreducible_witness,
        &s.transposition_witness,
        &s.long_cycle_witness,
    ];
    for w in ws {
        let w = w.as_ref().ok_or("missing witness")?;
        ensure(
            w.prime <= 1000 && is_prime(w.prime),
            format!("bad witness prime {}", w.prime),
        )?;
        // linear factors = roots in F_p, counted by brute force
        let p = w.prime as i64;
        let roots = (0..p).filter(|&x| (x.pow(6) + x + 1) % p == 0).count();
        let ones = w.pattern.iter().filter(|&&d| d == 1).count();
        ensure(
            roots == ones,
            format!("pattern {:?} mod {p} has {roots} roots", w.pattern),
        )?;
    }
    Ok(format!(
        "disc 229 / 256 / S6 witnesses at p = {:?}",
        ws.iter()
            .map(|w| w.as_ref().unwrap().prime)
            .collect::<Vec<_>>()
    ))
}

// ---- 2

fn grid_sign_changes(f: &IntPolynomial) -> usize {
    // exact evaluation on k/1000, |x| ≤ 4; enough for the simple roots used here
    let val = |k: i64| -> Q {
        let x = Q::new(k.into(), 1000.into());
        f.coeffs()
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * &x + Q::from_integer(c.clone()))
    };
    let mut changes = 0;
    let mut prev = val(-4000);
    for k in -3999..=4000 {
        let v = val(k);
        if (prev.is_positive() && v.is_negative()) || (prev.is_negative() && v.is_positive()) {
            changes += 1;
        }
        prev = v;
    }
    changes
}

fn sturm() -> Check {
    let a = poly(&[1, 1, 0, 0, 1]);
    let b = poly(&[5, 0, -5, 0, 1]);
    let (ra, rb) = (
        sturm_real_root_count(&a).map_err(e)?,
        sturm_real_root_count(&b).map_err(e)?,
    );
    ensure(
        ra == 0 && grid_sign_changes(&a) == 0,
        format!("x^4+x+1: {ra} real roots"),
    )?;
    ensure(
        rb == 4 && grid_sign_changes(&b) == 4,
        format!("x^4-5x^2+5: {rb} real roots"),
    )?;
    ensure(check_property_p(&a).map_err(e)?.holds, "x^4+x+1 fails (P)")?;
    let c = check_property_p(&poly(&[1, 0, 2, 0, 1])).map_err(e)?;
    ensure(!c.squarefree && !c.holds, "(x^2+1)^2 reported squarefree")?;
    Ok("0 / 4 real roots; (x^2+1)^2 not squarefree".into())
}

// ---- 3

fn ns() -> Check {
    let mut bounds = Vec::new();
    for f in [
        poly(&[1, 1, 0, 0, 1]),
        poly(&[1, 1, 0, 0, 0, 0, 1]),
        poly(&[3, 1, 0, 0, 1]),
    ] {
        let c = certify_symmetric_galois(&f, 1000).map_err(e)?;
        ensure(
            c.verdict == GaloisVerdict::Certified,
            format!("{f} not certified"),
        )?;
        let r = ns_orbit_analysis(
            &build_torus(&f, None).map_err(e)?,
            Some(&GroupModel::Symmetric),
        )
        .map_err(e)?;
        ensure(
            r.ns_rank_bound == 0,
            format!("{f}: bound {}", r.ns_rank_bound),
        )?;
        bounds.push(r.ns_rank_bound);
    }
    let elliptic = ns_orbit_analysis(
        &build_torus(&poly(&[1, 0, 1]), None).map_err(e)?,
        Some(&GroupModel::Symmetric),
    )
    .map_err(e)?;
    ensure(elliptic.ns_rank_bound >= 1, "n = 1 control gave bound 0")?;
    let v4 = GroupModel::Generators {
        generators: vec![vec![1, 0, 3, 2], vec![3, 2, 1, 0]],
    };
    let klein = ns_orbit_analysis(
        &build_torus(&poly(&[1, 0, 0, 0, 1]), None).map_err(e)?,
        Some(&v4),
    )
    .map_err(e)?;
    ensure(klein.ns_rank_bound >= 1, "Klein-four control gave bound 0")?;
    Ok(format!(
        "certified bounds {bounds:?}; controls n=1 → {}, V4 → {}",
        elliptic.ns_rank_bound, klein.ns_rank_bound
    ))
}

// ---- 4

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut g = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        for col in 0..n {
            let v = g.get(i, col) + &c * g.get(j, col);
            g.set(i, col, v);
        }
    }
    g
}

fn recovery() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut found = [0usize; 2];
    let mut tries = 0;
    while found.iter().sum::<usize>() < 25 {
        tries += 1;
        ensure(tries < 100_000, "could not sample enough polynomials")?;
        let deg = if found[0] < 13 { 4 } else { 6 };
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-4..=4)).collect();
        c.push(1);
        let f = poly(&c);
        let (f0, f1) = (f.eval(&0.into()), f.eval(&1.into()));
        if f0.is_zero() || f1.is_zero() || !check_property_p(&f).map_err(e)?.holds {
            continue;
        }
        let phi_t = f.companion().transpose();
        let ls = kernel_sublattices(&ProductH1::new(phi_t.clone()));
        let psi = recover_endomorphism(&ls).map_err(e)?;
        ensure(psi == phi_t.to_rational(), format!("{f}: ψ != ᵗφ"))?;
        for _ in 0..10 {
            let g = random_unimodular(&mut rng, 2 * deg);
            ensure(
                g.abs_det() == BigInt::from(1),
                "sampled matrix not unimodular",
            )?;
            let psi_g = recover_endomorphism(&ls.transform(&g)).map_err(e)?;
            ensure(
                similar(&psi_g, &phi_t.to_rational()).map_err(e)?.similar,
                format!("{f}: not similar after change"),
            )?;
        }
        found[(deg - 4) / 2] += 1;
    }
    Ok(format!(
        "{} quartics, {} sextics, 10 basis changes each",
        found[0], found[1]
    ))
}

// ---- 5

fn anchors_blowup(k: usize) -> Result<Q, String> {
    let base = projective_space_model(k);
    let restriction: Vec<SparseVec> = (0..base.dim())
        .map(|i| {
            if i == 0 {
                sparse::unit(0)
            } else {
                SparseVec::new()
            }
        })
        .collect();
    let (bl, _) = blow_up(
        base,
        BlowupSpec::trivial_normal("p", point_model(), restriction, k),
    )
    .map_err(e)?;
    let ex = bl.as_blowup().unwrap().exceptional_class();
    Ok(bl.integrate(&bl.pow(&ex, k)))
}

/// Betti formula on every step of the chain; with `pairing`, also check
/// `∫ τ*a τ*b = ∫ ab` on each base, which forces `τ*` to be injective.
fn check_chain(alg: &Arc<GradedAlgebra>, pairing: bool) -> Result<usize, String> {
    let mut cur = alg.clone();
    let mut steps = 0;
    while let Some(b) = cur.as_blowup() {
        let (base, z, r) = (&b.base, &b.center, b.codim);
        for k in 0..=cur.top_degree() {
            let extra: usize = (1..r)
                .filter(|i| 2 * i <= k)
                .map(|i| z.betti_at(k - 2 * i))
                .sum();
            ensure(
                cur.betti_at(k) == base.betti_at(k) + extra,
                format!("{}: b_{k}", cur.name()),
            )?;
        }
        if pairing {
            for k in 0..=base.top_degree() {
                for &i in base.basis_in_degree(k) {
                    for &j in base.basis_in_degree(base.top_degree() - k) {
                        let (u, v) = (sparse::unit(i), sparse::unit(j));
                        ensure(
                            cur.integrate(&cur.mul(&u, &v)) == base.integrate(&base.mul(&u, &v)),
                            format!("{}: projection formula", cur.name()),
                        )?;
                    }
                }
            }
            ensure(
                base.pairing_nondegenerate(),
                format!("{}: degenerate base", base.name()),
            )?;
        }
        steps += 1;
        let next = b.base.clone();
        cur = next;
    }
    Ok(steps)
}

fn blowups() -> Check {
    ensure(anchors_blowup(2)? == q(-1), "∫e^2 != -1")?;
    ensure(anchors_blowup(3)? == q(1), "∫e^3 != 1")?;
    let phi = poly(&[1, 1, 0, 0, 1]).companion();
    let mut steps = 0;
    for level in [1u8, 2] {
        let x = build_x_model(&phi, level).map_err(e)?;
        steps += check_chain(&x.algebra, true)?;
        for c in 0..4 {
            let k = cup_kernel(&x.algebra, &x.subtorus_step(c).class(), 1);
            ensure(
                k == x.h1_restrictions[c].kernel_basis(),
                format!("level {level} center {c}: kernel mismatch"),
            )?;
        }
    }
    steps += check_chain(
        &build_x1_model(&phi, 1, &[1, 2, 3, 4]).map_err(e)?.algebra,
        true,
    )?;
    steps += check_chain(&kummer_model(3).map_err(e)?.0, true)?;
    let pair = build_kummer_pair(&poly(&[1, 1, 0, 0, 0, 0, 1]).companion(), None).map_err(e)?;
    steps += check_chain(&pair.algebra, false)?;
    steps += check_chain(&pair.graph_center, true)?;
    Ok(format!(
        "∫e^2 = -1, ∫e^3 = 1; Betti formula on {steps} blow-up steps"
    ))
}

// ---- 6

fn component_dims(x: &XModel) -> Result<Vec<usize>, String> {
    let classes: Vec<KernelClass> = (0..4)
        .flat_map(|c| x.group_classes(c))
        .map(|(label, class)| {
            let kernel = Some(cup_kernel(&x.algebra, &class, 1));
            KernelClass {
                label,
                class,
                kernel,
            }
        })
        .collect();
    let mut d: Vec<usize> = noninjective_locus_components(&classes)
        .map_err(e)?
        .iter()
        .map(|(c, _)| c.dim)
        .collect();
    d.sort_unstable();
    Ok(d)
}

fn deligne() -> Check {
    let phi = poly(&[1, 1, 0, 0, 1]).companion();
    let d = component_dims(&build_x_model(&phi, 1).map_err(e)?)?;
    ensure(d == [1, 1, 1, 1], format!("X: {d:?}"))?;
    let d1 = component_dims(&build_x1_model(&phi, 1, &[1, 2, 3, 4]).map_err(e)?)?;
    ensure(d1 == [1, 2, 3, 4], format!("X1: {d1:?}"))?;
    Ok(format!("X {d:?}, X1 {d1:?}"))
}

// ---- 7

fn kummer() -> Check {
    let (k, _) = kummer_model(3).map_err(e)?;
    // C(2n, 2) invariant 2-forms plus 2^{2n} exceptional divisors
    let n = 3;
    let expected = n * (2 * n - 1) + (1 << (2 * n));
    ensure(
        k.betti_at(2) == expected && expected == 79,
        format!("b2(K) = {}", k.betti_at(2)),
    )?;
    let phi = poly(&[1, 1, 0, 0, 0, 0, 1]).companion();
    let x = build_kummer_pair(&phi, None).map_err(e)?;
    let a2 = x.a2_basis();
    let w = a2.len() / 2;
    for blk in a2.chunks(w) {
        ensure(
            decomposable_span(&x.algebra, blk).map_err(e)?.dim() == w,
            "decomposable span is not the block",
        )?;
    }
    let mut tested = 0;
    for (label, c) in x.exceptional_classes() {
        let m = q_form(&x.algebra, &c, &a2).map_err(e)?;
        ensure(m.is_zero(), format!("q_c nonzero for {label}"))?;
        tested += 1;
    }
    let wi = x.wedge2_indices();
    let v: Vec<SparseVec> = [0b011usize, 0b101]
        .iter()
        .filter_map(|&mk| {
            wi.iter()
                .position(|&i| x.layout.masks[i] == mk)
                .map(|p| a2[p].clone())
        })
        .collect();
    ensure(v.len() == 2, "V not found")?;
    ensure(
        v.iter()
            .all(|a| v.iter().all(|b| x.algebra.mul(a, b).is_empty())),
        "V not totally isotropic",
    )?;

    let report = pipeline::pipeline_kummer(
        &PipelineConfig::load(&configs().join("kummer.toml")).map_err(e)?,
    );
    ensure(
        report.verdict == Verdict::ObstructionCertified,
        "kummer pipeline not certified",
    )?;
    let bad =
        PipelineConfig::load(&configs().join("controls/kummer-normal-bundle.toml")).map_err(e)?;
    let neg = pipeline::pipeline_kummer(&bad);
    let q_step = neg
        .steps
        .iter()
        .find(|s| s.name == "q_vanishing")
        .ok_or("no q_vanishing step in control")?;
    ensure(
        neg.verdict == Verdict::Failed && q_step.status == pipeline::Status::Failed,
        "negative control did not produce a nonzero table",
    )?;
    Ok(format!("b2 = 79, blocks {w}+{w} decomposable, q ≡ 0 for {tested} classes, V of dim 2, control nonzero"))
}

// ---- 8

fn intersections() -> Check {
    let c = intersection_counts(&poly(&[1, 1, 0, 0, 1]).companion()).map_err(e)?;
    ensure(
        c.n == BigInt::from(3) && c.m == BigInt::from(1),
        format!("(N, |det φ|) = ({}, {})", c.n, c.m),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 50 {
        let d = 2 * rng.gen_range(1..=4);
        let mut co: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
        co.push(1);
        let f = poly(&co);
        // both intersections must be transverse
        if f.eval(&0.into()).is_zero() || f.eval(&1.into()).is_zero() {
            continue;
        }
        done += 1;
        let c = intersection_counts(&f.companion()).map_err(e)?;
        let (f1, f0) = (f.eval(&1.into()).abs(), f.eval(&0.into()).abs());
        ensure(
            c.n == f1 && c.m == f0,
            format!("{f}: ({}, {}) vs ({f1}, {f0})", c.n, c.m),
        )?;
        ensure(
            c.m == f.companion().abs_det(),
            format!("{f}: |det| mismatch"),
        )?;
    }
    Ok("(3, 1); 50 random companions match (|f(1)|, |f(0)|)".into())
}

// ---- 9

fn determinism() -> Check {
    let load = |p: &str| PipelineConfig::load(&configs().join(p)).map_err(e);
    let runs: Vec<(&str, Box<dyn Fn() -> Result<String, String>>)> = vec![
        (
            "certify-poly",
            Box::new(move || Ok(pipeline::pipeline_certify(&load("default.toml")?).to_json())),
        ),
        (
            "build-torus",
            Box::new(move || Ok(pipeline::pipeline_build_torus(&load("default.toml")?).to_json())),
        ),
        (
            "ns-check",
            Box::new(move || Ok(pipeline::pipeline_ns_check(&load("default.toml")?).to_json())),
        ),
        (
            "theorem-even",
            Box::new(move || Ok(pipeline::pipeline_theorem_even(&load("level2.toml")?).to_json())),
        ),
        (
            "theorem-odd",
            Box::new(move || Ok(pipeline::pipeline_theorem_odd(&load("odd.toml")?).to_json())),
        ),
        (
            "deligne-q",
            Box::new(move || {
                Ok(
                    pipeline::pipeline_deligne(&load("default.toml")?, CoefficientMode::Q)
                        .to_json(),
                )
            }),
        ),
        (
            "deligne-c",
            Box::new(move || {
                Ok(
                    pipeline::pipeline_deligne(&load("deligne-c.toml")?, CoefficientMode::C)
                        .to_json(),
                )
            }),
        ),
        (
            "kummer",
            Box::new(move || Ok(pipeline::pipeline_kummer(&load("kummer.toml")?).to_json())),
        ),
    ];
    for (name, run) in &runs {
        let (a, b) = (run()?, run()?);
        ensure(a == b, format!("{name}: reports differ"))?;
    }
    Ok(format!(
        "{} pipelines byte-identical across two runs",
        runs.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("galois certification", galois),
        ("sturm / condition (P)", sturm),
        ("NS vanishing", ns),
        ("kernel recovery round trip", recovery),
        ("blow-up engine anchors", blowups),
        ("deligne components", deligne),
        ("kummer pipeline", kummer),
        ("intersection counts", intersections),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = std::time::Instant::now();
        match f() {
            Ok(msg) => println!(
                "criterion {} {name}: pass ({msg}) [{:.1?}]",
                i + 1,
                t.elapsed()
            ),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({msg})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
