//! Cohomology of a blow-up `Ỹ = Bl_Z Y` along a center of codimension `r`.
//!
//! Additively `H*(Ỹ) = τ* H*(Y) ⊕ ⊕_{k=0}^{r-2} u_{·,k} H*(Z)` where
//! `u_{z,k} = j_*(π* z · ξ^k)`, `j: E → Ỹ` the exceptional divisor and
//! `ξ = [E]|_E = c_1(O_E(-1))`. Products come from the projection formula,
//! `j^* j_* = ·ξ`, the key formula
//! `τ^* i_* v = j_*(π^* v · c_{r-1}(π^* N / O(-1)))` and the relation
//! `ξ^r = Σ_{i≥1} (-1)^{i+1} c_i ξ^{r-i}`.
//! With this sign choice `∫ e^2 = -1` for a point on a surface and
//! `∫ e^3 = 1` for a point on a threefold.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::algebra::{GradedAlgebra, Kind};
use super::morphism::AlgebraMorphism;
use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{q, Q};

/// Center data for one blow-up.
#[derive(Clone)]
pub struct BlowupSpec {
    pub label: String,
    pub center: Arc<GradedAlgebra>,
    /// Restriction `i^*: H*(Y) → H*(Z)`, one image per basis element of `Y`.
    pub restriction: Vec<SparseVec>,
    pub codim: usize,
    /// `c_1 .. c_r` of the normal bundle, as elements of `H*(Z)`.
    pub chern: Vec<SparseVec>,
}

impl BlowupSpec {
    /// Normal bundle with vanishing Chern classes.
    pub fn trivial_normal(
        label: &str,
        center: Arc<GradedAlgebra>,
        restriction: Vec<SparseVec>,
        codim: usize,
    ) -> Self {
        Self {
            label: label.into(),
            center,
            restriction,
            codim,
            chern: vec![SparseVec::new(); codim],
        }
    }
}

pub enum Part {
    Pullback(usize),
    Exceptional { z: usize, k: usize },
}

pub struct Blowup {
    pub base: Arc<GradedAlgebra>,
    pub center: Arc<GradedAlgebra>,
    pub restriction: Vec<SparseVec>,
    pub codim: usize,
    pub chern: Vec<SparseVec>,
    pub label: String,
    push_cache: Mutex<HashMap<usize, SparseVec>>,
    j_cache: Mutex<HashMap<(usize, usize), SparseVec>>,
    /// `(b, restrict(b^∨))` for every base basis element of a given degree.
    dual_cache: Mutex<HashMap<usize, Arc<Vec<(usize, SparseVec)>>>>,
}

fn validate(base: &GradedAlgebra, s: &BlowupSpec) -> Result<()> {
    let bad = |m: String| Err(Error::BlowupSpec(format!("{}: {m}", s.label)));
    if s.codim < 2 {
        return bad(format!("codimension {} < 2", s.codim));
    }
    if s.center.top_degree() + 2 * s.codim != base.top_degree() {
        return bad(format!(
            "center top degree {} + 2·{} != {}",
            s.center.top_degree(),
            s.codim,
            base.top_degree()
        ));
    }
    if s.restriction.len() != base.dim() {
        return bad(format!(
            "{} restriction images for {} basis elements",
            s.restriction.len(),
            base.dim()
        ));
    }
    for (i, img) in s.restriction.iter().enumerate() {
        if img.keys().any(|&z| s.center.degree(z) != base.degree(i)) {
            return bad(format!("restriction of basis element {i} changes degree"));
        }
    }
    if s.chern.len() != s.codim {
        return bad(format!(
            "{} Chern classes for codimension {}",
            s.chern.len(),
            s.codim
        ));
    }
    for (i, c) in s.chern.iter().enumerate() {
        if c.keys().any(|&z| s.center.degree(z) != 2 * (i + 1)) {
            return bad(format!("c_{} is not of degree {}", i + 1, 2 * (i + 1)));
        }
    }
    Ok(())
}

/// Blow up `base` along the center in `spec`; returns `Ỹ` and `τ^*`.
pub fn blow_up(
    base: Arc<GradedAlgebra>,
    spec: BlowupSpec,
) -> Result<(Arc<GradedAlgebra>, AlgebraMorphism)> {
    validate(&base, &spec)?;
    let r = spec.codim;
    let zdim = spec.center.dim();
    let mut degrees: Vec<usize> = (0..base.dim()).map(|i| base.degree(i)).collect();
    for k in 0..r - 1 {
        for z in 0..zdim {
            degrees.push(spec.center.degree(z) + 2 * k + 2);
        }
    }
    let name = format!("Bl[{}]({})", spec.label, base.name());
    let top = base.top_degree();
    let bl = Blowup {
        base: base.clone(),
        center: spec.center,
        restriction: spec.restriction,
        codim: r,
        chern: spec.chern,
        label: spec.label,
        push_cache: Mutex::new(HashMap::new()),
        j_cache: Mutex::new(HashMap::new()),
        dual_cache: Mutex::new(HashMap::new()),
    };
    let alg = Arc::new(GradedAlgebra::from_parts(
        name,
        degrees,
        top,
        Kind::Blowup(Box::new(bl)),
    ));
    let tau = AlgebraMorphism::new(
        base.clone(),
        alg.clone(),
        (0..base.dim()).map(sparse::unit).collect(),
    )?;
    Ok((alg, tau))
}

/// Apply the specs in order; each spec's restriction must already be
/// expressed on the algebra produced by the previous step, so the specs
/// are produced lazily from the current algebra.
pub fn iterated_blow_up<F>(
    base: Arc<GradedAlgebra>,
    steps: usize,
    mut spec_for: F,
) -> Result<Arc<GradedAlgebra>>
where
    F: FnMut(usize, &Arc<GradedAlgebra>) -> Result<BlowupSpec>,
{
    let mut cur = base;
    for s in 0..steps {
        let spec = spec_for(s, &cur)?;
        cur = blow_up(cur, spec)?.0;
    }
    Ok(cur)
}

impl Blowup {
    pub fn zdim(&self) -> usize {
        self.center.dim()
    }

    pub fn u_index(&self, z: usize, k: usize) -> usize {
        self.base.dim() + k * self.zdim() + z
    }

    pub fn part(&self, i: usize) -> Part {
        let b = self.base.dim();
        if i < b {
            Part::Pullback(i)
        } else {
            Part::Exceptional {
                z: (i - b) % self.zdim(),
                k: (i - b) / self.zdim(),
            }
        }
    }

    /// The exceptional divisor class `[E] = u_{1,0}`.
    pub fn exceptional_class(&self) -> SparseVec {
        sparse::unit(self.u_index(0, 0))
    }

    pub(crate) fn label(&self, i: usize) -> String {
        match self.part(i) {
            Part::Pullback(a) => self.base.label(a),
            Part::Exceptional { z, k } => {
                let zl = self.center.label(z);
                match k {
                    0 => format!("E[{}]({zl})", self.label),
                    _ => format!("E[{}]({zl})ξ^{k}", self.label),
                }
            }
        }
    }

    pub(crate) fn exceptional_in_degree(&self, alg: &GradedAlgebra, k: usize) -> Vec<usize> {
        alg.basis_in_degree(k)
            .iter()
            .copied()
            .filter(|&i| i >= self.base.dim())
            .collect()
    }

    pub fn restrict(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in v {
            sparse::axpy(&mut out, c, &self.restriction[i]);
        }
        out
    }

    /// Gysin pushforward `i_* z` of a center basis element, in the base.
    pub fn pushforward(&self, z: usize) -> Result<SparseVec> {
        if let Some(v) = self.push_cache.lock().unwrap().get(&z) {
            return Ok(v.clone());
        }
        let dz = self.center.degree(z);
        let comp = self.center.basis_in_degree(self.center.top_degree() - dz);
        let mut row: HashMap<usize, Q> = HashMap::new();
        for &c in comp {
            let x = self.center.integrate(&self.center.mul_basis(z, c));
            if !x.is_zero() {
                row.insert(c, x);
            }
        }
        let mut out = SparseVec::new();
        for (b, r) in self.restricted_duals(dz + 2 * self.codim)?.iter() {
            let coef: Q = r
                .iter()
                .filter_map(|(c, x)| row.get(c).map(|y| x * y))
                .sum();
            sparse::add_coeff(&mut out, *b, coef);
        }
        self.push_cache.lock().unwrap().insert(z, out.clone());
        Ok(out)
    }

    fn restricted_duals(&self, degree: usize) -> Result<Arc<Vec<(usize, SparseVec)>>> {
        if let Some(v) = self.dual_cache.lock().unwrap().get(&degree) {
            return Ok(v.clone());
        }
        let mut v = Vec::new();
        for &b in self.base.basis_in_degree(degree) {
            let r = self.restrict(&self.base.dual(b)?);
            if !r.is_empty() {
                v.push((b, r));
            }
        }
        let v = Arc::new(v);
        self.dual_cache.lock().unwrap().insert(degree, v.clone());
        Ok(v)
    }

    /// `J(z, m) = j_*(π^* z · ξ^m)` for a center basis element.
    fn j_basis(&self, alg: &GradedAlgebra, z: usize, m: usize) -> SparseVec {
        if self.center.degree(z) + 2 * m + 2 > alg.top_degree() {
            return SparseVec::new();
        }
        let r = self.codim;
        if m + 2 <= r {
            return sparse::unit(self.u_index(z, m));
        }
        if let Some(v) = self.j_cache.lock().unwrap().get(&(z, m)) {
            return v.clone();
        }
        let mut out = SparseVec::new();
        if m + 1 == r {
            let sign = if (r - 1).is_multiple_of(2) {
                q(1)
            } else {
                q(-1)
            };
            let push = self.pushforward(z).expect("pairing on the base is perfect");
            sparse::axpy(&mut out, &sign, &push);
            for i in 1..r {
                let zc = self.center.mul(&sparse::unit(z), &self.chern[i - 1]);
                let s = if i % 2 == 0 { q(-1) } else { q(1) };
                for (w, c) in zc {
                    sparse::add_coeff(&mut out, self.u_index(w, r - 1 - i), &s * c);
                }
            }
        } else {
            for i in 1..=r {
                let zc = self.center.mul(&sparse::unit(z), &self.chern[i - 1]);
                let s = if i % 2 == 1 { q(1) } else { q(-1) };
                for (w, c) in zc {
                    let jw = self.j_basis(alg, w, m - i);
                    sparse::axpy(&mut out, &(&s * c), &jw);
                }
            }
        }
        self.j_cache.lock().unwrap().insert((z, m), out.clone());
        out
    }

    pub(crate) fn j_vec(&self, alg: &GradedAlgebra, v: &SparseVec, m: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (&z, c) in v {
            sparse::axpy(&mut out, c, &self.j_basis(alg, z, m));
        }
        out
    }

    fn u_from_center(&self, v: SparseVec, k: usize) -> SparseVec {
        v.into_iter()
            .map(|(w, c)| (self.u_index(w, k), c))
            .collect()
    }

    pub(crate) fn mul_basis(&self, alg: &GradedAlgebra, i: usize, j: usize) -> SparseVec {
        match (self.part(i), self.part(j)) {
            (Part::Pullback(a), Part::Pullback(b)) => self.base.mul_basis(a, b),
            (Part::Pullback(a), Part::Exceptional { z, k }) => {
                self.u_from_center(self.center.mul(&self.restriction[a], &sparse::unit(z)), k)
            }
            (Part::Exceptional { z, k }, Part::Pullback(a)) => {
                self.u_from_center(self.center.mul(&sparse::unit(z), &self.restriction[a]), k)
            }
            (Part::Exceptional { z, k }, Part::Exceptional { z: w, k: l }) => {
                let zw = self.center.mul_basis(z, w);
                self.j_vec(alg, &zw, k + l + 1)
            }
        }
    }
}
