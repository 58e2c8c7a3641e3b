//! The Yang-Baxter groupoid on non-free-fermionic matrices.
//!
//! Objects are `Δ` pairs. A matrix `u` in `S^×` with `Δ(u) != (0, 0)` is an
//! arrow, and the formal identities `Identity{d}` are adjoined. `u ∘ v` is the
//! Yang-Baxter composition `u * v`, defined when `Δ(u) = Δ(v⁻¹)`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::families::{r_family, FamilyParams, GroupElem3};
use crate::sampling::{self, rng_from_seed, trial_seed};
use crate::scalar::{Rational, Scalar, ScalarMode};
use crate::sixvertex::{DeltaPair, Kind, SixVertexMatrix};
use crate::ybe::{solve_v, solve_w};

/// Projective residual accepted when comparing float results.
pub const FLOAT_TOL: f64 = 1e-8;

const MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum GroupoidElement {
    Matrix { m: SixVertexMatrix, d: DeltaPair },
    Identity { d: DeltaPair },
}

impl GroupoidElement {
    /// Wraps `m`, which must be in `S^×` with `Δ(m) != (0, 0)`.
    pub fn from_matrix(m: SixVertexMatrix) -> Result<Self> {
        if !m.in_s_cross() {
            return Err(Error::NotGroupoidElement(format!("{m} is not in S^x")));
        }
        let d = m.delta()?;
        if d.is_zero() {
            return Err(Error::NotGroupoidElement(format!("{m} is free-fermionic")));
        }
        Ok(GroupoidElement::Matrix { m, d })
    }

    pub fn identity(d: DeltaPair) -> Self {
        GroupoidElement::Identity { d }
    }

    pub fn delta(&self) -> &DeltaPair {
        match self {
            GroupoidElement::Matrix { d, .. } | GroupoidElement::Identity { d } => d,
        }
    }

    pub fn matrix(&self) -> Option<&SixVertexMatrix> {
        match self {
            GroupoidElement::Matrix { m, .. } => Some(m),
            GroupoidElement::Identity { .. } => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, GroupoidElement::Identity { .. })
    }

    pub fn mode(&self) -> ScalarMode {
        self.delta().mode()
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupoidElement::Matrix { m, d } => serde_json::json!({ "matrix": m.to_json(), "delta": d.to_json() }),
            GroupoidElement::Identity { d } => serde_json::json!({ "identity": d.to_json() }),
        }
    }

    /// Accepts `{"matrix": {...}}` (delta recomputed), a bare six-vertex
    /// object, or `{"identity": [d1, d2]}`.
    pub fn from_json(v: &Value, default_mode: ScalarMode) -> Result<Self> {
        if let Some(d) = v.get("identity") {
            let pair = d.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                Error::Json("`identity` must be a two-element array".into())
            })?;
            let mode = pair.iter().find_map(Scalar::json_mode).unwrap_or(default_mode);
            let d1 = Scalar::from_json(&pair[0], mode)?;
            let d2 = Scalar::from_json(&pair[1], mode)?;
            return Ok(GroupoidElement::identity(DeltaPair::new(d1, d2, mode)?));
        }
        let m = v.get("matrix").unwrap_or(v);
        GroupoidElement::from_matrix(SixVertexMatrix::from_json(m, default_mode)?)
    }
}

pub fn g_inverse(x: &GroupoidElement) -> Result<GroupoidElement> {
    match x {
        GroupoidElement::Matrix { m, .. } => GroupoidElement::from_matrix(m.inverse()?),
        GroupoidElement::Identity { d } => Ok(GroupoidElement::identity(d.clone())),
    }
}

fn mismatch(left: &DeltaPair, right: &DeltaPair) -> Error {
    Error::DeltaMismatch { left: left.to_string(), right: right.to_string() }
}

/// `x ∘ y`.
pub fn g_compose(x: &GroupoidElement, y: &GroupoidElement) -> Result<GroupoidElement> {
    use GroupoidElement::{Identity, Matrix};
    match (x, y) {
        (Identity { d }, Identity { d: e }) => {
            if d.matches(e) {
                Ok(x.clone())
            } else {
                Err(mismatch(d, e))
            }
        }
        (Identity { d }, Matrix { m, .. }) => {
            let target = m.inverse()?.delta()?;
            if d.matches(&target) {
                Ok(y.clone())
            } else {
                Err(mismatch(d, &target))
            }
        }
        (Matrix { d, .. }, Identity { d: e }) => {
            if d.matches(e) {
                Ok(x.clone())
            } else {
                Err(mismatch(d, e))
            }
        }
        (Matrix { m: u, d: du }, Matrix { m: v, d: dv }) => {
            let target = v.inverse()?.delta()?;
            if !du.matches(&target) {
                return Err(mismatch(du, &target));
            }
            let w = solve_w(u, v)?;
            if w.is_identity_pattern() {
                return Ok(Identity { d: dv.clone() });
            }
            if !w.in_s_cross() {
                let mut bad = w.s_violations();
                bad.extend(w.vanishing().into_iter().filter(|n| n.starts_with('b')));
                return Err(Error::DegenerateProduct(bad));
            }
            GroupoidElement::from_matrix(w)
        }
    }
}

/// Identities by object, matrices projectively.
pub fn g_eq(x: &GroupoidElement, y: &GroupoidElement) -> bool {
    match (x, y) {
        (GroupoidElement::Identity { d }, GroupoidElement::Identity { d: e }) => d.matches(e),
        (GroupoidElement::Matrix { m, .. }, GroupoidElement::Matrix { m: n, .. }) => m.projective_eq(n),
        _ => false,
    }
}

/// Distance behind [`g_eq`]: the projective residual for matrices, the
/// relative gap for identities, infinity for mixed variants.
pub fn g_residual(x: &GroupoidElement, y: &GroupoidElement) -> f64 {
    let rel = |a: &Scalar, b: &Scalar| {
        let (a, b) = (a.to_complex(), b.to_complex());
        (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
    };
    match (x, y) {
        (GroupoidElement::Identity { d }, GroupoidElement::Identity { d: e }) => {
            rel(&d.d1, &e.d1).max(rel(&d.d2, &e.d2))
        }
        (GroupoidElement::Matrix { m, .. }, GroupoidElement::Matrix { m: n, .. }) => m.projective_residual(n),
        _ => f64::INFINITY,
    }
}

/// Exact equality in exact mode, residual at most [`FLOAT_TOL`] in float mode.
pub fn g_close(x: &GroupoidElement, y: &GroupoidElement) -> bool {
    if x.mode().is_exact() {
        g_eq(x, y)
    } else {
        g_residual(x, y) <= FLOAT_TOL
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Exact chains inside one constant-field family.
    FamilyExact,
    /// Float chains across objects, solving a quadratic for the `b` entries.
    CrossFloat,
    /// Exact chains across objects, with `b1 b2` fixed up front.
    CrossExact,
}

impl Strategy {
    pub fn parse(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "family_exact" => Ok(Strategy::FamilyExact),
            "cross_float" => Ok(Strategy::CrossFloat),
            "cross_exact" => Ok(Strategy::CrossExact),
            _ => Err(Error::Parse {
                token: s.into(),
                reason: "expected family_exact, cross_float or cross_exact".into(),
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::FamilyExact => "family_exact",
            Strategy::CrossFloat => "cross_float",
            Strategy::CrossExact => "cross_exact",
        }
    }
}

/// Elements `x0, x1, x2` with `x0 ∘ x1` and `x1 ∘ x2` defined.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub seed: u64,
    pub elements: Vec<GroupoidElement>,
}

impl Chain {
    pub fn to_json(&self) -> Value {
        Value::Array(self.elements.iter().map(GroupoidElement::to_json).collect())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub seed: u64,
    pub triple: Value,
    pub check: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzReport {
    fn collect(outcomes: Vec<std::result::Result<(), FuzzFailure>>) -> Self {
        let trials = outcomes.len();
        let failures: Vec<FuzzFailure> = outcomes.into_iter().filter_map(|o| o.err()).collect();
        FuzzReport { trials, passes: trials - failures.len(), failures }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.passes == self.trials
    }
}

/// `count` chains, chain `i` drawn from `trial_seed(seed, i)`.
pub fn sample_composable(strategy: Strategy, seed: u64, count: usize) -> Result<Vec<Chain>> {
    (0..count as u64).map(|i| sample_chain(strategy, trial_seed(seed, i))).collect()
}

/// One chain from its own seed.
pub fn sample_chain(strategy: Strategy, seed: u64) -> Result<Chain> {
    let mut rng = rng_from_seed(seed);
    let matrices = match strategy {
        Strategy::FamilyExact => family_chain(&mut rng)?,
        Strategy::CrossFloat => cross_chain(&mut rng, false)?,
        Strategy::CrossExact => cross_chain(&mut rng, true)?,
    };
    let elements = matrices.into_iter().map(GroupoidElement::from_matrix).collect::<Result<_>>()?;
    Ok(Chain { seed, elements })
}

fn family_chain<R: Rng>(rng: &mut R) -> Result<Vec<SixVertexMatrix>> {
    let q = |r: &mut R| Scalar::exact(sampling::nonzero_rational(r, 5), Rational::from_integer(0.into()));
    let group = |r: &mut R| GroupElem3::new(q(r), q(r), q(r));
    for _ in 0..MAX_ATTEMPTS {
        let Ok(p) = FamilyParams::new(q(rng), q(rng), q(rng)) else { continue };
        let (g, h, k) = (group(rng)?, group(rng)?, group(rng)?);
        let members: Result<Vec<_>> = [&g, &h, &k].into_iter().map(|x| r_family(&p, Kind::Cf, x)).collect();
        let Ok(members) = members else { continue };
        if !members.iter().all(|m| m.in_s_cross() && !m.delta().is_ok_and(|d| d.is_zero())) {
            continue;
        }
        // every product along the chain must be an arrow or an identity
        let products = [g.mul(&h), h.mul(&k), g.mul(&h).mul(&k)];
        let usable = products
            .iter()
            .all(|x| r_family(&p, Kind::Cf, x).is_ok_and(|m| m.in_s_cross() || m.is_identity_pattern()));
        if usable {
            return Ok(members);
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

fn cross_chain<R: Rng>(rng: &mut R, exact: bool) -> Result<Vec<SixVertexMatrix>> {
    let start = |r: &mut R| {
        if exact {
            sampling::exact_in_s_cross(r, 4, 0.25)
        } else {
            sampling::float_in_s_cross(r)
        }
    };
    for _ in 0..MAX_ATTEMPTS {
        let u = start(rng);
        if !u.delta().is_ok_and(|d| !d.is_zero()) {
            continue;
        }
        let Some(v) = cross_step(rng, &u, exact) else { continue };
        let Some(w) = cross_step(rng, &v, exact) else { continue };
        return Ok(vec![u, v, w]);
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// Draws `v` with `u * v` defined and different from the object of `u`.
///
/// The product `w = u * v` must satisfy `Δ(w⁻¹) = Δ(u⁻¹) =: (d1, d2)`, i.e.
/// `b1(w) = N / (2 a2 d1)` and `b2(w) = N / (2 a1 d2)` with
/// `N = a1 a2 + b1 b2 - c1 c2`. `w` is built from those, then `v = solve_v(u, w)`.
fn cross_step<R: Rng>(rng: &mut R, u: &SixVertexMatrix, exact: bool) -> Option<SixVertexMatrix> {
    let d = u.inverse().ok()?.delta().ok()?;
    if d.is_zero() {
        return None;
    }
    let w = if exact { exact_target(rng, &d)? } else { float_target(rng, &d)? };
    if !w.in_s_cross() {
        return None;
    }
    let v = solve_v(u, &w).ok()?;
    if !v.in_s_cross() || v.delta().ok()?.is_zero() {
        return None;
    }
    if exact {
        return Some(v);
    }
    let v = normalize(&v);
    well_conditioned(&v).then_some(v)
}

fn exact_target<R: Rng>(rng: &mut R, d: &DeltaPair) -> Option<SixVertexMatrix> {
    let mut draw = || sampling::nonzero_exact_scalar(rng, 4, 0.25);
    let (a1, a2, c1, n) = (draw(), draw(), draw(), draw());
    let two = Scalar::exact_int(2);
    let b1 = &n / &(&two * &a2 * &d.d1);
    let b2 = &n / &(&two * &a1 * &d.d2);
    let c2 = (&a1 * &a2 + &b1 * &b2 - &n) / &c1;
    SixVertexMatrix::new([a1, a2, b1, b2, c1, c2]).ok()
}

fn float_target<R: Rng>(rng: &mut R, d: &DeltaPair) -> Option<SixVertexMatrix> {
    let [a1, a2, c1, c2] = [(); 4].map(|_| sampling::float_scalar(rng).to_complex());
    let (d1, d2) = (d.d1.to_complex(), d.d2.to_complex());
    // p = b1 b2 solves p^2 + (2m - k) p + m^2 = 0 with m = a1 a2 - c1 c2, k = 4 a1 a2 d1 d2
    let m = a1 * a2 - c1 * c2;
    let k = 4.0 * a1 * a2 * d1 * d2;
    let root = (k * k - 4.0 * k * m).sqrt();
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let p = (k - 2.0 * m + sign * root) / 2.0;
    let n = m + p;
    let b1 = n / (2.0 * a2 * d1);
    let b2 = n / (2.0 * a1 * d2);
    let entries = [a1, a2, b1, b2, c1, c2].map(Scalar::from_complex);
    let w = normalize(&SixVertexMatrix::new(entries).ok()?);
    well_conditioned(&w).then_some(w)
}

fn normalize(m: &SixVertexMatrix) -> SixVertexMatrix {
    let big = m.entries().iter().map(Scalar::abs).fold(0.0, f64::max);
    m.scale(&Scalar::float(1.0 / big, 0.0))
}

/// Rejects float matrices whose entries or middle determinant are tiny
/// relative to the largest entry.
fn well_conditioned(m: &SixVertexMatrix) -> bool {
    let abs: Vec<f64> = m.entries().iter().map(Scalar::abs).collect();
    let big = abs.iter().cloned().fold(0.0, f64::max);
    let small = abs.iter().cloned().fold(f64::INFINITY, f64::min);
    big.is_finite() && small > 1e-3 * big && m.middle_det().abs() > 1e-3 * big * big
}

fn fail(seed: u64, chain: &[GroupoidElement], check: String) -> FuzzFailure {
    FuzzFailure { seed, triple: Value::Array(chain.iter().map(GroupoidElement::to_json).collect()), check }
}

fn composed(x: &GroupoidElement, y: &GroupoidElement, what: &str) -> std::result::Result<GroupoidElement, String> {
    g_compose(x, y).map_err(|e| format!("{what} undefined: {e}"))
}

fn expect_close(lhs: &GroupoidElement, rhs: &GroupoidElement, what: &str) -> std::result::Result<(), String> {
    if g_close(lhs, rhs) {
        Ok(())
    } else {
        Err(format!("{what} fails (residual {:e})", g_residual(lhs, rhs)))
    }
}

fn inv(x: &GroupoidElement, what: &str) -> std::result::Result<GroupoidElement, String> {
    g_inverse(x).map_err(|e| format!("inverse of {what}: {e}"))
}

/// The five cancellation identities for one composable pair.
fn pair_axioms(u: &GroupoidElement, v: &GroupoidElement) -> std::result::Result<(), String> {
    let uv = composed(u, v, "u*v")?;
    let (ui, vi, uvi) = (inv(u, "u")?, inv(v, "v")?, inv(&uv, "u*v")?);
    expect_close(&uvi, &composed(&vi, &ui, "v^-1*u^-1")?, "(u*v)^-1 = v^-1*u^-1")?;
    expect_close(&composed(&uv, &vi, "(u*v)*v^-1")?, u, "(u*v)*v^-1 = u")?;
    expect_close(&composed(&ui, &uv, "u^-1*(u*v)")?, v, "u^-1*(u*v) = v")?;
    expect_close(&composed(v, &uvi, "v*(u*v)^-1")?, &ui, "v*(u*v)^-1 = u^-1")?;
    expect_close(&composed(&uvi, u, "(u*v)^-1*u")?, &vi, "(u*v)^-1*u = v^-1")?;
    Ok(())
}

/// Identity and inverse laws for one element.
fn element_axioms(x: &GroupoidElement) -> std::result::Result<(), String> {
    let xi = inv(x, "x")?;
    expect_close(&inv(&xi, "x^-1")?, x, "(x^-1)^-1 = x")?;
    let right_unit = GroupoidElement::identity(x.delta().clone());
    let left_unit = GroupoidElement::identity(xi.delta().clone());
    expect_close(&composed(x, &right_unit, "x*1")?, x, "x*1 = x")?;
    expect_close(&composed(&left_unit, x, "1*x")?, x, "1*x = x")?;
    let xxi = composed(x, &xi, "x*x^-1")?;
    let xix = composed(&xi, x, "x^-1*x")?;
    if !xxi.is_identity() || !xix.is_identity() {
        return Err("x*x^-1 or x^-1*x is not an identity".into());
    }
    expect_close(&composed(&xxi, x, "(x*x^-1)*x")?, x, "(x*x^-1)*x = x")?;
    expect_close(&composed(x, &xix, "x*(x^-1*x)")?, x, "x*(x^-1*x) = x")?;
    Ok(())
}

/// Checks the invertible-magmoid identities on every consecutive pair of
/// each chain and the identity/inverse laws on every element.
pub fn axiom_suite(samples: &[Chain]) -> FuzzReport {
    let outcomes = samples
        .par_iter()
        .map(|chain| {
            let els = &chain.elements;
            let run = || -> std::result::Result<(), String> {
                for x in els {
                    element_axioms(x)?;
                }
                for pair in els.windows(2) {
                    pair_axioms(&pair[0], &pair[1])?;
                }
                Ok(())
            };
            run().map_err(|check| fail(chain.seed, els, check))
        })
        .collect();
    FuzzReport::collect(outcomes)
}

/// `(u*v)*w = u*(v*w)` on `trials` sampled chains, including the claim that
/// both sides are defined.
pub fn associativity_fuzz(strategy: Strategy, seed: u64, trials: usize) -> FuzzReport {
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            let chain = sample_chain(strategy, s).map_err(|e| fail(s, &[], format!("sampling failed: {e}")))?;
            associativity_check(&chain.elements).map_err(|check| fail(s, &chain.elements, check))
        })
        .collect();
    FuzzReport::collect(outcomes)
}

pub fn associativity_check(chain: &[GroupoidElement]) -> std::result::Result<(), String> {
    let [u, v, w] = chain else {
        return Err(format!("expected three elements, got {}", chain.len()));
    };
    let uv = composed(u, v, "u*v")?;
    let vw = composed(v, w, "v*w")?;
    let left = composed(&uv, w, "(u*v)*w")?;
    let right = composed(u, &vw, "u*(v*w)")?;
    expect_close(&left, &right, "(u*v)*w = u*(v*w)")
}
