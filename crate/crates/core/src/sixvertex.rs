//! Six-vertex matrices
//!
//! ```text
//!     | a1  .   .   .  |
//! u = | .   c1  b1  .  |      basis e1⊗e1, e1⊗e2, e2⊗e1, e2⊗e2
//!     | .   b2  c2  .  |
//!     | .   .   .   a2 |
//! ```
//!
//! The middle block rows are `(c1, b1)` and `(b2, c2)`. Every other module uses
//! this naming. `S` is the set with `c1, c2 != 0` and `det != 0`; `S^×`
//! additionally has `b1, b2 != 0`.

use std::borrow::Cow;
use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{Scalar, ScalarMode};

pub const ENTRY_NAMES: [&str; 6] = ["a1", "a2", "b1", "b2", "c1", "c2"];

/// Free-fermionic (`Ff`) or constant-field (`Cf`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cf,
    Ff,
}

impl Kind {
    pub fn parse(s: &str) -> Result<Kind> {
        match s {
            "cf" => Ok(Kind::Cf),
            "ff" => Ok(Kind::Ff),
            _ => Err(Error::Parse { token: s.to_string(), reason: "expected `cf` or `ff`".into() }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Cf => "cf",
            Kind::Ff => "ff",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SixVertexMatrix {
    entries: [Scalar; 6],
    mode: ScalarMode,
}

/// `P = c1 c2 - b1 b2` and the dual corners with `a1 a1* = a2 a2* = P`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualAuxiliaries {
    pub p: Scalar,
    pub a1_star: Scalar,
    pub a2_star: Scalar,
}

/// The statistics `(Δ1, Δ2)`; scale invariant, defined on `S^×`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaPair {
    pub d1: Scalar,
    pub d2: Scalar,
    mode: ScalarMode,
}

impl DeltaPair {
    pub fn new(d1: Scalar, d2: Scalar, mode: ScalarMode) -> Result<Self> {
        for d in [&d1, &d2] {
            if d.mode_name() != mode.name() {
                return Err(Error::ModeMismatch(mode.name(), d.mode_name()));
            }
        }
        Ok(DeltaPair { d1, d2, mode })
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    /// Equality under this pair's mode.
    pub fn matches(&self, other: &DeltaPair) -> bool {
        self.mode.eq(&self.d1, &other.d1) && self.mode.eq(&self.d2, &other.d2)
    }

    pub fn is_zero(&self) -> bool {
        self.mode.is_zero(&self.d1) && self.mode.is_zero(&self.d2)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!([self.d1.to_json(), self.d2.to_json()])
    }
}

impl fmt::Display for DeltaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

/// Class membership; the classes overlap, so each flag is computed on its own.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub diagonal: bool,
    pub five_vertex: bool,
    pub free_fermionic: bool,
    pub non_free_fermionic: bool,
    pub constant_field: bool,
    pub non_constant_field: bool,
    pub field_free: bool,
    pub degenerate: bool,
}

impl SixVertexMatrix {
    /// Entries in the order `(a1, a2, b1, b2, c1, c2)`; the mode is taken from
    /// the entries (float entries get the default tolerance).
    pub fn new(entries: [Scalar; 6]) -> Result<Self> {
        let mode = if entries[0].is_exact() { ScalarMode::Exact } else { ScalarMode::float() };
        Self::with_mode(entries, mode)
    }

    pub fn with_mode(entries: [Scalar; 6], mode: ScalarMode) -> Result<Self> {
        for x in &entries {
            if x.mode_name() != mode.name() {
                return Err(Error::ModeMismatch(mode.name(), x.mode_name()));
            }
        }
        Ok(SixVertexMatrix { entries, mode })
    }

    pub fn from_ints(e: [i64; 6]) -> Self {
        SixVertexMatrix { entries: e.map(Scalar::exact_int), mode: ScalarMode::Exact }
    }

    pub fn identity(mode: ScalarMode) -> Self {
        let (o, z) = (mode.one(), mode.zero());
        SixVertexMatrix { entries: [o.clone(), o.clone(), z.clone(), z, o.clone(), o], mode }
    }

    pub fn a1(&self) -> &Scalar {
        &self.entries[0]
    }
    pub fn a2(&self) -> &Scalar {
        &self.entries[1]
    }
    pub fn b1(&self) -> &Scalar {
        &self.entries[2]
    }
    pub fn b2(&self) -> &Scalar {
        &self.entries[3]
    }
    pub fn c1(&self) -> &Scalar {
        &self.entries[4]
    }
    pub fn c2(&self) -> &Scalar {
        &self.entries[5]
    }

    pub fn entries(&self) -> &[Scalar; 6] {
        &self.entries
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    /// Same entries, different tolerance (the scalar kind must not change).
    pub fn with_tolerance(mut self, mode: ScalarMode) -> Result<Self> {
        if mode.name() != self.mode.name() {
            return Err(Error::ModeMismatch(self.mode.name(), mode.name()));
        }
        self.mode = mode;
        Ok(self)
    }

    /// Rounds to float mode.
    pub fn to_float(&self, mode: ScalarMode) -> Result<Self> {
        let entries = self.entries.clone().map(|x| mode.coerce(&x));
        let [a1, a2, b1, b2, c1, c2] = entries;
        Self::with_mode([a1?, a2?, b1?, b2?, c1?, c2?], mode)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        SixVertexMatrix { entries: self.entries.clone().map(|x| &x * k), mode: self.mode }
    }

    /// Zero test for a quantity of the given degree in the entries. Float
    /// tolerances are taken relative to the largest entry, so the answer does
    /// not depend on the representative.
    fn negligible(&self, x: &Scalar, degree: i32) -> bool {
        match self.mode {
            ScalarMode::Exact => x.is_zero(),
            ScalarMode::Float(eps) => {
                let scale = self.entries.iter().map(Scalar::abs).fold(0.0, f64::max);
                x.abs() <= eps * scale.powi(degree)
            }
        }
    }

    fn is_zero(&self, x: &Scalar) -> bool {
        self.negligible(x, 1)
    }

    /// Representative with unit max-modulus in float mode; exact matrices
    /// are returned unchanged.
    pub fn unit_scaled(&self) -> Self {
        self.unit().into_owned()
    }

    fn unit(&self) -> Cow<'_, Self> {
        match (self.mode, self.normalized()) {
            (ScalarMode::Float(_), Some(entries)) => Cow::Owned(SixVertexMatrix { entries, mode: self.mode }),
            _ => Cow::Borrowed(self),
        }
    }

    /// Names of entries that vanish.
    pub fn vanishing(&self) -> Vec<&'static str> {
        ENTRY_NAMES
            .iter()
            .zip(&self.entries)
            .filter(|(_, x)| self.is_zero(x))
            .map(|(n, _)| *n)
            .collect()
    }

    /// Determinant of the middle block, `c1 c2 - b1 b2`.
    pub fn middle_det(&self) -> Scalar {
        self.c1() * self.c2() - self.b1() * self.b2()
    }

    pub fn determinant(&self) -> Scalar {
        self.a1() * self.a2() * self.middle_det()
    }

    pub fn in_s(&self) -> bool {
        !self.is_zero(self.c1()) && !self.is_zero(self.c2()) && !self.negligible(&self.determinant(), 4)
    }

    pub fn in_s_cross(&self) -> bool {
        self.in_s() && !self.is_zero(self.b1()) && !self.is_zero(self.b2())
    }

    /// Explains why the matrix is not in `S` (empty when it is).
    pub fn s_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (name, x) in [("a1", self.a1()), ("a2", self.a2()), ("c1", self.c1()), ("c2", self.c2())] {
            if self.is_zero(x) {
                out.push(name);
            }
        }
        if self.negligible(&self.middle_det(), 2) {
            out.push("c1*c2-b1*b2");
        }
        out
    }

    pub fn dual_aux(&self) -> Result<DualAuxiliaries> {
        if self.is_zero(self.a1()) {
            return Err(Error::UndefinedDual("a1"));
        }
        if self.is_zero(self.a2()) {
            return Err(Error::UndefinedDual("a2"));
        }
        let p = self.middle_det();
        let a1_star = &p / self.a1();
        let a2_star = &p / self.a2();
        Ok(DualAuxiliaries { p, a1_star, a2_star })
    }

    /// `u*` with entries `(a1*, a2*, -b1, -b2, c2, c1)`, so that
    /// `u u* = (c1 c2 - b1 b2) I`.
    pub fn dual(&self) -> Result<Self> {
        let aux = self.dual_aux()?;
        Ok(SixVertexMatrix {
            entries: [
                aux.a1_star,
                aux.a2_star,
                -self.b1(),
                -self.b2(),
                self.c2().clone(),
                self.c1().clone(),
            ],
            mode: self.mode,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let p = self.middle_det();
        if self.is_zero(self.a1()) || self.is_zero(self.a2()) || self.negligible(&p, 2) {
            return Err(Error::Singular);
        }
        Ok(SixVertexMatrix {
            entries: [
                self.a1().checked_recip()?,
                self.a2().checked_recip()?,
                -self.b1() / &p,
                -self.b2() / &p,
                self.c2() / &p,
                self.c1() / &p,
            ],
            mode: self.mode,
        })
    }

    /// `(Δ1, Δ2)`. Note `Δ1(u⁻¹) = (a1/a2) Δ1(u)` and `Δ2(u⁻¹) = (a2/a1) Δ2(u)`.
    pub fn delta(&self) -> Result<DeltaPair> {
        for (name, x) in [("b1", self.b1()), ("b2", self.b2()), ("a1", self.a1()), ("a2", self.a2())] {
            if self.is_zero(x) {
                return Err(Error::StatisticsUndefined(name));
            }
        }
        let two = self.mode.int(2);
        let numer = self.a1() * self.a2() + self.b1() * self.b2() - self.c1() * self.c2();
        let d1 = &numer / &(&two * self.a1() * self.b1());
        let d2 = &numer / &(&two * self.a2() * self.b2());

        let aux = self.dual_aux()?;
        debug_assert!(self.mode.eq(&d1, &((self.a2() - &aux.a1_star) / (&two * self.b1()))));
        debug_assert!(self.mode.eq(&d2, &((self.a1() - &aux.a2_star) / (&two * self.b2()))));

        Ok(DeltaPair { d1, d2, mode: self.mode })
    }

    /// `Δ^ff = (a1 - a2) / 2b1` or `Δ^cf = (a1 - a1*) / 2b1`.
    pub fn delta_simplified(&self, kind: Kind) -> Result<Scalar> {
        if self.is_zero(self.b1()) {
            return Err(Error::StatisticsUndefined("b1"));
        }
        let two_b1 = self.mode.int(2) * self.b1();
        let other = match kind {
            Kind::Ff => self.a2().clone(),
            Kind::Cf => self.dual_aux()?.a1_star,
        };
        Ok((self.a1() - &other) / &two_b1)
    }

    pub fn classify(&self) -> ClassFlags {
        self.unit().classify_unit()
    }

    fn classify_unit(&self) -> ClassFlags {
        let eq = |x: &Scalar, y: &Scalar| self.mode.eq(x, y);
        let b1_zero = self.is_zero(self.b1());
        let b2_zero = self.is_zero(self.b2());
        let free_fermionic = eq(&(self.a1() * self.a2() + self.b1() * self.b2()), &(self.c1() * self.c2()));
        let constant_field = eq(self.a1(), self.a2());
        let aux = self.dual_aux().ok();
        let non_free_fermionic = aux
            .as_ref()
            .is_some_and(|d| !eq(&d.a2_star, self.a1()) && !eq(&d.a1_star, self.a2()));
        let degenerate = aux.as_ref().is_some_and(|d| {
            constant_field && eq(self.a2(), &d.a1_star) && eq(&d.a1_star, &d.a2_star)
        });
        ClassFlags {
            diagonal: b1_zero && b2_zero,
            five_vertex: b1_zero != b2_zero,
            free_fermionic,
            non_free_fermionic,
            constant_field,
            non_constant_field: !constant_field,
            field_free: constant_field && eq(self.b1(), self.b2()) && eq(self.c1(), self.c2()),
            degenerate,
        }
    }

    /// `u = λ v` for some nonzero `λ`, decided by cross-multiplication.
    pub fn projective_eq(&self, other: &SixVertexMatrix) -> bool {
        if self.mode.name() != other.mode.name() {
            return false;
        }
        match self.mode {
            ScalarMode::Exact => cross_equal(&self.entries, &other.entries, self.mode),
            ScalarMode::Float(_) => {
                // normalise first so the tolerance is scale free
                let (Some(x), Some(y)) = (self.normalized(), other.normalized()) else {
                    return self.vanishing().len() == 6 && other.vanishing().len() == 6;
                };
                cross_equal(&x, &y, self.mode)
            }
        }
    }

    fn normalized(&self) -> Option<[Scalar; 6]> {
        let big = self.entries.iter().max_by(|x, y| x.abs().total_cmp(&y.abs()))?;
        if big.is_zero() {
            return None;
        }
        Some(self.entries.clone().map(|x| &x / big))
    }

    /// Largest `|x_i y_j - x_j y_i|` after scaling both to unit max-modulus.
    /// Zero exactly when the two are projectively equal.
    pub fn projective_residual(&self, other: &SixVertexMatrix) -> f64 {
        let unit = |m: &SixVertexMatrix| {
            let c = m.entries.clone().map(|x| x.to_complex());
            let big = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if big == 0.0 {
                c
            } else {
                c.map(|z| z / big)
            }
        };
        let (x, y) = (unit(self), unit(other));
        let mut worst: f64 = 0.0;
        for i in 0..6 {
            for j in i + 1..6 {
                worst = worst.max((x[i] * y[j] - x[j] * y[i]).norm());
            }
            // zero pattern mismatch when the other vector is otherwise zero
            worst = worst.max(((x[i].norm() == 0.0) != (y[i].norm() == 0.0)) as u8 as f64 * (x[i] - y[i]).norm());
        }
        worst
    }

    /// Proportional to the identity: `b1 = b2 = 0` and `a1 = a2 = c1 = c2`.
    pub fn is_identity_pattern(&self) -> bool {
        self.projective_eq(&SixVertexMatrix::identity(self.mode))
    }

    pub fn as_operator(&self) -> SquareMatrix {
        let mut m = SquareMatrix::zeros(4, self.mode);
        m.set(0, 0, self.a1().clone());
        m.set(1, 1, self.c1().clone());
        m.set(1, 2, self.b1().clone());
        m.set(2, 1, self.b2().clone());
        m.set(2, 2, self.c2().clone());
        m.set(3, 3, self.a2().clone());
        m
    }

    /// Reads the six entries back; fails if an off-pattern entry is nonzero.
    pub fn from_operator(m: &SquareMatrix) -> Result<Self> {
        if m.dim() != 4 {
            return Err(Error::OutOfRange(format!("expected a 4x4 operator, got {0}x{0}", m.dim())));
        }
        let pattern = [(0, 0), (3, 3), (1, 2), (2, 1), (1, 1), (2, 2)];
        for i in 0..4 {
            for j in 0..4 {
                if !pattern.contains(&(i, j)) && !m.mode().is_zero(m.get(i, j)) {
                    return Err(Error::OutOfRange(format!("entry ({i},{j}) is off the six-vertex pattern")));
                }
            }
        }
        let entries = pattern.map(|(i, j)| m.get(i, j).clone());
        Self::with_mode(entries, m.mode())
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (name, x) in ENTRY_NAMES.iter().zip(&self.entries) {
            map.insert(name.to_string(), x.to_json());
        }
        map.insert("mode".into(), Value::String(self.mode.name().into()));
        if let ScalarMode::Float(eps) = self.mode {
            if eps != crate::scalar::DEFAULT_EPS {
                map.insert("eps".into(), Value::from(eps));
            }
        }
        Value::Object(map)
    }

    /// Decodes `{"a1":…, …, "c2":…, "mode":"exact"|"float"}`. Without a
    /// `mode` field the scalar encoding decides, then `default_mode`.
    pub fn from_json(v: &Value, default_mode: ScalarMode) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json(format!("expected a six-vertex object, found {v}")))?;
        let mut mode = match obj.get("mode") {
            Some(Value::String(s)) => match s.as_str() {
                "exact" => ScalarMode::Exact,
                "float" => match default_mode {
                    ScalarMode::Float(_) => default_mode,
                    ScalarMode::Exact => ScalarMode::float(),
                },
                other => return Err(Error::Json(format!("unknown mode `{other}`"))),
            },
            Some(other) => return Err(Error::Json(format!("`mode` must be a string, found {other}"))),
            None => ENTRY_NAMES
                .iter()
                .filter_map(|n| obj.get(*n).and_then(Scalar::json_mode))
                .next()
                .unwrap_or(default_mode),
        };
        if let Some(eps) = obj.get("eps") {
            let eps = eps.as_f64().ok_or_else(|| Error::Json("`eps` must be a number".into()))?;
            if mode.is_exact() {
                return Err(Error::Json("`eps` given for an exact matrix".into()));
            }
            mode = ScalarMode::float_with(eps)?;
        }
        let mut entries = Vec::with_capacity(6);
        for name in ENTRY_NAMES {
            let x = obj.get(name).ok_or_else(|| Error::Json(format!("missing entry `{name}`")))?;
            entries.push(Scalar::from_json(x, mode).map_err(|e| Error::Json(format!("entry `{name}`: {e}")))?);
        }
        let entries: [Scalar; 6] = entries.try_into().expect("six entries");
        Self::with_mode(entries, mode)
    }
}

fn cross_equal(x: &[Scalar; 6], y: &[Scalar; 6], mode: ScalarMode) -> bool {
    for i in 0..6 {
        if mode.is_zero(&x[i]) != mode.is_zero(&y[i]) {
            return false;
        }
        for j in i + 1..6 {
            if !mode.eq(&(&x[i] * &y[j]), &(&x[j] * &y[i])) {
                return false;
            }
        }
    }
    true
}

impl fmt::Display for SixVertexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for SixVertexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
