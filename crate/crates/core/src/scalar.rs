//! Field of scalars in two interchangeable modes.
//!
//! `Exact` scalars are Gaussian rationals `p/q + (r/s)i` with arbitrary-precision
//! numerators, so every identity over ℚ(i) is decided by structural equality.
//! `Float` scalars are double-precision complex numbers compared with a relative
//! tolerance `|x - y| <= eps * max(1, |x|, |y|)`.
//!
//! The two modes never mix: the `checked_*` methods report a mismatch as an
//! error, while the operator impls (`+`, `-`, `*`, `/`) treat it as a usage bug
//! and panic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default relative tolerance for `Float` comparisons.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum ScalarMode {
    #[default]
    Exact,
    Float(f64),
}

impl ScalarMode {
    /// Float mode with the default tolerance.
    pub fn float() -> Self {
        ScalarMode::Float(DEFAULT_EPS)
    }

    pub fn float_with(eps: f64) -> Result<Self> {
        if eps > 0.0 && eps.is_finite() {
            Ok(ScalarMode::Float(eps))
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ScalarMode::Exact)
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float(_) => "float",
        }
    }

    pub fn eps(&self) -> f64 {
        match self {
            ScalarMode::Exact => 0.0,
            ScalarMode::Float(eps) => *eps,
        }
    }

    /// Parses `exact`, `float` or `float:<eps>`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "exact" => Ok(ScalarMode::Exact),
            "float" => Ok(ScalarMode::float()),
            _ => match t.strip_prefix("float:") {
                Some(eps) => {
                    let eps = eps.parse::<f64>().map_err(|_| Error::Parse {
                        token: eps.to_string(),
                        reason: "expected a tolerance".into(),
                    })?;
                    ScalarMode::float_with(eps)
                }
                None => Err(Error::Parse {
                    token: t.to_string(),
                    reason: "expected `exact`, `float` or `float:<eps>`".into(),
                }),
            },
        }
    }

    /// Equality under this mode. Scalars of different modes are never equal.
    pub fn eq(&self, x: &Scalar, y: &Scalar) -> bool {
        match (x, y) {
            (Scalar::Exact { .. }, Scalar::Exact { .. }) => x == y,
            (Scalar::Float { .. }, Scalar::Float { .. }) => {
                let eps = match self {
                    ScalarMode::Float(eps) => *eps,
                    ScalarMode::Exact => DEFAULT_EPS,
                };
                let (a, b) = (x.to_complex(), y.to_complex());
                (a - b).norm() <= eps * 1f64.max(a.norm()).max(b.norm())
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        self.eq(x, &x.zero_like())
    }

    /// Zero of this mode.
    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            ScalarMode::Exact => Scalar::exact_int(n),
            ScalarMode::Float(_) => Scalar::float(n as f64, 0.0),
        }
    }

    /// Converts `x` into this mode (exact values are rounded when going to float).
    pub fn coerce(&self, x: &Scalar) -> Result<Scalar> {
        match (self, x) {
            (ScalarMode::Exact, Scalar::Exact { .. }) => Ok(x.clone()),
            (ScalarMode::Float(_), Scalar::Float { .. }) => Ok(x.clone()),
            (ScalarMode::Float(_), Scalar::Exact { .. }) => {
                let c = x.to_complex();
                Ok(Scalar::float(c.re, c.im))
            }
            (ScalarMode::Exact, Scalar::Float { .. }) => Err(Error::ModeMismatch("exact", "float")),
        }
    }
}

/// Scalar equality that reports mixed modes as an error.
pub fn scalar_eq(x: &Scalar, y: &Scalar, mode: ScalarMode) -> Result<bool> {
    let expected = mode.name();
    for s in [x, y] {
        if s.mode_name() != expected {
            return Err(Error::ModeMismatch(expected, s.mode_name()));
        }
    }
    Ok(mode.eq(x, y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// One field operation, with mode and zero-divisor checks.
pub fn scalar_arith(x: &Scalar, y: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact { re: Rational, im: Rational },
    Float { re: f64, im: f64 },
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn exact(re: Rational, im: Rational) -> Self {
        Scalar::Exact { re, im }
    }

    pub fn exact_int(n: i64) -> Self {
        Scalar::Exact { re: rat(n), im: Rational::zero() }
    }

    /// `num/den` as an exact real scalar. Panics if `den == 0`.
    pub fn exact_ratio(num: i64, den: i64) -> Self {
        Scalar::Exact {
            re: Rational::new(BigInt::from(num), BigInt::from(den)),
            im: Rational::zero(),
        }
    }

    /// Gaussian rational `(re_num/re_den) + (im_num/im_den)i`.
    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Scalar::Exact {
            re: Rational::new(BigInt::from(re.0), BigInt::from(re.1)),
            im: Rational::new(BigInt::from(im.0), BigInt::from(im.1)),
        }
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float { re, im }
    }

    pub fn from_complex(c: Complex64) -> Self {
        Scalar::Float { re: c.re, im: c.im }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact { .. })
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            Scalar::Exact { .. } => "exact",
            Scalar::Float { .. } => "float",
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Exact { .. } => Scalar::exact_int(0),
            Scalar::Float { .. } => Scalar::float(0.0, 0.0),
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Exact { .. } => Scalar::exact_int(1),
            Scalar::Float { .. } => Scalar::float(1.0, 0.0),
        }
    }

    pub fn int_like(&self, n: i64) -> Scalar {
        match self {
            Scalar::Exact { .. } => Scalar::exact_int(n),
            Scalar::Float { .. } => Scalar::float(n as f64, 0.0),
        }
    }

    /// Structural zero test (no tolerance).
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Float { re, im } => *re == 0.0 && *im == 0.0,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact { re, im } => Complex64::new(
                re.to_f64().unwrap_or(f64::NAN),
                im.to_f64().unwrap_or(f64::NAN),
            ),
            Scalar::Float { re, im } => Complex64::new(*re, *im),
        }
    }

    /// Modulus as a double.
    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact { re: re.clone(), im: -im },
            Scalar::Float { re, im } => Scalar::Float { re: *re, im: -*im },
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::ModeMismatch(self.mode_name(), other.mode_name())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => {
                Ok(Scalar::Exact { re: a + c, im: b + d })
            }
            (Scalar::Float { re: a, im: b }, Scalar::Float { re: c, im: d }) => {
                Ok(Scalar::Float { re: a + c, im: b + d })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => {
                Ok(Scalar::Exact { re: a - c, im: b - d })
            }
            (Scalar::Float { re: a, im: b }, Scalar::Float { re: c, im: d }) => {
                Ok(Scalar::Float { re: a - c, im: b - d })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => {
                // Most entries are real; skip the cross terms when we can.
                if a.is_zero() && b.is_zero() || c.is_zero() && d.is_zero() {
                    return Ok(Scalar::exact_int(0));
                }
                let (re, im) = match (b.is_zero(), d.is_zero()) {
                    (true, true) => (a * c, Rational::zero()),
                    (true, false) => (a * c, a * d),
                    (false, true) => (a * c, b * c),
                    (false, false) => (a * c - b * d, a * d + b * c),
                };
                Ok(Scalar::Exact { re, im })
            }
            (Scalar::Float { .. }, Scalar::Float { .. }) => {
                Ok(Scalar::from_complex(self.to_complex() * other.to_complex()))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if self.mode_name() != other.mode_name() {
            return Err(self.mismatch(other));
        }
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, other) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => {
                if d.is_zero() {
                    return Ok(Scalar::Exact { re: a / c, im: b / c });
                }
                let norm = c * c + d * d;
                let re = (a * c + b * d) / &norm;
                let im = (b * c - a * d) / &norm;
                Ok(Scalar::Exact { re, im })
            }
            _ => Ok(Scalar::from_complex(self.to_complex() / other.to_complex())),
        }
    }

    pub fn checked_recip(&self) -> Result<Scalar> {
        self.one_like().checked_div(self)
    }

    /// Integer power (negative exponents invert).
    pub fn powi(&self, n: i32) -> Result<Scalar> {
        let mut base = if n < 0 { self.checked_recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Parses a scalar in the given mode.
    ///
    /// Exact grammar: `<rational>` or `<rational>(+|-)<rational>i`, where
    /// `<rational>` is `[+-]digits[/digits]`. Float mode also takes decimal and
    /// exponent literals, and rationals (rounded).
    pub fn parse(text: &str, mode: ScalarMode) -> Result<Scalar> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse { token: text.to_string(), reason: "empty scalar".into() });
        }
        let (re_txt, im_txt) = split_complex(&t, mode.is_exact());
        match mode {
            ScalarMode::Exact => {
                let re = match re_txt {
                    Some(r) => parse_rational(r)?,
                    None => Rational::zero(),
                };
                let im = match im_txt {
                    Some(i) => parse_rational(&unit_coefficient(i))?,
                    None => Rational::zero(),
                };
                Ok(Scalar::Exact { re, im })
            }
            ScalarMode::Float(_) => {
                let re = match re_txt {
                    Some(r) => parse_real(r)?,
                    None => 0.0,
                };
                let im = match im_txt {
                    Some(i) => parse_real(&unit_coefficient(i))?,
                    None => 0.0,
                };
                Ok(Scalar::Float { re, im })
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Exact { re, im } => json!({ "re": re.to_string(), "im": im.to_string() }),
            Scalar::Float { re, im } => json!({ "re": re, "im": im }),
        }
    }

    /// Decodes either the object encoding or a plain string/number, in `mode`.
    pub fn from_json(v: &Value, mode: ScalarMode) -> Result<Scalar> {
        match v {
            Value::String(s) => Scalar::parse(s, mode),
            Value::Number(_) => {
                let part = json_part(v, mode, "value")?;
                Ok(part_to_scalar(part, zero_part(mode)))
            }
            Value::Object(map) => {
                let re = match map.get("re") {
                    Some(x) => json_part(x, mode, "re")?,
                    None => zero_part(mode),
                };
                let im = match map.get("im") {
                    Some(x) => json_part(x, mode, "im")?,
                    None => zero_part(mode),
                };
                Ok(part_to_scalar(re, im))
            }
            other => Err(Error::Json(format!("expected a scalar, found {other}"))),
        }
    }

    /// Mode implied by the JSON encoding itself (string parts mean exact).
    pub fn json_mode(v: &Value) -> Option<ScalarMode> {
        match v {
            Value::Object(map) => match map.get("re").or_else(|| map.get("im")) {
                Some(Value::String(_)) => Some(ScalarMode::Exact),
                Some(Value::Number(_)) => Some(ScalarMode::float()),
                _ => None,
            },
            Value::Number(n) if n.is_f64() => Some(ScalarMode::float()),
            _ => None,
        }
    }
}

enum Part {
    Rat(Rational),
    Real(f64),
}

fn zero_part(mode: ScalarMode) -> Part {
    if mode.is_exact() {
        Part::Rat(Rational::zero())
    } else {
        Part::Real(0.0)
    }
}

fn part_to_scalar(re: Part, im: Part) -> Scalar {
    match (re, im) {
        (Part::Rat(re), Part::Rat(im)) => Scalar::Exact { re, im },
        (Part::Real(re), Part::Real(im)) => Scalar::Float { re, im },
        _ => unreachable!("parts decoded in one mode"),
    }
}

fn json_part(v: &Value, mode: ScalarMode, field: &str) -> Result<Part> {
    match (v, mode) {
        (Value::String(s), ScalarMode::Exact) => Ok(Part::Rat(parse_rational(s)?)),
        (Value::String(s), ScalarMode::Float(_)) => Ok(Part::Real(parse_real(s)?)),
        (Value::Number(n), ScalarMode::Float(_)) => n
            .as_f64()
            .map(Part::Real)
            .ok_or_else(|| Error::Json(format!("`{field}` is not a double"))),
        (Value::Number(n), ScalarMode::Exact) => n
            .as_i64()
            .map(|i| Part::Rat(rat(i)))
            .ok_or_else(|| Error::Json(format!("`{field}`: exact scalars need integers or \"p/q\" strings, got {n}"))),
        (other, _) => Err(Error::Json(format!("`{field}`: expected number or string, found {other}"))),
    }
}

/// Splits `a+bi` into its real and imaginary texts. The split point is the last
/// sign that is not leading (and, for floats, not part of an exponent).
fn split_complex(t: &str, exact: bool) -> (Option<&str>, Option<&str>) {
    let Some(body) = t.strip_suffix('i') else {
        return (Some(t), None);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| {
        (bytes[k] == b'+' || bytes[k] == b'-')
            && (exact || !matches!(bytes[k - 1], b'e' | b'E'))
    });
    match split {
        Some(k) => (Some(&body[..k]), Some(&body[k..])),
        None => (None, Some(body)),
    }
}

/// `i`, `+i`, `-i` carry an implicit unit coefficient.
fn unit_coefficient(s: &str) -> String {
    match s {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        _ => s.to_string(),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |reason: &str| Error::Parse { token: s.to_string(), reason: reason.to_string() };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("expected an integer numerator"));
    }
    let n = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| bad("bad numerator"))?;
    let d = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("expected a positive integer denominator"));
            }
            BigInt::from_str(d).map_err(|_| bad("bad denominator"))?
        }
    };
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn parse_real(s: &str) -> Result<f64> {
    if s.contains('/') {
        let r = parse_rational(s)?;
        return r.to_f64().ok_or_else(|| Error::Parse {
            token: s.to_string(),
            reason: "rational out of double range".into(),
        });
    }
    s.parse::<f64>().map_err(|_| Error::Parse {
        token: s.to_string(),
        reason: "expected a decimal literal".into(),
    })
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact { re, im } => {
                if im.is_zero() {
                    write!(f, "{re}")
                } else {
                    let sign = if im.is_negative() { '-' } else { '+' };
                    write!(f, "{re}{sign}{}i", im.abs())
                }
            }
            Scalar::Float { re, im } => {
                if *im == 0.0 {
                    write!(f, "{re}")
                } else {
                    let sign = if im.is_sign_negative() { '-' } else { '+' };
                    write!(f, "{re}{sign}{}i", im.abs())
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        let mode = Scalar::json_mode(&v).unwrap_or(ScalarMode::Exact);
        Scalar::from_json(&v, mode).map_err(serde::de::Error::custom)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact { re: -re, im: -im },
            Scalar::Float { re, im } => Scalar::Float { re: -re, im: -im },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar {}: {e}", stringify!($method)),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);
