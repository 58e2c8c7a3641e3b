//! Parametrized families of solutions: `τ` on `GL2 × GL1`, the commutative
//! families `R^cf` and `R^ff`, and their specializations.

use std::f64::consts::PI;
use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{Scalar, ScalarMode};
use crate::sixvertex::{Kind, SixVertexMatrix};

/// Largest tensor length accepted by [`tl_generator`].
pub const DEFAULT_TL_BOUND: usize = 6;

fn same_mode(xs: &[&Scalar]) -> Result<ScalarMode> {
    let mode = if xs[0].is_exact() { ScalarMode::Exact } else { ScalarMode::float() };
    for x in xs {
        if x.mode_name() != mode.name() {
            return Err(Error::ModeMismatch(mode.name(), x.mode_name()));
        }
    }
    Ok(mode)
}

fn nonzero(x: &Scalar, mode: ScalarMode, what: &str) -> Result<()> {
    if mode.is_zero(x) {
        Err(Error::NotInS(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

/// An element `(m, c)` of `GL2 × GL1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GL2GL1Element {
    pub m11: Scalar,
    pub m12: Scalar,
    pub m21: Scalar,
    pub m22: Scalar,
    pub c: Scalar,
}

impl GL2GL1Element {
    pub fn new(m11: Scalar, m12: Scalar, m21: Scalar, m22: Scalar, c: Scalar) -> Result<Self> {
        let mode = same_mode(&[&m11, &m12, &m21, &m22, &c])?;
        nonzero(&(&m11 * &m22 - &m12 * &m21), mode, "det of the GL2 part")?;
        nonzero(&c, mode, "the GL1 part")?;
        Ok(GL2GL1Element { m11, m12, m21, m22, c })
    }

    pub fn from_ints(m: [[i64; 2]; 2], c: i64) -> Result<Self> {
        let s = Scalar::exact_int;
        Self::new(s(m[0][0]), s(m[0][1]), s(m[1][0]), s(m[1][1]), s(c))
    }

    pub fn mul(&self, h: &GL2GL1Element) -> GL2GL1Element {
        GL2GL1Element {
            m11: &self.m11 * &h.m11 + &self.m12 * &h.m21,
            m12: &self.m11 * &h.m12 + &self.m12 * &h.m22,
            m21: &self.m21 * &h.m11 + &self.m22 * &h.m21,
            m22: &self.m21 * &h.m12 + &self.m22 * &h.m22,
            c: &self.c * &h.c,
        }
    }
}

/// `τ(m, c)`: `a1 = m11, b2 = m12, b1 = -m21, a2 = m22, c1 = c` and `c2`
/// chosen so that the result is free-fermionic.
pub fn tau(g: &GL2GL1Element) -> Result<SixVertexMatrix> {
    let mode = same_mode(&[&g.m11])?;
    let (a1, a2, b1, b2) = (g.m11.clone(), g.m22.clone(), -&g.m21, g.m12.clone());
    let quadric = &a1 * &a2 + &b1 * &b2;
    if mode.is_zero(&quadric) {
        return Err(Error::NotInS("a1*a2 + b1*b2 vanishes, so c2 = 0".into()));
    }
    let c2 = &quadric / &g.c;
    SixVertexMatrix::with_mode([a1, a2, b1, b2, g.c.clone(), c2], mode)
}

/// `(q1, q2; β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub q1: Scalar,
    pub q2: Scalar,
    pub beta: Scalar,
}

impl FamilyParams {
    pub fn new(q1: Scalar, q2: Scalar, beta: Scalar) -> Result<Self> {
        let mode = same_mode(&[&q1, &q2, &beta])?;
        if mode.eq(&q1, &q2) {
            return Err(Error::NotInS("q1 = q2 makes c1 and c2 vanish".into()));
        }
        nonzero(&beta, mode, "beta")?;
        Ok(FamilyParams { q1, q2, beta })
    }

    pub fn from_ints(q1: i64, q2: i64, beta: i64) -> Result<Self> {
        Self::new(Scalar::exact_int(q1), Scalar::exact_int(q2), Scalar::exact_int(beta))
    }
}

/// `(z1, z2; w)` in the torus, multiplied componentwise.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElem3 {
    pub z1: Scalar,
    pub z2: Scalar,
    pub w: Scalar,
}

impl GroupElem3 {
    pub fn new(z1: Scalar, z2: Scalar, w: Scalar) -> Result<Self> {
        let mode = same_mode(&[&z1, &z2, &w])?;
        for (x, name) in [(&z1, "z1"), (&z2, "z2"), (&w, "w")] {
            nonzero(x, mode, name)?;
        }
        Ok(GroupElem3 { z1, z2, w })
    }

    pub fn from_ints(z1: i64, z2: i64, w: i64) -> Result<Self> {
        Self::new(Scalar::exact_int(z1), Scalar::exact_int(z2), Scalar::exact_int(w))
    }

    pub fn mul(&self, h: &GroupElem3) -> GroupElem3 {
        GroupElem3 { z1: &self.z1 * &h.z1, z2: &self.z2 * &h.z2, w: &self.w * &h.w }
    }
}

impl fmt::Display for GroupElem3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {})", self.z1, self.z2, self.w)
    }
}

/// `R^kind_{q1,q2;β}(z1, z2; w)`.
pub fn r_family(p: &FamilyParams, kind: Kind, g: &GroupElem3) -> Result<SixVertexMatrix> {
    let m = r_entries(p, kind, g)?;
    if !m.in_s() {
        return Err(Error::NotInS("z1*z2*(q1-q2)^2 = q1*q2*(z1-z2)^2, so c1*c2 - b1*b2 vanishes".into()));
    }
    Ok(m)
}

/// The family entries, without the invertibility check.
fn r_entries(p: &FamilyParams, kind: Kind, g: &GroupElem3) -> Result<SixVertexMatrix> {
    let mode = same_mode(&[&p.q1, &g.z1])?;
    let (q1, q2, z1, z2) = (&p.q1, &p.q2, &g.z1, &g.z2);
    let a1 = q1 * z1 - q2 * z2;
    let a2 = match kind {
        Kind::Cf => a1.clone(),
        Kind::Ff => q1 * z2 - q2 * z1,
    };
    if mode.is_zero(&a1) {
        return Err(Error::NotInS("a1 = q1*z1 - q2*z2 vanishes".into()));
    }
    if mode.is_zero(&a2) {
        return Err(Error::NotInS("a2 = q1*z2 - q2*z1 vanishes".into()));
    }
    let dz = z1 - z2;
    let dq = q1 - q2;
    SixVertexMatrix::with_mode(
        [a1, a2, q1 * &dz * &p.beta, q2 * &dz / &p.beta, z1 * &dq * &g.w, z2 * &dq / &g.w],
        mode,
    )
}

/// `R^kind_q(z) = R^kind_{q,1/q;1}(z, 1/z; 1)`.
pub fn quantum_r(q: &Scalar, z: &Scalar, kind: Kind) -> Result<SixVertexMatrix> {
    let mode = same_mode(&[q, z])?;
    nonzero(q, mode, "q")?;
    nonzero(z, mode, "z")?;
    let one = mode.one();
    let p = FamilyParams::new(q.clone(), q.checked_recip()?, one.clone())?;
    r_family(&p, kind, &GroupElem3::new(z.clone(), z.checked_recip()?, one)?)
}

/// Which `b` entry of a five-vertex matrix vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiveVertexSide {
    B1Zero,
    B2Zero,
}

impl FiveVertexSide {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "b1_zero" | "b1-zero" | "b1" => Ok(FiveVertexSide::B1Zero),
            "b2_zero" | "b2-zero" | "b2" => Ok(FiveVertexSide::B2Zero),
            _ => Err(Error::Parse { token: s.into(), reason: "expected `b1_zero` or `b2_zero`".into() }),
        }
    }
}

/// The rescaled `q1 → 0` or `q2 → 0` degenerations of the commutative
/// families. `side` names the entry that is zero in the returned matrix.
pub fn five_vertex(kind: Kind, side: FiveVertexSide, g: &GroupElem3, beta: &Scalar) -> Result<SixVertexMatrix> {
    let mode = same_mode(&[&g.z1, beta])?;
    nonzero(beta, mode, "beta")?;
    let (z1, z2) = (&g.z1, &g.z2);
    let b = (z1 - z2) * beta;
    let zero = mode.zero();
    let (c1, c2) = (z1 * &g.w, z2 / &g.w);
    let entries = match (kind, side) {
        (Kind::Cf, FiveVertexSide::B2Zero) => [z1.clone(), z1.clone(), b, zero, c1, c2],
        (Kind::Cf, FiveVertexSide::B1Zero) => [z2.clone(), z2.clone(), zero, b, c1, c2],
        (Kind::Ff, FiveVertexSide::B2Zero) => [z1.clone(), z2.clone(), b, zero, c1, c2],
        (Kind::Ff, FiveVertexSide::B1Zero) => [z2.clone(), z1.clone(), zero, b, c1, c2],
    };
    SixVertexMatrix::with_mode(entries, mode)
}

/// `R^cf` at `q1 = q, q2 = 1/q, β = 1/q, z1 = z, z2 = 1/z, w = 1/z` with
/// `q = z = exp(iπ/3)`. Every entry equals `i√3`, so the result is singular
/// and lies outside `S`.
pub fn asm_matrix() -> SixVertexMatrix {
    let zeta = Scalar::float((PI / 3.0).cos(), (PI / 3.0).sin());
    let inv = zeta.checked_recip().expect("nonzero");
    let p = FamilyParams::new(zeta.clone(), inv.clone(), inv.clone()).expect("q1 != q2");
    let g = GroupElem3::new(zeta, inv.clone(), inv).expect("nonzero");
    r_entries(&p, Kind::Cf, &g).expect("corners nonzero at the cube root")
}

/// The 4×4 matrix `E` whose slot embeddings generate the Temperley-Lieb
/// algebra with loop weight `-(q + 1/q)`.
pub fn tl_matrix(q: &Scalar) -> Result<SquareMatrix> {
    let mode = same_mode(&[q])?;
    nonzero(q, mode, "q")?;
    let qi = q.checked_recip()?;
    let mut e = SquareMatrix::zeros(4, mode);
    e.set(1, 1, -&qi);
    e.set(1, 2, q.clone());
    e.set(2, 1, qi);
    e.set(2, 2, -q);
    Ok(e)
}

/// `E` acting on tensor slots `(k, k+1)` of `V^{⊗n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TlOperator {
    pub n: usize,
    pub k: usize,
    pub entries: SquareMatrix,
}

pub fn tl_generator(q: &Scalar, n: usize, k: usize) -> Result<TlOperator> {
    tl_generator_bounded(q, n, k, DEFAULT_TL_BOUND)
}

pub fn tl_generator_bounded(q: &Scalar, n: usize, k: usize, max_n: usize) -> Result<TlOperator> {
    if n < 2 || n > max_n {
        return Err(Error::OutOfRange(format!("tensor length {n} outside 2..={max_n}")));
    }
    if k < 1 || k > n - 1 {
        return Err(Error::OutOfRange(format!("position {k} outside 1..={}", n - 1)));
    }
    let e = tl_matrix(q)?;
    let mode = e.mode();
    let entries = SquareMatrix::identity(1 << (k - 1), mode)
        .kron(&e)
        .kron(&SquareMatrix::identity(1 << (n - k - 1), mode));
    Ok(TlOperator { n, k, entries })
}

/// Coefficients `(q z1 - z2/q, z1 - z2)` of `R^cf_{q,1/q;1}(z1, z2; 1)` in
/// the basis `I, E`.
pub fn r_as_tl(q: &Scalar, z1: &Scalar, z2: &Scalar) -> Result<(Scalar, Scalar)> {
    let mode = same_mode(&[q, z1, z2])?;
    nonzero(q, mode, "q")?;
    let qi = q.checked_recip()?;
    let scalar_part = q * z1 - &qi * z2;
    let e_part = z1 - z2;
    if mode.is_exact() {
        let p = FamilyParams::new(q.clone(), qi, mode.one())?;
        if let Ok(r) = r_family(&p, Kind::Cf, &GroupElem3::new(z1.clone(), z2.clone(), mode.one())?) {
            let rebuilt = &SquareMatrix::identity(4, mode).scale(&scalar_part) + &tl_matrix(q)?.scale(&e_part);
            debug_assert_eq!(rebuilt, r.as_operator());
        }
    }
    Ok((scalar_part, e_part))
}

/// A family request as read from JSON:
/// `{"kind":"cf"|"ff","q1":…,"q2":…,"beta":…,"z1":…,"z2":…,"w":…}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyRequest {
    pub params: FamilyParams,
    pub kind: Kind,
    pub g: GroupElem3,
}

impl FamilyRequest {
    pub fn from_json(v: &Value, mode: ScalarMode) -> Result<Self> {
        let field = |k: &str, default: Option<i64>| -> Result<Scalar> {
            match (v.get(k), default) {
                (Some(x), _) => Scalar::from_json(x, mode),
                (None, Some(d)) => Ok(mode.int(d)),
                (None, None) => Err(Error::Json(format!("missing family parameter `{k}`"))),
            }
        };
        let kind = match v.get("kind") {
            Some(Value::String(s)) => Kind::parse(s)?,
            Some(other) => return Err(Error::Json(format!("`kind` must be a string, found {other}"))),
            None => return Err(Error::Json("missing family parameter `kind`".into())),
        };
        Ok(FamilyRequest {
            params: FamilyParams::new(field("q1", None)?, field("q2", None)?, field("beta", Some(1))?)?,
            kind,
            g: GroupElem3::new(field("z1", None)?, field("z2", None)?, field("w", Some(1))?)?,
        })
    }

    pub fn build(&self) -> Result<SixVertexMatrix> {
        r_family(&self.params, self.kind, &self.g)
    }
}
