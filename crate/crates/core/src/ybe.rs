//! The Yang-Baxter commutator
//!
//! ```text
//! [[u, w, v]] = (u⊗1)(1⊗w)(v⊗1) - (1⊗v)(w⊗1)(1⊗u)
//! ```
//!
//! It acts on `V⊗V⊗V` with the basis `e_i⊗e_j⊗e_k` in lexicographic order
//! (index `4i + 2j + k`). This module also holds the closed-form solvers for
//! the middle, left and right matrix.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{Scalar, ScalarMode};
use crate::sixvertex::SixVertexMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct YbTriple {
    pub u: SixVertexMatrix,
    pub w: SixVertexMatrix,
    pub v: SixVertexMatrix,
}

impl YbTriple {
    pub fn new(u: SixVertexMatrix, w: SixVertexMatrix, v: SixVertexMatrix) -> Result<Self> {
        for m in [&w, &v] {
            if m.mode().name() != u.mode().name() {
                return Err(Error::ModeMismatch(u.mode().name(), m.mode().name()));
            }
        }
        Ok(YbTriple { u, w, v })
    }

    pub fn mode(&self) -> ScalarMode {
        self.u.mode()
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({ "u": self.u.to_json(), "w": self.w.to_json(), "v": self.v.to_json() })
    }

    pub fn from_json(v: &Value, default_mode: ScalarMode) -> Result<Self> {
        let get = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::Json(format!("missing `{k}` in triple")))
                .and_then(|x| SixVertexMatrix::from_json(x, default_mode))
        };
        YbTriple::new(get("u")?, get("w")?, get("v")?)
    }
}

impl fmt::Display for YbTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}, {}]]", self.u, self.w, self.v)
    }
}

impl Serialize for YbTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn left(x: &SixVertexMatrix) -> SquareMatrix {
    x.as_operator().kron(&SquareMatrix::identity(2, x.mode()))
}

fn right(x: &SixVertexMatrix) -> SquareMatrix {
    SquareMatrix::identity(2, x.mode()).kron(&x.as_operator())
}

/// The two sides `(u⊗1)(1⊗w)(v⊗1)` and `(1⊗v)(w⊗1)(1⊗u)`.
pub fn yb_sides(t: &YbTriple) -> (SquareMatrix, SquareMatrix) {
    let lhs = &(&left(&t.u) * &right(&t.w)) * &left(&t.v);
    let rhs = &(&right(&t.v) * &left(&t.w)) * &right(&t.u);
    (lhs, rhs)
}

pub fn yb_commutator(t: &YbTriple) -> SquareMatrix {
    let (lhs, rhs) = yb_sides(t);
    &lhs - &rhs
}

/// The thirteen scalar equations as `(lhs, rhs)` pairs.
pub fn component_sides(t: &YbTriple) -> [(Scalar, Scalar); 13] {
    let (u, w, v) = (&t.u, &t.w, &t.v);
    let (a1u, a2u, b1u, b2u, c1u, c2u) = (u.a1(), u.a2(), u.b1(), u.b2(), u.c1(), u.c2());
    let (a1v, a2v, b1v, b2v, c1v, c2v) = (v.a1(), v.a2(), v.b1(), v.b2(), v.c1(), v.c2());
    let (a1w, a2w, b1w, b2w, c1w, c2w) = (w.a1(), w.a2(), w.b1(), w.b2(), w.c1(), w.c2());
    [
        (c1w * c2u * c2v, c1u * c1v * c2w),
        (a1w * c1u * c1v + b1v * b2u * c1w, a1u * a1v * c1w),
        (a1w * b1u * c1v + b1v * c1w * c2u, a1u * b1w * c1v),
        (a1w * b2v * c1u + b2u * c1w * c2v, a1v * b2w * c1u),
        (a1w * b1u * c2v + b1v * c1u * c2w, a1u * b1w * c2v),
        (a2w * c1u * c1v + b1u * b2v * c1w, a2u * a2v * c1w),
        (a2w * b1v * c1u + b1u * c1w * c2v, a2v * b1w * c1u),
        (a1w * b2v * c2u + b2u * c1v * c2w, a1v * b2w * c2u),
        (a1w * c2u * c2v + b1v * b2u * c2w, a1u * a1v * c2w),
        (a2w * b2u * c1v + b2v * c1w * c2u, a2u * b2w * c1v),
        (a2w * b1v * c2u + b1u * c1v * c2w, a2v * b1w * c2u),
        (a2w * b2u * c2v + b2v * c1u * c2w, a2u * b2w * c2v),
        (a2w * c2u * c2v + b1u * b2v * c2w, a2u * a2v * c2w),
    ]
}

/// `lhs - rhs` of each component equation.
pub fn component_residuals(t: &YbTriple) -> [Scalar; 13] {
    component_sides(t).map(|(l, r)| l - r)
}

pub fn is_yb_solution(t: &YbTriple) -> bool {
    let mode = t.mode();
    if !mode.is_exact() {
        let unit = YbTriple { u: t.u.unit_scaled(), w: t.w.unit_scaled(), v: t.v.unit_scaled() };
        let (lhs, rhs) = yb_sides(&unit);
        return lhs.approx_eq(&rhs);
    }
    let (lhs, rhs) = yb_sides(t);
    let solved = lhs.approx_eq(&rhs);
    if mode.is_exact() {
        debug_assert_eq!(solved, component_sides(t).iter().all(|(l, r)| l == r));
    }
    solved
}

/// Values of the two consistency conditions for composing `u` and `v`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveConditions {
    pub cond1_lhs: Scalar,
    pub cond1_rhs: Scalar,
    pub cond2_lhs: Scalar,
    pub cond2_rhs: Scalar,
    pub satisfied: bool,
}

impl fmt::Display for SolveConditions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition 1: {} vs {}; condition 2: {} vs {}",
            self.cond1_lhs, self.cond1_rhs, self.cond2_lhs, self.cond2_rhs
        )
    }
}

fn require_s(x: &SixVertexMatrix, name: &str) -> Result<()> {
    let bad = x.s_violations();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::NotInS(format!("{name} = {x}: {} vanish(es)", bad.join(", "))))
    }
}

/// `(a1(v) - a2*(v)) b1(u) = (a2(u) - a1*(u)) b1(v)` and
/// `(a1(u) - a2*(u)) b2(v) = (a2(v) - a1*(v)) b2(u)`.
pub fn solve_conditions(u: &SixVertexMatrix, v: &SixVertexMatrix) -> Result<SolveConditions> {
    require_s(u, "u")?;
    require_s(v, "v")?;
    let [cond1_lhs, cond1_rhs, cond2_lhs, cond2_rhs] = condition_values(u, v)?;
    let satisfied = if u.mode().is_exact() {
        cond1_lhs == cond1_rhs && cond2_lhs == cond2_rhs
    } else {
        // the conditions are homogeneous, so decide them on unit representatives
        let [l1, r1, l2, r2] = condition_values(&u.unit_scaled(), &v.unit_scaled())?;
        let mode = u.mode();
        mode.eq(&l1, &r1) && mode.eq(&l2, &r2)
    };
    Ok(SolveConditions { cond1_lhs, cond1_rhs, cond2_lhs, cond2_rhs, satisfied })
}

fn condition_values(u: &SixVertexMatrix, v: &SixVertexMatrix) -> Result<[Scalar; 4]> {
    let (du, dv) = (u.dual_aux()?, v.dual_aux()?);
    Ok([
        (v.a1() - &dv.a2_star) * u.b1(),
        (u.a2() - &du.a1_star) * v.b1(),
        (u.a1() - &du.a2_star) * v.b2(),
        (v.a2() - &dv.a1_star) * u.b2(),
    ])
}

/// The middle matrix `w` with `[[u, w, v]] = 0`, scaled so that
/// `c1(w) = c1(u) c1(v)` and `c2(w) = c2(u) c2(v)`.
///
/// A `w` proportional to the identity is returned as is.
pub fn solve_w(u: &SixVertexMatrix, v: &SixVertexMatrix) -> Result<SixVertexMatrix> {
    let cond = solve_conditions(u, v)?;
    if !cond.satisfied {
        return Err(Error::Undefined(Box::new(cond)));
    }
    let mode = u.mode();
    let (du, dv) = (u.dual_aux()?, v.dual_aux()?);
    let a1 = u.a1() * v.a1() - v.b1() * u.b2();
    let a2 = u.a2() * v.a2() - u.b1() * v.b2();
    let b1 = &du.a1_star * v.b1() + v.a1() * u.b1();
    let b2 = &dv.a1_star * u.b2() + u.a1() * v.b2();
    let c1 = u.c1() * v.c1();
    let c2 = u.c2() * v.c2();
    debug_assert!(!mode.is_exact() || b1 == &dv.a2_star * u.b1() + u.a2() * v.b1());
    debug_assert!(!mode.is_exact() || b2 == &du.a2_star * v.b2() + v.a2() * u.b2());

    let w = SixVertexMatrix::with_mode([a1, a2, b1, b2, c1, c2], mode)?;
    let vanishing = w.s_violations();
    if !vanishing.is_empty() {
        return Err(Error::DegenerateProduct(vanishing));
    }
    debug_assert!(!mode.is_exact() || is_yb_solution(&YbTriple { u: u.clone(), w: w.clone(), v: v.clone() }));
    Ok(w)
}

/// The left matrix `u` with `[[u, w, v]] = 0`, via `[[w, u, v⁻¹]] = 0`.
pub fn solve_u(w: &SixVertexMatrix, v: &SixVertexMatrix) -> Result<SixVertexMatrix> {
    let u = solve_w(w, &v.inverse()?)?;
    if w.mode().is_exact() {
        debug_assert!(solve_u_explicit(w, v).is_ok_and(|e| e.projective_eq(&u)));
    }
    Ok(u)
}

/// The right matrix `v` with `[[u, w, v]] = 0`, via `[[u⁻¹, v, w]] = 0`.
pub fn solve_v(u: &SixVertexMatrix, w: &SixVertexMatrix) -> Result<SixVertexMatrix> {
    let v = solve_w(&u.inverse()?, w)?;
    if u.mode().is_exact() {
        debug_assert!(solve_v_explicit(u, w).is_ok_and(|e| e.projective_eq(&v)));
    }
    Ok(v)
}

/// Direct entry formulas for the left matrix. Meaningful only when the
/// problem is solvable; no conditions are checked.
pub fn solve_u_explicit(w: &SixVertexMatrix, v: &SixVertexMatrix) -> Result<SixVertexMatrix> {
    let dv = v.dual_aux()?;
    SixVertexMatrix::with_mode(
        [
            w.a1() * &dv.a1_star + v.b1() * w.b2(),
            w.a2() * &dv.a2_star + w.b1() * v.b2(),
            w.b1() * v.a2() - v.b1() * w.a2(),
            v.a1() * w.b2() - w.a1() * v.b2(),
            w.c1() * v.c2(),
            v.c1() * w.c2(),
        ],
        w.mode(),
    )
}

/// Direct entry formulas for the right matrix; same caveat as
/// [`solve_u_explicit`].
pub fn solve_v_explicit(u: &SixVertexMatrix, w: &SixVertexMatrix) -> Result<SixVertexMatrix> {
    let du = u.dual_aux()?;
    SixVertexMatrix::with_mode(
        [
            w.a1() * &du.a1_star + w.b1() * u.b2(),
            w.a2() * &du.a2_star + u.b1() * w.b2(),
            w.b1() * u.a1() - u.b1() * w.a1(),
            u.a2() * w.b2() - w.a2() * u.b2(),
            w.c1() * u.c2(),
            u.c1() * w.c2(),
        ],
        u.mode(),
    )
}

/// Whether `u` and `v` lie in a common commutative family.
pub fn is_commutative_pair(u: &SixVertexMatrix, v: &SixVertexMatrix) -> Result<bool> {
    require_s(u, "u")?;
    require_s(v, "v")?;
    let mode = u.mode();
    let (u, v) = (&u.unit_scaled(), &v.unit_scaled());
    let (du, dv) = (u.dual_aux()?, v.dual_aux()?);
    let first = mode.eq(&(u.b1() * v.b2()), &(v.b1() * u.b2()));
    let second = mode.eq(&((u.a1() - &du.a1_star) * v.b1()), &((v.a1() - &dv.a1_star) * u.b1()));
    let third = mode.eq(&((u.a2() - &du.a2_star) * v.b2()), &((v.a2() - &dv.a2_star) * u.b2()));
    Ok(first && second && third)
}

/// The six triples whose commutators vanish together:
/// `(u,w,v), (w,u,v⁻¹), (u⁻¹,v,w), (v⁻¹,w⁻¹,u⁻¹), (v,u⁻¹,w⁻¹), (w⁻¹,v⁻¹,u)`.
pub fn equivalent_forms(t: &YbTriple) -> Result<Vec<YbTriple>> {
    let (u, w, v) = (&t.u, &t.w, &t.v);
    let (ui, wi, vi) = (u.inverse()?, w.inverse()?, v.inverse()?);
    let mk = |a: &SixVertexMatrix, b: &SixVertexMatrix, c: &SixVertexMatrix| YbTriple {
        u: a.clone(),
        w: b.clone(),
        v: c.clone(),
    };
    Ok(vec![
        mk(u, w, v),
        mk(w, u, &vi),
        mk(&ui, v, w),
        mk(&vi, &wi, &ui),
        mk(v, &ui, &wi),
        mk(&wi, &vi, u),
    ])
}
