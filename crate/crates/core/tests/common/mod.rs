//! Reference computations that avoid the library's operator code: tensor
//! embeddings, products, inverses and null spaces are written out by index.

#![allow(dead_code)]

use rand::Rng;
use sixvertex::sampling;
use sixvertex::families::{r_family, tau, FamilyParams, GL2GL1Element, GroupElem3};
use sixvertex::{Kind, Scalar, SixVertexMatrix};

pub type Dense = Vec<Vec<Scalar>>;

pub fn zero() -> Scalar {
    Scalar::exact_int(0)
}

pub fn one() -> Scalar {
    Scalar::exact_int(1)
}

/// Six-vertex operator on `V⊗V`, index `2i + j` for `e_i⊗e_j`.
pub fn op4(e: &[Scalar; 6]) -> Dense {
    let [a1, a2, b1, b2, c1, c2] = e.clone();
    let z = zero;
    vec![
        vec![a1, z(), z(), z()],
        vec![z(), c1, b1, z()],
        vec![z(), b2, c2, z()],
        vec![z(), z(), z(), a2],
    ]
}

/// `x` acting on slots `(s, s+1)` of `V⊗V⊗V`, `s ∈ {0, 1}`.
pub fn embed3(x: &Dense, s: usize) -> Dense {
    let bits = |n: usize| [(n >> 2) & 1, (n >> 1) & 1, n & 1];
    let mut out = vec![vec![zero(); 8]; 8];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let (br, bc) = (bits(r), bits(c));
            let spectator = 2 - 2 * s; // slot untouched by x
            if br[spectator] != bc[spectator] {
                continue;
            }
            let i = 2 * br[s] + br[s + 1];
            let j = 2 * bc[s] + bc[s + 1];
            *cell = x[i][j].clone();
        }
    }
    out
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = zero();
            for k in 0..n {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc = acc + &a[i][k] * &b[k][j];
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { one() } else { zero() }).collect()).collect()
}

/// The 64 entries of `(u⊗1)(1⊗w)(v⊗1) - (1⊗v)(w⊗1)(1⊗u)`, row-major.
pub fn commutator(u: &[Scalar; 6], w: &[Scalar; 6], v: &[Scalar; 6]) -> Vec<Scalar> {
    let (u4, w4, v4) = (op4(u), op4(w), op4(v));
    let lhs = mul(&mul(&embed3(&u4, 0), &embed3(&w4, 1)), &embed3(&v4, 0));
    let rhs = mul(&mul(&embed3(&v4, 1), &embed3(&w4, 0)), &embed3(&u4, 1));
    lhs.into_iter().flatten().zip(rhs.into_iter().flatten()).map(|(l, r)| l - r).collect()
}

pub fn commutator_vanishes(u: &SixVertexMatrix, w: &SixVertexMatrix, v: &SixVertexMatrix) -> bool {
    commutator(u.entries(), w.entries(), v.entries()).iter().all(Scalar::is_zero)
}

/// Basis of the null space of an exact matrix given by rows.
pub fn nullspace(mut rows: Dense, ncols: usize) -> Dense {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].checked_recip().unwrap();
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                rows[i] = rows[i].iter().zip(&rows[r]).map(|(x, y)| x - &(&f * y)).collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero(); ncols];
            v[f] = one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[row][f];
            }
            v
        })
        .collect()
}

/// All `w` (as entry vectors) with vanishing commutator against `u` and `v`.
/// The commutator is linear in `w`, so this is a null space.
pub fn brute_force_middle(u: &SixVertexMatrix, v: &SixVertexMatrix) -> Dense {
    let columns: Vec<Vec<Scalar>> = (0..6)
        .map(|t| {
            let mut e: [Scalar; 6] = [(); 6].map(|_| zero());
            e[t] = one();
            commutator(u.entries(), &e, v.entries())
        })
        .collect();
    let rows: Dense = (0..64).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    nullspace(rows, 6)
}

/// Gauss-Jordan inverse, `None` when singular.
pub fn inverse(a: &Dense) -> Option<Dense> {
    let n = a.len();
    let mut m: Dense = a.iter().zip(identity(n)).map(|(r, i)| r.iter().cloned().chain(i).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].checked_recip().unwrap();
        m[c] = m[c].iter().map(|x| x * &inv).collect();
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                m[i] = m[i].iter().zip(&m[c]).map(|(x, y)| x - &(&f * y)).collect();
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Reads `(a1, a2, b1, b2, c1, c2)` back from a 4×4 operator.
pub fn entries_of(op: &Dense) -> [Scalar; 6] {
    [
        op[0][0].clone(),
        op[3][3].clone(),
        op[1][2].clone(),
        op[2][1].clone(),
        op[1][1].clone(),
        op[2][2].clone(),
    ]
}

/// `(Δ1, Δ2)` straight from the entries.
pub fn delta(e: &[Scalar; 6]) -> (Scalar, Scalar) {
    let [a1, a2, b1, b2, c1, c2] = e;
    let n = a1 * a2 + b1 * b2 - c1 * c2;
    let two = Scalar::exact_int(2);
    (&n / &(&two * a1 * b1), &n / &(&two * a2 * b2))
}

/// Cross-multiplication test for proportional vectors.
pub fn proportional(x: &[Scalar], y: &[Scalar]) -> bool {
    x.len() == y.len()
        && x.iter().zip(y).all(|(a, b)| a.is_zero() == b.is_zero())
        && (0..x.len()).all(|i| (i + 1..x.len()).all(|j| &x[i] * &y[j] == &x[j] * &y[i]))
}

pub fn random_matrix<R: Rng>(rng: &mut R) -> SixVertexMatrix {
    sampling::exact_sixvertex(rng, 4, 0.2)
}

pub fn random_in_s<R: Rng>(rng: &mut R) -> SixVertexMatrix {
    sampling::exact_in_s(rng, 5, 0.25)
}

pub fn random_in_s_cross<R: Rng>(rng: &mut R) -> SixVertexMatrix {
    sampling::exact_in_s_cross(rng, 5, 0.25)
}

pub fn nonzero<R: Rng>(rng: &mut R) -> Scalar {
    sampling::nonzero_exact_scalar(rng, 5, 0.0)
}

pub fn random_params<R: Rng>(rng: &mut R) -> FamilyParams {
    loop {
        if let Ok(p) = FamilyParams::new(nonzero(rng), nonzero(rng), nonzero(rng)) {
            return p;
        }
    }
}

pub fn random_torus<R: Rng>(rng: &mut R) -> GroupElem3 {
    GroupElem3::new(nonzero(rng), nonzero(rng), nonzero(rng)).unwrap()
}

/// `(R(g), R(gh), R(h))` with all three in `S`.
pub fn random_family_triple<R: Rng>(rng: &mut R, kind: Kind) -> [SixVertexMatrix; 3] {
    loop {
        let p = random_params(rng);
        let (g, h) = (random_torus(rng), random_torus(rng));
        let (Ok(rg), Ok(rgh), Ok(rh)) =
            (r_family(&p, kind, &g), r_family(&p, kind, &g.mul(&h)), r_family(&p, kind, &h))
        else {
            continue;
        };
        return [rg, rgh, rh];
    }
}

pub fn random_gl2gl1<R: Rng>(rng: &mut R) -> GL2GL1Element {
    loop {
        let [m11, m12, m21, m22] = [(); 4].map(|_| sampling::exact_scalar(rng, 5, 0.2));
        if let Ok(g) = GL2GL1Element::new(m11, m12, m21, m22, nonzero(rng)) {
            return g;
        }
    }
}

/// `(τ(g), τ(gh), τ(h))` with all three in `S`.
pub fn random_tau_triple<R: Rng>(rng: &mut R) -> [SixVertexMatrix; 3] {
    loop {
        let (g, h) = (random_gl2gl1(rng), random_gl2gl1(rng));
        let (Ok(tg), Ok(tgh), Ok(th)) = (tau(&g), tau(&g.mul(&h)), tau(&h)) else { continue };
        if tg.in_s() && tgh.in_s() && th.in_s() {
            return [tg, tgh, th];
        }
    }
}
