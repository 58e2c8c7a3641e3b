//! Dense square matrices over [`Scalar`], sized for operators on `V^{⊗n}` with
//! `dim V = 2` (4×4, 8×8, up to 64×64 for Temperley-Lieb words).

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarMode};

#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    mode: ScalarMode,
    data: Vec<Scalar>,
}

impl SquareMatrix {
    pub fn zeros(n: usize, mode: ScalarMode) -> Self {
        SquareMatrix { n, mode, data: vec![mode.zero(); n * n] }
    }

    pub fn identity(n: usize, mode: ScalarMode) -> Self {
        let mut m = Self::zeros(n, mode);
        for i in 0..n {
            m.data[i * n + i] = mode.one();
        }
        m
    }

    /// Builds from rows; every entry must be in `mode`.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, mode: ScalarMode) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::OutOfRange(format!(
                    "matrix is not square: row of length {} in a {n}-row matrix",
                    row.len()
                )));
            }
            for x in row {
                if x.mode_name() != mode.name() {
                    return Err(Error::ModeMismatch(mode.name(), x.mode_name()));
                }
                data.push(x);
            }
        }
        Ok(SquareMatrix { n, mode, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert_eq!(x.mode_name(), self.mode.name(), "entry mode differs from matrix mode");
        self.data[i * self.n + j] = x;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.n)
    }

    pub fn scale(&self, k: &Scalar) -> SquareMatrix {
        SquareMatrix { n: self.n, mode: self.mode, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// Structural zero test.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Entrywise equality under the matrix mode.
    pub fn approx_eq(&self, other: &SquareMatrix) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(x, y)| self.mode.eq(x, y))
    }

    /// Kronecker product `self ⊗ other`; row index of `(i, j)` is `i * other.dim() + j`.
    pub fn kron(&self, other: &SquareMatrix) -> SquareMatrix {
        let (p, q) = (self.n, other.n);
        let mut out = SquareMatrix::zeros(p * q, self.mode);
        for i in 0..p {
            for k in 0..p {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..q {
                    for l in 0..q {
                        let b = other.get(j, l);
                        if !b.is_zero() {
                            out.data[(i * q + j) * p * q + k * q + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn determinant(&self) -> Scalar {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = self.mode.one();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs()));
            let Some(pivot) = pivot else {
                return self.mode.zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = &det * &p;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = &a[r * n + col] / &p;
                for j in col..n {
                    let t = &f * &a[col * n + j];
                    a[r * n + j] = &a[r * n + j] - &t;
                }
            }
        }
        det
    }
}

impl Mul<&SquareMatrix> for &SquareMatrix {
    type Output = SquareMatrix;

    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = SquareMatrix::zeros(n, self.mode);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }
}

impl Add<&SquareMatrix> for &SquareMatrix {
    type Output = SquareMatrix;

    fn add(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(x, y)| x + y).collect();
        SquareMatrix { n: self.n, mode: self.mode, data }
    }
}

impl Sub<&SquareMatrix> for &SquareMatrix {
    type Output = SquareMatrix;

    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(x, y)| x - y).collect();
        SquareMatrix { n: self.n, mode: self.mode, data }
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
