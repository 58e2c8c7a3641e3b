//! Seeded random scalars and matrices.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Rational, Scalar};
use crate::sixvertex::SixVertexMatrix;

/// Seed of trial `index` under `master`; trials are independent of order.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/d` with `|n| <= bound`, `1 <= d <= bound`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = rational(rng, bound);
        if r != Rational::from_integer(BigInt::from(0)) {
            return r;
        }
    }
}

/// A rational scalar, or with probability `gaussian` a Gaussian rational.
pub fn exact_scalar<R: Rng>(rng: &mut R, bound: i64, gaussian: f64) -> Scalar {
    let re = rational(rng, bound);
    let im = if rng.gen_bool(gaussian) { rational(rng, bound) } else { Rational::from_integer(BigInt::from(0)) };
    Scalar::exact(re, im)
}

pub fn nonzero_exact_scalar<R: Rng>(rng: &mut R, bound: i64, gaussian: f64) -> Scalar {
    loop {
        let x = exact_scalar(rng, bound, gaussian);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Complex float with both parts uniform in `[-1, 1]`, modulus at least 0.2.
pub fn float_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let (re, im) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        let x = Scalar::float(re, im);
        if x.abs() >= 0.2 {
            return x;
        }
    }
}

pub fn exact_sixvertex<R: Rng>(rng: &mut R, bound: i64, gaussian: f64) -> SixVertexMatrix {
    let e = [(); 6].map(|_| exact_scalar(rng, bound, gaussian));
    SixVertexMatrix::new(e).expect("exact entries")
}

/// An exact matrix in `S` (rejection sampling).
pub fn exact_in_s<R: Rng>(rng: &mut R, bound: i64, gaussian: f64) -> SixVertexMatrix {
    loop {
        let m = exact_sixvertex(rng, bound, gaussian);
        if m.in_s() {
            return m;
        }
    }
}

/// An exact matrix in `S^×`.
pub fn exact_in_s_cross<R: Rng>(rng: &mut R, bound: i64, gaussian: f64) -> SixVertexMatrix {
    loop {
        let m = exact_sixvertex(rng, bound, gaussian);
        if m.in_s_cross() {
            return m;
        }
    }
}

pub fn float_in_s_cross<R: Rng>(rng: &mut R) -> SixVertexMatrix {
    loop {
        let m = SixVertexMatrix::new([(); 6].map(|_| float_scalar(rng))).expect("float entries");
        if m.in_s_cross() && m.middle_det().abs() > 1e-2 {
            return m;
        }
    }
}
