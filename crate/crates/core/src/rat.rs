//! Exact rational scalars and small vector helpers.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// The one scalar type used for every measure, coordinate, and bound.
pub type Rat = Ratio<BigInt>;

/// Rational from an integer pair; panics on q = 0 like `Ratio::new`.
pub fn rat(p: i64, q: i64) -> Rat {
    Ratio::new(BigInt::from(p), BigInt::from(q))
}

pub fn rint(p: i64) -> Rat {
    Ratio::from_integer(BigInt::from(p))
}

pub fn rzero() -> Rat {
    Rat::zero()
}

pub fn rone() -> Rat {
    Rat::one()
}

/// x^n for small nonnegative n.
pub fn rpow(x: &Rat, n: u32) -> Rat {
    let mut acc = rone();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

pub fn rabs(x: &Rat) -> Rat {
    x.abs()
}

/// Largest integer <= x, as a BigInt.
pub fn rfloor(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Smallest integer >= x, as a BigInt.
pub fn rceil(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}

/// Points over the rationals; dimension is the vector length.
pub type QVec = Vec<Rat>;

/// Integer lattice points.
pub type ZVec = Vec<i64>;

pub fn qvec_from_ints(v: &[i64]) -> QVec {
    v.iter().map(|&c| rint(c)).collect()
}

pub fn qadd(a: &[Rat], b: &[Rat]) -> QVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn qsub(a: &[Rat], b: &[Rat]) -> QVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn qscale(c: &Rat, a: &[Rat]) -> QVec {
    a.iter().map(|x| c * x).collect()
}

pub fn qdot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = rzero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn qneg(a: &[Rat]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn qzero(dim: usize) -> QVec {
    let mut v = Vec::with_capacity(dim);
    for _ in 0..dim {
        v.push(rzero());
    }
    v
}

pub fn zadd(a: &[i64], b: &[i64]) -> ZVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn zsub(a: &[i64], b: &[i64]) -> ZVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn zdot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
