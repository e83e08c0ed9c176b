//! Certified handling of the few irrational quantities in the workbench.
//!
//! Everything irrational here has the shape (a^(1/m) + b^(1/m))^m with a, b
//! rational and nonnegative. Comparisons against rationals are decided
//! exactly for m <= 3 by clearing radicals (square once for m = 2; for m = 3
//! the cross term u + v with u^3 = a^2 b, v^3 = a b^2 satisfies the rational
//! cubic w^3 - 3ab w - (a^2 b + a b^2) = 0 and is its largest real root, so a
//! sign evaluation of that cubic decides the order). For larger m, and for
//! comparisons between two such values, we fall back on rational enclosures
//! of the roots, refined up to a precision cap; an undecided comparison is
//! reported, never guessed.

use crate::error::{Error, Result};
use crate::rat::{rint, rpow, rzero, Rat};
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Floor of n^(1/m) for n >= 0.
pub fn int_nth_root_floor(n: &BigInt, m: u32) -> BigInt {
    debug_assert!(!n.is_negative());
    n.nth_root(m)
}

/// Exact rational m-th root of x >= 0, when one exists.
pub fn rat_nth_root_exact(x: &Rat, m: u32) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let rn = int_nth_root_floor(x.numer(), m);
    let rd = int_nth_root_floor(x.denom(), m);
    if rn.pow(m) == *x.numer() && rd.pow(m) == *x.denom() {
        Some(Rat::new(rn, rd))
    } else {
        None
    }
}

/// Rational enclosure lo <= x^(1/m) <= hi with hi - lo = 2^(-bits), for x >= 0.
pub fn nth_root_enclosure(x: &Rat, m: u32, bits: u32) -> (Rat, Rat) {
    debug_assert!(!x.is_negative());
    if let Some(r) = rat_nth_root_exact(x, m) {
        return (r.clone(), r);
    }
    let scale = BigInt::one() << (m as usize * bits as usize);
    let shifted = (x.numer() * &scale) / x.denom();
    let root = int_nth_root_floor(&shifted, m);
    let denom = BigInt::one() << bits as usize;
    (
        Rat::new(root.clone(), denom.clone()),
        Rat::new(root + BigInt::one(), denom),
    )
}

/// The value (a^(1/m) + b^(1/m))^m with a, b >= 0.
///
/// With b = 0 this is exactly a, which gives a uniform carrier for mixing
/// exact rationals into comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowVal {
    pub a: Rat,
    pub b: Rat,
    pub m: u32,
}

const ENCLOSURE_SCHEDULE: [u32; 4] = [32, 64, 128, 256];

impl PowVal {
    pub fn new(a: Rat, b: Rat, m: u32) -> Self {
        debug_assert!(m >= 1 && !a.is_negative() && !b.is_negative());
        PowVal { a, b, m }
    }

    pub fn exact_rat(x: Rat) -> Self {
        PowVal { a: x, b: rzero(), m: 1 }
    }

    /// Exact rational value when one is detectable.
    pub fn exact(&self) -> Option<Rat> {
        if self.b.is_zero() {
            return Some(self.a.clone());
        }
        if self.a.is_zero() {
            return Some(self.b.clone());
        }
        if self.m == 1 {
            return Some(&self.a + &self.b);
        }
        if let (Some(ra), Some(rb)) =
            (rat_nth_root_exact(&self.a, self.m), rat_nth_root_exact(&self.b, self.m))
        {
            return Some(rpow(&(ra + rb), self.m));
        }
        // (sqrt a + sqrt b)^2 = a + b + 2 sqrt(ab) is rational iff ab is a square.
        if self.m == 2 {
            if let Some(rab) = rat_nth_root_exact(&(&self.a * &self.b), 2) {
                return Some(&self.a + &self.b + rint(2) * rab);
            }
        }
        None
    }

    /// Enclosure of the value at the given root precision.
    pub fn enclosure(&self, bits: u32) -> (Rat, Rat) {
        if let Some(v) = self.exact() {
            return (v.clone(), v);
        }
        let (la, ha) = nth_root_enclosure(&self.a, self.m, bits);
        let (lb, hb) = nth_root_enclosure(&self.b, self.m, bits);
        (rpow(&(la + lb), self.m), rpow(&(ha + hb), self.m))
    }

    /// Decide lhs >= value. Exact for m <= 3 and for detectable-rational
    /// values; otherwise enclosure refinement up to the cap.
    pub fn rat_is_ge(&self, lhs: &Rat) -> Result<bool> {
        match self.cmp_rat(lhs) {
            Ok(ord) => Ok(ord != Ordering::Less),
            Err(e) => Err(e),
        }
    }

    /// Order of lhs relative to the value: Greater means lhs > value.
    pub fn cmp_rat(&self, lhs: &Rat) -> Result<Ordering> {
        if let Some(v) = self.exact() {
            return Ok(lhs.cmp(&v));
        }
        let (a, b, m) = (&self.a, &self.b, self.m);
        if m == 2 {
            // lhs vs a + b + 2 sqrt(ab): move the radical to one side and square.
            let r = lhs - a - b;
            let rhs = rint(4) * a * b;
            if r.is_negative() {
                return Ok(Ordering::Less);
            }
            return Ok((&r * &r).cmp(&rhs));
        }
        if m == 3 {
            // lhs vs s^3 where s = a^(1/3) + b^(1/3). With w = (a^2 b)^(1/3)
            // + (a b^2)^(1/3) we have s^3 = a + b + 3w, and w is the largest
            // real root of w^3 - 3ab w - (a^2 b + a b^2), which is increasing
            // past sqrt(ab) <= 2 sqrt(ab) <= w.
            let r = (lhs - a - b) / rint(3);
            if r.is_negative() {
                return Ok(Ordering::Less);
            }
            let ab = a * b;
            let r2 = &r * &r;
            if r2 < ab {
                return Ok(Ordering::Less);
            }
            let p = &r2 * &r - rint(3) * &ab * &r - (&ab * a + &ab * b);
            return Ok(p.cmp(&rzero()));
        }
        for bits in ENCLOSURE_SCHEDULE {
            let (lo, hi) = self.enclosure(bits);
            if *lhs > hi {
                return Ok(Ordering::Greater);
            }
            if *lhs < lo {
                return Ok(Ordering::Less);
            }
        }
        Err(Error::Undecided("rational vs root power"))
    }

    /// Order of self relative to other; exact fast paths, then enclosures.
    pub fn cmp(&self, other: &PowVal) -> Result<Ordering> {
        match (self.exact(), other.exact()) {
            (Some(x), Some(y)) => return Ok(x.cmp(&y)),
            // cmp_rat orders a rational against a value, so x vs other is
            // already self vs other.
            (Some(x), None) => return other.cmp_rat(&x),
            (None, Some(y)) => return Ok(self.cmp_rat(&y)?.reverse()),
            (None, None) => {}
        }
        if self.m == other.m {
            let same_pair = (self.a == other.a && self.b == other.b)
                || (self.a == other.b && self.b == other.a);
            if same_pair {
                return Ok(Ordering::Equal);
            }
            if self.m == 2 {
                // sqrt a + sqrt b = sqrt c + sqrt d iff a+b = c+d and ab = cd.
                if &self.a + &self.b == &other.a + &other.b
                    && &self.a * &self.b == &other.a * &other.b
                {
                    return Ok(Ordering::Equal);
                }
            }
        }
        for bits in ENCLOSURE_SCHEDULE {
            let (lo1, hi1) = self.enclosure(bits);
            let (lo2, hi2) = other.enclosure(bits);
            if lo1 > hi2 {
                return Ok(Ordering::Greater);
            }
            if hi1 < lo2 {
                return Ok(Ordering::Less);
            }
        }
        Err(Error::Undecided("root power vs root power"))
    }

    /// Sum a list of values into either an exact rational or an enclosure at
    /// the final schedule precision.
    pub fn sum(values: &[PowVal]) -> SumVal {
        let mut exact = rzero();
        let mut lo = rzero();
        let mut hi = rzero();
        let mut all_exact = true;
        for v in values {
            match v.exact() {
                Some(x) => {
                    exact += &x;
                    lo += &x;
                    hi += x;
                }
                None => {
                    all_exact = false;
                    let (l, h) = v.enclosure(*ENCLOSURE_SCHEDULE.last().unwrap());
                    lo += l;
                    hi += h;
                }
            }
        }
        if all_exact {
            SumVal::Exact(exact)
        } else {
            SumVal::Enclosure { lo, hi }
        }
    }
}

/// A sum of root-power values: exact when every summand was.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumVal {
    Exact(Rat),
    Enclosure { lo: Rat, hi: Rat },
}

impl SumVal {
    /// Upper end of the value (the sound side for "measure >= total" claims).
    pub fn upper(&self) -> Rat {
        match self {
            SumVal::Exact(x) => x.clone(),
            SumVal::Enclosure { hi, .. } => hi.clone(),
        }
    }

    pub fn lower(&self) -> Rat {
        match self {
            SumVal::Exact(x) => x.clone(),
            SumVal::Enclosure { lo, .. } => lo.clone(),
        }
    }
}

/// Decide lhs >= (a^(1/m) + b^(1/m))^m; the workhorse for the BM chain.
pub fn rat_ge_root_power(lhs: &Rat, a: &Rat, b: &Rat, m: u32) -> Result<bool> {
    PowVal::new(a.clone(), b.clone(), m).rat_is_ge(lhs)
}

/// Enclosures for a whole schedule step, used by reporting code that wants
/// to show an approximate magnitude without introducing floats in the core.
pub fn approx_enclosures(vals: &[PowVal], bits: u32) -> Vec<(Rat, Rat)> {
    vals.iter().map(|v| v.enclosure(bits)).collect()
}

/// Is x a perfect m-th power of a rational (convenience wrapper)?
pub fn is_perfect_power(x: &Rat, m: u32) -> bool {
    rat_nth_root_exact(x, m).is_some()
}

/// One rational from an enclosure midpoint; only for report "approx" fields.
pub fn midpoint(lo: &Rat, hi: &Rat) -> Rat {
    (lo + hi) / rint(2)
}

/// theta = (y/x)^(1/l) enclosure for the second-order check; x, y > 0.
pub fn ratio_root_enclosure(x: &Rat, y: &Rat, l: u32, bits: u32) -> (Rat, Rat) {
    nth_root_enclosure(&(y / x), l, bits)
}

/// 2^l as a rational.
pub fn pow2(l: u32) -> Rat {
    Rat::new(BigInt::one() << l as usize, BigInt::one())
}
