//! Uniform dispatch over the three set representations, plus the
//! separation predicate shared by the construction lemmas.

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::lattice::LatticeSet;
use crate::polycube::Polycube;
use crate::rat::{qvec_from_ints, rint, QVec, Rat};
use crate::symmetric::SymSet;
use alloc::vec;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetValue {
    Lattice(LatticeSet),
    Interval(IntervalUnion),
    Cube(Polycube),
}

impl SetValue {
    pub fn is_empty(&self) -> bool {
        match self {
            SetValue::Lattice(s) => s.is_empty(),
            SetValue::Interval(u) => u.is_empty(),
            SetValue::Cube(p) => p.is_empty(),
        }
    }

    /// Cardinality for discrete sets, measure for continuous ones,
    /// as one exact rational.
    pub fn size(&self) -> Rat {
        match self {
            SetValue::Lattice(s) => rint(s.card() as i64),
            SetValue::Interval(u) => u.measure(),
            SetValue::Cube(p) => p.measure(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SetValue::Lattice(_) => "latticeset",
            SetValue::Interval(_) => "intervals",
            SetValue::Cube(_) => "polycube",
        }
    }

    pub fn sumset(&self, other: &SetValue) -> Result<SetValue> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::Empty("sumset operand"));
        }
        match (self, other) {
            (SetValue::Lattice(a), SetValue::Lattice(b)) => {
                Ok(SetValue::Lattice(a.sumset(b)?))
            }
            (SetValue::Interval(a), SetValue::Interval(b)) => {
                Ok(SetValue::Interval(a.sumset(b)))
            }
            (SetValue::Cube(a), SetValue::Cube(b)) => Ok(SetValue::Cube(a.sumset(b)?)),
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn dilate(&self, n: u32) -> Result<SetValue> {
        if n == 0 {
            return Err(Error::Precondition("dilation factor must be positive".into()));
        }
        Ok(match self {
            SetValue::Lattice(s) => SetValue::Lattice(s.dilate(n as i64)),
            SetValue::Interval(u) => {
                SetValue::Interval(u.scale(&Rat::from(BigInt::from(n))))
            }
            SetValue::Cube(p) => SetValue::Cube(p.dilate(n)?),
        })
    }

    /// { x : n x in A }.
    pub fn divide(&self, n: u32) -> Result<SetValue> {
        if n == 0 {
            return Err(Error::Precondition("division factor must be positive".into()));
        }
        Ok(match self {
            SetValue::Lattice(s) => SetValue::Lattice(s.divide(n as i64)),
            SetValue::Interval(u) => {
                SetValue::Interval(u.scale(&Rat::new(BigInt::from(1), BigInt::from(n))))
            }
            SetValue::Cube(p) => SetValue::Cube(p.divide(n)?),
        })
    }

    /// s-fold iterated sumset; s = 1 returns the set itself.
    pub fn iterated_sumset(&self, s: u32) -> Result<SetValue> {
        if s == 0 {
            return Err(Error::Precondition("iterated sumset needs s >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..s {
            acc = acc.sumset(self)?;
        }
        Ok(acc)
    }

    /// |A+B| / |A| exactly; B defaults to A.
    pub fn doubling(&self, other: Option<&SetValue>) -> Result<Rat> {
        let denom = self.size();
        if denom.is_zero() {
            return Err(Error::ZeroMeasure);
        }
        let sum = self.sumset(other.unwrap_or(self))?;
        Ok(sum.size() / denom)
    }

    pub fn negate(&self) -> SetValue {
        match self {
            SetValue::Lattice(s) => SetValue::Lattice(s.negate()),
            SetValue::Interval(u) => SetValue::Interval(u.negate()),
            SetValue::Cube(p) => SetValue::Cube(p.negate()),
        }
    }
}

pub struct SeparationCheck {
    pub separated: bool,
    /// A violating pair (a, a') with a - a' in L, when not separated.
    pub witness: Option<(QVec, QVec)>,
}

/// All pairwise differences of distinct elements of A avoid L.
/// Discrete A is checked pointwise; a 1-D continuous A is checked through
/// its difference set (A - A) cap L, recovering a witness pair exactly.
pub fn is_separated(a: &SetValue, l: &SymSet) -> Result<SeparationCheck> {
    l.verify()?;
    match a {
        SetValue::Lattice(s) => {
            let pts = s.points();
            for (i, p) in pts.iter().enumerate() {
                for q in &pts[i + 1..] {
                    let diff: QVec = qvec_from_ints(&crate::rat::zsub(p, q));
                    if l.contains(&diff)? {
                        return Ok(SeparationCheck {
                            separated: false,
                            witness: Some((qvec_from_ints(p), qvec_from_ints(q))),
                        });
                    }
                }
            }
            Ok(SeparationCheck { separated: true, witness: None })
        }
        SetValue::Interval(u) => {
            let lu = match l {
                SymSet::Interval(lu) => lu,
                _ => {
                    return Err(Error::Precondition(
                        "continuous separation needs a 1-D interval locality set".into(),
                    ))
                }
            };
            // Distinct elements a > a' differ by a point of (A - A) \ {0};
            // intersect that with L and walk back to a witness.
            let diff = u.sumset(&u.negate());
            let bad = diff.intersect(lu);
            for (lo, hi) in bad.components() {
                let w = if lo.is_zero() && hi.is_zero() {
                    continue; // the trivial difference
                } else if !hi.is_zero() && !lo.is_zero() && lo.is_negative() && hi.is_positive() {
                    // Component straddles 0: any positive difference works.
                    crate::roots::midpoint(&Rat::zero(), hi)
                } else if hi.is_zero() {
                    lo.clone()
                } else if lo.is_zero() {
                    hi.clone()
                } else {
                    lo.clone()
                };
                // Find a with a in A and a - w in A.
                let shifted = u.translate(&w);
                let meet = u.intersect(&shifted);
                if let Some(lo_a) = meet.min() {
                    return Ok(SeparationCheck {
                        separated: false,
                        witness: Some((vec![lo_a.clone()], vec![lo_a - &w])),
                    });
                }
            }
            Ok(SeparationCheck { separated: true, witness: None })
        }
        SetValue::Cube(_) => Err(Error::Precondition(
            "separation for k >= 2 continuous sets is out of scope".into(),
        )),
    }
}
