//! Symmetric locality sets: membership oracles for L and its rational
//! dilates, over the three set shapes the algorithms consume.

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::lattice::LatticeSet;
use crate::progression::Zonotope;
use crate::rat::{QVec, Rat};
use alloc::vec::Vec;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub enum SymSet {
    Interval(IntervalUnion),
    Lattice(LatticeSet),
    Zono(Zonotope),
}

impl SymSet {
    /// 0 in L and L = -L; every constructor path goes through this.
    pub fn verify(&self) -> Result<()> {
        match self {
            SymSet::Interval(u) => {
                if !u.contains_point(&Rat::zero()) || !u.is_symmetric() {
                    return Err(Error::NotSymmetric);
                }
            }
            SymSet::Lattice(s) => {
                let zero: Vec<i64> = alloc::vec![0; s.dim()];
                if !s.contains(&zero) || s.negate() != *s {
                    return Err(Error::NotSymmetric);
                }
            }
            SymSet::Zono(z) => {
                if !z.is_centered() {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            SymSet::Interval(_) => 1,
            SymSet::Lattice(s) => s.dim(),
            SymSet::Zono(z) => z.k(),
        }
    }

    /// x in f * L for a positive rational factor f.
    pub fn contains_dilated(&self, x: &QVec, f: &Rat) -> Result<bool> {
        if !f.is_positive() {
            return Err(Error::Precondition("dilation factor must be positive".into()));
        }
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: x.len() });
        }
        Ok(match self {
            SymSet::Interval(u) => u.contains_point(&(&x[0] / f)),
            SymSet::Lattice(s) => {
                let scaled: Vec<Option<i64>> = x
                    .iter()
                    .map(|c| {
                        let v = c / f;
                        if v.is_integer() {
                            v.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect();
                match scaled.into_iter().collect::<Option<Vec<i64>>>() {
                    Some(p) => s.contains(&p),
                    None => false,
                }
            }
            SymSet::Zono(z) => z.contains_dilated(x, f),
        })
    }

    pub fn contains(&self, x: &QVec) -> Result<bool> {
        self.contains_dilated(x, &Rat::from(num_bigint::BigInt::from(1)))
    }
}
