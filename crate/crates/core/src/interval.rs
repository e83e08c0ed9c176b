//! Finite unions of closed rational intervals on the line.
//!
//! Invariant: components are sorted, pairwise disjoint, and separated by
//! positive gaps; touching closed intervals are merged on construction.
//! Degenerate [p, p] components are allowed (isolated points carry measure
//! zero but are genuine members of the set).

use crate::error::{Error, Result};
use crate::rat::{rzero, Rat};
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalUnion {
    ivs: Vec<(Rat, Rat)>,
}

impl IntervalUnion {
    pub fn new(parts: Vec<(Rat, Rat)>) -> Result<Self> {
        for (lo, hi) in &parts {
            if lo > hi {
                return Err(Error::Precondition(alloc::format!(
                    "interval endpoints out of order: {lo} > {hi}"
                )));
            }
        }
        Ok(Self::normalized(parts))
    }

    pub fn empty() -> Self {
        IntervalUnion { ivs: Vec::new() }
    }

    pub fn point(p: Rat) -> Self {
        IntervalUnion { ivs: alloc::vec![(p.clone(), p)] }
    }

    pub fn interval(lo: Rat, hi: Rat) -> Result<Self> {
        Self::new(alloc::vec![(lo, hi)])
    }

    fn normalized(mut parts: Vec<(Rat, Rat)>) -> Self {
        parts.sort();
        let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(parts.len());
        for (lo, hi) in parts {
            match out.last_mut() {
                Some((_, phi)) if lo <= *phi => {
                    if hi > *phi {
                        *phi = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        IntervalUnion { ivs: out }
    }

    pub fn components(&self) -> &[(Rat, Rat)] {
        &self.ivs
    }

    pub fn is_empty(&self) -> bool {
        self.ivs.is_empty()
    }

    pub fn measure(&self) -> Rat {
        let mut m = rzero();
        for (lo, hi) in &self.ivs {
            m += hi - lo;
        }
        m
    }

    pub fn min(&self) -> Option<&Rat> {
        self.ivs.first().map(|(lo, _)| lo)
    }

    pub fn max(&self) -> Option<&Rat> {
        self.ivs.last().map(|(_, hi)| hi)
    }

    /// Convex hull [min, max]; errors on the empty union.
    pub fn hull(&self) -> Result<(Rat, Rat)> {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => Ok((lo.clone(), hi.clone())),
            _ => Err(Error::Empty("interval union")),
        }
    }

    /// The maximal open gaps between consecutive components.
    pub fn gaps(&self) -> Vec<(Rat, Rat)> {
        let mut out = Vec::new();
        for pair in self.ivs.windows(2) {
            out.push((pair[0].1.clone(), pair[1].0.clone()));
        }
        out
    }

    pub fn sumset(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut parts = Vec::with_capacity(self.ivs.len() * other.ivs.len());
        for (alo, ahi) in &self.ivs {
            for (blo, bhi) in &other.ivs {
                parts.push((alo + blo, ahi + bhi));
            }
        }
        Self::normalized(parts)
    }

    pub fn negate(&self) -> IntervalUnion {
        Self::normalized(self.ivs.iter().map(|(lo, hi)| (-hi, -lo)).collect())
    }

    pub fn translate(&self, t: &Rat) -> IntervalUnion {
        IntervalUnion { ivs: self.ivs.iter().map(|(lo, hi)| (lo + t, hi + t)).collect() }
    }

    /// { c x : x in A } for c != 0 (negative c reflects).
    pub fn scale(&self, c: &Rat) -> IntervalUnion {
        debug_assert!(!c.eq(&rzero()));
        Self::normalized(self.ivs.iter().map(|(lo, hi)| {
            let a = lo * c;
            let b = hi * c;
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        }).collect())
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut parts = self.ivs.clone();
        parts.extend(other.ivs.iter().cloned());
        Self::normalized(parts)
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut parts = Vec::new();
        for (lo, hi) in &self.ivs {
            for (olo, ohi) in &other.ivs {
                let a = if lo >= olo { lo.clone() } else { olo.clone() };
                let b = if hi <= ohi { hi.clone() } else { ohi.clone() };
                if a <= b {
                    parts.push((a, b));
                }
            }
        }
        Self::normalized(parts)
    }

    pub fn contains_point(&self, x: &Rat) -> bool {
        self.ivs.iter().any(|(lo, hi)| lo <= x && x <= hi)
    }

    /// Is x strictly inside some component?
    pub fn contains_interior(&self, x: &Rat) -> bool {
        self.ivs.iter().any(|(lo, hi)| lo < x && x < hi)
    }

    /// Every component of a normalized union sits inside a single component
    /// of the other (components cannot straddle a positive gap).
    pub fn subset_of(&self, other: &IntervalUnion) -> bool {
        self.ivs
            .iter()
            .all(|(lo, hi)| other.ivs.iter().any(|(olo, ohi)| olo <= lo && hi <= ohi))
    }

    /// Smallest point of self not strictly inside `cover`; None if every
    /// point is interior-covered.
    pub fn first_uncovered(&self, cover: &IntervalUnion) -> Option<Rat> {
        for (lo, hi) in &self.ivs {
            let mut p = lo.clone();
            loop {
                if p > *hi {
                    break;
                }
                match cover.ivs.iter().find(|(clo, chi)| clo < &p && &p < chi) {
                    None => return Some(p),
                    Some((_, chi)) => {
                        // chi itself is not interior to any component
                        // (components are gap-separated), so it is the next
                        // candidate if it still lies in this component.
                        p = chi.clone();
                    }
                }
            }
        }
        None
    }

    /// Symmetry about the origin, exactly.
    pub fn is_symmetric(&self) -> bool {
        *self == self.negate()
    }
}
