//! Sets fibered over Z: a finite map index -> 1-D interval union.
//!
//! Models subsets of Z x R. The sumset adds indices and fiber unions; the
//! compressed form (every fiber a single interval [0, l_i] on consecutive
//! indices) is what the T-reference identities require.

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberedSet {
    fibers: BTreeMap<i64, IntervalUnion>,
}

impl FiberedSet {
    pub fn new(fibers: BTreeMap<i64, IntervalUnion>) -> Result<Self> {
        if fibers.is_empty() {
            return Err(Error::Empty("fibered set"));
        }
        for (i, b) in &fibers {
            if b.is_empty() {
                return Err(Error::Precondition(format!("fiber {} is empty", i)));
            }
        }
        Ok(FiberedSet { fibers })
    }

    /// Compressed set with fibers 1..=t, fiber i = [0, lengths[i-1]].
    pub fn from_lengths(lengths: &[Rat]) -> Result<Self> {
        let mut fibers = BTreeMap::new();
        for (i, l) in lengths.iter().enumerate() {
            fibers.insert(
                i as i64 + 1,
                IntervalUnion::interval(Rat::zero(), l.clone())?,
            );
        }
        FiberedSet::new(fibers)
    }

    pub fn fibers(&self) -> &BTreeMap<i64, IntervalUnion> {
        &self.fibers
    }

    pub fn fiber(&self, i: i64) -> Option<&IntervalUnion> {
        self.fibers.get(&i)
    }

    pub fn indices(&self) -> Vec<i64> {
        self.fibers.keys().copied().collect()
    }

    pub fn min_index(&self) -> i64 {
        *self.fibers.keys().next().unwrap()
    }

    pub fn max_index(&self) -> i64 {
        *self.fibers.keys().next_back().unwrap()
    }

    pub fn fiber_count(&self) -> usize {
        self.fibers.len()
    }

    pub fn measure(&self) -> Rat {
        self.fibers.values().map(|b| b.measure()).sum()
    }

    pub fn sumset(&self, other: &FiberedSet) -> FiberedSet {
        let mut out: BTreeMap<i64, IntervalUnion> = BTreeMap::new();
        for (i, bi) in &self.fibers {
            for (j, cj) in &other.fibers {
                let s = bi.sumset(cj);
                out.entry(i + j)
                    .and_modify(|u| *u = u.union(&s))
                    .or_insert(s);
            }
        }
        FiberedSet { fibers: out }
    }

    pub fn translate_index(&self, shift: i64) -> FiberedSet {
        FiberedSet {
            fibers: self.fibers.iter().map(|(i, b)| (i + shift, b.clone())).collect(),
        }
    }

    /// Every fiber of self is contained in the corresponding fiber of other.
    pub fn subset_of(&self, other: &FiberedSet) -> bool {
        self.fibers.iter().all(|(i, b)| match other.fibers.get(i) {
            Some(c) => b.subset_of(c),
            None => false,
        })
    }

    /// Checks the compressed form (consecutive indices, each fiber a single
    /// interval starting at 0) and returns (first index, lengths in order).
    pub fn compressed_lengths(&self) -> Result<(i64, Vec<Rat>)> {
        let start = self.min_index();
        let mut lengths = Vec::with_capacity(self.fibers.len());
        for (pos, (i, b)) in self.fibers.iter().enumerate() {
            if *i != start + pos as i64 {
                return Err(Error::NotCompressed(format!(
                    "fiber indices not consecutive at {}",
                    i
                )));
            }
            let comps = b.components();
            if comps.len() != 1 {
                return Err(Error::NotCompressed(format!(
                    "fiber {} is not a single interval",
                    i
                )));
            }
            let (lo, hi) = &comps[0];
            if !lo.is_zero() {
                return Err(Error::NotCompressed(format!(
                    "fiber {} does not start at 0",
                    i
                )));
            }
            lengths.push(hi.clone());
        }
        Ok((start, lengths))
    }
}
