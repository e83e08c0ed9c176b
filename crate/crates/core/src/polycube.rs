//! Polycubes: finite unions of axis-aligned cubes cell*c + [0,c]^k.
//!
//! The exact continuous representation for k >= 2; for k = 1 it agrees
//! with IntervalUnion (see `to_interval_union`).

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::lattice::LatticeSet;
use crate::rat::{Rat, ZVec};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polycube {
    scale: Rat,
    cells: LatticeSet,
}

/// gcd of two nonnegative rationals: largest g with a/g, b/g integers.
/// gcd(p1/q1, p2/q2) = gcd(p1*q2, p2*q1) / (q1*q2).
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let p1 = a.numer().abs();
    let q1 = a.denom();
    let p2 = b.numer().abs();
    let q2 = b.denom();
    Rat::new((&p1 * q2).gcd(&(&p2 * q1)), q1 * q2)
}

impl Polycube {
    pub fn new(scale: Rat, cells: LatticeSet) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::Precondition("polycube scale must be positive".into()));
        }
        Ok(Polycube { scale, cells })
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn cells(&self) -> &LatticeSet {
        &self.cells
    }

    pub fn dim(&self) -> usize {
        self.cells.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn measure(&self) -> Rat {
        let mut m = Rat::from(BigInt::from(self.cells.card()));
        for _ in 0..self.dim() {
            m *= &self.scale;
        }
        m
    }

    /// Axis-aligned box with rational corners, represented exactly.
    /// The scale is the gcd of all corner coordinates and side lengths.
    pub fn from_box(lo: &[Rat], hi: &[Rat]) -> Result<Polycube> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { left: lo.len(), right: hi.len() });
        }
        let k = lo.len();
        let mut g = Rat::zero();
        for i in 0..k {
            if hi[i] <= lo[i] {
                return Err(Error::Precondition("box must have positive side lengths".into()));
            }
            g = rat_gcd(&g, &lo[i]);
            g = rat_gcd(&g, &hi[i]);
        }
        if g.is_zero() {
            g = Rat::one();
        }
        let mut ranges: Vec<(i64, i64)> = Vec::with_capacity(k);
        let mut count: u64 = 1;
        for i in 0..k {
            let a = (&lo[i] / &g).to_integer().to_i64().ok_or(Error::Precondition(
                "box corner too large for cell coordinates".into(),
            ))?;
            let b = (&hi[i] / &g).to_integer().to_i64().ok_or(Error::Precondition(
                "box corner too large for cell coordinates".into(),
            ))?;
            count = count.saturating_mul((b - a) as u64);
            if count > 1_000_000 {
                return Err(Error::BudgetExceeded { needed: count, budget: 1_000_000 });
            }
            ranges.push((a, b));
        }
        let mut cells = Vec::new();
        let mut cur: ZVec = ranges.iter().map(|r| r.0).collect();
        'outer: loop {
            cells.push(cur.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                if cur[i] < ranges[i].1 - 1 {
                    cur[i] += 1;
                    for j in i + 1..k {
                        cur[j] = ranges[j].0;
                    }
                    break;
                }
            }
        }
        Polycube::new(g, LatticeSet::new(k, cells)?)
    }

    /// Re-express at scale `self.scale / m` (each cell splits into m^k).
    pub fn refine(&self, m: u32) -> Result<Polycube> {
        if m == 0 {
            return Err(Error::Precondition("refinement factor must be positive".into()));
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let k = self.dim();
        let m = m as i64;
        let mut cells = Vec::with_capacity(self.cells.card());
        for z in self.cells.points() {
            let base: ZVec = z.iter().map(|&c| c * m).collect();
            let mut off = vec![0i64; k];
            'fill: loop {
                cells.push(crate::rat::zadd(&base, &off));
                let mut i = k;
                loop {
                    if i == 0 {
                        break 'fill;
                    }
                    i -= 1;
                    if off[i] < m - 1 {
                        off[i] += 1;
                        for o in off.iter_mut().skip(i + 1) {
                            *o = 0;
                        }
                        break;
                    }
                }
            }
        }
        Polycube::new(
            &self.scale / Rat::from(BigInt::from(m)),
            LatticeSet::new(k, cells)?,
        )
    }

    /// Rewrite both operands at a common scale (the rational gcd).
    pub fn common_scale(&self, other: &Polycube) -> Result<(Polycube, Polycube)> {
        if self.scale == other.scale {
            return Ok((self.clone(), other.clone()));
        }
        let g = rat_gcd(&self.scale, &other.scale);
        let ma = (&self.scale / &g).to_integer().to_u32().ok_or(Error::ScaleMismatch)?;
        let mb = (&other.scale / &g).to_integer().to_u32().ok_or(Error::ScaleMismatch)?;
        Ok((self.refine(ma)?, other.refine(mb)?))
    }

    pub fn sumset(&self, other: &Polycube) -> Result<Polycube> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        if self.is_empty() || other.is_empty() {
            return Err(Error::Empty("polycube"));
        }
        let (a, b) = self.common_scale(other)?;
        let k = a.dim();
        let mut out = BTreeSet::new();
        let mut corners: Vec<ZVec> = vec![vec![0; k]];
        for i in 0..k {
            let mut next = Vec::with_capacity(corners.len() * 2);
            for c in corners {
                let mut c1 = c.clone();
                c1[i] = 1;
                next.push(c);
                next.push(c1);
            }
            corners = next;
        }
        for za in a.cells.points() {
            for zb in b.cells.points() {
                let s = crate::rat::zadd(za, zb);
                for e in &corners {
                    out.insert(crate::rat::zadd(&s, e));
                }
            }
        }
        Polycube::new(a.scale.clone(), LatticeSet::new(k, out.into_iter().collect())?)
    }

    /// n * self (pointwise dilation).
    pub fn dilate(&self, n: u32) -> Result<Polycube> {
        if n == 0 {
            return Err(Error::Precondition("dilation factor must be positive".into()));
        }
        Polycube::new(&self.scale * Rat::from(BigInt::from(n)), self.cells.clone())
    }

    /// { x : n x in self }, i.e. self scaled by 1/n.
    pub fn divide(&self, n: u32) -> Result<Polycube> {
        if n == 0 {
            return Err(Error::Precondition("division factor must be positive".into()));
        }
        Polycube::new(&self.scale / Rat::from(BigInt::from(n)), self.cells.clone())
    }

    pub fn negate(&self) -> Polycube {
        let k = self.dim();
        let cells: Vec<ZVec> = self
            .cells
            .points()
            .iter()
            .map(|z| z.iter().map(|&c| -c - 1).collect())
            .collect();
        Polycube { scale: self.scale.clone(), cells: LatticeSet::new(k, cells).unwrap() }
    }

    /// Translate by integer multiples of the scale.
    pub fn translate_cells(&self, w: &[i64]) -> Polycube {
        Polycube { scale: self.scale.clone(), cells: self.cells.translate(w) }
    }

    /// Translate by a rational vector, refining the scale as needed.
    pub fn translate(&self, t: &[Rat]) -> Result<Polycube> {
        if t.len() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: t.len() });
        }
        let mut g = self.scale.clone();
        for ti in t {
            g = rat_gcd(&g, ti);
        }
        let m = (&self.scale / &g).to_integer().to_u32().ok_or(Error::ScaleMismatch)?;
        let refined = self.refine(m)?;
        let w: Vec<i64> = t
            .iter()
            .map(|ti| (ti / &g).to_integer().to_i64().ok_or(Error::ScaleMismatch))
            .collect::<Result<_>>()?;
        Ok(refined.translate_cells(&w))
    }

    pub fn union(&self, other: &Polycube) -> Result<Polycube> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        let (a, b) = self.common_scale(other)?;
        let mut cells = a.cells.points().to_vec();
        cells.extend_from_slice(b.cells.points());
        Polycube::new(a.scale, LatticeSet::new(self.dim(), cells)?)
    }

    /// k = 1 polycubes are interval unions; used for cross-checks.
    pub fn to_interval_union(&self) -> Result<IntervalUnion> {
        if self.dim() != 1 {
            return Err(Error::DimensionMismatch { left: 1, right: self.dim() });
        }
        let ivs: Vec<(Rat, Rat)> = self
            .cells
            .points()
            .iter()
            .map(|z| {
                let lo = Rat::from(BigInt::from(z[0])) * &self.scale;
                let hi = &lo + &self.scale;
                (lo, hi)
            })
            .collect();
        IntervalUnion::new(ivs)
    }

    /// Exact 1-D interval union -> polycube when all endpoints share a scale.
    pub fn from_interval_union(u: &IntervalUnion) -> Result<Polycube> {
        let mut g = Rat::zero();
        for (lo, hi) in u.components() {
            if lo == hi {
                return Err(Error::Precondition(
                    "degenerate intervals have no polycube form".into(),
                ));
            }
            g = rat_gcd(&g, lo);
            g = rat_gcd(&g, hi);
        }
        if g.is_zero() {
            return Err(Error::Empty("interval union"));
        }
        let mut cells = Vec::new();
        for (lo, hi) in u.components() {
            let a = (lo / &g)
                .to_integer()
                .to_i64()
                .ok_or(Error::Precondition("endpoint too large".into()))?;
            let b = (hi / &g)
                .to_integer()
                .to_i64()
                .ok_or(Error::Precondition("endpoint too large".into()))?;
            for z in a..b {
                cells.push(vec![z]);
            }
        }
        Polycube::new(g, LatticeSet::new(1, cells)?)
    }

    pub fn contains_cell_of(&self, other: &Polycube) -> Result<bool> {
        let (a, b) = self.common_scale(other)?;
        Ok(b.cells.is_subset(&a.cells))
    }
}
