//! Finite subsets of Z^k with exact hull and thickness machinery.

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, Lp};
use crate::rat::{qvec_from_ints, rint, rzero, QVec, Rat, ZVec};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSet {
    dim: usize,
    pts: Vec<ZVec>,
}

impl LatticeSet {
    pub fn new(dim: usize, pts: Vec<ZVec>) -> Result<Self> {
        for p in &pts {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: p.len() });
            }
        }
        let mut pts = pts;
        pts.sort();
        pts.dedup();
        Ok(LatticeSet { dim, pts })
    }

    /// One-dimensional set from values.
    pub fn from_values(vals: &[i64]) -> Self {
        let mut pts: Vec<ZVec> = vals.iter().map(|&v| vec![v]).collect();
        pts.sort();
        pts.dedup();
        LatticeSet { dim: 1, pts }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[ZVec] {
        &self.pts
    }

    pub fn card(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.pts.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn is_subset(&self, other: &LatticeSet) -> bool {
        self.pts.iter().all(|p| other.contains(p))
    }

    /// Values of a 1-D set.
    pub fn values(&self) -> Result<Vec<i64>> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch { left: 1, right: self.dim });
        }
        Ok(self.pts.iter().map(|p| p[0]).collect())
    }

    pub fn sumset(&self, other: &LatticeSet) -> Result<LatticeSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut out = BTreeSet::new();
        for a in &self.pts {
            for b in &other.pts {
                out.insert(crate::rat::zadd(a, b));
            }
        }
        Ok(LatticeSet { dim: self.dim, pts: out.into_iter().collect() })
    }

    pub fn negate(&self) -> LatticeSet {
        let mut pts: Vec<ZVec> = self.pts.iter().map(|p| p.iter().map(|&c| -c).collect()).collect();
        pts.sort();
        LatticeSet { dim: self.dim, pts }
    }

    pub fn translate(&self, t: &[i64]) -> LatticeSet {
        LatticeSet {
            dim: self.dim,
            pts: self.pts.iter().map(|p| crate::rat::zadd(p, t)).collect(),
        }
    }

    pub fn dilate(&self, n: i64) -> LatticeSet {
        let mut pts: Vec<ZVec> =
            self.pts.iter().map(|p| p.iter().map(|&c| c * n).collect()).collect();
        pts.sort();
        LatticeSet { dim: self.dim, pts }
    }

    /// { x : n x in A }.
    pub fn divide(&self, n: i64) -> LatticeSet {
        debug_assert!(n != 0);
        let mut pts: Vec<ZVec> = self
            .pts
            .iter()
            .filter(|p| p.iter().all(|&c| c % n == 0))
            .map(|p| p.iter().map(|&c| c / n).collect())
            .collect();
        pts.sort();
        LatticeSet { dim: self.dim, pts }
    }

    /// Per-coordinate (min, max); errors on empty sets.
    pub fn bounding_box(&self) -> Result<Vec<(i64, i64)>> {
        if self.pts.is_empty() {
            return Err(Error::Empty("lattice set"));
        }
        let mut bb: Vec<(i64, i64)> = self.pts[0].iter().map(|&c| (c, c)).collect();
        for p in &self.pts[1..] {
            for (j, &c) in p.iter().enumerate() {
                if c < bb[j].0 {
                    bb[j].0 = c;
                }
                if c > bb[j].1 {
                    bb[j].1 = c;
                }
            }
        }
        Ok(bb)
    }

    /// Largest per-coordinate spread.
    pub fn spread(&self) -> Result<i64> {
        Ok(self.bounding_box()?.iter().map(|(lo, hi)| hi - lo).max().unwrap_or(0))
    }

    /// Minimum number of parallel lattice hyperplanes covering the set.
    ///
    /// The search runs over primitive integer normals with coordinates
    /// bounded by the coordinate spread; the candidate count is checked
    /// against the budget up front so a blowup is reported, not silent.
    pub fn thickness(&self, budget: u64) -> Result<u64> {
        if self.pts.is_empty() {
            return Err(Error::Empty("lattice set"));
        }
        if self.pts.len() == 1 {
            return Ok(1);
        }
        if self.dim == 1 {
            return Ok(self.pts.len() as u64);
        }
        let d = self.spread()?.max(1);
        let per_coord = 2 * (d as u64) + 1;
        let mut candidates: u64 = 1;
        for _ in 0..self.dim {
            candidates = candidates.saturating_mul(per_coord);
            if candidates > budget {
                return Err(Error::BudgetExceeded { needed: candidates, budget });
            }
        }
        let mut best = u64::MAX;
        let mut normal = vec![-d; self.dim];
        normal[0] = 0; // canonical sign: first nonzero coordinate positive
        loop {
            if let Some(h) = self.levels_along(&normal) {
                if h < best {
                    best = h;
                }
            }
            // Odometer over [-d, d]^dim with the first coordinate in [0, d].
            let mut i = self.dim;
            loop {
                if i == 0 {
                    debug_assert!(best != u64::MAX);
                    return Ok(best);
                }
                i -= 1;
                if normal[i] < d {
                    normal[i] += 1;
                    for c in normal.iter_mut().skip(i + 1) {
                        *c = -d;
                    }
                    break;
                }
            }
        }
    }

    /// Number of distinct levels of the dot product with a primitive normal;
    /// None for the zero vector, non-primitive vectors, or a negative lead.
    fn levels_along(&self, normal: &[i64]) -> Option<u64> {
        let lead = normal.iter().find(|&&c| c != 0)?;
        if *lead < 0 {
            return None;
        }
        let mut g: i64 = 0;
        for &c in normal {
            g = g.gcd(&c);
        }
        if g != 1 {
            return None;
        }
        let mut levels = BTreeSet::new();
        for p in &self.pts {
            levels.insert(crate::rat::zdot(p, normal));
        }
        Some(levels.len() as u64)
    }

    /// Vertices of the convex hull (as a sub-collection of the points).
    pub fn hull_vertices(&self) -> Result<Vec<ZVec>> {
        if self.pts.is_empty() {
            return Err(Error::Empty("lattice set"));
        }
        match self.dim {
            1 => {
                let vals = self.values()?;
                let (lo, hi) = (*vals.first().unwrap(), *vals.last().unwrap());
                Ok(if lo == hi { vec![vec![lo]] } else { vec![vec![lo], vec![hi]] })
            }
            2 => Ok(convex_hull_2d(&self.pts)),
            _ => {
                // Vertex iff not in the hull of the others.
                let mut verts = Vec::new();
                for (i, p) in self.pts.iter().enumerate() {
                    let others: Vec<QVec> = self
                        .pts
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, q)| qvec_from_ints(q))
                        .collect();
                    if others.is_empty() || !in_hull_lp(&others, &qvec_from_ints(p)) {
                        verts.push(p.clone());
                    }
                }
                Ok(verts)
            }
        }
    }

    /// Discrete hull: co(A) intersected with the smallest sublattice
    /// containing A - a0, translated back to A's position.
    pub fn discrete_hull(&self, budget: u64) -> Result<LatticeSet> {
        if self.pts.is_empty() {
            return Err(Error::Empty("lattice set"));
        }
        if self.dim == 1 {
            let vals = self.values()?;
            let lo = vals[0];
            let mut g: i64 = 0;
            for &v in &vals {
                g = g.gcd(&(v - lo));
            }
            if g == 0 {
                return Ok(self.clone());
            }
            let hi = *vals.last().unwrap();
            let mut pts = Vec::new();
            let mut v = lo;
            while v <= hi {
                pts.push(vec![v]);
                v += g;
            }
            return Ok(LatticeSet { dim: 1, pts });
        }
        let a0 = &self.pts[0];
        let gens: Vec<Vec<BigInt>> = self.pts[1..]
            .iter()
            .map(|p| crate::rat::zsub(p, a0).into_iter().map(BigInt::from).collect())
            .collect();
        let basis = linalg::lattice_echelon(&gens);
        let bb = self.bounding_box()?;
        let mut volume: u64 = 1;
        for (lo, hi) in &bb {
            volume = volume.saturating_mul((hi - lo + 1) as u64);
            if volume > budget {
                return Err(Error::BudgetExceeded { needed: volume, budget });
            }
        }
        let hull2d = if self.dim == 2 { Some(convex_hull_2d(&self.pts)) } else { None };
        let hull_pts: Vec<QVec> = self.pts.iter().map(|p| qvec_from_ints(p)).collect();
        let mut out = Vec::new();
        let mut cursor: ZVec = bb.iter().map(|(lo, _)| *lo).collect();
        'scan: loop {
            let delta: Vec<BigInt> =
                crate::rat::zsub(&cursor, a0).into_iter().map(BigInt::from).collect();
            if linalg::in_lattice(&basis, &delta) {
                let inside = match &hull2d {
                    Some(hull) => point_in_hull_2d(hull, &cursor),
                    None => in_hull_lp(&hull_pts, &qvec_from_ints(&cursor)),
                };
                if inside {
                    out.push(cursor.clone());
                }
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    break 'scan;
                }
                i -= 1;
                if cursor[i] < bb[i].1 {
                    cursor[i] += 1;
                    for j in i + 1..self.dim {
                        cursor[j] = bb[j].0;
                    }
                    break;
                }
            }
        }
        LatticeSet::new(self.dim, out)
    }
}

/// Monotone-chain convex hull; returns vertices in counterclockwise order
/// (two points for degenerate segments, one for a single point).
pub fn convex_hull_2d(pts: &[ZVec]) -> Vec<ZVec> {
    let mut p: Vec<ZVec> = pts.to_vec();
    p.sort();
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let cross = |o: &ZVec, a: &ZVec, b: &ZVec| -> i128 {
        (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128
            - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
    };
    let mut lower: Vec<ZVec> = Vec::new();
    for q in &p {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q.clone());
    }
    let mut upper: Vec<ZVec> = Vec::new();
    for q in p.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.is_empty() {
        // All points collinear: keep the extremes.
        return vec![p.first().unwrap().clone(), p.last().unwrap().clone()];
    }
    lower
}

/// Point-in-hull test against a counterclockwise 2-D hull (boundary counts).
pub fn point_in_hull_2d(hull: &[ZVec], x: &ZVec) -> bool {
    let cross = |o: &ZVec, a: &ZVec, b: &ZVec| -> i128 {
        (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128
            - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
    };
    match hull.len() {
        0 => false,
        1 => hull[0] == *x,
        2 => {
            let (a, b) = (&hull[0], &hull[1]);
            if cross(a, b, x) != 0 {
                return false;
            }
            let dot = (x[0] - a[0]) as i128 * (b[0] - a[0]) as i128
                + (x[1] - a[1]) as i128 * (b[1] - a[1]) as i128;
            let len2 = (b[0] - a[0]) as i128 * (b[0] - a[0]) as i128
                + (b[1] - a[1]) as i128 * (b[1] - a[1]) as i128;
            dot >= 0 && dot <= len2
        }
        _ => (0..hull.len()).all(|i| {
            let a = &hull[i];
            let b = &hull[(i + 1) % hull.len()];
            cross(a, b, x) >= 0
        }),
    }
}

/// Membership of x in the convex hull of a finite rational point set, as an
/// exact LP feasibility problem (lambda >= 0, sum lambda = 1, sum lambda p = x).
pub fn in_hull_lp(points: &[QVec], x: &QVec) -> bool {
    let n = points.len();
    if n == 0 {
        return false;
    }
    let k = points[0].len();
    let mut a_eq: Vec<QVec> = Vec::with_capacity(k + 1);
    let mut b_eq: Vec<Rat> = Vec::with_capacity(k + 1);
    for c in 0..k {
        a_eq.push(points.iter().map(|p| p[c].clone()).collect());
        b_eq.push(x[c].clone());
    }
    a_eq.push(vec![rint(1); n]);
    b_eq.push(rint(1));
    // lambda >= 0 as -lambda_i <= 0.
    let mut a_ub: Vec<QVec> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![rzero(); n];
        row[i] = -Rat::one();
        a_ub.push(row);
    }
    let b_ub = vec![rzero(); n];
    lp::feasible(&Lp { n, objective: vec![rzero(); n], a_ub, b_ub, a_eq, b_eq })
}

