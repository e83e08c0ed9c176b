//! Discrete Brunn-Minkowski machinery: hybrid lattice x cell sets with
//! coordinate compression, projection-sum inequalities, the separated-case
//! bound, the 3k-4 lower bounds, and the analytic helper inequalities.

use crate::error::{Error, Result};
use crate::fibered::FiberedSet;
use crate::interval::IntervalUnion;
use crate::polycube::Polycube;
use crate::progression::{Gap, Zonotope};
use crate::rat::{rint, rpow, rzero, Rat, ZVec};
use crate::roots::{pow2, rat_nth_root_exact, ratio_root_enclosure, PowVal};
use crate::set_value::SetValue;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

const ENCLOSURE_SCHEDULE: [u32; 4] = [32, 64, 128, 256];

/// Finite subset of Z^d x R^k stored as (lattice point, cell) pairs, the
/// cell being a k-cube of the given scale. k = 0 degenerates to a plain
/// lattice set under counting measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridSet {
    d: usize,
    k: usize,
    scale: Rat,
    pts: Vec<(ZVec, ZVec)>,
}

impl HybridSet {
    pub fn new(d: usize, k: usize, scale: Rat, mut pts: Vec<(ZVec, ZVec)>) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::Precondition("cell scale must be positive".into()));
        }
        for (z, cell) in &pts {
            if z.len() != d || cell.len() != k {
                return Err(Error::DimensionMismatch { left: z.len() + cell.len(), right: d + k });
            }
        }
        pts.sort();
        pts.dedup();
        Ok(HybridSet { d, k, scale, pts })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn points(&self) -> &[(ZVec, ZVec)] {
        &self.pts
    }

    pub fn card(&self) -> usize {
        self.pts.len()
    }

    pub fn measure(&self) -> Rat {
        rint(self.pts.len() as i64) * rpow(&self.scale, self.k as u32)
    }

    fn check_compatible(&self, other: &HybridSet) -> Result<()> {
        if self.d != other.d || self.k != other.k {
            return Err(Error::DimensionMismatch {
                left: self.d + self.k,
                right: other.d + other.k,
            });
        }
        if self.scale != other.scale {
            return Err(Error::ScaleMismatch);
        }
        Ok(())
    }

    /// Minkowski sum: lattice parts add, cells add as cubes (corner offsets
    /// {0,1}^k at the common scale).
    pub fn sumset(&self, other: &HybridSet) -> Result<HybridSet> {
        self.check_compatible(other)?;
        let corners = cube_corners(self.k);
        let mut pts = Vec::new();
        for (za, ca) in &self.pts {
            for (zb, cb) in &other.pts {
                let z: ZVec = za.iter().zip(zb).map(|(p, q)| p + q).collect();
                for e in &corners {
                    let cell: ZVec =
                        ca.iter().zip(cb).zip(e).map(|((p, q), r)| p + q + r).collect();
                    pts.push((z.clone(), cell));
                }
            }
        }
        HybridSet::new(self.d, self.k, self.scale.clone(), pts)
    }

    /// Add the unit cube {0,1}^d on the lattice part.
    pub fn add_unit_cube(&self) -> HybridSet {
        let corners = cube_corners(self.d);
        let mut pts = Vec::new();
        for (z, cell) in &self.pts {
            for e in &corners {
                let zz: ZVec = z.iter().zip(e).map(|(p, q)| p + q).collect();
                pts.push((zz, cell.clone()));
            }
        }
        HybridSet::new(self.d, self.k, self.scale.clone(), pts).unwrap()
    }

    /// Count of the projection deleting the lattice coordinates in `drop`
    /// (0-based, deduplicated); the cell coordinates always survive.
    pub fn projection_count(&self, drop: &[usize]) -> u64 {
        let mut seen: BTreeSet<(ZVec, ZVec)> = BTreeSet::new();
        for (z, cell) in &self.pts {
            let kept: ZVec = z
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, v)| *v)
                .collect();
            seen.insert((kept, cell.clone()));
        }
        seen.len() as u64
    }

    /// Replace each fiber in lattice direction i (1-based) by an initial
    /// segment {0,...,t-1} of the same count.
    pub fn compress(&self, i: usize) -> Result<HybridSet> {
        if i < 1 || i > self.d {
            return Err(Error::Precondition("compression direction out of range".into()));
        }
        let ax = i - 1;
        let mut fibers: BTreeMap<(ZVec, ZVec), u64> = BTreeMap::new();
        for (z, cell) in &self.pts {
            let mut rest = z.clone();
            rest.remove(ax);
            *fibers.entry((rest, cell.clone())).or_insert(0) += 1;
        }
        let mut pts = Vec::with_capacity(self.pts.len());
        for ((rest, cell), count) in fibers {
            for v in 0..count as i64 {
                let mut z = rest.clone();
                z.insert(ax, v);
                pts.push((z, cell.clone()));
            }
        }
        HybridSet::new(self.d, self.k, self.scale.clone(), pts)
    }
}

fn cube_corners(k: usize) -> Vec<ZVec> {
    let mut out = vec![vec![0i64; k]];
    for ax in 0..k {
        let mut extra = Vec::with_capacity(out.len());
        for c in &out {
            let mut e = c.clone();
            e[ax] = 1;
            extra.push(e);
        }
        out.extend(extra);
    }
    out
}

#[derive(Debug, Clone)]
pub struct ProjectionReport {
    /// Sum over all coordinate subsets I of |proj_I(A + B)|.
    pub lhs: Rat,
    /// (|A|^{1/(k+d)} + |B|^{1/(k+d)})^{k+d}.
    pub rhs: PowVal,
    pub holds: bool,
}

/// Both sides of the projection-sum inequality, with a certified comparison.
pub fn projection_sum(a: &HybridSet, b: &HybridSet) -> Result<ProjectionReport> {
    a.check_compatible(b)?;
    let m = (a.d + a.k) as u32;
    if m == 0 {
        return Err(Error::Precondition("need at least one dimension".into()));
    }
    if a.d > 16 {
        return Err(Error::Precondition("too many lattice directions to sum over".into()));
    }
    if a.pts.is_empty() || b.pts.is_empty() {
        return Err(Error::Empty("projection sum input"));
    }
    let s = a.sumset(b)?;
    let cell_vol = rpow(&a.scale, a.k as u32);
    let mut lhs = rzero();
    for mask in 0u32..1 << a.d {
        let drop: Vec<usize> = (0..a.d).filter(|i| mask >> i & 1 == 1).collect();
        lhs += rint(s.projection_count(&drop) as i64) * &cell_vol;
    }
    let rhs = PowVal::new(a.measure(), b.measure(), m);
    let holds = rhs.rat_is_ge(&lhs)?;
    Ok(ProjectionReport { lhs, rhs, holds })
}

/// |A + B + {0,1}^d x {0}^k| >= (|A|^{1/(k+d)} + |B|^{1/(k+d)})^{k+d},
/// compared exactly. Returns (lhs, rhs, holds).
pub fn cube_bm(a: &HybridSet, b: &HybridSet) -> Result<(Rat, PowVal, bool)> {
    a.check_compatible(b)?;
    let m = (a.d + a.k) as u32;
    if m == 0 || a.pts.is_empty() || b.pts.is_empty() {
        return Err(Error::Empty("cube inequality input"));
    }
    let s = a.sumset(b)?.add_unit_cube();
    let lhs = s.measure();
    let rhs = PowVal::new(a.measure(), b.measure(), m);
    let holds = rhs.rat_is_ge(&lhs)?;
    Ok((lhs, rhs, holds))
}

#[derive(Debug, Clone)]
pub struct SeparatedReport {
    pub lhs: Rat,
    pub slack: Rat,
    /// Enclosure of (|Y|^{1/(k+d)} + |Z|^{1/(k+d)})^{k+d} for display.
    pub power_lo: Rat,
    pub power_hi: Rat,
    pub holds: bool,
}

/// Lower bound for sums inside an n-full, 2-proper, 4Q-separated progression:
/// |Y+Z| >= (|Y|^{1/(k+d)}+|Z|^{1/(k+d)})^{k+d} - 2^{2d+k} n^{-1} #P |Q|.
/// All three structural preconditions are verified, not trusted.
pub fn bm_separated(
    p: &Gap,
    q: &Zonotope,
    y: &Polycube,
    z: &Polycube,
    n: u32,
    budget: u64,
) -> Result<SeparatedReport> {
    let k = q.k();
    if p.base.len() != k || y.dim() != k || z.dim() != k {
        return Err(Error::DimensionMismatch { left: p.base.len(), right: k });
    }
    if n == 0 {
        return Err(Error::Precondition("fullness parameter must be positive".into()));
    }
    if !q.is_centered() {
        return Err(Error::NotSymmetric);
    }
    if let Some(full) = p.fullness() {
        if full < n {
            return Err(Error::Precondition(String::from("progression is not n-full")));
        }
    }
    if !p.is_proper(2, budget)? {
        return Err(Error::NotProper(String::from("progression is not 2-proper")));
    }
    let (values, _) = p.enumerate(budget)?;
    for (i, vi) in values.iter().enumerate() {
        for vj in &values[i + 1..] {
            let diff: Vec<Rat> = vi.iter().zip(vj).map(|(x, w)| x - w).collect();
            if q.contains_dilated(&diff, &rint(4)) {
                return Err(Error::NotSeparated(String::from(
                    "two progression points differ by an element of 4Q",
                )));
            }
        }
    }
    check_in_p_plus_q(y, &values, q, "Y")?;
    check_in_p_plus_q(z, &values, q, "Z")?;
    let d = p.d() as u32;
    let lhs = y.sumset(z)?.measure();
    let slack = pow2(2 * d + k as u32) * rint(p.index_count() as i64) * q.volume()
        / rint(n as i64);
    let pw = PowVal::new(y.measure(), z.measure(), d + k as u32);
    let holds = pw.rat_is_ge(&(&lhs + &slack))?;
    let (power_lo, power_hi) = pw.enclosure(128);
    Ok(SeparatedReport { lhs, slack, power_lo, power_hi, holds })
}

/// Every cell of the polycube must sit inside v + Q for a single progression
/// value v (convexity makes corner membership sufficient).
fn check_in_p_plus_q(
    y: &Polycube,
    values: &[Vec<Rat>],
    q: &Zonotope,
    name: &str,
) -> Result<()> {
    let k = y.dim();
    let corners = cube_corners(k);
    for cell in y.cells().points() {
        let mut inside = false;
        'vals: for v in values {
            for e in &corners {
                let pt: Vec<Rat> = (0..k)
                    .map(|ax| (rint(cell[ax] + e[ax])) * y.scale() - &v[ax])
                    .collect();
                if !q.contains(&pt) {
                    continue 'vals;
                }
            }
            inside = true;
            break;
        }
        if !inside {
            let mut msg = String::from(name);
            msg.push_str(" has a cell outside P + Q");
            return Err(Error::NotInPPlusQ(msg));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct FreimanReport {
    pub bound: Rat,
    pub actual: Rat,
    pub slack: Rat,
    pub holds: bool,
}

/// 3k-4 style lower bound on |A+A|: discrete 2#A - 1 + min{#(hull \ A), #A - 3},
/// continuous 2|A| + min{|co(A) \ A|, |A|}.
pub fn freiman3k4(a: &SetValue) -> Result<FreimanReport> {
    let (bound, actual) = match a {
        SetValue::Lattice(l) => {
            if l.dim() != 1 {
                return Err(Error::Precondition("freiman bound needs a 1-D set".into()));
            }
            if l.is_empty() {
                return Err(Error::Empty("freiman input"));
            }
            let n = l.card() as i64;
            let lo = l.points().iter().map(|z| z[0]).min().unwrap();
            let hi = l.points().iter().map(|z| z[0]).max().unwrap();
            let hull_gap = (hi - lo + 1) - n;
            let extra = hull_gap.min(n - 3);
            let bound = rint(2 * n - 1 + extra);
            let actual = rint(l.sumset(l)?.card() as i64);
            (bound, actual)
        }
        SetValue::Interval(u) => {
            if u.is_empty() {
                return Err(Error::Empty("freiman input"));
            }
            let m = u.measure();
            let (lo, hi) = u.hull()?;
            let hull_gap = &hi - &lo - &m;
            let extra = if hull_gap < m { hull_gap } else { m.clone() };
            let bound = rint(2) * &m + extra;
            let actual = u.sumset(u).measure();
            (bound, actual)
        }
        SetValue::Cube(_) => {
            return Err(Error::Precondition("freiman bound needs a 1-D set".into()))
        }
    };
    let slack = &actual - &bound;
    let holds = actual >= bound;
    Ok(FreimanReport { bound, actual, slack, holds })
}

#[derive(Debug, Clone)]
pub struct AdditionBounds {
    pub double_x: Rat,
    pub via_hull_y: Rat,
    pub via_hull_x: Rat,
    pub actual: Rat,
    pub holds: bool,
}

/// Three elementary lower bounds for |X+Y| on interval unions; X and Y are
/// swapped internally so that co(Y) is the longer hull.
pub fn addition_bounds(x: &IntervalUnion, y: &IntervalUnion) -> Result<AdditionBounds> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Empty("addition bounds input"));
    }
    let hull_len = |u: &IntervalUnion| -> Result<Rat> {
        let (lo, hi) = u.hull()?;
        Ok(hi - lo)
    };
    let (x, y) = if hull_len(y)? >= hull_len(x)? { (x, y) } else { (y, x) };
    let xm = x.measure();
    let ym = y.measure();
    let cox = hull_len(x)?;
    let coy = hull_len(y)?;
    let y_gap = &coy - &ym;
    let corr = if &xm - &y_gap < rzero() { &xm - &y_gap } else { rzero() };
    let double_x = rint(2) * &xm;
    let via_hull_y = &xm + &coy + &corr;
    let via_hull_x = &cox + &ym + &corr;
    let actual = x.sumset(y).measure();
    let holds = actual >= double_x && actual >= via_hull_y && actual >= via_hull_x;
    Ok(AdditionBounds { double_x, via_hull_y, via_hull_x, actual, holds })
}

/// Replace each fiber by an interval [0, |B_i|] and reindex fibers onto
/// 1..t by decreasing measure (ties keep the original index order).
pub fn fiber_compress_1d(b: &FiberedSet) -> Result<FiberedSet> {
    let idxs = b.indices();
    let mut measures: Vec<(i64, Rat)> =
        idxs.iter().map(|&i| (i, b.fiber(i).unwrap().measure())).collect();
    measures.sort_by(|(ia, ma), (ib, mb)| mb.cmp(ma).then(ia.cmp(ib)));
    let mut out = BTreeMap::new();
    for (slot, (_, m)) in measures.into_iter().enumerate() {
        if m.is_zero() {
            return Err(Error::ZeroMeasure);
        }
        out.insert(slot as i64 + 1, IntervalUnion::interval(rzero(), m)?);
    }
    FiberedSet::new(out)
}

/// Replace fiber i by a near-cube of dimension kd at the given cell scale:
/// floor(|B_i| / scale^kd) cells filled in odometer order inside the
/// smallest enclosing cube. Returns the hybrid set and the total volume
/// residual lost to discretization.
pub fn fiber_compress_box(b: &FiberedSet, kd: u32, scale: &Rat) -> Result<(HybridSet, Rat)> {
    if kd == 0 || !scale.is_positive() {
        return Err(Error::Precondition("box mode needs kd >= 1 and a positive scale".into()));
    }
    let idxs = b.indices();
    let mut measures: Vec<(i64, Rat)> =
        idxs.iter().map(|&i| (i, b.fiber(i).unwrap().measure())).collect();
    measures.sort_by(|(ia, ma), (ib, mb)| mb.cmp(ma).then(ia.cmp(ib)));
    let cell_vol = rpow(scale, kd);
    let mut pts = Vec::new();
    let mut residual = rzero();
    for (slot, (_, m)) in measures.into_iter().enumerate() {
        let want = &m / &cell_vol;
        let count = want.floor().to_integer();
        let count: u64 = num_traits::ToPrimitive::to_u64(&count)
            .ok_or(Error::BudgetExceeded { needed: u64::MAX, budget: 1 << 32 })?;
        if count > 1 << 24 {
            return Err(Error::BudgetExceeded { needed: count, budget: 1 << 24 });
        }
        residual += &m - rint(count as i64) * &cell_vol;
        // Smallest cube of side s holding `count` cells.
        let mut side = 1u64;
        while side.pow(kd) < count {
            side += 1;
        }
        let mut cell = vec![0i64; kd as usize];
        for _ in 0..count {
            pts.push((vec![slot as i64 + 1], cell.clone()));
            for ax in 0..kd as usize {
                cell[ax] += 1;
                if cell[ax] < side as i64 {
                    break;
                }
                cell[ax] = 0;
            }
        }
    }
    let h = HybridSet::new(1, kd as usize, scale.clone(), pts)?;
    Ok((h, residual))
}

#[derive(Debug, Clone)]
pub struct AnalyticReport {
    pub lhs_lo: Rat,
    pub lhs_hi: Rat,
    pub rhs_lo: Rat,
    pub rhs_hi: Rat,
    pub holds: bool,
}

/// For f >= 0 with bounded downward steps f(i+1) - f(i) >= -c, the big
/// steps (>= threshold, early enough) are dominated by the total mass:
/// sum f >= (threshold / 4c) * sum of big steps.
pub fn bigstep(f: &[Rat], c: &Rat, threshold: &Rat) -> Result<AnalyticReport> {
    if f.is_empty() {
        return Err(Error::Empty("bigstep input"));
    }
    if !c.is_positive() || !threshold.is_positive() {
        return Err(Error::Precondition("bigstep needs c > 0 and threshold > 0".into()));
    }
    for v in f {
        if v.is_negative() {
            return Err(Error::Precondition("bigstep needs f >= 0".into()));
        }
    }
    let l = f.len() - 1;
    let mut big = rzero();
    for i in 0..l {
        let diff = &f[i + 1] - &f[i];
        if diff < -c.clone() {
            return Err(Error::Precondition("a step drops faster than -c".into()));
        }
        // i <= L - threshold/c, kept in exact arithmetic.
        if &diff >= threshold && rint(i as i64) <= rint(l as i64) - threshold / c {
            big += diff;
        }
    }
    let lhs: Rat = f.iter().sum();
    let rhs = threshold / (rint(4) * c) * big;
    let holds = lhs >= rhs;
    Ok(AnalyticReport {
        lhs_lo: lhs.clone(),
        lhs_hi: lhs,
        rhs_lo: rhs.clone(),
        rhs_hi: rhs,
        holds,
    })
}

/// Exact intermediate inequality of the second-order bound: with
/// theta = (y/x)^{1/l} >= 1, check (1+theta)^l - 2^l >= (theta-1) l 2^{l-1}.
/// Rational theta is decided exactly; otherwise both (monotone) sides are
/// evaluated on a refining enclosure of theta.
pub fn secondorder(x: &Rat, y: &Rat, l: u32) -> Result<AnalyticReport> {
    if !x.is_positive() || x > y {
        return Err(Error::Precondition("secondorder needs 0 < x <= y".into()));
    }
    if l == 0 {
        return Err(Error::Precondition("secondorder needs l >= 1".into()));
    }
    let lhs_at = |th: &Rat| rpow(&(rint(1) + th), l) - pow2(l);
    let rhs_at = |th: &Rat| (th - rint(1)) * rint(l as i64) * pow2(l - 1);
    let ratio = y / x;
    if let Some(theta) = rat_nth_root_exact(&ratio, l) {
        let lhs = lhs_at(&theta);
        let rhs = rhs_at(&theta);
        let holds = lhs >= rhs;
        return Ok(AnalyticReport {
            lhs_lo: lhs.clone(),
            lhs_hi: lhs,
            rhs_lo: rhs.clone(),
            rhs_hi: rhs,
            holds,
        });
    }
    for bits in ENCLOSURE_SCHEDULE {
        let (tlo, thi) = ratio_root_enclosure(x, y, l, bits);
        // Both sides increase in theta, so the interval images are direct.
        let (lhs_lo, lhs_hi) = (lhs_at(&tlo), lhs_at(&thi));
        let (rhs_lo, rhs_hi) = (rhs_at(&tlo), rhs_at(&thi));
        if lhs_lo >= rhs_hi {
            return Ok(AnalyticReport { lhs_lo, lhs_hi, rhs_lo, rhs_hi, holds: true });
        }
        if lhs_hi < rhs_lo {
            return Ok(AnalyticReport { lhs_lo, lhs_hi, rhs_lo, rhs_hi, holds: false });
        }
    }
    Err(Error::Undecided("second-order comparison at max precision"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeSet;
    use crate::rat::rat;

    fn hz(d: usize, pts: &[&[i64]]) -> HybridSet {
        HybridSet::new(
            d,
            0,
            rint(1),
            pts.iter().map(|z| (z.to_vec(), vec![])).collect(),
        )
        .unwrap()
    }

    #[test]
    fn compress_moves_fibers_to_initial_segments() {
        let a = hz(2, &[&[0, 0], &[1, 1]]);
        let c = a.compress(2).unwrap();
        assert_eq!(c.points(), &[(vec![0, 0], vec![]), (vec![1, 0], vec![])]);
        assert_eq!(c.compress(2).unwrap(), c);

        let b = hz(2, &[&[0, 3], &[0, 7]]);
        let cb = b.compress(2).unwrap();
        assert_eq!(cb.points(), &[(vec![0, 0], vec![]), (vec![0, 1], vec![])]);
        assert_eq!(cb.measure(), b.measure());
    }

    #[test]
    fn projection_sum_line_and_square() {
        let a = hz(1, &[&[0], &[1]]);
        let r = projection_sum(&a, &a).unwrap();
        assert_eq!(r.lhs, rint(4));
        assert!(r.holds);

        let sq = hz(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let r2 = projection_sum(&sq, &sq).unwrap();
        assert_eq!(r2.lhs, rint(16));
        assert!(r2.holds);

        let single = hz(1, &[&[0]]);
        let r3 = projection_sum(&single, &single).unwrap();
        assert_eq!(r3.lhs, rint(2));
        assert!(r3.holds);
    }

    #[test]
    fn cube_bm_on_a_lattice_square() {
        let sq = hz(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let (lhs, _, holds) = cube_bm(&sq, &sq).unwrap();
        // A+A+{0,1}^2 = {0..3}^2.
        assert_eq!(lhs, rint(16));
        assert!(holds);
    }

    #[test]
    fn separated_bound_three_translates() {
        // P = {0, 5, 10} in R^1, Q = [-1, 1].
        let p = Gap::line(-5, &[5], &[3]).unwrap();
        let q = Zonotope::segment(rint(1));
        let y = Polycube::from_box(&[rint(-1)], &[rint(1)]).unwrap();
        let pq = Polycube::from_interval_union(
            &IntervalUnion::new(vec![
                (rint(-1), rint(1)),
                (rint(4), rint(6)),
                (rint(9), rint(11)),
            ])
            .unwrap(),
        )
        .unwrap();
        let r = bm_separated(&p, &q, &pq, &pq, 3, 1 << 20).unwrap();
        assert_eq!(r.lhs, rint(20));
        assert_eq!(r.slack, rint(16));
        assert!(r.holds);

        // Two single translates inside P + Q.
        let y5 = Polycube::from_box(&[rint(4)], &[rint(6)]).unwrap();
        let z10 = Polycube::from_box(&[rint(9)], &[rint(11)]).unwrap();
        let r2 = bm_separated(&p, &q, &y5, &z10, 3, 1 << 20).unwrap();
        assert_eq!(r2.lhs, rint(4));
        assert!(r2.holds);

        // d = 0 sanity: a single point progression.
        let p0 = Gap::line(0, &[], &[]).unwrap();
        let r3 = bm_separated(&p0, &q, &y, &y, 1, 1 << 20).unwrap();
        assert_eq!(r3.lhs, rint(4));
        assert_eq!(r3.slack, rint(4));
        assert!(r3.holds);
    }

    #[test]
    fn separated_bound_rejects_bad_inputs() {
        let p = Gap::line(-1, &[1], &[3]).unwrap(); // {0,1,2}: not 4Q-separated
        let q = Zonotope::segment(rint(1));
        let y = Polycube::from_box(&[rint(0)], &[rint(1)]).unwrap();
        assert!(matches!(
            bm_separated(&p, &q, &y, &y, 3, 1 << 20),
            Err(Error::NotSeparated(_))
        ));
        // Fullness check: lengths (2) against n = 3.
        let p2 = Gap::line(-10, &[10], &[2]).unwrap();
        assert!(matches!(
            bm_separated(&p2, &q, &y, &y, 3, 1 << 20),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn freiman_bound_examples() {
        let a = SetValue::Lattice(LatticeSet::from_values(&[0, 1, 2, 4]));
        let r = freiman3k4(&a).unwrap();
        assert_eq!(r.bound, rint(8));
        assert_eq!(r.actual, rint(8));
        assert!(r.holds);

        let ap = SetValue::Lattice(LatticeSet::from_values(&(0..10).collect::<Vec<_>>()));
        let r2 = freiman3k4(&ap).unwrap();
        assert_eq!(r2.bound, rint(19));
        assert_eq!(r2.actual, rint(19));

        let u = SetValue::Interval(IntervalUnion::interval(rzero(), rint(1)).unwrap());
        let r3 = freiman3k4(&u).unwrap();
        assert_eq!(r3.bound, rint(2));
        assert_eq!(r3.actual, rint(2));
    }

    #[test]
    fn addition_bound_examples() {
        let unit = IntervalUnion::interval(rzero(), rint(1)).unwrap();
        let r = addition_bounds(&unit, &unit).unwrap();
        assert_eq!(
            (r.double_x, r.via_hull_y, r.via_hull_x, r.actual),
            (rint(2), rint(2), rint(2), rint(2))
        );

        let y = IntervalUnion::new(vec![(rint(0), rint(1)), (rint(2), rint(3))]).unwrap();
        let r2 = addition_bounds(&unit, &y).unwrap();
        assert_eq!(r2.via_hull_y, rint(4));
        assert_eq!(r2.actual, rint(4));
        assert!(r2.holds);

        let half = IntervalUnion::interval(rzero(), rat(1, 2)).unwrap();
        let r3 = addition_bounds(&half, &y).unwrap();
        assert_eq!(r3.via_hull_y, rint(3));
        assert_eq!(r3.actual, rint(3));
        assert!(r3.holds);
    }

    #[test]
    fn fiber_compress_keeps_measure_and_never_grows_the_sumset() {
        let mut m = BTreeMap::new();
        m.insert(1, IntervalUnion::new(vec![(rint(0), rint(1)), (rint(2), rint(3))]).unwrap());
        m.insert(2, IntervalUnion::interval(rint(0), rint(1)).unwrap());
        let b = FiberedSet::new(m).unwrap();
        let c = fiber_compress_1d(&b).unwrap();
        assert_eq!(c.fiber(1).unwrap().measure(), rint(2));
        assert_eq!(c.fiber(2).unwrap().measure(), rint(1));
        assert_eq!(c.measure(), b.measure());
        let before = b.sumset(&b).measure();
        let after = c.sumset(&c).measure();
        assert_eq!(after, rint(9));
        assert_eq!(before, rint(12));
        assert!(after <= before);
    }

    #[test]
    fn fiber_compress_reorders_by_measure() {
        let b = FiberedSet::from_lengths(&[rint(1), rint(2)]).unwrap();
        let c = fiber_compress_1d(&b).unwrap();
        assert_eq!(c.fiber(1).unwrap().measure(), rint(2));
        assert_eq!(c.fiber(2).unwrap().measure(), rint(1));

        // A single contiguous fiber only gets translated to the origin.
        let mut m = BTreeMap::new();
        m.insert(5, IntervalUnion::interval(rint(1), rint(3)).unwrap());
        let single = FiberedSet::new(m).unwrap();
        let cs = fiber_compress_1d(&single).unwrap();
        assert_eq!(cs.indices(), vec![1]);
        assert_eq!(
            cs.fiber(1).unwrap().components(),
            &[(rzero(), rint(2))]
        );
    }

    #[test]
    fn fiber_compress_box_reports_residual() {
        let b = FiberedSet::from_lengths(&[rint(2), rint(1)]).unwrap();
        let (h, residual) = fiber_compress_box(&b, 2, &rat(1, 2)).unwrap();
        // 2 = 8 quarter-cells, 1 = 4: both exact.
        assert_eq!(residual, rzero());
        assert_eq!(h.measure(), rint(3));
        let (_, r2) = fiber_compress_box(&b, 2, &rat(3, 4)).unwrap();
        assert!(r2.is_positive());
    }

    #[test]
    fn bigstep_example() {
        let mut f = vec![rint(0), rint(10)];
        for v in (1..10).rev() {
            f.push(rint(v));
        }
        let r = bigstep(&f, &rint(1), &rint(5)).unwrap();
        assert_eq!(r.lhs_lo, rint(55));
        assert_eq!(r.rhs_lo, rat(25, 2));
        assert!(r.holds);

        // No big steps at all: RHS collapses to zero.
        let flat = vec![rint(1), rint(1), rint(1)];
        let r2 = bigstep(&flat, &rint(1), &rint(5)).unwrap();
        assert_eq!(r2.rhs_lo, rzero());
    }

    #[test]
    fn secondorder_equality_and_irrational_cases() {
        let r = secondorder(&rint(1), &rint(1), 2).unwrap();
        assert_eq!(r.lhs_lo, rzero());
        assert_eq!(r.rhs_lo, rzero());
        assert!(r.holds);

        // theta = 2^{1/2}: strict inequality decided by enclosure.
        let r2 = secondorder(&rint(1), &rint(2), 2).unwrap();
        assert!(r2.holds);
        assert!(r2.lhs_lo > r2.rhs_hi || r2.lhs_lo >= r2.rhs_hi);

        let r3 = secondorder(&rint(1), &rint(8), 3).unwrap();
        assert!(r3.holds);
    }
}
