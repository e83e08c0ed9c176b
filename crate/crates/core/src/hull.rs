//! Additive hull pipeline: split a set into disjoint convex parts, merge
//! parts until an injective Freiman s-homomorphic integer labeling exists,
//! and turn the labeled quotient measure into a doubling lower bound via
//! max-convolution.

use crate::error::{Error, Result};
use crate::linalg::kernel_basis;
use crate::polycube::rat_gcd;
use crate::rat::{rint, rzero, QVec, Rat};
use crate::roots::{PowVal, SumVal};
use crate::set_value::SetValue;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{Signed, ToPrimitive, Zero};

/// One convex piece of a cover: an axis box hull plus the measure of the
/// covered set inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub lo: QVec,
    pub hi: QVec,
    pub mass: Rat,
}

impl Part {
    pub fn volume(&self) -> Rat {
        let mut v = rint(1);
        for (l, h) in self.lo.iter().zip(&self.hi) {
            v *= h - l;
        }
        v
    }

    fn joint_volume(&self, other: &Part) -> Rat {
        let mut v = rint(1);
        for ax in 0..self.lo.len() {
            let l = if self.lo[ax] <= other.lo[ax] { &self.lo[ax] } else { &other.lo[ax] };
            let h = if self.hi[ax] >= other.hi[ax] { &self.hi[ax] } else { &other.hi[ax] };
            v *= h - l;
        }
        v
    }

    fn overlaps(&self, other: &Part) -> bool {
        self.lo
            .iter()
            .zip(&self.hi)
            .zip(other.lo.iter().zip(&other.hi))
            .all(|((alo, ahi), (blo, bhi))| alo <= bhi && blo <= ahi)
    }

    fn absorb(&mut self, other: &Part) {
        for ax in 0..self.lo.len() {
            if other.lo[ax] < self.lo[ax] {
                self.lo[ax] = other.lo[ax].clone();
            }
            if other.hi[ax] > self.hi[ax] {
                self.hi[ax] = other.hi[ax].clone();
            }
        }
        self.mass += &other.mass;
    }

    fn contains_box(&self, lo: &[Rat], hi: &[Rat]) -> bool {
        self.lo.iter().zip(lo).all(|(p, q)| p <= q)
            && self.hi.iter().zip(hi).all(|(p, q)| p >= q)
    }
}

/// Disjoint convex parts covering a set, with an injective integer label
/// per part.
#[derive(Debug, Clone)]
pub struct PartCover {
    pub parts: Vec<Part>,
    pub labels: Vec<i64>,
}

impl PartCover {
    pub fn new(parts: Vec<Part>, labels: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Empty("part cover"));
        }
        if parts.len() != labels.len() {
            return Err(Error::DimensionMismatch { left: parts.len(), right: labels.len() });
        }
        let dim = parts[0].lo.len();
        for p in &parts {
            if p.lo.len() != dim || p.hi.len() != dim {
                return Err(Error::DimensionMismatch { left: p.lo.len(), right: dim });
            }
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if parts[i].overlaps(&parts[j]) {
                    return Err(Error::Precondition("parts must be pairwise disjoint".into()));
                }
                if labels[i] == labels[j] {
                    return Err(Error::Precondition("labels must be injective".into()));
                }
            }
        }
        Ok(PartCover { parts, labels })
    }

    pub fn total_volume(&self) -> Rat {
        self.parts.iter().map(|p| p.volume()).sum()
    }
}

/// Quotient measure on the label set: mu(label) = mass of the part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub mu: BTreeMap<i64, Rat>,
}

impl Quotient {
    pub fn new(mu: BTreeMap<i64, Rat>) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::Empty("quotient measure"));
        }
        for m in mu.values() {
            if !m.is_positive() {
                return Err(Error::Precondition("quotient measure must be positive".into()));
            }
        }
        Ok(Quotient { mu })
    }

    pub fn total(&self) -> Rat {
        self.mu.values().sum()
    }
}

#[derive(Debug, Clone)]
pub struct HomReport {
    pub holds: bool,
    /// On failure: the two s-tuples of part indices whose sums overlap while
    /// their label sums differ.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Nondecreasing index tuples of length s over 0..n (multisets of parts).
pub(crate) fn multisets(n: usize, s: u32) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..s {
        let mut next = Vec::new();
        for t in &out {
            let start = t.last().copied().unwrap_or(0);
            for i in start..n {
                let mut tt = t.clone();
                tt.push(i);
                next.push(tt);
            }
        }
        out = next;
    }
    out
}

fn tuple_sum_box(parts: &[Part], tuple: &[usize]) -> (QVec, QVec) {
    let dim = parts[0].lo.len();
    let mut lo = vec![rzero(); dim];
    let mut hi = vec![rzero(); dim];
    for &i in tuple {
        for ax in 0..dim {
            lo[ax] += &parts[i].lo[ax];
            hi[ax] += &parts[i].hi[ax];
        }
    }
    (lo, hi)
}

fn boxes_overlap(alo: &[Rat], ahi: &[Rat], blo: &[Rat], bhi: &[Rat]) -> bool {
    alo.iter()
        .zip(ahi)
        .zip(blo.iter().zip(bhi))
        .all(|((l1, h1), (l2, h2))| l1 <= h2 && l2 <= h1)
}

/// First 2s-tuple violating "sums overlap => label sums agree", or None.
fn hom_witness(
    parts: &[Part],
    labels: &[i64],
    s: u32,
    budget: u64,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let tuples = multisets(parts.len(), s);
    let m = tuples.len() as u64;
    let needed = m * (m + 1) / 2;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let boxes: Vec<(QVec, QVec)> = tuples.iter().map(|t| tuple_sum_box(parts, t)).collect();
    let sums: Vec<i64> = tuples
        .iter()
        .map(|t| t.iter().map(|&i| labels[i]).sum::<i64>())
        .collect();
    for i in 0..tuples.len() {
        for j in i + 1..tuples.len() {
            if sums[i] != sums[j]
                && boxes_overlap(&boxes[i].0, &boxes[i].1, &boxes[j].0, &boxes[j].1)
            {
                return Ok(Some((tuples[i].clone(), tuples[j].clone())));
            }
        }
    }
    Ok(None)
}

/// Check that the labeled cover is a Freiman s-homomorphism witness for `a`:
/// the parts cover `a`, and any two part s-sums that intersect carry equal
/// label sums.
pub fn verify_hom(cover: &PartCover, s: u32, a: &SetValue, budget: u64) -> Result<HomReport> {
    if s < 1 {
        return Err(Error::Precondition("homomorphism order must be >= 1".into()));
    }
    for (lo, hi) in component_boxes(a)? {
        if !cover.parts.iter().any(|p| p.contains_box(&lo, &hi)) {
            return Err(Error::Precondition("cover does not contain the set".into()));
        }
    }
    let witness = hom_witness(&cover.parts, &cover.labels, s, budget)?;
    Ok(HomReport { holds: witness.is_none(), witness })
}

/// Convex components of the set as (lo, hi) boxes. Lattice values are not
/// covered here: the pipeline works on measured sets.
fn component_boxes(a: &SetValue) -> Result<Vec<(QVec, QVec)>> {
    match a {
        SetValue::Interval(u) => {
            if u.is_empty() {
                return Err(Error::Empty("hull pipeline input"));
            }
            Ok(u.components()
                .iter()
                .map(|(lo, hi)| (vec![lo.clone()], vec![hi.clone()]))
                .collect())
        }
        SetValue::Cube(p) => {
            if p.cells().is_empty() {
                return Err(Error::Empty("hull pipeline input"));
            }
            let comps = cube_components(p.cells().points());
            let scale = p.scale();
            Ok(comps
                .into_iter()
                .map(|cells| {
                    let k = cells[0].len();
                    let mut lo = vec![i64::MAX; k];
                    let mut hi = vec![i64::MIN; k];
                    for z in &cells {
                        for ax in 0..k {
                            lo[ax] = lo[ax].min(z[ax]);
                            hi[ax] = hi[ax].max(z[ax] + 1);
                        }
                    }
                    (
                        lo.iter().map(|&v| rint(v) * scale).collect(),
                        hi.iter().map(|&v| rint(v) * scale).collect(),
                    )
                })
                .collect())
        }
        SetValue::Lattice(_) => {
            Err(Error::Precondition("hull pipeline needs a measured set".into()))
        }
    }
}

/// Face-adjacency components of a cell set.
fn cube_components(cells: &[crate::rat::ZVec]) -> Vec<Vec<crate::rat::ZVec>> {
    let idx: BTreeMap<&crate::rat::ZVec, usize> =
        cells.iter().enumerate().map(|(i, z)| (z, i)).collect();
    let mut seen = vec![false; cells.len()];
    let mut comps = Vec::new();
    for start in 0..cells.len() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut comp = Vec::new();
        while let Some(i) = stack.pop() {
            comp.push(cells[i].clone());
            for ax in 0..cells[i].len() {
                for dv in [-1i64, 1] {
                    let mut nb = cells[i].clone();
                    nb[ax] += dv;
                    if let Some(&j) = idx.get(&nb) {
                        if !seen[j] {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        comps.push(comp);
    }
    comps
}

fn initial_parts(a: &SetValue) -> Result<Vec<Part>> {
    let boxes = component_boxes(a)?;
    let mut parts: Vec<Part> = match a {
        SetValue::Interval(u) => boxes
            .into_iter()
            .zip(u.components())
            .map(|((lo, hi), (clo, chi))| Part { lo, hi, mass: chi - clo })
            .collect(),
        SetValue::Cube(p) => {
            let comps = cube_components(p.cells().points());
            let mut cell_vol = rint(1);
            for _ in 0..p.dim() {
                cell_vol *= p.scale();
            }
            boxes
                .into_iter()
                .zip(&comps)
                .map(|((lo, hi), cells)| Part {
                    lo,
                    hi,
                    mass: rint(cells.len() as i64) * &cell_vol,
                })
                .collect()
        }
        SetValue::Lattice(_) => unreachable!("rejected by component_boxes"),
    };
    parts.sort_by(|p, q| p.lo.cmp(&q.lo).then(p.hi.cmp(&q.hi)));
    Ok(parts)
}

/// Label-sum constraints from overlapping s-sums: one row per overlapping
/// pair of distinct multisets, as a signed incidence vector over parts.
fn overlap_constraints(parts: &[Part], s: u32, budget: u64) -> Result<Vec<QVec>> {
    let tuples = multisets(parts.len(), s);
    let m = tuples.len() as u64;
    let needed = m * (m + 1) / 2;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let boxes: Vec<(QVec, QVec)> = tuples.iter().map(|t| tuple_sum_box(parts, t)).collect();
    let mut rows = Vec::new();
    for i in 0..tuples.len() {
        for j in i + 1..tuples.len() {
            if !boxes_overlap(&boxes[i].0, &boxes[i].1, &boxes[j].0, &boxes[j].1) {
                continue;
            }
            let mut row = vec![rzero(); parts.len()];
            for &p in &tuples[i] {
                row[p] += rint(1);
            }
            for &p in &tuples[j] {
                row[p] -= rint(1);
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// Pair of parts forced to share a label by the constraint kernel, chosen
/// by smallest joint hull volume, then leftmost.
fn forced_pair(parts: &[Part], kernel: &[QVec]) -> Option<(usize, usize)> {
    let mut best: Option<(Rat, usize, usize)> = None;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if kernel.iter().any(|v| v[i] != v[j]) {
                continue;
            }
            let vol = parts[i].joint_volume(&parts[j]);
            let better = match &best {
                None => true,
                Some((bv, bi, bj)) => {
                    vol < *bv || (vol == *bv && (i, j) < (*bi, *bj))
                }
            };
            if better {
                best = Some((vol, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn merge_parts(parts: &mut Vec<Part>, i: usize, j: usize) {
    let other = parts.remove(j);
    parts[i].absorb(&other);
    // Growing the hull can swallow further parts; keep absorbing until the
    // cover is disjoint again.
    loop {
        let hit = (0..parts.len())
            .find(|&t| t != i && parts[t].overlaps(&parts[i]));
        match hit {
            Some(t) => {
                let other = parts.remove(t);
                let i = if t < i { i - 1 } else { i };
                parts[i].absorb(&other);
            }
            None => break,
        }
    }
    parts.sort_by(|p, q| p.lo.cmp(&q.lo).then(p.hi.cmp(&q.hi)));
}

/// Injective integer labels inside the affine span allowed by the kernel,
/// normalized to start at 0 with coprime increments, increasing with part
/// order.
fn injective_labels(n: usize, kernel: &[QVec]) -> Result<Vec<i64>> {
    if n == 1 {
        return Ok(vec![0]);
    }
    let max_t = (kernel.len() as u64) * (n as u64) * (n as u64) + 2;
    for t in 1..=max_t {
        let t = rint(t as i64);
        let mut v = vec![rzero(); n];
        let mut w = rint(1);
        for b in kernel {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += &w * bi;
            }
            w *= &t;
        }
        let mut sorted = v.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            continue;
        }
        // Normalize: translate the minimum to 0, divide out the gcd, and
        // orient so labels grow from the first part to the last.
        let min = sorted[0].clone();
        let mut g = rzero();
        for vi in &v {
            g = rat_gcd(&g, &(vi - &min));
        }
        let vals: Vec<Rat> = v.iter().map(|vi| (vi - &min) / &g).collect();
        let vals = if vals[0] > vals[n - 1] {
            let mx = vals.iter().max().unwrap().clone();
            vals.iter().map(|x| &mx - x).collect()
        } else {
            vals
        };
        let mut out = Vec::with_capacity(n);
        for x in &vals {
            let z = x
                .to_integer()
                .to_i64()
                .ok_or(Error::Precondition("label out of integer range".into()))?;
            out.push(z);
        }
        return Ok(out);
    }
    Err(Error::Precondition("no injective labeling found in the kernel".into()))
}

#[derive(Debug, Clone)]
pub struct CocoReport {
    pub cover: PartCover,
    pub quotient: Quotient,
    /// Total hull volume: an upper bound for the minimal s-homomorphic
    /// convex cover volume.
    pub bound: Rat,
    pub merges: u32,
}

/// Greedy upper bound for the minimal-volume s-homomorphic convex cover:
/// start from the convex components and merge any kernel-forced pair
/// (smallest joint hull first) until an injective labeling exists.
pub fn coco_upper(a: &SetValue, s: u32, budget: u64) -> Result<CocoReport> {
    if !(2..=3).contains(&s) {
        return Err(Error::Precondition("cover order must be 2 or 3".into()));
    }
    let mut parts = initial_parts(a)?;
    let mut merges = 0u32;
    loop {
        let cons = overlap_constraints(&parts, s, budget)?;
        let kernel = if cons.is_empty() {
            (0..parts.len())
                .map(|i| {
                    let mut e = vec![rzero(); parts.len()];
                    e[i] = rint(1);
                    e
                })
                .collect()
        } else {
            kernel_basis(&cons)
        };
        if let Some((i, j)) = forced_pair(&parts, &kernel) {
            merge_parts(&mut parts, i, j);
            merges += 1;
            continue;
        }
        let labels = injective_labels(parts.len(), &kernel)?;
        let cover = PartCover::new(parts, labels)?;
        debug_assert!(hom_witness(&cover.parts, &cover.labels, s, budget)?.is_none());
        let mut mu = BTreeMap::new();
        for (p, &l) in cover.parts.iter().zip(&cover.labels) {
            mu.insert(l, p.mass.clone());
        }
        let quotient = Quotient::new(mu)?;
        let bound = cover.total_volume();
        return Ok(CocoReport { cover, quotient, bound, merges });
    }
}

#[derive(Debug, Clone)]
pub struct MaxConv {
    pub k: u32,
    /// Per sum index: the maximizing pair value (mu(x)^{1/k}+mu(y)^{1/k})^k.
    pub entries: Vec<(i64, PowVal)>,
    pub total: SumVal,
}

/// Max-convolution of the quotient with itself: for each i, the maximum of
/// (mu(x)^{1/k} + mu(y)^{1/k})^k over x + y = i, plus the total over i.
/// k = 1 stays exact; higher k uses certified root comparisons.
pub fn maxconv(mu: &Quotient, k: u32) -> Result<MaxConv> {
    if k == 0 {
        return Err(Error::Precondition("convolution exponent must be >= 1".into()));
    }
    let mut by_target: BTreeMap<i64, Vec<PowVal>> = BTreeMap::new();
    let support: Vec<(&i64, &Rat)> = mu.mu.iter().collect();
    for (ai, (&x, mx)) in support.iter().enumerate() {
        for (&y, my) in &support[ai..] {
            let target = x + y;
            let (a, b) = if mx <= my {
                ((*mx).clone(), (*my).clone())
            } else {
                ((*my).clone(), (*mx).clone())
            };
            by_target.entry(target).or_default().push(PowVal::new(a, b, k));
        }
    }
    let mut entries = Vec::with_capacity(by_target.len());
    for (target, mut cands) in by_target {
        cands.sort_by(|p, q| (&p.a, &p.b).cmp(&(&q.a, &q.b)));
        cands.dedup();
        let mut best = cands.pop().unwrap();
        for c in cands {
            if c.cmp(&best)? == core::cmp::Ordering::Greater {
                best = c;
            }
        }
        entries.push((target, best));
    }
    let vals: Vec<PowVal> = entries.iter().map(|(_, v)| v.clone()).collect();
    let total = PowVal::sum(&vals);
    Ok(MaxConv { k, entries, total })
}

#[derive(Debug, Clone)]
pub struct DoublingLower {
    pub report: CocoReport,
    pub conv: MaxConv,
    pub actual: Rat,
    pub holds: bool,
}

/// End-to-end lower bound check: |A+A| >= maxconv(quotient of A, k) total.
/// The comparison uses the upper end of the total, so `holds` is never a
/// false positive.
pub fn doubling_lower(a: &SetValue, s: u32, k: u32, budget: u64) -> Result<DoublingLower> {
    let report = coco_upper(a, s, budget)?;
    let conv = maxconv(&report.quotient, k)?;
    let actual = a.sumset(a)?.size();
    let holds = actual >= conv.total.upper();
    if !holds && actual >= conv.total.lower() {
        return Err(Error::Undecided("doubling lower bound at enclosure precision"));
    }
    Ok(DoublingLower { report, conv, actual, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalUnion;
    use crate::rat::rat;

    fn iv(parts: &[(i64, i64)]) -> SetValue {
        SetValue::Interval(
            IntervalUnion::new(parts.iter().map(|&(a, b)| (rint(a), rint(b))).collect())
                .unwrap(),
        )
    }

    fn part1(lo: i64, hi: i64, mass: i64) -> Part {
        Part { lo: vec![rint(lo)], hi: vec![rint(hi)], mass: rint(mass) }
    }

    #[test]
    fn hom_check_far_parts_and_crossing_parts() {
        let far = PartCover::new(vec![part1(0, 1, 1), part1(100, 101, 1)], vec![0, 1]).unwrap();
        let a = iv(&[(0, 1), (100, 101)]);
        let r = verify_hom(&far, 2, &a, 1 << 20).unwrap();
        assert!(r.holds);
        let r3 = verify_hom(&far, 3, &a, 1 << 20).unwrap();
        assert!(r3.holds);

        let close = PartCover::new(
            vec![
                part1(0, 1, 1),
                Part { lo: vec![rat(3, 2)], hi: vec![rat(5, 2)], mass: rint(1) },
            ],
            vec![0, 1],
        )
        .unwrap();
        let b = SetValue::Interval(
            IntervalUnion::new(vec![(rint(0), rint(1)), (rat(3, 2), rat(5, 2))]).unwrap(),
        );
        let r2 = verify_hom(&close, 2, &b, 1 << 20).unwrap();
        assert!(!r2.holds);
        // X0+X0 = [0,2] meets X0+X1 = [1.5,3.5] while 0+0 != 0+1.
        assert_eq!(r2.witness, Some((vec![0, 0], vec![0, 1])));

        let single = PartCover::new(vec![part1(0, 1, 1)], vec![0]).unwrap();
        let c = iv(&[(0, 1)]);
        assert!(verify_hom(&single, 2, &c, 1 << 20).unwrap().holds);
        assert!(verify_hom(&single, 3, &c, 1 << 20).unwrap().holds);
    }

    #[test]
    fn hom_check_rejects_tiny_budget() {
        let far = PartCover::new(vec![part1(0, 1, 1), part1(100, 101, 1)], vec![0, 1]).unwrap();
        let a = iv(&[(0, 1), (100, 101)]);
        assert!(matches!(
            verify_hom(&far, 2, &a, 2),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn cover_bound_far_parts_stay_split() {
        let a = iv(&[(0, 1), (100, 101)]);
        let r = coco_upper(&a, 2, 1 << 20).unwrap();
        assert_eq!(r.cover.parts.len(), 2);
        assert_eq!(r.bound, rint(2));
        assert_eq!(r.cover.labels, vec![0, 1]);
        assert_eq!(r.quotient.mu.get(&0), Some(&rint(1)));
        assert_eq!(r.quotient.mu.get(&1), Some(&rint(1)));
        assert!(verify_hom(&r.cover, 2, &a, 1 << 20).unwrap().holds);
    }

    #[test]
    fn cover_bound_merges_additively_close_parts() {
        let a = SetValue::Interval(
            IntervalUnion::new(vec![(rint(0), rint(1)), (rat(3, 2), rat(5, 2))]).unwrap(),
        );
        let r = coco_upper(&a, 2, 1 << 20).unwrap();
        assert_eq!(r.cover.parts.len(), 1);
        assert_eq!(r.merges, 1);
        assert_eq!(r.bound, rat(5, 2));
        assert_eq!(r.quotient.mu.get(&0), Some(&rint(2)));
        assert_eq!(r.quotient.total(), rint(2));
    }

    #[test]
    fn cover_bound_single_interval() {
        let a = iv(&[(0, 1)]);
        let r = coco_upper(&a, 2, 1 << 20).unwrap();
        assert_eq!(r.bound, rint(1));
        assert_eq!(r.quotient.total(), rint(1));
    }

    #[test]
    fn cover_labels_follow_arithmetic_structure() {
        // Three parts with X0+X2 meeting X1+X1: labels must form an AP.
        let a = SetValue::Interval(
            IntervalUnion::new(vec![
                (rint(0), rint(1)),
                (rat(5, 2), rat(7, 2)),
                (rint(5), rint(6)),
            ])
            .unwrap(),
        );
        let r = coco_upper(&a, 2, 1 << 20).unwrap();
        assert_eq!(r.cover.parts.len(), 3);
        assert_eq!(r.cover.labels, vec![0, 1, 2]);
        assert_eq!(r.bound, rint(3));
        assert!(verify_hom(&r.cover, 2, &a, 1 << 20).unwrap().holds);
    }

    #[test]
    fn maxconv_examples() {
        let mut mu = BTreeMap::new();
        mu.insert(0, rint(1));
        mu.insert(1, rint(1));
        let q = Quotient::new(mu).unwrap();
        let mc = maxconv(&q, 1).unwrap();
        let vals: Vec<(i64, Rat)> =
            mc.entries.iter().map(|(i, v)| (*i, v.exact().unwrap())).collect();
        assert_eq!(vals, vec![(0, rint(2)), (1, rint(2)), (2, rint(2))]);
        assert_eq!(mc.total.upper(), rint(6));

        let mut one = BTreeMap::new();
        one.insert(0, rint(1));
        let q1 = Quotient::new(one).unwrap();
        let mc2 = maxconv(&q1, 2).unwrap();
        assert_eq!(mc2.entries[0].1.exact(), Some(rint(4)));

        let mut skew = BTreeMap::new();
        skew.insert(0, rint(4));
        skew.insert(1, rint(1));
        let q2 = Quotient::new(skew).unwrap();
        let mc3 = maxconv(&q2, 1).unwrap();
        let vals3: Vec<(i64, Rat)> =
            mc3.entries.iter().map(|(i, v)| (*i, v.exact().unwrap())).collect();
        assert_eq!(vals3, vec![(0, rint(8)), (1, rint(5)), (2, rint(2))]);
        assert_eq!(mc3.total.upper(), rint(15));
    }

    #[test]
    fn doubling_bound_is_tight_for_far_unit_intervals() {
        let a = iv(&[(0, 1), (100, 101)]);
        let r = doubling_lower(&a, 2, 1, 1 << 20).unwrap();
        assert_eq!(r.actual, rint(6));
        assert_eq!(r.conv.total.upper(), rint(6));
        assert!(r.holds);
    }

    #[test]
    fn doubling_bound_three_spread_intervals() {
        let a = SetValue::Interval(
            IntervalUnion::new(vec![
                (rint(0), rint(1)),
                (rat(5, 2), rat(7, 2)),
                (rint(5), rint(6)),
            ])
            .unwrap(),
        );
        let r = doubling_lower(&a, 2, 1, 1 << 20).unwrap();
        assert_eq!(r.actual, rint(10));
        assert_eq!(r.conv.total.upper(), rint(10));
        assert!(r.holds);
    }
}
