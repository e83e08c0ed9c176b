//! Generalised arithmetic progressions, convex progressions, zonotopes,
//! and the separated-lift Freiman isomorphism.

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, Lp, LpOutcome};
use crate::rat::{qadd, qdot, qscale, qsub, qzero, rceil, rfloor, rint, rzero, QVec, Rat, ZVec};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// P(a; l) translated by `base`: { base + sum lambda_i a_i : lambda_i = 1..l_i }.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap {
    pub base: QVec,
    pub steps: Vec<QVec>,
    pub lengths: Vec<u32>,
}

impl Gap {
    pub fn new(base: QVec, steps: Vec<QVec>, lengths: Vec<u32>) -> Result<Self> {
        if steps.len() != lengths.len() {
            return Err(Error::Precondition("steps/lengths count mismatch".into()));
        }
        let k = base.len();
        for s in &steps {
            if s.len() != k {
                return Err(Error::DimensionMismatch { left: k, right: s.len() });
            }
        }
        if lengths.iter().any(|&l| l == 0) {
            return Err(Error::Precondition("GAP lengths must be positive".into()));
        }
        Ok(Gap { base, steps, lengths })
    }

    /// 1-D integer GAP helper.
    pub fn line(base: i64, steps: &[i64], lengths: &[u32]) -> Result<Self> {
        Gap::new(
            vec![rint(base)],
            steps.iter().map(|&s| vec![rint(s)]).collect(),
            lengths.to_vec(),
        )
    }

    pub fn k(&self) -> usize {
        self.base.len()
    }

    pub fn d(&self) -> usize {
        self.steps.len()
    }

    /// Number of index tuples (with multiplicity).
    pub fn index_count(&self) -> u64 {
        self.lengths.iter().fold(1u64, |acc, &l| acc.saturating_mul(l as u64))
    }

    fn value_at(&self, lambda: &[i64]) -> QVec {
        let mut v = self.base.clone();
        for (i, s) in self.steps.iter().enumerate() {
            v = qadd(&v, &qscale(&rint(lambda[i]), s));
        }
        v
    }

    /// All (value, index tuple) pairs in odometer order over lambda_i in
    /// [lo_i, hi_i]; used for both enumeration and dilate properness.
    fn scan(&self, lo: &[i64], hi: &[i64], budget: u64) -> Result<Vec<(QVec, ZVec)>> {
        let mut count: u64 = 1;
        for i in 0..self.d() {
            count = count.saturating_mul((hi[i] - lo[i] + 1) as u64);
        }
        if count > budget {
            return Err(Error::BudgetExceeded { needed: count, budget });
        }
        let mut out = Vec::with_capacity(count as usize);
        if self.d() == 0 {
            out.push((self.base.clone(), Vec::new()));
            return Ok(out);
        }
        let mut lambda: ZVec = lo.to_vec();
        'scan: loop {
            out.push((self.value_at(&lambda), lambda.clone()));
            let mut i = self.d();
            loop {
                if i == 0 {
                    break 'scan;
                }
                i -= 1;
                if lambda[i] < hi[i] {
                    lambda[i] += 1;
                    for j in i + 1..self.d() {
                        lambda[j] = lo[j];
                    }
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Deduplicated value set plus the collision count.
    pub fn enumerate(&self, budget: u64) -> Result<(Vec<QVec>, u64)> {
        let lo: ZVec = vec![1; self.d()];
        let hi: ZVec = self.lengths.iter().map(|&l| l as i64).collect();
        let pairs = self.scan(&lo, &hi, budget)?;
        let total = pairs.len() as u64;
        let mut vals: Vec<QVec> = pairs.into_iter().map(|(v, _)| v).collect();
        vals.sort();
        vals.dedup();
        let n = vals.len() as u64;
        Ok((vals, total - n))
    }

    /// Value -> index-tuple map; requires injective enumeration (1-proper).
    pub fn value_index_map(&self, budget: u64) -> Result<Vec<(QVec, ZVec)>> {
        let lo: ZVec = vec![1; self.d()];
        let hi: ZVec = self.lengths.iter().map(|&l| l as i64).collect();
        let mut pairs = self.scan(&lo, &hi, budget)?;
        pairs.sort();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::NotProper(format!(
                    "value collision at indices {:?} and {:?}",
                    w[0].1, w[1].1
                )));
            }
        }
        Ok(pairs)
    }

    /// s-properness: the index map is injective on the s-dilate
    /// { sum lambda_i a_i : lambda_i in [s, s*l_i] }.
    pub fn is_proper(&self, s: u32, budget: u64) -> Result<bool> {
        if self.d() == 0 {
            return Ok(true);
        }
        let lo: ZVec = vec![s as i64; self.d()];
        let hi: ZVec = self.lengths.iter().map(|&l| (l as i64) * s as i64).collect();
        let pairs = self.scan(&lo, &hi, budget)?;
        let total = pairs.len();
        let mut vals: Vec<QVec> = pairs.into_iter().map(|(v, _)| v).collect();
        vals.sort();
        vals.dedup();
        Ok(vals.len() == total)
    }

    /// Shortest lattice fibre length; None means d = 0 (vacuously full).
    pub fn fullness(&self) -> Option<u32> {
        self.lengths.iter().copied().min()
    }

    pub fn is_full(&self, n: u32) -> bool {
        match self.fullness() {
            None => true,
            Some(f) => f >= n,
        }
    }

    /// The box description Pi [1, l_i] with phi = steps matrix, for code
    /// paths that want the convex-progression view (base is dropped).
    pub fn to_convex(&self) -> ConvexProgression {
        let d = self.d();
        let k = self.k();
        let mut ineqs = Vec::with_capacity(2 * d);
        for i in 0..d {
            let mut row = qzero(d);
            row[i] = Rat::one();
            ineqs.push((row.clone(), rint(self.lengths[i] as i64)));
            let mut row2 = qzero(d);
            row2[i] = -Rat::one();
            ineqs.push((row2, rint(-1)));
        }
        let phi: Vec<QVec> = (0..k)
            .map(|r| (0..d).map(|c| self.steps[c][r].clone()).collect())
            .collect();
        ConvexProgression { ineqs, phi, symmetric: false }
    }
}

/// phi(C cap Z^d) for an H-polytope C and a linear map phi: R^d -> R^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexProgression {
    /// Rows (a, b) meaning a . x <= b.
    pub ineqs: Vec<(QVec, Rat)>,
    /// k rows of d entries.
    pub phi: Vec<QVec>,
    pub symmetric: bool,
}

impl ConvexProgression {
    pub fn d(&self) -> usize {
        self.ineqs.first().map(|(a, _)| a.len()).unwrap_or(0)
    }

    pub fn k(&self) -> usize {
        self.phi.len()
    }

    pub fn contains(&self, x: &QVec) -> bool {
        self.ineqs.iter().all(|(a, b)| qdot(a, x) <= *b)
    }

    pub fn apply_phi(&self, z: &[i64]) -> QVec {
        let zq: QVec = z.iter().map(|&c| rint(c)).collect();
        self.phi.iter().map(|row| qdot(row, &zq)).collect()
    }

    pub fn apply_phi_rat(&self, x: &QVec) -> QVec {
        self.phi.iter().map(|row| qdot(row, x)).collect()
    }

    fn a_ub(&self) -> (Vec<QVec>, Vec<Rat>) {
        let a: Vec<QVec> = self.ineqs.iter().map(|(r, _)| r.clone()).collect();
        let b: Vec<Rat> = self.ineqs.iter().map(|(_, b)| b.clone()).collect();
        (a, b)
    }

    /// Integer bounding box [ceil(lo), floor(hi)] per coordinate.
    pub fn lattice_bounding_box(&self) -> Result<Vec<(i64, i64)>> {
        let d = self.d();
        let (a, b) = self.a_ub();
        let mut bb = Vec::with_capacity(d);
        for c in 0..d {
            let (lo, hi) = lp::coordinate_bounds(&a, &b, d, c)?;
            let lo_i = rceil(&lo).to_i64().ok_or(Error::Precondition("box too large".into()))?;
            let hi_i = rfloor(&hi).to_i64().ok_or(Error::Precondition("box too large".into()))?;
            bb.push((lo_i, hi_i));
        }
        Ok(bb)
    }

    /// C cap Z^d by bounding-box scan with per-inequality filtering.
    pub fn lattice_points(&self, budget: u64) -> Result<Vec<ZVec>> {
        let d = self.d();
        if d == 0 {
            return Ok(vec![Vec::new()]);
        }
        let bb = self.lattice_bounding_box()?;
        let mut count: u64 = 1;
        for (lo, hi) in &bb {
            if hi < lo {
                return Ok(Vec::new());
            }
            count = count.saturating_mul((hi - lo + 1) as u64);
        }
        if count > budget {
            return Err(Error::BudgetExceeded { needed: count, budget });
        }
        let mut out = Vec::new();
        let mut cur: ZVec = bb.iter().map(|r| r.0).collect();
        'scan: loop {
            let xq: QVec = cur.iter().map(|&c| rint(c)).collect();
            if self.contains(&xq) {
                out.push(cur.clone());
            }
            let mut i = d;
            loop {
                if i == 0 {
                    break 'scan;
                }
                i -= 1;
                if cur[i] < bb[i].1 {
                    cur[i] += 1;
                    for j in i + 1..d {
                        cur[j] = bb[j].0;
                    }
                    break;
                }
            }
        }
        Ok(out)
    }

    /// s C (the body dilated, phi unchanged).
    pub fn dilate_body(&self, s: &Rat) -> ConvexProgression {
        debug_assert!(s.is_positive());
        ConvexProgression {
            ineqs: self.ineqs.iter().map(|(a, b)| (a.clone(), b * s)).collect(),
            phi: self.phi.clone(),
            symmetric: self.symmetric,
        }
    }

    /// Deduplicated phi-image of C cap Z^d plus collision count.
    pub fn values(&self, budget: u64) -> Result<(Vec<QVec>, u64)> {
        let pts = self.lattice_points(budget)?;
        let total = pts.len() as u64;
        let mut vals: Vec<QVec> = pts.iter().map(|z| self.apply_phi(z)).collect();
        vals.sort();
        vals.dedup();
        let n = vals.len() as u64;
        Ok((vals, total - n))
    }

    pub fn is_proper(&self, s: u32, budget: u64) -> Result<bool> {
        let dil = self.dilate_body(&rint(s as i64));
        let (_, collisions) = dil.values(budget)?;
        Ok(collisions == 0)
    }

    /// n-full: some lattice fibre of length >= n in every coordinate direction.
    pub fn is_full(&self, n: u32, budget: u64) -> Result<bool> {
        let d = self.d();
        if d == 0 {
            return Ok(true);
        }
        let pts = self.lattice_points(budget)?;
        for dir in 0..d {
            let mut best: u32 = 0;
            // Count per fiber by sorting on the complement key.
            let mut keyed: Vec<ZVec> = pts
                .iter()
                .map(|p| {
                    let mut key: ZVec =
                        p.iter().enumerate().filter(|(i, _)| *i != dir).map(|(_, &c)| c).collect();
                    key.push(p[dir]);
                    key
                })
                .collect();
            keyed.sort();
            let mut run: u32 = 0;
            let mut prev: Option<&[i64]> = None;
            for kv in &keyed {
                let stem = &kv[..kv.len() - 1];
                if prev == Some(stem) {
                    run += 1;
                } else {
                    run = 1;
                    prev = Some(stem);
                }
                if run > best {
                    best = run;
                }
            }
            if best < n {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn gauss_count(&self, n: u32, budget: u64) -> Result<u64> {
        Ok(self.dilate_body(&rint(n as i64)).lattice_points(budget)?.len() as u64)
    }

    /// Exact volume of the body for d <= 2 (interval length / polygon area
    /// by vertex enumeration); higher d not needed at desk scale.
    pub fn body_volume(&self) -> Result<Rat> {
        let d = self.d();
        let (a, b) = self.a_ub();
        match d {
            0 => Ok(Rat::one()),
            1 => {
                let (lo, hi) = lp::coordinate_bounds(&a, &b, 1, 0)?;
                Ok(hi - lo)
            }
            2 => {
                let verts = lp::enumerate_vertices(&a, &b, 2);
                if verts.is_empty() {
                    return Err(Error::Infeasible("empty body"));
                }
                Ok(polygon_area(&verts))
            }
            _ => Err(Error::Precondition("volume only for d <= 2".into())),
        }
    }

    /// C = -C, decided by one LP per inequality: max_{x in C} (-a . x) <= b
    /// certifies C subset of -C, which forces equality.
    pub fn verify_symmetric(&self) -> Result<bool> {
        let d = self.d();
        let (a_ub, b_ub) = self.a_ub();
        for (a, b) in &self.ineqs {
            let outcome = lp::solve(&Lp {
                n: d,
                objective: crate::rat::qneg(a),
                a_ub: a_ub.clone(),
                b_ub: b_ub.clone(),
                a_eq: Vec::new(),
                b_eq: Vec::new(),
            });
            match outcome {
                LpOutcome::Optimal { value, .. } => {
                    if value > *b {
                        return Ok(false);
                    }
                }
                LpOutcome::Infeasible => return Err(Error::Infeasible("empty body")),
                LpOutcome::Unbounded => return Err(Error::Unbounded),
            }
        }
        Ok(true)
    }

    /// Symmetric box body [-r_i, r_i]^d with the given phi.
    pub fn symmetric_box(radii: &[Rat], phi: Vec<QVec>) -> ConvexProgression {
        let d = radii.len();
        let mut ineqs = Vec::with_capacity(2 * d);
        for i in 0..d {
            let mut row = qzero(d);
            row[i] = Rat::one();
            ineqs.push((row.clone(), radii[i].clone()));
            let mut row2 = qzero(d);
            row2[i] = -Rat::one();
            ineqs.push((row2, radii[i].clone()));
        }
        ConvexProgression { ineqs, phi, symmetric: true }
    }
}

/// Shoelace area of a convex polygon given as an unordered vertex list.
fn polygon_area(verts: &[QVec]) -> Rat {
    if verts.len() < 3 {
        return rzero();
    }
    // Order around the centroid by half-plane sweep: sort by (sign of y,
    // then cross product (atan2-free exact comparator).
    let n = rint(verts.len() as i64);
    let cx: Rat = verts.iter().map(|v| v[0].clone()).sum::<Rat>() / &n;
    let cy: Rat = verts.iter().map(|v| v[1].clone()).sum::<Rat>() / &n;
    let mut pts: Vec<(Rat, Rat)> = verts.iter().map(|v| (&v[0] - &cx, &v[1] - &cy)).collect();
    let half = |p: &(Rat, Rat)| -> u8 {
        if p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()) {
            0
        } else {
            1
        }
    };
    pts.sort_by(|p, q| {
        half(p).cmp(&half(q)).then_with(|| {
            // Counterclockwise within a half-plane: p before q iff p x q > 0.
            let cross = &p.0 * &q.1 - &p.1 * &q.0;
            if cross.is_positive() {
                core::cmp::Ordering::Less
            } else if cross.is_negative() {
                core::cmp::Ordering::Greater
            } else {
                core::cmp::Ordering::Equal
            }
        })
    });
    let mut area = rzero();
    for i in 0..pts.len() {
        let p = &pts[i];
        let q = &pts[(i + 1) % pts.len()];
        area += &p.0 * &q.1 - &p.1 * &q.0;
    }
    crate::rat::rabs(&area) / rint(2)
}

/// Centrally-positioned zonotope: center + sum t_i g_i with t_i in [-1, 1].
/// A parallelotope is the special case of k independent generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zonotope {
    pub center: QVec,
    pub gens: Vec<QVec>,
}

impl Zonotope {
    pub fn new(center: QVec, gens: Vec<QVec>) -> Result<Self> {
        let k = center.len();
        for g in &gens {
            if g.len() != k {
                return Err(Error::DimensionMismatch { left: k, right: g.len() });
            }
        }
        Ok(Zonotope { center, gens })
    }

    /// [-r, r] in R^1.
    pub fn segment(r: Rat) -> Zonotope {
        Zonotope { center: vec![rzero()], gens: vec![vec![r]] }
    }

    pub fn k(&self) -> usize {
        self.center.len()
    }

    pub fn is_centered(&self) -> bool {
        self.center.iter().all(|c| c.is_zero())
    }

    /// Membership via exact LP feasibility on the generator coefficients.
    pub fn contains(&self, x: &QVec) -> bool {
        let g = self.gens.len();
        let k = self.k();
        if g == 0 {
            return *x == self.center;
        }
        let mut a_eq: Vec<QVec> = Vec::with_capacity(k);
        let mut b_eq: Vec<Rat> = Vec::with_capacity(k);
        for c in 0..k {
            a_eq.push(self.gens.iter().map(|gv| gv[c].clone()).collect());
            b_eq.push(&x[c] - &self.center[c]);
        }
        let mut a_ub: Vec<QVec> = Vec::with_capacity(2 * g);
        let mut b_ub: Vec<Rat> = Vec::with_capacity(2 * g);
        for i in 0..g {
            let mut row = qzero(g);
            row[i] = Rat::one();
            a_ub.push(row.clone());
            b_ub.push(Rat::one());
            let mut row2 = qzero(g);
            row2[i] = -Rat::one();
            a_ub.push(row2);
            b_ub.push(Rat::one());
        }
        lp::feasible(&Lp { n: g, objective: qzero(g), a_ub, b_ub, a_eq, b_eq })
    }

    /// x in f * self for a positive rational factor f.
    pub fn contains_dilated(&self, x: &QVec, f: &Rat) -> bool {
        debug_assert!(f.is_positive());
        let scaled: QVec = x.iter().map(|c| c / f).collect();
        self.contains(&scaled)
    }

    pub fn dilate(&self, f: &Rat) -> Zonotope {
        Zonotope {
            center: qscale(f, &self.center),
            gens: self.gens.iter().map(|g| qscale(f, g)).collect(),
        }
    }

    /// Minkowski-add the segment [-m, m] v.
    pub fn add_segment(&self, v: &QVec, m: &Rat) -> Zonotope {
        let mut gens = self.gens.clone();
        gens.push(qscale(m, v));
        Zonotope { center: self.center.clone(), gens }
    }

    pub fn translate(&self, t: &QVec) -> Zonotope {
        Zonotope { center: qadd(&self.center, t), gens: self.gens.clone() }
    }

    /// Exact volume: 2^k sum over k-subsets of |det|.
    pub fn volume(&self) -> Rat {
        let k = self.k();
        if k == 0 {
            return Rat::one();
        }
        let g = self.gens.len();
        if g < k {
            return rzero();
        }
        let mut total = rzero();
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let mat: Vec<QVec> = subset.iter().map(|&i| self.gens[i].clone()).collect();
            total += crate::rat::rabs(&linalg::det(&mat));
            let mut i = k;
            loop {
                if i == 0 {
                    let mut vol = total;
                    for _ in 0..k {
                        vol *= rint(2);
                    }
                    return vol;
                }
                i -= 1;
                if subset[i] != i + g - k {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// All sign-pattern corners (a superset of the vertex set).
    pub fn corners(&self) -> Vec<QVec> {
        let mut out = vec![self.center.clone()];
        for g in &self.gens {
            let mut next = Vec::with_capacity(out.len() * 2);
            for c in out {
                next.push(qadd(&c, g));
                next.push(qsub(&c, g));
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// max over the body of u . x (support function + center offset).
    pub fn support(&self, u: &QVec) -> Rat {
        let mut s = qdot(u, &self.center);
        for g in &self.gens {
            s += crate::rat::rabs(&qdot(u, g));
        }
        s
    }
}

/// The separated lift: decompose each point of `pts` as p + q with
/// p = base + sum lambda_i a_i in P and q in Q, and return (lambda, q).
/// Requires P 2-proper and 4Q-separated, Q centered; under those checks the
/// decomposition is unique and the map is a Freiman 2-isomorphism.
pub fn lift(p: &Gap, q: &Zonotope, pts: &[QVec], budget: u64) -> Result<Vec<(ZVec, QVec)>> {
    if !q.is_centered() {
        return Err(Error::NotSymmetric);
    }
    if p.k() != q.k() {
        return Err(Error::DimensionMismatch { left: p.k(), right: q.k() });
    }
    if !p.is_proper(2, budget)? {
        return Err(Error::NotProper("GAP is not 2-proper".into()));
    }
    let value_map = p.value_index_map(budget)?;
    for (i, (v, _)) in value_map.iter().enumerate() {
        for (w, _) in &value_map[i + 1..] {
            if q.contains_dilated(&qsub(v, w), &rint(4)) {
                return Err(Error::NotSeparated(format!(
                    "difference {:?} - {:?} lies in 4Q",
                    v, w
                )));
            }
        }
    }
    let mut out = Vec::with_capacity(pts.len());
    for x in pts {
        let mut found: Option<(ZVec, QVec)> = None;
        for (v, lambda) in &value_map {
            let qpart = qsub(x, v);
            if q.contains(&qpart) {
                if found.is_some() {
                    // Unreachable given the separation check; fail loudly
                    // rather than return an arbitrary branch.
                    return Err(Error::NotSeparated(
                        "ambiguous decomposition despite separation".into(),
                    ));
                }
                found = Some((lambda.clone(), qpart));
            }
        }
        match found {
            Some(pair) => out.push(pair),
            None => {
                return Err(Error::NotInPPlusQ(format!("point {:?} has no decomposition", x)))
            }
        }
    }
    Ok(out)
}
