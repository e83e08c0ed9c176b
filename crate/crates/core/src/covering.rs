//! Minimal-cover functionals over Z (GAP covers by branch-and-bound with an
//! exhaustive oracle) and the 1-D / fibered hull functionals.

use crate::error::{Error, Result};
use crate::fibered::FiberedSet;
use crate::interval::IntervalUnion;
use crate::lattice::LatticeSet;
use crate::lp;
use crate::progression::{ConvexProgression, Gap};
use crate::rat::{rint, rzero, QVec, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{ToPrimitive, Zero};

// ---------------------------------------------------------------------------
// 1-D continuous co_t

/// Minimal-measure union of at most t intervals covering A: delete the t-1
/// largest gaps of co(A) \ A (ties: leftmost gap first).
pub fn co_t_1d(a: &IntervalUnion, t: u32) -> Result<IntervalUnion> {
    if a.is_empty() {
        return Err(Error::Empty("cover input"));
    }
    if t == 0 {
        return Err(Error::Precondition("translate count must be positive".into()));
    }
    let (lo, hi) = a.hull()?;
    let gaps = a.gaps();
    let mut order: Vec<usize> = (0..gaps.len()).collect();
    order.sort_by(|&i, &j| {
        let li = &gaps[i].1 - &gaps[i].0;
        let lj = &gaps[j].1 - &gaps[j].0;
        lj.cmp(&li).then_with(|| gaps[i].0.cmp(&gaps[j].0))
    });
    let keep = (t as usize - 1).min(gaps.len());
    let mut removed: Vec<(Rat, Rat)> = order[..keep].iter().map(|&i| gaps[i].clone()).collect();
    removed.sort();
    // Stitch the hull back together around the removed gaps.
    let mut parts = Vec::with_capacity(removed.len() + 1);
    let mut cur = lo;
    for (glo, ghi) in removed {
        parts.push((cur, glo));
        cur = ghi;
    }
    parts.push((cur, hi));
    IntervalUnion::new(parts)
}

// ---------------------------------------------------------------------------
// GAP covers over Z

#[derive(Debug, Clone)]
pub struct CoverResult {
    pub x: Vec<i64>,
    pub p: Gap,
    /// Cardinality of X + P.
    pub size: u64,
    pub optimal: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone)]
pub enum CoverOutcome {
    Found(CoverResult),
    Infeasible,
}

/// One canonical candidate progression: value set translated to min 0.
struct Candidate {
    steps: Vec<i64>,
    lengths: Vec<u32>,
    /// Sorted distinct values, starting at 0.
    values: Vec<i64>,
}

impl Candidate {
    /// Proper canonical GAP candidates with up to d steps: steps strictly
    /// increasing in [1, diam], lengths >= 2 with product <= len_cap,
    /// improper parameter choices dropped. The d' = 0 singleton {0} is
    /// always included. Errors out once the candidate list passes `max`.
    fn enumerate(d: u32, diam: i64, len_cap: u64, max: u64) -> Result<Vec<Candidate>> {
        let mut out = vec![Candidate { steps: vec![], lengths: vec![], values: vec![0] }];
        if diam < 1 {
            return Ok(out);
        }
        if d >= 1 {
            for a in 1..=diam {
                for l in 2..=len_cap.max(1) as i64 {
                    // AP {0, a, ..., (l-1)a}: always proper.
                    out.push(Candidate {
                        steps: vec![a],
                        lengths: vec![l as u32],
                        values: (0..l).map(|i| i * a).collect(),
                    });
                }
            }
        }
        if d >= 2 {
            for a1 in 1..=diam {
                for a2 in a1 + 1..=diam {
                    let mut l1 = 2u64;
                    while l1 * 2 <= len_cap {
                        let mut l2 = 2u64;
                        while l1 * l2 <= len_cap {
                            if let Some(values) = proper_values_2d(a1, a2, l1 as i64, l2 as i64) {
                                out.push(Candidate {
                                    steps: vec![a1, a2],
                                    lengths: vec![l1 as u32, l2 as u32],
                                    values,
                                });
                            }
                            l2 += 1;
                        }
                        l1 += 1;
                    }
                    if out.len() as u64 > max {
                        return Err(Error::BudgetExceeded { needed: out.len() as u64, budget: max });
                    }
                }
            }
        }
        if out.len() as u64 > max {
            return Err(Error::BudgetExceeded { needed: out.len() as u64, budget: max });
        }
        Ok(out)
    }

    fn gap(&self) -> Gap {
        let base = -self.steps.iter().sum::<i64>();
        Gap::line(base, &self.steps, &self.lengths).unwrap()
    }
}

/// Value set of the 2-GAP with the given steps/lengths, translated to min 0;
/// None if improper (a collision exists).
fn proper_values_2d(a1: i64, a2: i64, l1: i64, l2: i64) -> Option<Vec<i64>> {
    let mut values = Vec::with_capacity((l1 * l2) as usize);
    for i in 0..l1 {
        for j in 0..l2 {
            values.push(i * a1 + j * a2);
        }
    }
    values.sort_unstable();
    let before = values.len();
    values.dedup();
    if values.len() != before {
        return None;
    }
    Some(values)
}

fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

/// dst |= src << shift (bit shift across the word array).
fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (q, r) = (shift / 64, shift % 64);
    for i in 0..src.len() {
        let w = src[i];
        if w == 0 {
            continue;
        }
        if i + q < dst.len() {
            dst[i + q] |= w << r;
        }
        if r != 0 && i + q + 1 < dst.len() {
            dst[i + q + 1] |= w >> (64 - r);
        }
    }
}

fn missing_count(a: &[u64], union: &[u64]) -> u64 {
    a.iter().zip(union).map(|(aw, uw)| (aw & !uw).count_ones() as u64).sum()
}

fn first_missing(a: &[u64], union: &[u64]) -> Option<usize> {
    for (i, (aw, uw)) in a.iter().zip(union).enumerate() {
        let m = aw & !uw;
        if m != 0 {
            return Some(i * 64 + m.trailing_zeros() as usize);
        }
    }
    None
}

struct SearchBest {
    size: u64,
    x: Vec<i64>,
    candidate_index: usize,
}

/// Depth-first cover search over translates of one value set, branching on
/// the least uncovered element (complete for minimal covers: some translate
/// of the final cover must contain it). Scratch union bitmaps are kept per
/// depth so the hot path never allocates.
struct Search<'a> {
    a_sorted: &'a [i64],
    t: u32,
    /// Strict size bound: only covers with size < bound are recorded.
    bound: u64,
    /// When false, only feasibility pruning is applied (exhaustive oracle).
    prune_by_size: bool,
    /// Unwind as soon as any cover is recorded (feasibility queries).
    stop_on_found: bool,
    nodes: u64,
    budget: u64,
    best: Option<SearchBest>,
    exhausted: bool,
    satisfied: bool,
    // Per-candidate window state.
    window_lo: i64,
    vwords: Vec<u64>,
    awords: Vec<u64>,
    unions: Vec<Vec<u64>>,
    xs: Vec<i64>,
}

impl<'a> Search<'a> {
    fn new(a_sorted: &'a [i64], t: u32, bound: u64, prune_by_size: bool, budget: u64) -> Self {
        Search {
            a_sorted,
            t,
            bound,
            prune_by_size,
            stop_on_found: false,
            nodes: 0,
            budget,
            best: None,
            exhausted: false,
            satisfied: false,
            window_lo: 0,
            vwords: vec![],
            awords: vec![],
            unions: vec![],
            xs: vec![],
        }
    }

    fn run_candidate(&mut self, ci: usize, values: &[i64]) {
        let min_a = self.a_sorted[0];
        let max_a = self.a_sorted[self.a_sorted.len() - 1];
        let max_v = *values.last().unwrap();
        self.window_lo = min_a - max_v;
        let window_len = (max_a + max_v - self.window_lo + 1) as usize;
        let words = (window_len + 63) / 64;
        self.vwords.clear();
        self.vwords.resize(words, 0);
        for &v in values {
            self.vwords[v as usize / 64] |= 1 << (v as usize % 64);
        }
        self.awords.clear();
        self.awords.resize(words, 0);
        for &a in self.a_sorted {
            let i = (a - self.window_lo) as usize;
            self.awords[i / 64] |= 1 << (i % 64);
        }
        self.unions.clear();
        self.unions.resize(self.t as usize + 1, vec![0; words]);
        self.xs.clear();
        self.dfs(ci, values, 0);
    }

    fn dfs(&mut self, ci: usize, values: &[i64], depth: u32) {
        if self.exhausted || self.satisfied {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let union = &self.unions[depth as usize];
        let missing = missing_count(&self.awords, union);
        if missing == 0 {
            let size = popcount(union);
            if size < self.bound {
                self.bound = size;
                self.best = Some(SearchBest { size, x: self.xs.clone(), candidate_index: ci });
                if self.stop_on_found {
                    self.satisfied = true;
                }
            }
            return;
        }
        let remaining = self.t - depth;
        if remaining == 0 {
            return;
        }
        // Feasibility: each further translate covers at most #V new elements.
        if missing > remaining as u64 * values.len() as u64 {
            return;
        }
        // Optimality: every uncovered element of A must still join the union.
        if self.prune_by_size && popcount(union) + missing >= self.bound {
            return;
        }
        let first = self.window_lo + first_missing(&self.awords, union).unwrap() as i64;
        // Largest offset first, so the translate list grows in ascending
        // order and the first minimal cover found is lexicographically least.
        for idx in (0..values.len()).rev() {
            let x = first - values[idx];
            let shift = (x - self.window_lo) as usize;
            let (head, tail) = self.unions.split_at_mut(depth as usize + 1);
            tail[0].copy_from_slice(&head[depth as usize]);
            or_shifted(&mut tail[0], &self.vwords, shift);
            self.xs.push(x);
            self.dfs(ci, values, depth + 1);
            self.xs.pop();
            if self.exhausted || self.satisfied {
                return;
            }
        }
    }
}

fn one_d_values(a: &LatticeSet) -> Result<Vec<i64>> {
    if a.is_empty() {
        return Err(Error::Empty("cover input"));
    }
    a.values()
}

fn trivial_cover(vals: &[i64], t: u32) -> Option<CoverOutcome> {
    if vals.len() as u64 <= t as u64 {
        return Some(CoverOutcome::Found(CoverResult {
            x: vals.to_vec(),
            p: Gap::line(0, &[], &[]).unwrap(),
            size: vals.len() as u64,
            optimal: true,
            nodes: 0,
        }));
    }
    None
}

/// Minimum-cardinality cover of A by at most t translates of one proper
/// d'-GAP (d' <= d), by branch-and-bound over the canonical candidate space
/// (steps in [1, diam], length product <= #discrete-hull). On budget
/// exhaustion the best cover found so far is returned with optimal = false.
pub fn gap_cover(a: &LatticeSet, d: u32, t: u32, budget: u64) -> Result<CoverOutcome> {
    let vals = one_d_values(a)?;
    if t == 0 {
        return Err(Error::Precondition("translate count must be positive".into()));
    }
    if d == 0 {
        // X + {0}: exactly the sets X containing A, so #A translates needed.
        return Ok(trivial_cover(&vals, t).unwrap_or(CoverOutcome::Infeasible));
    }
    let diam = vals[vals.len() - 1] - vals[0];
    let len_cap = a.discrete_hull(1 << 40)?.card() as u64;
    let candidates = Candidate::enumerate(d, diam, len_cap, budget)?;
    let mut search = Search::new(&vals, t, len_cap + 1, true, budget);
    for (ci, cand) in candidates.iter().enumerate() {
        if search.bound == vals.len() as u64 {
            break; // no cover can be smaller than #A
        }
        if (cand.values.len() as u64) * (t as u64) < vals.len() as u64 {
            continue;
        }
        search.run_candidate(ci, &cand.values);
        if search.exhausted {
            break;
        }
    }
    let nodes = search.nodes;
    let exhausted = search.exhausted;
    match search.best {
        Some(best) => {
            let cand = &candidates[best.candidate_index];
            debug_assert!(verify_cover(&vals, &best.x, &cand.values));
            Ok(CoverOutcome::Found(CoverResult {
                x: best.x,
                p: cand.gap(),
                size: best.size,
                optimal: !exhausted,
                nodes,
            }))
        }
        None => {
            // d >= 1 always admits the discrete-hull AP cover, so an empty
            // best means the budget died before reaching it.
            Err(Error::BudgetExceeded { needed: nodes, budget })
        }
    }
}

/// Fully exhaustive oracle over the same candidate space: only feasibility
/// pruning, no best-size pruning, so every irredundant cover is visited.
pub fn gap_cover_exhaustive(a: &LatticeSet, d: u32, t: u32, budget: u64) -> Result<CoverOutcome> {
    let vals = one_d_values(a)?;
    if t == 0 {
        return Err(Error::Precondition("translate count must be positive".into()));
    }
    if d == 0 {
        return Ok(trivial_cover(&vals, t).unwrap_or(CoverOutcome::Infeasible));
    }
    let diam = vals[vals.len() - 1] - vals[0];
    let len_cap = a.discrete_hull(1 << 40)?.card() as u64;
    let candidates = Candidate::enumerate(d, diam, len_cap, budget)?;
    let mut search = Search::new(&vals, t, u64::MAX, false, budget);
    for (ci, cand) in candidates.iter().enumerate() {
        if (cand.values.len() as u64) * (t as u64) < vals.len() as u64 {
            continue;
        }
        search.run_candidate(ci, &cand.values);
        if search.exhausted {
            return Err(Error::BudgetExceeded { needed: search.nodes, budget });
        }
    }
    match search.best {
        Some(best) => {
            let cand = &candidates[best.candidate_index];
            Ok(CoverOutcome::Found(CoverResult {
                x: best.x,
                p: cand.gap(),
                size: best.size,
                optimal: true,
                nodes: search.nodes,
            }))
        }
        None => Ok(CoverOutcome::Infeasible),
    }
}

fn verify_cover(a: &[i64], xs: &[i64], values: &[i64]) -> bool {
    a.iter().all(|&p| xs.iter().any(|&x| values.binary_search(&(p - x)).is_ok()))
}

/// (d, t)-non-degeneracy: the minimal (d-1)-dimensional cover either does
/// not exist or has size >= t * #A (equality counts).
pub fn nondeg_check(a: &LatticeSet, d: u32, t: u32, budget: u64) -> Result<bool> {
    if d == 0 {
        return Err(Error::Precondition("non-degeneracy needs d >= 1".into()));
    }
    match gap_cover(a, d - 1, t, budget)? {
        CoverOutcome::Infeasible => Ok(true),
        CoverOutcome::Found(r) => {
            let threshold = t as u64 * a.card() as u64;
            if r.size < threshold {
                // An upper bound below the threshold already decides.
                return Ok(false);
            }
            if !r.optimal {
                return Err(Error::Undecided("cover search hit its budget"));
            }
            Ok(r.size >= threshold)
        }
    }
}

/// Smallest t <= t_max such that A is covered by t translates of one proper
/// d'-GAP (d' <= d) of cardinality at most p_cap; exhaustive feasibility
/// search per t.
pub fn min_translates(
    a: &LatticeSet,
    d: u32,
    p_cap: u64,
    t_max: u32,
    budget: u64,
) -> Result<Option<u32>> {
    let vals = one_d_values(a)?;
    let diam = vals[vals.len() - 1] - vals[0];
    let candidates = Candidate::enumerate(d, diam, p_cap, budget)?;
    for t in 1..=t_max {
        let mut search = Search::new(&vals, t, u64::MAX, false, budget);
        search.stop_on_found = true;
        for (ci, cand) in candidates.iter().enumerate() {
            if (cand.values.len() as u64) * (t as u64) < vals.len() as u64 {
                continue;
            }
            search.run_candidate(ci, &cand.values);
            if search.exhausted {
                return Err(Error::BudgetExceeded { needed: search.nodes, budget });
            }
            if search.satisfied {
                return Ok(Some(t));
            }
        }
    }
    Ok(None)
}

/// co/sco/gap chain sizes over Z. The gap value is the B&B optimum; sco
/// additionally searches centrally symmetric convex 2-progression bodies
/// (diamonds), co additionally searches asymmetric ones (triangles). The
/// three search spaces are nested in exactly the definitional order
/// boxes <= symmetric bodies <= arbitrary bodies.
pub fn cover_chain(a: &LatticeSet, d: u32, t: u32, budget: u64) -> Result<(u64, u64, u64)> {
    let gap = match gap_cover(a, d, t, budget)? {
        CoverOutcome::Found(r) if r.optimal => r.size,
        CoverOutcome::Found(_) => return Err(Error::Undecided("cover search hit its budget")),
        CoverOutcome::Infeasible => {
            return Err(Error::Infeasible("no GAP cover in the search space"))
        }
    };
    let vals = one_d_values(a)?;
    let sco = gap.min(family_best(&vals, t, d, true, budget)?.unwrap_or(u64::MAX));
    let co = sco.min(family_best(&vals, t, d, false, budget)?.unwrap_or(u64::MAX));
    Ok((co, sco, gap))
}

/// Best cover size over a small fixed family of convex 2-progression bodies
/// (None when the family is empty, i.e. d < 2). Symmetric bodies are
/// diamonds |x|/r1 + |y|/r2 <= 1; asymmetric ones the triangles
/// conv{0, r1 e1, r2 e2}. Linear maps run over small integer pairs.
fn family_best(
    vals: &[i64],
    t: u32,
    d: u32,
    symmetric_only: bool,
    budget: u64,
) -> Result<Option<u64>> {
    if d < 2 {
        return Ok(None);
    }
    let diam = vals[vals.len() - 1] - vals[0];
    let g_cap = diam.min(8);
    let mut best: Option<u64> = None;
    for r1 in 1..=3i64 {
        for r2 in 1..=3i64 {
            for g1 in 1..=g_cap {
                for g2 in -g_cap..=g_cap {
                    let phi = vec![vec![rint(g1), rint(g2)]];
                    let body = if symmetric_only {
                        diamond_body(r1, r2, phi)
                    } else {
                        triangle_body(r1, r2, phi)
                    };
                    let (values_q, _) = body.values(4096)?;
                    let mut values: Vec<i64> = values_q
                        .iter()
                        .filter_map(|v| {
                            if v[0].is_integer() {
                                v[0].to_integer().to_i64()
                            } else {
                                None
                            }
                        })
                        .collect();
                    if values.len() != values_q.len() || values.len() < 2 {
                        continue;
                    }
                    values.sort_unstable();
                    values.dedup();
                    let min = values[0];
                    for v in values.iter_mut() {
                        *v -= min;
                    }
                    if (values.len() as u64) * (t as u64) < vals.len() as u64 {
                        continue;
                    }
                    let mut search = Search::new(vals, t, best.unwrap_or(u64::MAX), true, budget);
                    search.run_candidate(0, &values);
                    if search.exhausted {
                        return Err(Error::BudgetExceeded { needed: search.nodes, budget });
                    }
                    if let Some(b) = search.best {
                        best = Some(b.size);
                    }
                }
            }
        }
    }
    Ok(best)
}

fn diamond_body(r1: i64, r2: i64, phi: Vec<QVec>) -> ConvexProgression {
    // |x|/r1 + |y|/r2 <= 1 as four inequalities r2 (+-x) + r1 (+-y) <= r1 r2.
    let rhs = rint(r1 * r2);
    let ineqs = vec![
        (vec![rint(r2), rint(r1)], rhs.clone()),
        (vec![rint(r2), rint(-r1)], rhs.clone()),
        (vec![rint(-r2), rint(r1)], rhs.clone()),
        (vec![rint(-r2), rint(-r1)], rhs),
    ];
    ConvexProgression { ineqs, phi, symmetric: true }
}

fn triangle_body(r1: i64, r2: i64, phi: Vec<QVec>) -> ConvexProgression {
    // conv{(0,0), (r1,0), (0,r2)}: x >= 0, y >= 0, x/r1 + y/r2 <= 1.
    let ineqs = vec![
        (vec![rint(-1), rzero()], rzero()),
        (vec![rzero(), rint(-1)], rzero()),
        (vec![rint(r2), rint(r1)], rint(r1 * r2)),
    ];
    ConvexProgression { ineqs, phi, symmetric: false }
}

// ---------------------------------------------------------------------------
// co^{1,1}: per-fiber convex hull of a fibered set

/// Lower convex envelope of points sorted by strictly increasing x.
fn lower_chain(pts: &[(Rat, Rat)]) -> Vec<(Rat, Rat)> {
    let mut chain: Vec<(Rat, Rat)> = Vec::with_capacity(pts.len());
    for p in pts {
        while chain.len() >= 2 {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            let cross = (&b.0 - &a.0) * (&p.1 - &a.1) - (&b.1 - &a.1) * (&p.0 - &a.0);
            if cross <= Rat::zero() {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(p.clone());
    }
    chain
}

fn eval_chain(chain: &[(Rat, Rat)], x: &Rat) -> Rat {
    if chain.len() == 1 {
        return chain[0].1.clone();
    }
    for w in chain.windows(2) {
        let (x1, y1) = &w[0];
        let (x2, y2) = &w[1];
        if x1 <= x && x <= x2 {
            return y1 + (y2 - y1) * (x - x1) / (x2 - x1);
        }
    }
    unreachable!("evaluation point outside the chain span")
}

/// Per-integer-fiber convex hull: intersect the 2-D hull of the fibered set
/// with each fiber line. Returns the hull and the excess |hull| - |B|.
pub fn co11(b: &FiberedSet) -> Result<(FiberedSet, Rat)> {
    let idxs = b.indices();
    if idxs.len() == 1 {
        let fiber = b.fiber(idxs[0]).unwrap();
        let (lo, hi) = fiber.hull()?;
        let hull_fiber = IntervalUnion::interval(lo, hi)?;
        let excess = hull_fiber.measure() - fiber.measure();
        let mut m = alloc::collections::BTreeMap::new();
        m.insert(idxs[0], hull_fiber);
        return Ok((FiberedSet::new(m)?, excess));
    }
    let mut lo_pts = Vec::with_capacity(idxs.len());
    let mut hi_pts = Vec::with_capacity(idxs.len());
    for &i in &idxs {
        let f = b.fiber(i).unwrap();
        lo_pts.push((rint(i), f.min().unwrap().clone()));
        hi_pts.push((rint(i), -f.max().unwrap().clone()));
    }
    let lower = lower_chain(&lo_pts);
    let upper = lower_chain(&hi_pts); // lower chain of -y is the upper chain
    let mut fibers = alloc::collections::BTreeMap::new();
    for i in idxs[0]..=idxs[idxs.len() - 1] {
        let x = rint(i);
        let lo = eval_chain(&lower, &x);
        let hi = -eval_chain(&upper, &x);
        fibers.insert(i, IntervalUnion::interval(lo, hi)?);
    }
    let hull = FiberedSet::new(fibers)?;
    let excess = hull.measure() - b.measure();
    Ok((hull, excess))
}

// ---------------------------------------------------------------------------
// ap_t: minimal AP-of-intervals cover of a fibered set

#[derive(Debug, Clone)]
pub struct ApCover {
    pub base: Rat,
    pub v: Rat,
    pub l0: Rat,
    pub delta: Rat,
    pub t: u32,
    pub total: Rat,
}

impl ApCover {
    pub fn slot(&self, i: u32) -> (Rat, Rat) {
        let start = &self.base + rint(i as i64) * &self.v;
        let len = &self.l0 + rint(i as i64) * &self.delta;
        let end = &start + &len;
        (start, end)
    }
}

/// Minimal-total-length cover of B by t intervals with starts and lengths in
/// arithmetic progression (fibers assigned to slots in index order, interiors
/// pairwise disjoint), via exact vertex enumeration of the 4-variable LP.
pub fn ap_cover(b: &FiberedSet, t: u32) -> Result<ApCover> {
    let idxs = b.indices();
    let f = idxs.len() as u32;
    if t < f {
        return Err(Error::Precondition("need at least one slot per fiber".into()));
    }
    let spans: Vec<(Rat, Rat)> = idxs
        .iter()
        .map(|&i| {
            let fiber = b.fiber(i).unwrap();
            (fiber.min().unwrap().clone(), fiber.max().unwrap().clone())
        })
        .collect();
    if t == 1 {
        // Single slot: v and delta are unconstrained; fix them to 0.
        let (lo, hi) = &spans[0];
        return Ok(ApCover {
            base: lo.clone(),
            v: rzero(),
            l0: hi - lo,
            delta: rzero(),
            t,
            total: hi - lo,
        });
    }
    // Variables (base, v, l0, delta).
    let mut a_ub: Vec<QVec> = Vec::new();
    let mut b_ub: Vec<Rat> = Vec::new();
    for (j, (lo, hi)) in spans.iter().enumerate() {
        let jr = rint(j as i64);
        a_ub.push(vec![rint(1), jr.clone(), rzero(), rzero()]);
        b_ub.push(lo.clone());
        a_ub.push(vec![rint(-1), -jr.clone(), rint(-1), -jr.clone()]);
        b_ub.push(-hi);
    }
    for i in 0..t {
        let ir = rint(i as i64);
        a_ub.push(vec![rzero(), rzero(), rint(-1), -ir]);
        b_ub.push(rzero());
    }
    for i in 0..t - 1 {
        let ir = rint(i as i64);
        a_ub.push(vec![rzero(), rint(-1), rint(1), ir]);
        b_ub.push(rzero());
    }
    let verts = lp::enumerate_vertices(&a_ub, &b_ub, 4);
    if verts.is_empty() {
        return Err(Error::Infeasible("slot disjointness unachievable"));
    }
    let obj = |x: &QVec| -> Rat {
        rint(t as i64) * &x[2] + rint((t as i64 * (t as i64 - 1)) / 2) * &x[3]
    };
    let mut best: Option<(Rat, QVec)> = None;
    for v in verts {
        let val = obj(&v);
        match &best {
            Some((bv, bx)) if (&val, &v) >= (bv, bx) => {}
            _ => best = Some((val, v)),
        }
    }
    let (total, x) = best.unwrap();
    Ok(ApCover {
        base: x[0].clone(),
        v: x[1].clone(),
        l0: x[2].clone(),
        delta: x[3].clone(),
        t,
        total,
    })
}

/// Slot containment check used by tests and the CLI report.
pub fn ap_cover_contains(cover: &ApCover, b: &FiberedSet) -> bool {
    let idxs = b.indices();
    idxs.iter().enumerate().all(|(j, &i)| {
        let (start, end) = cover.slot(j as u32);
        let fiber = b.fiber(i).unwrap();
        fiber.min().unwrap() >= &start && fiber.max().unwrap() <= &end
    })
}

// ---------------------------------------------------------------------------
// T-reference sets of a compressed fibered set

#[derive(Debug, Clone)]
pub struct TRefs {
    pub t1: Rat,
    pub t2: Rat,
    /// 4|B| - (|B_1| + |B_t|).
    pub t1_identity: Rat,
    /// 2|B| + (t - 1)(|B_1| + |B_t|).
    pub t2_identity: Rat,
    pub t1_contained: bool,
    pub t2_contained: bool,
}

/// T1 = union of B_i + B_i and B_i + B_{i+1}; T2 = union of B_1 + B_i and
/// B_i + B_t; both live inside B + B, with exact measure identities for
/// compressed B.
pub fn t_references(b: &FiberedSet) -> Result<TRefs> {
    let (start, lengths) = b.compressed_lengths()?;
    let t = lengths.len();
    let single = |i: i64| -> FiberedSet {
        let mut m = alloc::collections::BTreeMap::new();
        m.insert(i, b.fiber(i).unwrap().clone());
        FiberedSet::new(m).unwrap()
    };
    let push = |acc: &mut Option<FiberedSet>, s: FiberedSet| {
        *acc = Some(match acc.take() {
            None => s,
            Some(cur) => {
                let mut m = cur.fibers().clone();
                for (i, u) in s.fibers() {
                    m.entry(*i).and_modify(|w| *w = w.union(u)).or_insert_with(|| u.clone());
                }
                FiberedSet::new(m).unwrap()
            }
        });
    };
    let mut t1: Option<FiberedSet> = None;
    for pos in 0..t {
        let i = start + pos as i64;
        push(&mut t1, single(i).sumset(&single(i)));
        if pos + 1 < t {
            push(&mut t1, single(i).sumset(&single(i + 1)));
        }
    }
    let mut t2: Option<FiberedSet> = None;
    let first = start;
    let last = start + t as i64 - 1;
    for pos in 0..t {
        let i = start + pos as i64;
        push(&mut t2, single(first).sumset(&single(i)));
        push(&mut t2, single(i).sumset(&single(last)));
    }
    let t1 = t1.unwrap();
    let t2 = t2.unwrap();
    let bb = b.sumset(b);
    let total = b.measure();
    let ends = &lengths[0] + &lengths[t - 1];
    Ok(TRefs {
        t1: t1.measure(),
        t2: t2.measure(),
        t1_identity: rint(4) * &total - &ends,
        t2_identity: rint(2) * &total + rint(t as i64 - 1) * &ends,
        t1_contained: t1.subset_of(&bb),
        t2_contained: t2.subset_of(&bb),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn iu(parts: &[(i64, i64)]) -> IntervalUnion {
        IntervalUnion::new(parts.iter().map(|&(a, b)| (rint(a), rint(b))).collect()).unwrap()
    }

    fn found(o: CoverOutcome) -> CoverResult {
        match o {
            CoverOutcome::Found(r) => r,
            CoverOutcome::Infeasible => panic!("expected a cover"),
        }
    }

    #[test]
    fn co_t_removes_largest_gaps_leftmost_first() {
        // Two gaps of equal length 4: the left one goes.
        let a = iu(&[(0, 1), (5, 6), (10, 12)]);
        let c = co_t_1d(&a, 2).unwrap();
        assert_eq!(c.measure(), rint(8));
        assert_eq!(c.components(), &[(rint(0), rint(1)), (rint(5), rint(12))]);

        assert_eq!(co_t_1d(&a, 1).unwrap().measure(), rint(12));
        assert_eq!(co_t_1d(&a, 3).unwrap().measure(), rint(4));
        assert_eq!(co_t_1d(&a, 9).unwrap().measure(), rint(4));
    }

    #[test]
    fn gap_cover_two_runs() {
        let a = LatticeSet::from_values(&[0, 1, 2, 10, 11, 12]);
        // One AP must sweep the whole hull.
        assert_eq!(found(gap_cover(&a, 1, 1, 1 << 22).unwrap()).size, 13);
        // Two AP translates hit the runs exactly.
        let r = found(gap_cover(&a, 1, 2, 1 << 22).unwrap());
        assert_eq!(r.size, 6);
        assert!(r.optimal);
        assert_eq!(r.x, vec![0, 10]);
        // One 2-GAP reproduces A itself.
        let r2 = found(gap_cover(&a, 2, 1, 1 << 22).unwrap());
        assert_eq!(r2.size, 6);
        assert_eq!(r2.p.lengths, vec![3, 2]);
    }

    #[test]
    fn gap_cover_agrees_with_exhaustive_oracle() {
        let a = LatticeSet::from_values(&[0, 1, 2, 10, 11, 12]);
        for (d, t) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let bb = found(gap_cover(&a, d, t, 1 << 24).unwrap());
            let ex = found(gap_cover_exhaustive(&a, d, t, 1 << 24).unwrap());
            assert_eq!(bb.size, ex.size, "d={} t={}", d, t);
        }
    }

    #[test]
    fn gap_cover_dim_zero_is_point_cover() {
        let a = LatticeSet::from_values(&[0, 1, 2, 10, 11, 12]);
        assert!(matches!(gap_cover(&a, 0, 3, 1 << 20).unwrap(), CoverOutcome::Infeasible));
        let b = LatticeSet::from_values(&[1, 5, 9]);
        assert_eq!(found(gap_cover(&b, 0, 3, 1 << 20).unwrap()).size, 3);
        let s = LatticeSet::from_values(&[5]);
        assert_eq!(found(gap_cover(&s, 0, 1, 1 << 20).unwrap()).size, 1);
    }

    #[test]
    fn nondeg_boundary_counts_as_nondegenerate() {
        // Minimal 1-dim cover of {0..9} has size 10 = t * #A exactly.
        let a = LatticeSet::from_values(&(0..10).collect::<Vec<_>>());
        assert!(nondeg_check(&a, 2, 1, 1 << 22).unwrap());
        // {0..4} is a single AP of size 5 < 2 * 5.
        let b = LatticeSet::from_values(&(0..5).collect::<Vec<_>>());
        assert!(!nondeg_check(&b, 2, 2, 1 << 22).unwrap());
    }

    #[test]
    fn min_translates_scattered_needs_one_per_far_point() {
        let mut vals: Vec<i64> = (0..10).collect();
        vals.push(100);
        vals.push(200);
        let a = LatticeSet::from_values(&vals);
        let t = min_translates(&a, 2, a.card() as u64, 4, 1 << 26).unwrap();
        assert_eq!(t, Some(3));
    }

    #[test]
    fn cover_chain_is_ordered() {
        let a = LatticeSet::from_values(&[0, 1, 2, 10, 11, 12]);
        let (co, sco, gap) = cover_chain(&a, 2, 2, 1 << 24).unwrap();
        assert!(co <= sco && sco <= gap);
        assert_eq!(gap, 6);
        assert_eq!(co, 6); // can never go below #A
    }

    #[test]
    fn co11_fills_the_middle_fiber() {
        let b = FiberedSet::from_lengths(&[rint(2), rat(1, 2), rint(1)]).unwrap();
        let (hull, excess) = co11(&b).unwrap();
        assert_eq!(hull.fiber(2).unwrap().measure(), rat(3, 2));
        assert_eq!(hull.measure(), rat(9, 2));
        assert_eq!(excess, rint(1));
    }

    #[test]
    fn co11_single_fiber_is_interval_hull() {
        let mut m = alloc::collections::BTreeMap::new();
        m.insert(4, iu(&[(0, 1), (3, 5)]));
        let b = FiberedSet::new(m).unwrap();
        let (hull, excess) = co11(&b).unwrap();
        assert_eq!(hull.fiber(4).unwrap().measure(), rint(5));
        assert_eq!(excess, rint(2));
    }

    #[test]
    fn ap_cover_examples() {
        let mut m = alloc::collections::BTreeMap::new();
        m.insert(0, iu(&[(0, 1)]));
        m.insert(1, iu(&[(10, 12)]));
        m.insert(2, iu(&[(20, 23)]));
        let b = FiberedSet::new(m).unwrap();
        let c = ap_cover(&b, 3).unwrap();
        assert_eq!(c.total, rint(6));
        assert!(ap_cover_contains(&c, &b));

        let mut m2 = alloc::collections::BTreeMap::new();
        m2.insert(0, iu(&[(0, 1)]));
        m2.insert(
            1,
            IntervalUnion::interval(rint(10), rat(23, 2)).unwrap(),
        );
        let b2 = FiberedSet::new(m2).unwrap();
        let c2 = ap_cover(&b2, 2).unwrap();
        assert_eq!(c2.l0, rint(1));
        assert_eq!(c2.delta, rat(1, 2));
        assert_eq!(c2.total, rat(5, 2));
        assert!(ap_cover_contains(&c2, &b2));
    }

    #[test]
    fn ap_cover_single_slot() {
        let mut m = alloc::collections::BTreeMap::new();
        m.insert(7, iu(&[(2, 5)]));
        let b = FiberedSet::new(m).unwrap();
        let c = ap_cover(&b, 1).unwrap();
        assert_eq!(c.total, rint(3));
        assert_eq!(c.base, rint(2));
    }

    #[test]
    fn t_reference_measures_and_containment() {
        let b = FiberedSet::from_lengths(&[rint(2), rint(1), rint(1)]).unwrap();
        let r = t_references(&b).unwrap();
        assert_eq!(r.t1, rint(13));
        assert_eq!(r.t2, rint(14));
        assert_eq!(r.t1, r.t1_identity);
        assert_eq!(r.t2, r.t2_identity);
        assert!(r.t1_contained && r.t2_contained);

        let b2 = FiberedSet::from_lengths(&[rint(1), rint(1)]).unwrap();
        let r2 = t_references(&b2).unwrap();
        assert_eq!(r2.t1, rint(6));
        assert_eq!(r2.t2, rint(6));
    }
}
