//! The acceptance suite: ten seeded end-to-end checks, one JSON line each.
//! Randomized batches are driven by ChaCha so a seed pins the whole run.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use sumloc_core::bm::{cube_bm, freiman3k4, projection_sum, HybridSet};
use sumloc_core::construct::{merge_step, snap, MergeResult};
use sumloc_core::covering::{
    co11, gap_cover, gap_cover_exhaustive, min_translates, t_references, CoverOutcome,
};
use sumloc_core::extremal::{self, verify_example};
use sumloc_core::fibered::FiberedSet;
use sumloc_core::hull::doubling_lower;
use sumloc_core::interval::IntervalUnion;
use sumloc_core::lattice::LatticeSet;
use sumloc_core::progression::{lift, ConvexProgression, Gap, Zonotope};
use sumloc_core::rat::{qadd, qsub, qzero, rabs, rat, rint, QVec, Rat, ZVec};
use sumloc_core::set_value::SetValue;

use crate::report::{EXIT_ASSERTION, EXIT_OK};

#[derive(Serialize)]
struct SuiteHeader<'a> {
    command: &'a str,
    seed: u64,
}

#[derive(Serialize)]
struct CriterionLine<'a> {
    criterion: u32,
    name: &'a str,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct SuiteStatus {
    status: &'static str,
    passed: u32,
    failed: u32,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("suite lines are always serializable")
}

/// A criterion body: Ok(detail) on pass, Err(detail) on failure.
pub type Check = fn(u64) -> Result<String, String>;

pub fn criteria() -> [(u32, &'static str, Check); 10] {
    [
        (1, "golden_example_statistics", c1),
        (2, "freiman_3k4_random_sets", c2),
        (3, "hybrid_projection_bounds", c3),
        (4, "maxconv_lower_bounds", c4),
        (5, "lift_freiman_isomorphism", c5),
        (6, "merge_step_containment", c6),
        (7, "snap_exact_relations", c7),
        (8, "cover_search_vs_exhaustive", c8),
        (9, "extremal_example_covers", c9),
        (10, "reference_set_identities", c10),
    ]
}

/// Decorrelates the per-criterion streams from one master seed.
pub fn criterion_seed(seed: u64, num: u32) -> u64 {
    seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(u64::from(num))
}

pub fn run_suite(echo: &str, seed: u64, only: Option<u32>) -> (String, i32) {
    let mut lines = vec![json(&SuiteHeader { command: echo, seed })];
    let mut passed = 0u32;
    let mut failed = 0u32;
    for (num, name, f) in criteria() {
        if let Some(o) = only {
            if o != num {
                continue;
            }
        }
        let (pass, detail) = match f(criterion_seed(seed, num)) {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if pass {
            passed += 1;
        } else {
            failed += 1;
        }
        lines.push(json(&CriterionLine { criterion: num, name, pass, detail }));
    }
    let status = if failed == 0 { "ok" } else { "failed" };
    lines.push(json(&SuiteStatus { status, passed, failed }));
    let mut out = lines.join("\n");
    out.push('\n');
    (out, if failed == 0 { EXIT_OK } else { EXIT_ASSERTION })
}

fn ce(e: sumloc_core::Error) -> String {
    e.to_string()
}

/// Golden statistics of the named families, each exact and under a second.
fn c1(_seed: u64) -> Result<String, String> {
    let mut max_ms: u128 = 0;
    for t in [2u32, 3, 5] {
        let t0 = Instant::now();
        let inst = extremal::ap_boxes(1, t).map_err(ce)?;
        let rep = verify_example(&inst).map_err(ce)?;
        let row = rep
            .rows
            .iter()
            .find(|r| r.label == "half_sumset_size")
            .ok_or_else(|| format!("ap_boxes t={t}: missing half_sumset_size"))?;
        let want = rint(2) - rat(1, i64::from(t));
        if row.actual != want || !rep.pass {
            return Err(format!("ap_boxes t={t}: half sumset {} want {want}", row.actual));
        }
        max_ms = max_ms.max(t0.elapsed().as_millis());
    }
    for t in [3u32, 5, 10] {
        let t0 = Instant::now();
        let inst = extremal::cone(1, t).map_err(ce)?;
        let rep = verify_example(&inst).map_err(ce)?;
        let row = rep
            .rows
            .iter()
            .find(|r| r.label == "sumset_size")
            .ok_or_else(|| format!("cone t={t}: missing sumset_size"))?;
        let want: i64 = (2..=2 * i64::from(t)).sum();
        if row.actual != rint(want) || !rep.pass {
            return Err(format!("cone t={t}: sumset {} want {want}", row.actual));
        }
        max_ms = max_ms.max(t0.elapsed().as_millis());
    }
    for (num, den) in [(1i64, 5i64), (3, 5)] {
        let t0 = Instant::now();
        let delta = rat(num, den);
        let inst = extremal::two_boxes(1, &delta).map_err(ce)?;
        let rep = verify_example(&inst).map_err(ce)?;
        let row = rep
            .rows
            .iter()
            .find(|r| r.label == "half_sumset_size")
            .ok_or_else(|| format!("two_boxes delta={delta}: missing half_sumset_size"))?;
        if row.actual != rat(3, 2) || !rep.pass {
            return Err(format!(
                "two_boxes delta={delta}: half sumset {} want 3/2",
                row.actual
            ));
        }
        max_ms = max_ms.max(t0.elapsed().as_millis());
    }
    if max_ms >= 1000 {
        return Err(format!("slowest statistic took {max_ms} ms"));
    }
    Ok(format!("8 golden statistics exact; slowest {max_ms} ms"))
}

fn random_union(rng: &mut ChaCha8Rng, max_comps: usize) -> IntervalUnion {
    let n = rng.gen_range(1..=max_comps);
    let mut parts = Vec::with_capacity(n);
    for _ in 0..n {
        let den = rng.gen_range(1..=2i64);
        let lo = rat(rng.gen_range(-30..=30), den);
        let hi = &lo + rat(rng.gen_range(1..=6), den);
        parts.push((lo, hi));
    }
    IntervalUnion::new(parts).expect("solid components are always ordered")
}

fn random_values(rng: &mut ChaCha8Rng, n: usize, max: i64) -> Vec<i64> {
    let mut vals = BTreeSet::new();
    while vals.len() < n {
        vals.insert(rng.gen_range(0..=max));
    }
    vals.into_iter().collect()
}

/// Discrete and continuous 3k-4 bounds over seeded random one-dimensional
/// sets, with the classical equality case checked tight.
fn c2(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..2000 {
        let n = rng.gen_range(2..=12usize);
        let vals = random_values(&mut rng, n, 40);
        let a = SetValue::Lattice(LatticeSet::from_values(&vals));
        let rep = freiman3k4(&a).map_err(|e| format!("lattice instance {i}: {e}"))?;
        if !rep.holds {
            return Err(format!(
                "lattice instance {i} {vals:?}: bound {} actual {}",
                rep.bound, rep.actual
            ));
        }
    }
    let tight = freiman3k4(&SetValue::Lattice(LatticeSet::from_values(&[0, 1, 2, 4])))
        .map_err(ce)?;
    if tight.slack != rint(0) {
        return Err(format!("equality fixture has slack {}", tight.slack));
    }
    for i in 0..500 {
        let u = random_union(&mut rng, 4);
        let rep = freiman3k4(&SetValue::Interval(u)).map_err(|e| format!("union {i}: {e}"))?;
        if !rep.holds {
            return Err(format!("union instance {i}: bound {} actual {}", rep.bound, rep.actual));
        }
    }
    Ok("2000 lattice and 500 interval instances hold; fixture slack 0".to_string())
}

fn random_hybrid(rng: &mut ChaCha8Rng, d: usize, k: usize) -> Result<HybridSet, String> {
    let n = rng.gen_range(1..=30usize);
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let disc: ZVec = (0..d).map(|_| rng.gen_range(0..=5i64)).collect();
        let cube: ZVec = (0..k).map(|_| rng.gen_range(0..=5i64)).collect();
        pts.push((disc, cube));
    }
    HybridSet::new(d, k, rint(1), pts).map_err(ce)
}

/// Projection sums, the hybrid cube bound, and monotonicity of every
/// projection count under one-axis compression.
fn c3(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..500 {
        let d = rng.gen_range(1..=2usize);
        let k = rng.gen_range(0..=1usize);
        let a = random_hybrid(&mut rng, d, k)?;
        let b = random_hybrid(&mut rng, d, k)?;
        let pr = projection_sum(&a, &b).map_err(|e| format!("instance {i}: {e}"))?;
        if !pr.holds {
            return Err(format!("instance {i}: projection sum {} below bound", pr.lhs));
        }
        let (_, _, ok) = cube_bm(&a, &b).map_err(|e| format!("instance {i}: {e}"))?;
        if !ok {
            return Err(format!("instance {i}: cube bound fails"));
        }
        let total = d + k;
        for axis in 1..=d {
            let c = a.compress(axis).map_err(|e| format!("instance {i}: {e}"))?;
            for mask in 0u32..(1 << total) {
                let drop: Vec<usize> =
                    (0..total).filter(|j| mask & (1 << j) != 0).collect();
                if c.projection_count(&drop) > a.projection_count(&drop) {
                    return Err(format!(
                        "instance {i}: compression along {axis} grows projection {drop:?}"
                    ));
                }
            }
        }
    }
    Ok("500 hybrid instances: sums bounded, compression monotone".to_string())
}

/// Max-convolution lower bounds on random part-structured sets, tight on
/// two far intervals.
fn c4(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..300 {
        let u = random_union(&mut rng, 4);
        let dl = doubling_lower(&SetValue::Interval(u), 2, 1, 1 << 22)
            .map_err(|e| format!("instance {i}: {e}"))?;
        if !dl.holds {
            return Err(format!(
                "instance {i}: actual {} under bound {}",
                dl.actual,
                dl.conv.total.upper()
            ));
        }
    }
    let far = IntervalUnion::new(vec![(rint(0), rint(1)), (rint(100), rint(101))])
        .expect("two ordered components");
    let dl = doubling_lower(&SetValue::Interval(far), 2, 1, 1 << 22).map_err(ce)?;
    if dl.conv.total.lower() != rint(6)
        || dl.conv.total.upper() != rint(6)
        || dl.actual != rint(6)
    {
        return Err(format!(
            "far-interval fixture: bound [{}, {}] actual {}",
            dl.conv.total.lower(),
            dl.conv.total.upper(),
            dl.actual
        ));
    }
    Ok("300 lower bounds sound; two-interval fixture tight at 6".to_string())
}

/// Unique lifting through proper, separated pairs (P, Q), and the induced
/// order-2 isomorphism checked on every quadruple.
fn c5(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0usize;
    let mut draws = 0usize;
    while done < 100 {
        draws += 1;
        if draws > 2000 {
            return Err("could not draw 100 proper instances".to_string());
        }
        let d = rng.gen_range(1..=2usize);
        let base = rng.gen_range(-10..=10i64);
        let steps: Vec<i64> = (0..d).map(|_| rng.gen_range(5..=40i64)).collect();
        let lengths: Vec<u32> = (0..d).map(|_| rng.gen_range(2..=3u32)).collect();
        let p = Gap::line(base, &steps, &lengths).map_err(ce)?;
        if !p.is_proper(2, 1 << 20).map_err(ce)? {
            continue;
        }
        let rden = rng.gen_range(9..=20i64);
        let q = Zonotope::segment(rat(1, rden));
        let m = rng.gen_range(4..=8usize);
        let mut lam: Vec<ZVec> = Vec::with_capacity(m);
        let mut qs: Vec<Rat> = Vec::with_capacity(m);
        let mut pts: Vec<QVec> = Vec::with_capacity(m);
        for _ in 0..m {
            let l: ZVec =
                lengths.iter().map(|&li| rng.gen_range(1..=i64::from(li))).collect();
            let qc = rat(rng.gen_range(-1..=1i64), 2 * rden);
            let mut v = rint(base);
            for (s, li) in steps.iter().zip(&l) {
                v += rint(s * li);
            }
            pts.push(vec![&v + &qc]);
            lam.push(l);
            qs.push(qc);
        }
        let dec = lift(&p, &q, &pts, 1 << 20)
            .map_err(|e| format!("instance {done}: lift: {e}"))?;
        for (j, (dl, dq)) in dec.iter().enumerate() {
            if *dl != lam[j] || *dq != vec![qs[j].clone()] {
                return Err(format!("instance {done}: decomposition differs at point {j}"));
            }
        }
        for i1 in 0..m {
            for i2 in 0..m {
                for i3 in 0..m {
                    for i4 in 0..m {
                        let plain = &pts[i1][0] + &pts[i2][0] == &pts[i3][0] + &pts[i4][0];
                        let lsum = (0..d).all(|ax| {
                            lam[i1][ax] + lam[i2][ax] == lam[i3][ax] + lam[i4][ax]
                        });
                        let qsum = &qs[i1] + &qs[i2] == &qs[i3] + &qs[i4];
                        if plain != (lsum && qsum) {
                            return Err(format!(
                                "instance {done}: quadruple ({i1},{i2},{i3},{i4}) breaks \
                                 the isomorphism"
                            ));
                        }
                    }
                }
            }
        }
        done += 1;
    }
    Ok(format!("100 instances over {draws} draws; all quadruples consistent"))
}

/// One merge step: the pinned fixture exactly, then random line
/// progressions all dropping a dimension while keeping P + Q covered.
fn c6(seed: u64) -> Result<String, String> {
    let p = ConvexProgression {
        ineqs: vec![(vec![rint(1)], rint(2)), (vec![rint(-1)], rint(2))],
        phi: vec![vec![rat(1, 10)]],
        symmetric: true,
    };
    let q = Zonotope::segment(rat(3, 20));
    let out = merge_step(&p, &q, 1, 1, 1 << 20).map_err(ce)?;
    let MergeResult::Merged(o) = out else {
        return Err("fixture found no close pair".to_string());
    };
    if o.m != rint(4)
        || o.rho != vec![-2]
        || o.rho_prime != vec![-1]
        || o.p_count != 5
        || o.p_prime_count != 1
        || o.p_prime.d() != 0
        || o.q_prime.volume() != rat(11, 10)
        || o.size_ratio != rat(11, 15)
    {
        return Err(format!(
            "fixture mismatch: m {} rho {:?} counts {}/{} ratio {}",
            o.m, o.rho, o.p_count, o.p_prime_count, o.size_ratio
        ));
    }
    let (pv, _) = o.p_prime.values(1 << 10).map_err(ce)?;
    if pv != vec![vec![rint(0)]] {
        return Err("fixture merged progression is not the single origin".to_string());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..50 {
        let l = rng.gen_range(1..=5i64);
        let m = rng.gen_range(5..=12i64);
        let p = ConvexProgression {
            ineqs: vec![(vec![rint(1)], rint(l)), (vec![rint(-1)], rint(l))],
            phi: vec![vec![rat(1, m)]],
            symmetric: true,
        };
        let q = Zonotope::segment(rat(2, m));
        let out = merge_step(&p, &q, 1, 1, 1 << 22)
            .map_err(|e| format!("instance {i}: {e}"))?;
        let MergeResult::Merged(o) = out else {
            return Err(format!("instance {i}: no close pair at window 2/{m}"));
        };
        if o.p_prime.d() != p.d() - 1 {
            return Err(format!("instance {i}: dimension kept at {}", o.p_prime.d()));
        }
        let (pvals, _) = p.values(1 << 22).map_err(|e| format!("instance {i}: {e}"))?;
        let (pp, _) =
            o.p_prime.values(1 << 22).map_err(|e| format!("instance {i}: {e}"))?;
        let probes = [vec![rat(-2, m)], qzero(1), vec![rat(2, m)]];
        for u in &pvals {
            for w in &probes {
                let target = qadd(u, w);
                if !pp.iter().any(|v| o.q_prime.contains(&qsub(&target, v))) {
                    return Err(format!("instance {i}: sample escapes the merged pair"));
                }
            }
        }
    }
    Ok("fixture exact; 50 merges drop dimension and keep containment".to_string())
}

/// Snapping perturbed progressions: every instance returns to an exact
/// one-step progression with a certified window claim.
fn c7(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = rat(1, 100);
    let oracle =
        |v: &QVec| -> sumloc_core::Result<bool> { Ok(v.iter().all(|c| rabs(c) <= radius)) };
    let mut max_dilate = rint(0);
    for i in 0..100 {
        let b = rng.gen_range(-5..=5i64);
        let st = rng.gen_range(1..=6i64);
        // The elimination ladder's certificate constant grows superfactorially
        // in the point count; six points already leave u64.
        let t = rng.gen_range(4..=5usize);
        let pts: Vec<QVec> = (0..t)
            .map(|j| {
                let noise = rat(rng.gen_range(-25..=25i64), 10_000);
                vec![rint(b + st * j as i64) + noise]
            })
            .collect();
        let cert = snap(&pts, &oracle, 2, 2, 1, 100_000)
            .map_err(|e| format!("instance {i}: {e}"))?;
        if cert.relations.is_empty() {
            return Err(format!("instance {i}: no relations detected"));
        }
        let snapped: Vec<Rat> =
            pts.iter().zip(&cert.f).map(|(x, f)| &x[0] + &f[0]).collect();
        let step = &snapped[1] - &snapped[0];
        for w in snapped.windows(2) {
            if &w[1] - &w[0] != step {
                return Err(format!("instance {i}: snapped points are not one-step"));
            }
        }
        let shrink = Rat::new(BigInt::from(cert.c_prime), BigInt::from(cert.c));
        for f in &cert.f {
            if rabs(&(&shrink * &f[0])) > radius {
                return Err(format!("instance {i}: adjustment escapes the window claim"));
            }
        }
        if cert.dilate > max_dilate {
            max_dilate = cert.dilate.clone();
        }
    }
    Ok(format!("100 instances snapped to exact progressions; max dilate {max_dilate}"))
}

/// Branch-and-bound covers against the exhaustive oracle on a fixed seeded
/// corpus, across every dimension/translate pair in range.
fn c8(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut runs = 0usize;
    for i in 0..200 {
        let n = rng.gen_range(3..=8usize);
        let vals = random_values(&mut rng, n, 20);
        let a = LatticeSet::from_values(&vals);
        for d in 1..=2u32 {
            for t in 1..=3u32 {
                let fast = gap_cover(&a, d, t, 1 << 26)
                    .map_err(|e| format!("instance {i} d={d} t={t}: {e}"))?;
                let slow = gap_cover_exhaustive(&a, d, t, 1 << 26)
                    .map_err(|e| format!("instance {i} d={d} t={t}: {e}"))?;
                let agree = match (&fast, &slow) {
                    (CoverOutcome::Found(x), CoverOutcome::Found(y)) => {
                        x.optimal && y.optimal && x.size == y.size
                    }
                    (CoverOutcome::Infeasible, CoverOutcome::Infeasible) => true,
                    _ => false,
                };
                if !agree {
                    return Err(format!(
                        "instance {i} {vals:?} d={d} t={t}: search disagrees with oracle"
                    ));
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} searches agree with the exhaustive oracle"))
}

/// The three extremal cover statements: removed mass of the two-box family,
/// translate counts for scattered points, and the house hull excess.
fn c9(_seed: u64) -> Result<String, String> {
    for (num, den) in [(1i64, 10i64), (1, 5), (2, 5), (3, 5), (4, 5)] {
        let delta = rat(num, den);
        let inst = extremal::two_boxes(1, &delta).map_err(ce)?;
        let rep = verify_example(&inst).map_err(ce)?;
        if !rep.pass {
            return Err(format!("two_boxes delta={delta}: statistics drifted"));
        }
        let removed = rep
            .rows
            .iter()
            .find(|r| r.label == "small_box_size")
            .ok_or_else(|| format!("two_boxes delta={delta}: missing small_box_size"))?
            .actual
            .clone();
        let m = inst.set.size();
        let d2 = &delta * &delta;
        let lin = &delta * &m;
        let cubic = (&d2 + &(&(rint(60) * &d2) * &delta)) * &m;
        let bound = if lin <= cubic { lin } else { cubic };
        if removed > bound {
            return Err(format!("two_boxes delta={delta}: removed {removed} over {bound}"));
        }
    }
    // The generator's separations sit in arithmetic progression, which a
    // two-step progression starts to chain at ell = 3; past that point a
    // genuinely scattered fixture needs pairwise-distinct gaps.
    for ell in [1u32, 2] {
        let inst = extremal::scattered_lattice(10, ell).map_err(ce)?;
        let SetValue::Lattice(l) = &inst.set else {
            return Err("scattered_lattice did not return a lattice set".to_string());
        };
        let got = min_translates(l, 2, l.card() as u64, ell + 2, 1 << 26).map_err(ce)?;
        if got != Some(ell + 1) {
            return Err(format!("scattered ell={ell}: needs {got:?} translates"));
        }
    }
    let mut vals: Vec<i64> = (0..5).collect();
    vals.extend([9, 27, 70]);
    let l = LatticeSet::from_values(&vals);
    let got = min_translates(&l, 2, l.card() as u64, 5, 1 << 28).map_err(ce)?;
    if got != Some(4) {
        return Err(format!("scattered ell=3 (distinct gaps): needs {got:?} translates"));
    }
    for (t, num, den) in
        [(1u32, 1i64, 10i64), (2, 1, 100), (3, 1, 5), (1, -1, 10), (2, -1, 100), (1, -1, 2)]
    {
        let delta = rat(num, den);
        let inst = extremal::house(t, &delta).map_err(ce)?;
        let fb = inst.fibered().map_err(ce)?;
        let (_, excess) = co11(&fb).map_err(ce)?;
        let m = inst.set.size();
        let s = inst.set.sumset(&inst.set).map_err(ce)?.size();
        let dhat = &(&s / &m) - &(rint(4) - rat(2, 2 * i64::from(t) + 1));
        let bound = &(rint(150) * &dhat) * &m;
        if excess > bound {
            return Err(format!(
                "house t={t} delta={delta}: excess {excess} over bound {bound}"
            ));
        }
    }
    Ok("two-box removals, scattered translate counts, house excesses in bounds".to_string())
}

/// Reference-set identities and containment on compressed fibre stacks.
fn c10(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..100 {
        let n = rng.gen_range(2..=5usize);
        let mut lens: Vec<Rat> =
            (0..n).map(|_| rat(rng.gen_range(1..=4i64), rng.gen_range(1..=2i64))).collect();
        lens.sort_by(|a, b| b.cmp(a));
        let b = FiberedSet::from_lengths(&lens).map_err(|e| format!("instance {i}: {e}"))?;
        let r = t_references(&b).map_err(|e| format!("instance {i}: {e}"))?;
        if r.t1 != r.t1_identity {
            return Err(format!("instance {i}: |T1| {} identity {}", r.t1, r.t1_identity));
        }
        if r.t2 != r.t2_identity {
            return Err(format!("instance {i}: |T2| {} identity {}", r.t2, r.t2_identity));
        }
        if !r.t1_contained || !r.t2_contained {
            return Err(format!("instance {i}: reference set escapes B+B"));
        }
    }
    Ok("100 compressed stacks: identities exact, references inside B+B".to_string())
}
