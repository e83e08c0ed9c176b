//! Subcommand front ends: parse inputs, run the exact routines, and emit
//! deterministic JSON-lines reports whose assertion rows drive the exit
//! code (0 pass, 1 assertion failure, 2 usage, 3 budget).

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use sumloc_core::construct::{merge_step, ruzsa_cover, snap, MergeResult};
use sumloc_core::covering::{gap_cover, CoverOutcome};
use sumloc_core::extremal::{generate, verify_example, ExampleName};
use sumloc_core::hull::doubling_lower;
use sumloc_core::progression::Zonotope;
use sumloc_core::rat::{qadd, qscale, qsub, qvec_from_ints, qzero, rabs, rint, QVec, Rat};
use sumloc_core::set_value::SetValue;
use sumloc_core::Error as CoreError;

use crate::formats::{
    parse_progression, parse_rat, parse_set, symmetric_radius, write_convex, write_gap,
    write_set, Progression,
};
use crate::report::{digest, InputDigest, Report, EXIT_BUDGET, EXIT_USAGE};
use crate::suite;

#[derive(Parser)]
#[command(name = "sumloc", version, about = "exact sumset-structure workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Minkowski sum of one or two sets
    Sumset(SumsetArgs),
    /// Doubling ratio |A+B| / |A|
    Doubling(TwoSetArgs),
    /// Smallest d-dimensional progression cover at a translate budget
    Cover(CoverArgs),
    /// Part cover, hull quotient, and the max-convolution lower bound
    Hull(HullArgs),
    /// Validate a set or progression file and re-check its invariants
    Check(CheckArgs),
    /// One merge step on a symmetric progression pair (P, Q)
    Merge(MergeArgs),
    /// Snap near-relations between points to exact ones inside a window
    Snap(SnapArgs),
    /// Greedy covering of A by translates of B - B
    Ruzsa(RuzsaArgs),
    /// Generate a named example family and its predictions file
    Example(ExampleArgs),
    /// Re-check a predictions file against freshly generated sets
    VerifyExample(VerifyExampleArgs),
    /// Run the full acceptance suite
    Suite(SuiteArgs),
}

#[derive(Args)]
pub struct SumsetArgs {
    /// input set file
    #[arg(long = "in", value_name = "FILE")]
    pub input: String,
    /// second set file (defaults to the first input)
    #[arg(long = "with", value_name = "FILE")]
    pub with: Option<String>,
    /// write the resulting set here
    #[arg(long = "out", value_name = "FILE")]
    pub out: Option<String>,
}

#[derive(Args)]
pub struct TwoSetArgs {
    /// input set file
    #[arg(long = "in", value_name = "FILE")]
    pub input: String,
    /// second set file (defaults to the first input)
    #[arg(long = "with", value_name = "FILE")]
    pub with: Option<String>,
}

#[derive(Args)]
pub struct CoverArgs {
    /// input lattice set file
    #[arg(long = "in", value_name = "FILE")]
    pub input: String,
    /// progression dimension
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// translate budget
    #[arg(long, default_value_t = 1)]
    pub t: u32,
    /// search node budget
    #[arg(long, default_value_t = 1 << 26)]
    pub budget: u64,
}

#[derive(Args)]
pub struct HullArgs {
    /// input set file
    #[arg(long = "in", value_name = "FILE")]
    pub input: String,
    /// homomorphism order for the part cover
    #[arg(long, default_value_t = 2)]
    pub s: u32,
    /// convolution exponent (ambient dimension)
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// enumeration budget
    #[arg(long, default_value_t = 1 << 26)]
    pub budget: u64,
}

#[derive(Args)]
pub struct CheckArgs {
    /// input set or progression file
    #[arg(long = "in", value_name = "FILE")]
    pub input: String,
    /// also check s-properness (progressions only)
    #[arg(long)]
    pub s: Option<u32>,
    /// enumeration budget
    #[arg(long, default_value_t = 1 << 26)]
    pub budget: u64,
}

#[derive(Args)]
pub struct MergeArgs {
    /// symmetric convex progression file
    #[arg(long = "in", value_name = "FILE")]
    pub input: String,
    /// symmetric interval set file giving the window Q
    #[arg(long = "with", value_name = "FILE")]
    pub with: String,
    /// closeness order
    #[arg(long, default_value_t = 1)]
    pub s: i64,
    /// side length floor for the merged direction
    #[arg(long, default_value_t = 1)]
    pub l0: i64,
    /// enumeration budget
    #[arg(long, default_value_t = 1 << 26)]
    pub budget: u64,
    /// write the merged progression here
    #[arg(long = "out", value_name = "FILE")]
    pub out: Option<String>,
}

#[derive(Args)]
pub struct SnapArgs {
    /// point list: a lattice set, or an interval set of degenerate components
    #[arg(long = "in", value_name = "FILE")]
    pub input: String,
    /// symmetric interval set file giving the window L
    #[arg(long = "with", value_name = "FILE")]
    pub with: String,
    /// relation order
    #[arg(long, default_value_t = 2)]
    pub s: u32,
    /// elimination budget
    #[arg(long, default_value_t = 1 << 26)]
    pub budget: u64,
}

#[derive(Args)]
pub struct RuzsaArgs {
    /// set to be covered
    #[arg(long = "in", value_name = "FILE")]
    pub input: String,
    /// covering set B
    #[arg(long = "with", value_name = "FILE")]
    pub with: String,
    /// enumeration budget
    #[arg(long, default_value_t = 1 << 26)]
    pub budget: u64,
}

#[derive(Args)]
pub struct ExampleArgs {
    /// family name: two_boxes, ap_boxes, scattered, cone, house
    #[arg(value_name = "NAME")]
    pub name: String,
    /// comma-separated parameters, e.g. "k=1,t=2" or "delta=3/5"
    #[arg(long, value_name = "LIST")]
    pub params: Option<String>,
    /// output directory for the .set and .predictions.json files
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: String,
}

#[derive(Args)]
pub struct VerifyExampleArgs {
    /// predictions file written by `example`
    #[arg(long = "in", value_name = "FILE")]
    pub input: String,
}

#[derive(Args)]
pub struct SuiteArgs {
    /// seed for the randomized acceptance batches
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// run a single criterion (1-10) instead of all
    #[arg(long, value_name = "N")]
    pub only: Option<u32>,
}

pub struct Fail {
    pub message: String,
    pub code: i32,
}

type CmdResult = Result<Report, Fail>;

fn usage(message: impl Into<String>) -> Fail {
    Fail { message: message.into(), code: EXIT_USAGE }
}

fn core_fail(e: CoreError) -> Fail {
    let code = match e {
        CoreError::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    };
    Fail { message: e.to_string(), code }
}

/// Normalized command echo: the binary path is replaced by the plain name
/// so reports stay byte-identical across install locations.
pub fn echo(argv: &[String]) -> String {
    if argv.len() <= 1 {
        "sumloc".to_string()
    } else {
        format!("sumloc {}", argv[1..].join(" "))
    }
}

pub fn dispatch(cmd: &Cmd, echo: &str) -> (String, i32) {
    let res = match cmd {
        Cmd::Sumset(a) => cmd_sumset(a, echo),
        Cmd::Doubling(a) => cmd_doubling(a, echo),
        Cmd::Cover(a) => cmd_cover(a, echo),
        Cmd::Hull(a) => cmd_hull(a, echo),
        Cmd::Check(a) => cmd_check(a, echo),
        Cmd::Merge(a) => cmd_merge(a, echo),
        Cmd::Snap(a) => cmd_snap(a, echo),
        Cmd::Ruzsa(a) => cmd_ruzsa(a, echo),
        Cmd::Example(a) => cmd_example(a, echo),
        Cmd::VerifyExample(a) => cmd_verify_example(a, echo),
        Cmd::Suite(a) => return suite::run_suite(echo, a.seed, a.only),
    };
    match res {
        Ok(report) => report.render(),
        Err(fail) => Report::new(echo, &[]).render_error(&fail.message, fail.code),
    }
}

fn read_file(path: &str) -> Result<(String, InputDigest), Fail> {
    let bytes = fs::read(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    let text =
        String::from_utf8(bytes).map_err(|_| usage(format!("{path}: not valid UTF-8")))?;
    let d = digest(path, text.as_bytes());
    Ok((text, d))
}

fn load_set(path: &str) -> Result<(SetValue, InputDigest), Fail> {
    let (text, d) = read_file(path)?;
    let v = parse_set(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    Ok((v, d))
}

fn fmt_qvec(v: &QVec) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
}

fn fmt_qvecs(vs: &[QVec]) -> String {
    vs.iter().map(fmt_qvec).collect::<Vec<_>>().join("; ")
}

fn fmt_ints(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_sumset(a: &SumsetArgs, echo: &str) -> CmdResult {
    let (x, dx) = load_set(&a.input)?;
    let mut inputs = vec![dx];
    let y = match &a.with {
        Some(p) => {
            let (y, dy) = load_set(p)?;
            inputs.push(dy);
            Some(y)
        }
        None => None,
    };
    let s = x.sumset(y.as_ref().unwrap_or(&x)).map_err(core_fail)?;
    let mut r = Report::new(echo, &inputs);
    r.text("kind", s.kind_name());
    r.value("size_a", &x.size());
    if let Some(yv) = &y {
        r.value("size_b", &yv.size());
    }
    r.value("sumset_size", &s.size());
    if let SetValue::Interval(u) = &s {
        r.int("sumset_components", u.components().len() as u64);
    }
    if let Some(path) = &a.out {
        fs::write(path, write_set(&s))
            .map_err(|e| usage(format!("cannot write {path}: {e}")))?;
        r.text("wrote", path);
    }
    Ok(r)
}

fn cmd_doubling(a: &TwoSetArgs, echo: &str) -> CmdResult {
    let (x, dx) = load_set(&a.input)?;
    let mut inputs = vec![dx];
    let y = match &a.with {
        Some(p) => {
            let (y, dy) = load_set(p)?;
            inputs.push(dy);
            Some(y)
        }
        None => None,
    };
    let d = x.doubling(y.as_ref()).map_err(core_fail)?;
    let mut r = Report::new(echo, &inputs);
    r.value("size_a", &x.size());
    r.value("doubling", &d);
    Ok(r)
}

fn cmd_cover(a: &CoverArgs, echo: &str) -> CmdResult {
    let (x, dx) = load_set(&a.input)?;
    let SetValue::Lattice(l) = &x else {
        return Err(usage(format!("{}: cover needs a lattice set", a.input)));
    };
    let outcome = gap_cover(l, a.d, a.t, a.budget).map_err(core_fail)?;
    let mut r = Report::new(echo, &[dx]);
    r.int("card", l.card() as u64);
    match outcome {
        CoverOutcome::Infeasible => {
            r.flag("found", false);
        }
        CoverOutcome::Found(c) => {
            r.flag("found", true);
            r.int("size", c.size);
            r.flag("optimal", c.optimal);
            r.int("nodes", c.nodes);
            r.text("translates", &fmt_ints(&c.x));
            r.text("gap_base", &fmt_qvec(&c.p.base));
            r.text("gap_steps", &fmt_qvecs(&c.p.steps));
            r.text(
                "gap_lengths",
                &c.p.lengths.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
            );
            // Recompute X + P and compare against the reported cover.
            let (vals, _) = c.p.enumerate(a.budget).map_err(core_fail)?;
            let mut pts: BTreeSet<Rat> = BTreeSet::new();
            for &t in &c.x {
                for v in &vals {
                    pts.insert(rint(t) + &v[0]);
                }
            }
            let covered = l
                .values()
                .map_err(core_fail)?
                .iter()
                .all(|&av| pts.contains(&rint(av)));
            r.assert_bool("cover_contains_input", covered);
            r.assert_rat("cover_size", &rint(pts.len() as i64), "==", &rint(c.size as i64));
        }
    }
    Ok(r)
}

fn cmd_hull(a: &HullArgs, echo: &str) -> CmdResult {
    let (x, dx) = load_set(&a.input)?;
    let dl = doubling_lower(&x, a.s, a.k, a.budget).map_err(core_fail)?;
    let mut r = Report::new(echo, &[dx]);
    r.int("parts", dl.report.cover.parts.len() as u64);
    r.int("merges", dl.report.merges as u64);
    for (i, p) in dl.report.cover.parts.iter().enumerate() {
        r.text(
            &format!("part_{i}"),
            &format!("[{}, {}] mass {}", fmt_qvec(&p.lo), fmt_qvec(&p.hi), p.mass),
        );
    }
    r.value("quotient_total", &dl.report.quotient.total());
    r.value("hull_bound", &dl.report.bound);
    r.value("conv_lower", &dl.conv.total.lower());
    r.value("conv_upper", &dl.conv.total.upper());
    r.value("sumset_actual", &dl.actual);
    r.assert_rat("doubling_lower_holds", &dl.actual, ">=", &dl.conv.total.upper());
    Ok(r)
}

fn cmd_check(a: &CheckArgs, echo: &str) -> CmdResult {
    let (text, dx) = read_file(&a.input)?;
    let head = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("")
        .to_string();
    let mut r = Report::new(echo, &[dx]);
    match head.as_str() {
        "latticeset" | "intervals" | "polycube" => {
            let v = parse_set(&text).map_err(|e| usage(format!("{}: {e}", a.input)))?;
            r.text("kind", v.kind_name());
            r.value("size", &v.size());
            match &v {
                SetValue::Lattice(l) => {
                    r.int("dim", l.dim() as u64);
                    r.int("card", l.card() as u64);
                }
                SetValue::Interval(u) => r.int("components", u.components().len() as u64),
                SetValue::Cube(p) => {
                    r.value("scale", p.scale());
                    r.int("cells", p.cells().card() as u64);
                }
            }
            let back = parse_set(&write_set(&v))
                .map_err(|e| usage(format!("canonical form re-parse: {e}")))?;
            r.assert_bool("canonical_round_trip", back == v);
            if a.s.is_some() {
                return Err(usage("--s applies to progression files only"));
            }
        }
        "gap" => {
            let Progression::Gap(g) = parse_progression(&text)
                .map_err(|e| usage(format!("{}: {e}", a.input)))?
            else {
                unreachable!()
            };
            r.text("kind", "gap");
            r.int("k", g.k() as u64);
            r.int("d", g.d() as u64);
            r.int("index_count", g.index_count());
            let (vals, collisions) = g.enumerate(a.budget).map_err(core_fail)?;
            r.int("distinct_values", vals.len() as u64);
            r.int("collisions", collisions);
            if let Some(n) = g.fullness() {
                r.int("fullness", n as u64);
            }
            let back = write_gap(&g);
            let reparsed = parse_progression(&back)
                .map_err(|e| usage(format!("canonical form re-parse: {e}")))?;
            let Progression::Gap(g2) = reparsed else { unreachable!() };
            r.assert_bool("canonical_round_trip", write_gap(&g2) == back);
            if let Some(s) = a.s {
                let proper = g.is_proper(s, a.budget).map_err(core_fail)?;
                r.assert_bool("proper", proper);
            }
        }
        "convexprog" => {
            let Progression::Convex(c) = parse_progression(&text)
                .map_err(|e| usage(format!("{}: {e}", a.input)))?
            else {
                unreachable!()
            };
            r.text("kind", "convexprog");
            r.int("d", c.d() as u64);
            r.int("k", c.k() as u64);
            r.flag("symmetric", c.symmetric);
            let (vals, collisions) = c.values(a.budget).map_err(core_fail)?;
            r.int("distinct_values", vals.len() as u64);
            r.int("collisions", collisions);
            if c.d() <= 2 {
                r.value("body_volume", &c.body_volume().map_err(core_fail)?);
            }
            let back = write_convex(&c);
            let reparsed = parse_progression(&back)
                .map_err(|e| usage(format!("canonical form re-parse: {e}")))?;
            let Progression::Convex(c2) = reparsed else { unreachable!() };
            r.assert_bool("canonical_round_trip", write_convex(&c2) == back);
            if let Some(s) = a.s {
                let proper = c.is_proper(s, a.budget).map_err(core_fail)?;
                r.assert_bool("proper", proper);
            }
        }
        other => return Err(usage(format!("{}: unrecognized header '{other}'", a.input))),
    }
    Ok(r)
}

fn window_radius(path: &str) -> Result<(Rat, InputDigest), Fail> {
    let (v, d) = load_set(path)?;
    let SetValue::Interval(u) = &v else {
        return Err(usage(format!("{path}: the window must be an interval set")));
    };
    let r = symmetric_radius(u)
        .ok_or_else(|| usage(format!("{path}: expected a single symmetric interval")))?;
    Ok((r, d))
}

fn cmd_merge(a: &MergeArgs, echo: &str) -> CmdResult {
    let (text, d1) = read_file(&a.input)?;
    let prog = parse_progression(&text).map_err(|e| usage(format!("{}: {e}", a.input)))?;
    let Progression::Convex(p) = prog else {
        return Err(usage(format!("{}: merge needs a convex progression file", a.input)));
    };
    let (radius, d2) = window_radius(&a.with)?;
    let k = p.k() as usize;
    let gens: Vec<QVec> = (0..k)
        .map(|i| {
            let mut g = qzero(k);
            g[i] = radius.clone();
            g
        })
        .collect();
    let q = Zonotope::new(qzero(k), gens).map_err(core_fail)?;
    let result = merge_step(&p, &q, a.s, a.l0, a.budget).map_err(core_fail)?;
    let mut r = Report::new(echo, &[d1, d2]);
    match result {
        MergeResult::NoClosePair => {
            r.flag("merged", false);
        }
        MergeResult::Merged(o) => {
            r.flag("merged", true);
            r.text("rho", &fmt_ints(&o.rho));
            r.text("rho_prime", &fmt_ints(&o.rho_prime));
            r.value("m", &o.m);
            r.text("normal", &fmt_qvec(&o.normal));
            r.int("p_count", o.p_count);
            r.int("p_prime_count", o.p_prime_count);
            r.value("size_ratio", &o.size_ratio);
            r.value("q_prime_volume", &o.q_prime.volume());
            r.assert_rat(
                "dimension_drop",
                &rint(o.p_prime.d() as i64),
                "==",
                &rint(p.d() as i64 - 1),
            );
            // Sample containment: every P value plus a Q corner must land
            // inside P' + Q'.
            let (pvals, _) = p.values(a.budget).map_err(core_fail)?;
            let (qvals, _) = o.p_prime.values(a.budget).map_err(core_fail)?;
            let mut probes = q.corners();
            probes.push(qzero(k));
            let contained = pvals.iter().all(|u| {
                probes.iter().all(|w| {
                    let target = qadd(u, w);
                    qvals.iter().any(|v| o.q_prime.contains(&qsub(&target, v)))
                })
            });
            r.assert_bool("containment_samples", contained);
            if let Some(path) = &a.out {
                fs::write(path, write_convex(&o.p_prime))
                    .map_err(|e| usage(format!("cannot write {path}: {e}")))?;
                r.text("wrote", path);
            }
        }
    }
    Ok(r)
}

fn cmd_snap(a: &SnapArgs, echo: &str) -> CmdResult {
    let (xs, d1) = load_set(&a.input)?;
    let pts: Vec<QVec> = match &xs {
        SetValue::Lattice(l) => l.points().iter().map(|p| qvec_from_ints(p)).collect(),
        SetValue::Interval(u) => {
            let mut v = Vec::new();
            for (lo, hi) in u.components() {
                if lo != hi {
                    return Err(usage(format!(
                        "{}: point lists need degenerate components",
                        a.input
                    )));
                }
                v.push(vec![lo.clone()]);
            }
            v
        }
        SetValue::Cube(_) => {
            return Err(usage(format!("{}: point lists cannot be polycubes", a.input)))
        }
    };
    let (radius, d2) = window_radius(&a.with)?;
    let oracle =
        |v: &QVec| -> sumloc_core::Result<bool> { Ok(v.iter().all(|c| rabs(c) <= radius)) };
    let cert =
        snap(&pts, &oracle, a.s, u64::from(a.s), 1, a.budget).map_err(core_fail)?;
    let mut r = Report::new(echo, &[d1, d2]);
    r.int("points", pts.len() as u64);
    r.int("relations", cert.relations.len() as u64);
    r.int("c", cert.c);
    r.int("c_prime", cert.c_prime);
    r.value("dilate", &cert.dilate);
    let snapped: Vec<QVec> = pts.iter().zip(&cert.f).map(|(x, f)| qadd(x, f)).collect();
    r.text("snapped", &fmt_qvecs(&snapped));
    for (i, rel) in cert.relations.iter().enumerate() {
        r.text(
            &format!("relation_{i}"),
            &format!(
                "xs [{}] ys [{}]",
                rel.xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                rel.ys.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
            ),
        );
    }
    let dim = pts.first().map_or(0, |p| p.len());
    let exact = cert.relations.iter().all(|rel| {
        let mut lhs = qzero(dim);
        for &i in &rel.xs {
            lhs = qadd(&lhs, &snapped[i]);
        }
        let mut rhs = qzero(dim);
        for &j in &rel.ys {
            rhs = qadd(&rhs, &snapped[j]);
        }
        lhs == rhs
    });
    r.assert_bool("relations_exact", exact);
    let shrink = Rat::new(BigInt::from(cert.c_prime), BigInt::from(cert.c));
    let inside = cert
        .f
        .iter()
        .all(|f| oracle(&qscale(&shrink, f)).unwrap_or(false));
    r.assert_bool("adjustments_in_window", inside);
    Ok(r)
}

fn cmd_ruzsa(a: &RuzsaArgs, echo: &str) -> CmdResult {
    let (x, d1) = load_set(&a.input)?;
    let (y, d2) = load_set(&a.with)?;
    let cover = ruzsa_cover(&x, &y, a.budget).map_err(core_fail)?;
    let mut r = Report::new(echo, &[d1, d2]);
    r.int("translates", cover.points.len() as u64);
    r.value("bound", &cover.bound);
    r.text(
        "points",
        &cover.points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
    );
    r.assert_rat(
        "translates_within_bound",
        &rint(cover.points.len() as i64),
        "<=",
        &cover.bound.ceil(),
    );
    r.assert_bool("covered", cover.covered);
    Ok(r)
}

/// On-disk predictions: exact rational strings only, so files are stable
/// under re-generation.
#[derive(Serialize, Deserialize)]
pub struct PredictionsFile {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub set_file: String,
    pub predicted: Vec<PredictionRow>,
}

#[derive(Serialize, Deserialize)]
pub struct PredictionRow {
    pub label: String,
    pub value: String,
    pub formula: String,
    pub cited: bool,
}

fn parse_params(list: &str) -> Result<Vec<(String, Rat)>, Fail> {
    let mut out = Vec::new();
    for item in list.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("parameter '{item}' is not key=value")))?;
        let val = parse_rat(0, v.trim())
            .map_err(|e| usage(format!("parameter '{item}': {}", e.message)))?;
        out.push((k.trim().to_string(), val));
    }
    Ok(out)
}

fn cmd_example(a: &ExampleArgs, echo: &str) -> CmdResult {
    let name = ExampleName::parse(&a.name)
        .ok_or_else(|| usage(format!("unknown example family '{}'", a.name)))?;
    let params = parse_params(a.params.as_deref().unwrap_or(""))?;
    let borrowed: Vec<(&str, Rat)> =
        params.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    let inst = generate(name, &borrowed).map_err(core_fail)?;
    let dir = Path::new(&a.out);
    fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", a.out)))?;
    let set_name = format!("{}.set", name.as_str());
    let pred_name = format!("{}.predictions.json", name.as_str());
    let set_path = dir.join(&set_name);
    let pred_path = dir.join(&pred_name);
    fs::write(&set_path, write_set(&inst.set))
        .map_err(|e| usage(format!("cannot write {}: {e}", set_path.display())))?;
    let pf = PredictionsFile {
        name: name.as_str().to_string(),
        params: inst.params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        set_file: set_name.clone(),
        predicted: inst
            .predicted
            .iter()
            .map(|p| PredictionRow {
                label: p.label.to_string(),
                value: p.value.to_string(),
                formula: p.formula.to_string(),
                cited: p.cited,
            })
            .collect(),
    };
    let mut body = serde_json::to_string_pretty(&pf)
        .map_err(|e| usage(format!("cannot serialize predictions: {e}")))?;
    body.push('\n');
    fs::write(&pred_path, body)
        .map_err(|e| usage(format!("cannot write {}: {e}", pred_path.display())))?;
    let mut r = Report::new(echo, &[]);
    r.text("family", name.as_str());
    r.value("size", &inst.set.size());
    for p in &inst.predicted {
        r.value(&format!("predicted_{}", p.label), &p.value);
    }
    r.text("wrote_set", &set_path.display().to_string());
    r.text("wrote_predictions", &pred_path.display().to_string());
    Ok(r)
}

fn cmd_verify_example(a: &VerifyExampleArgs, echo: &str) -> CmdResult {
    let (jtext, d1) = read_file(&a.input)?;
    let pf: PredictionsFile = serde_json::from_str(&jtext)
        .map_err(|e| usage(format!("{}: {e}", a.input)))?;
    let name = ExampleName::parse(&pf.name)
        .ok_or_else(|| usage(format!("{}: unknown family '{}'", a.input, pf.name)))?;
    let mut params = Vec::new();
    for (k, v) in &pf.params {
        let val = parse_rat(0, v)
            .map_err(|e| usage(format!("{}: parameter {k}: {}", a.input, e.message)))?;
        params.push((k.clone(), val));
    }
    let borrowed: Vec<(&str, Rat)> =
        params.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    let inst = generate(name, &borrowed).map_err(core_fail)?;
    let dir = Path::new(&a.input).parent().unwrap_or_else(|| Path::new("."));
    let set_path = dir.join(&pf.set_file);
    let (stext, d2) = read_file(&set_path.display().to_string())?;
    let stored = parse_set(&stext).map_err(|e| usage(format!("{}: {e}", set_path.display())))?;
    let mut r = Report::new(echo, &[d1, d2]);
    r.text("family", name.as_str());
    r.assert_bool("set_file_matches_generator", stored == inst.set);
    let fresh: Vec<(String, String)> = inst
        .predicted
        .iter()
        .map(|p| (p.label.to_string(), p.value.to_string()))
        .collect();
    let filed: Vec<(String, String)> =
        pf.predicted.iter().map(|p| (p.label.clone(), p.value.clone())).collect();
    r.assert_bool("predictions_match_generator", fresh == filed);
    let rep = verify_example(&inst).map_err(core_fail)?;
    for row in &rep.rows {
        if row.cited {
            r.value(&format!("cited_{}_predicted", row.label), &row.predicted);
            r.value(&format!("cited_{}_actual", row.label), &row.actual);
        } else {
            r.assert_rat(row.label, &row.actual, "==", &row.predicted);
        }
    }
    Ok(r)
}
