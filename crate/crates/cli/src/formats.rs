//! Text formats for set and progression values.
//!
//! Set files start with `latticeset k`, `intervals`, or `polycube c k`,
//! followed by one element per line (integers space-separated, interval
//! endpoints as rationals `p/q`). Progression files start with `gap k d`
//! (base line, d step lines, lengths line) or `convexprog d k` (inequality
//! rows `c0 c1 .. cd` meaning c1 x1 + .. + cd xd <= c0, then the k phi
//! rows). Writers emit the canonical sorted representation, so writing,
//! parsing, and writing again is byte-identical.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use sumloc_core::interval::IntervalUnion;
use sumloc_core::lattice::LatticeSet;
use sumloc_core::polycube::Polycube;
use sumloc_core::progression::{ConvexProgression, Gap};
use sumloc_core::rat::{QVec, Rat};
use sumloc_core::set_value::SetValue;

/// A parse failure with the offending line (1-based), for usage errors.
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

type PResult<T> = Result<T, ParseError>;

fn err<T>(line: usize, message: impl Into<String>) -> PResult<T> {
    Err(ParseError { line, message: message.into() })
}

pub fn parse_rat(line: usize, tok: &str) -> PResult<Rat> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (tok, None),
    };
    let n: BigInt = match num.parse() {
        Ok(v) => v,
        Err(_) => return err(line, format!("bad rational `{tok}`")),
    };
    let d: BigInt = match den {
        Some(d) => match d.parse() {
            Ok(v) => v,
            Err(_) => return err(line, format!("bad rational `{tok}`")),
        },
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return err(line, format!("zero denominator in `{tok}`"));
    }
    Ok(Rat::new(n, d))
}

fn parse_int(line: usize, tok: &str) -> PResult<i64> {
    tok.parse().map_err(|_| ParseError { line, message: format!("bad integer `{tok}`") })
}

fn parse_rats(line: usize, toks: &[&str]) -> PResult<QVec> {
    toks.iter().map(|t| parse_rat(line, t)).collect()
}

/// Nonempty lines with their 1-based numbers; blank lines are separators.
fn body_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect()
}

pub fn parse_set(text: &str) -> PResult<SetValue> {
    let lines = body_lines(text);
    let Some((hline, header)) = lines.first() else {
        return err(1, "empty set file");
    };
    match header[0] {
        "latticeset" => {
            if header.len() != 2 {
                return err(*hline, "expected `latticeset k`");
            }
            let k = parse_int(*hline, header[1])? as usize;
            let mut pts = Vec::new();
            for (ln, toks) in &lines[1..] {
                if toks.len() != k {
                    return err(*ln, format!("expected {k} coordinates"));
                }
                pts.push(toks.iter().map(|t| parse_int(*ln, t)).collect::<PResult<Vec<i64>>>()?);
            }
            LatticeSet::new(k, pts)
                .map(SetValue::Lattice)
                .map_err(|e| ParseError { line: *hline, message: e.to_string() })
        }
        "intervals" => {
            let mut parts = Vec::new();
            for (ln, toks) in &lines[1..] {
                if toks.len() != 2 {
                    return err(*ln, "expected `lo hi`");
                }
                parts.push((parse_rat(*ln, toks[0])?, parse_rat(*ln, toks[1])?));
            }
            IntervalUnion::new(parts)
                .map(SetValue::Interval)
                .map_err(|e| ParseError { line: *hline, message: e.to_string() })
        }
        "polycube" => {
            if header.len() != 3 {
                return err(*hline, "expected `polycube c k`");
            }
            let scale = parse_rat(*hline, header[1])?;
            let k = parse_int(*hline, header[2])? as usize;
            let mut cells = Vec::new();
            for (ln, toks) in &lines[1..] {
                if toks.len() != k {
                    return err(*ln, format!("expected {k} cell coordinates"));
                }
                cells
                    .push(toks.iter().map(|t| parse_int(*ln, t)).collect::<PResult<Vec<i64>>>()?);
            }
            let cells = LatticeSet::new(k, cells)
                .map_err(|e| ParseError { line: *hline, message: e.to_string() })?;
            Polycube::new(scale, cells)
                .map(SetValue::Cube)
                .map_err(|e| ParseError { line: *hline, message: e.to_string() })
        }
        other => err(*hline, format!("unknown set kind `{other}`")),
    }
}

pub fn write_set(v: &SetValue) -> String {
    let mut out = String::new();
    match v {
        SetValue::Lattice(l) => {
            let _ = writeln!(out, "latticeset {}", l.dim());
            for p in l.points() {
                let _ = writeln!(out, "{}", join_ints(p));
            }
        }
        SetValue::Interval(u) => {
            let _ = writeln!(out, "intervals");
            for (lo, hi) in u.components() {
                let _ = writeln!(out, "{lo} {hi}");
            }
        }
        SetValue::Cube(p) => {
            let _ = writeln!(out, "polycube {} {}", p.scale(), p.dim());
            for c in p.cells().points() {
                let _ = writeln!(out, "{}", join_ints(c));
            }
        }
    }
    out
}

fn join_ints(v: &[i64]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn join_rats(v: &[Rat]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone)]
pub enum Progression {
    Gap(Gap),
    Convex(ConvexProgression),
}

pub fn parse_progression(text: &str) -> PResult<Progression> {
    let lines = body_lines(text);
    let Some((hline, header)) = lines.first() else {
        return err(1, "empty progression file");
    };
    match header[0] {
        "gap" => {
            if header.len() != 3 {
                return err(*hline, "expected `gap k d`");
            }
            let k = parse_int(*hline, header[1])? as usize;
            let d = parse_int(*hline, header[2])? as usize;
            if lines.len() < 2 + d {
                return err(*hline, "missing base or step lines");
            }
            let (bline, btoks) = &lines[1];
            if btoks.len() != k {
                return err(*bline, format!("base needs {k} coordinates"));
            }
            let base = parse_rats(*bline, btoks)?;
            let mut steps = Vec::with_capacity(d);
            for (ln, toks) in &lines[2..2 + d] {
                if toks.len() != k {
                    return err(*ln, format!("step needs {k} coordinates"));
                }
                steps.push(parse_rats(*ln, toks)?);
            }
            let mut lengths = Vec::with_capacity(d);
            if d > 0 {
                let Some((ln, toks)) = lines.get(2 + d) else {
                    return err(*hline, "missing lengths line");
                };
                if toks.len() != d {
                    return err(*ln, format!("expected {d} lengths"));
                }
                for t in toks {
                    let v = parse_int(*ln, t)?;
                    if v < 1 {
                        return err(*ln, "lengths must be positive");
                    }
                    lengths.push(v as u32);
                }
            }
            Gap::new(base, steps, lengths)
                .map(Progression::Gap)
                .map_err(|e| ParseError { line: *hline, message: e.to_string() })
        }
        "convexprog" => {
            if header.len() != 3 {
                return err(*hline, "expected `convexprog d k`");
            }
            let d = parse_int(*hline, header[1])? as usize;
            let k = parse_int(*hline, header[2])? as usize;
            if d == 0 {
                return err(*hline, "convexprog files need d >= 1");
            }
            let mut ineqs: Vec<(QVec, Rat)> = Vec::new();
            let mut phi: Vec<QVec> = Vec::new();
            for (ln, toks) in &lines[1..] {
                if toks.len() == d + 1 {
                    if !phi.is_empty() {
                        return err(*ln, "inequality row after phi rows");
                    }
                    let rhs = parse_rat(*ln, toks[0])?;
                    let row = parse_rats(*ln, &toks[1..])?;
                    ineqs.push((row, rhs));
                } else if toks.len() == d {
                    phi.push(parse_rats(*ln, toks)?);
                } else {
                    return err(*ln, format!("expected {} or {} entries", d + 1, d));
                }
            }
            if ineqs.is_empty() {
                return err(*hline, "no inequality rows");
            }
            if phi.len() != k {
                return err(*hline, format!("expected {k} phi rows, found {}", phi.len()));
            }
            let mut cp = ConvexProgression { ineqs, phi, symmetric: false };
            cp.symmetric = cp.verify_symmetric().unwrap_or(false);
            Ok(Progression::Convex(cp))
        }
        other => err(*hline, format!("unknown progression kind `{other}`")),
    }
}

pub fn write_gap(g: &Gap) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "gap {} {}", g.k(), g.d());
    let _ = writeln!(out, "{}", join_rats(&g.base));
    for s in &g.steps {
        let _ = writeln!(out, "{}", join_rats(s));
    }
    if g.d() > 0 {
        let lens: Vec<String> = g.lengths.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(out, "{}", lens.join(" "));
    }
    out
}

pub fn write_convex(c: &ConvexProgression) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "convexprog {} {}", c.d(), c.k());
    for (row, rhs) in &c.ineqs {
        let _ = writeln!(out, "{rhs} {}", join_rats(row));
    }
    for row in &c.phi {
        let _ = writeln!(out, "{}", join_rats(row));
    }
    out
}

/// A 1-D symmetric interval union gives the segment container used by the
/// merge and snap front ends.
pub fn symmetric_radius(u: &IntervalUnion) -> Option<Rat> {
    if !u.is_symmetric() || u.components().len() != 1 {
        return None;
    }
    let (_, hi) = u.components()[0].clone();
    if hi.is_negative() {
        return None;
    }
    Some(hi)
}
