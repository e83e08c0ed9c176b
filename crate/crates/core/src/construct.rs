//! Constructive steps for progression containers: exact stretch width along
//! a lattice direction, merging a close pair of progression points into a
//! lower-dimensional container, snapping near-relations between translate
//! points to exact identities, separation boosting, and greedy Ruzsa covers.
//!
//! Locality sets enter as membership oracles for the base set L; rational
//! dilates r*L are tested by scaling the query point by 1/r.

use crate::error::{Error, Result};
use crate::hull::multisets;
use crate::interval::IntervalUnion;
use crate::lattice::LatticeSet;
use crate::lp::{self, Lp, LpOutcome};
use crate::polycube::Polycube;
use crate::progression::{ConvexProgression, Zonotope};
use crate::rat::{rceil, rfloor, rabs, rint, rzero, QVec, Rat, ZVec};
use crate::set_value::SetValue;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = rzero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

fn qzero(n: usize) -> QVec {
    vec![rzero(); n]
}

fn qadd(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn qsub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn qscale(s: &Rat, v: &[Rat]) -> QVec {
    v.iter().map(|x| s * x).collect()
}

fn zvec_to_q(z: &[i64]) -> QVec {
    z.iter().map(|&c| rint(c)).collect()
}

fn rat_u128(v: u128) -> Rat {
    Rat::from(BigInt::from(v))
}

/// Exact width of a bounded polytope along a direction: the largest m with
/// x and x + m*rho both inside, plus a normal a with a.rho = 1 whose value
/// band over the polytope is exactly [offset, offset + m]. The upper face
/// {a.y = offset + m} separates the interior from its m*rho translate.
#[derive(Debug, Clone)]
pub struct StretchProject {
    pub m: Rat,
    pub normal: QVec,
    pub offset: Rat,
}

pub fn stretch_and_project(ineqs: &[(QVec, Rat)], rho: &QVec) -> Result<StretchProject> {
    let d = rho.len();
    if d == 0 || rho.iter().all(|c| c.is_zero()) {
        return Err(Error::Precondition("direction must be nonzero".into()));
    }
    for (a, _) in ineqs {
        if a.len() != d {
            return Err(Error::DimensionMismatch { left: a.len(), right: d });
        }
    }
    let rows: Vec<QVec> = ineqs.iter().map(|(a, _)| a.clone()).collect();
    let rhs: Vec<Rat> = ineqs.iter().map(|(_, b)| b.clone()).collect();
    for coord in 0..d {
        lp::coordinate_bounds(&rows, &rhs, d, coord)?;
    }

    // Maximize m subject to x in C and x + m*rho in C.
    let mut a_ub: Vec<QVec> = Vec::with_capacity(2 * ineqs.len());
    let mut b_ub: Vec<Rat> = Vec::with_capacity(2 * ineqs.len());
    for (a, b) in ineqs {
        let mut row = a.clone();
        row.push(rzero());
        a_ub.push(row);
        b_ub.push(b.clone());
    }
    for (a, b) in ineqs {
        let mut row = a.clone();
        row.push(dot(a, rho));
        a_ub.push(row);
        b_ub.push(b.clone());
    }
    let mut objective = vec![rzero(); d + 1];
    objective[d] = Rat::one();
    let out = lp::solve(&Lp {
        n: d + 1,
        objective,
        a_ub,
        b_ub,
        a_eq: Vec::new(),
        b_eq: Vec::new(),
    });
    let (m, dual) = match out {
        LpOutcome::Optimal { value, dual_ub, .. } => (value, dual_ub),
        LpOutcome::Infeasible => return Err(Error::Infeasible("empty polytope")),
        LpOutcome::Unbounded => return Err(Error::Unbounded),
    };

    // Candidate normals: the dual combination of the shifted rows, then each
    // facet normal with positive rho-component rescaled to a.rho = 1. The
    // first candidate whose vertex band has width exactly m is certified.
    let mut candidates: Vec<QVec> = Vec::new();
    let mut combo = vec![rzero(); d];
    for (i, (a, _)) in ineqs.iter().enumerate() {
        let w = &dual[ineqs.len() + i];
        if !w.is_zero() {
            for (cj, aj) in combo.iter_mut().zip(a) {
                *cj += w * aj;
            }
        }
    }
    candidates.push(combo);
    for (a, _) in ineqs {
        let s = dot(a, rho);
        if s.is_positive() {
            candidates.push(qscale(&s.recip(), a));
        }
    }
    let verts = lp::enumerate_vertices(&rows, &rhs, d);
    if verts.is_empty() {
        return Err(Error::Infeasible("empty polytope"));
    }
    for a in candidates {
        if dot(&a, rho) != Rat::one() {
            continue;
        }
        let mut lo = dot(&a, &verts[0]);
        let mut hi = lo.clone();
        for v in &verts[1..] {
            let t = dot(&a, v);
            if t < lo {
                lo = t;
            } else if t > hi {
                hi = t;
            }
        }
        if &hi - &lo == m {
            return Ok(StretchProject { m, normal: a, offset: lo });
        }
    }
    Err(Error::Precondition("no exact width certificate found".into()))
}

/// Output of a successful close-pair merge: the pair and its difference
/// direction, the stretch m of the dilated body along it, and the
/// replacement progression/container with one fewer lattice dimension.
#[derive(Debug, Clone)]
pub struct MergeOutcome {
    pub rho: ZVec,
    pub rho_prime: ZVec,
    pub m: Rat,
    pub normal: QVec,
    pub p_prime: ConvexProgression,
    pub q_prime: Zonotope,
    pub p_count: u64,
    pub p_prime_count: u64,
    pub size_ratio: Rat,
}

#[derive(Debug, Clone)]
pub enum MergeResult {
    Merged(MergeOutcome),
    NoClosePair,
}

pub fn merge_step(
    p: &ConvexProgression,
    q: &Zonotope,
    s: i64,
    l0: i64,
    budget: u64,
) -> Result<MergeResult> {
    if !p.symmetric {
        return Err(Error::NotSymmetric);
    }
    if !q.is_centered() {
        return Err(Error::NotSymmetric);
    }
    if p.k() != q.k() {
        return Err(Error::DimensionMismatch { left: p.k(), right: q.k() });
    }
    if s < 1 || l0 < 1 {
        return Err(Error::Precondition("dilation parameters must be positive".into()));
    }
    if q.gens.len() >= 24 {
        return Err(Error::Precondition("too many container generators".into()));
    }
    let d = p.d();
    let body = p.dilate_body(&rint(s));
    let pts = body.lattice_points(budget)?;
    let n = pts.len() as u64;
    if n.saturating_mul(n) > budget {
        return Err(Error::BudgetExceeded { needed: n.saturating_mul(n), budget });
    }

    // First close pair in lexicographic scan order wins.
    let dil = rint(l0);
    let mut pair: Option<(&ZVec, &ZVec)> = None;
    'scan: for r in &pts {
        for rp in &pts {
            if r == rp {
                continue;
            }
            let diff = qsub(&p.apply_phi(r), &p.apply_phi(rp));
            if q.contains_dilated(&diff, &dil) {
                pair = Some((r, rp));
                break 'scan;
            }
        }
    }
    let Some((rho, rho_prime)) = pair else {
        return Ok(MergeResult::NoClosePair);
    };
    let delta: ZVec = rho.iter().zip(rho_prime).map(|(a, b)| a - b).collect();
    let delta_q = zvec_to_q(&delta);
    let sp = stretch_and_project(&body.ineqs, &delta_q)?;

    // Split off the delta direction: U is unimodular with U*delta0 = e_d,
    // so lattice lines along delta become vertical and the shadow body is
    // the Fourier-Motzkin elimination of the last transformed coordinate.
    let delta0 = primitive_direction(&delta)?;
    let (_, uinv) = unimodular_to_last(&delta0)?;
    let mut tineqs: Vec<(QVec, Rat)> = Vec::with_capacity(body.ineqs.len());
    for (a, b) in &body.ineqs {
        let row: QVec = (0..d)
            .map(|j| {
                let mut acc = rzero();
                for (ai, ui) in a.iter().zip(&uinv) {
                    acc += ai * &rint(ui[j]);
                }
                acc
            })
            .collect();
        tineqs.push((row, b.clone()));
    }
    let shadow = fm_eliminate_last(&tineqs)?;

    // Each vertical lattice line meets the section through the origin with
    // normal sp.normal in one point; phi of that point is linear in the
    // line's d-1 transformed coordinates.
    let kk = p.k();
    let mut phi_prime: Vec<QVec> = vec![Vec::with_capacity(d.saturating_sub(1)); kk];
    for j in 0..d.saturating_sub(1) {
        let col: QVec = uinv.iter().map(|row| rint(row[j])).collect();
        let t = dot(&sp.normal, &col);
        let w: QVec = col
            .iter()
            .zip(&delta)
            .map(|(ci, &di)| ci - &(&t * &rint(di)))
            .collect();
        for (pr, phir) in phi_prime.iter_mut().zip(&p.phi) {
            pr.push(dot(phir, &w));
        }
    }
    let p_prime = ConvexProgression { ineqs: shadow, phi: phi_prime, symmetric: true };
    let q_prime = q.add_segment(&p.apply_phi(&delta), &sp.m);

    let (p_vals, _) = p.values(budget)?;
    let (pp_vals, _) = p_prime.values(budget)?;
    let qv = q.volume();
    if !qv.is_positive() {
        return Err(Error::ZeroMeasure);
    }
    let size_ratio = &(&rint(pp_vals.len() as i64) * &q_prime.volume())
        / &(&rint(p_vals.len() as i64) * &qv);

    // Containment P+Q <= P'+Q': each progression value must have a single
    // translate of Q' absorbing its whole Q-fiber, so checking the
    // container's sign vertices suffices.
    let qverts = zonotope_vertices(q);
    for pv in &p_vals {
        let ok = pp_vals.iter().any(|pp| {
            qverts.iter().all(|v| {
                let w: QVec = (0..kk).map(|i| &(&pv[i] + &v[i]) - &pp[i]).collect();
                q_prime.contains(&w)
            })
        });
        if !ok {
            return Err(Error::NotInPPlusQ(format!(
                "progression value {pv:?} has no absorbing translate"
            )));
        }
    }

    Ok(MergeResult::Merged(MergeOutcome {
        rho: rho.clone(),
        rho_prime: rho_prime.clone(),
        m: sp.m,
        normal: sp.normal,
        p_prime,
        q_prime,
        p_count: p_vals.len() as u64,
        p_prime_count: pp_vals.len() as u64,
        size_ratio,
    }))
}

fn primitive_direction(delta: &[i64]) -> Result<ZVec> {
    let mut g: i64 = 0;
    for &c in delta {
        g = g.gcd(&c);
    }
    if g == 0 {
        return Err(Error::Precondition("zero direction".into()));
    }
    Ok(delta.iter().map(|&c| c / g).collect())
}

// Integer row reduction driving delta0 to the last unit vector; returns
// (U, U^-1) with U*delta0 = e_d. Row operations on U are mirrored as
// column operations on U^-1.
fn unimodular_to_last(delta0: &[i64]) -> Result<(Vec<ZVec>, Vec<ZVec>)> {
    let d = delta0.len();
    let mut v: ZVec = delta0.to_vec();
    let mut u: Vec<ZVec> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut uinv = u.clone();
    let overflow = || Error::Precondition("integer overflow in lattice reduction".into());
    loop {
        let nz: Vec<usize> = (0..d).filter(|&i| v[i] != 0).collect();
        if nz.len() == 1 {
            let i = nz[0];
            if v[i].abs() != 1 {
                return Err(Error::Precondition("direction not primitive".into()));
            }
            if v[i] == -1 {
                for x in u[i].iter_mut() {
                    *x = -*x;
                }
                for row in uinv.iter_mut() {
                    row[i] = -row[i];
                }
            }
            if i != d - 1 {
                u.swap(i, d - 1);
                for row in uinv.iter_mut() {
                    row.swap(i, d - 1);
                }
            }
            return Ok((u, uinv));
        }
        let &j = nz.iter().min_by_key(|&&i| v[i].abs()).unwrap();
        for &i in &nz {
            if i == j {
                continue;
            }
            let qq = v[i].div_euclid(v[j]);
            if qq == 0 {
                continue;
            }
            v[i] = v[i]
                .checked_sub(qq.checked_mul(v[j]).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
            for col in 0..d {
                let t = qq.checked_mul(u[j][col]).ok_or_else(overflow)?;
                u[i][col] = u[i][col].checked_sub(t).ok_or_else(overflow)?;
            }
            for row in uinv.iter_mut() {
                let t = qq.checked_mul(row[i]).ok_or_else(overflow)?;
                row[j] = row[j].checked_add(t).ok_or_else(overflow)?;
            }
        }
    }
}

// Shadow of {a.y <= b} under dropping the last coordinate: positive and
// negative rows in that coordinate pair up. Both signs must occur, which a
// bounded body guarantees.
fn fm_eliminate_last(ineqs: &[(QVec, Rat)]) -> Result<Vec<(QVec, Rat)>> {
    let d = ineqs.first().map(|(a, _)| a.len()).unwrap_or(0);
    if d == 0 {
        return Err(Error::Precondition("nothing to eliminate".into()));
    }
    let mut out: Vec<(QVec, Rat)> = Vec::new();
    let mut upper: Vec<&(QVec, Rat)> = Vec::new();
    let mut lower: Vec<&(QVec, Rat)> = Vec::new();
    for row in ineqs {
        let c = &row.0[d - 1];
        if c.is_zero() {
            out.push((row.0[..d - 1].to_vec(), row.1.clone()));
        } else if c.is_positive() {
            upper.push(row);
        } else {
            lower.push(row);
        }
    }
    if upper.is_empty() || lower.is_empty() {
        return Err(Error::Unbounded);
    }
    for (au, bu) in &upper {
        for (al, bl) in &lower {
            let cu = &au[d - 1];
            let cl = &al[d - 1];
            let row: QVec = (0..d - 1)
                .map(|j| &(&au[j] * &-cl.clone()) + &(&al[j] * cu))
                .collect();
            let b = &(bu * &-cl.clone()) + &(bl * cu);
            out.push((row, b));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn zonotope_vertices(q: &Zonotope) -> Vec<QVec> {
    let g = q.gens.len();
    let mut out: Vec<QVec> = Vec::with_capacity(1 << g);
    for mask in 0u32..(1u32 << g) {
        let mut v = q.center.clone();
        for (i, gen) in q.gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (vj, gj) in v.iter_mut().zip(gen) {
                    *vj += gj;
                }
            } else {
                for (vj, gj) in v.iter_mut().zip(gen) {
                    *vj -= gj;
                }
            }
        }
        out.push(v);
    }
    out.sort();
    out.dedup();
    out
}

/// Near-relation between two s-fold multisets of input points, recorded
/// with the residual sum difference.
#[derive(Debug, Clone)]
pub struct Relation {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub rhs: QVec,
}

/// Adjustments turning every near-relation into an exact identity, with
/// the elimination ladder's certificate constants: each adjustment lies in
/// (c/c_prime)*L, and dilate is the largest per-point claim.
#[derive(Debug, Clone)]
pub struct SnapCertificate {
    pub f: Vec<QVec>,
    pub relations: Vec<Relation>,
    pub c: u64,
    pub c_prime: u64,
    pub dilate: Rat,
}

pub fn snap<F>(x: &[QVec], l: &F, s: u32, m0: u64, n0: u64, budget: u64) -> Result<SnapCertificate>
where
    F: Fn(&QVec) -> Result<bool>,
{
    let t = x.len();
    if t == 0 {
        return Err(Error::Empty("point list"));
    }
    let kk = x[0].len();
    for v in x {
        if v.len() != kk {
            return Err(Error::DimensionMismatch { left: v.len(), right: kk });
        }
    }
    if s == 0 || m0 == 0 || n0 == 0 {
        return Err(Error::Precondition("multiset size and ladder bounds must be positive".into()));
    }
    let tuples = multisets(t, s);
    let mm = tuples.len() as u64;
    let calls = mm * mm.saturating_sub(1) / 2;
    if calls > budget {
        return Err(Error::BudgetExceeded { needed: calls, budget });
    }

    // Accepted near-relations form an exactly consistent system: the input
    // points themselves solve it, so elimination never meets 0 = nonzero.
    let mut relations: Vec<Relation> = Vec::new();
    let mut eqs: Vec<(Vec<Rat>, QVec, Rat)> = Vec::new();
    for i in 0..tuples.len() {
        for j in i + 1..tuples.len() {
            let mut co = vec![0i64; t];
            for &ix in &tuples[i] {
                co[ix] += 1;
            }
            for &iy in &tuples[j] {
                co[iy] -= 1;
            }
            if co.iter().all(|&c| c == 0) {
                continue;
            }
            let mut rhs = qzero(kk);
            for &ix in &tuples[i] {
                rhs = qadd(&rhs, &x[ix]);
            }
            for &iy in &tuples[j] {
                rhs = qsub(&rhs, &x[iy]);
            }
            if l(&rhs)? {
                for &c in &co {
                    if u128::from(c.unsigned_abs()) * u128::from(n0) > u128::from(m0) {
                        return Err(Error::Precondition(
                            "relation coefficient outside declared ladder bound".into(),
                        ));
                    }
                }
                relations.push(Relation {
                    xs: tuples[i].clone(),
                    ys: tuples[j].clone(),
                    rhs: rhs.clone(),
                });
                // An already-exact relation carries a zero dilate claim.
                let dil = if rhs.iter().all(|r| r.is_zero()) { rzero() } else { Rat::one() };
                eqs.push((co.iter().map(|&c| rint(c)).collect(), rhs, dil));
            }
        }
    }

    // One variable per pass, highest index first, always via the first row
    // still containing it. The (m, n) ladder tracks coefficient growth and
    // multiplies out to the certificate constant.
    let overflow = || Error::Precondition("certificate constant overflow".into());
    let mut pivots: Vec<Option<(Vec<Rat>, QVec, Rat)>> = vec![None; t];
    let mut mcur = u128::from(m0);
    let mut ncur = u128::from(n0);
    let mut c_total: u128 = 1;
    for k in (1..=t).rev() {
        let vi = k - 1;
        let Some(pos) = eqs.iter().position(|(co, _, _)| !co[vi].is_zero()) else {
            continue;
        };
        let eq0 = eqs.remove(pos);
        let c0 = eq0.0[vi].clone();
        let num = &c0 * &rat_u128(ncur);
        if !num.is_integer() {
            return Err(Error::Precondition("pivot coefficient outside ladder".into()));
        }
        let m_pivot = num.to_integer().abs().to_u128().ok_or_else(overflow)?;
        for eq in eqs.iter_mut() {
            if eq.0[vi].is_zero() {
                continue;
            }
            let lam = &eq.0[vi] / &c0;
            for (ci, pi) in eq.0.iter_mut().zip(&eq0.0) {
                *ci = &*ci - &(&lam * pi);
            }
            eq.1 = qsub(&eq.1, &qscale(&lam, &eq0.1));
            eq.2 = &eq.2 + &(&rabs(&lam) * &eq0.2);
        }
        let mut inconsistent = false;
        eqs.retain(|(co, rhs, _)| {
            if co.iter().all(|c| c.is_zero()) {
                if rhs.iter().any(|r| !r.is_zero()) {
                    inconsistent = true;
                }
                false
            } else {
                true
            }
        });
        if inconsistent {
            return Err(Error::Precondition("inconsistent relation system".into()));
        }
        pivots[vi] = Some(eq0);
        if k >= 2 {
            let msum = mcur.checked_add(ncur).ok_or_else(overflow)?;
            c_total = c_total
                .checked_mul(k as u128)
                .and_then(|v| v.checked_mul(mcur))
                .and_then(|v| v.checked_mul(msum))
                .ok_or_else(overflow)?;
            mcur = mcur.checked_mul(msum).ok_or_else(overflow)?;
            ncur = ncur.checked_mul(m_pivot).ok_or_else(overflow)?;
        }
    }
    c_total = c_total.checked_mul(core::cmp::max(mcur, ncur)).ok_or_else(overflow)?;
    let c = u64::try_from(c_total).map_err(|_| overflow())?;

    // Back-substitute ascending: each pivot row only involves resolved or
    // free (zeroed) variables below it.
    let mut p: Vec<QVec> = vec![qzero(kk); t];
    let mut qd: Vec<Rat> = vec![rzero(); t];
    for vi in 0..t {
        let Some((co, rhs, dil)) = &pivots[vi] else {
            continue;
        };
        let mut acc = rhs.clone();
        let mut dacc = dil.clone();
        for j in 0..t {
            if j == vi || co[j].is_zero() {
                continue;
            }
            acc = qsub(&acc, &qscale(&co[j], &p[j]));
            dacc += &rabs(&co[j]) * &qd[j];
        }
        let inv = co[vi].recip();
        p[vi] = qscale(&inv, &acc);
        qd[vi] = &dacc * &rabs(&inv);
    }
    let f: Vec<QVec> = p.iter().map(|v| qscale(&-Rat::one(), v)).collect();
    let dilate = qd.iter().cloned().fold(rzero(), |a, b| if b > a { b } else { a });
    let c_prime = if dilate <= Rat::one() {
        c
    } else {
        rfloor(&(&rat_u128(u128::from(c)) / &dilate))
            .to_u64()
            .unwrap_or(1)
            .clamp(1, c)
    };

    // Post-verify: every adjustment passes the dilated membership test and
    // every relation is exactly closed.
    let shrink = Rat::new(BigInt::from(c_prime), BigInt::from(c));
    for (i, fv) in f.iter().enumerate() {
        if !l(&qscale(&shrink, fv))? {
            return Err(Error::Precondition(format!(
                "adjustment {i} fails dilated membership"
            )));
        }
    }
    for r in &relations {
        let mut lhs = qzero(kk);
        for &ix in &r.xs {
            lhs = qadd(&lhs, &qadd(&x[ix], &f[ix]));
        }
        let mut rhsv = qzero(kk);
        for &iy in &r.ys {
            rhsv = qadd(&rhsv, &qadd(&x[iy], &f[iy]));
        }
        if lhs != rhsv {
            return Err(Error::Precondition("relation not exact after adjustment".into()));
        }
    }
    Ok(SnapCertificate { f, relations, c, c_prime, dilate })
}

/// Pairwise distance table and boost factor gamma. A distance is the
/// smallest dilation level at which the pair difference enters the scaled
/// set; None marks pairs beyond the scan cap gamma_star.
#[derive(Debug, Clone)]
pub struct GammaReport {
    pub gamma: u64,
    pub gamma_star: u64,
    pub distances: Vec<(usize, usize, Option<u64>)>,
}

pub fn separation_gamma<F>(
    y: &[QVec],
    l: &F,
    c: u64,
    lambda: u64,
    budget: u64,
) -> Result<GammaReport>
where
    F: Fn(&QVec) -> Result<bool>,
{
    if c == 0 || lambda == 0 {
        return Err(Error::Precondition("certificate bounds must be positive".into()));
    }
    let t = y.len() as u64;
    let pairs = t * t.saturating_sub(1) / 2;
    let gamma_star = lambda
        .checked_pow(u32::try_from(pairs).unwrap_or(u32::MAX))
        .ok_or(Error::Undecided("separation scan cap overflows u64"))?;
    let cap = gamma_star;
    let mut calls: u64 = 0;
    let bump = |calls: &mut u64| -> Result<()> {
        *calls += 1;
        if *calls > budget {
            return Err(Error::BudgetExceeded { needed: *calls, budget });
        }
        Ok(())
    };
    let mut distances: Vec<(usize, usize, Option<u64>)> = Vec::new();
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            let diff = qsub(&y[i], &y[j]);
            let mut found = None;
            'scan: for ell in 1..=cap {
                for cp in 1..=c {
                    bump(&mut calls)?;
                    let sc = Rat::new(BigInt::from(cp), BigInt::from(c) * BigInt::from(ell));
                    if l(&qscale(&sc, &diff))? {
                        found = Some(ell);
                        break 'scan;
                    }
                }
            }
            distances.push((i, j, found));
        }
    }

    let mut finite: Vec<u64> = distances.iter().filter_map(|(_, _, d)| *d).collect();
    finite.sort_unstable();
    finite.dedup();
    let beyond = distances.iter().any(|(_, _, d)| d.is_none());
    let gamma = if finite.is_empty() {
        if beyond && cap < lambda {
            return Err(Error::BudgetExceeded { needed: lambda, budget: cap });
        }
        1
    } else if finite[0] > lambda {
        1
    } else {
        let mut gap = None;
        for w in finite.windows(2) {
            if w[1] > lambda.saturating_mul(w[0]) {
                gap = Some(w[0]);
                break;
            }
        }
        match gap {
            Some(v) => v,
            None => {
                let last = *finite.last().unwrap();
                if beyond {
                    if cap >= lambda.saturating_mul(last) {
                        last
                    } else {
                        return Err(Error::BudgetExceeded {
                            needed: lambda.saturating_mul(last),
                            budget: cap,
                        });
                    }
                } else {
                    gamma_star
                }
            }
        }
    };

    // The boost property: a pair within the lambda*gamma level is already
    // within the gamma level.
    for (i, j, _) in &distances {
        let diff = qsub(&y[*i], &y[*j]);
        let coarse = BigInt::from(c) * BigInt::from(lambda) * BigInt::from(gamma);
        let mut premise = false;
        for cp in 1..=c {
            bump(&mut calls)?;
            if l(&qscale(&Rat::new(BigInt::from(cp), coarse.clone()), &diff))? {
                premise = true;
                break;
            }
        }
        if premise {
            let fine = BigInt::from(c) * BigInt::from(gamma);
            let mut conclusion = false;
            for cp in 1..=c {
                bump(&mut calls)?;
                if l(&qscale(&Rat::new(BigInt::from(cp), fine.clone()), &diff))? {
                    conclusion = true;
                    break;
                }
            }
            if !conclusion {
                return Err(Error::Precondition(format!(
                    "separation boost fails for pair ({i}, {j})"
                )));
            }
        }
    }
    Ok(GammaReport { gamma, gamma_star, distances })
}

// Worst-case certificate constant of the elimination ladder: one factor
// k*m*(m+n) per level with (m, n) -> (m(m+n), nm), base max(m, n).
fn claim_constant(k: u128, m: u128, n: u128) -> Option<u128> {
    if k <= 1 {
        return Some(core::cmp::max(m, n));
    }
    let msum = m.checked_add(n)?;
    let fac = k.checked_mul(m)?.checked_mul(msum)?;
    let child = claim_constant(k - 1, m.checked_mul(msum)?, n.checked_mul(m)?)?;
    fac.checked_mul(child)
}

/// Separation-boosted snap: relations are sought against the widened
/// dilate c*gamma*L, so s-fold sums agreeing at the coarse mu scale are
/// forced to exact equality.
#[derive(Debug, Clone)]
pub struct BoostedCertificate {
    pub gamma: u64,
    pub gamma_star: u64,
    pub c_bound: u64,
    pub snap: SnapCertificate,
}

pub fn boosted_snap<F>(x: &[QVec], l: &F, s: u32, mu: u64, budget: u64) -> Result<BoostedCertificate>
where
    F: Fn(&QVec) -> Result<bool>,
{
    if x.is_empty() {
        return Err(Error::Empty("point list"));
    }
    if s == 0 || mu == 0 {
        return Err(Error::Precondition("parameters must be positive".into()));
    }
    let kk = x[0].len();
    let tuples = multisets(x.len(), s);
    let mm = tuples.len() as u64;
    let overflow = || Error::Precondition("certificate constant overflow".into());

    // The s-fold sums drive both the a-priori certificate bound and the
    // separation scan.
    let mut sums: Vec<QVec> = tuples
        .iter()
        .map(|tu| tu.iter().fold(qzero(kk), |acc, &i| qadd(&acc, &x[i])))
        .collect();
    sums.sort();
    sums.dedup();
    let c_bound128 = claim_constant(sums.len() as u128, u128::from(s), 1).ok_or_else(overflow)?;
    let c_bound = u64::try_from(c_bound128).map_err(|_| overflow())?;
    let needed = mm * mm.saturating_sub(1) / 2 * c_bound;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let boost = separation_gamma(&sums, l, c_bound, mu, budget)?;
    let gamma = boost.gamma;

    let widen = Rat::new(BigInt::one(), BigInt::from(c_bound) * BigInt::from(gamma));
    let lwide = |v: &QVec| l(&qscale(&widen, v));
    let cert = snap(x, &lwide, s, u64::from(s), 1, budget)?;

    // Boosted property: near-relations at the coarse mu scale are exactly
    // closed by the adjustments.
    let denom = BigInt::from(c_bound)
        * BigInt::from(mu)
        * BigInt::from(mu)
        * BigInt::from(gamma)
        * BigInt::from(gamma);
    for i in 0..tuples.len() {
        for j in i + 1..tuples.len() {
            let mut diff = qzero(kk);
            for &ix in &tuples[i] {
                diff = qadd(&diff, &x[ix]);
            }
            for &iy in &tuples[j] {
                diff = qsub(&diff, &x[iy]);
            }
            let mut premise = false;
            for cp in 1..=c_bound {
                let sc = Rat::new(
                    BigInt::from(cp) * BigInt::from(mu) * BigInt::from(gamma),
                    denom.clone(),
                );
                if l(&qscale(&sc, &diff))? {
                    premise = true;
                    break;
                }
            }
            if premise {
                let mut lhs = qzero(kk);
                for &ix in &tuples[i] {
                    lhs = qadd(&lhs, &qadd(&x[ix], &cert.f[ix]));
                }
                let mut rhs = qzero(kk);
                for &iy in &tuples[j] {
                    rhs = qadd(&rhs, &qadd(&x[iy], &cert.f[iy]));
                }
                if lhs != rhs {
                    return Err(Error::Precondition(
                        "boosted relation not exact after adjustment".into(),
                    ));
                }
            }
        }
    }
    Ok(BoostedCertificate { gamma, gamma_star: boost.gamma_star, c_bound, snap: cert })
}

/// Greedy maximal packing cover: X with A inside X+B-B. Continuous
/// instances pack translates with disjoint interiors (strict disjointness
/// has no attainable greedy minimum on the line); lattice instances pack
/// strictly disjoint.
#[derive(Debug, Clone)]
pub struct CoverReport {
    pub points: Vec<Rat>,
    pub bound: Rat,
    pub covered: bool,
}

pub fn ruzsa_cover(a: &SetValue, b: &SetValue, budget: u64) -> Result<CoverReport> {
    match (a, b) {
        (SetValue::Interval(ai), SetValue::Interval(bi)) => cover_intervals(ai, bi, budget),
        (SetValue::Lattice(al), SetValue::Lattice(bl)) => cover_lattice(al, bl, budget),
        (SetValue::Cube(_), _) | (_, SetValue::Cube(_)) => Err(Error::Precondition(
            "covering needs one-dimensional set values".into(),
        )),
        _ => Err(Error::KindMismatch),
    }
}

fn cover_intervals(a: &IntervalUnion, b: &IntervalUnion, budget: u64) -> Result<CoverReport> {
    if !b.measure().is_positive() {
        return Err(Error::ZeroMeasure);
    }
    let mut points: Vec<Rat> = Vec::new();
    let mut occupied: Vec<(Rat, Rat)> = Vec::new();
    loop {
        if points.len() as u64 > budget {
            return Err(Error::BudgetExceeded { needed: points.len() as u64, budget });
        }
        // Open set of x where (x+B) overlaps the interior of the occupied
        // region; least allowed point of A, if any, extends the packing.
        let mut forbidden: Vec<(Rat, Rat)> = Vec::new();
        for (ulo, uhi) in &occupied {
            for (blo, bhi) in b.components() {
                let lo = ulo - bhi;
                let hi = uhi - blo;
                if hi > lo {
                    forbidden.push((lo, hi));
                }
            }
        }
        forbidden.sort();
        let mut next: Option<Rat> = None;
        'comp: for (alo, ahi) in a.components() {
            let mut pos = alo.clone();
            for (flo, fhi) in &forbidden {
                if flo < &pos && &pos < fhi {
                    pos = fhi.clone();
                }
            }
            if &pos <= ahi {
                next = Some(pos);
                break 'comp;
            }
        }
        let Some(x) = next else {
            break;
        };
        let mut parts = occupied;
        for (blo, bhi) in b.components() {
            parts.push((&x + blo, &x + bhi));
        }
        occupied = IntervalUnion::new(parts)?.components().to_vec();
        points.push(x);
    }

    let bound = &a.sumset(b).measure() / &b.measure();
    let neg: Vec<(Rat, Rat)> = b
        .components()
        .iter()
        .map(|(lo, hi)| (-hi.clone(), -lo.clone()))
        .collect();
    let diff = b.sumset(&IntervalUnion::new(neg)?);
    let mut cover_parts: Vec<(Rat, Rat)> = Vec::new();
    for x in &points {
        for (lo, hi) in diff.components() {
            cover_parts.push((x + lo, x + hi));
        }
    }
    let cover = IntervalUnion::new(cover_parts)?;
    let covered = a.components().iter().all(|(alo, ahi)| {
        cover
            .components()
            .iter()
            .any(|(clo, chi)| clo <= alo && ahi <= chi)
    });
    Ok(CoverReport { points, bound, covered })
}

fn cover_lattice(al: &LatticeSet, bl: &LatticeSet, budget: u64) -> Result<CoverReport> {
    if al.dim() != 1 || bl.dim() != 1 {
        return Err(Error::Precondition("lattice covering is one-dimensional".into()));
    }
    if bl.is_empty() {
        return Err(Error::ZeroMeasure);
    }
    let apts: Vec<i64> = al.points().iter().map(|p| p[0]).collect();
    let bpts: Vec<i64> = bl.points().iter().map(|p| p[0]).collect();
    let mut occupied: BTreeSet<i64> = BTreeSet::new();
    let mut chosen: Vec<i64> = Vec::new();
    for &x in &apts {
        if chosen.len() as u64 > budget {
            return Err(Error::BudgetExceeded { needed: chosen.len() as u64, budget });
        }
        if bpts.iter().all(|&bb| !occupied.contains(&(x + bb))) {
            for &bb in &bpts {
                occupied.insert(x + bb);
            }
            chosen.push(x);
        }
    }
    let ab = al.sumset(bl)?;
    let bound = Rat::new(BigInt::from(ab.card()), BigInt::from(bl.card()));
    let mut diffs: BTreeSet<i64> = BTreeSet::new();
    for &b1 in &bpts {
        for &b2 in &bpts {
            diffs.insert(b1 - b2);
        }
    }
    let covered = apts
        .iter()
        .all(|&av| chosen.iter().any(|&x| diffs.contains(&(av - x))));
    Ok(CoverReport { points: chosen.iter().map(|&x| rint(x)).collect(), bound, covered })
}

/// Over-approximate check of the line-segment sumset bound: the measure of
/// C + [-l, l]x against (2lk+1)|C|, with the segment replaced by its
/// bounding box on C's grid. Sound for the <= direction; exact for k = 1.
#[derive(Debug, Clone)]
pub struct LineSumReport {
    pub sum_measure: Rat,
    pub bound: Rat,
    pub verified: bool,
}

pub fn line_sum_check(c: &Polycube, x: &QVec, l: u32, budget: u64) -> Result<LineSumReport> {
    let k = c.dim();
    if k == 0 {
        return Err(Error::Precondition("body must have positive dimension".into()));
    }
    if x.len() != k {
        return Err(Error::DimensionMismatch { left: x.len(), right: k });
    }
    if !point_in_polycube(c, &qzero(k)) || !point_in_polycube(c, x) {
        return Err(Error::Precondition("segment endpoints must lie in the body".into()));
    }
    let scale = c.scale();
    let ell = rint(i64::from(l));
    let mut ranges: Vec<(i64, i64)> = Vec::with_capacity(k);
    let mut cells_total: u64 = 1;
    let too_wide = || Error::Precondition("segment box exceeds cell index range".into());
    for xi in x {
        let reach = rabs(&(&ell * xi));
        let zlo = rfloor(&(&-reach.clone() / scale)).to_i64().ok_or_else(too_wide)?;
        let mut zhi = rceil(&(&reach / scale)).to_i64().ok_or_else(too_wide)?;
        if zhi == zlo {
            zhi += 1;
        }
        ranges.push((zlo, zhi));
        cells_total = cells_total.saturating_mul((zhi - zlo) as u64);
    }
    if cells_total > budget {
        return Err(Error::BudgetExceeded { needed: cells_total, budget });
    }
    let mut cells: Vec<ZVec> = Vec::with_capacity(cells_total as usize);
    for idx in 0..cells_total {
        let mut rem = idx;
        let mut cell = Vec::with_capacity(k);
        for (lo, hi) in &ranges {
            let len = (hi - lo) as u64;
            cell.push(lo + (rem % len) as i64);
            rem /= len;
        }
        cells.push(cell);
    }
    let seg = Polycube::new(scale.clone(), LatticeSet::new(k, cells)?)?;
    let sum = c.sumset(&seg)?;
    let sum_measure = sum.measure();
    let bound = &rint(2 * i64::from(l) * (k as i64) + 1) * &c.measure();
    let verified = sum_measure <= bound;
    Ok(LineSumReport { sum_measure, bound, verified })
}

fn point_in_polycube(c: &Polycube, p: &QVec) -> bool {
    let scale = c.scale();
    c.cells().points().iter().any(|z| {
        z.iter().zip(p).all(|(&zi, pi)| {
            let lo = &rint(zi) * scale;
            let hi = &rint(zi + 1) * scale;
            &lo <= pi && pi <= &hi
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn qv(xs: &[Rat]) -> QVec {
        xs.to_vec()
    }

    fn unit_square() -> Vec<(QVec, Rat)> {
        vec![
            (qv(&[rint(1), rint(0)]), rint(1)),
            (qv(&[rint(-1), rint(0)]), rint(1)),
            (qv(&[rint(0), rint(1)]), rint(1)),
            (qv(&[rint(0), rint(-1)]), rint(1)),
        ]
    }

    fn interval_oracle(r: Rat) -> impl Fn(&QVec) -> Result<bool> {
        move |v: &QVec| Ok(v.iter().all(|x| rabs(x) <= r))
    }

    #[test]
    fn stretch_square_along_axis() {
        let sp = stretch_and_project(&unit_square(), &qv(&[rint(1), rint(0)])).unwrap();
        assert_eq!(sp.m, rint(2));
        assert_eq!(dot(&sp.normal, &qv(&[rint(1), rint(0)])), rint(1));
        assert_eq!(sp.offset, rint(-1));
    }

    #[test]
    fn stretch_square_along_diagonal() {
        let sp = stretch_and_project(&unit_square(), &qv(&[rint(1), rint(1)])).unwrap();
        assert_eq!(sp.m, rint(2));
        assert_eq!(dot(&sp.normal, &qv(&[rint(1), rint(1)])), rint(1));
    }

    #[test]
    fn stretch_segment_is_one() {
        let ineqs = vec![(qv(&[rint(1)]), rint(1)), (qv(&[rint(-1)]), rint(0))];
        let sp = stretch_and_project(&ineqs, &qv(&[rint(1)])).unwrap();
        assert_eq!(sp.m, rint(1));
        assert_eq!(sp.offset, rint(0));
    }

    #[test]
    fn stretch_rejects_unbounded_and_empty() {
        let half = vec![(qv(&[rint(1), rint(0)]), rint(1))];
        assert!(matches!(
            stretch_and_project(&half, &qv(&[rint(1), rint(0)])),
            Err(Error::Unbounded)
        ));
        let empty = vec![(qv(&[rint(1)]), rint(-1)), (qv(&[rint(-1)]), rint(0))];
        assert!(matches!(
            stretch_and_project(&empty, &qv(&[rint(1)])),
            Err(Error::Infeasible(_))
        ));
    }

    fn line_progression(half: i64, step: Rat) -> ConvexProgression {
        ConvexProgression {
            ineqs: vec![(qv(&[rint(1)]), rint(half)), (qv(&[rint(-1)]), rint(half))],
            phi: vec![qv(&[step])],
            symmetric: true,
        }
    }

    #[test]
    fn merge_close_line_progression() {
        let p = line_progression(2, rat(1, 10));
        let q = Zonotope::segment(rat(3, 20));
        let out = merge_step(&p, &q, 1, 1, 10_000).unwrap();
        let MergeResult::Merged(o) = out else {
            panic!("expected a merge");
        };
        assert_eq!(o.rho, vec![-2]);
        assert_eq!(o.rho_prime, vec![-1]);
        assert_eq!(o.m, rint(4));
        assert_eq!(o.p_count, 5);
        assert_eq!(o.p_prime_count, 1);
        assert_eq!(o.p_prime.d(), 0);
        assert_eq!(o.q_prime.volume(), rat(11, 10));
        assert_eq!(o.size_ratio, rat(11, 15));
        let (vals, _) = o.p_prime.values(10).unwrap();
        assert_eq!(vals, vec![qv(&[rint(0)])]);
    }

    #[test]
    fn merge_separated_line_progression() {
        let p = line_progression(1, rint(5));
        let q = Zonotope::segment(rat(1, 10));
        assert!(matches!(
            merge_step(&p, &q, 1, 1, 10_000),
            Ok(MergeResult::NoClosePair)
        ));
    }

    #[test]
    fn merge_single_point_body() {
        let p = line_progression(0, rint(1));
        let q = Zonotope::segment(rat(1, 10));
        assert!(matches!(
            merge_step(&p, &q, 1, 1, 10_000),
            Ok(MergeResult::NoClosePair)
        ));
    }

    #[test]
    fn merge_requires_symmetry() {
        let mut p = line_progression(2, rat(1, 10));
        p.symmetric = false;
        let q = Zonotope::segment(rat(3, 20));
        assert!(matches!(merge_step(&p, &q, 1, 1, 10_000), Err(Error::NotSymmetric)));
    }

    #[test]
    fn merge_plane_progression_drops_dimension() {
        let p = ConvexProgression {
            ineqs: vec![
                (qv(&[rint(1), rint(0)]), rint(1)),
                (qv(&[rint(-1), rint(0)]), rint(1)),
                (qv(&[rint(0), rint(1)]), rint(1)),
                (qv(&[rint(0), rint(-1)]), rint(1)),
            ],
            phi: vec![qv(&[rat(1, 10), rat(1, 100)])],
            symmetric: true,
        };
        let q = Zonotope::segment(rat(1, 2));
        let out = merge_step(&p, &q, 1, 1, 10_000).unwrap();
        let MergeResult::Merged(o) = out else {
            panic!("expected a merge");
        };
        assert_eq!(o.m, rint(2));
        assert_eq!(o.p_prime.d(), 1);
        assert_eq!(o.p_count, 9);
        assert_eq!(o.p_prime_count, 3);
        assert_eq!(o.size_ratio, rat(26, 75));
    }

    #[test]
    fn snap_single_relation_to_arithmetic_progression() {
        let x = vec![qv(&[rint(0)]), qv(&[rint(1)]), qv(&[rat(2001, 1000)])];
        let l = interval_oracle(rat(1, 100));
        let cert = snap(&x, &l, 2, 2, 1, 1_000).unwrap();
        assert_eq!(cert.relations.len(), 1);
        assert_eq!(cert.relations[0].xs, vec![0, 2]);
        assert_eq!(cert.relations[0].ys, vec![1, 1]);
        assert_eq!(cert.c, 108);
        assert_eq!(cert.c_prime, 108);
        let snapped: Vec<Rat> = (0..3).map(|i| &x[i][0] + &cert.f[i][0]).collect();
        assert_eq!(snapped, vec![rint(0), rint(1), rint(2)]);
    }

    #[test]
    fn snap_two_relations_to_exact_step() {
        let x = vec![
            qv(&[rint(0)]),
            qv(&[rat(5001, 10000)]),
            qv(&[rint(1)]),
            qv(&[rat(3, 2)]),
        ];
        let l = interval_oracle(rat(1, 1000));
        let cert = snap(&x, &l, 2, 2, 1, 1_000).unwrap();
        assert_eq!(cert.relations.len(), 3);
        assert_eq!(cert.c, 127_008);
        assert_eq!(cert.c_prime, 63_504);
        assert_eq!(cert.dilate, rint(2));
        let snapped: Vec<Rat> = (0..4).map(|i| &x[i][0] + &cert.f[i][0]).collect();
        let step = &snapped[1] - &snapped[0];
        assert_eq!(step, rat(5001, 10000));
        for w in snapped.windows(2) {
            assert_eq!(&w[1] - &w[0], step);
        }
    }

    #[test]
    fn snap_without_relations_is_zero() {
        let x = vec![qv(&[rint(0)]), qv(&[rint(1)])];
        let l = interval_oracle(rat(1, 1_000_000));
        let cert = snap(&x, &l, 2, 2, 1, 1_000).unwrap();
        assert!(cert.relations.is_empty());
        assert!(cert.f.iter().all(|v| v[0].is_zero()));
        assert_eq!(cert.c, 2);
        assert_eq!(cert.dilate, rint(0));
    }

    #[test]
    fn snap_is_idempotent() {
        let x = vec![
            qv(&[rint(0)]),
            qv(&[rat(5001, 10000)]),
            qv(&[rint(1)]),
            qv(&[rat(3, 2)]),
        ];
        let l = interval_oracle(rat(1, 1000));
        let cert = snap(&x, &l, 2, 2, 1, 1_000).unwrap();
        let snapped: Vec<QVec> = (0..4).map(|i| qadd(&x[i], &cert.f[i])).collect();
        let again = snap(&snapped, &l, 2, 2, 1, 1_000).unwrap();
        assert_eq!(again.relations.len(), 3);
        assert!(again.f.iter().all(|v| v[0].is_zero()));
        assert_eq!(again.dilate, rint(0));
    }

    #[test]
    fn snap_budget_is_enforced() {
        let x = vec![qv(&[rint(0)]), qv(&[rint(1)])];
        let l = interval_oracle(rat(1, 100));
        assert!(matches!(
            snap(&x, &l, 2, 2, 1, 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn gamma_far_pair_is_one() {
        let y = vec![qv(&[rint(0)]), qv(&[rint(10)])];
        let l = interval_oracle(rint(1));
        let rep = separation_gamma(&y, &l, 1, 2, 10_000).unwrap();
        assert_eq!(rep.gamma, 1);
        assert_eq!(rep.gamma_star, 2);
        assert_eq!(rep.distances, vec![(0, 1, None)]);
    }

    #[test]
    fn gamma_singleton_is_vacuous() {
        let y = vec![qv(&[rint(0)])];
        let l = interval_oracle(rint(1));
        let rep = separation_gamma(&y, &l, 1, 2, 10_000).unwrap();
        assert_eq!(rep.gamma, 1);
        assert!(rep.distances.is_empty());
    }

    #[test]
    fn gamma_detects_first_gap() {
        let y = vec![qv(&[rint(0)]), qv(&[rint(2)]), qv(&[rint(40)])];
        let l = interval_oracle(rint(1));
        let rep = separation_gamma(&y, &l, 1, 3, 10_000).unwrap();
        assert_eq!(rep.gamma, 2);
        assert_eq!(rep.gamma_star, 27);
        assert_eq!(
            rep.distances,
            vec![(0, 1, Some(2)), (0, 2, None), (1, 2, None)]
        );
    }

    #[test]
    fn gamma_full_chain_returns_cap() {
        let y = vec![qv(&[rint(0)]), qv(&[rint(1)])];
        let l = interval_oracle(rint(1));
        let rep = separation_gamma(&y, &l, 1, 2, 10_000).unwrap();
        assert_eq!(rep.gamma, 2);
        assert_eq!(rep.distances, vec![(0, 1, Some(1))]);
    }

    #[test]
    fn boosted_snap_merges_near_pair() {
        let x = vec![qv(&[rint(0)]), qv(&[rat(3, 10000)])];
        let l = interval_oracle(rat(1, 10000));
        let cert = boosted_snap(&x, &l, 1, 2, 1_000_000).unwrap();
        assert_eq!(cert.c_bound, 8);
        assert_eq!(cert.gamma, 2);
        assert_eq!(cert.gamma_star, 2);
        assert_eq!(cert.snap.c, 8);
        assert_eq!(qadd(&x[1], &cert.snap.f[1]), qv(&[rint(0)]));
    }

    #[test]
    fn boosted_snap_leaves_far_points() {
        let x = vec![qv(&[rint(0)]), qv(&[rint(1)])];
        let l = interval_oracle(rat(1, 100));
        let cert = boosted_snap(&x, &l, 1, 2, 1_000_000).unwrap();
        assert_eq!(cert.gamma, 1);
        assert!(cert.snap.relations.is_empty());
        assert!(cert.snap.f.iter().all(|v| v[0].is_zero()));
    }

    fn interval_value(lo: i64, hi: i64) -> SetValue {
        SetValue::Interval(IntervalUnion::interval(rint(lo), rint(hi)).unwrap())
    }

    #[test]
    fn cover_long_interval_with_unit() {
        let rep = ruzsa_cover(&interval_value(0, 3), &interval_value(0, 1), 100).unwrap();
        assert_eq!(rep.points, vec![rint(0), rint(1), rint(2), rint(3)]);
        assert_eq!(rep.bound, rint(4));
        assert!(rep.covered);
        assert!(rint(rep.points.len() as i64) <= rep.bound);
    }

    #[test]
    fn cover_self_packs_endpoints() {
        let rep = ruzsa_cover(&interval_value(0, 1), &interval_value(0, 1), 100).unwrap();
        assert_eq!(rep.points, vec![rint(0), rint(1)]);
        assert_eq!(rep.bound, rint(2));
        assert!(rep.covered);
        // A single point already suffices: B - B = [-1, 1] contains A - 0.
        let b = IntervalUnion::interval(rint(0), rint(1)).unwrap();
        let neg = IntervalUnion::interval(rint(-1), rint(0)).unwrap();
        let diff = b.sumset(&neg);
        assert_eq!(diff.components(), &[(rint(-1), rint(1))]);
    }

    #[test]
    fn cover_split_interval_union() {
        let a = SetValue::Interval(
            IntervalUnion::new(vec![(rint(0), rint(1)), (rint(10), rint(11))]).unwrap(),
        );
        let rep = ruzsa_cover(&a, &interval_value(0, 2), 100).unwrap();
        assert_eq!(rep.points, vec![rint(0), rint(10)]);
        assert_eq!(rep.bound, rint(3));
        assert!(rep.covered);
    }

    #[test]
    fn cover_lattice_pair() {
        let a = SetValue::Lattice(LatticeSet::from_values(&[0, 10]));
        let b = SetValue::Lattice(LatticeSet::from_values(&[0, 1, 2]));
        let rep = ruzsa_cover(&a, &b, 100).unwrap();
        assert_eq!(rep.points, vec![rint(0), rint(10)]);
        assert_eq!(rep.bound, rint(2));
        assert!(rep.covered);
    }

    #[test]
    fn cover_rejects_degenerate_and_mixed() {
        let point = SetValue::Interval(IntervalUnion::interval(rint(0), rint(0)).unwrap());
        assert!(matches!(
            ruzsa_cover(&interval_value(0, 1), &point, 100),
            Err(Error::ZeroMeasure)
        ));
        let lat = SetValue::Lattice(LatticeSet::from_values(&[0]));
        assert!(matches!(
            ruzsa_cover(&interval_value(0, 1), &lat, 100),
            Err(Error::KindMismatch)
        ));
    }

    #[test]
    fn line_sum_segment_is_tight() {
        let c = Polycube::from_box(&[rint(0)], &[rint(1)]).unwrap();
        let rep = line_sum_check(&c, &qv(&[rint(1)]), 2, 1_000).unwrap();
        assert_eq!(rep.sum_measure, rint(5));
        assert_eq!(rep.bound, rint(5));
        assert!(rep.verified);
    }

    #[test]
    fn line_sum_square_stays_under_bound() {
        let c = Polycube::from_box(&[rint(0), rint(0)], &[rint(1), rint(1)])
            .unwrap()
            .refine(2)
            .unwrap();
        let rep = line_sum_check(&c, &qv(&[rat(1, 2), rat(1, 2)]), 1, 10_000).unwrap();
        assert_eq!(rep.sum_measure, rint(4));
        assert_eq!(rep.bound, rint(5));
        assert!(rep.verified);
    }

    #[test]
    fn line_sum_needs_contained_endpoints() {
        let c = Polycube::from_box(&[rint(0)], &[rint(1)]).unwrap();
        assert!(matches!(
            line_sum_check(&c, &qv(&[rint(5)]), 1, 1_000),
            Err(Error::Precondition(_))
        ));
    }
}
