//! Exact two-phase simplex over the rationals, with Bland's rule for
//! termination, plus basis-subset vertex enumeration for small polyhedra.
//!
//! The solver handles free variables (split internally), inequality rows
//! (A x <= b) and equality rows. Duals for the inequality rows are recovered
//! from the artificial columns' reduced costs; callers that rely on a dual
//! certificate post-verify it, so a dual is never trusted blindly.

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{qdot, rzero, QVec, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

pub struct Lp {
    /// Number of (free) decision variables.
    pub n: usize,
    /// Maximize objective . x.
    pub objective: QVec,
    pub a_ub: Vec<QVec>,
    pub b_ub: QVec,
    pub a_eq: Vec<QVec>,
    pub b_eq: QVec,
}

pub enum LpOutcome {
    Optimal {
        x: QVec,
        value: Rat,
        /// One multiplier per a_ub row (>= 0 at a clean optimum), in the
        /// original row order; rows dropped as redundant get 0.
        dual_ub: QVec,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<QVec>,
    /// Column index currently basic in each row.
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x /= &inv;
        }
        for i in 0..self.rows.len() {
            if i != row && !self.rows[i][col].is_zero() {
                let f = self.rows[i][col].clone();
                for j in 0..=self.ncols {
                    let t = &self.rows[row][j] * &f;
                    self.rows[i][j] -= t;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximize the given cost vector with Bland's rule. `allowed` masks the
    /// columns that may enter. Returns false if unbounded.
    fn run(&mut self, cost: &[Rat], allowed: &[bool]) -> bool {
        loop {
            // Reduced costs from scratch: r = cost - cost_B . rows.
            let mut reduced: QVec = cost.to_vec();
            for (i, &bcol) in self.basis.iter().enumerate() {
                let cb = &cost[bcol];
                if cb.is_zero() {
                    continue;
                }
                for j in 0..self.ncols {
                    if !self.rows[i][j].is_zero() {
                        let t = &self.rows[i][j] * cb;
                        reduced[j] -= t;
                    }
                }
            }
            let entering = (0..self.ncols)
                .find(|&j| allowed[j] && reduced[j].is_positive() && !self.basis.contains(&j));
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][col];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn objective_value(&self, cost: &[Rat]) -> Rat {
        let mut v = rzero();
        for (i, &bcol) in self.basis.iter().enumerate() {
            v += &cost[bcol] * self.rhs(i);
        }
        v
    }
}

/// Solve the LP exactly.
pub fn solve(lp: &Lp) -> LpOutcome {
    let n = lp.n;
    let m_ub = lp.a_ub.len();
    let m_eq = lp.a_eq.len();
    let m = m_ub + m_eq;
    // Columns: u (n), w (n), slack (m_ub), artificial (m).
    let slack0 = 2 * n;
    let art0 = slack0 + m_ub;
    let ncols = art0 + m;

    let mut rows: Vec<QVec> = Vec::with_capacity(m);
    let mut flip = vec![false; m];
    for (i, (a, b)) in lp.a_ub.iter().zip(&lp.b_ub).chain(lp.a_eq.iter().zip(&lp.b_eq)).enumerate()
    {
        let mut row = vec![rzero(); ncols + 1];
        let neg = b.is_negative();
        flip[i] = neg;
        let sgn = if neg { -Rat::one() } else { Rat::one() };
        for j in 0..n {
            row[j] = &sgn * &a[j];
            row[n + j] = -&row[j];
        }
        if i < m_ub {
            row[slack0 + i] = sgn.clone();
        }
        row[art0 + i] = Rat::one();
        row[ncols] = &sgn * b;
        rows.push(row);
    }

    let mut t = Tableau { rows, basis: (art0..art0 + m).collect(), ncols };

    // Phase 1: drive artificials to zero.
    let mut phase1 = vec![rzero(); ncols];
    for j in art0..art0 + m {
        phase1[j] = -Rat::one();
    }
    let allow_all = vec![true; ncols];
    if !t.run(&phase1, &allow_all) {
        // Bounded by construction (objective <= 0); treat as infeasible guard.
        return LpOutcome::Infeasible;
    }
    if t.objective_value(&phase1).is_negative() {
        return LpOutcome::Infeasible;
    }
    // Drive lingering artificials out of the basis where possible; a row
    // with no eligible pivot is redundant and gets parked (all-zero row).
    for i in 0..m {
        if t.basis[i] >= art0 {
            if let Some(col) = (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, col);
            }
        }
    }

    // Phase 2: artificial columns may not re-enter.
    let mut allowed = vec![true; ncols];
    for a in allowed.iter_mut().skip(art0) {
        *a = false;
    }
    let mut cost = vec![rzero(); ncols];
    for j in 0..n {
        cost[j] = lp.objective[j].clone();
        cost[n + j] = -lp.objective[j].clone();
    }
    if !t.run(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![rzero(); n];
    for (i, &bcol) in t.basis.iter().enumerate() {
        if bcol < n {
            x[bcol] += t.rhs(i);
        } else if bcol < 2 * n {
            x[bcol - n] -= t.rhs(i);
        }
    }
    let value = t.objective_value(&cost);

    // Duals: v_i = -reduced_cost(artificial_i); undo the row flips.
    let mut reduced_art: QVec = vec![rzero(); m];
    for (i, &bcol) in t.basis.iter().enumerate() {
        let cb = &cost[bcol];
        if cb.is_zero() {
            continue;
        }
        for k in 0..m {
            if !t.rows[i][art0 + k].is_zero() {
                let tt = &t.rows[i][art0 + k] * cb;
                reduced_art[k] -= tt;
            }
        }
    }
    let mut dual_ub = Vec::with_capacity(m_ub);
    for i in 0..m_ub {
        let mut v = -reduced_art[i].clone();
        if flip[i] {
            v = -v;
        }
        dual_ub.push(v);
    }

    LpOutcome::Optimal { x, value, dual_ub }
}

/// Feasibility of { x : A_ub x <= b_ub, A_eq x = b_eq }.
pub fn feasible(lp: &Lp) -> bool {
    !matches!(solve(lp), LpOutcome::Infeasible)
}

/// Exact bounding interval of a coordinate over a polyhedron; errors if the
/// polyhedron is empty or unbounded in that coordinate.
pub fn coordinate_bounds(a_ub: &[QVec], b_ub: &[Rat], n: usize, coord: usize) -> Result<(Rat, Rat)> {
    let mut obj = vec![rzero(); n];
    obj[coord] = Rat::one();
    let hi = match solve(&Lp {
        n,
        objective: obj.clone(),
        a_ub: a_ub.to_vec(),
        b_ub: b_ub.to_vec(),
        a_eq: Vec::new(),
        b_eq: Vec::new(),
    }) {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Infeasible => return Err(Error::Infeasible("empty polytope")),
        LpOutcome::Unbounded => return Err(Error::Unbounded),
    };
    obj[coord] = -Rat::one();
    let lo = match solve(&Lp {
        n,
        objective: obj,
        a_ub: a_ub.to_vec(),
        b_ub: b_ub.to_vec(),
        a_eq: Vec::new(),
        b_eq: Vec::new(),
    }) {
        LpOutcome::Optimal { value, .. } => -value,
        LpOutcome::Infeasible => return Err(Error::Infeasible("empty polytope")),
        LpOutcome::Unbounded => return Err(Error::Unbounded),
    };
    Ok((lo, hi))
}

/// All vertices of { x : A x <= b } by enumerating row subsets; intended for
/// small systems (the ap_cover polyhedron, merge-step bodies, unit tests).
pub fn enumerate_vertices(a_ub: &[QVec], b_ub: &[Rat], n: usize) -> Vec<QVec> {
    let m = a_ub.len();
    let mut verts: Vec<QVec> = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    if m < n {
        return verts;
    }
    loop {
        let sys: Vec<QVec> = subset.iter().map(|&i| a_ub[i].clone()).collect();
        let rhs: Vec<Rat> = subset.iter().map(|&i| b_ub[i].clone()).collect();
        if let linalg::Solve::Unique(x) = linalg::solve(&sys, &rhs) {
            let ok = a_ub.iter().zip(b_ub).all(|(row, b)| qdot(row, &x) <= *b);
            if ok && !verts.contains(&x) {
                verts.push(x);
            }
        }
        // Next combination in lexicographic order.
        let mut i = n;
        loop {
            if i == 0 {
                return verts;
            }
            i -= 1;
            if subset[i] != i + m - n {
                subset[i] += 1;
                for j in i + 1..n {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}
