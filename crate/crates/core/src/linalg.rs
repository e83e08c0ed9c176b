//! Dense exact linear algebra over the rationals, plus the little integer
//! lattice theory the hull operations need (echelon bases and membership).

use crate::rat::{rzero, QVec, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(mat: &mut Vec<QVec>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for x in mat[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let t = &mat[r][j] * &f;
                    mat[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Outcome of solving A x = b exactly.
pub enum Solve {
    Unique(QVec),
    /// A particular solution plus a basis of the kernel.
    Underdetermined { particular: QVec, kernel: Vec<QVec> },
    Inconsistent,
}

/// Solve A x = b over the rationals (A given as rows).
pub fn solve(a: &[QVec], b: &[Rat]) -> Solve {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // A pivot in the augmented column means 0 = 1 somewhere.
    if pivots.iter().any(|&c| c == cols) {
        return Solve::Inconsistent;
    }
    let mut particular = vec![rzero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = aug[i][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Solve::Unique(particular);
    }
    let mut kernel = Vec::new();
    for &fc in &free {
        let mut v = vec![rzero(); cols];
        v[fc] = Rat::from_integer(BigInt::from(1));
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -aug[i][fc].clone();
        }
        kernel.push(v);
    }
    Solve::Underdetermined { particular, kernel }
}

/// Kernel basis of A (rows are equations, zero right-hand side). Callers must
/// handle the no-equation case themselves; an empty system returns no basis.
pub fn kernel_basis(a: &[QVec]) -> Vec<QVec> {
    if a.is_empty() {
        return Vec::new();
    }
    match solve(a, &vec![rzero(); a.len()]) {
        Solve::Unique(_) => Vec::new(),
        Solve::Underdetermined { kernel, .. } => kernel,
        Solve::Inconsistent => unreachable!("homogeneous systems are consistent"),
    }
}

/// Determinant of a square rational matrix.
pub fn det(a: &[QVec]) -> Rat {
    let n = a.len();
    let mut m: Vec<QVec> = a.to_vec();
    let mut acc = Rat::from_integer(BigInt::from(1));
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return rzero();
        };
        if p != c {
            m.swap(c, p);
            acc = -acc;
        }
        acc *= &m[c][c];
        let inv = m[c][c].clone();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &inv;
                for j in c..n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    acc
}

/// Row-echelon basis (over Z) of the lattice generated by the given integer
/// vectors. Rows come out with increasing pivot columns and positive pivots.
pub fn lattice_echelon(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        loop {
            // Euclid on the column entries below the current row boundary.
            let mut idx: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if idx.is_empty() {
                break;
            }
            if idx.len() == 1 {
                rows.swap(r, idx[0]);
                break;
            }
            idx.sort_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let (small, other) = (idx[0], idx[1]);
            let q = &rows[other][c] / &rows[small][c];
            for j in 0..cols {
                let t = &rows[small][j] * &q;
                rows[other][j] -= t;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            r += 1;
        }
    }
    for row in rows.into_iter().take(r) {
        out.push(row);
    }
    out
}

/// Membership of x in the lattice spanned by an echelon basis.
pub fn in_lattice(basis: &[Vec<BigInt>], x: &[BigInt]) -> bool {
    let mut v: Vec<BigInt> = x.to_vec();
    for row in basis {
        let pc = match row.iter().position(|e| !e.is_zero()) {
            Some(p) => p,
            None => continue,
        };
        if v[pc].is_zero() {
            continue;
        }
        if (&v[pc] % &row[pc]).is_zero() {
            let q = &v[pc] / &row[pc];
            for j in 0..v.len() {
                let t = &row[j] * &q;
                v[j] -= t;
            }
        } else {
            return false;
        }
    }
    v.iter().all(|e| e.is_zero())
}
