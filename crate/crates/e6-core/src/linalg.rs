//! Small exact linear-algebra utilities: dense rational solving for the
//! tiny (≤ 8×8) systems used by weight solving and cone projection, and an
//! exact-rational simplex used to derive provably complete scan boxes.

use crate::rat::Rat;
use num::{One, Signed, Zero};

/// Solve `A x = b` for a square rational system by Gaussian elimination with
/// exact pivoting. Returns `None` when `A` is singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col];
        for entry in m[col].iter_mut() {
            *entry /= p;
        }
        for row in 0..n {
            if row != col && !m[row][col].is_zero() {
                let f = m[row][col];
                for k in col..=n {
                    let upd = m[col][k] * f;
                    m[row][k] -= upd;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n]).collect())
}

/// Invert a square rational matrix. Returns `None` when singular.
pub fn invert(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        cols.push(solve(a, &e)?);
    }
    // `cols[j]` is the j-th column of the inverse; transpose into rows.
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

/// Outcome of an exact LP `maximize c·x subject to A x ≤ b` over free `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// Optimal objective value.
    Optimal(Rat),
    Unbounded,
}

/// Exact-rational primal simplex with Bland's rule.
///
/// Requires `b ≥ 0` (the origin must be feasible), which holds for every LP
/// solved in this crate: the zero weight is a valid K-type inside the
/// u-small body. Free variables are split as differences of nonnegative
/// ones.
pub fn simplex_max(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == m);
    assert!(
        b.iter().all(|x| !x.is_negative()),
        "simplex_max requires a feasible origin (b >= 0)"
    );

    // Columns: 2n split variables, m slacks. Rows: m constraints + objective.
    let cols = 2 * n + m;
    let mut t = vec![vec![Rat::zero(); cols + 1]; m + 1];
    for i in 0..m {
        for j in 0..n {
            t[i][2 * j] = a[i][j];
            t[i][2 * j + 1] = -a[i][j];
        }
        t[i][2 * n + i] = Rat::one();
        t[i][cols] = b[i];
    }
    for j in 0..n {
        t[m][2 * j] = -c[j];
        t[m][2 * j + 1] = c[j];
    }
    let mut basis: Vec<usize> = (2 * n..2 * n + m).collect();

    loop {
        // Bland: entering column = lowest index with negative reduced cost.
        let Some(enter) = (0..cols).find(|&j| t[m][j].is_negative()) else {
            return LpOutcome::Optimal(t[m][cols]);
        };
        // Ratio test, Bland tie-break on basis index.
        let mut leave: Option<usize> = None;
        let mut best: Rat = Rat::zero();
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = t[i][cols] / t[i][enter];
                let better = match leave {
                    None => true,
                    Some(l) => ratio < best || (ratio == best && basis[i] < basis[l]),
                };
                if better {
                    leave = Some(i);
                    best = ratio;
                }
            }
        }
        let Some(leave) = leave else {
            return LpOutcome::Unbounded;
        };
        // Pivot.
        let p = t[leave][enter];
        for entry in t[leave].iter_mut() {
            *entry /= p;
        }
        for i in 0..=m {
            if i != leave && !t[i][enter].is_zero() {
                let f = t[i][enter];
                for j in 0..=cols {
                    let upd = t[leave][j] * f;
                    t[i][j] -= upd;
                }
            }
        }
        basis[leave] = enter;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn solve_small_system() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let b = vec![int(5), int(10)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![int(1), int(3)]);
    }

    #[test]
    fn singular_detected() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(&a, &[int(1), int(2)]).is_none());
    }

    #[test]
    fn invert_round_trip() {
        let a = vec![
            vec![int(2), int(-1), int(0)],
            vec![int(-1), int(2), int(-1)],
            vec![int(0), int(-1), int(2)],
        ];
        let inv = invert(&a).unwrap();
        // A * A^{-1} = I
        for i in 0..3 {
            for j in 0..3 {
                let entry: Rat = (0..3).map(|k| a[i][k] * inv[k][j]).sum();
                assert_eq!(entry, if i == j { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn lp_box() {
        // max x + y st x <= 2, y <= 3, x + y <= 4 → 4
        let a = vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(1)],
        ];
        let b = vec![int(2), int(3), int(4)];
        assert_eq!(
            simplex_max(&a, &b, &[int(1), int(1)]),
            LpOutcome::Optimal(int(4))
        );
    }

    #[test]
    fn lp_free_variable_and_rationals() {
        // max -x st x >= -3/2 (i.e. -x <= 3/2) → 3/2 at x = -3/2.
        let a = vec![vec![int(-1)]];
        let b = vec![rat(3, 2)];
        assert_eq!(
            simplex_max(&a, &b, &[int(-1)]),
            LpOutcome::Optimal(rat(3, 2))
        );
    }

    #[test]
    fn lp_unbounded() {
        let a = vec![vec![int(-1)]];
        let b = vec![int(0)];
        assert_eq!(simplex_max(&a, &b, &[int(1)]), LpOutcome::Unbounded);
    }
}
