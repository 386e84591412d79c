//! Exact two-phase simplex over rationals.
//!
//! Maximizes c·x subject to a_i·x <= b_i with x free.  Free variables are
//! split as x = u - v, slacks make rows equalities, and rows with negative
//! right-hand side get an artificial variable for phase one.  Bland's rule
//! guarantees termination; all pivots are exact, so the reported optimum is
//! a certificate, not an approximation.
//!
//! Problem sizes in this crate stay tiny (dimension <= 8, at most a hundred
//! or so rows), so the dense tableau with recomputed reduced costs is fast
//! enough and easy to audit.

use crate::linalg::Point;
use crate::scalar::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal { x: Point, value: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// Constraint rows; each has `ncols` coefficients then the rhs.
    rows: Vec<Vec<Rat>>,
    /// Basic column of each row.
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].clone().recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..=self.ncols {
                let t = &f * &self.rows[r][j];
                self.rows[i][j] -= t;
            }
        }
        self.basis[r] = c;
    }

    /// Minimize cost·vars with Bland's rule; `allowed` masks enterable
    /// columns.  Returns false when unbounded.
    fn run(&mut self, cost: &[Rat], allowed: &[bool]) -> bool {
        loop {
            // Multipliers y_r = cost of the basic variable in row r.
            let y: Vec<Rat> = self.basis.iter().map(|&b| cost[b].clone()).collect();
            let mut entering = None;
            for j in 0..self.ncols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (r, row) in self.rows.iter().enumerate() {
                    if !y[r].is_zero() && !row[j].is_zero() {
                        rc -= &y[r] * &row[j];
                    }
                }
                if rc.is_negative() {
                    entering = Some(j);
                    break; // Bland: smallest improving index.
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.ncols] / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio
                                || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

/// Maximize `objective · x` subject to `row · x <= rhs` for each constraint,
/// with x unrestricted in sign.
pub fn maximize(objective: &[Rat], constraints: &[(Point, Rat)]) -> LpResult {
    let p = objective.len();
    let m = constraints.len();
    if m == 0 {
        return if objective.iter().all(Rat::is_zero) {
            LpResult::Optimal { x: vec![Rat::zero(); p], value: Rat::zero() }
        } else {
            LpResult::Unbounded
        };
    }

    // Columns: u (p), v (p), slack (m), artificial (one per negative rhs).
    let negative: Vec<bool> = constraints.iter().map(|(_, b)| b.is_negative()).collect();
    let n_art = negative.iter().filter(|&&x| x).count();
    let ncols = 2 * p + m + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art_seen = 0;
    for (i, (a, b)) in constraints.iter().enumerate() {
        assert_eq!(a.len(), p, "constraint arity mismatch");
        let sign = if negative[i] { -1 } else { 1 };
        let mut row = vec![Rat::zero(); ncols + 1];
        for j in 0..p {
            let coef = if sign < 0 { -&a[j] } else { a[j].clone() };
            row[j] = coef.clone();
            row[p + j] = -coef;
        }
        // Slack: +1 normally, -1 on a negated row.
        row[2 * p + i] = if sign < 0 { -Rat::one() } else { Rat::one() };
        row[ncols] = if sign < 0 { -b } else { b.clone() };
        if negative[i] {
            let art_col = 2 * p + m + art_seen;
            row[art_col] = Rat::one();
            basis.push(art_col);
            art_seen += 1;
        } else {
            basis.push(2 * p + i);
        }
        rows.push(row);
    }

    let mut t = Tableau { rows, basis, ncols };

    if n_art > 0 {
        let mut cost = vec![Rat::zero(); ncols];
        for c in cost.iter_mut().take(ncols).skip(2 * p + m) {
            *c = Rat::one();
        }
        let allowed = vec![true; ncols];
        let ok = t.run(&cost, &allowed);
        debug_assert!(ok, "phase one cannot be unbounded");
        let phase1: Rat = t
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= 2 * p + m)
            .map(|(r, _)| t.rows[r][ncols].clone())
            .sum();
        if !phase1.is_zero() {
            return LpResult::Infeasible;
        }
        // Drive lingering zero-level artificials out of the basis.
        for r in 0..t.rows.len() {
            if t.basis[r] >= 2 * p + m {
                if let Some(c) = (0..2 * p + m).find(|&c| !t.rows[r][c].is_zero()) {
                    t.pivot(r, c);
                }
                // A row with no real coefficients is redundant; its rhs is
                // zero here, so leaving the artificial basic is harmless as
                // long as it can never re-enter (masked below).
            }
        }
    }

    let mut cost = vec![Rat::zero(); ncols];
    for j in 0..p {
        cost[j] = -objective[j].clone();
        cost[p + j] = objective[j].clone();
    }
    let mut allowed = vec![true; ncols];
    for a in allowed.iter_mut().take(ncols).skip(2 * p + m) {
        *a = false;
    }
    if !t.run(&cost, &allowed) {
        return LpResult::Unbounded;
    }

    let mut x = vec![Rat::zero(); p];
    for (r, &b) in t.basis.iter().enumerate() {
        let val = t.rows[r][t.ncols].clone();
        if b < p {
            x[b] += val;
        } else if b < 2 * p {
            x[b - p] -= val;
        }
    }
    let value = objective
        .iter()
        .zip(&x)
        .map(|(c, xi)| c * xi)
        .sum();
    LpResult::Optimal { x, value }
}

/// Feasibility check for `row · x <= rhs`.
pub fn feasible(constraints: &[(Point, Rat)], dim: usize) -> bool {
    matches!(
        maximize(&vec![Rat::zero(); dim], constraints),
        LpResult::Optimal { .. }
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn le(a: Vec<Rat>, b: Rat) -> (Point, Rat) {
        (a, b)
    }

    #[test]
    fn box_corner_optimum() {
        // max x + y on [0,2] x [0,3]
        let cons = vec![
            le(vec![rat(1), rat(0)], rat(2)),
            le(vec![rat(-1), rat(0)], rat(0)),
            le(vec![rat(0), rat(1)], rat(3)),
            le(vec![rat(0), rat(-1)], rat(0)),
        ];
        match maximize(&[rat(1), rat(1)], &cons) {
            LpResult::Optimal { x, value } => {
                assert_eq!(x, vec![rat(2), rat(3)]);
                assert_eq!(value, rat(5));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // x >= 1, x <= 3: max -x should give 1.
        let cons = vec![
            le(vec![rat(-1)], rat(-1)),
            le(vec![rat(1)], rat(3)),
        ];
        match maximize(&[rat(-1)], &cons) {
            LpResult::Optimal { x, value } => {
                assert_eq!(x, vec![rat(1)]);
                assert_eq!(value, rat(-1));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        let cons = vec![
            le(vec![rat(1)], rat(0)),
            le(vec![rat(-1)], rat(-1)), // x >= 1 contradicts x <= 0
        ];
        assert_eq!(maximize(&[rat(1)], &cons), LpResult::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let cons = vec![le(vec![rat(-1), rat(0)], rat(0))]; // x >= 0 only
        assert_eq!(maximize(&[rat(1), rat(0)], &cons), LpResult::Unbounded);
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // max y s.t. y <= x/3 + 1/7, y <= -x/2 + 2, intersection at
        // x = 78/35, y = 61/73.5... solve: x/3 + 1/7 = -x/2 + 2
        // => x(1/3+1/2) = 2 - 1/7 => x * 5/6 = 13/7 => x = 78/35.
        let cons = vec![
            le(vec![ratio(-1, 3), rat(1)], ratio(1, 7)),
            le(vec![ratio(1, 2), rat(1)], rat(2)),
        ];
        match maximize(&[rat(0), rat(1)], &cons) {
            LpResult::Optimal { x, value } => {
                assert_eq!(x[0], ratio(78, 35));
                assert_eq!(value, ratio(1, 3) * ratio(78, 35) + ratio(1, 7));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // Three constraints meeting at the origin in 2D plus a roof.
        let cons = vec![
            le(vec![rat(-1), rat(0)], rat(0)),
            le(vec![rat(0), rat(-1)], rat(0)),
            le(vec![rat(-1), rat(-1)], rat(0)),
            le(vec![rat(1), rat(1)], rat(1)),
        ];
        match maximize(&[rat(1), rat(1)], &cons) {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(1)),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn equality_via_opposing_rows() {
        // x + y = 1 (two inequalities), maximize x - y on x,y >= 0.
        let cons = vec![
            le(vec![rat(1), rat(1)], rat(1)),
            le(vec![rat(-1), rat(-1)], rat(-1)),
            le(vec![rat(-1), rat(0)], rat(0)),
            le(vec![rat(0), rat(-1)], rat(0)),
        ];
        match maximize(&[rat(1), rat(-1)], &cons) {
            LpResult::Optimal { x, value } => {
                assert_eq!(x, vec![rat(1), rat(0)]);
                assert_eq!(value, rat(1));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }
}
