//! Dense simplex for `max c.x s.t. A x <= b, x >= 0` with `b >= 0`, so the
//! origin is a feasible starting basis. Bland's rule prevents cycling.

use crate::{Error, Result};

const PIVOT_TOL: f64 = 1e-12;
const COST_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub(crate) struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
}

pub(crate) fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::LinearProgram("inconsistent tableau shape".into()));
    }
    if let Some(bad) = b.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
        return Err(Error::LinearProgram(format!("right-hand side {bad} is not a finite nonnegative value")));
    }

    // Row i reads basic_i = rhs_i - sum_j t[i][j] nonbasic_j and the objective
    // reads z = value + sum_j cost_j nonbasic_j. Labels < n are structural.
    let mut t: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    let mut cost = c.to_vec();
    let mut value = 0.0;
    let mut col_label: Vec<usize> = (0..n).collect();
    let mut row_label: Vec<usize> = (n..n + m).collect();

    let guard = 1000 + 50 * (n + m);
    for _ in 0..guard {
        let entering = (0..n)
            .filter(|&j| cost[j] > COST_TOL)
            .min_by_key(|&j| col_label[j]);
        let Some(s) = entering else {
            let mut x = vec![0.0; n];
            for (i, &label) in row_label.iter().enumerate() {
                if label < n {
                    x[label] = rhs[i].max(0.0);
                }
            }
            return Ok(LpSolution { value, x });
        };

        let mut leaving: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][s] > PIVOT_TOL {
                let ratio = rhs[i].max(0.0) / t[i][s];
                leaving = match leaving {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        let tie = (ratio - best).abs() <= 1e-12 * (1.0 + best);
                        if ratio < best && !tie || tie && row_label[i] < row_label[r] {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        let Some((r, _)) = leaving else {
            return Err(Error::LinearProgram("objective is unbounded".into()));
        };

        let p = t[r][s];
        let pivot_row: Vec<f64> = t[r].iter().map(|v| v / p).collect();
        let pivot_rhs = rhs[r] / p;
        for i in 0..m {
            if i == r {
                continue;
            }
            let factor = t[i][s];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                t[i][j] -= factor * pivot_row[j];
            }
            t[i][s] = -factor / p;
            rhs[i] -= factor * pivot_rhs;
        }
        let factor = cost[s];
        for j in 0..n {
            cost[j] -= factor * pivot_row[j];
        }
        cost[s] = -factor / p;
        value += factor * pivot_rhs;
        t[r] = pivot_row;
        t[r][s] = 1.0 / p;
        rhs[r] = pivot_rhs;
        std::mem::swap(&mut col_label[s], &mut row_label[r]);
    }
    Err(Error::LinearProgram(format!("no convergence after {guard} pivots")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36.
        let a = vec![vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]];
        let sol = maximize(&[3.0, 5.0], &a, &[4.0, 12.0, 18.0]).unwrap();
        assert!((sol.value - 36.0).abs() < 1e-12);
        assert!((sol.x[0] - 2.0).abs() < 1e-12 && (sol.x[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_and_unbounded() {
        let a = vec![vec![1.0, 1.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, -1.0]];
        let sol = maximize(&[1.0, 1.0], &a, &[0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(sol.value, 0.0);
        assert!(maximize(&[1.0], &[vec![-1.0]], &[1.0]).is_err());
        assert!(maximize(&[1.0], &[vec![1.0]], &[-1.0]).is_err());
    }
}
