//! Exact-arithmetic simplex for the covering programs this crate solves:
//! minimize the total weight put on 0/1 columns subject to per-row coverage.
//!
//! The column pool always contains every singleton row set, so the identity
//! is an initial basis and no phase-1 is needed. Pivoting starts with
//! Dantzig's rule and falls back to Bland's rule after a run of degenerate
//! pivots, which guarantees termination.

use num::{One, Signed, Zero};

use crate::rational::Rat;

/// Degenerate pivots tolerated before switching to Bland's rule.
const STALL_LIMIT: usize = 32;

pub(crate) struct LpSolution {
    pub value: Rat,
    /// Positive weights on structural columns, by column index.
    pub column_weights: Vec<(usize, Rat)>,
}

/// Solves `min 1'x  s.t.  sum_{j: i in cols[j]} x_j >= rhs[i],  x >= 0`.
///
/// Requirements: `rhs` is nonnegative and for every row `i` some column
/// equals exactly `[i]`.
pub(crate) fn solve_covering(n_rows: usize, columns: &[Vec<usize>], rhs: &[Rat]) -> LpSolution {
    assert_eq!(rhs.len(), n_rows);
    let k = columns.len();
    let total = k + n_rows; // structural + surplus

    let mut a: Vec<Vec<Rat>> = vec![vec![Rat::zero(); total]; n_rows];
    for (j, col) in columns.iter().enumerate() {
        for &i in col {
            a[i][j] = Rat::one();
        }
    }
    for i in 0..n_rows {
        a[i][k + i] = -Rat::one();
    }
    let mut b: Vec<Rat> = rhs.to_vec();

    let mut basis = vec![usize::MAX; n_rows];
    for (j, col) in columns.iter().enumerate() {
        if let [i] = col[..] {
            if basis[i] == usize::MAX {
                basis[i] = j;
            }
        }
    }
    assert!(
        basis.iter().all(|&j| j != usize::MAX),
        "column pool must contain every singleton row"
    );

    // Reduced costs relative to the all-singleton basis (all basic costs 1).
    let cost = |j: usize| -> Rat {
        if j < k {
            Rat::one()
        } else {
            Rat::zero()
        }
    };
    let mut cbar: Vec<Rat> = (0..total)
        .map(|j| {
            let mut v = cost(j);
            for row in a.iter() {
                v -= &row[j];
            }
            v
        })
        .collect();

    let mut bland = false;
    let mut stall = 0usize;
    loop {
        let entering = if bland {
            (0..total).find(|&j| cbar[j].is_negative())
        } else {
            let mut best: Option<usize> = None;
            for j in 0..total {
                if cbar[j].is_negative() && best.is_none_or(|bj| cbar[j] < cbar[bj]) {
                    best = Some(j);
                }
            }
            best
        };
        let Some(enter) = entering else { break };

        // Ratio test; ties go to the smallest basic variable (Bland-safe).
        let mut leave: Option<usize> = None;
        let mut theta: Option<Rat> = None;
        for i in 0..n_rows {
            if a[i][enter].is_positive() {
                let ratio = &b[i] / &a[i][enter];
                let better = match &theta {
                    None => true,
                    Some(t) => ratio < *t || (ratio == *t && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    theta = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let r = leave.expect("covering objective is bounded below");

        if theta.as_ref().is_some_and(|t| t.is_zero()) {
            stall += 1;
            if stall > STALL_LIMIT {
                bland = true;
            }
        } else {
            stall = 0;
        }

        // Pivot on (r, enter).
        let pivot = a[r][enter].clone();
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x /= &pivot;
            }
        }
        b[r] /= &pivot;
        let pivot_row: Vec<(usize, Rat)> = a[r]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(idx, x)| (idx, x.clone()))
            .collect();
        for i in 0..n_rows {
            if i == r || a[i][enter].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut a[i][enter], Rat::zero());
            for (idx, x) in &pivot_row {
                if *idx != enter {
                    let delta = &factor * x;
                    a[i][*idx] -= delta;
                }
            }
            let delta = &factor * &b[r];
            b[i] -= delta;
        }
        let factor = std::mem::replace(&mut cbar[enter], Rat::zero());
        if !factor.is_zero() {
            for (idx, x) in &pivot_row {
                if *idx != enter {
                    let delta = &factor * x;
                    cbar[*idx] -= delta;
                }
            }
        }
        basis[r] = enter;
    }

    let mut value = Rat::zero();
    let mut column_weights = Vec::new();
    for i in 0..n_rows {
        if basis[i] < k && !b[i].is_zero() {
            value += &b[i];
            column_weights.push((basis[i], b[i].clone()));
        }
    }
    column_weights.sort_by_key(|(j, _)| *j);

    debug_assert!(verify(n_rows, columns, rhs, &value, &column_weights));
    LpSolution {
        value,
        column_weights,
    }
}

fn verify(
    n_rows: usize,
    columns: &[Vec<usize>],
    rhs: &[Rat],
    value: &Rat,
    weights: &[(usize, Rat)],
) -> bool {
    let mut coverage = vec![Rat::zero(); n_rows];
    let mut sum = Rat::zero();
    for (j, w) in weights {
        sum += w;
        for &i in &columns[*j] {
            coverage[i] += w;
        }
    }
    sum == *value && coverage.iter().zip(rhs).all(|(c, r)| c >= r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn covers_disjoint_rows_with_singletons() {
        let columns = vec![vec![0], vec![1]];
        let rhs = vec![rat(1, 2), rat(1, 3)];
        let sol = solve_covering(2, &columns, &rhs);
        assert_eq!(sol.value, rat(5, 6));
    }

    #[test]
    fn prefers_a_shared_column() {
        // One column covering both rows halves the cost.
        let columns = vec![vec![0], vec![1], vec![0, 1]];
        let rhs = vec![rat_int(1), rat_int(1)];
        let sol = solve_covering(2, &columns, &rhs);
        assert_eq!(sol.value, rat_int(1));
        assert_eq!(sol.column_weights, vec![(2, rat_int(1))]);
    }

    #[test]
    fn fractional_optimum_on_odd_cycle() {
        // Independent sets of C5: fractional chromatic number 5/2.
        let columns = vec![
            vec![0],
            vec![1],
            vec![2],
            vec![3],
            vec![4],
            vec![0, 2],
            vec![0, 3],
            vec![1, 3],
            vec![1, 4],
            vec![2, 4],
        ];
        let rhs = vec![rat_int(1); 5];
        let sol = solve_covering(5, &columns, &rhs);
        assert_eq!(sol.value, rat(5, 2));
        let total: Rat = sol.column_weights.iter().map(|(_, w)| w.clone()).sum();
        assert_eq!(total, rat(5, 2));
    }

    #[test]
    fn zero_demand_rows_cost_nothing() {
        let columns = vec![vec![0], vec![1]];
        let rhs = vec![rat_int(0), rat(2, 7)];
        let sol = solve_covering(2, &columns, &rhs);
        assert_eq!(sol.value, rat(2, 7));
    }
}
