//! Exact Phase-I simplex for rational equality-feasibility problems.
//!
//! Decides whether `A x = b, x >= 0` has a solution, entirely in exact
//! rational arithmetic. Pivoting follows Bland's rule, which guarantees
//! termination; there is no scaling and no tolerance anywhere. On
//! infeasibility a Farkas certificate is extracted from the final tableau.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Result of an exact feasibility solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// A nonnegative rational solution of `A x = b`, indexed like the input
    /// columns.
    Feasible(Vec<Rational>),
    /// No solution. The certificate `y` satisfies `y . A_j <= 0` for every
    /// column `A_j` and `y . b > 0`, which refutes feasibility.
    Infeasible { farkas: Vec<Rational> },
}

/// Decides `A x = b, x >= 0` where `A` is given column-wise as sparse
/// `(row, coefficient)` lists. `rhs` may have any signs.
pub fn solve_equality_feasibility(
    num_rows: usize,
    columns: &[Vec<(usize, Rational)>],
    rhs: &[Rational],
) -> LpOutcome {
    assert_eq!(rhs.len(), num_rows);
    let n = columns.len();
    let m = num_rows;

    // Dense tableau over the original columns plus one artificial per row.
    let mut tab: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n + m]; m];
    let mut b: Vec<Rational> = rhs.to_vec();
    let mut row_flipped = vec![false; m];
    for (i, bi) in b.iter_mut().enumerate() {
        if bi.is_negative() {
            *bi = -&*bi;
            row_flipped[i] = true;
        }
    }
    for (j, col) in columns.iter().enumerate() {
        for (i, coeff) in col {
            let signed = if row_flipped[*i] { -coeff } else { coeff.clone() };
            tab[*i][j] = &tab[*i][j] + signed;
        }
    }
    for i in 0..m {
        tab[i][n + i] = Rational::one();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase-I reduced costs: c_j - sum of basic (artificial) rows.
    let mut reduced: Vec<Rational> = (0..n + m)
        .map(|j| {
            if j < n {
                -(0..m).fold(Rational::zero(), |acc, i| acc + &tab[i][j])
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut objective = b.iter().fold(Rational::zero(), |acc, bi| acc + bi);

    loop {
        // Bland: entering column with the smallest index among negative
        // reduced costs. Artificial columns are never re-entered.
        let entering = (0..n).find(|&j| reduced[j].is_negative());
        let Some(e) = entering else { break };

        // Ratio test; ties broken by the smallest basic variable index
        // (Bland again).
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !tab[i][e].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    let cur = &b[i] * &tab[l][e];
                    let best = &b[l] * &tab[i][e];
                    match cur.cmp(&best) {
                        core::cmp::Ordering::Less => true,
                        core::cmp::Ordering::Equal => basis[i] < basis[l],
                        core::cmp::Ordering::Greater => false,
                    }
                }
            };
            if better {
                leave = Some(i);
            }
        }
        // Phase-I objective is bounded below by zero, so a pivot row exists.
        let l = leave.expect("phase-I column with no positive entry");
        pivot(&mut tab, &mut b, &mut reduced, &mut objective, l, e);
        basis[l] = e;
    }

    if objective.is_positive() {
        // Farkas certificate from the artificial reduced costs: y_i = 1 - d_{n+i}
        // for the sign-normalized rows, flipped back to the caller's rows.
        let farkas = (0..m)
            .map(|i| {
                let y = Rational::one() - &reduced[n + i];
                if row_flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Feasible. Drive leftover artificials (all at value zero) out of the
    // basis where possible; rows with no eligible pivot are redundant and
    // contribute nothing to x.
    for i in 0..m {
        if basis[i] < n {
            continue;
        }
        if let Some(e) = (0..n).find(|&j| !tab[i][j].is_zero()) {
            pivot(&mut tab, &mut b, &mut reduced, &mut objective, i, e);
            basis[i] = e;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = b[i].clone();
        }
    }
    LpOutcome::Feasible(x)
}

fn pivot(
    tab: &mut [Vec<Rational>],
    b: &mut [Rational],
    reduced: &mut [Rational],
    objective: &mut Rational,
    l: usize,
    e: usize,
) {
    let inv = tab[l][e].recip();
    for cell in tab[l].iter_mut() {
        *cell = &*cell * &inv;
    }
    b[l] = &b[l] * &inv;
    let width = tab[l].len();
    for i in 0..tab.len() {
        if i == l || tab[i][e].is_zero() {
            continue;
        }
        let factor = tab[i][e].clone();
        for j in 0..width {
            let delta = &factor * &tab[l][j];
            tab[i][j] = &tab[i][j] - delta;
        }
        b[i] = &b[i] - &factor * &b[l];
    }
    if !reduced[e].is_zero() {
        let factor = reduced[e].clone();
        for j in 0..width {
            let delta = &factor * &tab[l][j];
            reduced[j] = &reduced[j] - delta;
        }
        // entering by t = b[l] changes the objective by t * reduced[e]
        *objective = &*objective + &factor * &b[l];
    }
}
