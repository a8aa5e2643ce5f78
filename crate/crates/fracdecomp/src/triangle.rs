//! Fractional decompositions of one weighted triangle into scaled copies of
//! another.
//!
//! A weighted triangle with sorted weights `w1 >= w2 >= w3 > 0` decomposes
//! into scaled copies of the template `T_{e1,e2,e3}` exactly when
//!
//! ```text
//! w3/(w1+w2+w3) >= e3/(e1+e2+e3)   and   w1/(w1+w2+w3) <= e1/(e1+e2+e3)
//! ```
//!
//! and in that case the target triple is a nonnegative combination of the six
//! permutations of `(e1, e2, e3)`. [`decompose_triangle`] finds explicit
//! coefficients: it scans all twenty 3-permutation subsets in a fixed
//! lexicographic order, solving each 3x3 system exactly and returning the
//! first nonnegative solution; degenerate cases where every 3x3 system is
//! singular fall back to an exact feasibility LP over all six permutations.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::Rational;
use crate::simplex::{solve_equality_feasibility, LpOutcome};

/// The six permutations of three slots, in lexicographic order. Permutation
/// `p` sends the template triple `(e1,e2,e3)` to the column
/// `(e[p[0]], e[p[1]], e[p[2]])`.
pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// A weighted triangle `T_{e1,e2,e3}` identified by its sorted weights
/// `e1 >= e2 >= e3 > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TriangleTemplate {
    weights: [Rational; 3],
}

/// Rejections from template construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangleError {
    NonPositiveWeight,
    /// The sorted triple fails the feasibility inequalities against the
    /// template.
    Infeasible {
        w: TriangleTemplate,
        e: TriangleTemplate,
    },
}

impl core::fmt::Display for TriangleError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TriangleError::NonPositiveWeight => write!(f, "triangle weights must be positive"),
            TriangleError::Infeasible { w, e } => {
                write!(f, "{w} has no fractional {e}-decomposition")
            }
        }
    }
}

impl core::error::Error for TriangleError {}

impl TriangleTemplate {
    /// Builds `T_{e1,e2,e3}` from weights in any order; they are sorted
    /// descending. All weights must be strictly positive.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<TriangleTemplate, TriangleError> {
        if !a.is_positive() || !b.is_positive() || !c.is_positive() {
            return Err(TriangleError::NonPositiveWeight);
        }
        let mut weights = [a, b, c];
        weights.sort_by(|x, y| y.cmp(x));
        Ok(TriangleTemplate { weights })
    }

    /// Builds a template from small integers; panics on non-positive input.
    pub fn from_ints(a: i64, b: i64, c: i64) -> TriangleTemplate {
        TriangleTemplate::new(
            crate::rational::int(a),
            crate::rational::int(b),
            crate::rational::int(c),
        )
        .expect("template weights must be positive")
    }

    /// Sorts an arbitrary positive triple and records the provenance of each
    /// sorted slot: `order[i]` is the index in `raw` that ended up in slot
    /// `i`. Ties keep the original order, so the result is deterministic.
    pub fn sorted_with_order(
        raw: &[Rational; 3],
    ) -> Result<(TriangleTemplate, [usize; 3]), TriangleError> {
        if raw.iter().any(|x| !x.is_positive()) {
            return Err(TriangleError::NonPositiveWeight);
        }
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| raw[j].cmp(&raw[i]).then(i.cmp(&j)));
        let weights = [
            raw[order[0]].clone(),
            raw[order[1]].clone(),
            raw[order[2]].clone(),
        ];
        Ok((TriangleTemplate { weights }, order))
    }

    pub fn e1(&self) -> &Rational {
        &self.weights[0]
    }

    pub fn e2(&self) -> &Rational {
        &self.weights[1]
    }

    pub fn e3(&self) -> &Rational {
        &self.weights[2]
    }

    pub fn weights(&self) -> &[Rational; 3] {
        &self.weights
    }

    pub fn sum(&self) -> Rational {
        &self.weights[0] + &self.weights[1] + &self.weights[2]
    }

    /// The template as a weighted graph on `{0,1,2}` with `w(0,1) = e1`,
    /// `w(0,2) = e2`, `w(1,2) = e3`.
    pub fn to_weighted_graph(&self) -> crate::weighted::WeightedGraph {
        crate::weighted::weighted_triangle(
            self.weights[0].clone(),
            self.weights[1].clone(),
            self.weights[2].clone(),
        )
    }
}

impl core::fmt::Display for TriangleTemplate {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "T_{{{},{},{}}}",
            self.weights[0], self.weights[1], self.weights[2]
        )
    }
}

/// Nonnegative coefficients over permutations of the template weights whose
/// permuted sum reproduces a target triple exactly. Zero coefficients are
/// omitted, so at most six entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleDecomposition {
    coefficients: BTreeMap<[usize; 3], Rational>,
}

impl TriangleDecomposition {
    pub fn coefficients(&self) -> impl Iterator<Item = (&[usize; 3], &Rational)> {
        self.coefficients.iter()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Evaluates `sum_pi c_pi * pi(e)` exactly.
    pub fn reconstruct(&self, template: &TriangleTemplate) -> [Rational; 3] {
        let mut out = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (perm, coeff) in &self.coefficients {
            for slot in 0..3 {
                out[slot] = &out[slot] + coeff * &template.weights()[perm[slot]];
            }
        }
        out
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.coefficients
            .values()
            .fold(Rational::zero(), |a, c| a + c)
    }
}

/// The exact feasibility test: `w` has a fractional `e`-decomposition iff
/// `w3 * (e1+e2+e3) >= e3 * (w1+w2+w3)` and `w1 * (e1+e2+e3) <= e1 * (w1+w2+w3)`.
pub fn eq2_feasible(w: &TriangleTemplate, e: &TriangleTemplate) -> bool {
    let sw = w.sum();
    let se = e.sum();
    w.e3() * &se >= e.e3() * &sw && w.e1() * &se <= e.e1() * &sw
}

/// For templates of the cycle form `(l-2, 1, 1)` the two feasibility
/// inequalities collapse to the single test `(l-1) * w3 >= w1 + w2`.
/// Requires odd `l >= 3`.
pub fn cycle_feasibility_simplified(w: &TriangleTemplate, l: usize) -> bool {
    assert!(l >= 3 && l % 2 == 1, "cycle length must be odd and >= 3");
    crate::rational::int((l - 1) as i64) * w.e3() >= w.e1() + w.e2()
}

/// Finds nonnegative coefficients `c_pi` over permutations of the template
/// weights with `sum_pi c_pi * pi(e) = w`, or reports infeasibility.
///
/// Scans the twenty 3-subsets of the six permutations in lexicographic
/// order; each nonsingular 3x3 system is solved exactly and the first
/// all-nonnegative solution wins, so results are deterministic. If every
/// subset is singular or signs fail (possible only in degenerate cases such
/// as repeated template weights), an exact feasibility LP over all six
/// permutation columns finishes the job.
pub fn decompose_triangle(
    w: &TriangleTemplate,
    e: &TriangleTemplate,
) -> Result<TriangleDecomposition, TriangleError> {
    if !eq2_feasible(w, e) {
        return Err(TriangleError::Infeasible {
            w: w.clone(),
            e: e.clone(),
        });
    }
    let columns: Vec<[Rational; 3]> = PERMUTATIONS
        .iter()
        .map(|p| {
            [
                e.weights()[p[0]].clone(),
                e.weights()[p[1]].clone(),
                e.weights()[p[2]].clone(),
            ]
        })
        .collect();

    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                if let Some(coeffs) = solve_3x3(&columns[a], &columns[b], &columns[c], w.weights())
                {
                    if coeffs.iter().all(|x| !x.is_negative()) {
                        let mut map = BTreeMap::new();
                        for (idx, coeff) in [a, b, c].into_iter().zip(coeffs) {
                            if !coeff.is_zero() {
                                map.insert(PERMUTATIONS[idx], coeff);
                            }
                        }
                        return Ok(TriangleDecomposition { coefficients: map });
                    }
                }
            }
        }
    }

    // Degenerate fallback: exact Phase-I over all six columns.
    let lp_columns: Vec<Vec<(usize, Rational)>> = columns
        .iter()
        .map(|col| (0..3).map(|i| (i, col[i].clone())).collect())
        .collect();
    match solve_equality_feasibility(3, &lp_columns, w.weights()) {
        LpOutcome::Feasible(x) => {
            let mut map = BTreeMap::new();
            for (idx, coeff) in x.into_iter().enumerate() {
                if !coeff.is_zero() {
                    map.insert(PERMUTATIONS[idx], coeff);
                }
            }
            Ok(TriangleDecomposition { coefficients: map })
        }
        // Theorem: the feasibility test is exact, so a feasible triple always
        // admits a nonnegative combination. Reaching this arm is a bug.
        LpOutcome::Infeasible { .. } => {
            unreachable!("feasible triple with no nonnegative combination")
        }
    }
}

/// Cramer's rule over exact rationals; `None` when the matrix is singular.
fn solve_3x3(
    c0: &[Rational; 3],
    c1: &[Rational; 3],
    c2: &[Rational; 3],
    rhs: &[Rational; 3],
) -> Option<[Rational; 3]> {
    let det = det3(c0, c1, c2);
    if det.is_zero() {
        return None;
    }
    let x0 = det3(rhs, c1, c2) / &det;
    let x1 = det3(c0, rhs, c2) / &det;
    let x2 = det3(c0, c1, rhs) / &det;
    Some([x0, x1, x2])
}

fn det3(c0: &[Rational; 3], c1: &[Rational; 3], c2: &[Rational; 3]) -> Rational {
    &c0[0] * (&c1[1] * &c2[2] - &c1[2] * &c2[1])
        - &c1[0] * (&c0[1] * &c2[2] - &c0[2] * &c2[1])
        + &c2[0] * (&c0[1] * &c1[2] - &c0[2] * &c1[1])
}
