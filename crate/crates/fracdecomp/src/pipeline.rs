//! Fractional decomposition of a host graph into scaled copies of a weighted
//! triangle, by weighting each triangle of the host and decomposing the
//! resulting weighted triangles against the template.
//!
//! Every edge `xy` of the host lying in `t_xy` triangles receives weight
//! `1/t_xy` in each of them, so the weighted triangles sum to the host
//! exactly; each of them is then decomposed with
//! [`decompose_triangle`](crate::triangle::decompose_triangle). The
//! minimum-degree threshold that makes this construction work is
//! [`delta_threshold`]; [`diagnose_t_ratios`] checks the triangle-count
//! ratio inequalities that drive the feasibility argument.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::graph::{Edge, Graph};
use crate::rational::{int, rat, Rational};
use crate::triangle::{decompose_triangle, TriangleError, TriangleTemplate};
use crate::weighted::{FractionalDecomposition, ScaledCopy, WeightedGraph};

/// Per-edge triangle counts: `t(xy)` is the number of common neighbours of
/// `x` and `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCountTable {
    counts: BTreeMap<Edge, usize>,
}

impl TriangleCountTable {
    pub fn t(&self, e: &Edge) -> usize {
        *self.counts.get(e).unwrap_or(&0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &usize)> {
        self.counts.iter()
    }

    /// The first edge (in ascending order) lying in no triangle, if any.
    pub fn first_uncovered(&self) -> Option<Edge> {
        self.counts
            .iter()
            .find(|(_, &t)| t == 0)
            .map(|(e, _)| *e)
    }
}

/// Exact common-neighbour counts for every edge of `g`.
pub fn triangle_counts(g: &Graph) -> TriangleCountTable {
    let adj = g.adjacency_bitsets();
    let counts = g
        .edges()
        .map(|e| {
            let t = adj[e.u]
                .iter()
                .zip(&adj[e.v])
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum();
            (*e, t)
        })
        .collect();
    TriangleCountTable { counts }
}

/// All triangles of `g` as ascending vertex triples, in lexicographic order.
pub fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let adj = g.adjacency_bitsets();
    let mut out = Vec::new();
    for e in g.edges() {
        let (u, v) = (e.u, e.v);
        // common neighbours above v so each triangle appears exactly once
        for (block, (a, b)) in adj[u].iter().zip(&adj[v]).enumerate() {
            let mut bits = a & b;
            while bits != 0 {
                let w = block * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if w > v {
                    out.push([u, v, w]);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The minimum-degree fraction above which every host graph admits a
/// fractional decomposition into scaled copies of `e`:
/// `1/2 + max{ e3/(2e1+2e2-2e3), (e2+e3)/(8e1-2e2-2e3) }`.
/// Both denominators are positive for any sorted positive template.
pub fn delta_threshold(e: &TriangleTemplate) -> Rational {
    let (e1, e2, e3) = (e.e1(), e.e2(), e.e3());
    let first = e3 / (int(2) * e1 + int(2) * e2 - int(2) * e3);
    let second = (e2 + e3) / (int(8) * e1 - int(2) * e2 - int(2) * e3);
    rat(1, 2) + first.max(second)
}

/// The degree margin `gamma = 1 - delta(e1,e2,e3)`, constrained to
/// `0 < gamma < 1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaBound {
    gamma: Rational,
}

impl GammaBound {
    pub fn new(gamma: Rational) -> Result<GammaBound, PipelineError> {
        if gamma.is_positive() && gamma < rat(1, 2) {
            Ok(GammaBound { gamma })
        } else {
            Err(PipelineError::GammaOutOfRange { gamma })
        }
    }

    /// `1 - delta_threshold(e)`; fails for templates whose threshold is 1
    /// (the all-equal templates, where the margin vanishes).
    pub fn from_template(e: &TriangleTemplate) -> Result<GammaBound, PipelineError> {
        GammaBound::new(Rational::one() - delta_threshold(e))
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }
}

/// Failures of the decomposition pipeline and its diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineError {
    /// An edge lies in no triangle, so no per-triangle weighting can cover it.
    UncoveredEdge { edge: Edge },
    /// A triangle's weight triple fails the feasibility test against the
    /// template; the sorted triple is the witness.
    InfeasibleTriangle {
        triangle: [usize; 3],
        weights: TriangleTemplate,
    },
    /// `diagnose_t_ratios` requires minimum degree at least `(1-gamma) * n`.
    MinDegreeTooLow { required: Rational, found: usize },
    GammaOutOfRange { gamma: Rational },
}

impl core::fmt::Display for PipelineError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PipelineError::UncoveredEdge { edge } => {
                write!(f, "edge {edge} lies in no triangle")
            }
            PipelineError::InfeasibleTriangle { triangle, weights } => write!(
                f,
                "triangle ({}, {}, {}) with weights {weights} is infeasible for the template",
                triangle[0], triangle[1], triangle[2]
            ),
            PipelineError::MinDegreeTooLow { required, found } => {
                write!(f, "minimum degree {found} is below the required {required}")
            }
            PipelineError::GammaOutOfRange { gamma } => {
                write!(f, "gamma {gamma} is outside (0, 1/2)")
            }
        }
    }
}

impl core::error::Error for PipelineError {}

/// A successful pipeline run: the verified decomposition plus the number of
/// host triangles it was built from.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub decomposition: FractionalDecomposition,
    pub triangle_count: usize,
}

/// Decomposes `g` into scaled copies of the weighted triangle `template`.
///
/// Each triangle `K` of `g` is weighted with `1/t_e` per edge and decomposed
/// against the template; the per-permutation coefficients become scaled
/// copies embedded so the template weights land on the right edges. Copies
/// are emitted in ascending triangle order (and permutation order within a
/// triangle), independent of any evaluation schedule.
///
/// Fails with a witness on the first edge in no triangle or the first
/// infeasible triangle; both occur only below the degree threshold.
pub fn fractional_triangle_decomposition(
    g: &Graph,
    template: &TriangleTemplate,
) -> Result<PipelineResult, PipelineError> {
    let counts = triangle_counts(g);
    if let Some(edge) = counts.first_uncovered() {
        return Err(PipelineError::UncoveredEdge { edge });
    }
    let template_graph = template.to_weighted_graph();
    // template edge carrying weight e_{j+1} is opposite template vertex opp_t[j]
    const OPP_TEMPLATE: [usize; 3] = [2, 1, 0];

    let mut cache: BTreeMap<[usize; 3], crate::triangle::TriangleDecomposition> = BTreeMap::new();
    let mut copies: Vec<ScaledCopy> = Vec::new();
    let all_triangles = triangles(g);
    for tri in &all_triangles {
        let [x, y, z] = *tri;
        // edge slots [xy, xz, yz] are opposite the vertices [z, y, x]
        let slot_t = [
            counts.t(&Edge::new(x, y)),
            counts.t(&Edge::new(x, z)),
            counts.t(&Edge::new(y, z)),
        ];
        let opp_host = [z, y, x];
        let raw = [
            rat(1, slot_t[0] as i64),
            rat(1, slot_t[1] as i64),
            rat(1, slot_t[2] as i64),
        ];
        let (sorted, order) = TriangleTemplate::sorted_with_order(&raw)
            .expect("triangle weights 1/t are positive");
        let mut key = slot_t;
        key.sort_unstable();
        let dec = match cache.entry(key) {
            alloc::collections::btree_map::Entry::Occupied(hit) => hit.into_mut(),
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                let dec = decompose_triangle(&sorted, template).map_err(|err| match err {
                    TriangleError::Infeasible { w, .. } => PipelineError::InfeasibleTriangle {
                        triangle: *tri,
                        weights: w,
                    },
                    other => unreachable!("unexpected solver error {other:?}"),
                })?;
                slot.insert(dec)
            }
        };
        for (perm, coeff) in dec.coefficients() {
            let mut embedding = [0usize; 3];
            for (slot, &weight_index) in perm.iter().enumerate() {
                // template weight `weight_index` lands on the host edge in
                // sorted slot `slot`, i.e. raw slot order[slot]
                embedding[OPP_TEMPLATE[weight_index]] = opp_host[order[slot]];
            }
            copies.push(ScaledCopy::new(
                template_graph.clone(),
                embedding.to_vec(),
                coeff.clone(),
            ));
        }
    }

    let host = WeightedGraph::from_graph(g);
    let decomposition = FractionalDecomposition::new(host, copies)
        .expect("per-triangle decompositions sum to the host weights");
    debug_assert!(decomposition.is_exact());
    Ok(PipelineResult {
        decomposition,
        triangle_count: all_triangles.len(),
    })
}

/// A violation found by [`diagnose_t_ratios`]. Any violation means the
/// minimum-degree precondition was not actually met or indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticViolation {
    /// Adjacent edges whose triangle counts differ by more than the allowed
    /// ratio `(1-gamma)/(1-2*gamma)`.
    AdjacentRatio { e: Edge, e_prime: Edge },
    /// A triangle violating one of the two reciprocal-sum inequalities;
    /// `inequality` is 1 or 2.
    TriangleInequality { triangle: [usize; 3], inequality: u8 },
}

/// Checks, for every pair of adjacent edges, that
/// `(1-2g)/(1-g) <= t_e/t_e' <= (1-g)/(1-2g)`, and for every triangle with
/// `t_xy <= t_xz <= t_yz` the two inequalities
/// `1/t_yz >= (1-2g)/(2-2g) * (1/t_xy + 1/t_xz)` and
/// `1/t_xy <= (1-g)/(2-4g) * (1/t_xz + 1/t_yz)`.
///
/// Requires minimum degree at least `(1 - gamma) * n`; under that
/// precondition every edge lies in a triangle and no violations occur.
pub fn diagnose_t_ratios(
    g: &Graph,
    gamma: &GammaBound,
) -> Result<Vec<DiagnosticViolation>, PipelineError> {
    let n = int(g.n() as i64);
    let required = (Rational::one() - gamma.gamma()) * &n;
    let found = g.min_degree();
    if int(found as i64) < required {
        return Err(PipelineError::MinDegreeTooLow { required, found });
    }
    let counts = triangle_counts(g);
    let one_minus = Rational::one() - gamma.gamma();
    let one_minus_two = Rational::one() - int(2) * gamma.gamma();
    let mut violations = Vec::new();

    // adjacent pairs share exactly one vertex; enumerate per shared vertex
    for v in 0..g.n() {
        let nbrs = g.neighbours(v);
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                let e = Edge::new(v, a);
                let e_prime = Edge::new(v, b);
                let te = int(counts.t(&e) as i64);
                let tp = int(counts.t(&e_prime) as i64);
                // t_e/t_e' >= (1-2g)/(1-g) and <= (1-g)/(1-2g)
                let lower_ok = &te * &one_minus >= &tp * &one_minus_two;
                let upper_ok = &te * &one_minus_two <= &tp * &one_minus;
                if !(lower_ok && upper_ok) {
                    violations.push(DiagnosticViolation::AdjacentRatio { e, e_prime });
                }
            }
        }
    }

    for tri in triangles(g) {
        let [x, y, z] = tri;
        let mut t = [
            counts.t(&Edge::new(x, y)),
            counts.t(&Edge::new(x, z)),
            counts.t(&Edge::new(y, z)),
        ];
        t.sort_unstable();
        let recip = |v: usize| rat(1, v as i64);
        let first = recip(t[2])
            >= &one_minus_two / (int(2) * &one_minus) * (recip(t[0]) + recip(t[1]));
        if !first {
            violations.push(DiagnosticViolation::TriangleInequality {
                triangle: tri,
                inequality: 1,
            });
        }
        let second = recip(t[0])
            <= &one_minus / (int(2) * &one_minus_two) * (recip(t[1]) + recip(t[2]));
        if !second {
            violations.push(DiagnosticViolation::TriangleInequality {
                triangle: tri,
                inequality: 2,
            });
        }
    }
    Ok(violations)
}
