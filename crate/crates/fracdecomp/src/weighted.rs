//! Positively weighted graphs, scaled copies, and the exact verifier for
//! fractional packings and decompositions.
//!
//! A weighted graph assigns a strictly positive rational weight to each edge;
//! an edge of weight 0 is simply absent. A plain [`Graph`] is the all-weights-1
//! special case. All verification arithmetic is exact.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::graph::{Edge, Graph};
use crate::rational::Rational;

/// A simple graph with strictly positive rational edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    weights: BTreeMap<Edge, Rational>,
}

/// Errors from weighted-graph construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightError {
    NonPositiveWeight { edge: (usize, usize) },
    VertexOutOfRange { vertex: usize, n: usize },
    Loop { vertex: usize },
    DuplicateEdge { edge: (usize, usize) },
}

impl core::fmt::Display for WeightError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            WeightError::NonPositiveWeight { edge } => {
                write!(f, "non-positive weight on edge ({}, {})", edge.0, edge.1)
            }
            WeightError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            WeightError::Loop { vertex } => write!(f, "loop at vertex {vertex}"),
            WeightError::DuplicateEdge { edge } => {
                write!(f, "duplicate edge ({}, {})", edge.0, edge.1)
            }
        }
    }
}

impl core::error::Error for WeightError {}

impl WeightedGraph {
    /// The weighted graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> WeightedGraph {
        WeightedGraph {
            n,
            weights: BTreeMap::new(),
        }
    }

    /// Builds a weighted graph from `(u, v, weight)` triples. Weights must be
    /// strictly positive; zero-weight edges are not representable.
    pub fn from_weights(
        n: usize,
        items: &[(usize, usize, Rational)],
    ) -> Result<WeightedGraph, WeightError> {
        let mut weights = BTreeMap::new();
        for (a, b, w) in items {
            if a == b {
                return Err(WeightError::Loop { vertex: *a });
            }
            for x in [*a, *b] {
                if x >= n {
                    return Err(WeightError::VertexOutOfRange { vertex: x, n });
                }
            }
            if !w.is_positive() {
                return Err(WeightError::NonPositiveWeight { edge: (*a, *b) });
            }
            if weights.insert(Edge::new(*a, *b), w.clone()).is_some() {
                return Err(WeightError::DuplicateEdge { edge: (*a, *b) });
            }
        }
        Ok(WeightedGraph { n, weights })
    }

    /// A plain graph viewed as the all-weights-1 weighted graph.
    pub fn from_graph(g: &Graph) -> WeightedGraph {
        let weights = g
            .edges()
            .map(|e| (*e, Rational::one()))
            .collect::<BTreeMap<_, _>>();
        WeightedGraph { n: g.n(), weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, e: &Edge) -> Option<&Rational> {
        self.weights.get(e)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.weights.contains_key(&Edge::new(a, b))
    }

    /// Edges with their weights, in ascending edge order.
    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &Rational)> {
        self.weights.iter()
    }

    /// The underlying simple graph.
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for e in self.weights.keys() {
            g.add_edge(e.u, e.v);
        }
        g
    }

    /// True if every weight is 1, i.e. the weighted graph is a plain graph.
    pub fn is_plain_graph(&self) -> bool {
        self.weights.values().all(Rational::is_one)
    }

    /// Sum of all edge weights.
    pub fn total_weight(&self) -> Rational {
        self.weights.values().fold(Rational::zero(), |a, w| a + w)
    }

    /// Inserts an edge with a positive weight, or drops the edge when the
    /// weight is zero. Panics on negative weight or a duplicate edge.
    pub(crate) fn set_weight(&mut self, e: Edge, w: Rational) {
        assert!(e.u < self.n && e.v < self.n, "endpoint out of range");
        if w.is_zero() {
            return;
        }
        assert!(w.is_positive(), "negative edge weight");
        let prev = self.weights.insert(e, w);
        assert!(prev.is_none(), "duplicate edge");
    }

    /// The scaled copy `alpha * self` on the same vertices.
    pub fn scale(&self, alpha: &Rational) -> WeightedGraph {
        assert!(alpha.is_positive(), "scale factor must be positive");
        WeightedGraph {
            n: self.n,
            weights: self
                .weights
                .iter()
                .map(|(e, w)| (*e, w * alpha))
                .collect(),
        }
    }

    /// Searches for a scale factor `alpha` and an isomorphism `f` of
    /// underlying graphs with `w_self(e) = alpha * w_other(f(e))` for every
    /// edge `e` of `self`. Returns `alpha` if one exists.
    ///
    /// The candidate `alpha` is forced by the sorted weight multisets; the
    /// isomorphism search is a brute-force backtrack, adequate for the small
    /// templates this crate works with. For triangles the multiset check
    /// already decides the answer.
    pub fn is_scaled_copy_of(&self, other: &WeightedGraph) -> Option<Rational> {
        if self.n != other.n || self.weights.len() != other.weights.len() {
            return None;
        }
        if self.weights.is_empty() {
            return Some(Rational::one());
        }
        let mut mine: Vec<&Rational> = self.weights.values().collect();
        let mut theirs: Vec<&Rational> = other.weights.values().collect();
        mine.sort();
        theirs.sort();
        let alpha = mine[0] / theirs[0];
        if !mine
            .iter()
            .zip(&theirs)
            .all(|(m, t)| **m == &alpha * *t)
        {
            return None;
        }
        // Both underlying graphs are triangles: every edge permutation is
        // realized by a vertex bijection, so the multiset check suffices.
        if self.n == 3 && self.weights.len() == 3 {
            return Some(alpha);
        }
        let degrees_mine = self.underlying().degrees();
        let degrees_theirs = other.underlying().degrees();
        let mut image = alloc::vec![usize::MAX; self.n];
        let mut used = alloc::vec![false; self.n];
        if self.search_isomorphism(other, &alpha, &degrees_mine, &degrees_theirs, 0, &mut image, &mut used)
        {
            Some(alpha)
        } else {
            None
        }
    }

    fn search_isomorphism(
        &self,
        other: &WeightedGraph,
        alpha: &Rational,
        degrees_mine: &[usize],
        degrees_theirs: &[usize],
        next: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if next == self.n {
            return true;
        }
        'candidates: for cand in 0..self.n {
            if used[cand] || degrees_mine[next] != degrees_theirs[cand] {
                continue;
            }
            for prev in 0..next {
                let mine = self.weights.get(&Edge::new(next, prev));
                let theirs = other.weights.get(&Edge::new(cand, image[prev]));
                match (mine, theirs) {
                    (None, None) => {}
                    (Some(w), Some(w2)) if *w == alpha * w2 => {}
                    _ => continue 'candidates,
                }
            }
            image[next] = cand;
            used[cand] = true;
            if self.search_isomorphism(
                other,
                alpha,
                degrees_mine,
                degrees_theirs,
                next + 1,
                image,
                used,
            ) {
                return true;
            }
            used[cand] = false;
            image[next] = usize::MAX;
        }
        false
    }
}

/// A scaled copy of a template inside a host: an injective embedding of the
/// template's vertices plus a positive scale factor `alpha`. The copy places
/// weight `alpha * w_template(ab)` on host edge `{embedding[a], embedding[b]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledCopy {
    pub template: WeightedGraph,
    pub embedding: Vec<usize>,
    pub alpha: Rational,
}

impl ScaledCopy {
    pub fn new(template: WeightedGraph, embedding: Vec<usize>, alpha: Rational) -> ScaledCopy {
        ScaledCopy {
            template,
            embedding,
            alpha,
        }
    }

    /// Host edges covered by this copy with the weight each receives.
    pub fn covered_edges(&self) -> impl Iterator<Item = (Edge, Rational)> + '_ {
        self.template.iter().map(|(e, w)| {
            (
                Edge::new(self.embedding[e.u], self.embedding[e.v]),
                w * &self.alpha,
            )
        })
    }

    /// Total weight this copy contributes: `alpha * ||template||`.
    pub fn total_weight(&self) -> Rational {
        &self.alpha * self.template.total_weight()
    }
}

/// Outcome of verifying a collection of copies against a host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    /// Every host edge is covered to exactly its weight.
    Exact,
    /// Every host edge is covered to at most its weight; the uncovered
    /// remainder is returned (zero-weight edges omitted).
    Leftover(WeightedGraph),
}

/// Rejections from the verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    /// A copy's scale factor is not strictly positive.
    NonPositiveScale { copy: usize },
    /// A copy's embedding repeats a host vertex.
    EmbeddingNotInjective { copy: usize },
    /// A copy's embedding has the wrong arity or an out-of-range vertex.
    EmbeddingInvalid { copy: usize },
    /// A template edge lands on a pair that is not a host edge.
    EdgeNotInHost { copy: usize, edge: Edge },
    /// The first host edge (in ascending order) whose covering sum exceeds
    /// its weight, together with the excess.
    Oversubscribed { edge: Edge, excess: Rational },
}

impl core::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            VerifyError::NonPositiveScale { copy } => {
                write!(f, "copy {copy} has a non-positive scale factor")
            }
            VerifyError::EmbeddingNotInjective { copy } => {
                write!(f, "copy {copy} embedding is not injective")
            }
            VerifyError::EmbeddingInvalid { copy } => {
                write!(f, "copy {copy} embedding is malformed")
            }
            VerifyError::EdgeNotInHost { copy, edge } => {
                write!(f, "copy {copy} maps an edge onto non-edge {edge}")
            }
            VerifyError::Oversubscribed { edge, excess } => {
                write!(f, "edge {edge} oversubscribed by {excess}")
            }
        }
    }
}

impl core::error::Error for VerifyError {}

/// Verifies a fractional packing exactly: sums per host edge the weight
/// contributed by every copy (superimposed copies are allowed and summed) and
/// compares with the host weight.
///
/// Returns `Exact` when every edge sums to its host weight, `Leftover` when
/// some weight remains uncovered, and an error when a copy is malformed or
/// any edge is oversubscribed. Oversubscription reports the first such edge
/// in ascending edge order.
pub fn verify_fractional_decomposition(
    host: &WeightedGraph,
    copies: &[ScaledCopy],
) -> Result<VerifyOutcome, VerifyError> {
    let mut sums: BTreeMap<Edge, Rational> = BTreeMap::new();
    for (idx, copy) in copies.iter().enumerate() {
        if !copy.alpha.is_positive() {
            return Err(VerifyError::NonPositiveScale { copy: idx });
        }
        if copy.embedding.len() != copy.template.n() {
            return Err(VerifyError::EmbeddingInvalid { copy: idx });
        }
        if copy.embedding.iter().any(|&v| v >= host.n()) {
            return Err(VerifyError::EmbeddingInvalid { copy: idx });
        }
        let mut seen = alloc::vec![false; host.n()];
        for &v in &copy.embedding {
            if seen[v] {
                return Err(VerifyError::EmbeddingNotInjective { copy: idx });
            }
            seen[v] = true;
        }
        for (edge, w) in copy.covered_edges() {
            if host.weight(&edge).is_none() {
                return Err(VerifyError::EdgeNotInHost { copy: idx, edge });
            }
            sums.entry(edge)
                .and_modify(|s| *s += &w)
                .or_insert(w);
        }
    }
    let mut leftover = WeightedGraph::empty(host.n());
    let mut exact = true;
    for (edge, host_w) in host.iter() {
        let covered = sums.remove(edge).unwrap_or_else(Rational::zero);
        if &covered > host_w {
            return Err(VerifyError::Oversubscribed {
                edge: *edge,
                excess: covered - host_w,
            });
        }
        if &covered < host_w {
            exact = false;
            leftover.set_weight(*edge, host_w - covered);
        }
    }
    if exact {
        Ok(VerifyOutcome::Exact)
    } else {
        Ok(VerifyOutcome::Leftover(leftover))
    }
}

/// A verified fractional packing: host, copies, and the leftover weight.
/// Built through [`FractionalDecomposition::new`], which runs the verifier,
/// so the per-edge ledger invariant holds by construction.
#[derive(Debug, Clone)]
pub struct FractionalDecomposition {
    pub host: WeightedGraph,
    pub copies: Vec<ScaledCopy>,
    pub leftover: WeightedGraph,
}

impl FractionalDecomposition {
    pub fn new(
        host: WeightedGraph,
        copies: Vec<ScaledCopy>,
    ) -> Result<FractionalDecomposition, VerifyError> {
        let leftover = match verify_fractional_decomposition(&host, &copies)? {
            VerifyOutcome::Exact => WeightedGraph::empty(host.n()),
            VerifyOutcome::Leftover(l) => l,
        };
        Ok(FractionalDecomposition {
            host,
            copies,
            leftover,
        })
    }

    /// True when the leftover has no edges, i.e. the packing is a
    /// decomposition.
    pub fn is_exact(&self) -> bool {
        self.leftover.is_empty()
    }
}

/// Convenience: the weighted triangle `T_{a,b,c}` on vertices `{0,1,2}` with
/// `w(0,1) = a`, `w(0,2) = b`, `w(1,2) = c`.
pub fn weighted_triangle(a: Rational, b: Rational, c: Rational) -> WeightedGraph {
    WeightedGraph::from_weights(3, &[(0, 1, a), (0, 2, b), (1, 2, c)])
        .expect("triangle weights must be positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn t311() -> WeightedGraph {
        weighted_triangle(int(3), int(1), int(1))
    }

    #[test]
    fn total_weight_examples() {
        assert_eq!(WeightedGraph::empty(4).total_weight(), int(0));
        assert_eq!(t311().total_weight(), int(5));
        let c5 = WeightedGraph::from_graph(&Graph::cycle(5));
        assert_eq!(c5.total_weight(), int(5));
    }

    #[test]
    fn zero_weight_edges_are_rejected_or_dropped() {
        let err = WeightedGraph::from_weights(2, &[(0, 1, int(0))]);
        assert_eq!(
            err,
            Err(WeightError::NonPositiveWeight { edge: (0, 1) })
        );
        let mut w = WeightedGraph::empty(2);
        w.set_weight(Edge::new(0, 1), int(0));
        assert!(w.is_empty());
    }

    #[test]
    fn scaled_copy_recognition() {
        let t622 = weighted_triangle(int(6), int(2), int(2));
        assert_eq!(t622.is_scaled_copy_of(&t311()), Some(int(2)));
        let t321 = weighted_triangle(int(3), int(2), int(1));
        assert_eq!(t311().is_scaled_copy_of(&t321), None);
        assert_eq!(t311().is_scaled_copy_of(&t311()), Some(int(1)));
    }

    #[test]
    fn scaled_copy_recognition_beyond_triangles() {
        // C5 with weights 1,2,3,4,5 against its double
        let base = WeightedGraph::from_weights(
            5,
            &[
                (0, 1, int(1)),
                (1, 2, int(2)),
                (2, 3, int(3)),
                (3, 4, int(4)),
                (4, 0, int(5)),
            ],
        )
        .unwrap();
        let doubled = base.scale(&int(2));
        assert_eq!(doubled.is_scaled_copy_of(&base), Some(int(2)));
        // same multiset on a different underlying graph: path vs star
        let path = WeightedGraph::from_weights(4, &[(0, 1, int(1)), (1, 2, int(2)), (2, 3, int(3))])
            .unwrap();
        let star = WeightedGraph::from_weights(4, &[(0, 1, int(1)), (0, 2, int(2)), (0, 3, int(3))])
            .unwrap();
        assert_eq!(path.is_scaled_copy_of(&star), None);
        // relabelled weighted cycle is a scaled copy with alpha 1
        let rotated = WeightedGraph::from_weights(
            5,
            &[
                (1, 2, int(1)),
                (2, 3, int(2)),
                (3, 4, int(3)),
                (4, 0, int(4)),
                (0, 1, int(5)),
            ],
        )
        .unwrap();
        assert_eq!(rotated.is_scaled_copy_of(&base), Some(int(1)));
    }

    #[test]
    fn scaled_copy_inverts() {
        let t = weighted_triangle(rat(3, 2), rat(1, 2), rat(1, 2));
        let alpha = t.is_scaled_copy_of(&t311()).unwrap();
        assert_eq!(alpha, rat(1, 2));
        let inverse = t311().is_scaled_copy_of(&t).unwrap();
        assert_eq!(inverse, int(2));
        assert_eq!(alpha * inverse, int(1));
    }

    fn identity_copy(alpha: Rational) -> ScaledCopy {
        ScaledCopy::new(t311(), alloc::vec![0, 1, 2], alpha)
    }

    #[test]
    fn verifier_exact() {
        let outcome = verify_fractional_decomposition(&t311(), &[identity_copy(int(1))]);
        assert_eq!(outcome, Ok(VerifyOutcome::Exact));
    }

    #[test]
    fn verifier_leftover_is_half() {
        let outcome =
            verify_fractional_decomposition(&t311(), &[identity_copy(rat(1, 2))]).unwrap();
        let expected = weighted_triangle(rat(3, 2), rat(1, 2), rat(1, 2));
        assert_eq!(outcome, VerifyOutcome::Leftover(expected));
    }

    #[test]
    fn verifier_reports_first_oversubscribed_edge() {
        let outcome = verify_fractional_decomposition(
            &t311(),
            &[identity_copy(int(1)), identity_copy(int(1))],
        );
        // first edge in ascending order is (0,1) of weight 3; excess equals it
        assert_eq!(
            outcome,
            Err(VerifyError::Oversubscribed {
                edge: Edge::new(0, 1),
                excess: int(3),
            })
        );
    }

    #[test]
    fn verifier_rejects_malformed_copies() {
        let host = t311();
        let bad_scale = ScaledCopy::new(t311(), alloc::vec![0, 1, 2], int(0));
        assert_eq!(
            verify_fractional_decomposition(&host, &[bad_scale]),
            Err(VerifyError::NonPositiveScale { copy: 0 })
        );
        let repeated = ScaledCopy::new(t311(), alloc::vec![0, 1, 1], int(1));
        assert_eq!(
            verify_fractional_decomposition(&host, &[repeated]),
            Err(VerifyError::EmbeddingNotInjective { copy: 0 })
        );
        let host_path = WeightedGraph::from_weights(
            3,
            &[(0, 1, int(3)), (1, 2, int(1))],
        )
        .unwrap();
        let off_host = ScaledCopy::new(t311(), alloc::vec![0, 1, 2], int(1));
        assert_eq!(
            verify_fractional_decomposition(&host_path, &[off_host]),
            Err(VerifyError::EdgeNotInHost {
                copy: 0,
                edge: Edge::new(0, 2),
            })
        );
    }

    #[test]
    fn decomposition_weight_conservation() {
        // total(host) = sum alpha*total(template) + total(leftover)
        let host = t311();
        let copies = alloc::vec![identity_copy(rat(1, 3)), identity_copy(rat(1, 6))];
        let dec = FractionalDecomposition::new(host.clone(), copies).unwrap();
        let copies_total: Rational = dec
            .copies
            .iter()
            .map(ScaledCopy::total_weight)
            .fold(int(0), |a, b| a + b);
        assert_eq!(
            host.total_weight(),
            copies_total + dec.leftover.total_weight()
        );
        assert!(!dec.is_exact());
    }
}
