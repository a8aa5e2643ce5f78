//! Condensation of a graph with respect to an indexed partition into
//! independent sets.
//!
//! The condensation is the weighted graph on the partition indices whose edge
//! `ij` carries the number of original edges with one endpoint in part `i`
//! and one in part `j`; index pairs with no crossing edges get no edge.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Edge, Graph};
use crate::rational::int;
use crate::weighted::WeightedGraph;

/// An ordered partition `U_1, …, U_k` of the vertices of a graph into
/// nonempty independent sets. Validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedPartition {
    parts: Vec<Vec<usize>>,
}

/// Rejections from partition validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    EmptyPart { index: usize },
    VertexOutOfRange { vertex: usize },
    RepeatedVertex { vertex: usize },
    MissingVertex { vertex: usize },
    /// A part contains both endpoints of an edge.
    PartNotIndependent { index: usize, edge: Edge },
}

impl core::fmt::Display for PartitionError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PartitionError::EmptyPart { index } => write!(f, "part {index} is empty"),
            PartitionError::VertexOutOfRange { vertex } => {
                write!(f, "vertex {vertex} out of range")
            }
            PartitionError::RepeatedVertex { vertex } => {
                write!(f, "vertex {vertex} appears in two parts")
            }
            PartitionError::MissingVertex { vertex } => {
                write!(f, "vertex {vertex} is not covered by the partition")
            }
            PartitionError::PartNotIndependent { index, edge } => {
                write!(f, "part {index} contains internal edge {edge}")
            }
        }
    }
}

impl core::error::Error for PartitionError {}

impl IndexedPartition {
    /// Validates that `parts` is a partition of `V(graph)` into nonempty
    /// independent sets.
    pub fn new(graph: &Graph, parts: Vec<Vec<usize>>) -> Result<IndexedPartition, PartitionError> {
        let n = graph.n();
        let mut seen = vec![false; n];
        for (index, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart { index });
            }
            for &v in part {
                if v >= n {
                    return Err(PartitionError::VertexOutOfRange { vertex: v });
                }
                if seen[v] {
                    return Err(PartitionError::RepeatedVertex { vertex: v });
                }
                seen[v] = true;
            }
            for (a_idx, &a) in part.iter().enumerate() {
                for &b in &part[a_idx + 1..] {
                    if graph.has_edge(a, b) {
                        return Err(PartitionError::PartNotIndependent {
                            index,
                            edge: Edge::new(a, b),
                        });
                    }
                }
            }
        }
        if let Some(v) = seen.iter().position(|covered| !covered) {
            return Err(PartitionError::MissingVertex { vertex: v });
        }
        Ok(IndexedPartition { parts })
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn max_part_size(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Part index of each vertex.
    pub fn part_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                out[v] = i;
            }
        }
        out
    }
}

/// Condenses `graph` with respect to `partition`. Vertex `i` of the result
/// corresponds to part `U_{i+1}`; the weight of edge `ij` counts the crossing
/// edges between the two parts, so results are reproducible byte for byte.
pub fn condense(graph: &Graph, partition: &IndexedPartition) -> WeightedGraph {
    let part_of = partition.part_of(graph.n());
    let mut counts: alloc::collections::BTreeMap<Edge, u64> = alloc::collections::BTreeMap::new();
    for e in graph.edges() {
        let (pi, pj) = (part_of[e.u], part_of[e.v]);
        // parts are independent, so pi != pj
        *counts.entry(Edge::new(pi, pj)).or_insert(0) += 1;
    }
    let mut out = WeightedGraph::empty(partition.len());
    for (e, c) in counts {
        out.set_weight(e, int(c as i64));
    }
    out
}

/// The canonical tripartition of the odd cycle `C_len` (vertices `0..len` in
/// cycle order): one singleton part `{0}` and the two alternating halves of
/// the remaining path. Its condensation is the weighted triangle with weights
/// `(len-2, 1, 1)`.
pub fn canonical_tripartition_of_cycle(len: usize) -> Result<(Graph, IndexedPartition), CycleError> {
    if len < 3 {
        return Err(CycleError::TooShort { len });
    }
    if len % 2 == 0 {
        return Err(CycleError::Even { len });
    }
    let cycle = Graph::cycle(len);
    let odd: Vec<usize> = (1..len).step_by(2).collect();
    let even: Vec<usize> = (2..len).step_by(2).collect();
    let parts = vec![odd, even, vec![0]];
    let partition = IndexedPartition::new(&cycle, parts)
        .expect("alternating halves of an odd cycle are independent");
    Ok((cycle, partition))
}

/// Rejections from [`canonical_tripartition_of_cycle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleError {
    TooShort { len: usize },
    Even { len: usize },
}

impl core::fmt::Display for CycleError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CycleError::TooShort { len } => write!(f, "cycle length {len} is below 3"),
            CycleError::Even { len } => write!(f, "cycle length {len} is even"),
        }
    }
}

impl core::error::Error for CycleError {}
