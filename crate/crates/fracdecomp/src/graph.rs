//! Simple undirected graphs on vertex set `{0, …, n-1}`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::rational::gcd_usize;

/// An unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Panics on a loop; callers reject loops
    /// with a proper error before constructing an `Edge`.
    pub fn new(a: usize, b: usize) -> Edge {
        assert!(a != b, "loops are not allowed");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    /// True if the two edges share exactly one endpoint.
    pub fn is_adjacent_to(&self, other: &Edge) -> bool {
        *self != *other
            && (self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v)
    }
}

impl core::fmt::Display for Edge {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Errors from [`Graph`] construction and divisibility tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// An edge endpoint is `>= n`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// An edge joins a vertex to itself.
    Loop { vertex: usize },
    /// The same pair appears twice in an edge list.
    ParallelEdge { edge: (usize, usize) },
    /// A divisibility test against an edgeless template.
    EmptyTemplate,
}

impl core::fmt::Display for GraphError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            GraphError::Loop { vertex } => write!(f, "loop at vertex {vertex}"),
            GraphError::ParallelEdge { edge } => {
                write!(f, "parallel edge ({}, {})", edge.0, edge.1)
            }
            GraphError::EmptyTemplate => write!(f, "template graph has no edges"),
        }
    }
}

impl core::error::Error for GraphError {}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from an edge list, rejecting loops, parallel edges and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges = BTreeSet::new();
        for &(a, b) in pairs {
            if a == b {
                return Err(GraphError::Loop { vertex: a });
            }
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if !edges.insert(Edge::new(a, b)) {
                return Err(GraphError::ParallelEdge { edge: (a, b) });
            }
        }
        Ok(Graph { n, edges })
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Graph {
        let mut edges = BTreeSet::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.insert(Edge { u, v });
            }
        }
        Graph { n, edges }
    }

    /// The cycle `C_len` with vertex `i` adjacent to `i±1 (mod len)`.
    /// Requires `len >= 3`.
    pub fn cycle(len: usize) -> Graph {
        assert!(len >= 3, "a cycle needs at least 3 vertices");
        let mut edges = BTreeSet::new();
        for i in 0..len {
            edges.insert(Edge::new(i, (i + 1) % len));
        }
        Graph { n: len, edges }
    }

    /// The path on `n` vertices, `0 - 1 - … - (n-1)`.
    pub fn path(n: usize) -> Graph {
        let mut edges = BTreeSet::new();
        for i in 1..n {
            edges.insert(Edge::new(i - 1, i));
        }
        Graph { n, edges }
    }

    /// The complete multipartite graph with the given part sizes. Vertices are
    /// numbered part by part, in order.
    pub fn complete_multipartite(parts: &[usize]) -> Graph {
        let n: usize = parts.iter().sum();
        let mut part_of = vec![0usize; n];
        let mut next = 0;
        for (i, &size) in parts.iter().enumerate() {
            for _ in 0..size {
                part_of[next] = i;
                next += 1;
            }
        }
        let mut edges = BTreeSet::new();
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    edges.insert(Edge { u, v });
                }
            }
        }
        Graph { n, edges }
    }

    /// Disjoint union: vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut edges = self.edges.clone();
        for e in &other.edges {
            edges.insert(Edge {
                u: e.u + self.n,
                v: e.v + self.n,
            });
        }
        Graph {
            n: self.n + other.n,
            edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains(&Edge::new(a, b))
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Inserts an edge, ignoring duplicates. Panics on loops or out-of-range
    /// endpoints; intended for generators that control their input.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "endpoint out of range");
        self.edges.insert(Edge::new(a, b));
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .count()
    }

    /// All vertex degrees, indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Adjacency sets as bitsets, one `Vec<u64>` per vertex.
    pub fn adjacency_bitsets(&self) -> Vec<Vec<u64>> {
        let blocks = self.n.div_ceil(64);
        let mut adj = vec![vec![0u64; blocks]; self.n];
        for e in &self.edges {
            adj[e.u][e.v / 64] |= 1 << (e.v % 64);
            adj[e.v][e.u / 64] |= 1 << (e.u % 64);
        }
        adj
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.u == v {
                    Some(e.v)
                } else if e.v == v {
                    Some(e.u)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The largest integer dividing every vertex degree; 0 for the edgeless
    /// graph by the usual gcd convention.
    pub fn degree_gcd(&self) -> usize {
        self.degrees().into_iter().fold(0, gcd_usize)
    }

    /// Divisibility of `self` by the template `template`: the template's edge
    /// count divides ours and the template's degree gcd divides ours.
    pub fn is_divisible_by(&self, template: &Graph) -> Result<bool, GraphError> {
        if template.edge_count() == 0 {
            return Err(GraphError::EmptyTemplate);
        }
        let edges_ok = self.edge_count() % template.edge_count() == 0;
        let g_t = template.degree_gcd();
        // gcd(template) >= 1 here because the template has an edge
        let gcd_ok = self.degree_gcd() % g_t == 0;
        Ok(edges_ok && gcd_ok)
    }

    /// Renders the `n m` / `u v` edge-list lines of the text format.
    pub fn to_text(&self) -> String {
        let mut out = alloc::format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&alloc::format!("{} {}\n", e.u, e.v));
        }
        out
    }
}
