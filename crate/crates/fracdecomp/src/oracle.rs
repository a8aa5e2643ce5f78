//! Independent ground truth for fractional decomposition existence.
//!
//! For a small host, every edge-valid embedding of the template is
//! enumerated (deduplicated by the edge-weight pattern it induces, i.e. up
//! to weighted automorphisms of the template) and existence of a fractional
//! decomposition becomes an exact rational feasibility LP: one nonnegative
//! scale variable per embedding, one equality per host edge. Feasibility
//! returns a witness the verifier accepts as exact; infeasibility returns a
//! certificate of edge potentials refuting every embedding simultaneously.
//!
//! This module shares nothing with the constructive decomposition paths
//! except the simplex kernel, so it serves as an independent check on them.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::graph::{Edge, Graph};
use crate::rational::Rational;
use crate::simplex::{solve_equality_feasibility, LpOutcome};
use crate::weighted::{FractionalDecomposition, ScaledCopy, WeightedGraph};

/// Default host-size guard; embedding enumeration is factorial in the
/// template order.
pub const DEFAULT_HOST_GUARD: usize = 12;

/// Oracle rejections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    HostTooLarge { n: usize, guard: usize },
    EmptyTemplate,
}

impl core::fmt::Display for OracleError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            OracleError::HostTooLarge { n, guard } => {
                write!(f, "host on {n} vertices exceeds the size guard {guard}")
            }
            OracleError::EmptyTemplate => write!(f, "template has no edges"),
        }
    }
}

impl core::error::Error for OracleError {}

/// The oracle's answer.
#[derive(Debug, Clone)]
pub enum OracleOutcome {
    /// A fractional decomposition exists; the witness verifies as exact.
    Feasible(FractionalDecomposition),
    /// No fractional decomposition exists. The certificate assigns each host
    /// edge a rational potential such that every embedding sees nonnegative
    /// total potential while the host total is negative; a decomposition
    /// would force both signs at once.
    Infeasible { farkas: Vec<(Edge, Rational)> },
}

impl OracleOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, OracleOutcome::Feasible(_))
    }
}

/// All edge-valid injective embeddings of the template's underlying graph
/// into `host`, deduplicated by the edge-weight pattern they induce (two
/// embeddings differing by a weight-preserving automorphism of the template
/// cover host edges identically and would only duplicate LP columns).
pub fn enumerate_embeddings(
    template: &WeightedGraph,
    host: &Graph,
    guard: usize,
) -> Result<Vec<Vec<usize>>, OracleError> {
    if host.n() > guard {
        return Err(OracleError::HostTooLarge {
            n: host.n(),
            guard,
        });
    }
    let k = template.n();
    let mut out = Vec::new();
    let mut seen_patterns: BTreeSet<Vec<(Edge, Rational)>> = BTreeSet::new();
    let mut image = alloc::vec![usize::MAX; k];
    let mut used = alloc::vec![false; host.n()];

    fn rec(
        v: usize,
        template: &WeightedGraph,
        host: &Graph,
        image: &mut [usize],
        used: &mut [bool],
        seen: &mut BTreeSet<Vec<(Edge, Rational)>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = image.len();
        if v == k {
            let mut pattern: Vec<(Edge, Rational)> = template
                .iter()
                .map(|(e, w)| (Edge::new(image[e.u], image[e.v]), w.clone()))
                .collect();
            pattern.sort();
            if seen.insert(pattern) {
                out.push(image.to_vec());
            }
            return;
        }
        'candidates: for cand in 0..host.n() {
            if used[cand] {
                continue;
            }
            for prev in 0..v {
                if template.has_edge(v, prev) && !host.has_edge(cand, image[prev]) {
                    continue 'candidates;
                }
            }
            image[v] = cand;
            used[cand] = true;
            rec(v + 1, template, host, image, used, seen, out);
            used[cand] = false;
            image[v] = usize::MAX;
        }
    }
    rec(
        0,
        template,
        host,
        &mut image,
        &mut used,
        &mut seen_patterns,
        &mut out,
    );
    Ok(out)
}

/// Existence of a fractional `template`-decomposition of a plain host graph,
/// with the default size guard.
pub fn fractional_decomposition_exists(
    template: &WeightedGraph,
    host: &Graph,
) -> Result<OracleOutcome, OracleError> {
    fractional_decomposition_exists_weighted(
        template,
        &WeightedGraph::from_graph(host),
        DEFAULT_HOST_GUARD,
    )
}

/// Existence of a fractional `template`-decomposition of a weighted host:
/// exact Phase-I simplex over one scale variable per embedding, one equality
/// per host edge.
pub fn fractional_decomposition_exists_weighted(
    template: &WeightedGraph,
    host: &WeightedGraph,
    guard: usize,
) -> Result<OracleOutcome, OracleError> {
    if template.is_empty() {
        return Err(OracleError::EmptyTemplate);
    }
    let embeddings = enumerate_embeddings(template, &host.underlying(), guard)?;

    let host_edges: Vec<Edge> = host.iter().map(|(e, _)| *e).collect();
    let row_of = |edge: &Edge| -> usize {
        host_edges
            .binary_search(edge)
            .expect("embedding edges lie in the host")
    };
    let columns: Vec<Vec<(usize, Rational)>> = embeddings
        .iter()
        .map(|phi| {
            template
                .iter()
                .map(|(e, w)| (row_of(&Edge::new(phi[e.u], phi[e.v])), w.clone()))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = host.iter().map(|(_, w)| w.clone()).collect();

    match solve_equality_feasibility(host_edges.len(), &columns, &rhs) {
        LpOutcome::Feasible(x) => {
            let copies: Vec<ScaledCopy> = embeddings
                .into_iter()
                .zip(x)
                .filter(|(_, alpha)| alpha.is_positive())
                .map(|(phi, alpha)| ScaledCopy::new(template.clone(), phi, alpha))
                .collect();
            let decomposition = FractionalDecomposition::new(host.clone(), copies)
                .expect("LP solution satisfies the per-edge equalities");
            debug_assert!(decomposition.is_exact());
            Ok(OracleOutcome::Feasible(decomposition))
        }
        LpOutcome::Infeasible { farkas } => {
            // flip signs so embeddings see >= 0 while the host sees < 0
            let farkas = host_edges
                .into_iter()
                .zip(farkas)
                .map(|(e, y)| (e, -y))
                .collect();
            Ok(OracleOutcome::Infeasible { farkas })
        }
    }
}

/// Checks an infeasibility certificate from first principles: every listed
/// embedding must see nonnegative total potential while the host total is
/// negative.
pub fn validate_infeasibility_certificate(
    template: &WeightedGraph,
    host: &WeightedGraph,
    embeddings: &[Vec<usize>],
    farkas: &[(Edge, Rational)],
) -> bool {
    let potential = |edge: &Edge| -> Option<&Rational> {
        farkas.iter().find(|(e, _)| e == edge).map(|(_, y)| y)
    };
    for phi in embeddings {
        let mut total = Rational::from_integer(0.into());
        for (e, w) in template.iter() {
            let Some(y) = potential(&Edge::new(phi[e.u], phi[e.v])) else {
                return false;
            };
            total += y * w;
        }
        if total.is_negative() {
            return false;
        }
    }
    let host_total = host
        .iter()
        .map(|(e, w)| potential(e).map(|y| y * w))
        .try_fold(Rational::from_integer(0.into()), |acc, term| {
            term.map(|t| acc + t)
        });
    match host_total {
        Some(total) => total.is_negative(),
        None => false,
    }
}
