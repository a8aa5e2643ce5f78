//! The q-blow-up operator and its explicit fractional decomposition.
//!
//! Blowing up a weighted graph `W` replaces each vertex by `q` clones and
//! each edge by a complete bipartite pattern of `q^2` edges carrying the
//! original weight. When `W` is the condensation of a graph `F` with respect
//! to a partition into independent sets and `q` is at least the largest part
//! size, the blow-up decomposes exactly into scaled copies of `F`: one copy
//! per partition-respecting injection of `V(F)`, each copy's edges weighing
//! `q^2 / |A|` where `A` is the set of all such injections.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::condense::{condense, IndexedPartition};
use crate::graph::Graph;
use crate::rational::Rational;
use crate::weighted::{FractionalDecomposition, ScaledCopy, WeightedGraph};

/// Default cap on the number of materialized injections; `|A|` grows like
/// `(q!)^k`, so larger instances should be checked combinatorially with
/// [`verify_cover_identity_combinatorial`] instead.
pub const DEFAULT_INJECTION_CAP: usize = 1_000_000;

/// Failures of blow-up decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowupError {
    /// `q` is below the largest part size, so no partition-respecting
    /// injection exists.
    QTooSmall { q: usize, max_part: usize },
    /// The injection family is larger than the materialization cap.
    CapExceeded { count: BigUint, cap: usize },
}

impl core::fmt::Display for BlowupError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BlowupError::QTooSmall { q, max_part } => {
                write!(f, "q = {q} is below the largest part size {max_part}")
            }
            BlowupError::CapExceeded { count, cap } => {
                write!(f, "{count} injections exceed the materialization cap {cap}")
            }
        }
    }
}

impl core::error::Error for BlowupError {}

/// The `q`-blow-up of `w`: vertex `x` becomes the block `{x*q, …, x*q+q-1}`,
/// and each edge `xy` of `w` becomes the `q x q` complete bipartite pattern
/// between the blocks, every edge carrying `w(xy)`. The total weight is
/// `q^2 * ||w||`.
pub fn blow_up(w: &WeightedGraph, q: usize) -> WeightedGraph {
    assert!(q >= 1, "blow-up factor must be at least 1");
    let mut out = WeightedGraph::empty(w.n() * q);
    for (e, weight) in w.iter() {
        for i in 0..q {
            for j in 0..q {
                out.set_weight(
                    crate::graph::Edge::new(e.u * q + i, e.v * q + j),
                    weight.clone(),
                );
            }
        }
    }
    out
}

fn falling_factorial(q: usize, k: usize) -> BigUint {
    let mut out = BigUint::one();
    for step in 0..k {
        out *= BigUint::from(q - step);
    }
    out
}

/// `|A| = prod_i q * (q-1) * … * (q - |U_i| + 1)`, the number of
/// partition-respecting injections. Rejects `q` below the largest part size
/// (where the product would be zero).
pub fn count_injections(partition: &IndexedPartition, q: usize) -> Result<BigUint, BlowupError> {
    let max_part = partition.max_part_size();
    if q < max_part {
        return Err(BlowupError::QTooSmall { q, max_part });
    }
    Ok(partition
        .parts()
        .iter()
        .map(|part| falling_factorial(q, part.len()))
        .product())
}

/// Number of partition-respecting injections that send one fixed crossing
/// edge of `F` (between parts `i` and `j`) onto one fixed blow-up position:
/// both endpoints pinned, the rest of their parts choose from `q-1` slots.
pub fn injections_covering_position(
    partition: &IndexedPartition,
    q: usize,
    part_i: usize,
    part_j: usize,
) -> BigUint {
    partition
        .parts()
        .iter()
        .enumerate()
        .map(|(h, part)| {
            if h == part_i || h == part_j {
                falling_factorial(q - 1, part.len() - 1)
            } else {
                falling_factorial(q, part.len())
            }
        })
        .product()
}

/// All partition-respecting injections of `V(F)` into the blow-up of the
/// condensation, in lexicographic order of the image sequence. Each entry
/// maps vertex `v` (in ascending order) to the blow-up vertex
/// `part(v) * q + slot`.
pub fn enumerate_injections(
    partition: &IndexedPartition,
    n: usize,
    q: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>, BlowupError> {
    let count = count_injections(partition, q)?;
    if count > BigUint::from(cap) {
        return Err(BlowupError::CapExceeded { count, cap });
    }
    let part_of = partition.part_of(n);
    let mut used = alloc::vec![alloc::vec![false; q]; partition.len()];
    let mut image = alloc::vec![0usize; n];
    let mut out = Vec::new();
    fn rec(
        v: usize,
        n: usize,
        q: usize,
        part_of: &[usize],
        used: &mut [Vec<bool>],
        image: &mut [usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == n {
            out.push(image.to_vec());
            return;
        }
        let p = part_of[v];
        for slot in 0..q {
            if used[p][slot] {
                continue;
            }
            used[p][slot] = true;
            image[v] = p * q + slot;
            rec(v + 1, n, q, part_of, used, image, out);
            used[p][slot] = false;
        }
    }
    rec(0, n, q, &part_of, &mut used, &mut image, &mut out);
    Ok(out)
}

/// The explicit fractional decomposition of the blow-up of a condensation:
/// host `Q = blow_up(condense(F, P), q)` and one scaled copy of `F` per
/// partition-respecting injection, each with scale factor `q^2 / |A|`.
/// Materializes at most [`DEFAULT_INJECTION_CAP`] copies; see
/// [`blowup_decomposition_with_cap`].
pub fn blowup_decomposition(
    f: &Graph,
    partition: &IndexedPartition,
    q: usize,
) -> Result<FractionalDecomposition, BlowupError> {
    blowup_decomposition_with_cap(f, partition, q, DEFAULT_INJECTION_CAP)
}

/// [`blowup_decomposition`] with a configurable materialization cap.
pub fn blowup_decomposition_with_cap(
    f: &Graph,
    partition: &IndexedPartition,
    q: usize,
    cap: usize,
) -> Result<FractionalDecomposition, BlowupError> {
    let count = count_injections(partition, q)?;
    let injections = enumerate_injections(partition, f.n(), q, cap)?;
    let host = blow_up(&condense(f, partition), q);
    let alpha = Rational::new(BigInt::from(q) * BigInt::from(q), BigInt::from(count));
    let template = WeightedGraph::from_graph(f);
    let copies = injections
        .into_iter()
        .map(|a| ScaledCopy::new(template.clone(), a, alpha.clone()))
        .collect();
    let decomposition = FractionalDecomposition::new(host, copies)
        .expect("injection copies cover the blow-up exactly");
    debug_assert!(decomposition.is_exact());
    Ok(decomposition)
}

/// Checks the per-edge cover identity `|A_e| * q^2 = w_Q(e) * |A|` for every
/// blow-up edge using counting formulas only — no injections are
/// materialized, so this also serves instances far beyond the cap.
///
/// Injections mapping distinct crossing edges onto the same position are
/// distinct (pinning the position pins both endpoints), so `|A_e|` is the
/// crossing-edge count `w_W(ij)` times the pinned-endpoints count; every
/// position of a part pair sees the same value.
pub fn verify_cover_identity_combinatorial(
    f: &Graph,
    partition: &IndexedPartition,
    q: usize,
) -> Result<bool, BlowupError> {
    let total = count_injections(partition, q)?;
    let w = condense(f, partition);
    let q_sq = BigUint::from(q) * BigUint::from(q);
    for (e, weight) in w.iter() {
        let pinned = injections_covering_position(partition, q, e.u, e.v);
        let crossing = BigUint::try_from(weight.to_integer()).expect("positive crossing count");
        // w_Q(e) = w_W(ij), so the identity reads |A_e| * q^2 = w_W(ij) * |A|
        let lhs = &crossing * pinned * &q_sq;
        let rhs = crossing * &total;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
