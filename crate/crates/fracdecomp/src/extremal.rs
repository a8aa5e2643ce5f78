//! Extremal host constructions and ratio-based nonexistence certificates.
//!
//! Two partition-density parameters of a template `W` bound how dense a host
//! must be before fractional `W`-decompositions can exist:
//!
//! * `rho_bipartite_min`: the least fraction of `||W||` that any vertex
//!   bipartition leaves inside its two sides. A host split into two halves
//!   with few internal edges then starves the copies ([`build_two_halves_host`]).
//! * `rho_fourpart_max`: the largest fraction of `||W||` that a partition
//!   into four independent sets can place on a matched pair of part-pairs. A
//!   complete 4-partite host with heavy matched pairs then overfeeds the
//!   copies ([`build_four_partite_host`]).
//!
//! Either imbalance yields an [`EdgeBipartitionCertificate`]: an edge split
//! `(G0, G1)` of the host whose count ratio is incompatible with the
//! per-copy weight split, so no fractional `W`-decomposition of the host
//! exists. [`verify_certificate`] re-derives everything from scratch.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::graph::{Edge, Graph};
use crate::rational::{cmp_sqrt, int, rat, sqrt_floor, Rational};
use crate::weighted::WeightedGraph;

/// Vertex-count guard for the exhaustive bipartition search.
pub const MAX_BIPARTITION_VERTICES: usize = 20;
/// Vertex-count guard for the exhaustive 4-colouring search.
pub const MAX_FOURPART_VERTICES: usize = 16;

/// Failures of the extremal constructions and parameter searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtremalError {
    EmptyTemplate,
    TooManyVertices { n: usize, max: usize },
    /// The density parameter is outside the range the bound formula needs.
    RhoOutOfRange { rho: Rational },
    /// The template has no partition into four independent sets.
    NotFourColourable,
    /// Bipartite templates have `rho = 0` and yield no useful bound.
    RhoIsZero,
    /// The construction needs `n` divisible by `4 * g`.
    BadModulus { n: usize, modulus: usize },
    /// No valid regularity offset `h` below `n/2` exists at this `n`.
    NoValidOffset { n: usize },
}

impl core::fmt::Display for ExtremalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ExtremalError::EmptyTemplate => write!(f, "template has no edges"),
            ExtremalError::TooManyVertices { n, max } => {
                write!(f, "{n} vertices exceed the exhaustive-search guard {max}")
            }
            ExtremalError::RhoOutOfRange { rho } => write!(f, "rho {rho} out of range"),
            ExtremalError::NotFourColourable => {
                write!(f, "template has no partition into 4 independent sets")
            }
            ExtremalError::RhoIsZero => {
                write!(f, "template is bipartite, so the internal-density bound is vacuous")
            }
            ExtremalError::BadModulus { n, modulus } => {
                write!(f, "n = {n} must be divisible by {modulus}")
            }
            ExtremalError::NoValidOffset { n } => {
                write!(f, "no valid offset h < n/2 exists for n = {n}")
            }
        }
    }
}

impl core::error::Error for ExtremalError {}

/// Edge weights scaled to a common denominator, for fast exhaustive sums.
struct IntegerWeights {
    edges: Vec<(usize, usize)>,
    numers: Vec<BigInt>,
    total: BigInt,
}

impl IntegerWeights {
    fn of(w: &WeightedGraph) -> IntegerWeights {
        let lcm = w
            .iter()
            .fold(BigInt::one(), |acc, (_, wt)| acc.lcm(wt.denom()));
        let mut edges = Vec::new();
        let mut numers = Vec::new();
        let mut total = BigInt::zero();
        for (e, wt) in w.iter() {
            edges.push((e.u, e.v));
            let numer = wt.numer() * (&lcm / wt.denom());
            total += &numer;
            numers.push(numer);
        }
        IntegerWeights {
            edges,
            numers,
            total,
        }
    }
}

/// The largest `rho` such that every bipartition `{U1, U2}` of `V(W)` keeps
/// internal weight at least `rho * ||W||`: computed as the exact minimum of
/// the internal fraction over all `2^(n-1)` bipartitions. Bipartite templates
/// give 0. Guard: at most [`MAX_BIPARTITION_VERTICES`] vertices.
pub fn rho_bipartite_min(w: &WeightedGraph) -> Result<Rational, ExtremalError> {
    if w.is_empty() {
        return Err(ExtremalError::EmptyTemplate);
    }
    if w.n() > MAX_BIPARTITION_VERTICES {
        return Err(ExtremalError::TooManyVertices {
            n: w.n(),
            max: MAX_BIPARTITION_VERTICES,
        });
    }
    let iw = IntegerWeights::of(w);
    let mut best: Option<BigInt> = None;
    // vertex 0 stays on side 0; complements are equivalent
    for mask in 0u32..(1u32 << (w.n() - 1)) {
        let side = |v: usize| v != 0 && (mask >> (v - 1)) & 1 == 1;
        let mut internal = BigInt::zero();
        for ((u, v), numer) in iw.edges.iter().zip(&iw.numers) {
            if side(*u) == side(*v) {
                internal += numer;
            }
        }
        if best.as_ref().is_none_or(|b| internal < *b) {
            best = Some(internal);
        }
    }
    Ok(Rational::new(best.expect("nonempty mask range"), iw.total))
}

/// The smallest `rho` such that every partition of `V(W)` into at most four
/// independent sets puts weight at most `rho * ||W||` on a matched pair of
/// part-pairs: the exact maximum, over all such partitions and the three
/// pairings, of the matched crossing fraction. `None` when the template has
/// no partition into four independent sets. Empty parts are allowed.
/// Guard: at most [`MAX_FOURPART_VERTICES`] vertices.
pub fn rho_fourpart_max(w: &WeightedGraph) -> Result<Option<Rational>, ExtremalError> {
    if w.is_empty() {
        return Err(ExtremalError::EmptyTemplate);
    }
    if w.n() > MAX_FOURPART_VERTICES {
        return Err(ExtremalError::TooManyVertices {
            n: w.n(),
            max: MAX_FOURPART_VERTICES,
        });
    }
    let iw = IntegerWeights::of(w);
    let n = w.n();
    let mut assignment = vec![0usize; n];
    let mut best: Option<BigInt> = None;

    // restricted-growth enumeration of partitions into <= 4 independent
    // parts; independence is pruned as vertices are placed
    fn rec(
        v: usize,
        max_used: usize,
        w: &WeightedGraph,
        iw: &IntegerWeights,
        assignment: &mut [usize],
        best: &mut Option<BigInt>,
    ) {
        let n = assignment.len();
        if v == n {
            // matched crossing weight per pairing: (01|23), (02|13), (03|12)
            let mut cross = [[BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
                [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
                [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
                [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()]];
            for ((a, b), numer) in iw.edges.iter().zip(&iw.numers) {
                let (pa, pb) = (assignment[*a], assignment[*b]);
                cross[pa.min(pb)][pa.max(pb)] += numer;
            }
            for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
                let matched = &cross[a][b] + &cross[c][d];
                if best.as_ref().is_none_or(|cur| matched > *cur) {
                    *best = Some(matched);
                }
            }
            return;
        }
        let limit = (max_used + 1).min(3);
        for part in 0..=limit {
            let independent = (0..v)
                .filter(|&u| assignment[u] == part)
                .all(|u| !w.has_edge(u, v));
            if !independent {
                continue;
            }
            assignment[v] = part;
            rec(v + 1, max_used.max(part), w, iw, assignment, best);
        }
    }
    rec(0, 0, w, &iw, &mut assignment, &mut best);
    Ok(best.map(|b| Rational::new(b, iw.total)))
}

/// The internal-density lower bound `1/2 + rho/(2 - 2*rho)`; requires
/// `0 < rho < 1`.
pub fn internal_density_bound(rho: &Rational) -> Result<Rational, ExtremalError> {
    if !rho.is_positive() || *rho >= Rational::one() {
        return Err(ExtremalError::RhoOutOfRange { rho: rho.clone() });
    }
    Ok(rat(1, 2) + rho / (int(2) - int(2) * rho))
}

/// The pair of matched-crossing lower bounds for a given `rho`:
/// the strong form `(1/4) * (3 - sqrt((3*rho-1)/(1+rho)))` as a 50-digit
/// rational approximation, and the weaker closed form
/// `1/2 + (1-rho)/(2+6*rho)` exactly. Requires `1/3 <= rho < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedCrossingBound {
    /// Upper approximant of the strong bound, within `10^-50` of the true
    /// irrational value.
    pub strong_approx: Rational,
    /// The exact weak bound.
    pub weak: Rational,
    /// The radicand `(3*rho - 1)/(1 + rho)`, kept for exact comparisons.
    pub radicand: Rational,
}

impl MatchedCrossingBound {
    /// Exact comparison `strong >= weak`, by squaring — no approximation.
    pub fn strong_at_least_weak(&self) -> bool {
        // strong >= weak  iff  sqrt(radicand) <= 3 - 4*weak
        let rhs = int(3) - int(4) * &self.weak;
        cmp_sqrt(&self.radicand, &rhs) != core::cmp::Ordering::Greater
    }
}

/// Digits carried by the strong-bound approximation.
pub const CROSSING_BOUND_SQRT_DIGITS: u32 = 50;

pub fn matched_crossing_bound(rho: &Rational) -> Result<MatchedCrossingBound, ExtremalError> {
    if *rho < rat(1, 3) || *rho >= Rational::one() {
        return Err(ExtremalError::RhoOutOfRange { rho: rho.clone() });
    }
    let radicand = (int(3) * rho - int(1)) / (int(1) + rho);
    let root_lower = sqrt_floor(&radicand, CROSSING_BOUND_SQRT_DIGITS);
    let strong_approx = (int(3) - root_lower) / int(4);
    let weak = rat(1, 2) + (int(1) - rho) / (int(2) + int(6) * rho);
    Ok(MatchedCrossingBound {
        strong_approx,
        weak,
        radicand,
    })
}

/// The divisibility modulus `g`: `gcd(W) * |E(W)|` when the template is a
/// plain graph, and 1 otherwise.
pub fn divisibility_modulus(w: &WeightedGraph) -> usize {
    if w.is_plain_graph() {
        w.underlying().degree_gcd() * w.edge_count()
    } else {
        1
    }
}

/// The partition-density parameters of a template, bundled.
#[derive(Debug, Clone)]
pub struct RhoParams {
    pub rho_bipartite: Rational,
    pub rho_fourpart: Option<Rational>,
    pub g: usize,
    /// 50-digit approximation of `(1/4) * (1 + sqrt((3*rho-1)/(1+rho)))` for
    /// the four-part `rho`, when defined.
    pub gamma_lb: Option<Rational>,
}

pub fn rho_params(w: &WeightedGraph) -> Result<RhoParams, ExtremalError> {
    let rho_bipartite = rho_bipartite_min(w)?;
    let rho_fourpart = rho_fourpart_max(w)?;
    let gamma_lb = rho_fourpart.as_ref().map(|rho| {
        let radicand = (int(3) * rho - int(1)) / (int(1) + rho);
        (int(1) + sqrt_floor(&radicand, CROSSING_BOUND_SQRT_DIGITS)) / int(4)
    });
    Ok(RhoParams {
        rho_bipartite,
        rho_fourpart,
        g: divisibility_modulus(w),
        gamma_lb,
    })
}

/// Which way the certificate's ratio argument runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateDirection {
    /// Copies put at least `rho * ||W'||` on `G0`; the host has too little
    /// `G0` for that: `|E(G0)|/|E(G1)| < rho/(1-rho)`.
    InternalHeavy,
    /// Copies put at most `rho * ||W'||` on `G0`; the host has too much
    /// `G0` for that: `|E(G0)|/|E(G1)| > rho/(1-rho)`.
    CrossingLight,
}

/// A ratio-based witness that a host graph has no fractional
/// `W`-decomposition: a vertex partition inducing an edge split `(G0, G1)`
/// plus the density parameter `rho` of the template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBipartitionCertificate {
    pub direction: CertificateDirection,
    pub rho: Rational,
    /// Two parts for internal-heavy, four for crossing-light.
    pub parts: Vec<Vec<usize>>,
    pub g0: BTreeSet<Edge>,
    pub g1: BTreeSet<Edge>,
}

impl EdgeBipartitionCertificate {
    /// `|E(G0)| / |E(G1)| < rho / (1 - rho)` for internal-heavy,
    /// `>` for crossing-light, compared exactly in cleared form.
    pub fn ratio_inequality_holds(&self) -> bool {
        let g0 = int(self.g0.len() as i64);
        let g1 = int(self.g1.len() as i64);
        let lhs = g0 * (Rational::one() - &self.rho);
        let rhs = g1 * &self.rho;
        match self.direction {
            CertificateDirection::InternalHeavy => lhs < rhs,
            CertificateDirection::CrossingLight => lhs > rhs,
        }
    }
}

/// A built extremal host with its certificate and construction parameters.
#[derive(Debug, Clone)]
pub struct ExtremalConstruction {
    pub graph: Graph,
    pub certificate: EdgeBipartitionCertificate,
    /// The regularity offset used by the construction.
    pub h: usize,
    /// The divisibility modulus `g` of the template.
    pub g: usize,
}

fn check_modulus(n: usize, g: usize) -> Result<(), ExtremalError> {
    if n == 0 || n % (4 * g) != 0 {
        return Err(ExtremalError::BadModulus { n, modulus: 4 * g });
    }
    Ok(())
}

/// Adds the circulant of degree `h` (with `h` even, `h < m`) on the vertex
/// block `offset..offset+m`: `i` is joined to `i +- d (mod m)` for
/// `d = 1..=h/2`.
fn add_circulant(g: &mut Graph, offset: usize, m: usize, h: usize) {
    for i in 0..m {
        for d in 1..=h / 2 {
            g.add_edge(offset + i, offset + (i + d) % m);
        }
    }
}

/// Builds the internal-heavy extremal host for `w` on `n` vertices
/// (`n` divisible by `4g`): two halves carrying `h`-regular circulants, all
/// crossing edges present, where `h` is the largest multiple of `2g` strictly
/// below `rho * n / (2 - 2*rho)`. The host is `(n/2 + h)`-regular and its
/// certificate refutes any fractional `w`-decomposition.
pub fn build_two_halves_host(
    w: &WeightedGraph,
    n: usize,
) -> Result<ExtremalConstruction, ExtremalError> {
    let rho = rho_bipartite_min(w)?;
    if rho.is_zero() {
        return Err(ExtremalError::RhoIsZero);
    }
    let g = divisibility_modulus(w);
    check_modulus(n, g)?;
    let half = n / 2;

    // largest h = 2g*k with h < rho*n/(2-2rho)
    let bound = &rho * int(n as i64) / (int(2) - int(2) * &rho);
    let step = int((2 * g) as i64);
    let mut k = (&bound / &step).floor().to_integer();
    if int(2 * g as i64) * Rational::from_integer(k.clone()) == bound {
        k -= 1;
    }
    if k.is_negative() {
        return Err(ExtremalError::NoValidOffset { n });
    }
    let h = usize::try_from(&k * BigInt::from(2 * g)).expect("offset fits a machine word");
    if h >= half {
        return Err(ExtremalError::NoValidOffset { n });
    }

    let mut graph = Graph::empty(n);
    add_circulant(&mut graph, 0, half, h);
    add_circulant(&mut graph, half, half, h);
    for u in 0..half {
        for v in half..n {
            graph.add_edge(u, v);
        }
    }
    let parts = vec![(0..half).collect::<Vec<_>>(), (half..n).collect()];
    let certificate = certificate_from_parts(&graph, CertificateDirection::InternalHeavy, rho, parts);
    Ok(ExtremalConstruction {
        graph,
        certificate,
        h,
        g,
    })
}

/// Builds the crossing-light extremal host for `w` on `n` vertices
/// (`n` divisible by `4g`): the complete 4-partite graph with parts
/// `h, h, n/2-h, n/2-h`, where `h` is the smallest multiple of `2g`
/// exceeding `gamma * n` with `gamma = (1/4)(1 + sqrt((3*rho-1)/(1+rho)))`.
/// The comparison `h > gamma * n` is done exactly in squared form. Degrees
/// lie in `{n/2 + h, n - h}` and the certificate refutes any fractional
/// `w`-decomposition.
pub fn build_four_partite_host(
    w: &WeightedGraph,
    n: usize,
) -> Result<ExtremalConstruction, ExtremalError> {
    let rho = rho_fourpart_max(w)?.ok_or(ExtremalError::NotFourColourable)?;
    let g = divisibility_modulus(w);
    check_modulus(n, g)?;
    let half = n / 2;
    let radicand = (int(3) * &rho - int(1)) / (int(1) + &rho);

    // smallest h = 2g*k with h > gamma*n, i.e. 4h - n > 0 and
    // (4h - n)^2 > n^2 * radicand
    let mut h = 0usize;
    for k in 1usize.. {
        let candidate = 2 * g * k;
        if candidate >= half {
            return Err(ExtremalError::NoValidOffset { n });
        }
        let lead = 4 * candidate as i64 - n as i64;
        if lead > 0 && int(lead) * int(lead) > int(n as i64) * int(n as i64) * &radicand {
            h = candidate;
            break;
        }
    }

    let sizes = [h, h, half - h, half - h];
    let graph = Graph::complete_multipartite(&sizes);
    let mut parts = Vec::new();
    let mut next = 0;
    for size in sizes {
        parts.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    let certificate = certificate_from_parts(&graph, CertificateDirection::CrossingLight, rho, parts);
    Ok(ExtremalConstruction {
        graph,
        certificate,
        h,
        g,
    })
}

/// Splits `E(G)` according to the parts and direction: internal-heavy puts
/// within-part edges in `G0`, crossing-light puts the matched pairs
/// `(U1,U2)` and `(U3,U4)` in `G0`.
pub fn certificate_from_parts(
    graph: &Graph,
    direction: CertificateDirection,
    rho: Rational,
    parts: Vec<Vec<usize>>,
) -> EdgeBipartitionCertificate {
    let mut part_of = vec![usize::MAX; graph.n()];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v] = i;
        }
    }
    let mut g0 = BTreeSet::new();
    let mut g1 = BTreeSet::new();
    for e in graph.edges() {
        let (a, b) = (part_of[e.u], part_of[e.v]);
        let in_g0 = match direction {
            CertificateDirection::InternalHeavy => a == b,
            CertificateDirection::CrossingLight => {
                (a.min(b), a.max(b)) == (0, 1) || (a.min(b), a.max(b)) == (2, 3)
            }
        };
        if in_g0 {
            g0.insert(*e);
        } else {
            g1.insert(*e);
        }
    }
    EdgeBipartitionCertificate {
        direction,
        rho,
        parts,
        g0,
        g1,
    }
}

/// Re-derives a certificate's validity from scratch:
///
/// * the parts partition `V(G)` (and are independent sets for
///   crossing-light);
/// * `G0`/`G1` are exactly the edge split the parts induce;
/// * `0 < rho < 1` and the template really has the claimed partition-density
///   property (internal-heavy: every bipartition keeps `>= rho * ||W||`
///   internal; crossing-light: every 4-independent-partition's matched pairs
///   carry `<= rho * ||W||`);
/// * the edge-count ratio inequality holds strictly.
///
/// A `true` answer means no fractional `w`-decomposition of `g` exists.
pub fn verify_certificate(
    g: &Graph,
    cert: &EdgeBipartitionCertificate,
    w: &WeightedGraph,
) -> bool {
    // rho in range
    if !cert.rho.is_positive() || cert.rho >= Rational::one() {
        return false;
    }
    // parts partition the vertex set
    let expected_parts = match cert.direction {
        CertificateDirection::InternalHeavy => 2,
        CertificateDirection::CrossingLight => 4,
    };
    if cert.parts.len() != expected_parts {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for part in &cert.parts {
        for &v in part {
            if v >= g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return false;
    }
    // crossing-light hosts must leave every part independent
    if cert.direction == CertificateDirection::CrossingLight {
        let mut part_of = vec![usize::MAX; g.n()];
        for (i, part) in cert.parts.iter().enumerate() {
            for &v in part {
                part_of[v] = i;
            }
        }
        if g.edges().any(|e| part_of[e.u] == part_of[e.v]) {
            return false;
        }
    }
    // the claimed split must be exactly the derived one
    let derived = certificate_from_parts(g, cert.direction, cert.rho.clone(), cert.parts.clone());
    if derived.g0 != cert.g0 || derived.g1 != cert.g1 {
        return false;
    }
    // template-side density property, re-derived exhaustively
    let template_ok = match cert.direction {
        CertificateDirection::InternalHeavy => match rho_bipartite_min(w) {
            Ok(min) => min >= cert.rho,
            Err(_) => false,
        },
        CertificateDirection::CrossingLight => match rho_fourpart_max(w) {
            Ok(Some(max)) => max <= cert.rho,
            _ => false,
        },
    };
    if !template_ok {
        return false;
    }
    cert.ratio_inequality_holds()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weighted::weighted_triangle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rho_bipartite_examples() {
        let c5 = WeightedGraph::from_graph(&Graph::cycle(5));
        assert_eq!(rho_bipartite_min(&c5), Ok(rat(1, 5)));

        let t = weighted_triangle(int(3), int(1), int(1));
        assert_eq!(rho_bipartite_min(&t), Ok(rat(1, 5)));

        let k33 = WeightedGraph::from_graph(&Graph::complete_multipartite(&[3, 3]));
        assert_eq!(rho_bipartite_min(&k33), Ok(int(0)));

        assert_eq!(
            rho_bipartite_min(&WeightedGraph::empty(3)),
            Err(ExtremalError::EmptyTemplate)
        );
    }

    #[test]
    fn rho_bipartite_closed_form_for_triangles() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
        for _ in 0..100 {
            let pick = |rng: &mut ChaCha8Rng| rat(rng.random_range(1..=60), rng.random_range(1..=9));
            let t = crate::triangle::TriangleTemplate::new(pick(&mut rng), pick(&mut rng), pick(&mut rng))
                .unwrap();
            let w = t.to_weighted_graph();
            assert_eq!(rho_bipartite_min(&w).unwrap(), t.e3() / t.sum());
        }
    }

    #[test]
    fn rho_fourpart_examples() {
        let t = weighted_triangle(int(5), int(3), int(2));
        assert_eq!(rho_fourpart_max(&t), Ok(Some(rat(5, 10))));

        let k211 = WeightedGraph::from_graph(&Graph::complete_multipartite(&[2, 1, 1]));
        assert_eq!(rho_fourpart_max(&k211), Ok(Some(rat(2, 5))));

        let single = WeightedGraph::from_weights(2, &[(0, 1, int(4))]).unwrap();
        assert_eq!(rho_fourpart_max(&single), Ok(Some(int(1))));

        let k5 = WeightedGraph::from_graph(&Graph::complete(5));
        assert_eq!(rho_fourpart_max(&k5), Ok(None));
    }

    #[test]
    fn internal_density_bound_values() {
        assert_eq!(internal_density_bound(&rat(1, 5)), Ok(rat(5, 8)));
        for l in (3i64..=21).step_by(2) {
            assert_eq!(
                internal_density_bound(&rat(1, l)).unwrap(),
                rat(1, 2) + rat(1, 2 * l - 2)
            );
        }
        assert!(internal_density_bound(&int(0)).is_err());
        assert!(internal_density_bound(&int(1)).is_err());
    }

    #[test]
    fn matched_crossing_bound_values() {
        // rho = 2/5: strong = (21 - sqrt(7))/28, radicand 1/7
        let b = matched_crossing_bound(&rat(2, 5)).unwrap();
        assert_eq!(b.radicand, rat(1, 7));
        // frozen 30-digit decimal of (21 - sqrt(7))/28
        let reference = "0.655508881747693193196370865941";
        assert_eq!(crate::rational::format_decimal(&b.strong_approx, 30), reference);
        assert_eq!(b.weak, rat(1, 2) + rat(3, 22));
        assert!(b.strong_at_least_weak());

        // boundary rho = 1/3: radicand 0, strong exactly 3/4, weak 2/3
        let b = matched_crossing_bound(&rat(1, 3)).unwrap();
        assert_eq!(b.strong_approx, rat(3, 4));
        assert_eq!(b.weak, rat(2, 3));
        assert!(b.strong_at_least_weak());

        assert!(matched_crossing_bound(&rat(1, 4)).is_err());
        assert!(matched_crossing_bound(&int(1)).is_err());
    }

    #[test]
    fn strong_bound_square_brackets_radicand() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
        let eps = Rational::new(BigInt::one(), BigInt::from(10u8).pow(49));
        for _ in 0..200 {
            // random rho in [1/3, 1)
            let num = rng.random_range(1..=999u32);
            let rho = rat(1, 3) + rat(2, 3) * rat(i64::from(num) - 1, 1000);
            let b = matched_crossing_bound(&rho).unwrap();
            assert!(b.strong_at_least_weak(), "rho = {rho}");
            // the approximation is within 10^-49 of the true value
            let s = int(3) - int(4) * &b.strong_approx;
            assert!(&s * &s <= b.radicand);
            let s_hi = &s + &eps;
            assert!(&s_hi * &s_hi > b.radicand, "rho = {rho}");
        }
    }

    #[test]
    fn two_halves_construction_c5() {
        let c5 = WeightedGraph::from_graph(&Graph::cycle(5));
        let built = build_two_halves_host(&c5, 240).unwrap();
        assert_eq!(built.g, 10);
        assert_eq!(built.h, 20);
        assert_eq!(built.certificate.rho, rat(1, 5));
        assert_eq!(built.certificate.g0.len(), 2400);
        assert_eq!(built.certificate.g1.len(), 14400);
        assert!(built.graph.degrees().iter().all(|&d| d == 140));
        assert!(built.certificate.ratio_inequality_holds());
        assert!(verify_certificate(&built.graph, &built.certificate, &c5));
        // the host is template-divisible
        assert_eq!(
            built.graph.is_divisible_by(&Graph::cycle(5)),
            Ok(true)
        );

        // n = 40 forces h = 0, the complete bipartite host
        let small = build_two_halves_host(&c5, 40).unwrap();
        assert_eq!(small.h, 0);
        assert_eq!(small.certificate.g0.len(), 0);
        assert_eq!(small.certificate.g1.len(), 400);
        assert!(verify_certificate(&small.graph, &small.certificate, &c5));

        assert_eq!(
            build_two_halves_host(&c5, 230).unwrap_err(),
            ExtremalError::BadModulus { n: 230, modulus: 40 }
        );
    }

    #[test]
    fn two_halves_rejects_bipartite_templates() {
        let k33 = WeightedGraph::from_graph(&Graph::complete_multipartite(&[3, 3]));
        assert_eq!(
            build_two_halves_host(&k33, 40).unwrap_err(),
            ExtremalError::RhoIsZero
        );
    }

    #[test]
    fn four_partite_construction_k211() {
        let k211 = WeightedGraph::from_graph(&Graph::complete_multipartite(&[2, 1, 1]));
        // g = 5, so n must be a multiple of 20; the offset constraint
        // h > gamma*n with h < n/2 first becomes satisfiable at n = 80
        for n in [20usize, 40, 60] {
            assert_eq!(
                build_four_partite_host(&k211, n).unwrap_err(),
                ExtremalError::NoValidOffset { n }
            );
        }
        let built = build_four_partite_host(&k211, 80).unwrap();
        assert_eq!(built.g, 5);
        assert_eq!(built.h, 30);
        assert_eq!(built.certificate.rho, rat(2, 5));
        // |E(G0)| = 30^2 + 10^2, |E(G1)| = 2*30*(80-60)
        assert_eq!(built.certificate.g0.len(), 1000);
        assert_eq!(built.certificate.g1.len(), 1200);
        assert!(built.certificate.ratio_inequality_holds());
        let degrees = built.graph.degrees();
        assert!(degrees.iter().all(|&d| d == 50 || d == 70));
        assert!(verify_certificate(
            &built.graph,
            &built.certificate,
            &k211
        ));
        // divisibility of the host by the plain template
        assert_eq!(
            built
                .graph
                .is_divisible_by(&Graph::complete_multipartite(&[2, 1, 1])),
            Ok(true)
        );
    }

    #[test]
    fn tampered_certificates_fail() {
        let c5 = WeightedGraph::from_graph(&Graph::cycle(5));
        let built = build_two_halves_host(&c5, 240).unwrap();

        // swap G0 and G1
        let mut swapped = built.certificate.clone();
        core::mem::swap(&mut swapped.g0, &mut swapped.g1);
        assert!(!verify_certificate(&built.graph, &swapped, &c5));

        // inflate rho beyond the template's true minimum
        let mut inflated = built.certificate.clone();
        inflated.rho = rat(1, 2);
        assert!(!verify_certificate(&built.graph, &inflated, &c5));

        // rho out of range
        let mut bad = built.certificate.clone();
        bad.rho = int(1);
        assert!(!verify_certificate(&built.graph, &bad, &c5));
    }

    #[test]
    fn family_bounds_stay_above_their_limit() {
        // for rho = a/(2a+1) the strong bound decreases towards the a -> inf
        // limit (1/12)(9 - sqrt(3)) but never reaches it
        let limit = crate::rational::parse_rational("605662432702593558872712804874")
            .map(|p| p / crate::rational::parse_rational("1000000000000000000000000000000").unwrap())
            .unwrap();
        let mut previous: Option<Rational> = None;
        for a in 3i64..=12 {
            let b = matched_crossing_bound(&rat(a, 2 * a + 1)).unwrap();
            assert!(b.strong_approx > limit, "a = {a} fell below the limit");
            if let Some(prev) = previous {
                assert!(b.strong_approx < prev, "a = {a} is not decreasing");
            }
            previous = Some(b.strong_approx);
        }
    }

    #[test]
    fn rho_params_bundle() {
        let k211 = WeightedGraph::from_graph(&Graph::complete_multipartite(&[2, 1, 1]));
        let params = rho_params(&k211).unwrap();
        assert_eq!(params.g, 5);
        assert_eq!(params.rho_fourpart, Some(rat(2, 5)));
        // every bipartition of K_{2,1,1} keeps at least 1/5 internal
        assert_eq!(params.rho_bipartite, rat(1, 5));
        let gamma = params.gamma_lb.unwrap();
        // gamma = (1/4)(1 + sqrt(1/7)) ~ 0.3444
        assert!(gamma > rat(34, 100) && gamma < rat(35, 100));
    }
}
