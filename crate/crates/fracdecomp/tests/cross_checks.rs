//! Cross-module consistency checks: the extremal certificates, the exact LP
//! oracle, and the constructive decompositions must all tell the same story
//! on instances small enough to check every way at once.

use fracdecomp::blowup::blowup_decomposition;
use fracdecomp::condense::{condense, IndexedPartition};
use fracdecomp::extremal::{
    certificate_from_parts, verify_certificate, CertificateDirection, EdgeBipartitionCertificate,
};
use fracdecomp::graph::Edge;
use fracdecomp::oracle::{enumerate_embeddings, fractional_decomposition_exists, OracleOutcome};
use fracdecomp::rational::{int, rat};
use fracdecomp::weighted::verify_fractional_decomposition;
use fracdecomp::weighted::VerifyOutcome;
use fracdecomp::{Graph, WeightedGraph};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn certificate_for(
    g: &Graph,
    direction: CertificateDirection,
    rho: fracdecomp::Rational,
    parts: Vec<Vec<usize>>,
) -> EdgeBipartitionCertificate {
    certificate_from_parts(g, direction, rho, parts)
}

#[test]
fn internal_heavy_certificate_agrees_with_oracle() {
    // shrunken analogue of the two-halves construction: K_{5,5} with h = 0
    let c5 = WeightedGraph::from_graph(&Graph::cycle(5));
    let host = Graph::complete_multipartite(&[5, 5]);
    let cert = certificate_for(
        &host,
        CertificateDirection::InternalHeavy,
        rat(1, 5),
        vec![(0..5).collect(), (5..10).collect()],
    );
    assert!(verify_certificate(&host, &cert, &c5));

    match fractional_decomposition_exists(&c5, &host).unwrap() {
        OracleOutcome::Infeasible { .. } => {}
        OracleOutcome::Feasible(_) => panic!("certificate accepted but oracle found a witness"),
    }
}

#[test]
fn crossing_light_certificate_agrees_with_oracle() {
    // shrunken analogue of the complete 4-partite construction: K_{4,4,1,1}
    // has |E(G0)|/|E(G1)| = 17/16 > (2/5)/(3/5)
    let k211 = WeightedGraph::from_graph(&Graph::complete_multipartite(&[2, 1, 1]));
    let host = Graph::complete_multipartite(&[4, 4, 1, 1]);
    let cert = certificate_for(
        &host,
        CertificateDirection::CrossingLight,
        rat(2, 5),
        vec![(0..4).collect(), (4..8).collect(), vec![8], vec![9]],
    );
    assert_eq!(cert.g0.len(), 17);
    assert_eq!(cert.g1.len(), 16);
    assert!(verify_certificate(&host, &cert, &k211));

    match fractional_decomposition_exists(&k211, &host).unwrap() {
        OracleOutcome::Infeasible { farkas } => {
            let embeddings =
                enumerate_embeddings(&k211, &host, 12).unwrap();
            assert!(!embeddings.is_empty(), "the host does contain template copies");
            assert!(fracdecomp::oracle::validate_infeasibility_certificate(
                &k211,
                &WeightedGraph::from_graph(&host),
                &embeddings,
                &farkas,
            ));
        }
        OracleOutcome::Feasible(_) => panic!("certificate accepted but oracle found a witness"),
    }
}

#[test]
fn rejected_certificates_are_not_evidence() {
    // a valid-looking certificate against a feasible host must fail
    let k3 = WeightedGraph::from_graph(&Graph::complete(3));
    let host = Graph::complete(4);
    let cert = certificate_for(
        &host,
        CertificateDirection::InternalHeavy,
        rat(1, 3),
        vec![vec![0, 1], vec![2, 3]],
    );
    // K4 split 2|2: G0 = 2 internal edges, G1 = 4 crossing; 2/4 >= (1/3)/(2/3)
    assert!(!verify_certificate(&host, &cert, &k3));
    assert!(fractional_decomposition_exists(&k3, &host)
        .unwrap()
        .is_feasible());
}

/// Greedy proper colouring, used to build valid independent-set partitions
/// of random graphs.
fn greedy_partition(g: &Graph) -> IndexedPartition {
    let mut colour = vec![usize::MAX; g.n()];
    let mut num_colours = 0;
    for v in 0..g.n() {
        let mut taken = vec![false; num_colours + 1];
        for u in 0..v {
            if g.has_edge(u, v) && colour[u] < taken.len() {
                taken[colour[u]] = true;
            }
        }
        let c = (0..=num_colours).find(|&c| !taken[c]).unwrap();
        colour[v] = c;
        num_colours = num_colours.max(c + 1);
    }
    let mut parts = vec![Vec::new(); num_colours];
    for v in 0..g.n() {
        parts[colour[v]].push(v);
    }
    IndexedPartition::new(g, parts).expect("greedy colour classes are independent")
}

#[test]
fn condensation_blowup_recovers_the_graph() {
    // condense with any valid partition, blow back up with q = max part
    // size: the blow-up decomposes into copies of the original graph
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..10 {
        let n = rng.random_range(4..=7);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_ratio(1, 2) {
                    g.add_edge(u, v);
                }
            }
        }
        if g.edge_count() == 0 {
            continue;
        }
        let partition = greedy_partition(&g);
        let w = condense(&g, &partition);
        assert_eq!(w.total_weight(), int(g.edge_count() as i64));

        let q = partition.max_part_size();
        let dec = blowup_decomposition(&g, &partition, q).unwrap();
        assert!(dec.is_exact());
        assert_eq!(
            verify_fractional_decomposition(&dec.host, &dec.copies),
            Ok(VerifyOutcome::Exact)
        );
        // every copy embeds g itself
        for copy in dec.copies.iter().take(2) {
            for e in g.edges() {
                let image = Edge::new(copy.embedding[e.u], copy.embedding[e.v]);
                assert!(dec.host.weight(&image).is_some());
            }
        }
    }
}

#[test]
fn library_results_are_reproducible() {
    // two runs of the same computation give structurally identical output
    let template = fracdecomp::TriangleTemplate::from_ints(5, 1, 1);
    let a = fracdecomp::pipeline::fractional_triangle_decomposition(&Graph::complete(9), &template);
    let b = fracdecomp::pipeline::fractional_triangle_decomposition(&Graph::complete(9), &template);
    match (a, b) {
        (Ok(x), Ok(y)) => {
            assert_eq!(x.decomposition.copies, y.decomposition.copies);
            assert_eq!(x.triangle_count, y.triangle_count);
        }
        other => panic!("runs disagreed or failed: {other:?}"),
    }
}
