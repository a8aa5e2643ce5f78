//! Command line front end for exact fractional graph decompositions.
//!
//! Every subcommand is deterministic: identical invocations produce
//! byte-identical output. Exact rationals are printed as `p/q`; irrational
//! bounds are printed to 12 decimal digits behind a `≈` marker.
//!
//! Exit status: 0 on success (including a definite `infeasible` answer from
//! the oracle), 1 on malformed input, 2 on mathematical failure (an
//! infeasible triangle, a violated certificate, and the like).

mod formats;
mod names;

use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use fracdecomp::blowup;
use fracdecomp::condense::{condense, IndexedPartition};
use fracdecomp::extremal::{
    build_two_halves_host, build_four_partite_host, internal_density_bound, matched_crossing_bound, verify_certificate,
    ExtremalConstruction, ExtremalError,
};
use fracdecomp::graph::Graph;
use fracdecomp::oracle::{fractional_decomposition_exists_weighted, OracleOutcome};
use fracdecomp::pipeline::{delta_threshold, fractional_triangle_decomposition};
use fracdecomp::rational::{format_decimal, format_rational, int, rat, Rational};
use fracdecomp::triangle::TriangleTemplate;
use fracdecomp::weighted::{verify_fractional_decomposition, VerifyOutcome};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A failure of the mathematics rather than the input; reported with exit
/// status 2.
#[derive(Debug)]
struct MathFailure(String);

impl std::fmt::Display for MathFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for MathFailure {}

fn math_failure(msg: String) -> anyhow::Error {
    anyhow::Error::new(MathFailure(msg))
}

#[derive(Parser)]
#[command(
    name = "fracdecomp",
    about = "Exact fractional decompositions of graphs into weighted triangles and tripartite templates",
    version
)]
struct Cli {
    /// Upper bound on worker parallelism (the current implementation runs a
    /// single deterministic worker, which respects any bound).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the minimum-degree threshold for a weighted triangle template.
    Threshold {
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
        #[arg(long)]
        e3: String,
    },
    /// Tabulate lower/upper threshold bounds for a template family.
    ThresholdTable {
        #[arg(long, value_enum)]
        family: Family,
        /// Largest cycle length / part size to tabulate.
        #[arg(long)]
        max: usize,
    },
    /// Fractionally decompose a host graph into scaled copies of a weighted
    /// triangle.
    Decompose {
        /// Host graph: a file or a shortcut such as K7.
        #[arg(long)]
        graph: String,
        /// Template weights, e.g. 3,1,1.
        #[arg(long)]
        template: String,
        /// Write the decomposition certificate here (default: stdout).
        #[arg(long)]
        output: Option<String>,
    },
    /// Condense a graph with respect to a partition into independent sets.
    Condense {
        #[arg(long)]
        graph: String,
        /// Partition file: one line of vertex indices per part.
        #[arg(long)]
        partition: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// Blow up the condensation of a graph and decompose it into copies of
    /// the graph.
    Blowup {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        partition: String,
        #[arg(long)]
        q: usize,
        /// Materialization cap on the number of injections.
        #[arg(long, default_value_t = blowup::DEFAULT_INJECTION_CAP)]
        cap: usize,
        /// Write the decomposition certificate here (default: stdout).
        #[arg(long)]
        output: Option<String>,
        /// Also write the blown-up weighted host graph here.
        #[arg(long)]
        host_out: Option<String>,
    },
    /// Build an extremal host graph whose certificate rules out fractional
    /// decompositions into the template.
    Extremal {
        /// Which construction: 7 (two dense halves) or 8 (complete
        /// 4-partite).
        #[arg(long)]
        lemma: u8,
        /// Template: a weighted-graph file or a shortcut such as C5 or
        /// T3,1,1.
        #[arg(long)]
        template_graph: String,
        #[arg(long)]
        n: usize,
        /// Write the host graph here (default: stdout).
        #[arg(long)]
        graph_out: Option<String>,
        /// Write the nonexistence certificate here (default: stdout).
        #[arg(long)]
        cert_out: Option<String>,
    },
    /// Re-verify a certificate against a host graph.
    Verify {
        #[arg(long)]
        host: String,
        #[arg(long)]
        certificate: String,
    },
    /// Decide fractional decomposition existence by exact linear
    /// programming.
    Oracle {
        /// Template: weighted-graph file or shortcut.
        #[arg(long)]
        template: String,
        /// Host: graph file or shortcut (weighted hosts accepted).
        #[arg(long)]
        host: String,
        /// Host-size guard for embedding enumeration.
        #[arg(long, default_value_t = fracdecomp::oracle::DEFAULT_HOST_GUARD)]
        guard: usize,
        /// Write the feasibility witness (or infeasibility potentials) here.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Generate a random graph conditioned on a minimum degree
    /// (test-data generation; the mathematics elsewhere is deterministic).
    RandomGraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        min_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base edge density before the degree fix-up, as p/q.
        #[arg(long, default_value = "3/4")]
        density: String,
        #[arg(long)]
        output: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Odd cycles.
    Cycle,
    /// Complete tripartite K_{a,1,1}.
    #[value(name = "K_a11", alias = "k_a11")]
    KA11,
    /// Complete tripartite K_{a,a,1}.
    #[value(name = "K_aa1", alias = "k_aa1")]
    KAA1,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(1);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<MathFailure>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Writes `text` to `path`, or to stdout when no path is given. Returns
/// whether a file was written (so the caller can route its summary line).
fn emit(text: &str, path: Option<&str>) -> Result<bool> {
    match path {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing `{path}`"))?;
            Ok(true)
        }
        None => {
            print!("{text}");
            Ok(false)
        }
    }
}

/// Prints the summary line on stdout when the artifact went to a file, on
/// stderr when the artifact occupies stdout.
fn summary(line: &str, artifact_in_file: bool) {
    if artifact_in_file {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Threshold { e1, e2, e3 } => {
            let parse = |s: &str| {
                fracdecomp::rational::parse_rational(s).map_err(|e| anyhow!("weight `{s}`: {e}"))
            };
            let t = TriangleTemplate::new(parse(&e1)?, parse(&e2)?, parse(&e3)?)
                .map_err(|e| anyhow!("{e}"))?;
            println!("{}", format_rational(&delta_threshold(&t)));
            Ok(())
        }
        Command::ThresholdTable { family, max } => {
            print!("{}", threshold_table(family, max)?);
            Ok(())
        }
        Command::Decompose {
            graph,
            template,
            output,
        } => {
            let g = names::load_graph(&graph)?;
            let t = names::parse_template_weights(&template)?;
            let run = fractional_triangle_decomposition(&g, &t)
                .map_err(|e| math_failure(format!("{e}")))?;
            let cert = formats::format_decomposition(&run.decomposition.copies);
            let to_file = emit(&cert, output.as_deref())?;
            summary(
                &format!(
                    "triangles={} copies={} status=exact",
                    run.triangle_count,
                    run.decomposition.copies.len()
                ),
                to_file,
            );
            Ok(())
        }
        Command::Condense {
            graph,
            partition,
            output,
        } => {
            let g = names::load_graph(&graph)?;
            let parts = formats::parse_partition(&std::fs::read_to_string(&partition)?)?;
            let p = IndexedPartition::new(&g, parts).map_err(|e| anyhow!("partition: {e}"))?;
            let w = condense(&g, &p);
            emit(&formats::format_weighted_graph(&w), output.as_deref())?;
            Ok(())
        }
        Command::Blowup {
            graph,
            partition,
            q,
            cap,
            output,
            host_out,
        } => {
            let g = names::load_graph(&graph)?;
            let parts = formats::parse_partition(&std::fs::read_to_string(&partition)?)?;
            let p = IndexedPartition::new(&g, parts).map_err(|e| anyhow!("partition: {e}"))?;
            let injections =
                blowup::count_injections(&p, q).map_err(|e| anyhow!("{e}"))?;
            if let Some(host_path) = &host_out {
                let host = blowup::blow_up(&condense(&g, &p), q);
                std::fs::write(host_path, formats::format_weighted_graph(&host))
                    .with_context(|| format!("writing `{host_path}`"))?;
            }
            match blowup::blowup_decomposition_with_cap(&g, &p, q, cap) {
                Ok(dec) => {
                    let cert = formats::format_decomposition(&dec.copies);
                    let to_file = emit(&cert, output.as_deref())?;
                    summary(
                        &format!(
                            "injections={} copies={} status=exact",
                            injections,
                            dec.copies.len()
                        ),
                        to_file,
                    );
                    Ok(())
                }
                Err(blowup::BlowupError::CapExceeded { count, .. }) => {
                    let ok = blowup::verify_cover_identity_combinatorial(&g, &p, q)
                        .map_err(|e| anyhow!("{e}"))?;
                    if !ok {
                        return Err(math_failure(
                            "per-edge cover identity violated".to_string(),
                        ));
                    }
                    println!("injections={count} status=verified-combinatorial");
                    Ok(())
                }
                Err(err) => Err(anyhow!("{err}")),
            }
        }
        Command::Extremal {
            lemma,
            template_graph,
            n,
            graph_out,
            cert_out,
        } => {
            let w = names::load_weighted_graph(&template_graph)?;
            let built = match lemma {
                7 => build_two_halves_host(&w, n),
                8 => build_four_partite_host(&w, n),
                other => bail!("--lemma must be 7 or 8, not {other}"),
            };
            let built = built.map_err(|e| match e {
                ExtremalError::BadModulus { .. } | ExtremalError::TooManyVertices { .. } => {
                    anyhow!("{e}")
                }
                other => math_failure(format!("{other}")),
            })?;
            let ExtremalConstruction {
                graph,
                certificate,
                h,
                g,
            } = built;
            if !verify_certificate(&graph, &certificate, &w) {
                return Err(math_failure(
                    "constructed certificate failed re-verification".to_string(),
                ));
            }
            let graph_to_file = emit(&formats::format_graph(&graph), graph_out.as_deref())?;
            let cert_to_file = emit(
                &formats::format_nonexistence(&w, &certificate),
                cert_out.as_deref(),
            )?;
            summary(
                &format!(
                    "lemma={lemma} rho={} h={h} g={g} edges_g0={} edges_g1={} status=certified",
                    format_rational(&certificate.rho),
                    certificate.g0.len(),
                    certificate.g1.len()
                ),
                graph_to_file && cert_to_file,
            );
            Ok(())
        }
        Command::Verify { host, certificate } => {
            let text = std::fs::read_to_string(&certificate)
                .with_context(|| format!("reading `{certificate}`"))?;
            match formats::certificate_kind(&text)? {
                formats::CertificateKind::Decomposition => {
                    let copies = formats::parse_decomposition(&text)?;
                    let host = names::load_weighted_graph(&host)?;
                    match verify_fractional_decomposition(&host, &copies) {
                        Ok(VerifyOutcome::Exact) => {
                            println!("status=exact");
                            Ok(())
                        }
                        Ok(VerifyOutcome::Leftover(rest)) => {
                            println!(
                                "status=leftover total={}",
                                format_rational(&rest.total_weight())
                            );
                            Ok(())
                        }
                        Err(err) => Err(math_failure(format!("{err}"))),
                    }
                }
                formats::CertificateKind::Nonexistence => {
                    let parsed = formats::parse_nonexistence(&text)?;
                    let host = names::load_graph(&host)?;
                    let cert = parsed.bind(&host)?;
                    if verify_certificate(&host, &cert, &parsed.template) {
                        println!("status=valid");
                        Ok(())
                    } else {
                        Err(math_failure(
                            "nonexistence certificate failed verification".to_string(),
                        ))
                    }
                }
            }
        }
        Command::Oracle {
            template,
            host,
            guard,
            witness,
        } => {
            let t = names::load_weighted_graph(&template)?;
            let h = names::load_weighted_graph(&host)?;
            let outcome = fractional_decomposition_exists_weighted(&t, &h, guard)
                .map_err(|e| anyhow!("{e}"))?;
            match outcome {
                OracleOutcome::Feasible(dec) => {
                    println!("feasible");
                    if let Some(path) = witness {
                        std::fs::write(&path, formats::format_decomposition(&dec.copies))
                            .with_context(|| format!("writing `{path}`"))?;
                    }
                }
                OracleOutcome::Infeasible { farkas } => {
                    println!("infeasible");
                    if let Some(path) = witness {
                        let mut out = String::from("infeasibility-potentials\n");
                        for (e, y) in &farkas {
                            let _ = writeln!(out, "{} {} {}", e.u, e.v, format_rational(y));
                        }
                        std::fs::write(&path, out)
                            .with_context(|| format!("writing `{path}`"))?;
                    }
                }
            }
            Ok(())
        }
        Command::RandomGraph {
            n,
            min_degree,
            seed,
            density,
            output,
        } => {
            if min_degree >= n {
                bail!("min degree {min_degree} is not attainable on {n} vertices");
            }
            let density = fracdecomp::rational::parse_rational(&density)
                .map_err(|e| anyhow!("density: {e}"))?;
            if density < int(0) || density > int(1) {
                bail!("density must lie in [0, 1]");
            }
            let g = random_min_degree_graph(n, min_degree, seed, &density);
            emit(&formats::format_graph(&g), output.as_deref())?;
            Ok(())
        }
    }
}

fn threshold_table(family: Family, max: usize) -> Result<String> {
    let mut out = String::new();
    match family {
        Family::Cycle => {
            if max < 5 {
                bail!("--max must be at least 5 for the cycle family");
            }
            for l in (5..=max).step_by(2) {
                let lower = internal_density_bound(&rat(1, l as i64)).expect("0 < 1/l < 1");
                let template = TriangleTemplate::from_ints(l as i64 - 2, 1, 1);
                let upper = delta_threshold(&template);
                let _ = writeln!(
                    out,
                    "l={l} lower={} upper={}",
                    format_rational(&lower),
                    format_rational(&upper)
                );
            }
        }
        Family::KA11 => {
            if max < 2 {
                bail!("--max must be at least 2 for the K_a11 family");
            }
            for a in 2..=max {
                // condensation of K_{a,1,1} by its colour classes
                let template = condensation_of_multipartite(&[a, 1, 1])?;
                let upper = delta_threshold(&template).max(rat(3, 4));
                let rho = rat(a as i64, 2 * a as i64 + 1);
                let bound = matched_crossing_bound(&rho).expect("a/(2a+1) lies in [1/3, 1)");
                let _ = writeln!(
                    out,
                    "a={a} lower≈{} upper={}",
                    format_decimal(&bound.strong_approx, 12),
                    format_rational(&upper)
                );
            }
        }
        Family::KAA1 => {
            if max < 2 {
                bail!("--max must be at least 2 for the K_aa1 family");
            }
            for a in 2..=max {
                let template = condensation_of_multipartite(&[a, a, 1])?;
                let upper = delta_threshold(&template).max(rat(3, 4));
                let rho = rat(1, a as i64 + 2);
                let lower = internal_density_bound(&rho).expect("0 < 1/(a+2) < 1");
                let _ = writeln!(
                    out,
                    "a={a} lower={} upper={}",
                    format_rational(&lower),
                    format_rational(&upper)
                );
            }
        }
    }
    Ok(out)
}

/// Condenses a complete tripartite graph by its colour classes and reads the
/// resulting weighted triangle as a template.
fn condensation_of_multipartite(sizes: &[usize; 3]) -> Result<TriangleTemplate> {
    let g = Graph::complete_multipartite(sizes);
    let mut parts = Vec::new();
    let mut next = 0;
    for &s in sizes {
        parts.push((next..next + s).collect::<Vec<_>>());
        next += s;
    }
    let p = IndexedPartition::new(&g, parts).expect("colour classes are independent");
    let w = condense(&g, &p);
    let weights: Vec<Rational> = w.iter().map(|(_, wt)| wt.clone()).collect();
    TriangleTemplate::new(weights[0].clone(), weights[1].clone(), weights[2].clone())
        .map_err(|e| anyhow!("{e}"))
}

/// Seeded random graph with minimum degree at least `min_degree`: a base
/// graph with the given edge density, then random edges added at deficient
/// vertices until the degree condition holds.
fn random_min_degree_graph(n: usize, min_degree: usize, seed: u64, density: &Rational) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    let num = u32::try_from(density.numer().clone()).unwrap_or(u32::MAX);
    let den = u32::try_from(density.denom().clone()).unwrap_or(u32::MAX).max(1);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_ratio(num.min(den), den) {
                g.add_edge(u, v);
            }
        }
    }
    loop {
        let degrees = g.degrees();
        let Some(u) = (0..n).find(|&u| degrees[u] < min_degree) else {
            break;
        };
        let choices: Vec<usize> = (0..n).filter(|&v| v != u && !g.has_edge(u, v)).collect();
        let v = choices[rng.random_range(0..choices.len())];
        g.add_edge(u, v);
    }
    g
}
