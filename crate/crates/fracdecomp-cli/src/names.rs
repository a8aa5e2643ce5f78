//! Named graph and template shortcuts.
//!
//! * `C<l>` — the cycle on `l` vertices (`C5`, `C7`, …).
//! * `K<n>` — the complete graph when `<n>` is a single digit or contains a
//!   zero (`K7`, `K10`); `K<a>,<b>,…` — the complete multipartite graph with
//!   the given part sizes. A run of several nonzero digits without commas is
//!   read digit-by-digit as part sizes, so `K33` is the complete bipartite
//!   graph with parts 3 and 3.
//! * `T<e1>,<e2>,<e3>` — the weighted triangle with the given positive
//!   rational weights (`T3,1,1`, `T5/2,1,1`).
//!
//! Anything that does not match a shortcut is treated as a file path.

use anyhow::{anyhow, bail, Context, Result};
use fracdecomp::rational::parse_rational;
use fracdecomp::triangle::TriangleTemplate;
use fracdecomp::{Graph, WeightedGraph};

use crate::formats;

/// True if the argument looks like a shortcut rather than a path.
fn looks_named(source: &str) -> bool {
    let mut chars = source.chars();
    matches!(
        (chars.next(), chars.next()),
        (Some('C') | Some('K') | Some('T'), Some(c)) if c.is_ascii_digit()
    )
}

pub fn parse_named_graph(name: &str) -> Result<Graph> {
    let (kind, rest) = name.split_at(1);
    match kind {
        "C" => {
            let l: usize = rest.parse().with_context(|| format!("cycle length in `{name}`"))?;
            if l < 3 {
                bail!("cycle `{name}` needs at least 3 vertices");
            }
            Ok(Graph::cycle(l))
        }
        "K" => {
            let parts = parse_k_parts(rest)?;
            if parts.len() == 1 {
                Ok(Graph::complete(parts[0]))
            } else {
                Ok(Graph::complete_multipartite(&parts))
            }
        }
        _ => bail!("`{name}` names a weighted template, not a plain graph"),
    }
}

fn parse_k_parts(rest: &str) -> Result<Vec<usize>> {
    if rest.contains(',') {
        let parts: Result<Vec<usize>> = rest
            .split(',')
            .map(|f| f.parse::<usize>().with_context(|| format!("part size `{f}`")))
            .collect();
        let parts = parts?;
        if parts.iter().any(|&p| p == 0) {
            bail!("part sizes must be positive");
        }
        Ok(parts)
    } else if rest.len() > 1 && rest.chars().all(|c| c.is_ascii_digit() && c != '0') {
        // digit-by-digit part sizes: K33 = parts (3, 3)
        Ok(rest.chars().map(|c| c as usize - '0' as usize).collect())
    } else {
        let n: usize = rest.parse().with_context(|| format!("order `{rest}`"))?;
        if n == 0 {
            bail!("complete graph needs at least one vertex");
        }
        Ok(vec![n])
    }
}

pub fn parse_named_weighted(name: &str) -> Result<WeightedGraph> {
    if let Some(rest) = name.strip_prefix('T') {
        let fields: Vec<&str> = rest.split(',').collect();
        if fields.len() != 3 {
            bail!("`{name}` must list three comma-separated weights");
        }
        let parse = |f: &str| parse_rational(f).map_err(|e| anyhow!("weight `{f}`: {e}"));
        let t = TriangleTemplate::new(parse(fields[0])?, parse(fields[1])?, parse(fields[2])?)
            .map_err(|e| anyhow!("template `{name}`: {e}"))?;
        Ok(t.to_weighted_graph())
    } else {
        Ok(WeightedGraph::from_graph(&parse_named_graph(name)?))
    }
}

/// Loads a plain graph from a shortcut or a file in the graph text format.
pub fn load_graph(source: &str) -> Result<Graph> {
    if looks_named(source) {
        parse_named_graph(source)
    } else {
        let text = std::fs::read_to_string(source)
            .with_context(|| format!("reading graph file `{source}`"))?;
        formats::parse_graph(&text)
    }
}

/// Loads a weighted graph (or plain graph, as all-weights-1) from a shortcut
/// or a file.
pub fn load_weighted_graph(source: &str) -> Result<WeightedGraph> {
    if looks_named(source) {
        parse_named_weighted(source)
    } else {
        let text = std::fs::read_to_string(source)
            .with_context(|| format!("reading graph file `{source}`"))?;
        formats::parse_weighted_graph(&text)
    }
}

/// Parses a triangle template given as `e1,e2,e3` (a leading `T` is
/// tolerated).
pub fn parse_template_weights(source: &str) -> Result<TriangleTemplate> {
    let body = source.strip_prefix('T').unwrap_or(source);
    let fields: Vec<&str> = body.split(',').collect();
    if fields.len() != 3 {
        bail!("template `{source}` must list three comma-separated weights");
    }
    let parse = |f: &str| parse_rational(f).map_err(|e| anyhow!("weight `{f}`: {e}"));
    TriangleTemplate::new(parse(fields[0])?, parse(fields[1])?, parse(fields[2])?)
        .map_err(|e| anyhow!("template `{source}`: {e}"))
}
