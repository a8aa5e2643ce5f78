//! Text formats: graphs, weighted graphs, partitions, decomposition
//! certificates and nonexistence certificates.
//!
//! Graph files start with a line `n m` followed by `m` lines `u v` (0-based
//! endpoints); weighted variants carry a third token, a positive rational
//! `p/q` in lowest terms (a bare integer is accepted on input). Every
//! rational is emitted as an explicit `p/q`, so output is canonical.

use anyhow::{anyhow, bail, Context, Result};
use fracdecomp::extremal::{
    certificate_from_parts, CertificateDirection, EdgeBipartitionCertificate,
};
use fracdecomp::rational::{format_rational, parse_rational, Rational};
use fracdecomp::weighted::ScaledCopy;
use fracdecomp::{Graph, WeightedGraph};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = meaningful_lines(text);
    let header = lines.next().ok_or_else(|| anyhow!("empty graph file"))?;
    let (n, m) = parse_header(header)?;
    let mut pairs = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines.next().ok_or_else(|| anyhow!("missing edge line"))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            bail!("edge line `{line}` must be `u v`");
        }
        pairs.push((parse_vertex(fields[0])?, parse_vertex(fields[1])?));
    }
    ensure_consumed(lines)?;
    Graph::from_edges(n, &pairs).map_err(|e| anyhow!("invalid graph: {e}"))
}

pub fn parse_weighted_graph(text: &str) -> Result<WeightedGraph> {
    let mut lines = meaningful_lines(text);
    let header = lines.next().ok_or_else(|| anyhow!("empty graph file"))?;
    let (n, m) = parse_header(header)?;
    let mut items = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines.next().ok_or_else(|| anyhow!("missing edge line"))?;
        items.push(parse_weighted_edge(line)?);
    }
    ensure_consumed(lines)?;
    WeightedGraph::from_weights(n, &items).map_err(|e| anyhow!("invalid weighted graph: {e}"))
}

pub fn format_graph(g: &Graph) -> String {
    g.to_text()
}

pub fn format_weighted_graph(w: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", w.n(), w.edge_count());
    for (e, weight) in w.iter() {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, format_rational(weight)));
    }
    out
}

/// Partition files: one line per part, space-separated vertex indices.
pub fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut parts = Vec::new();
    for line in meaningful_lines(text) {
        let part: Result<Vec<usize>> = line.split_whitespace().map(parse_vertex).collect();
        parts.push(part?);
    }
    if parts.is_empty() {
        bail!("partition file has no parts");
    }
    Ok(parts)
}

const DECOMPOSITION_HEADER: &str = "fractional-decomposition";
const NONEXISTENCE_HEADER: &str = "nonexistence-certificate";

/// Serializes copies as a decomposition certificate: deduplicated template
/// blocks named `t0, t1, …`, then one line per copy with the template name,
/// the scale factor, and the embedding as an ordered vertex list.
pub fn format_decomposition(copies: &[ScaledCopy]) -> String {
    let mut templates: Vec<&WeightedGraph> = Vec::new();
    let mut copy_lines = Vec::with_capacity(copies.len());
    for copy in copies {
        let idx = match templates.iter().position(|t| **t == copy.template) {
            Some(idx) => idx,
            None => {
                templates.push(&copy.template);
                templates.len() - 1
            }
        };
        let vertices: Vec<String> = copy.embedding.iter().map(usize::to_string).collect();
        copy_lines.push(format!(
            "t{idx} {} {}",
            format_rational(&copy.alpha),
            vertices.join(" ")
        ));
    }
    let mut out = format!("{DECOMPOSITION_HEADER}\n");
    out.push_str(&format!("templates {}\n", templates.len()));
    for (idx, template) in templates.iter().enumerate() {
        out.push_str(&format!(
            "template t{idx} {} {}\n",
            template.n(),
            template.edge_count()
        ));
        for (e, weight) in template.iter() {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, format_rational(weight)));
        }
    }
    out.push_str(&format!("copies {}\n", copy_lines.len()));
    for line in copy_lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<Vec<ScaledCopy>> {
    let mut lines = meaningful_lines(text);
    let header = lines.next().ok_or_else(|| anyhow!("empty certificate"))?;
    if header != DECOMPOSITION_HEADER {
        bail!("expected `{DECOMPOSITION_HEADER}` header, found `{header}`");
    }
    let count_line = lines.next().ok_or_else(|| anyhow!("missing templates line"))?;
    let template_count: usize = expect_field(count_line, "templates")?;
    let mut names = Vec::new();
    let mut templates = Vec::new();
    for _ in 0..template_count {
        let head = lines.next().ok_or_else(|| anyhow!("missing template header"))?;
        let fields: Vec<&str> = head.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "template" {
            bail!("malformed template header `{head}`");
        }
        let name = fields[1].to_string();
        let n: usize = fields[2].parse().context("template vertex count")?;
        let m: usize = fields[3].parse().context("template edge count")?;
        let mut items = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines.next().ok_or_else(|| anyhow!("missing template edge"))?;
            items.push(parse_weighted_edge(line)?);
        }
        names.push(name);
        templates
            .push(WeightedGraph::from_weights(n, &items).map_err(|e| anyhow!("template: {e}"))?);
    }
    let copies_line = lines.next().ok_or_else(|| anyhow!("missing copies line"))?;
    let copy_count: usize = expect_field(copies_line, "copies")?;
    let mut copies = Vec::with_capacity(copy_count);
    for _ in 0..copy_count {
        let line = lines.next().ok_or_else(|| anyhow!("missing copy line"))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 {
            bail!("malformed copy line `{line}`");
        }
        let idx = names
            .iter()
            .position(|n| n == fields[0])
            .ok_or_else(|| anyhow!("unknown template `{}`", fields[0]))?;
        let alpha = parse_rational(fields[1]).map_err(|e| anyhow!("scale factor: {e}"))?;
        let embedding: Result<Vec<usize>> = fields[2..].iter().copied().map(parse_vertex).collect();
        let embedding = embedding?;
        if embedding.len() != templates[idx].n() {
            bail!("copy embedding arity mismatch in `{line}`");
        }
        copies.push(ScaledCopy::new(templates[idx].clone(), embedding, alpha));
    }
    ensure_consumed(lines)?;
    Ok(copies)
}

/// Serializes a nonexistence certificate: the template, the density
/// parameter, the direction, the part memberships, and both edge counts.
pub fn format_nonexistence(
    template: &WeightedGraph,
    cert: &EdgeBipartitionCertificate,
) -> String {
    let mut out = format!("{NONEXISTENCE_HEADER}\n");
    out.push_str(&format!(
        "template {} {}\n",
        template.n(),
        template.edge_count()
    ));
    for (e, weight) in template.iter() {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, format_rational(weight)));
    }
    out.push_str(&format!("rho {}\n", format_rational(&cert.rho)));
    let direction = match cert.direction {
        CertificateDirection::InternalHeavy => "internal-heavy",
        CertificateDirection::CrossingLight => "crossing-light",
    };
    out.push_str(&format!("direction {direction}\n"));
    out.push_str(&format!("parts {}\n", cert.parts.len()));
    for part in &cert.parts {
        let fields: Vec<String> = part.iter().map(usize::to_string).collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out.push_str(&format!("edges-g0 {}\n", cert.g0.len()));
    out.push_str(&format!("edges-g1 {}\n", cert.g1.len()));
    out
}

/// A parsed nonexistence certificate, before binding to a host graph.
pub struct NonexistenceCertificate {
    pub template: WeightedGraph,
    pub rho: Rational,
    pub direction: CertificateDirection,
    pub parts: Vec<Vec<usize>>,
    pub edges_g0: usize,
    pub edges_g1: usize,
}

impl NonexistenceCertificate {
    /// Rebuilds the edge split against a concrete host; fails when the
    /// recorded edge counts do not match the derived split.
    pub fn bind(&self, host: &Graph) -> Result<EdgeBipartitionCertificate> {
        for part in &self.parts {
            for &v in part {
                if v >= host.n() {
                    bail!("certificate part vertex {v} out of host range");
                }
            }
        }
        let cert = certificate_from_parts(
            host,
            self.direction,
            self.rho.clone(),
            self.parts.clone(),
        );
        if cert.g0.len() != self.edges_g0 || cert.g1.len() != self.edges_g1 {
            bail!(
                "edge split mismatch: derived {}/{}, recorded {}/{}",
                cert.g0.len(),
                cert.g1.len(),
                self.edges_g0,
                self.edges_g1
            );
        }
        Ok(cert)
    }
}

pub fn parse_nonexistence(text: &str) -> Result<NonexistenceCertificate> {
    let mut lines = meaningful_lines(text);
    let header = lines.next().ok_or_else(|| anyhow!("empty certificate"))?;
    if header != NONEXISTENCE_HEADER {
        bail!("expected `{NONEXISTENCE_HEADER}` header, found `{header}`");
    }
    let head = lines.next().ok_or_else(|| anyhow!("missing template header"))?;
    let fields: Vec<&str> = head.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "template" {
        bail!("malformed template header `{head}`");
    }
    let n: usize = fields[1].parse().context("template vertex count")?;
    let m: usize = fields[2].parse().context("template edge count")?;
    let mut items = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines.next().ok_or_else(|| anyhow!("missing template edge"))?;
        items.push(parse_weighted_edge(line)?);
    }
    let template =
        WeightedGraph::from_weights(n, &items).map_err(|e| anyhow!("template: {e}"))?;
    let rho_line = lines.next().ok_or_else(|| anyhow!("missing rho line"))?;
    let rho_str: String = expect_field(rho_line, "rho")?;
    let rho = parse_rational(&rho_str).map_err(|e| anyhow!("rho: {e}"))?;
    let dir_line = lines.next().ok_or_else(|| anyhow!("missing direction line"))?;
    let dir_str: String = expect_field(dir_line, "direction")?;
    let direction = match dir_str.as_str() {
        "internal-heavy" => CertificateDirection::InternalHeavy,
        "crossing-light" => CertificateDirection::CrossingLight,
        other => bail!("unknown direction `{other}`"),
    };
    let parts_line = lines.next().ok_or_else(|| anyhow!("missing parts line"))?;
    let part_count: usize = expect_field(parts_line, "parts")?;
    let mut parts = Vec::with_capacity(part_count);
    for _ in 0..part_count {
        let line = lines.next().ok_or_else(|| anyhow!("missing part line"))?;
        let part: Result<Vec<usize>> = line.split_whitespace().map(parse_vertex).collect();
        parts.push(part?);
    }
    let g0_line = lines.next().ok_or_else(|| anyhow!("missing edges-g0 line"))?;
    let edges_g0: usize = expect_field(g0_line, "edges-g0")?;
    let g1_line = lines.next().ok_or_else(|| anyhow!("missing edges-g1 line"))?;
    let edges_g1: usize = expect_field(g1_line, "edges-g1")?;
    ensure_consumed(lines)?;
    Ok(NonexistenceCertificate {
        template,
        rho,
        direction,
        parts,
        edges_g0,
        edges_g1,
    })
}

/// Distinguishes the two certificate kinds by their first line.
pub enum CertificateKind {
    Decomposition,
    Nonexistence,
}

pub fn certificate_kind(text: &str) -> Result<CertificateKind> {
    match meaningful_lines(text).next() {
        Some(DECOMPOSITION_HEADER) => Ok(CertificateKind::Decomposition),
        Some(NONEXISTENCE_HEADER) => Ok(CertificateKind::Nonexistence),
        Some(other) => bail!("unrecognized certificate header `{other}`"),
        None => bail!("empty certificate file"),
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        bail!("header `{line}` must be `n m`");
    }
    Ok((
        fields[0].parse().context("vertex count")?,
        fields[1].parse().context("edge count")?,
    ))
}

fn parse_vertex(s: &str) -> Result<usize> {
    s.parse().with_context(|| format!("vertex index `{s}`"))
}

fn parse_weighted_edge(line: &str) -> Result<(usize, usize, Rational)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.len() {
        2 => Ok((
            parse_vertex(fields[0])?,
            parse_vertex(fields[1])?,
            Rational::from_integer(1.into()),
        )),
        3 => Ok((
            parse_vertex(fields[0])?,
            parse_vertex(fields[1])?,
            parse_rational(fields[2]).map_err(|e| anyhow!("weight: {e}"))?,
        )),
        _ => bail!("edge line `{line}` must be `u v` or `u v p/q`"),
    }
}

fn expect_field<T: std::str::FromStr>(line: &str, key: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 || fields[0] != key {
        bail!("expected `{key} <value>`, found `{line}`");
    }
    fields[1]
        .parse()
        .map_err(|e| anyhow!("value for `{key}`: {e}"))
}

fn ensure_consumed<'a>(mut lines: impl Iterator<Item = &'a str>) -> Result<()> {
    match lines.next() {
        Some(extra) => bail!("unexpected trailing line `{extra}`"),
        None => Ok(()),
    }
}
