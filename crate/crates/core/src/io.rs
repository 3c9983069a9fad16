//! Line-oriented graph files and seeded instance generation.
//!
//! ```text
//! c optional comment
//! p cvc <n> <m>
//! e <u> <v>        (m lines, 1-based)
//! w <v> <weight>   (optional, missing weights are 1.0)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GraphFile {
    /// Comment lines verbatim, including the leading `c`.
    pub comments: Vec<String>,
    pub n: usize,
    /// Edge records in file order, 1-based.
    pub edges: Vec<(usize, usize)>,
    /// Weight records in file order, 1-based.
    pub weights: Vec<(usize, f64)>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
}

impl GraphFile {
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut file = GraphFile::default();
        let mut header: Option<(usize, usize)> = None;
        let mut seen_edges = HashSet::new();
        let mut seen_weights = HashSet::new();
        let mut last = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if trimmed == "c" || trimmed.starts_with("c ") || trimmed.starts_with("c\t") {
                file.comments.push(trimmed.to_string());
                continue;
            }
            let mut toks = trimmed.split_whitespace();
            let kind = toks.next().unwrap_or_default();
            match kind {
                "p" => {
                    if header.is_some() {
                        return Err(parse_err(line, "duplicate header"));
                    }
                    let fmt: String = field(toks.next(), line, "format")?;
                    if fmt != "cvc" {
                        return Err(parse_err(line, format!("unknown format {fmt:?}")));
                    }
                    let n = field(toks.next(), line, "vertex count")?;
                    let m = field(toks.next(), line, "edge count")?;
                    header = Some((n, m));
                    file.n = n;
                }
                "e" | "w" => {
                    let Some((n, _)) = header else {
                        return Err(parse_err(line, "record before header"));
                    };
                    let u: usize = field(toks.next(), line, "vertex")?;
                    if u == 0 || u > n {
                        return Err(parse_err(line, format!("vertex {u} out of range 1..={n}")));
                    }
                    if kind == "e" {
                        let v: usize = field(toks.next(), line, "vertex")?;
                        if v == 0 || v > n {
                            return Err(parse_err(
                                line,
                                format!("vertex {v} out of range 1..={n}"),
                            ));
                        }
                        if u == v {
                            return Err(parse_err(line, format!("self-loop at {u}")));
                        }
                        if !seen_edges.insert((u.min(v), u.max(v))) {
                            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
                        }
                        file.edges.push((u, v));
                    } else {
                        let w: f64 = field(toks.next(), line, "weight")?;
                        if !w.is_finite() || w < 0.0 {
                            return Err(parse_err(line, format!("invalid weight {w}")));
                        }
                        if !seen_weights.insert(u) {
                            return Err(parse_err(line, format!("duplicate weight for {u}")));
                        }
                        file.weights.push((u, w));
                    }
                }
                other => return Err(parse_err(line, format!("unknown record {other:?}"))),
            }
            if let Some(extra) = toks.next() {
                return Err(parse_err(line, format!("trailing token {extra:?}")));
            }
        }
        let Some((_, m)) = header else {
            return Err(parse_err(last.max(1), "missing header"));
        };
        if m != file.edges.len() {
            return Err(parse_err(
                last,
                format!("header declares {m} edges, found {}", file.edges.len()),
            ));
        }
        Ok(file)
    }

    pub fn parse_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_str(&std::fs::read_to_string(path)?)
    }

    /// Canonical text: comments, header, edges, weights.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str(c);
            out.push('\n');
        }
        writeln!(out, "p cvc {} {}", self.n, self.edges.len()).unwrap();
        for (u, v) in &self.edges {
            writeln!(out, "e {u} {v}").unwrap();
        }
        for (v, w) in &self.weights {
            writeln!(out, "w {v} {w}").unwrap();
        }
        out
    }

    pub fn from_graph(g: &Graph, weights: Option<&[f64]>) -> Self {
        GraphFile {
            comments: Vec::new(),
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect(),
            weights: weights
                .map(|w| w.iter().enumerate().map(|(v, &x)| (v + 1, x)).collect())
                .unwrap_or_default(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (u - 1, v - 1)))
    }

    /// The graph and a weight per vertex, defaulting to 1.0.
    pub fn to_graph_and_weights(&self) -> Result<(Graph, Vec<f64>)> {
        let mut weights = vec![1.0; self.n];
        for &(v, w) in &self.weights {
            weights[v - 1] = w;
        }
        Ok((self.to_graph()?, weights))
    }
}

/// Erdős–Rényi `G(n, p)`: each pair in lexicographic order is drawn once.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Result<GraphFile> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "edge probability {p} not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u + 1, v + 1));
            }
        }
    }
    Ok(GraphFile {
        comments: vec![format!("c gnp n={n} p={p} seed={seed}")],
        n,
        edges,
        weights: Vec::new(),
    })
}

/// Random connected graph: a random recursive tree plus every other pair
/// independently with probability `p`.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        for u in 0..v {
            if u == parent || rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("edges are distinct")
}
