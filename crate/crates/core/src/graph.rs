//! Simple undirected graphs on vertices `1..=l`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// An undirected simple graph. Edges are stored as `(u, v)` with `u < v`,
/// sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Normalizes and sorts `edges`. Self-loops, duplicates and endpoints
    /// outside `1..=l` are rejected.
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            for x in [u, v] {
                if x == 0 || x > vertices {
                    return Err(Error::InvalidGraph(format!("vertex {x} is outside 1..={vertices}")));
                }
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate edge {} {}", w[0].0, w[0].1)));
        }
        Ok(Graph { vertices, edges: out })
    }

    pub fn complete(vertices: usize) -> Self {
        let edges = (1..=vertices)
            .flat_map(|u| (u + 1..=vertices).map(move |v| (u, v)))
            .collect();
        Graph { vertices, edges }
    }

    pub fn empty(vertices: usize) -> Self {
        Graph {
            vertices,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Every graph on `vertices` vertices, one per subset of the possible
    /// edges.
    pub fn all(vertices: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = Graph::complete(vertices).edges;
        assert!(pairs.len() < 32, "too many vertices to enumerate all graphs");
        (0u32..1 << pairs.len()).map(move |mask| Graph {
            vertices,
            edges: pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect(),
        })
    }
}

/// `l m` on the first line, then one `u v` line per edge.
impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidGraph("missing `l m` header".into()))?;
        let [l, m] = numbers::<2>(header, 1)?;
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines.enumerate() {
            let [u, v] = numbers::<2>(line, i + 2)?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::InvalidGraph(format!(
                "header announces {m} edges but {} follow",
                edges.len()
            )));
        }
        Graph::new(l, edges)
    }
}

fn numbers<const N: usize>(line: &str, lineno: usize) -> Result<[usize; N]> {
    let parsed: Vec<usize> = line
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidGraph(format!("line {lineno}: expected integers")))?;
    parsed
        .try_into()
        .map_err(|_| Error::InvalidGraph(format!("line {lineno}: expected {N} numbers")))
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.vertices, self.edges.len())?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}
