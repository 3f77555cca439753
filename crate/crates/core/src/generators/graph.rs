//! Simple directed graphs and the edge-list file format:
//!
//! ```text
//! 3 2
//! 1 2
//! 2 3
//! ```
//!
//! The first line is `n m`, followed by `m` lines `u v` for the edge
//! `u -> v`. Vertices are numbered from 1.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph line {line}: {message}")]
pub struct GraphError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError {
        line,
        message: message.into(),
    }
}

/// A simple directed graph: no self-loops, no duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(err(0, "a graph needs at least one vertex"));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if !(1..=n).contains(&u) || !(1..=n).contains(&v) {
                return Err(err(
                    0,
                    format!("edge {u} {v} leaves the vertex range 1..{n}"),
                ));
            }
            if u == v {
                return Err(err(0, format!("self-loop at {u}")));
            }
            if !set.insert((u, v)) {
                return Err(err(0, format!("duplicate edge {u} {v}")));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::new(n, []).expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Every simple digraph on `n` vertices, one per edge subset.
    pub fn all_on(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (1..=n).filter(move |v| *v != u).map(move |v| (u, v)))
            .collect();
        assert!(pairs.len() < 32, "too many graphs to enumerate");
        (0u32..1 << pairs.len()).map(move |mask| Graph {
            n,
            edges: pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect(),
        })
    }

    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| err(1, "empty graph file"))?;
        let (n, m) = pair(hl, header)?;
        if n == 0 {
            return Err(err(hl, "a graph needs at least one vertex"));
        }
        let mut edges = BTreeSet::new();
        let mut count = 0;
        for (ln, l) in lines {
            let (u, v) = pair(ln, l)?;
            if !(1..=n).contains(&u) || !(1..=n).contains(&v) {
                return Err(err(ln, format!("vertex out of range 1..{n}")));
            }
            if u == v {
                return Err(err(ln, format!("self-loop at {u}")));
            }
            if !edges.insert((u, v)) {
                return Err(err(ln, format!("duplicate edge {u} {v}")));
            }
            count += 1;
        }
        if count != m {
            return Err(err(
                hl,
                format!("header announces {m} edges, found {count}"),
            ));
        }
        Ok(Graph { n, edges })
    }
}

fn pair(line: usize, text: &str) -> Result<(usize, usize), GraphError> {
    let nums: Vec<&str> = text.split_whitespace().collect();
    match nums.as_slice() {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => Err(err(line, format!("expected two integers, found {text:?}"))),
        },
        _ => Err(err(line, format!("expected two integers, found {text:?}"))),
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}
