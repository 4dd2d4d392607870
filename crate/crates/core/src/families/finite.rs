use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::words::{Alphabet, Letter, Point, UltWord};

use super::{Bound, Edge, SymbolicGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphFormatError {
    #[error("missing header `directed=0|1`")]
    MissingHeader,
    #[error("line {0}: expected `u v`")]
    BadLine(usize),
}

/// A finite graph or relation on labeled vertices. Loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    pub labels: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
    pub directed: bool,
}

impl FiniteGraph {
    pub fn new(n: usize, directed: bool) -> Self {
        FiniteGraph { labels: (0..n).map(|i| i.to_string()).collect(), edges: BTreeSet::new(), directed }
    }

    pub fn with_labels(labels: Vec<String>, directed: bool) -> Self {
        FiniteGraph { labels, edges: BTreeSet::new(), directed }
    }

    /// Vertices in order of first appearance.
    pub fn from_labeled_edges(edges: &[(String, String)], directed: bool) -> Self {
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut g = FiniteGraph::with_labels(Vec::new(), directed);
        let mut id = |g: &mut FiniteGraph, s: &String| -> usize {
            *index.entry(s.clone()).or_insert_with(|| {
                g.labels.push(s.clone());
                g.labels.len() - 1
            })
        };
        for (u, v) in edges {
            let a = id(&mut g, u);
            let b = id(&mut g, v);
            g.add_edge(a, b);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if self.directed {
            self.edges.insert((u, v));
        } else {
            self.edges.insert((u.min(v), u.max(v)));
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if self.directed {
            self.edges.contains(&(u, v))
        } else {
            self.edges.contains(&(u.min(v), u.max(v)))
        }
    }

    /// Adjacency of the underlying undirected relation, sorted, loops kept.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![BTreeSet::new(); self.len()];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn symmetrized(&self) -> FiniteGraph {
        let mut g = FiniteGraph::with_labels(self.labels.clone(), false);
        for &(u, v) in &self.edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|(u, v)| u == v)
    }

    /// `directed=0|1` then one `u v` line per edge (a lone `v` declares a vertex).
    pub fn to_text(&self) -> String {
        let mut s = format!("directed={}\n", self.directed as u8);
        let mut touched = vec![false; self.len()];
        for &(u, v) in &self.edges {
            touched[u] = true;
            touched[v] = true;
            let _ = writeln!(s, "{} {}", self.labels[u], self.labels[v]);
        }
        for (i, t) in touched.iter().enumerate() {
            if !t {
                let _ = writeln!(s, "{}", self.labels[i]);
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<FiniteGraph, GraphFormatError> {
        let mut lines = text.lines().map(str::trim).enumerate().filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let directed = match lines.next() {
            Some((_, "directed=0")) => false,
            Some((_, "directed=1")) => true,
            _ => return Err(GraphFormatError::MissingHeader),
        };
        let mut g = FiniteGraph::with_labels(Vec::new(), directed);
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        for (no, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() || toks.len() > 2 {
                return Err(GraphFormatError::BadLine(no + 1));
            }
            let ids: Vec<usize> = toks
                .iter()
                .map(|t| {
                    *index.entry(t.to_string()).or_insert_with(|| {
                        g.labels.push(t.to_string());
                        g.labels.len() - 1
                    })
                })
                .collect();
            if let [u, v] = ids[..] {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let (kw, arrow) = if self.directed { ("digraph", "->") } else { ("graph", "--") };
        let mut s = format!("{kw} \"{name}\" {{\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{l}\"];");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "  v{u} {arrow} v{v};");
        }
        s.push_str("}\n");
        s
    }
}

/// The symmetric cycle on `2p + 3` vertices.
pub fn odd_cycle(p: usize) -> FiniteGraph {
    let m = 2 * p + 3;
    let mut g = FiniteGraph::new(m, false);
    for i in 0..m {
        g.add_edge(i, (i + 1) % m);
    }
    g
}

/// `C_{2p+3}` realized on the constant words `v^∞`.
pub fn odd_cycle_family(p: usize) -> SymbolicGraph {
    let m = 2 * p + 3;
    SymbolicGraph::build(
        format!("odd-cycle:p={p}"),
        Alphabet::numerals(m),
        false,
        true,
        format!("{m} constant words"),
        move |_b: Bound| {
            (0..m)
                .map(|v| {
                    Edge::new(
                        Point::One(UltWord::constant(v as Letter)),
                        Point::One(UltWord::constant(((v + 1) % m) as Letter)),
                    )
                })
                .collect()
        },
        |n| Bound::depth(n + 2),
    )
}
