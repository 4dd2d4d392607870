//! Level-`n` quotient relations and the odd-closed-walk test.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::time::Instant;

use crate::colorings::ClopenColoring;
use crate::families::{Bound, Edge, FiniteGraph, SymbolicGraph};
use crate::words::{Alphabet, Prefix};

/// `G_n`: prefixes of length `n` related when the product of their cylinders meets
/// the graph. Self-loops are kept.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    pub family: String,
    pub level: usize,
    pub alphabet: Alphabet,
    pub vertices: Vec<Prefix>,
    /// Directed pairs, or `(min, max)` pairs when undirected.
    pub edges: BTreeSet<(usize, usize)>,
    pub directed: bool,
    reps: BTreeMap<(usize, usize), Edge>,
    index: HashMap<Prefix, usize>,
}

impl QuotientGraph {
    fn from_pairs(g: &SymbolicGraph, n: usize, pairs: impl IntoIterator<Item = ((Prefix, Prefix), Edge)>) -> Self {
        let pairs: Vec<((Prefix, Prefix), Edge)> = pairs.into_iter().collect();
        let vset: BTreeSet<Prefix> = pairs.iter().flat_map(|((u, v), _)| [u.clone(), v.clone()]).collect();
        let vertices: Vec<Prefix> = vset.into_iter().collect();
        let index: HashMap<Prefix, usize> = vertices.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut q = QuotientGraph {
            family: g.spec.clone(),
            level: n,
            alphabet: g.alphabet.clone(),
            vertices,
            edges: BTreeSet::new(),
            directed: g.directed,
            reps: BTreeMap::new(),
            index,
        };
        for ((u, v), e) in pairs {
            let (a, b) = (q.index[&u], q.index[&v]);
            let key = q.key(a, b);
            let e = if key == (a, b) { e } else { e.swap() };
            q.edges.insert(key);
            q.reps.entry(key).or_insert(e);
        }
        q
    }

    fn key(&self, a: usize, b: usize) -> (usize, usize) {
        if self.directed {
            (a, b)
        } else {
            (a.min(b), a.max(b))
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, p: &Prefix) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&self.key(a, b)) || self.edges.contains(&self.key(b, a))
    }

    /// A graph edge projecting onto the step `a → b`, oriented along the step.
    pub fn representative(&self, a: usize, b: usize) -> Option<Edge> {
        if let Some(e) = self.reps.get(&(a, b)) {
            return Some(e.clone());
        }
        self.reps.get(&(b, a)).map(Edge::swap)
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|(a, b)| a == b)
    }

    /// Sorted neighbor lists of the symmetrized relation.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![BTreeSet::new(); self.len()];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// `s(G_n)` as a relation.
    pub fn symmetrized(&self) -> QuotientGraph {
        if !self.directed {
            return self.clone();
        }
        let mut q = self.clone();
        q.directed = false;
        q.edges = self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        q.reps = BTreeMap::new();
        for (&(a, b), e) in &self.reps {
            let key = (a.min(b), a.max(b));
            let e = if key == (a, b) { e.clone() } else { e.swap() };
            q.reps.entry(key).or_insert(e);
        }
        q
    }

    pub fn label(&self, v: usize) -> String {
        self.vertices[v].display(&self.alphabet)
    }

    pub fn to_finite(&self) -> FiniteGraph {
        let mut g = FiniteGraph::with_labels((0..self.len()).map(|v| self.label(v)).collect(), self.directed);
        for &(a, b) in &self.edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn to_dot(&self) -> String {
        let (kw, arrow) = if self.directed { ("digraph", "->") } else { ("graph", "--") };
        let mut s = format!("{kw} \"{} level {}\" {{\n", self.family, self.level);
        for v in 0..self.len() {
            let _ = writeln!(s, "  v{v} [label=\"{}\"];", self.label(v));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  v{a} {arrow} v{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// `G_n` computed at the family's saturation bound.
pub fn quotient(g: &SymbolicGraph, n: usize) -> QuotientGraph {
    quotient_at(g, n, g.saturation(n))
}

pub fn quotient_at(g: &SymbolicGraph, n: usize, b: Bound) -> QuotientGraph {
    QuotientGraph::from_pairs(g, n, g.edges_at_level_bound(n, b))
}

/// A closed walk `x₀ … x_k` in a quotient with one graph edge per step.
#[derive(Clone, Debug)]
pub struct WalkWitness {
    pub level: usize,
    pub vertices: Vec<Prefix>,
    pub steps: Vec<Edge>,
}

impl WalkWitness {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.first() == self.vertices.last()
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    /// The walk read at a lower level.
    pub fn project(&self, m: usize) -> WalkWitness {
        WalkWitness {
            level: m.min(self.level),
            vertices: self.vertices.iter().map(|p| p.truncate(m)).collect(),
            steps: self.steps.clone(),
        }
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        self.vertices.iter().map(|p| p.display(alpha)).collect::<Vec<_>>().join(" - ")
    }
}

/// Either a shortest odd closed walk or a proper 2-coloring of the vertices.
#[derive(Clone, Debug)]
pub enum WalkSearch {
    Walk(WalkWitness),
    Bipartite(Vec<u8>),
}

fn shortest_odd_through(adj: &[Vec<usize>], s: usize, cap: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut dist = vec![usize::MAX; 2 * n];
    let mut parent = vec![usize::MAX; 2 * n];
    let start = 2 * s;
    let target = 2 * s + 1;
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if dist[x] + 1 > cap {
            break;
        }
        let (v, side) = (x / 2, x % 2);
        for &w in &adj[v] {
            let y = 2 * w + (1 - side);
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                if y == target {
                    let mut path = vec![s];
                    let mut cur = y;
                    while cur != start {
                        cur = parent[cur];
                        path.push(cur / 2);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(y);
            }
        }
    }
    None
}

fn two_coloring(adj: &[Vec<usize>]) -> Option<Vec<u8>> {
    let mut color = vec![u8::MAX; adj.len()];
    for s in 0..adj.len() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Shortest odd closed walk of `s(q)`; ties go to the least start vertex.
pub fn odd_closed_walk(q: &QuotientGraph) -> WalkSearch {
    let adj = q.neighbors();
    if let Some(c) = two_coloring(&adj) {
        return WalkSearch::Bipartite(c);
    }
    let mut best: Option<Vec<usize>> = None;
    for s in 0..q.len() {
        let cap = best.as_ref().map_or(usize::MAX, |b| b.len() - 2);
        if let Some(p) = shortest_odd_through(&adj, s, cap) {
            let done = p.len() == 2;
            best = Some(p);
            if done {
                break;
            }
        }
    }
    let path = best.expect("non-bipartite relation has an odd closed walk");
    let steps = path.windows(2).map(|w| q.representative(w[0], w[1]).expect("walk follows edges")).collect();
    WalkSearch::Walk(WalkWitness {
        level: q.level,
        vertices: path.iter().map(|&v| q.vertices[v].clone()).collect(),
        steps,
    })
}

/// Length of a shortest odd closed walk, if any.
pub fn odd_girth(q: &QuotientGraph) -> Option<usize> {
    match odd_closed_walk(q) {
        WalkSearch::Walk(w) => Some(w.len()),
        WalkSearch::Bipartite(_) => None,
    }
}

#[derive(Clone, Debug)]
pub enum Decision {
    Bipartite(ClopenColoring),
    OddWalk(WalkWitness),
}

impl Decision {
    pub fn is_odd_walk(&self) -> bool {
        matches!(self, Decision::OddWalk(_))
    }
}

/// Bipartite with the pulled-back level-`n` 2-coloring, or an odd closed walk.
pub fn decide_quotient(q: &QuotientGraph) -> Decision {
    match odd_closed_walk(q) {
        WalkSearch::Walk(w) => Decision::OddWalk(w),
        WalkSearch::Bipartite(c) => {
            let map = q.vertices.iter().cloned().zip(c).collect();
            Decision::Bipartite(ClopenColoring::new(&q.family, q.level, 2, map, Some(0)))
        }
    }
}

pub fn decide_level(g: &SymbolicGraph, n: usize) -> Decision {
    decide_quotient(&quotient(g, n))
}

#[derive(Clone, Debug)]
pub struct LevelReport {
    pub level: usize,
    pub decision: Decision,
    pub odd_girth: Option<usize>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub millis: u128,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub family: String,
    pub compact: bool,
    pub levels: Vec<LevelReport>,
    pub n_max: usize,
    /// Set when the edge budget stopped the scan early.
    pub partial: bool,
}

impl ScanReport {
    pub fn first_bipartite(&self) -> Option<usize> {
        self.levels.iter().find(|l| !l.decision.is_odd_walk()).map(|l| l.level)
    }

    pub fn headline(&self) -> String {
        if let Some(n) = self.first_bipartite() {
            return format!("chi_c <= 2 (certified by a level-{n} clopen 2-coloring)");
        }
        let reached = self.levels.last().map_or(0, |l| l.level);
        let mut s = format!(
            "no clopen 2-coloring factors through any level <= {reached}; chi_c >= 3 evidence through level {reached}"
        );
        if self.partial {
            let _ = write!(s, " (partial: budget exhausted before level {})", self.n_max);
        }
        if self.compact {
            s.push_str(" (compact space: odd walks at every level are equivalent to chi_c >= 3)");
        } else {
            s.push_str(" (caveat: space not compact, odd walks at every level do not imply chi_c >= 3)");
        }
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Largest number of generated edges enumerated for one level.
    pub max_edges: usize,
    pub start: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { max_edges: 5_000_000, start: 1 }
    }
}

/// Decides levels `start..=n_max`, stopping at the first bipartite quotient.
pub fn scan(g: &SymbolicGraph, n_max: usize, opts: ScanOptions) -> ScanReport {
    let mut report =
        ScanReport { family: g.spec.clone(), compact: g.compact, levels: Vec::new(), n_max, partial: false };
    for n in opts.start..=n_max {
        let t0 = Instant::now();
        let edges = g.edges(g.saturation(n));
        if edges.len() > opts.max_edges {
            report.partial = true;
            break;
        }
        let mut pairs: BTreeMap<(Prefix, Prefix), Edge> = BTreeMap::new();
        for e in edges {
            pairs.entry(e.project(n)).or_insert(e);
        }
        let q = QuotientGraph::from_pairs(g, n, pairs);
        let decision = decide_quotient(&q);
        let odd_girth = match &decision {
            Decision::OddWalk(w) => Some(w.len()),
            Decision::Bipartite(_) => None,
        };
        let stop = !decision.is_odd_walk();
        report.levels.push(LevelReport {
            level: n,
            decision,
            odd_girth,
            vertex_count: q.len(),
            edge_count: q.edge_count(),
            millis: t0.elapsed().as_millis(),
        });
        if stop {
            break;
        }
    }
    report
}
