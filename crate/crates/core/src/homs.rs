//! Homomorphism search between finite graphs, cycle spectra and odd-girth
//! obstructions between quotients.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::families::{FiniteGraph, SymbolicGraph};
use crate::quotients::{odd_closed_walk, quotient, WalkSearch, WalkWitness};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomError {
    #[error("budget exceeded: {0}")]
    Budget(String),
}

/// A vertex map carrying edges to edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomWitness {
    pub map: Vec<usize>,
    pub injective: bool,
}

impl HomWitness {
    pub fn is_valid(&self, g: &FiniteGraph, h: &FiniteGraph) -> bool {
        let directed = g.directed && h.directed;
        let edge_ok =
            |a: usize, b: usize| if directed { h.has_edge(a, b) } else { h.has_edge(a, b) || h.has_edge(b, a) };
        let injective_ok = !self.injective || self.map.iter().collect::<BTreeSet<_>>().len() == self.map.len();
        self.map.len() == g.len()
            && self.map.iter().all(|&v| v < h.len())
            && injective_ok
            && g.edges.iter().all(|&(u, v)| edge_ok(self.map[u], self.map[v]))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &HomWitness) -> HomWitness {
        HomWitness {
            map: self.map.iter().map(|&v| other.map[v]).collect(),
            injective: self.injective && other.injective,
        }
    }
}

const PRODUCT_BUDGET: usize = 1_000_000;
const NODE_BUDGET: u64 = 50_000_000;

type Domain = Vec<u64>;

fn bit(d: &Domain, i: usize) -> bool {
    d[i / 64] >> (i % 64) & 1 == 1
}

struct HomSearch<'a> {
    order: Vec<usize>,
    /// Out- and in-neighbors in `G` (equal when undirected).
    g_out: Vec<Vec<usize>>,
    g_in: Vec<Vec<usize>>,
    h_out: Vec<Domain>,
    h_in: Vec<Domain>,
    h_len: usize,
    injective: bool,
    map: Vec<usize>,
    nodes: u64,
    _g: &'a FiniteGraph,
}

impl HomSearch<'_> {
    fn run(&mut self, depth: usize, domains: &[Domain]) -> Result<bool, HomError> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return Err(HomError::Budget(format!("more than {NODE_BUDGET} search nodes")));
        }
        if depth == self.order.len() {
            return Ok(true);
        }
        let u = self.order[depth];
        for a in (0..self.h_len).filter(|&a| bit(&domains[u], a)) {
            let mut next = domains.to_vec();
            let mut ok = true;
            for &v in &self.g_out[u] {
                if self.map[v] == usize::MAX {
                    next[v].iter_mut().zip(&self.h_out[a]).for_each(|(x, y)| *x &= y);
                    ok &= next[v].iter().any(|&x| x != 0);
                } else {
                    ok &= bit(&self.h_out[a], self.map[v]);
                }
            }
            for &v in &self.g_in[u] {
                if self.map[v] == usize::MAX {
                    next[v].iter_mut().zip(&self.h_in[a]).for_each(|(x, y)| *x &= y);
                    ok &= next[v].iter().any(|&x| x != 0);
                } else {
                    ok &= bit(&self.h_in[a], self.map[v]);
                }
            }
            if self.injective {
                for (v, d) in next.iter_mut().enumerate() {
                    if self.map[v] == usize::MAX && v != u {
                        d[a / 64] &= !(1 << (a % 64));
                        ok &= d.iter().any(|&x| x != 0);
                    }
                }
            }
            if !ok {
                continue;
            }
            self.map[u] = a;
            if self.run(depth + 1, &next)? {
                return Ok(true);
            }
            self.map[u] = usize::MAX;
        }
        Ok(false)
    }
}

/// A homomorphism `G → H` (injective if asked), found by backtracking over the
/// vertices of `G` in degree-descending order with forward checking. Undirected
/// unless both graphs are directed.
pub fn hom_exists(g: &FiniteGraph, h: &FiniteGraph, injective: bool) -> Result<Option<HomWitness>, HomError> {
    if g.len().saturating_mul(h.len()) > PRODUCT_BUDGET {
        return Err(HomError::Budget(format!("|G|·|H| = {} > {PRODUCT_BUDGET}", g.len() * h.len())));
    }
    if injective && g.len() > h.len() {
        return Ok(None);
    }
    let directed = g.directed && h.directed;
    let words = h.len().div_ceil(64).max(1);
    let mut h_out = vec![vec![0u64; words]; h.len()];
    let mut h_in = vec![vec![0u64; words]; h.len()];
    for &(a, b) in &h.edges {
        h_out[a][b / 64] |= 1 << (b % 64);
        h_in[b][a / 64] |= 1 << (a % 64);
        if !directed {
            h_out[b][a / 64] |= 1 << (a % 64);
            h_in[a][b / 64] |= 1 << (b % 64);
        }
    }
    let mut g_out = vec![Vec::new(); g.len()];
    let mut g_in = vec![Vec::new(); g.len()];
    for &(u, v) in &g.edges {
        g_out[u].push(v);
        g_in[v].push(u);
        if !directed {
            g_out[v].push(u);
            g_in[u].push(v);
        }
    }
    // Loops in G need a loop at the image.
    let mut full = vec![0u64; words];
    for a in 0..h.len() {
        full[a / 64] |= 1 << (a % 64);
    }
    let mut domains = vec![full; g.len()];
    for &(u, v) in &g.edges {
        if u == v {
            for a in 0..h.len() {
                if !bit(&h_out[a], a) {
                    domains[u][a / 64] &= !(1 << (a % 64));
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g_out[v].len() + g_in[v].len()), v));
    let mut s = HomSearch {
        order,
        g_out,
        g_in,
        h_out,
        h_in,
        h_len: h.len(),
        injective,
        map: vec![usize::MAX; g.len()],
        nodes: 0,
        _g: g,
    };
    Ok(s.run(0, &domains)?.then(|| HomWitness { map: s.map.clone(), injective }))
}

const SPECTRUM_NODES: u64 = 50_000_000;

/// Lengths of the simple cycles of `G` up to `max_len` (loops have length 1; an
/// undirected edge is not a 2-cycle).
pub fn cycle_spectrum(g: &FiniteGraph, max_len: usize) -> Result<BTreeSet<usize>, HomError> {
    if max_len > 64 {
        return Err(HomError::Budget(format!("max_len {max_len} > 64")));
    }
    let adj: Vec<Vec<usize>> = if g.directed {
        let mut a = vec![Vec::new(); g.len()];
        for &(u, v) in &g.edges {
            a[u].push(v);
        }
        a
    } else {
        g.adjacency()
    };
    let mut out = BTreeSet::new();
    if max_len >= 1 && g.has_loop() {
        out.insert(1);
    }
    let mut nodes = 0u64;
    let mut on_path = vec![false; g.len()];
    // Cycles are enumerated from their least vertex.
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        s: usize,
        v: usize,
        len: usize,
        prev: usize,
        adj: &[Vec<usize>],
        max_len: usize,
        directed: bool,
        on_path: &mut [bool],
        out: &mut BTreeSet<usize>,
        nodes: &mut u64,
    ) -> Result<(), HomError> {
        *nodes += 1;
        if *nodes > SPECTRUM_NODES {
            return Err(HomError::Budget(format!("more than {SPECTRUM_NODES} search nodes")));
        }
        for &w in &adj[v] {
            if w == s && len >= 1 && (directed || (len >= 2 && w != prev) || len >= 3) {
                if len < max_len && (directed || len + 1 >= 3) {
                    out.insert(len + 1);
                }
                continue;
            }
            if w <= s || on_path[w] || len + 1 >= max_len {
                continue;
            }
            on_path[w] = true;
            dfs(s, w, len + 1, v, adj, max_len, directed, on_path, out, nodes)?;
            on_path[w] = false;
        }
        Ok(())
    }
    for s in 0..g.len() {
        on_path[s] = true;
        dfs(s, s, 0, usize::MAX, &adj, max_len, g.directed, &mut on_path, &mut out, &mut nodes)?;
        on_path[s] = false;
    }
    Ok(out)
}

/// Odd girths of two level-`n` quotients compared.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub level: usize,
    pub girth1: Option<usize>,
    pub girth2: Option<usize>,
    pub witness1: Option<WalkWitness>,
    pub witness2: Option<WalkWitness>,
    pub obstructed: bool,
}

impl ObstructionReport {
    pub fn message(&self, g1: &str, g2: &str) -> String {
        let show = |g: Option<usize>| g.map_or("none (bipartite)".to_string(), |x| x.to_string());
        if self.obstructed {
            format!(
                "obstruction: odd girth {} of {g1} < {} of {g2} at level {}; no continuous reduction {g1} -> {g2} is compatible with the level-{} data",
                show(self.girth1),
                show(self.girth2),
                self.level,
                self.level
            )
        } else {
            format!(
                "no obstruction at level {}: odd girths {} ({g1}) and {} ({g2})",
                self.level,
                show(self.girth1),
                show(self.girth2)
            )
        }
    }
}

/// Odd cycles map to odd closed walks of at most the same length, so a larger
/// odd girth (or none) on the target side obstructs level-compatible reductions.
pub fn quotient_hom_obstruction(g1: &SymbolicGraph, g2: &SymbolicGraph, n: usize) -> ObstructionReport {
    let walk = |g: &SymbolicGraph| match odd_closed_walk(&quotient(g, n)) {
        WalkSearch::Walk(w) => Some(w),
        WalkSearch::Bipartite(_) => None,
    };
    let (w1, w2) = (walk(g1), walk(g2));
    let (girth1, girth2) = (w1.as_ref().map(WalkWitness::len), w2.as_ref().map(WalkWitness::len));
    let obstructed = match (girth1, girth2) {
        (Some(a), Some(b)) => b > a,
        (Some(_), None) => true,
        _ => false,
    };
    ObstructionReport { level: n, girth1, girth2, witness1: w1, witness2: w2, obstructed }
}

/// Cycle lengths of `G` missing from `H`: each rules out injective homomorphisms.
pub fn spectrum_obstruction(g: &FiniteGraph, h: &FiniteGraph, max_len: usize) -> Result<BTreeSet<usize>, HomError> {
    let (a, b) = (cycle_spectrum(g, max_len)?, cycle_spectrum(h, max_len)?);
    Ok(a.difference(&b).copied().collect())
}
