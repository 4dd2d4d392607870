//! Graph families given by explicit edge generators.
//!
//! A [`SymbolicGraph`] produces the edges whose parameters lie below a [`Bound`];
//! its saturation function names a bound past which no new level-`n` prefix pairs
//! appear. Undirected graphs are stored as their generating relation and
//! symmetrized on enumeration.

mod dynamical;
mod finite;
mod omega;
mod shifts;
mod spec;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::dynamics::DynamicsError;
use crate::words::{Alphabet, Letter, Point, Prefix, UltWord, WordError};

pub use dynamical::{
    go_graph, go_plus, gp_chain, graph_from_system, odometer_point, restricted_orbit_graph, BlockSchedule, OrbitSet,
    System,
};
pub use finite::{odd_cycle, odd_cycle_family, FiniteGraph, GraphFormatError};
pub use omega::{gdelta, gm, t_edges, t_graph, DEFAULT_CAP};
pub use shifts::{k0_graph, ka_core, ka_graph, periodic_orbit_graph, rank_alpha, rank_beta, rank_subshift, rank_word};
pub use spec::{parse_family, split_params, FamilySpec};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}`; expected one of odd-cycle, gm, gdelta, go-plus, graph-o, t, k0, rank-subshift, gp, orbit, ka, triangle (optionally with `:oriented`)")]
    UnknownFamily(String),
    #[error("bad parameter `{name}` for `{family}`: {reason}")]
    BadParam { family: String, name: String, reason: String },
    #[error("missing parameter `{name}` for `{family}`")]
    MissingParam { family: String, name: String },
    #[error("radix {0} is not in the class required here (d0 = 2, later digits odd)")]
    NotClassD(String),
    #[error("parameter out of desk-scale range: {0}")]
    TooLarge(String),
    #[error("cannot orient `{0}`: the generating relation contains a symmetric pair")]
    NotOrientable(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A generated edge between two points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: Point,
    pub to: Point,
}

impl Edge {
    pub fn new(from: Point, to: Point) -> Self {
        Edge { from, to }
    }

    pub fn swap(&self) -> Edge {
        Edge { from: self.to.clone(), to: self.from.clone() }
    }

    pub fn project(&self, n: usize) -> (Prefix, Prefix) {
        (self.from.level_prefix(n), self.to.level_prefix(n))
    }
}

/// Enumeration limits for generator parameters. `depth` bounds block indices and
/// repetition counts; `index` bounds orbit indices where a family has them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bound {
    pub depth: usize,
    pub index: u64,
}

impl Bound {
    pub fn depth(depth: usize) -> Self {
        Bound { depth, index: depth as u64 }
    }

    pub fn plus(self, k: usize) -> Self {
        Bound { depth: self.depth + k, index: self.index.saturating_add(k as u64) }
    }

    pub fn max(self, o: Bound) -> Self {
        Bound { depth: self.depth.max(o.depth), index: self.index.max(o.index) }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == self.depth as u64 {
            write!(f, "{}", self.depth)
        } else {
            write!(f, "{}/{}", self.depth, self.index)
        }
    }
}

type EdgeGen = dyn Fn(Bound) -> Vec<Edge> + Send + Sync;
type Saturation = dyn Fn(usize) -> Bound + Send + Sync;

/// A graph on a zero-dimensional space, presented by an edge generator.
#[derive(Clone)]
pub struct SymbolicGraph {
    pub spec: String,
    pub alphabet: Alphabet,
    pub directed: bool,
    pub two_sided: bool,
    pub compact: bool,
    pub point_set: String,
    /// Largest numeral letter generated, for families over ω.
    pub letter_cap: Option<usize>,
    /// Every point lies on at most one generated edge.
    pub matching: bool,
    gen: Arc<EdgeGen>,
    saturation: Arc<Saturation>,
}

impl fmt::Debug for SymbolicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolicGraph")
            .field("spec", &self.spec)
            .field("directed", &self.directed)
            .field("two_sided", &self.two_sided)
            .field("compact", &self.compact)
            .field("letter_cap", &self.letter_cap)
            .finish()
    }
}

/// Level-`n` prefix pairs, each with one representative edge.
pub type LevelEdges = BTreeMap<(Prefix, Prefix), Edge>;

impl SymbolicGraph {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn build(
        spec: impl Into<String>,
        alphabet: Alphabet,
        two_sided: bool,
        compact: bool,
        point_set: impl Into<String>,
        gen: impl Fn(Bound) -> Vec<Edge> + Send + Sync + 'static,
        saturation: impl Fn(usize) -> Bound + Send + Sync + 'static,
    ) -> Self {
        SymbolicGraph {
            spec: spec.into(),
            alphabet,
            directed: false,
            two_sided,
            compact,
            point_set: point_set.into(),
            letter_cap: None,
            matching: false,
            gen: Arc::new(gen),
            saturation: Arc::new(saturation),
        }
    }

    pub(crate) fn with_cap(mut self, cap: usize) -> Self {
        self.letter_cap = Some(cap);
        self
    }

    pub(crate) fn with_matching(mut self) -> Self {
        self.matching = true;
        self
    }

    pub(crate) fn replace_generator(&mut self, gen: impl Fn(Bound) -> Vec<Edge> + Send + Sync + 'static) {
        self.gen = Arc::new(gen);
    }

    /// `B(n)`.
    pub fn saturation(&self, n: usize) -> Bound {
        (self.saturation)(n)
    }

    /// The generating relation (one direction per clause).
    pub fn base_edges(&self, b: Bound) -> Vec<Edge> {
        (self.gen)(b)
    }

    /// All edges with parameters below `b`; swap-closed unless directed.
    pub fn edges(&self, b: Bound) -> Vec<Edge> {
        let mut out = self.base_edges(b);
        if !self.directed {
            let swapped: Vec<Edge> = out.iter().map(Edge::swap).collect();
            out.extend(swapped);
        }
        out
    }

    pub fn edges_at_level(&self, n: usize) -> LevelEdges {
        self.edges_at_level_bound(n, self.saturation(n))
    }

    pub fn edges_at_level_bound(&self, n: usize, b: Bound) -> LevelEdges {
        let mut out = LevelEdges::new();
        for e in self.edges(b) {
            out.entry(e.project(n)).or_insert(e);
        }
        out
    }

    /// `s(G)`: close under swap and drop the direction.
    pub fn symmetrize(&self) -> SymbolicGraph {
        let mut g = self.clone();
        g.directed = false;
        g.spec = self.spec.trim_end_matches(":oriented").to_string();
        g
    }

    /// The generating relation read as a directed graph, one arc per clause.
    /// Rejected when the relation already contains both `(x, y)` and `(y, x)`.
    pub fn orient(&self) -> Result<SymbolicGraph, FamilyError> {
        let b = self.saturation(2);
        let base = self.base_edges(b);
        let set: std::collections::HashSet<(&Point, &Point)> = base.iter().map(|e| (&e.from, &e.to)).collect();
        if base.iter().any(|e| set.contains(&(&e.to, &e.from))) {
            return Err(FamilyError::NotOrientable(self.spec.clone()));
        }
        let mut g = self.clone();
        g.directed = true;
        if !g.spec.ends_with(":oriented") {
            g.spec.push_str(":oriented");
        }
        Ok(g)
    }

    pub fn display_prefix(&self, p: &Prefix) -> String {
        p.display(&self.alphabet)
    }

    pub fn display_point(&self, p: &Point) -> String {
        p.display(&self.alphabet)
    }
}

// Helpers shared by the family constructors.

/// Concatenation of letter runs followed by a periodic tail.
pub(crate) fn runs(parts: &[(Letter, usize)], cycle: &[Letter]) -> Point {
    let mut head = Vec::new();
    for &(l, k) in parts {
        head.extend(std::iter::repeat_n(l, k));
    }
    Point::One(UltWord::of(&head, cycle))
}

pub(crate) fn word_then(prefix: &[Letter], parts: &[(Letter, usize)], cycle: &[Letter]) -> Point {
    let mut head = prefix.to_vec();
    for &(l, k) in parts {
        head.extend(std::iter::repeat_n(l, k));
    }
    Point::One(UltWord::of(&head, cycle))
}
