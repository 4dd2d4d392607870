//! Clopen and predicate colorings: construction, verification and search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::dynamics::{odometer_level_orbit, odometer_succ_finite, DynamicsError, Radix};
use crate::families::{gdelta, Bound, Edge, SymbolicGraph};
use crate::quotients::QuotientGraph;
use crate::words::{Alphabet, Letter, Point, Prefix, UltWord, WordError};

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("coloring is not total: no color for prefix `{0}`")]
    NotTotal(String),
    #[error("radix {0} has no even digit, so no parity coloring exists")]
    NoEvenDigit(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("search budget exceeded: {0}")]
    TooLarge(String),
    #[error("prefix too short: return time needs {needed} letters, got {got}")]
    NeedsLongerPrefix { needed: usize, got: usize },
    #[error("bad coloring file: {0}")]
    Format(String),
    #[error("unknown predicate coloring `{0}` (known: t-coloring)")]
    UnknownPredicate(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A coloring constant on the cylinders of one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClopenColoring {
    pub family: String,
    pub level: usize,
    pub colors: usize,
    pub map: BTreeMap<Prefix, u8>,
    /// Color of level-`L` prefixes missing from `map`.
    pub default: Option<u8>,
}

impl ClopenColoring {
    pub fn new(family: &str, level: usize, colors: usize, map: BTreeMap<Prefix, u8>, default: Option<u8>) -> Self {
        ClopenColoring { family: family.to_string(), level, colors, map, default }
    }

    /// Color of a prefix of length at least `L`.
    pub fn color_of(&self, p: &Prefix, alpha: &Alphabet) -> Result<u8, ColoringError> {
        let t = p.truncate(self.level);
        match self.map.get(&t).copied().or(self.default) {
            Some(c) => Ok(c),
            None => Err(ColoringError::NotTotal(t.display(alpha))),
        }
    }

    pub fn color_point(&self, x: &Point, alpha: &Alphabet) -> Result<u8, ColoringError> {
        self.color_of(&x.level_prefix(self.level), alpha)
    }

    /// Header `level=L colors=k family=<spec>`, then `prefix color` lines; `* c`
    /// gives the default color.
    pub fn to_text(&self, alpha: &Alphabet) -> String {
        let mut s = format!("level={} colors={} family={}\n", self.level, self.colors, self.family);
        for (p, c) in &self.map {
            let _ = writeln!(s, "{} {c}", p.display(alpha));
        }
        if let Some(c) = self.default {
            let _ = writeln!(s, "* {c}");
        }
        s
    }

    pub fn parse(text: &str, alpha: &Alphabet, two_sided: bool) -> Result<Self, ColoringError> {
        let bad = |m: String| ColoringError::Format(m);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
        let (head, family) =
            header.split_once("family=").ok_or_else(|| bad("header needs `level=L colors=k family=<spec>`".into()))?;
        let mut level = None;
        let mut colors = None;
        for tok in head.split_whitespace() {
            match tok.split_once('=') {
                Some(("level", v)) => level = v.parse::<usize>().ok(),
                Some(("colors", v)) => colors = v.parse::<usize>().ok(),
                _ => return Err(bad(format!("unexpected header token `{tok}`"))),
            }
        }
        let (level, colors) = level.zip(colors).ok_or_else(|| bad("missing level= or colors=".into()))?;
        let mut c = ClopenColoring::new(family.trim(), level, colors, BTreeMap::new(), None);
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let (word, color) = match toks.as_slice() {
                [w, col] => (*w, *col),
                [col] => ("", *col),
                _ => return Err(bad(format!("expected `prefix color`, got `{line}`"))),
            };
            let color: u8 = color.parse().map_err(|_| bad(format!("bad color `{color}`")))?;
            if color as usize >= colors {
                return Err(bad(format!("color {color} out of range (colors={colors})")));
            }
            if word == "*" {
                c.default = Some(color);
                continue;
            }
            let p = Prefix::parse(word, alpha, two_sided)?;
            if p.len() != level {
                return Err(bad(format!("prefix `{word}` has length {} not {level}", p.len())));
            }
            c.map.insert(p, color);
        }
        Ok(c)
    }
}

/// A coloring given by a decision procedure on points.
#[derive(Clone)]
pub struct PredicateColoring {
    pub name: String,
    pub colors: usize,
    pub f: fn(&Point) -> u8,
}

impl fmt::Debug for PredicateColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PredicateColoring({})", self.name)
    }
}

fn t_color(x: &Point) -> u8 {
    let Point::One(w) = x else { return 0 };
    let first = w.letter(0) as usize;
    if first == 0 {
        return 1;
    }
    if first % 2 == 1 {
        return 0;
    }
    let k = (first - 2) / 2;
    let second = w.letter(1) as usize;
    let zeros = (2..k + 3).all(|t| w.letter(t) == 0);
    (second >= 1 && second <= 2 * k + 1 && zeros) as u8
}

/// The 2-coloring of `𝕋` with class 1 equal to `N_0 ∪ ⋃_{k, j≤2k} N_{(2k+2)(j+1)0^{k+1}}`.
pub fn t_coloring() -> PredicateColoring {
    PredicateColoring { name: "t-coloring".into(), colors: 2, f: t_color }
}

pub fn predicate_coloring(name: &str) -> Result<PredicateColoring, ColoringError> {
    match name {
        "t-coloring" => Ok(t_coloring()),
        _ => Err(ColoringError::UnknownPredicate(name.into())),
    }
}

#[derive(Clone, Debug)]
pub enum Coloring {
    Clopen(ClopenColoring),
    Predicate(PredicateColoring),
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Proper,
    Violation { edge: Edge, colors: (u8, u8) },
}

#[derive(Clone, Debug)]
pub struct Verification {
    pub verdict: Verdict,
    /// True when the check covers every edge of the graph.
    pub complete: bool,
    pub level: usize,
    pub edges_checked: usize,
}

impl Verification {
    pub fn is_proper(&self) -> bool {
        matches!(self.verdict, Verdict::Proper)
    }
}

/// Checks `c(x) ≠ c(y)` on edges. A clopen coloring of level `L` is checked on the
/// level-`max(L, n)` quotient, which is complete; a predicate coloring is checked
/// on the generated edges below `B(n)` only.
pub fn verify_coloring(g: &SymbolicGraph, c: &Coloring, n: usize) -> Result<Verification, ColoringError> {
    match c {
        Coloring::Clopen(c) => {
            let m = c.level.max(n);
            let pairs = g.edges_at_level(m);
            let mut checked = 0;
            for ((u, v), e) in &pairs {
                let (cu, cv) = (c.color_of(u, &g.alphabet)?, c.color_of(v, &g.alphabet)?);
                checked += 1;
                if cu == cv {
                    return Ok(Verification {
                        verdict: Verdict::Violation { edge: e.clone(), colors: (cu, cv) },
                        complete: true,
                        level: m,
                        edges_checked: checked,
                    });
                }
            }
            Ok(Verification { verdict: Verdict::Proper, complete: true, level: m, edges_checked: checked })
        }
        Coloring::Predicate(p) => verify_edges(&g.edges(g.saturation(n)), p, n),
    }
}

/// Sweep of a predicate coloring over an explicit edge list.
pub fn verify_edges(edges: &[Edge], p: &PredicateColoring, level: usize) -> Result<Verification, ColoringError> {
    for (i, e) in edges.iter().enumerate() {
        let (cu, cv) = ((p.f)(&e.from), (p.f)(&e.to));
        if cu == cv {
            return Ok(Verification {
                verdict: Verdict::Violation { edge: e.clone(), colors: (cu, cv) },
                complete: false,
                level,
                edges_checked: i + 1,
            });
        }
    }
    Ok(Verification { verdict: Verdict::Proper, complete: false, level, edges_checked: edges.len() })
}

/// `c(α) = parity(i)` where `α|(j₀+1) = o^i(0^{j₀+1})` and `d_{j₀}` is the first even digit.
pub fn parity_coloring(d: &Radix) -> Result<ClopenColoring, ColoringError> {
    let j0 = d.first_even().ok_or_else(|| ColoringError::NoEvenDigit(d.to_string()))?;
    let orbit = odometer_level_orbit(d, j0)?;
    let map = orbit.into_iter().enumerate().map(|(i, p)| (p, (i % 2) as u8)).collect();
    Ok(ClopenColoring::new(&format!("graph-o:d={d}"), j0 + 1, 2, map, None))
}

/// `c(α) = parity(α(0))` if `α(0) < d₀ − 1`, else 2.
pub fn first_letter_coloring(d: &Radix) -> ClopenColoring {
    let d0 = d.digit(0) as usize;
    let map =
        (0..d0).map(|v| (Prefix::one_sided(vec![v as Letter]), if v + 1 < d0 { (v % 2) as u8 } else { 2 })).collect();
    ClopenColoring::new(&format!("graph-o:d={d}"), 1, 3, map, None)
}

/// Orbit index of a block read off the last run of the head: `s a^{i+1}` or `s ā^{i+1}`.
fn block_index(w: &UltWord) -> Option<usize> {
    let h = w.head();
    let last = *h.last()?;
    let run = h.iter().rev().take_while(|&&l| l == last).count();
    Some(run - 1)
}

/// The level-1 partition `(N_c, N_0, N_1)` as colors 0, 1, 2. Requires every block
/// to satisfy `s_l(2i+ε)(0) = ε`, checked on the generated edges below `B(2)`.
pub fn three_coloring_beta(g: &SymbolicGraph) -> Result<ClopenColoring, ColoringError> {
    let alpha = &g.alphabet;
    let c = alpha.index("c").ok_or_else(|| ColoringError::Hypothesis(format!("`{}` has no letter c", g.spec)))?;
    for e in g.base_edges(g.saturation(2)) {
        for x in [&e.from, &e.to] {
            let Point::One(w) = x else {
                return Err(ColoringError::Hypothesis("two-sided points".into()));
            };
            let first = w.letter(0);
            if first == c {
                continue;
            }
            let i = block_index(w).ok_or_else(|| ColoringError::Hypothesis(x.display(alpha)))?;
            if alpha.value(first) != Some(i % 2) {
                return Err(ColoringError::Hypothesis(format!(
                    "block {} has index {i} but first letter {}",
                    x.display(alpha),
                    alpha.token(first)
                )));
            }
        }
    }
    let one = |l: Letter| Prefix::one_sided(vec![l]);
    let map = [(one(c), 0), (one(0), 1), (one(1), 2)].into_iter().collect();
    Ok(ClopenColoring::new(&g.spec, 1, 3, map, None))
}

const SEARCH_NODES: u64 = 20_000_000;

struct Search<'a> {
    adj: &'a [Vec<usize>],
    k: u8,
    color: Vec<u8>,
    nodes: u64,
}

impl Search<'_> {
    /// Uncolored vertex with the most distinct neighbor colors, then highest degree.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..self.adj.len() {
            if self.color[v] != u8::MAX {
                continue;
            }
            let mut seen = 0u32;
            for &w in &self.adj[v] {
                if self.color[w] != u8::MAX {
                    seen |= 1 << self.color[w];
                }
            }
            let key = (seen.count_ones() as usize, self.adj[v].len(), v);
            if best.is_none_or(|b| (key.0, key.1) > (b.0, b.1)) {
                best = Some(key);
            }
        }
        best.map(|b| b.2)
    }

    fn run(&mut self, used: u8) -> Result<bool, ()> {
        self.nodes += 1;
        if self.nodes > SEARCH_NODES {
            return Err(());
        }
        let Some(v) = self.pick() else { return Ok(true) };
        for c in 0..self.k.min(used + 1) {
            if self.adj[v].iter().any(|&w| self.color[w] == c) {
                continue;
            }
            self.color[v] = c;
            if self.run(used.max(c + 1))? {
                return Ok(true);
            }
        }
        self.color[v] = u8::MAX;
        Ok(false)
    }
}

/// Proper `k`-coloring of a finite relation by exhaustive backtracking; `None` if
/// there is none.
pub fn color_graph(adj: &[Vec<usize>], k: usize) -> Result<Option<Vec<u8>>, ColoringError> {
    if k == 0 || k > 6 {
        return Err(ColoringError::TooLarge(format!("k = {k} (1..=6 supported)")));
    }
    if adj.len() > 100_000 {
        return Err(ColoringError::TooLarge(format!("{} vertices", adj.len())));
    }
    if adj.iter().enumerate().any(|(v, n)| n.contains(&v)) {
        return Ok(None);
    }
    let mut s = Search { adj, k: k as u8, color: vec![u8::MAX; adj.len()], nodes: 0 };
    match s.run(0) {
        Ok(true) => Ok(Some(s.color)),
        Ok(false) => Ok(None),
        Err(()) => Err(ColoringError::TooLarge(format!("more than {SEARCH_NODES} search nodes"))),
    }
}

/// A proper `k`-coloring of the quotient pulled back to its level.
pub fn search_coloring(q: &QuotientGraph, k: usize) -> Result<Option<ClopenColoring>, ColoringError> {
    Ok(color_graph(&q.neighbors(), k)?.map(|c| {
        let map = q.vertices.iter().cloned().zip(c).collect();
        ClopenColoring::new(&q.family, q.level, k, map, Some(0))
    }))
}

/// `r_C(x) = min{l < L | o^l(x) ∈ N_C}` with `L = 2·∏_{j<|C|} d_j`.
pub fn return_time(d: &Radix, c: &[Letter], x: &[Letter]) -> Result<Option<u64>, ColoringError> {
    if x.len() < c.len() {
        return Err(ColoringError::NeedsLongerPrefix { needed: c.len(), got: x.len() });
    }
    let bound = 2 * d.product(c.len())?;
    let mut cur = x[..c.len()].to_vec();
    for l in 0..bound {
        if cur == c {
            return Ok(Some(l));
        }
        odometer_succ_finite(d, &mut cur);
    }
    Ok(None)
}

/// `x ↦ parity(r_C(x))` on level `|C|`.
pub fn return_parity_coloring(d: &Radix, c: &[Letter]) -> Result<ClopenColoring, ColoringError> {
    let mut map = BTreeMap::new();
    if !c.is_empty() {
        for p in odometer_level_orbit(d, c.len() - 1)? {
            let r = return_time(d, c, &p.letters)?.expect("odometer orbits are minimal");
            map.insert(p, (r % 2) as u8);
        }
    } else {
        map.insert(Prefix::one_sided(Vec::new()), 0);
    }
    Ok(ClopenColoring::new(&format!("graph-o:d={d}"), c.len(), 2, map, None))
}

/// An eventually periodic subset of ω: a finite set plus progressions `a + b·t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexSetSpec {
    pub finite: BTreeSet<u64>,
    pub progressions: Vec<(u64, u64)>,
}

impl IndexSetSpec {
    pub fn empty() -> Self {
        IndexSetSpec::default()
    }

    pub fn all() -> Self {
        IndexSetSpec::cofinite(0)
    }

    pub fn cofinite(from: u64) -> Self {
        IndexSetSpec { finite: BTreeSet::new(), progressions: vec![(from, 1)] }
    }

    pub fn progression(a: u64, b: u64) -> Self {
        IndexSetSpec { finite: BTreeSet::new(), progressions: vec![(a, b)] }
    }

    pub fn finite(v: impl IntoIterator<Item = u64>) -> Self {
        IndexSetSpec { finite: v.into_iter().collect(), progressions: Vec::new() }
    }

    /// `set{1,4}`, `ap{a,b}`, `all`, `none`, joined by `+`.
    pub fn parse(s: &str) -> Result<Self, ColoringError> {
        let mut out = IndexSetSpec::default();
        for part in s.split('+').map(str::trim) {
            match part {
                "all" => out.progressions.push((0, 1)),
                "none" | "" => {}
                _ => {
                    let (kind, body) = part
                        .split_once('{')
                        .and_then(|(k, r)| r.strip_suffix('}').map(|b| (k.trim(), b)))
                        .ok_or_else(|| ColoringError::Format(format!("bad index set `{part}`")))?;
                    let nums: Vec<u64> = body
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| t.parse().map_err(|_| ColoringError::Format(format!("bad integer `{t}`"))))
                        .collect::<Result<_, _>>()?;
                    match (kind, nums.as_slice()) {
                        ("set", _) => out.finite.extend(nums),
                        ("ap", [a, b]) => out.progressions.push((*a, *b)),
                        _ => return Err(ColoringError::Format(format!("bad index set `{part}`"))),
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, i: u64) -> bool {
        self.finite.contains(&i)
            || self.progressions.iter().any(|&(a, b)| i >= a && if b == 0 { i == a } else { (i - a).is_multiple_of(b) })
    }

    pub fn is_infinite(&self) -> bool {
        self.progressions.iter().any(|&(_, b)| b > 0)
    }

    /// Every member is below this, or every `i ≥` it is decided by the period.
    fn preperiod(&self) -> u64 {
        let f = self.finite.iter().next_back().map_or(0, |m| m + 1);
        self.progressions.iter().map(|&(a, _)| a + 1).max().unwrap_or(0).max(f)
    }

    fn period(&self) -> u64 {
        self.progressions.iter().filter(|p| p.1 > 0).fold(1, |acc, &(_, b)| num_integer::lcm(acc, b))
    }
}

impl fmt::Display for IndexSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.finite.is_empty() {
            let v: Vec<String> = self.finite.iter().map(u64::to_string).collect();
            parts.push(format!("set{{{}}}", v.join(",")));
        }
        for (a, b) in &self.progressions {
            parts.push(format!("ap{{{a},{b}}}"));
        }
        if parts.is_empty() {
            parts.push("none".into());
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Per-`k` index sets: a default plus finitely many overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JSpec<K: Ord> {
    pub default: IndexSetSpec,
    pub overrides: BTreeMap<K, IndexSetSpec>,
}

impl<K: Ord> JSpec<K> {
    pub fn uniform(s: IndexSetSpec) -> Self {
        JSpec { default: s, overrides: BTreeMap::new() }
    }

    pub fn get(&self, k: &K) -> &IndexSetSpec {
        self.overrides.get(k).unwrap_or(&self.default)
    }
}

/// A subgraph `(V, E)` of `(ℙ_δ, 𝔾_δ)` with eventually periodic descriptions.
#[derive(Clone, Debug)]
pub struct CharsubSpec {
    pub delta: UltWord,
    pub c_inf: bool,
    /// The `k` with some `ki0^∞ ∉ V`, `i ≤ 2k + 1`.
    pub missing_k: IndexSetSpec,
    /// `j` with the first-clause edge in `s(E)`.
    pub jb: JSpec<u64>,
    /// Keyed by `(k, i)`.
    pub jc: JSpec<(u64, u64)>,
    pub jd: JSpec<u64>,
}

impl CharsubSpec {
    /// `(ℙ_δ, 𝔾_δ)` itself.
    pub fn full(delta: UltWord) -> Self {
        CharsubSpec {
            delta,
            c_inf: true,
            missing_k: IndexSetSpec::empty(),
            jb: JSpec::uniform(IndexSetSpec::all()),
            jc: JSpec::uniform(IndexSetSpec::all()),
            jd: JSpec::uniform(IndexSetSpec::all()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharsubVerdict {
    AtLeastThree,
    /// CCN at most 2: the first failing clause, and the `k` from which on it fails.
    AtMostTwo {
        clause: String,
        threshold: u64,
    },
}

/// Clauses `c^∞ ∈ V`, then `I` infinite with (a)–(d) holding for each `k ∈ I`.
pub fn charsub_check(s: &CharsubSpec) -> CharsubVerdict {
    let at_most = |clause: &str, threshold: u64| CharsubVerdict::AtMostTwo { clause: clause.into(), threshold };
    if !s.c_inf {
        return at_most("c^inf in V", 0);
    }
    let ones = |k: u64| s.delta.letter(k as usize) == 1;
    let (dh, dc) = (s.delta.head().len() as u64, s.delta.cycle().len() as u64);
    let overrides: u64 =
        s.jb.overrides
            .keys()
            .chain(s.jd.overrides.keys())
            .copied()
            .chain(s.jc.overrides.keys().map(|k| k.0))
            .map(|k| k + 1)
            .max()
            .unwrap_or(0);
    let start = dh.max(s.missing_k.preperiod()).max(overrides);
    let window = num_integer::lcm(dc, s.missing_k.period());
    let last_before = |pred: &dyn Fn(u64) -> bool| (0..start + window).filter(|&k| pred(k)).last().map_or(0, |k| k + 1);
    let periodic_hit = |pred: &dyn Fn(u64) -> bool| (start..start + window).any(pred);
    if !periodic_hit(&ones) {
        return at_most("I infinite (delta has finitely many 1s)", last_before(&ones));
    }
    let a_ok = |k: u64| ones(k) && !s.missing_k.contains(k);
    if !periodic_hit(&a_ok) {
        return at_most("(a)", last_before(&a_ok));
    }
    let b_ok = |k: u64| a_ok(k) && s.jb.get(&k).is_infinite();
    if !s.jb.default.is_infinite() {
        return at_most("(b)", last_before(&b_ok));
    }
    let c_ok = |k: u64| b_ok(k) && (0..=2 * k).all(|i| s.jc.get(&(k, i)).is_infinite());
    if !s.jc.default.is_infinite() {
        return at_most("(c)", last_before(&c_ok));
    }
    let d_ok = |k: u64| c_ok(k) && s.jd.get(&k).is_infinite();
    if !s.jd.default.is_infinite() {
        return at_most("(d)", last_before(&d_ok));
    }
    CharsubVerdict::AtLeastThree
}

/// The subgraph `E` of `𝔾_δ` as a symbolic graph, letters capped at `cap`.
pub fn charsub_graph(s: &CharsubSpec, cap: usize) -> SymbolicGraph {
    let full = gdelta(&s.delta, cap);
    let alpha = full.alphabet.clone();
    let c = alpha.index("c").expect("gdelta alphabet");
    let spec = s.clone();
    let keep = move |e: &Edge| -> bool {
        let (Point::One(x), Point::One(y)) = (&e.from, &e.to) else { return false };
        let h = x.head();
        if h[0] == c {
            let k = (h.iter().take_while(|&&l| l == c).count() - 1) as u64;
            let j = h[k as usize + 2] as u64;
            return spec.jb.get(&k).contains(j);
        }
        let k = h[0] as u64;
        if y.letter(0) == c {
            let j = y.head()[k as usize + 2] as u64;
            return spec.jd.get(&k).contains(j);
        }
        let i = h[1] as u64;
        let j = (h.len() - 3) as u64;
        spec.jc.get(&(k, i)).contains(j)
    };
    let base = full.clone();
    let mut g = full;
    g.replace_generator(move |b: Bound| base.base_edges(b).into_iter().filter(|e| keep(e)).collect());
    g.spec = format!("charsub({})", g.spec);
    g
}
