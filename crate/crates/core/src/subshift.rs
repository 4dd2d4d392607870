//! Forbidden-factor subshifts, factor languages, power-freeness and
//! Cantor-Bendixson ranks of countable subshifts.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::dynamics::{fibonacci_len, sturmian_code, DynamicsError, QuadraticReal};
use crate::families::{rank_alpha, rank_beta};
use crate::words::{Alphabet, BiWord, Letter, Point, WordError};

#[derive(Debug, Error)]
pub enum SubshiftError {
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("`{0}` is not in the language")]
    NotInLanguage(String),
    #[error("bad forest file, line {line}: {reason}")]
    Forest { line: usize, reason: String },
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finite set of forbidden words over `{0, …, k−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenSet {
    pub letters: usize,
    pub words: BTreeSet<Vec<Letter>>,
}

impl ForbiddenSet {
    pub fn new(letters: usize, words: impl IntoIterator<Item = Vec<Letter>>) -> Self {
        ForbiddenSet { letters, words: words.into_iter().filter(|w| !w.is_empty()).collect() }
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_forbidden_factor_free(&self, w: &[Letter]) -> bool {
        let lens: BTreeSet<usize> = self.words.iter().map(Vec::len).collect();
        lens.into_iter().all(|m| m > w.len() || w.windows(m).all(|f| !self.words.contains(f)))
    }
}

const FIB_WORD_BUDGET: u128 = 1 << 16;

/// `F_p = {0², 1³} ∪ {w⁸ : 0 < 8|w| < f_{9p+5}}`.
pub fn expand_fib_forbidden(p: usize) -> Result<ForbiddenSet, SubshiftError> {
    let f = fibonacci_len(9 * p + 5);
    let m = ((f - 1) / 8) as usize;
    let count: u128 = (1..=m).map(|l| 1u128.checked_shl(l as u32).unwrap_or(u128::MAX)).fold(0, u128::saturating_add);
    if count > FIB_WORD_BUDGET {
        return Err(SubshiftError::Budget(format!("F_{p} has {count} power words (f = {f})")));
    }
    let mut words = vec![vec![0, 0], vec![1, 1, 1]];
    for l in 1..=m {
        for bits in 0..(1u64 << l) {
            let w: Vec<Letter> = (0..l).rev().map(|b| ((bits >> b) & 1) as Letter).collect();
            words.push(w.repeat(8));
        }
    }
    Ok(ForbiddenSet::new(2, words))
}

/// Whether no factor of `b` lies in `F`.
pub fn member(b: &BiWord, f: &ForbiddenSet) -> bool {
    let lens: BTreeSet<usize> = f.words.iter().map(Vec::len).collect();
    lens.into_iter().all(|m| b.factors(m).is_disjoint(&f.words))
}

/// A subshift presented by finite data.
#[derive(Clone, Debug)]
pub enum SubshiftSpec {
    Forbidden(ForbiddenSet),
    /// Orbit closure of the coding of the rotation by `r` from `x`.
    Sturmian {
        r: QuadraticReal,
        x: QuadraticReal,
    },
    /// Orbit closures of finitely many points.
    Points(Vec<Point>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Language {
    pub n: usize,
    pub words: BTreeSet<Vec<Letter>>,
    /// False when the words are only certified to lie in the language.
    pub exact: bool,
}

/// Coded window used for Sturmian languages up to length `n_max`.
pub fn sturmian_window(n_max: usize) -> usize {
    4 * (n_max + 2) * (n_max + 2)
}

fn point_factors(p: &Point, n: usize) -> (BTreeSet<Vec<Letter>>, bool) {
    match p {
        Point::Two(b) => (b.factors(n), true),
        Point::One(w) => (w.factors(n), true),
        Point::Gen(g) => {
            let lo = -(n as i64) - 2 * g.offset().abs() - 64;
            let mut out = BTreeSet::new();
            let mut i = lo;
            while let Some(w) = (0..n as i64).map(|k| g.try_letter(i + k)).collect::<Option<Vec<_>>>() {
                out.insert(w);
                i += 1;
            }
            (out, false)
        }
    }
}

const SFT_VERTEX_BUDGET: usize = 1 << 20;

/// Words of length `n` on bi-infinite paths of the de Bruijn graph of `Σ_F`.
fn sft_language(f: &ForbiddenSet, n: usize) -> Result<BTreeSet<Vec<Letter>>, SubshiftError> {
    let k = f.letters;
    let m = f.max_len().max(1);
    let state_len = m - 1;
    let states = k.checked_pow(state_len as u32).filter(|&s| s <= SFT_VERTEX_BUDGET);
    let states = states.ok_or_else(|| SubshiftError::Budget(format!("{k}^{state_len} de Bruijn states")))?;
    let decode = |mut s: usize, len: usize| -> Vec<Letter> {
        let mut w = vec![0; len];
        for t in (0..len).rev() {
            w[t] = (s % k) as Letter;
            s /= k;
        }
        w
    };
    let mut alive: Vec<bool> = (0..states).map(|s| f.is_forbidden_factor_free(&decode(s, state_len))).collect();
    let succ = |s: usize, a: usize| (s * k + a) % states.max(1);
    let edge_ok = |s: usize, a: usize| {
        let mut w = decode(s, state_len);
        w.push(a as Letter);
        f.is_forbidden_factor_free(&w)
    };
    let out: Vec<Vec<usize>> =
        (0..states).map(|s| (0..k).filter(|&a| edge_ok(s, a)).map(|a| succ(s, a)).collect()).collect();
    loop {
        let mut indeg = vec![0usize; states];
        let mut outdeg = vec![0usize; states];
        for s in (0..states).filter(|&s| alive[s]) {
            for &t in out[s].iter().filter(|&&t| alive[t]) {
                outdeg[s] += 1;
                indeg[t] += 1;
            }
        }
        let mut changed = false;
        for s in 0..states {
            if alive[s] && (indeg[s] == 0 || outdeg[s] == 0) {
                alive[s] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // Words of length n read from live states: the state's letters, then steps.
    let mut words = BTreeSet::new();
    let mut frontier: BTreeMap<usize, BTreeSet<Vec<Letter>>> = BTreeMap::new();
    for s in (0..states).filter(|&s| alive[s]) {
        frontier.entry(s).or_default().insert(decode(s, state_len));
    }
    let mut len = state_len;
    while len < n {
        let mut next: BTreeMap<usize, BTreeSet<Vec<Letter>>> = BTreeMap::new();
        for (s, ws) in &frontier {
            for (a, &t) in (0..k).filter(|&a| edge_ok(*s, a)).zip(out[*s].iter()) {
                if !alive[t] {
                    continue;
                }
                for w in ws {
                    let mut w2 = w.clone();
                    w2.push(a as Letter);
                    next.entry(t).or_default().insert(w2);
                }
            }
        }
        frontier = next;
        len += 1;
    }
    for ws in frontier.values() {
        for w in ws {
            words.insert(w[w.len() - n..].to_vec());
        }
    }
    Ok(words)
}

/// `ℒ_n(Σ)`. Sturmian languages are the factors of a coded window of length
/// [`sturmian_window`]`(n)`, a certified subset.
pub fn language(s: &SubshiftSpec, n: usize) -> Result<Language, SubshiftError> {
    language_with_window(s, n, sturmian_window(n))
}

pub fn language_with_window(s: &SubshiftSpec, n: usize, window: usize) -> Result<Language, SubshiftError> {
    match s {
        SubshiftSpec::Forbidden(f) => Ok(Language { n, words: sft_language(f, n)?, exact: true }),
        SubshiftSpec::Sturmian { r, x } => {
            let w = sturmian_code(r, x, 0, window.max(n) as i64 - 1)?;
            Ok(Language { n, words: w.windows(n).map(<[Letter]>::to_vec).collect(), exact: false })
        }
        SubshiftSpec::Points(ps) => {
            let mut words = BTreeSet::new();
            let mut exact = true;
            for p in ps {
                let (f, e) = point_factors(p, n);
                words.extend(f);
                exact &= e;
            }
            Ok(Language { n, words, exact })
        }
    }
}

/// `[|ℒ_1|, …, |ℒ_{n_max}|]`; Sturmian windows have length `4(n_max+2)²`.
pub fn complexity(s: &SubshiftSpec, n_max: usize) -> Result<Vec<usize>, SubshiftError> {
    let window = sturmian_window(n_max);
    (1..=n_max).map(|n| Ok(language_with_window(s, n, window)?.words.len())).collect()
}

/// A factor `v^k` of a word, at the least position and then the least period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerViolation {
    pub root: Vec<Letter>,
    pub position: usize,
}

pub fn power_free_check(w: &[Letter], k: usize) -> Result<(), PowerViolation> {
    assert!(k >= 2, "power_free_check needs k >= 2");
    let n = w.len();
    for i in 0..n {
        for p in 1..=(n - i) / k {
            if (p..k * p).all(|t| w[i + t] == w[i + t - p]) {
                return Err(PowerViolation { root: w[i..i + p].to_vec(), position: i });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recurrence {
    /// Every word of `ℒ_l` contains `w`.
    Bound(usize),
    /// A word of `ℒ_{l_max}` avoiding `w`.
    Escapes(Vec<Letter>),
}

pub fn uniform_recurrence_bound(s: &SubshiftSpec, w: &[Letter], l_max: usize) -> Result<Recurrence, SubshiftError> {
    let window = sturmian_window(l_max.max(w.len()));
    if !language_with_window(s, w.len(), window)?.words.contains(w) {
        return Err(SubshiftError::NotInLanguage(format!("{w:?}")));
    }
    let contains = |v: &[Letter]| v.windows(w.len()).any(|f| f == w);
    let mut last = Vec::new();
    for l in w.len()..=l_max {
        let lang = language_with_window(s, l, window)?;
        match lang.words.iter().find(|v| !contains(v)) {
            None => return Ok(Recurrence::Bound(l)),
            Some(v) => last = v.clone(),
        }
    }
    Ok(Recurrence::Escapes(last))
}

/// The points of one forest node.
#[derive(Clone, Debug)]
pub enum OrbitFamily {
    /// `Orb_σ(x)`.
    Orbit(Point),
    /// An explicit finite set.
    Points(Vec<Point>),
}

impl OrbitFamily {
    fn points(&self) -> Vec<&Point> {
        match self {
            OrbitFamily::Orbit(p) => vec![p],
            OrbitFamily::Points(v) => v.iter().collect(),
        }
    }

    fn is_infinite(&self) -> bool {
        match self {
            OrbitFamily::Orbit(Point::Two(b)) => !b.is_purely_periodic(),
            OrbitFamily::Orbit(Point::Gen(_)) => true,
            _ => false,
        }
    }

    fn factors(&self, n: usize) -> BTreeSet<Vec<Letter>> {
        self.points().into_iter().flat_map(|p| point_factors(p, n).0).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ForestNode {
    pub id: String,
    pub family: OrbitFamily,
    pub parent: Option<String>,
}

/// Orbit families with "children converge to parent" links.
#[derive(Clone, Debug, Default)]
pub struct LimitForest {
    pub nodes: Vec<ForestNode>,
}

fn centered(p: &Point, t: i64, r: usize) -> Option<Vec<Letter>> {
    let r = r as i64;
    (t - r..=t + r)
        .map(|i| match p {
            Point::Two(b) => Some(b.letter(i)),
            Point::Gen(g) => g.try_letter(i),
            Point::One(w) => (i >= 0).then(|| w.letter(i as usize)),
        })
        .collect()
}

impl LimitForest {
    pub fn node(&mut self, id: &str, family: OrbitFamily, parent: Option<&str>) -> &mut Self {
        self.nodes.push(ForestNode { id: id.into(), family, parent: parent.map(String::from) });
        self
    }

    fn index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    fn depth(&self, i: usize) -> usize {
        let mut d = 1;
        let mut cur = i;
        while let Some(p) = self.nodes[cur].parent.as_deref().and_then(|p| self.index(p)) {
            d += 1;
            cur = p;
            if d > self.nodes.len() {
                break;
            }
        }
        d
    }

    /// Length of the longest leaf-to-root chain.
    pub fn height(&self) -> usize {
        (0..self.nodes.len()).map(|i| self.depth(i)).max().unwrap_or(0)
    }

    /// Removes the leaves (the isolated points).
    pub fn derivative(&self) -> LimitForest {
        let parents: BTreeSet<&str> = self.nodes.iter().filter_map(|n| n.parent.as_deref()).collect();
        LimitForest { nodes: self.nodes.iter().filter(|n| parents.contains(n.id.as_str())).cloned().collect() }
    }

    fn is_descendant(&self, i: usize, of: usize) -> bool {
        let mut cur = i;
        for _ in 0..=self.nodes.len() {
            if cur == of {
                return true;
            }
            match self.nodes[cur].parent.as_deref().and_then(|p| self.index(p)) {
                Some(p) => cur = p,
                None => return false,
            }
        }
        false
    }

    /// `node <id> orbit=<biword|p1;p2;…|alphaM|betaM> parent=<id|root>`.
    pub fn parse(text: &str) -> Result<LimitForest, SubshiftError> {
        let alpha = Alphabet::numerals(2);
        let mut f = LimitForest::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| SubshiftError::Forest { line: no + 1, reason };
            let rest = line.strip_prefix("node ").ok_or_else(|| err("expected `node`".into()))?;
            let (id, rest) = rest.trim().split_once(' ').ok_or_else(|| err("missing fields".into()))?;
            let (orbit, parent) = rest
                .trim()
                .strip_prefix("orbit=")
                .and_then(|r| r.rsplit_once(" parent="))
                .ok_or_else(|| err("expected `orbit=… parent=…`".into()))?;
            let family = parse_orbit(orbit.trim(), &alpha).map_err(|e| err(e.to_string()))?;
            let parent = match parent.trim() {
                "root" => None,
                p => Some(p),
            };
            f.node(id, family, parent);
        }
        for n in &f.nodes {
            if let Some(p) = &n.parent {
                if f.index(p).is_none() {
                    return Err(SubshiftError::Forest { line: 0, reason: format!("unknown parent `{p}`") });
                }
            }
        }
        if f.nodes.iter().enumerate().any(|(i, _)| f.depth(i) > f.nodes.len()) {
            return Err(SubshiftError::Forest { line: 0, reason: "parent links form a cycle".into() });
        }
        Ok(f)
    }
}

fn parse_orbit(s: &str, alpha: &Alphabet) -> Result<OrbitFamily, SubshiftError> {
    let rank_point = |kind: &str, m: &str| -> Option<Point> {
        let m: usize = m.parse().ok().filter(|&m| m <= 4)?;
        Some(if kind == "alpha" { rank_alpha(m, 4096) } else { rank_beta(m, 4096) })
    };
    if let Some(m) = s.strip_prefix("alpha") {
        return rank_point("alpha", m).map(OrbitFamily::Orbit).ok_or_else(|| SubshiftError::Budget(s.into()));
    }
    if let Some(m) = s.strip_prefix("beta") {
        return rank_point("beta", m).map(OrbitFamily::Orbit).ok_or_else(|| SubshiftError::Budget(s.into()));
    }
    let parts: Vec<&str> = s.split(';').map(str::trim).filter(|p| !p.is_empty()).collect();
    let points = parts.iter().map(|p| BiWord::parse(p, alpha).map(Point::Two)).collect::<Result<Vec<_>, _>>()?;
    Ok(match points.len() {
        1 => OrbitFamily::Orbit(points.into_iter().next().expect("one point")),
        _ => OrbitFamily::Points(points),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkCheck {
    pub child: String,
    pub parent: String,
    pub passed: bool,
    /// Shift of the child point matching a parent window of radius `D`.
    pub shift: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolationCheck {
    pub node: String,
    pub passed: bool,
    /// Largest separating radius needed over the checked shifts.
    pub radius: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CbReport {
    pub rank: usize,
    pub resolution: usize,
    pub links: Vec<LinkCheck>,
    pub isolation: Vec<IsolationCheck>,
}

impl CbReport {
    pub fn verified(&self) -> bool {
        self.links.iter().all(|l| l.passed) && self.isolation.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        if self.verified() {
            format!("rank {} (verified at resolution {})", self.rank, self.resolution)
        } else {
            let bad: Vec<String> = self
                .links
                .iter()
                .filter(|l| !l.passed)
                .map(|l| format!("{} -> {}", l.child, l.parent))
                .chain(self.isolation.iter().filter(|c| !c.passed).map(|c| format!("isolation of {}", c.node)))
                .collect();
            format!("rank {} declared, unverified at {}: {}", self.rank, self.resolution, bad.join(", "))
        }
    }
}

fn shift_range(p: &Point, r: usize) -> i64 {
    match p {
        Point::Gen(g) => g.materialized() as i64 - r as i64 - 1,
        Point::Two(b) => {
            (b.start().abs() + b.core().len() as i64 + (b.left_cycle().len() + b.right_cycle().len()) as i64) * 2
                + r as i64
        }
        Point::One(_) => 0,
    }
}

/// Forest height, with every convergence link and every node's isolation from its
/// non-descendants checked on windows of radius at most `D`.
///
/// A link passes when some shift `|t| > D` of the child agrees on radius `D` with a
/// window of the parent that occurs in no other non-descendant of the parent.
pub fn cb_rank(f: &LimitForest, d: usize) -> CbReport {
    let mut cache: BTreeMap<(usize, usize), BTreeSet<Vec<Letter>>> = BTreeMap::new();
    let mut factors = |i: usize, len: usize| -> BTreeSet<Vec<Letter>> {
        cache.entry((i, len)).or_insert_with(|| f.nodes[i].family.factors(len)).clone()
    };
    let others =
        |i: usize| -> Vec<usize> { (0..f.nodes.len()).filter(|&j| j != i && !f.is_descendant(j, i)).collect() };
    let mut links = Vec::new();
    for node in &f.nodes {
        let Some(pid) = &node.parent else { continue };
        let pi = f.index(pid).expect("checked parent");
        let mut targets = factors(pi, 2 * d + 1);
        for j in others(pi) {
            let shared = factors(j, 2 * d + 1);
            targets.retain(|w| !shared.contains(w));
        }
        let mut shift = None;
        if node.family.is_infinite() {
            'outer: for p in node.family.points() {
                let hi = shift_range(p, d);
                for t in d as i64 + 1..=hi {
                    for s in [t, -t] {
                        if centered(p, s, d).is_some_and(|w| targets.contains(&w)) {
                            shift = Some(s);
                            break 'outer;
                        }
                    }
                }
            }
        }
        links.push(LinkCheck { child: node.id.clone(), parent: pid.clone(), passed: shift.is_some(), shift });
    }
    let mut isolation = Vec::new();
    for (i, node) in f.nodes.iter().enumerate() {
        let rest = others(i);
        let mut worst = Some(0usize);
        let probe = (d / 4) as i64;
        for p in node.family.points() {
            let shifts = if node.family.is_infinite() { -probe..=probe } else { 0..=0 };
            for t in shifts {
                let found = (0..=d).find(|&r| {
                    let Some(w) = centered(p, t, r) else { return false };
                    rest.iter().all(|&j| !factors(j, 2 * r + 1).contains(&w))
                });
                worst = match (worst, found) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    _ => None,
                };
            }
        }
        isolation.push(IsolationCheck { node: node.id.clone(), passed: worst.is_some(), radius: worst });
    }
    CbReport { rank: f.height(), resolution: d, links, isolation }
}

/// `K₀`: `Orb(β₀)` converging to `Orb(α₀)`.
pub fn k0_forest() -> LimitForest {
    let mut f = LimitForest::default();
    f.node("alpha0", OrbitFamily::Orbit(rank_alpha(0, 0)), None).node(
        "beta0",
        OrbitFamily::Orbit(rank_beta(0, 0)),
        Some("alpha0"),
    );
    f
}

/// The rank subshift: `α₀ ← α₁ ← … ← α_n ← β_n`, generated points materialized to `len`.
pub fn rank_forest(n: usize, len: usize) -> LimitForest {
    let mut f = LimitForest::default();
    f.node("alpha0", OrbitFamily::Orbit(rank_alpha(0, len)), None);
    for m in 1..=n {
        let parent = format!("alpha{}", m - 1);
        f.node(&format!("alpha{m}"), OrbitFamily::Orbit(rank_alpha(m, len)), Some(&parent));
    }
    f.node(&format!("beta{n}"), OrbitFamily::Orbit(rank_beta(n, len)), Some(&format!("alpha{n}")));
    f
}
