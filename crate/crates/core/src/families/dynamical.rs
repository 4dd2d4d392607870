//! Families built from a minimal system: `𝔾_f` on `𝒞⁺`, the chain `𝔾_p`, the
//! graph of the odometer and its restrictions to orbit pieces.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::dynamics::{check_rotation, odometer_succ, sturmian_code, QuadraticReal, Radix, Schedule};
use crate::words::{Alphabet, Letter, Point, UltWord};

use super::{word_then, Bound, Edge, FamilyError, SymbolicGraph};

/// The system whose orbit of a base point feeds the blocks `s_l(i)`.
#[derive(Clone, Debug)]
pub enum System {
    Odometer(Radix),
    /// Coding of the rotation by `r`, read from the base point `x = 0`.
    Sturmian(QuadraticReal),
}

/// Block lengths and offsets.
#[derive(Clone, Debug)]
pub enum BlockSchedule {
    /// `L_l = 0`, `λ_l = 2n_l + 2` with `n_0 = 0`, `n_{l+1} = (∏_{1≤j≤l+1} d_j − 1)/2`.
    Default,
    /// `n_l = l`, `λ_l = 2l + 2`, `L_{2m} = ζ(m)` and `L_{2m+1} = ζ(m) − 4m − 3`.
    Zeta(Schedule),
}

/// `o^i(0^∞)`, read off the mixed-radix digits of `i`.
pub fn odometer_point(d: &Radix, i: u64) -> UltWord {
    UltWord::of(&mixed_digits(d, i, None), &[0])
}

fn mixed_digits(d: &Radix, mut i: u64, len: Option<usize>) -> Vec<Letter> {
    let mut out = Vec::new();
    let mut j = 0;
    while len.map_or(i > 0, |n| j < n) {
        let dj = d.digit(j);
        out.push((i % dj) as Letter);
        i /= dj;
        j += 1;
    }
    out
}

/// `o^m(0^∞)|len` for any integer `m`; `o^{-k}(0^∞)` is the digitwise complement
/// of `o^{k-1}(0^∞)`.
fn orbit_prefix(d: &Radix, m: i64, len: usize) -> Vec<Letter> {
    if m >= 0 {
        return mixed_digits(d, m as u64, Some(len));
    }
    let mut w = mixed_digits(d, (-(m + 1)) as u64, Some(len));
    for (j, l) in w.iter_mut().enumerate() {
        *l = (d.digit(j) - 1) as Letter - *l;
    }
    w
}

type CodeCache = Arc<Mutex<HashMap<i64, Letter>>>;

#[derive(Clone)]
struct Plan {
    system: System,
    schedule: BlockSchedule,
    code: CodeCache,
}

impl Plan {
    fn lambda(&self, l: usize) -> u64 {
        match (&self.schedule, &self.system) {
            (BlockSchedule::Default, System::Odometer(d)) => d.product(l + 1).expect("desk-scale period") / 2 + 1,
            _ => 2 * l as u64 + 2,
        }
    }

    fn offset(&self, l: usize) -> i64 {
        match &self.schedule {
            BlockSchedule::Default => 0,
            BlockSchedule::Zeta(z) => {
                let m = l / 2;
                if l.is_multiple_of(2) {
                    z.get(m)
                } else {
                    z.get(m) - (2 * l as i64 + 1)
                }
            }
        }
    }

    /// `s_l(i) = f^{L_l + i}(x₀)|(l+1)`.
    fn s(&self, l: usize, i: u64) -> Vec<Letter> {
        let m = self.offset(l) + i as i64;
        match &self.system {
            System::Odometer(d) => orbit_prefix(d, m, l + 1),
            System::Sturmian(r) => {
                let mut cache = self.code.lock().expect("code cache");
                (m..=m + l as i64)
                    .map(|t| {
                        *cache.entry(t).or_insert_with(|| {
                            sturmian_code(r, &QuadraticReal::integer(0), t, t).expect("checked rotation")[0]
                        })
                    })
                    .collect()
            }
        }
    }

    /// Orbit indices after which a block repeats its level-`n` pattern.
    fn index_limit(&self, n: usize) -> u64 {
        match &self.system {
            System::Odometer(d) => d.product(n).expect("desk-scale period") + n as u64 + 2,
            System::Sturmian(_) => u64::MAX / 4,
        }
    }

    /// Block depth after which offsets repeat modulo the level-`n` pattern.
    fn depth_limit(&self, n: usize) -> usize {
        match &self.schedule {
            BlockSchedule::Default => n + 2,
            BlockSchedule::Zeta(z) => {
                let period = match &self.system {
                    System::Odometer(d) => d.product(n).expect("desk-scale period") as usize * z.cycle().len(),
                    System::Sturmian(_) => 4 * (n + 2) * (n + 2),
                };
                n + 2 + 2 * (z.head().len() + period)
            }
        }
    }

    /// Clause-2 indices `i ≤ λ − 2`, truncated at `limit` but keeping the last.
    fn indices(&self, l: usize, limit: u64) -> Vec<u64> {
        let lam = self.lambda(l);
        let mut v: Vec<u64> = (0..(lam - 1).min(limit)).collect();
        if lam >= 2 && v.last() != Some(&(lam - 2)) {
            v.push(lam - 2);
        }
        v
    }
}

fn system_alphabet(system: &System, extra: &[&str]) -> (Alphabet, Letter) {
    let digits = match system {
        System::Odometer(d) => d.max_digit() as usize,
        System::Sturmian(_) => 2,
    };
    (Alphabet::numerals_with(digits, extra), digits as Letter)
}

/// `𝔾_f = s(𝕆_f)` on `𝒞⁺` with blocks `s_l(i)` taken from the system.
pub fn graph_from_system(system: System, schedule: BlockSchedule) -> Result<SymbolicGraph, FamilyError> {
    let spec = match (&system, &schedule) {
        (System::Odometer(d), BlockSchedule::Default) => {
            if !d.is_class_d() {
                return Err(FamilyError::NotClassD(d.to_string()));
            }
            format!("go-plus:d={d}")
        }
        (System::Odometer(d), BlockSchedule::Zeta(z)) => format!("go-plus:d={d},zeta={z}"),
        (System::Sturmian(r), BlockSchedule::Zeta(z)) => {
            check_rotation(r)?;
            format!("go-plus:sturmian={r},zeta={z}")
        }
        (System::Sturmian(_), BlockSchedule::Default) => {
            return Err(FamilyError::MissingParam { family: "go-plus".into(), name: "zeta".into() })
        }
    };
    let (alpha, base) = system_alphabet(&system, &["c", "a", "abar"]);
    let (c, a, abar) = (base, base + 1, base + 2);
    let plan = Plan { system, schedule, code: CodeCache::default() };
    let sat_plan = plan.clone();
    let gen = move |b: Bound| {
        let mut out = Vec::new();
        for l in 0..=b.depth {
            let lam = plan.lambda(l);
            out.push(Edge::new(
                word_then(&[], &[(c, l + 1), (a, 1)], &[abar]),
                word_then(&plan.s(l, 0), &[(abar, 1)], &[a]),
            ));
            for i in plan.indices(l, b.index) {
                let i_us = i as usize;
                out.push(Edge::new(
                    word_then(&plan.s(l, i), &[(a, i_us + 1)], &[abar]),
                    word_then(&plan.s(l, i + 1), &[(abar, i_us + 2)], &[a]),
                ));
            }
            out.push(Edge::new(
                word_then(&plan.s(l, lam - 1), &[(a, lam as usize)], &[abar]),
                word_then(&[], &[(c, l + 1), (abar, 1)], &[a]),
            ));
        }
        out
    };
    Ok(SymbolicGraph::build(
        spec,
        alpha,
        false,
        true,
        "C+ = closure of the vertex set in prod_j (d_j u {c,a,abar})",
        gen,
        move |n| Bound { depth: sat_plan.depth_limit(n), index: sat_plan.index_limit(n) },
    )
    .with_matching())
}

/// `𝔾_o` for `d` with `d₀ = 2` and later digits odd.
pub fn go_plus(d: &Radix) -> Result<SymbolicGraph, FamilyError> {
    graph_from_system(System::Odometer(d.clone()), BlockSchedule::Default)
}

/// `𝔾_p = s(⋃_{l≥p} ℍ_l)` over `∏_j (d_j ∪ {c, a, ā, d})`.
pub fn gp_chain(d: &Radix, p: usize) -> Result<SymbolicGraph, FamilyError> {
    if !d.is_class_d() {
        return Err(FamilyError::NotClassD(d.to_string()));
    }
    let system = System::Odometer(d.clone());
    let (alpha, base) = system_alphabet(&system, &["c", "a", "abar", "d"]);
    let (c, a, abar, dl) = (base, base + 1, base + 2, base + 3);
    let plan = Plan { system, schedule: BlockSchedule::Default, code: CodeCache::default() };
    let sat_plan = plan.clone();
    let gen = move |b: Bound| {
        let mut out = Vec::new();
        for l in p..=b.depth {
            let lam = plan.lambda(l);
            let idx = plan.indices(l, b.index);
            for j in 0..=b.depth {
                out.push(Edge::new(
                    word_then(&[], &[(c, l + 1), (dl, j + 1), (a, 1)], &[abar]),
                    word_then(&plan.s(l, 0), &[(dl, j + 1), (abar, 1)], &[a]),
                ));
                for &i in &idx {
                    let i_us = i as usize;
                    out.push(Edge::new(
                        word_then(&plan.s(l, i), &[(dl, j + 1), (a, i_us + 1)], &[abar]),
                        word_then(&plan.s(l, i + 1), &[(dl, j + 1), (abar, i_us + 2)], &[a]),
                    ));
                }
                out.push(Edge::new(
                    word_then(&plan.s(l, lam - 1), &[(dl, j + 1), (a, lam as usize)], &[abar]),
                    word_then(&[], &[(c, l + 1), (dl, j + 1), (abar, 1)], &[a]),
                ));
            }
        }
        out
    };
    Ok(SymbolicGraph::build(
        format!("gp:d={d},p={p}"),
        alpha,
        false,
        true,
        "closure of the vertex set of G_0 in prod_j (d_j u {c,a,abar,d})",
        gen,
        move |n| Bound { depth: n.max(p) + 2, index: sat_plan.index_limit(n) },
    )
    .with_matching())
}

/// `G_o = s(Graph(o))` on `∏_j d_j`.
pub fn go_graph(d: &Radix) -> Result<SymbolicGraph, FamilyError> {
    d.product(1)?;
    let dd = d.clone();
    let gen = move |b: Bound| {
        let mut out = Vec::new();
        let mut x = dd.top();
        let mut y = UltWord::constant(0);
        out.push(Edge::new(Point::One(x), Point::One(y.clone())));
        for _ in 0..b.index {
            x = y;
            y = odometer_succ(&dd, &x).expect("valid orbit point");
            out.push(Edge::new(Point::One(x), Point::One(y.clone())));
        }
        out
    };
    let sd = d.clone();
    Ok(SymbolicGraph::build(
        format!("graph-o:d={d}"),
        Alphabet::numerals(d.max_digit() as usize),
        false,
        true,
        "C = prod_j d_j",
        gen,
        move |n| Bound { depth: n + 2, index: sd.product(n).unwrap_or(u64::MAX / 4) + 2 },
    ))
}

/// Eventually periodic subsets of ω: a finite set, arithmetic progressions and
/// the sets `S_A = {0} ∪ {3^{l+2} + i : l ∈ A, i < 3^l}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrbitSet {
    pub finite: BTreeSet<u64>,
    /// `a + b·t` for `t ∈ ω`.
    pub progressions: Vec<(u64, u64)>,
    pub sa: Option<SaIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaIndex {
    Finite(BTreeSet<u64>),
    /// `A = ω`.
    All,
}

impl OrbitSet {
    pub fn finite(v: impl IntoIterator<Item = u64>) -> Self {
        OrbitSet { finite: v.into_iter().collect(), ..Default::default() }
    }

    pub fn sa(a: impl IntoIterator<Item = u64>) -> Self {
        OrbitSet { sa: Some(SaIndex::Finite(a.into_iter().collect())), ..Default::default() }
    }

    pub fn sa_all() -> Self {
        OrbitSet { sa: Some(SaIndex::All), ..Default::default() }
    }

    /// `sa{0,2}`, `sa{inf}`, `set{1,4}`, `ap{a,b}`, joined by `+`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut out = OrbitSet::default();
        for part in s.split('+').map(str::trim) {
            let (kind, body) = part
                .split_once('{')
                .and_then(|(k, rest)| rest.strip_suffix('}').map(|b| (k.trim(), b)))
                .ok_or_else(|| format!("expected kind{{...}} in `{part}`"))?;
            let nums = |b: &str| -> Result<Vec<u64>, String> {
                b.split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<u64>().map_err(|_| format!("bad integer `{t}`")))
                    .collect()
            };
            match kind {
                "sa" if body.trim() == "inf" => out.sa = Some(SaIndex::All),
                "sa" => {
                    let a = nums(body)?;
                    if a.iter().any(|&l| l > 8) {
                        return Err("sa indices above 8 exceed desk scale".into());
                    }
                    out.sa = Some(SaIndex::Finite(a.into_iter().collect()))
                }
                "set" => out.finite.extend(nums(body)?),
                "ap" => match nums(body)?.as_slice() {
                    [a, b] => out.progressions.push((*a, *b)),
                    _ => return Err("ap{a,b} takes two integers".into()),
                },
                _ => return Err(format!("unknown set kind `{kind}`")),
            }
        }
        Ok(out)
    }

    pub fn contains(&self, i: u64) -> bool {
        if self.finite.contains(&i) {
            return true;
        }
        if self.progressions.iter().any(|&(a, b)| i >= a && (b == 0 && i == a || b > 0 && (i - a).is_multiple_of(b))) {
            return true;
        }
        match &self.sa {
            None => false,
            Some(_) if i == 0 => true,
            Some(sa) => {
                let mut l = 0u32;
                loop {
                    let start = 3u64.pow(l + 2);
                    if start > i {
                        return false;
                    }
                    let in_block = i < start + 3u64.pow(l);
                    let in_a = match sa {
                        SaIndex::All => true,
                        SaIndex::Finite(a) => a.contains(&(l as u64)),
                    };
                    if in_block && in_a {
                        return true;
                    }
                    l += 1;
                }
            }
        }
    }

    /// Members below the bound: every finite part, `t < index` on progressions,
    /// `l ≤ depth` for `sa{inf}`.
    pub fn enumerate(&self, b: Bound) -> BTreeSet<u64> {
        let mut out = self.finite.clone();
        for &(a, step) in &self.progressions {
            let count = if step == 0 { 1 } else { b.index };
            out.extend((0..count).map(|t| a + step * t));
        }
        if let Some(sa) = &self.sa {
            out.insert(0);
            let ls: Vec<u64> = match sa {
                SaIndex::All => (0..=b.depth as u64).collect(),
                SaIndex::Finite(a) => a.iter().copied().collect(),
            };
            for l in ls {
                let start = 3u64.pow(l as u32 + 2);
                out.extend((0..3u64.pow(l as u32)).map(|i| start + i));
            }
        }
        out
    }
}

impl fmt::Display for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let join = |v: &mut dyn Iterator<Item = u64>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if !self.finite.is_empty() {
            parts.push(format!("set{{{}}}", join(&mut self.finite.iter().copied())));
        }
        for (a, b) in &self.progressions {
            parts.push(format!("ap{{{a},{b}}}"));
        }
        match &self.sa {
            Some(SaIndex::All) => parts.push("sa{inf}".into()),
            Some(SaIndex::Finite(a)) => parts.push(format!("sa{{{}}}", join(&mut a.iter().copied()))),
            None => {}
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// `G_{o|D_S}` with `D_S = {o^i(0^∞) : i ∈ S}`: edges `(o^i(0^∞), o^{i+1}(0^∞))`, `i ∈ S`.
pub fn restricted_orbit_graph(d: &Radix, s: &OrbitSet) -> Result<SymbolicGraph, FamilyError> {
    let dd = d.clone();
    let set = s.clone();
    let gen = move |b: Bound| {
        set.enumerate(b)
            .into_iter()
            .map(|i| Edge::new(Point::One(odometer_point(&dd, i)), Point::One(odometer_point(&dd, i + 1))))
            .collect()
    };
    let sd = d.clone();
    Ok(SymbolicGraph::build(
        format!("orbit:d={d},S={s}"),
        Alphabet::numerals(d.max_digit() as usize),
        false,
        true,
        "C = prod_j d_j (edges on the orbit piece D_S)",
        gen,
        move |n| Bound { depth: n + 2, index: sd.product(n).unwrap_or(u64::MAX / 4) + 2 },
    ))
}
