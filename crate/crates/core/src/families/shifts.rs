//! Graphs of homeomorphisms of countable compact spaces: `K₀`, the rank
//! subshifts, finite orbits and `K_A`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use crate::words::{Alphabet, BiWord, GenPoint, Letter, Point, UltWord};

use super::finite::FiniteGraph;
use super::{runs, Bound, Edge, FamilyError, SymbolicGraph};

fn shift(p: &Point, k: i64) -> Point {
    match p {
        Point::Two(b) => Point::Two(b.shift(k)),
        Point::Gen(g) => Point::Gen(g.shifted(k)),
        Point::One(_) => unreachable!("shift orbits are two-sided"),
    }
}

fn orbit_edges(x: &Point, lo: i64, hi: i64) -> Vec<Edge> {
    (lo..=hi).map(|k| Edge::new(shift(x, k), shift(x, k + 1))).collect()
}

/// `Orb_σ(w^ℤ)`: a cycle on `|w|` points (for primitive `w`).
pub fn periodic_orbit_graph(w: &[Letter]) -> Result<SymbolicGraph, FamilyError> {
    let x = Point::Two(BiWord::periodic(w));
    let p = match &x {
        Point::Two(b) => b.right_cycle().len() as i64,
        _ => unreachable!(),
    };
    let size = w.iter().copied().max().unwrap_or(0) as usize + 1;
    let alpha = Alphabet::numerals(size.max(2));
    let spec = format!("periodic:w={}", alpha.format_word(w));
    Ok(SymbolicGraph::build(
        spec,
        alpha,
        true,
        true,
        "finite shift orbit",
        move |_b| orbit_edges(&x, 0, p - 1),
        |n| Bound::depth(n + 2),
    ))
}

/// `K₀ = Orb_σ((01)^∞·(01)^∞) ∪ Orb_σ((01)^∞·1(01)^∞)` with `h₀ = σ`.
pub fn k0_graph() -> SymbolicGraph {
    let alpha0 = Point::Two(BiWord::periodic(&[0, 1]));
    let beta0 = Point::Two(BiWord::of(&[0, 1], &[1], &[0, 1]));
    let gen = move |b: Bound| {
        let mut out = orbit_edges(&alpha0, 0, 1);
        let k = b.depth as i64;
        out.extend(orbit_edges(&beta0, -k, k));
        out
    };
    SymbolicGraph::build("k0", Alphabet::numerals(2), true, true, "K0 subset of 2^Z", gen, |n| Bound::depth(n + 2))
}

type WordCache = Mutex<BTreeMap<(usize, usize), Arc<Vec<Letter>>>>;

fn word_cache() -> &'static WordCache {
    static CACHE: std::sync::OnceLock<WordCache> = std::sync::OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// `w^0_j = 01`, `w^{m+1}_0 = 11`, `w^{m+1}_{j+1} = (01)^{j+1} 11 ⁀_{k≤j+1} w^m_k`.
pub fn rank_word(m: usize, j: usize) -> Arc<Vec<Letter>> {
    if let Some(w) = word_cache().lock().expect("cache").get(&(m, j)) {
        return w.clone();
    }
    let w = if m == 0 {
        vec![0, 1]
    } else if j == 0 {
        vec![1, 1]
    } else {
        let mut w: Vec<Letter> = [0, 1].repeat(j);
        w.extend([1, 1]);
        for k in 0..=j {
            w.extend(rank_word(m - 1, k).iter());
        }
        w
    };
    let w = Arc::new(w);
    word_cache().lock().expect("cache").insert((m, j), w.clone());
    w
}

fn concat_words(m: usize, lead: &[Letter], len: usize) -> Vec<Letter> {
    let mut out = lead.to_vec();
    let mut j = 0;
    while out.len() < len {
        out.extend(rank_word(m, j).iter());
        j += 1;
    }
    out
}

/// `α₀ = (01)^∞·(01)^∞`, `α_{m+1} = (01)^∞·11⁀_j w^m_j`; right side materialized to
/// at least `len` letters when not eventually periodic.
pub fn rank_alpha(m: usize, len: usize) -> Point {
    match m {
        0 => Point::Two(BiWord::periodic(&[0, 1])),
        1 => Point::Two(BiWord::of(&[0, 1], &[1, 1], &[0, 1])),
        _ => Point::Gen(GenPoint::new(vec![0, 1], concat_words(m - 1, &[1, 1], len))),
    }
}

/// `β_m = (01)^∞·1⁀_j w^m_j`.
pub fn rank_beta(m: usize, len: usize) -> Point {
    match m {
        0 => Point::Two(BiWord::of(&[0, 1], &[1], &[0, 1])),
        _ => Point::Gen(GenPoint::new(vec![0, 1], concat_words(m, &[1], len))),
    }
}

/// Shift range that reaches every factor needed at level `n`.
pub(crate) fn rank_shift_bound(rank_n: usize, n: usize) -> usize {
    2 + (0..=n + 4).map(|j| rank_word(rank_n, j).len()).sum::<usize>()
}

/// `Σ = ⋃_{m≤n} Orb(α_m) ∪ Orb(β_n)` with the graph of `σ|Σ`.
pub fn rank_subshift(n: usize) -> Result<SymbolicGraph, FamilyError> {
    if n > 4 {
        return Err(FamilyError::TooLarge(format!("rank-subshift n={n} (at most 4)")));
    }
    let gen = move |b: Bound| {
        let k = b.depth as i64;
        let len = 2 * b.depth + 64;
        let mut out = orbit_edges(&rank_alpha(0, len), 0, 1);
        for m in 1..=n {
            out.extend(orbit_edges(&rank_alpha(m, len), -k, k));
        }
        out.extend(orbit_edges(&rank_beta(n, len), -k, k));
        out
    };
    Ok(SymbolicGraph::build(
        format!("rank-subshift:n={n}"),
        Alphabet::numerals(2),
        true,
        true,
        format!("countable subshift of 2^Z with Cantor-Bendixson rank {}", n + 2),
        gen,
        move |lv| Bound::depth(rank_shift_bound(n, lv)),
    ))
}

fn binary(i: usize, len: usize) -> Vec<Letter> {
    (0..len).rev().map(|b| ((i >> b) & 1) as Letter).collect()
}

fn up(e: usize, k: usize) -> Letter {
    ((e + k) % 4) as Letter
}

/// The cycle components of `K_A`: `ε^{n+2}(ε+1)s2^∞`, `s ∈ 2^{n+1}`, `n ∈ A`.
fn ka_cycle_edges(a: &BTreeSet<usize>) -> Vec<(UltWord, UltWord)> {
    let mut out = Vec::new();
    for &n in a {
        let count = 1usize << (n + 1);
        for i in 0..count {
            let s = binary(i, n + 1);
            for e in 0..4 {
                let mut x = vec![e as Letter; n + 2];
                x.push(up(e, 1));
                x.extend(&s);
                let y = if e != 3 {
                    let mut y = vec![up(e, 1); n + 2];
                    y.push(up(e, 2));
                    y.extend(&s);
                    y
                } else {
                    let mut y = vec![0; n + 2];
                    y.push(1);
                    y.extend(binary((i + 1) % count, n + 1));
                    y
                };
                out.push((UltWord::of(&x, &[2]), UltWord::of(&y, &[2])));
            }
        }
    }
    out
}

fn ka_edges(a: &BTreeSet<usize>, depth: usize) -> Vec<(UltWord, UltWord)> {
    let one = |parts: &[(Letter, usize)], c: Letter| match runs(parts, &[c]) {
        Point::One(w) => w,
        _ => unreachable!(),
    };
    let mut out = Vec::new();
    for e in 0..4 {
        out.push((UltWord::constant(e as Letter), UltWord::constant(up(e, 1))));
    }
    out.push((UltWord::constant(4), one(&[(0, 1)], 1)));
    out.push((one(&[(3, 1), (2, 1)], 0), UltWord::constant(4)));
    for n in 0..=depth {
        for e in 0..4usize {
            let el = e as Letter;
            if e != 3 {
                out.push((one(&[(el, n + 1), (up(e, 1), 1)], 1), one(&[(up(e, 1), n + 1), (up(e, 2), 1)], 1)));
                out.push((one(&[(el, n + 1), (up(e, 3), 1)], 0), one(&[(up(e, 1), n + 1), (el, 1)], 0)));
            } else {
                out.push((one(&[(3, n + 1), (0, 1)], 1), one(&[(0, n + 2)], 1)));
                out.push((one(&[(3, n + 2), (2, 1)], 0), one(&[(0, n + 1), (3, 1)], 0)));
            }
        }
    }
    out.extend(ka_cycle_edges(a));
    out
}

fn check_a(a: &BTreeSet<usize>) -> Result<(), FamilyError> {
    if a.len() > 4 || a.iter().any(|&n| n > 4) {
        return Err(FamilyError::TooLarge("K_A needs |A| <= 4 and max A <= 4".into()));
    }
    Ok(())
}

/// `K_A ⊆ 5^ω` with the graph of `h_A`.
pub fn ka_graph(a: &BTreeSet<usize>) -> Result<SymbolicGraph, FamilyError> {
    check_a(a)?;
    let set = a.clone();
    let spec = format!("ka:A={}", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    Ok(SymbolicGraph::build(
        spec,
        Alphabet::numerals(5),
        false,
        true,
        "K_A subset of 5^omega",
        move |b: Bound| {
            ka_edges(&set, b.depth).into_iter().map(|(x, y)| Edge::new(Point::One(x), Point::One(y))).collect()
        },
        |n| Bound::depth(n + 2),
    ))
}

/// The finite components of `K_A` (the cycles indexed by `A`) as a finite graph.
pub fn ka_core(a: &BTreeSet<usize>) -> Result<FiniteGraph, FamilyError> {
    check_a(a)?;
    let alpha = Alphabet::numerals(5);
    let edges: Vec<(String, String)> =
        ka_cycle_edges(a).into_iter().map(|(x, y)| (x.display(&alpha), y.display(&alpha))).collect();
    Ok(FiniteGraph::from_labeled_edges(&edges, false))
}
