//! Families over the letters ω ∪ {c, a, ā}: the graphs 𝔾_m, 𝔾_δ and 𝕋.
//!
//! ω is truncated at a letter cap fixed when the graph is built. The generated
//! graph is then the subgraph spanned by the clauses whose letters are all at
//! most the cap.

use crate::words::{Alphabet, Letter, UltWord};

use super::{runs, word_then, Bound, Edge, SymbolicGraph};

pub const DEFAULT_CAP: usize = 12;

struct Marks {
    c: Letter,
    a: Letter,
    abar: Letter,
}

fn omega_alphabet(cap: usize) -> (Alphabet, Marks) {
    let alpha = Alphabet::numerals_with(cap + 1, &["c", "a", "abar"]);
    let base = (cap + 1) as Letter;
    (alpha, Marks { c: base, a: base + 1, abar: base + 2 })
}

fn n(v: usize) -> Letter {
    v as Letter
}

/// `𝔾_m = s(𝕆_m)` on `ω ∪ {c, a, ā}`.
pub fn gm(cap: usize) -> SymbolicGraph {
    let (alpha, m) = omega_alphabet(cap);
    let gen = move |b: Bound| {
        let mut out = Vec::new();
        for k in 0..=cap {
            for j in 0..=b.depth {
                out.push(Edge::new(
                    runs(&[(m.c, k + 1), (m.a, j + 1)], &[m.abar]),
                    runs(&[(n(k), 1), (0, j + 1)], &[m.abar]),
                ));
                for i in 0..=2 * k {
                    if i + 1 > cap {
                        break;
                    }
                    out.push(Edge::new(
                        runs(&[(n(k), 1), (n(i), j + 1)], &[m.a]),
                        runs(&[(n(k), 1), (n(i + 1), j + 1)], &[m.abar]),
                    ));
                }
                if 2 * k < cap {
                    out.push(Edge::new(
                        runs(&[(n(k), 1), (n(2 * k + 1), j + 1)], &[m.a]),
                        runs(&[(m.c, k + 1), (m.abar, j + 1)], &[m.a]),
                    ));
                }
            }
        }
        out
    };
    SymbolicGraph::build(
        "gm",
        alpha,
        false,
        false,
        format!("closure of the vertex set in (omega u {{c,a,abar}})^omega, letters capped at {cap}"),
        gen,
        |n| Bound::depth(n + 2),
    )
    .with_cap(cap)
    .with_matching()
}

/// `𝔾_δ = s(𝕆_δ)`: the blocks of `𝔾_m` kept for `δ(k) = 1`, on `ℙ_δ`.
pub fn gdelta(delta: &UltWord, cap: usize) -> SymbolicGraph {
    let (alpha, m) = omega_alphabet(cap);
    let d = delta.clone();
    let gen = move |b: Bound| {
        let mut out = Vec::new();
        for k in (0..=cap).filter(|&k| d.letter(k) == 1) {
            for j in 0..=cap {
                out.push(Edge::new(
                    runs(&[(m.c, k + 1), (0, 1), (n(j), 1)], &[m.a]),
                    runs(&[(n(k), 1), (0, j + 2)], &[m.abar]),
                ));
                if 2 * k < cap {
                    out.push(Edge::new(
                        runs(&[(n(k), 1), (n(2 * k + 1), 1), (0, j + 1)], &[m.a]),
                        runs(&[(m.c, k + 1), (1, 1), (n(j), 1)], &[m.abar]),
                    ));
                }
            }
            for j in 0..=b.depth {
                for i in 0..=2 * k {
                    if i + 1 > cap {
                        break;
                    }
                    out.push(Edge::new(
                        runs(&[(n(k), 1), (n(i), 1), (0, j + 1)], &[m.a]),
                        runs(&[(n(k), 1), (n(i + 1), 1), (0, j + 1)], &[m.abar]),
                    ));
                }
            }
        }
        out
    };
    let spec = format!("gdelta:delta={}", delta.display(&Alphabet::numerals(2)));
    SymbolicGraph::build(
        spec,
        alpha,
        false,
        false,
        format!("P_delta: projections, c^inf and the points ki0^inf; letters capped at {cap}"),
        gen,
        |n| Bound::depth(n + 2),
    )
    .with_cap(cap)
    .with_matching()
}

/// The graph `𝕋` on `ω^ω`; only blocks with `2k + 2 ≤ cap` are generated.
pub fn t_graph(cap: usize) -> SymbolicGraph {
    let gen = move |_b: Bound| t_edges((cap.max(2) - 2) / 2);
    SymbolicGraph::build(
        "t",
        Alphabet::numerals(cap + 1),
        false,
        false,
        format!("omega^omega (not compact), letters capped at {cap}"),
        gen,
        |n| Bound::depth(n + 2),
    )
    .with_cap(cap)
}

/// The generating clauses of `𝕋` for `k ≤ k_max`.
pub fn t_edges(k_max: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        let top = n(2 * k + 2);
        out.push(Edge::new(runs(&[(0, 2 * k + 1)], &[1]), runs(&[(top, 1)], &[0])));
        for i in 0..=2 * k {
            out.push(Edge::new(runs(&[(top, 1), (n(i), 1), (0, k)], &[1]), runs(&[(top, 1), (n(i + 1), 1)], &[0])));
        }
        out.push(Edge::new(word_then(&[top, n(2 * k + 1)], &[(0, k)], &[1]), runs(&[(0, 2 * k + 2)], &[1])));
    }
    out
}
