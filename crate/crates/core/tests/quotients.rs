#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use clopen::colorings::{verify_coloring, Coloring};
use clopen::families::{parse_family, SymbolicGraph};
use clopen::quotients::*;

const FAMILIES: &[&str] = &[
    "odd-cycle:p=1",
    "gm",
    "gdelta:delta=(1)^inf",
    "go-plus:d=2,(3)^inf",
    "go-plus:d=2,(3)^inf:oriented",
    "graph-o:d=(3)^inf",
    "graph-o:d=3,4,(3)^inf",
    "graph-o:d=2,(3)^inf",
    "t",
    "k0",
    "rank-subshift:n=1",
    "gp:d=2,(3)^inf,p=0",
    "gp:d=2,(3)^inf,p=1",
    "orbit:d=(3)^inf,S=sa{0}",
    "ka:A=0",
    "periodic:w=0123",
];

fn fam(s: &str) -> SymbolicGraph {
    parse_family(s, None).unwrap()
}

fn labels(q: &QuotientGraph) -> BTreeSet<(String, String)> {
    q.edges.iter().map(|&(a, b)| (q.label(a), q.label(b))).collect()
}

fn has(q: &QuotientGraph, a: &str, b: &str) -> bool {
    let l = labels(q);
    l.contains(&(a.into(), b.into())) || (!q.directed && l.contains(&(b.into(), a.into())))
}

/// Least odd `k` with a closed walk of length `k`, from boolean powers of the
/// symmetrized adjacency matrix.
fn odd_girth_oracle(q: &QuotientGraph) -> Option<usize> {
    let n = q.len();
    let words = n.div_ceil(64).max(1);
    let mut adj = vec![vec![0u64; words]; n];
    for &(a, b) in &q.edges {
        adj[a][b / 64] |= 1 << (b % 64);
        adj[b][a / 64] |= 1 << (a % 64);
    }
    let mul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        x.iter()
            .map(|row| {
                let mut out = vec![0u64; words];
                for j in 0..n {
                    if row[j / 64] >> (j % 64) & 1 == 1 {
                        out.iter_mut().zip(&y[j]).for_each(|(o, v)| *o |= v);
                    }
                }
                out
            })
            .collect()
    };
    let sq = mul(&adj, &adj);
    let mut p = adj.clone();
    let mut k = 1;
    while k <= 2 * n + 1 {
        if (0..n).any(|i| p[i][i / 64] >> (i % 64) & 1 == 1) {
            return Some(k);
        }
        p = mul(&p, &sq);
        k += 2;
    }
    None
}

fn check_walk(q: &QuotientGraph, w: &WalkWitness) {
    assert!(w.is_closed() && w.is_odd());
    assert_eq!(w.vertices.len(), w.len() + 1);
    for (i, e) in w.steps.iter().enumerate() {
        let (u, v) = (&w.vertices[i], &w.vertices[i + 1]);
        let (a, b) = (q.vertex_index(u).unwrap(), q.vertex_index(v).unwrap());
        assert!(q.has_edge(a, b) || q.has_edge(b, a));
        let p = e.project(q.level);
        assert!(p == (u.clone(), v.clone()) || p == (v.clone(), u.clone()));
    }
}

#[test]
fn quotient_examples() {
    let q = quotient(&fam("go-plus:d=2,(3)^inf"), 1);
    assert!(has(&q, "c", "0") && has(&q, "0", "1") && has(&q, "1", "c"));
    let q = quotient(&fam("graph-o:d=(3)^inf"), 1);
    assert_eq!(
        labels(&q),
        BTreeSet::from([("0".into(), "1".into()), ("0".into(), "2".into()), ("1".into(), "2".into())])
    );
    let q = quotient(&fam("gm"), 1);
    assert!(has(&q, "0", "0"));
}

#[test]
fn walk_examples() {
    let tri = quotient(&fam("triangle"), 1);
    assert_eq!(odd_girth(&tri), Some(3));
    let c4 = quotient(&fam("periodic:w=0123"), 1);
    match odd_closed_walk(&c4) {
        WalkSearch::Bipartite(c) => {
            assert!(c4.edges.iter().all(|&(a, b)| c[a] != c[b]));
        }
        WalkSearch::Walk(_) => panic!("C4 has no odd closed walk"),
    }
    let gm = quotient(&fam("gm"), 1);
    match odd_closed_walk(&gm) {
        WalkSearch::Walk(w) => {
            assert_eq!(w.len(), 1);
            assert_eq!(gm.label(gm.vertex_index(&w.vertices[0]).unwrap()), "0");
        }
        WalkSearch::Bipartite(_) => panic!("self-loop"),
    }
}

#[test]
fn decide_examples() {
    let d = decide_level(&fam("graph-o:d=(3)^inf"), 2);
    assert!(matches!(&d, Decision::OddWalk(w) if w.len() == 9));
    assert!(matches!(decide_level(&fam("graph-o:d=3,4,(3)^inf"), 2), Decision::Bipartite(_)));
    let t = fam("t");
    assert!(decide_level(&t, 3).is_odd_walk());
    assert!(scan(&t, 3, ScanOptions::default()).headline().contains("not compact"));
}

#[test]
fn odd_girth_examples() {
    assert_eq!(odd_girth(&quotient(&fam("gp:d=2,(3)^inf,p=0"), 1)), Some(3));
    assert_eq!(odd_girth(&quotient(&fam("gp:d=2,(3)^inf,p=1"), 2)), Some(5));
    assert_eq!(odd_girth(&quotient(&fam("graph-o:d=3,4,(3)^inf"), 2)), None);
    let g = fam("graph-o:d=(3)^inf");
    let girths: Vec<_> = (1..=4).map(|n| odd_girth(&quotient(&g, n))).collect();
    assert_eq!(girths, [Some(3), Some(9), Some(27), Some(81)]);
}

#[test]
fn scan_examples() {
    let r = scan(&fam("go-plus:d=2,(3)^inf"), 4, ScanOptions::default());
    assert_eq!(r.levels.len(), 4);
    assert!(r.levels.iter().all(|l| l.decision.is_odd_walk()));
    match &r.levels[0].decision {
        Decision::OddWalk(w) => assert_eq!(w.display(&fam("go-plus:d=2,(3)^inf").alphabet), "0 - 1 - c - 0"),
        Decision::Bipartite(_) => panic!(),
    }
    let r = scan(&fam("graph-o:d=3,4,(3)^inf"), 4, ScanOptions::default());
    assert_eq!(r.first_bipartite(), Some(2));
    assert_eq!(r.levels.len(), 2);
    let r = scan(&fam("t"), 4, ScanOptions::default());
    assert!(r.levels.iter().all(|l| l.decision.is_odd_walk()) && !r.compact);
    let r = scan(&fam("go-plus:d=2,(3)^inf"), 4, ScanOptions { max_edges: 10, start: 1 });
    assert!(r.partial && r.headline().contains("partial"));
}

#[test]
fn dot_export_labels_prefixes() {
    let dot = quotient(&fam("graph-o:d=(3)^inf"), 1).to_dot();
    assert!(dot.starts_with("graph ") && dot.contains("label=\"2\"") && dot.contains(" -- "));
    let dot = quotient(&fam("go-plus:d=2,(3)^inf:oriented"), 1).to_dot();
    assert!(dot.starts_with("digraph ") && dot.contains(" -> "));
}

// Invariants.

#[test]
fn walks_match_matrix_oracle() {
    for s in FAMILIES {
        let g = fam(s);
        for n in 1..=4 {
            let q = quotient(&g, n);
            let expect = odd_girth_oracle(&q);
            match odd_closed_walk(&q) {
                WalkSearch::Walk(w) => {
                    check_walk(&q, &w);
                    assert_eq!(Some(w.len()), expect, "{s} level {n}");
                }
                WalkSearch::Bipartite(c) => {
                    assert_eq!(expect, None, "{s} level {n}");
                    assert!(q.edges.iter().all(|&(a, b)| c[a] != c[b]));
                }
            }
        }
    }
}

#[test]
fn antitone_odd_walks() {
    for s in FAMILIES {
        let g = fam(s);
        let qs: Vec<QuotientGraph> = (0..=4).map(|n| quotient(&g, n)).collect();
        for n in 1..=4 {
            let WalkSearch::Walk(w) = odd_closed_walk(&qs[n]) else { continue };
            for m in 1..n {
                let p = w.project(m);
                check_walk(&qs[m], &p);
                assert!(odd_girth(&qs[m]).unwrap() <= w.len(), "{s}: {m} < {n}");
            }
        }
    }
}

#[test]
fn bipartite_pull_back() {
    for s in FAMILIES {
        let g = fam(s);
        for n in 1..=4 {
            let Decision::Bipartite(c) = decide_level(&g, n) else { continue };
            for m in n..=n + 2 {
                assert!(verify_coloring(&g, &Coloring::Clopen(c.clone()), m).unwrap().is_proper(), "{s} {n} {m}");
            }
            for e in g.edges(g.saturation(n).plus(5)) {
                assert_ne!(c.color_point(&e.from, &g.alphabet).unwrap(), c.color_point(&e.to, &g.alphabet).unwrap());
            }
        }
    }
}

#[test]
fn self_loops_give_length_one() {
    for s in FAMILIES {
        let g = fam(s);
        for n in 1..=3 {
            let q = quotient(&g, n);
            if q.has_loop() {
                assert_eq!(odd_girth(&q), Some(1), "{s} level {n}");
            }
        }
    }
}

#[test]
fn symmetrization_commutes() {
    for s in ["go-plus:d=2,(3)^inf:oriented", "gm:oriented", "graph-o:d=(3)^inf"] {
        let g = fam(s);
        for n in 1..=3 {
            let q = quotient(&g, n);
            let by_hand: BTreeSet<(String, String)> = q
                .edges
                .iter()
                .map(|&(a, b)| {
                    let (a, b) = (a.min(b), a.max(b));
                    (q.label(a), q.label(b))
                })
                .collect();
            let sym = quotient(&g.symmetrize(), n);
            assert!(!sym.directed);
            assert_eq!(labels(&sym), by_hand, "{s} level {n}");
            assert_eq!(labels(&q.symmetrized()), by_hand);
        }
    }
}
