use std::collections::BTreeMap;

use clopen::colorings::*;
use clopen::dynamics::{odometer_succ_finite, Radix};
use clopen::families::{parse_family, SymbolicGraph};
use clopen::quotients::{odd_closed_walk, quotient, scan, QuotientGraph, ScanOptions, WalkSearch};
use clopen::words::{Alphabet, Point, Prefix, UltWord};
use proptest::prelude::*;

fn fam(s: &str) -> SymbolicGraph {
    parse_family(s, None).unwrap()
}

fn radix(s: &str) -> Radix {
    Radix::parse(s).unwrap()
}

fn proper_on_quotient(q: &QuotientGraph, c: &ClopenColoring) -> bool {
    q.edges.iter().all(|&(a, b)| {
        c.color_of(&q.vertices[a], &q.alphabet).unwrap() != c.color_of(&q.vertices[b], &q.alphabet).unwrap()
    })
}

#[test]
fn verify_examples() {
    let g = fam("graph-o:d=(3)^inf");
    let c = first_letter_coloring(&radix("(3)^inf"));
    for n in 1..=4 {
        assert!(verify_coloring(&g, &Coloring::Clopen(c.clone()), n).unwrap().is_proper());
    }
    let tri = fam("triangle");
    let constant = ClopenColoring::new("triangle", 0, 1, BTreeMap::new(), Some(0));
    let v = verify_coloring(&tri, &Coloring::Clopen(constant), 1).unwrap();
    assert!(matches!(v.verdict, Verdict::Violation { colors: (0, 0), .. }));
    let v = verify_edges(&clopen::families::t_edges(10), &t_coloring(), 0).unwrap();
    assert!(v.is_proper() && !v.complete);
    let v = verify_coloring(&fam("t:cap=22"), &Coloring::Predicate(t_coloring()), 4).unwrap();
    assert!(v.is_proper() && !v.complete);
}

#[test]
fn t_coloring_by_hand() {
    let a = fam("t").alphabet;
    let col = |s: &str| (t_coloring().f)(&Point::One(UltWord::parse(s, &a).unwrap()));
    assert_eq!(col("(0)^inf"), 1);
    assert_eq!(col("1,(0)^inf"), 0);
    assert_eq!(col("2,1,0,(1)^inf"), 1);
    assert_eq!(col("2,1,1,(0)^inf"), 0);
    assert_eq!(col("2,0,(0)^inf"), 0);
    assert_eq!(col("4,3,0,0,(0)^inf"), 1);
}

#[test]
fn parity_examples() {
    let c = parity_coloring(&radix("3,4,(3)^inf")).unwrap();
    assert_eq!(c.level, 2);
    assert!(verify_coloring(&fam("graph-o:d=3,4,(3)^inf"), &Coloring::Clopen(c), 4).unwrap().is_proper());
    let c = parity_coloring(&radix("2,(3)^inf")).unwrap();
    let a = Alphabet::numerals(3);
    assert_eq!(c.level, 1);
    assert_eq!(c.color_of(&Prefix::parse("0", &a, false).unwrap(), &a).unwrap(), 0);
    assert_eq!(c.color_of(&Prefix::parse("1", &a, false).unwrap(), &a).unwrap(), 1);
    assert!(verify_coloring(&fam("graph-o:d=2,(3)^inf"), &Coloring::Clopen(c), 4).unwrap().is_proper());
    assert!(matches!(parity_coloring(&radix("(3)^inf")), Err(ColoringError::NoEvenDigit(_))));
}

#[test]
fn three_coloring_examples() {
    for s in ["go-plus:d=2,(3)^inf", "go-plus:d=2,5,(3)^inf"] {
        let g = fam(s);
        let c = three_coloring_beta(&g).unwrap();
        assert_eq!(c.colors, 3);
        for n in 1..=4 {
            assert!(verify_coloring(&g, &Coloring::Clopen(c.clone()), n).unwrap().is_proper(), "{s} {n}");
        }
    }
}

#[test]
fn search_examples() {
    let tri = quotient(&fam("triangle"), 1);
    assert!(search_coloring(&tri, 2).unwrap().is_none());
    let c = search_coloring(&tri, 3).unwrap().unwrap();
    assert!(proper_on_quotient(&tri, &c));
    for (s, n) in [("k0", 4), ("graph-o:d=(3)^inf", 2)] {
        let q = quotient(&fam(s), n);
        let c = search_coloring(&q, 3).unwrap().unwrap();
        assert!(proper_on_quotient(&q, &c), "{s}");
    }
    assert!(search_coloring(&quotient(&fam("gm"), 1), 6).unwrap().is_none());
}

#[test]
fn return_time_examples() {
    let d = radix("(3)^inf");
    assert_eq!(return_time(&d, &[0, 0], &[1, 0]).unwrap(), Some(8));
    assert_eq!(return_time(&d, &[0, 0], &[0, 0, 2]).unwrap(), Some(0));
    assert!(return_time(&d, &[0, 0], &[1]).is_err());
}

#[test]
fn return_parity_is_proper_off_the_cut() {
    let d = radix("(3)^inf");
    let cw = [0u16, 0];
    let c = return_parity_coloring(&d, &cw).unwrap();
    let g = fam("graph-o:d=(3)^inf");
    let mut checked = 0;
    for e in g.base_edges(g.saturation(3)) {
        let (x, y) = (e.from.level_prefix(2), e.to.level_prefix(2));
        if x.letters == cw || y.letters == cw {
            continue;
        }
        checked += 1;
        assert_ne!(c.color_point(&e.from, &g.alphabet).unwrap(), c.color_point(&e.to, &g.alphabet).unwrap());
    }
    assert!(checked > 0);
}

#[test]
fn coloring_file_round_trip() {
    let g = fam("graph-o:d=3,4,(3)^inf");
    let c = parity_coloring(&radix("3,4,(3)^inf")).unwrap();
    let text = c.to_text(&g.alphabet);
    assert!(text.starts_with("level=2 colors=2 family="));
    assert_eq!(ClopenColoring::parse(&text, &g.alphabet, false).unwrap(), c);
    assert!(ClopenColoring::parse("level=1 colors=2 family=x\n0 5\n", &g.alphabet, false).is_err());
    assert!(ClopenColoring::parse("colors=2\n", &g.alphabet, false).is_err());
}

#[test]
fn charsub_examples() {
    let a = Alphabet::numerals(2);
    let full = CharsubSpec::full(UltWord::parse("(1)^inf", &a).unwrap());
    assert_eq!(charsub_check(&full), CharsubVerdict::AtLeastThree);
    let mut no_c = full.clone();
    no_c.c_inf = false;
    assert!(matches!(charsub_check(&no_c), CharsubVerdict::AtMostTwo { clause, .. } if clause == "c^inf in V"));
    let mut even = full.clone();
    even.jb = JSpec::uniform(IndexSetSpec::progression(0, 2));
    assert_eq!(charsub_check(&even), CharsubVerdict::AtLeastThree);
    let mut finite = full.clone();
    finite.jd = JSpec::uniform(IndexSetSpec::finite([0, 1]));
    assert!(matches!(charsub_check(&finite), CharsubVerdict::AtMostTwo { clause, .. } if clause == "(d)"));
    let ones = CharsubSpec::full(UltWord::parse("11(0)^inf", &a).unwrap());
    assert!(matches!(charsub_check(&ones), CharsubVerdict::AtMostTwo { threshold: 2, .. }));
    assert_eq!(IndexSetSpec::parse("set{1,4}+ap{3,2}").unwrap(), {
        let mut s = IndexSetSpec::finite([1, 4]);
        s.progressions.push((3, 2));
        s
    });
}

// Invariants.

const WALK_FAMILIES: &[&str] = &[
    "gm",
    "go-plus:d=2,(3)^inf",
    "graph-o:d=(3)^inf",
    "graph-o:d=3,4,(3)^inf",
    "graph-o:d=2,(3)^inf",
    "k0",
    "periodic:w=0123",
    "gp:d=2,(3)^inf,p=1",
    "ka:A=0",
    "t",
];

#[test]
fn two_colorable_iff_no_odd_walk() {
    for s in WALK_FAMILIES {
        let g = fam(s);
        for n in 1..=4 {
            let q = quotient(&g, n);
            let found = search_coloring(&q, 2).unwrap();
            let walk = matches!(odd_closed_walk(&q), WalkSearch::Walk(_));
            assert_eq!(found.is_some(), !walk, "{s} level {n}");
            if let Some(c) = found {
                assert!(proper_on_quotient(&q, &c));
            }
        }
    }
}

#[test]
fn parity_coloring_for_every_early_even_digit() {
    for a in 2u64..=5 {
        for b in 2u64..=5 {
            for c in 2u64..=5 {
                if [a, b, c].iter().all(|x| x % 2 == 1) {
                    continue;
                }
                let s = format!("{a},{b},{c},(3)^inf");
                let col = parity_coloring(&radix(&s)).unwrap();
                let g = fam(&format!("graph-o:d={s}"));
                assert!(verify_coloring(&g, &Coloring::Clopen(col), 4).unwrap().is_proper(), "{s}");
            }
        }
    }
}

#[test]
fn charsub_agrees_with_scan_on_cofinite_instances() {
    let a = Alphabet::numerals(2);
    let cases = [
        ("(1)^inf", IndexSetSpec::all()),
        ("(1)^inf", IndexSetSpec::cofinite(2)),
        ("0(1)^inf", IndexSetSpec::cofinite(1)),
        ("(01)^inf", IndexSetSpec::all()),
        ("(0)^inf", IndexSetSpec::all()),
    ];
    for (delta, j) in cases {
        let mut s = CharsubSpec::full(UltWord::parse(delta, &a).unwrap());
        s.jb = JSpec::uniform(j.clone());
        s.jc = JSpec::uniform(j.clone());
        s.jd = JSpec::uniform(j);
        let verdict = charsub_check(&s);
        let g = charsub_graph(&s, 12);
        let r = scan(&g, 3, ScanOptions::default());
        assert_eq!(verdict == CharsubVerdict::AtLeastThree, r.first_bipartite().is_none(), "delta={delta}");
    }
}

fn random_coloring_strategy() -> impl Strategy<Value = (usize, usize, Vec<u8>, u8)> {
    (0usize..4, 1usize..=3, prop::collection::vec(0u8..3, 400), 0u8..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn verify_is_complete_on_clopen_colorings((fi, level, colors, default) in random_coloring_strategy(), n in 1usize..=3) {
        let s = ["graph-o:d=(3)^inf", "go-plus:d=2,(3)^inf", "k0", "gm"][fi];
        let g = fam(s);
        let ql = quotient(&g, level);
        let map: BTreeMap<Prefix, u8> = ql.vertices.iter().cloned().zip(colors.iter().map(|c| c % 3)).collect();
        let c = ClopenColoring::new(s, level, 3, map, Some(default % 3));
        let m = level.max(n);
        let q = quotient(&g, m);
        let mono = q.edges.iter().any(|&(a, b)| {
            c.color_of(&q.vertices[a], &g.alphabet).unwrap() == c.color_of(&q.vertices[b], &g.alphabet).unwrap()
        });
        let v = verify_coloring(&g, &Coloring::Clopen(c), n).unwrap();
        prop_assert_eq!(v.is_proper(), !mono);
        prop_assert!(v.complete);
    }

    #[test]
    fn return_time_cocycle(cw in prop::collection::vec(0u16..2, 1..=3), x in prop::collection::vec(0u16..3, 3..=4)) {
        let d = radix("2,(3)^inf");
        let mut x = x;
        x[0] %= 2;
        if x[..cw.len()] != cw[..] {
            let mut ox = x.clone();
            odometer_succ_finite(&d, &mut ox);
            let (r, r1) = (return_time(&d, &cw, &x).unwrap(), return_time(&d, &cw, &ox).unwrap());
            if let (Some(r), Some(r1)) = (r, r1) {
                prop_assert_eq!(r, r1 + 1);
            }
        }
    }
}
