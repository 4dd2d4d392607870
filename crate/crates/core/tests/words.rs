use clopen::words::{Alphabet, BiWord, UltWord};
use proptest::prelude::*;

fn bin() -> Alphabet {
    Alphabet::numerals(2)
}

/// The first `n` letters of `u v v v …`, computed without canonical forms.
fn unroll(head: &[u16], cycle: &[u16], n: usize) -> Vec<u16> {
    head.iter().chain(cycle.iter().cycle()).take(n).copied().collect()
}

#[test]
fn prefix_examples() {
    let a = bin();
    let x = UltWord::parse("0(1)^inf", &a).unwrap();
    assert_eq!(a.format_word(&x.prefix(3)), "011");
    assert_eq!(a.format_word(&UltWord::constant(0).prefix(5)), "00000");
    let m = Alphabet::new(["c", "a", "abar"]).unwrap();
    let y = UltWord::parse("c,a,(abar)^inf", &m).unwrap();
    assert_eq!(m.format_word(&y.prefix(4)), "c,a,abar,abar");
}

#[test]
fn shift_examples() {
    let a = bin();
    let alpha0 = BiWord::parse("(01)^inf.(01)^inf", &a).unwrap();
    assert_eq!(alpha0.shift(2), alpha0);
    let beta = BiWord::parse("(01)^inf.1(01)^inf", &a).unwrap();
    assert_eq!(beta.shift(1).display(&a), "(01)^inf1.(01)^inf");
    assert_eq!(beta.shift(5).shift(-5), beta);
}

#[test]
fn factor_examples() {
    let a = bin();
    let set = |v: &[&str]| v.iter().map(|w| a.parse_word(w).unwrap()).collect::<std::collections::BTreeSet<_>>();
    let alpha0 = BiWord::parse("(01)^inf.(01)^inf", &a).unwrap();
    assert_eq!(alpha0.factors(2), set(&["01", "10"]));
    let beta = BiWord::parse("(01)^inf.1(01)^inf", &a).unwrap();
    assert_eq!(beta.factors(2), set(&["01", "10", "11"]));
    assert_eq!(UltWord::constant(0).factors(3), set(&["000"]));
}

#[test]
fn equality_examples() {
    let a = bin();
    let x = UltWord::parse("0(10)^inf", &a).unwrap();
    let y = UltWord::parse("01(01)^inf", &a).unwrap();
    assert_eq!(x, y);
    assert_eq!(x.prefix(20), y.prefix(20));
    assert_eq!(UltWord::parse("(00)^inf", &a).unwrap(), UltWord::constant(0));
    assert_ne!(UltWord::parse("0(1)^inf", &a).unwrap(), UltWord::parse("1(0)^inf", &a).unwrap());
}

#[test]
fn wide_alphabet_grammar() {
    let a = Alphabet::numerals_with(12, &["c"]);
    let w = UltWord::parse("11,c,(0)^inf", &a).unwrap();
    assert_eq!(w.display(&a), "11,c,(0)^inf");
    assert!(UltWord::parse("1x(0)^inf", &bin()).is_err());
}

fn word(max: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0u16..3, 0..max)
}

fn cycle(max: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0u16..3, 1..max)
}

proptest! {
    #[test]
    fn canonicalization_idempotent(h in word(6), c in cycle(5)) {
        let x = UltWord::new(h.clone(), c.clone()).unwrap();
        let again = UltWord::new(x.head().to_vec(), x.cycle().to_vec()).unwrap();
        prop_assert_eq!(&again, &x);
        prop_assert_eq!(x.prefix(40), unroll(&h, &c, 40));
    }

    #[test]
    fn canonical_equality_matches_unrolling(h1 in word(4), c1 in cycle(4), h2 in word(4), c2 in cycle(4)) {
        let x = UltWord::new(h1.clone(), c1.clone()).unwrap();
        let y = UltWord::new(h2.clone(), c2.clone()).unwrap();
        // Two eventually periodic words agreeing on |h|max + lcm-bound letters agree everywhere.
        let n = 4 + 4 + 12 * 2;
        prop_assert_eq!(x == y, unroll(&h1, &c1, n) == unroll(&h2, &c2, n));
    }

    #[test]
    fn prefix_consistency(h in word(6), c in cycle(5)) {
        let x = UltWord::new(h, c).unwrap();
        for n in 0..64 {
            let (a, b) = (x.prefix(n), x.prefix(n + 1));
            prop_assert_eq!(&b[..n], &a[..]);
        }
    }

    #[test]
    fn factors_monotone(l in cycle(4), core in word(5), r in cycle(4), m in 2usize..7) {
        let b = BiWord::new(l, core, r).unwrap();
        let lower = b.factors(m - 1);
        for w in b.factors(m) {
            prop_assert!(lower.contains(&w[1..]) && lower.contains(&w[..m - 1]));
        }
        let x = UltWord::new(b.core().to_vec(), b.right_cycle().to_vec()).unwrap();
        let lower = x.factors(m - 1);
        for w in x.factors(m) {
            prop_assert!(lower.contains(&w[1..]) && lower.contains(&w[..m - 1]));
        }
    }

    #[test]
    fn factors_match_window_scan(l in cycle(3), core in word(4), r in cycle(3), m in 1usize..6) {
        let b = BiWord::new(l, core, r).unwrap();
        let scan: std::collections::BTreeSet<Vec<u16>> =
            (-60i64..60).map(|i| b.window(i, m)).collect();
        prop_assert_eq!(b.factors(m), scan);
    }

    #[test]
    fn shift_group_law(l in cycle(3), core in word(4), r in cycle(3), j in -16i64..=16, k in -16i64..=16) {
        let b = BiWord::new(l, core, r).unwrap();
        prop_assert_eq!(b.shift(j).shift(k), b.shift(j + k));
        for i in -10i64..10 {
            prop_assert_eq!(b.shift(j).letter(i), b.letter(i + j));
        }
    }
}
