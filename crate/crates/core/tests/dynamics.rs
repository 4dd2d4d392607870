#![allow(clippy::needless_range_loop)]

use clopen::dynamics::*;
use clopen::words::{Alphabet, BiWord, UltWord};
use proptest::prelude::*;

fn three() -> Alphabet {
    Alphabet::numerals(3)
}

fn ult(s: &str) -> UltWord {
    UltWord::parse(s, &Alphabet::numerals(5)).unwrap()
}

/// Mixed-radix value of a finite digit string, least significant digit first.
fn value(d: &Radix, w: &[u16]) -> u64 {
    let mut v = 0u64;
    for (j, &x) in w.iter().enumerate().rev() {
        v = v * d.digit(j) + x as u64;
    }
    v
}

#[test]
fn odometer_examples() {
    let d3 = Radix::parse("(3)^inf").unwrap();
    assert_eq!(odometer_succ(&d3, &ult("(0)^inf")).unwrap(), ult("1(0)^inf"));
    assert_eq!(odometer_succ(&d3, &ult("(2)^inf")).unwrap(), ult("(0)^inf"));
    let d = Radix::parse("2,(3)^inf").unwrap();
    assert_eq!(odometer_succ(&d, &ult("1(0)^inf")).unwrap(), ult("01(0)^inf"));
    assert_eq!(odometer_iter(&d3, &ult("(0)^inf"), 3).unwrap(), ult("01(0)^inf"));
    let x = ult("12(0)^inf");
    assert_eq!(odometer_iter(&d3, &odometer_iter(&d3, &x, 1).unwrap(), -1).unwrap(), x);
    assert_eq!(&odometer_iter(&d3, &ult("(0)^inf"), 9).unwrap().prefix(2), &[0, 0]);
}

#[test]
fn level_orbit_examples() {
    let a = three();
    let d = Radix::parse("2,(3)^inf").unwrap();
    let shown: Vec<String> = odometer_level_orbit(&d, 1).unwrap().iter().map(|p| p.display(&a)).collect();
    assert_eq!(shown, ["00", "10", "01", "11", "02", "12"]);
    let d3 = Radix::parse("(3)^inf").unwrap();
    let shown: Vec<String> = odometer_level_orbit(&d3, 0).unwrap().iter().map(|p| p.display(&a)).collect();
    assert_eq!(shown, ["0", "1", "2"]);
    assert_eq!(odometer_level_orbit(&d3, 2).unwrap().len(), 27);
}

#[test]
fn period_spectra() {
    let a = period_spectrum(&Radix::parse("2,(3)^inf").unwrap(), 3).unwrap();
    let b = period_spectrum(&Radix::parse("2,5,(3)^inf").unwrap(), 3).unwrap();
    assert_eq!(a, [2, 6, 18]);
    assert_eq!(b, [2, 10, 30]);
    assert_ne!(a[1], b[1]);
}

#[test]
fn substitution_examples() {
    let tau = Substitution::fibonacci();
    assert_eq!(substitute(&tau, &[1], 2), vec![1, 0, 1]);
    assert_eq!(substitute(&tau, &[0, 1, 1], 0), vec![0, 1, 1]);
    for p in 0..=8 {
        assert_eq!(substitute(&tau, &[1], p + 1), fibonacci_word(p));
    }
}

#[test]
fn fibonacci_numbers() {
    assert_eq!(fibonacci_word(2), vec![0, 1, 1, 0, 1]);
    assert_eq!(fibonacci_len(2), 5);
    // Independent recurrence f_0 = 2, f_1 = 3.
    let mut f = vec![2u128, 3];
    for p in 2..=14 {
        f.push(f[p - 1] + f[p - 2]);
    }
    for p in 0..=14 {
        assert_eq!(fibonacci_len(p), f[p]);
    }
    assert_eq!(f[3], 8);
    assert!(8 * f[5] < f[14]);
    for p in 0..=12 {
        assert_eq!(fibonacci_len(p).is_multiple_of(2), p % 3 == 0, "parity rule at p={p}");
    }
}

#[test]
fn periodic_point_examples() {
    let a = Alphabet::numerals(2);
    assert_eq!(periodic_point_period(&BiWord::parse("(01)^inf.(01)^inf", &a).unwrap()), Some(2));
    assert_eq!(periodic_point_period(&BiWord::parse("(01)^inf.1(01)^inf", &a).unwrap()), None);
    let w5 = BiWord::periodic(&fibonacci_word(5));
    assert_eq!(periodic_point_period(&w5), Some(21));
    for q in [1, 3, 7] {
        assert!((0..200i64).any(|i| w5.letter(i) != w5.letter(i + q)), "odd period {q}");
    }
}

#[test]
fn sturmian_examples() {
    let r = QuadraticReal::parse("(3 - 1 sqrt 5)/2").unwrap();
    let zero = QuadraticReal::integer(0);
    assert_eq!(sturmian_code(&r, &zero, 0, 1).unwrap(), vec![0, 1]);
    let x1 = r.add(&zero).unwrap().frac().unwrap();
    assert_eq!(sturmian_code(&r, &zero, -4, 6).unwrap(), sturmian_code(&r, &x1, -5, 5).unwrap());
    let w = sturmian_code(&r, &zero, 0, 2000).unwrap();
    let f4: std::collections::BTreeSet<&[u16]> = w.windows(4).collect();
    assert_eq!(f4.len(), 5);
    assert!(sturmian_code(&QuadraticReal::rational(1, 3).unwrap(), &zero, 0, 3).is_err());
    assert!(sturmian_code(&QuadraticReal::parse("(1 + 1 sqrt 5)/4").unwrap(), &zero, 0, 3).is_err());
}

#[test]
fn sturmian_code_matches_float_oracle() {
    let r = QuadraticReal::parse("(7 - 3 sqrt 5)/2").unwrap();
    let rf = (7.0 - 3.0 * 5f64.sqrt()) / 2.0;
    let w = sturmian_code(&r, &QuadraticReal::integer(0), -100, 100).unwrap();
    for (i, n) in (-100i64..=100).enumerate() {
        let f = (n as f64 * rf).rem_euclid(1.0);
        assert_eq!(w[i], (f >= rf) as u16, "n={n}");
    }
}

#[test]
fn negative_iteration_is_borrow() {
    let d = Radix::parse("2,(3)^inf").unwrap();
    let zero = ult("(0)^inf");
    assert_eq!(odometer_pred(&d, &zero).unwrap(), d.top());
}

proptest! {
    #[test]
    fn level_orbit_is_one_cycle(h in prop::collection::vec(2u64..5, 0..3), c in 2u64..5, l in 0usize..4) {
        let mut cyc = vec![c];
        cyc.dedup();
        let d = Radix::new(h, cyc).unwrap();
        let orbit = odometer_level_orbit(&d, l).unwrap();
        let expect = d.product(l + 1).unwrap() as usize;
        prop_assert_eq!(orbit.len(), expect);
        let distinct: std::collections::BTreeSet<_> = orbit.iter().collect();
        prop_assert_eq!(distinct.len(), expect);
        // Each step adds one in mixed radix.
        for (i, p) in orbit.iter().enumerate() {
            let letters: Vec<u16> = (0..=l).map(|t| p.letters[t]).collect();
            prop_assert_eq!(value(&d, &letters), i as u64);
        }
    }

    #[test]
    fn key_remark(h in prop::collection::vec(2u64..5, 0..3), c in 2u64..5, l in 1usize..=4) {
        let d = Radix::new(h, vec![c]).unwrap();
        let n = d.product(l).unwrap() as i64;
        let y = odometer_iter(&d, &UltWord::constant(0), n).unwrap();
        prop_assert!(y.prefix(l).iter().all(|&x| x == 0));
    }

    #[test]
    fn succ_pred_inverse(digits in prop::collection::vec(0u16..2, 0..6), i in -30i64..30) {
        let d = Radix::parse("2,(3)^inf").unwrap();
        let x = UltWord::new(digits, vec![0]).unwrap();
        let y = odometer_iter(&d, &x, i).unwrap();
        prop_assert_eq!(odometer_iter(&d, &y, -i).unwrap(), x);
    }

    #[test]
    fn substitution_is_morphism(u in prop::collection::vec(0u16..2, 0..=8), v in prop::collection::vec(0u16..2, 0..=8)) {
        let tau = Substitution::fibonacci();
        let uv: Vec<u16> = u.iter().chain(&v).copied().collect();
        let mut lhs = substitute(&tau, &u, 1);
        lhs.extend(substitute(&tau, &v, 1));
        prop_assert_eq!(substitute(&tau, &uv, 1), lhs);
    }

    #[test]
    fn fibonacci_recurrence(p in 0usize..=10) {
        let mut w = fibonacci_word(p);
        w.extend(fibonacci_word(p + 1));
        prop_assert_eq!(fibonacci_word(p + 2), w);
        prop_assert_eq!(fibonacci_word(p).len() as u128, fibonacci_len(p));
    }

    #[test]
    fn periodic_point_period_divides(w in prop::collection::vec(0u16..3, 1..=8)) {
        let p = periodic_point_period(&BiWord::periodic(&w)).unwrap();
        prop_assert_eq!(w.len() % p, 0);
    }

    #[test]
    fn sturmian_equivariance(num in 0i128..50, den in 1i128..50, a in -50i64..=40, len in 0i64..10) {
        let r = QuadraticReal::parse("(3 - 1 sqrt 5)/2").unwrap();
        let x = QuadraticReal::rational(num % den, den).unwrap();
        let b = a + len;
        let x1 = x.add(&r).unwrap().frac().unwrap();
        prop_assert_eq!(
            sturmian_code(&r, &x, a + 1, b + 1).unwrap(),
            sturmian_code(&r, &x1, a, b).unwrap()
        );
    }
}
