//! Odometers, substitutions, Fibonacci words and Sturmian codings.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use thiserror::Error;

use crate::words::{BiWord, Letter, Prefix, UltWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("invalid point: letter {letter} at position {pos} is not below digit {digit}")]
    InvalidPoint { pos: usize, letter: Letter, digit: u64 },
    #[error("invalid radix: {0}")]
    BadRadix(String),
    #[error("cannot parse `{0}`: {1}")]
    Parse(String, String),
    #[error("rotation number must be irrational")]
    RationalRotation,
    #[error("rotation number must lie strictly between 0 and 1/2")]
    RotationOutOfRange,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("window [{0}, {1}] is empty")]
    EmptyWindow(i64, i64),
    #[error("mixed square roots: sqrt {0} and sqrt {1}")]
    MixedSurds(i128, i128),
}

/// Eventually periodic sequence `head · cycle^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodic<T> {
    head: Vec<T>,
    cycle: Vec<T>,
}

impl<T: Clone + PartialEq> EventuallyPeriodic<T> {
    pub fn new(head: Vec<T>, cycle: Vec<T>) -> Option<Self> {
        if cycle.is_empty() {
            return None;
        }
        Some(EventuallyPeriodic { head, cycle })
    }

    pub fn get(&self, j: usize) -> T {
        if j < self.head.len() {
            self.head[j].clone()
        } else {
            self.cycle[(j - self.head.len()) % self.cycle.len()].clone()
        }
    }

    pub fn head(&self) -> &[T] {
        &self.head
    }

    pub fn cycle(&self) -> &[T] {
        &self.cycle
    }

    /// Every value the sequence takes appears at an index below this.
    pub fn span(&self) -> usize {
        self.head.len() + self.cycle.len()
    }
}

impl<T: FromStr> EventuallyPeriodic<T> {
    /// Grammar `a,b,(c,d)^rep` (also `^inf`); an optional `name=` prefix is ignored.
    pub fn parse(s: &str) -> Result<Self, DynamicsError> {
        let err = |m: &str| DynamicsError::Parse(s.to_string(), m.to_string());
        let body = match s.find('=') {
            Some(i) => &s[i + 1..],
            None => s,
        }
        .trim();
        let (head, cycle) = match body.find('(') {
            Some(open) => {
                let close = body.find(')').ok_or_else(|| err("missing `)`"))?;
                let tail = body[close + 1..].trim();
                if tail != "^rep" && tail != "^inf" {
                    return Err(err("expected `^rep` or `^inf` after `)`"));
                }
                (&body[..open], &body[open + 1..close])
            }
            None => return Err(err("missing repeating part `(…)^rep`")),
        };
        let nums = |t: &str| -> Result<Vec<T>, DynamicsError> {
            t.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<T>().map_err(|_| err("expected integers")))
                .collect()
        };
        let head = nums(head)?;
        let cycle = nums(cycle)?;
        if cycle.is_empty() {
            return Err(err("empty repeating part"));
        }
        Ok(EventuallyPeriodic { head, cycle })
    }
}

impl<T: fmt::Display> fmt::Display for EventuallyPeriodic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.head {
            write!(f, "{h},")?;
        }
        let c: Vec<String> = self.cycle.iter().map(|x| x.to_string()).collect();
        write!(f, "({})^inf", c.join(","))
    }
}

/// A user-supplied integer schedule such as the window offsets of a general system.
pub type Schedule = EventuallyPeriodic<i64>;

/// Digit sequence of an odometer, every digit at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radix {
    digits: EventuallyPeriodic<u64>,
}

impl Radix {
    pub fn new(head: Vec<u64>, cycle: Vec<u64>) -> Result<Self, DynamicsError> {
        let digits = EventuallyPeriodic::new(head, cycle)
            .ok_or_else(|| DynamicsError::BadRadix("empty repeating part".into()))?;
        Self::from_seq(digits)
    }

    fn from_seq(digits: EventuallyPeriodic<u64>) -> Result<Self, DynamicsError> {
        if let Some(d) = digits.head.iter().chain(&digits.cycle).find(|&&d| d < 2) {
            return Err(DynamicsError::BadRadix(format!("digit {d} is below 2")));
        }
        if let Some(d) = digits.head.iter().chain(&digits.cycle).find(|&&d| d > 4096) {
            return Err(DynamicsError::BadRadix(format!("digit {d} is too large")));
        }
        Ok(Radix { digits })
    }

    pub fn constant(d: u64) -> Result<Self, DynamicsError> {
        Self::new(vec![], vec![d])
    }

    pub fn parse(s: &str) -> Result<Self, DynamicsError> {
        Self::from_seq(EventuallyPeriodic::parse(s)?)
    }

    pub fn digit(&self, j: usize) -> u64 {
        self.digits.get(j)
    }

    pub fn seq(&self) -> &EventuallyPeriodic<u64> {
        &self.digits
    }

    pub fn max_digit(&self) -> u64 {
        self.digits.head.iter().chain(&self.digits.cycle).copied().max().unwrap_or(2)
    }

    /// All digits odd.
    pub fn is_all_odd(&self) -> bool {
        self.digits.head.iter().chain(&self.digits.cycle).all(|d| d % 2 == 1)
    }

    /// `d₀ = 2` and every later digit odd.
    pub fn is_class_d(&self) -> bool {
        self.digit(0) == 2 && (1..self.digits.span() + 1).all(|j| self.digit(j) % 2 == 1)
    }

    /// Least index of an even digit.
    pub fn first_even(&self) -> Option<usize> {
        (0..self.digits.span()).find(|&j| self.digit(j).is_multiple_of(2))
    }

    /// `∏_{j<l} d_j`.
    pub fn product(&self, l: usize) -> Result<u64, DynamicsError> {
        (0..l).try_fold(1u64, |acc, j| acc.checked_mul(self.digit(j)).ok_or(DynamicsError::Overflow))
    }

    fn window(&self, x: &UltWord) -> usize {
        x.head().len() + self.digits.head.len() + x.cycle().len().lcm(&self.digits.cycle.len()) + 1
    }

    pub fn validate(&self, x: &UltWord) -> Result<(), DynamicsError> {
        for j in 0..self.window(x) {
            let l = x.letter(j);
            if l as u64 >= self.digit(j) {
                return Err(DynamicsError::InvalidPoint { pos: j, letter: l, digit: self.digit(j) });
            }
        }
        Ok(())
    }

    /// The point `(d_j − 1)_j`.
    pub fn top(&self) -> UltWord {
        let m = |v: &[u64]| v.iter().map(|d| (d - 1) as Letter).collect::<Vec<_>>();
        UltWord::of(&m(&self.digits.head), &m(&self.digits.cycle))
    }
}

impl fmt::Display for Radix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.digits.fmt(f)
    }
}

/// `o(x)`: add one with carry to the right.
pub fn odometer_succ(d: &Radix, x: &UltWord) -> Result<UltWord, DynamicsError> {
    d.validate(x)?;
    for j in 0..d.window(x) {
        let l = x.letter(j);
        if (l as u64) + 1 < d.digit(j) {
            let mut head = vec![0; j];
            head.push(l + 1);
            return Ok(x.drop_front(j + 1).prepend(&head));
        }
    }
    Ok(UltWord::constant(0))
}

/// `o⁻¹(x)`: subtract one with borrow.
pub fn odometer_pred(d: &Radix, x: &UltWord) -> Result<UltWord, DynamicsError> {
    d.validate(x)?;
    for j in 0..d.window(x) {
        let l = x.letter(j);
        if l > 0 {
            let mut head: Vec<Letter> = (0..j).map(|i| (d.digit(i) - 1) as Letter).collect();
            head.push(l - 1);
            return Ok(x.drop_front(j + 1).prepend(&head));
        }
    }
    Ok(d.top())
}

/// `o^i(x)` for any integer `i`.
pub fn odometer_iter(d: &Radix, x: &UltWord, i: i64) -> Result<UltWord, DynamicsError> {
    let mut y = x.clone();
    for _ in 0..i.unsigned_abs() {
        y = if i > 0 { odometer_succ(d, &y)? } else { odometer_pred(d, &y)? };
    }
    Ok(y)
}

/// Cyclic successor on a finite digit string.
pub fn odometer_succ_finite(d: &Radix, s: &mut [Letter]) {
    for (j, l) in s.iter_mut().enumerate() {
        if (*l as u64) + 1 < d.digit(j) {
            *l += 1;
            return;
        }
        *l = 0;
    }
}

/// `[o_{l,0}, …, o_{l,P−1}]` with `o_{l,i} = o^i(0^∞)|(l+1)` and `P = ∏_{j≤l} d_j`.
pub fn odometer_level_orbit(d: &Radix, l: usize) -> Result<Vec<Prefix>, DynamicsError> {
    let p = d.product(l + 1)?;
    let mut cur = vec![0 as Letter; l + 1];
    let mut out = Vec::with_capacity(p as usize);
    for _ in 0..p {
        out.push(Prefix::one_sided(cur.clone()));
        odometer_succ_finite(d, &mut cur);
    }
    Ok(out)
}

/// `[∏_{j<l} d_j : 1 ≤ l ≤ l_max]`.
pub fn period_spectrum(d: &Radix, l_max: usize) -> Result<Vec<u64>, DynamicsError> {
    (1..=l_max).map(|l| d.product(l)).collect()
}

/// A letter-to-word map extended to a monoid morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<Vec<Letter>>,
}

impl Substitution {
    pub fn new(images: Vec<Vec<Letter>>) -> Option<Self> {
        if images.iter().any(|w| w.is_empty()) || images.is_empty() {
            return None;
        }
        if images.iter().flatten().any(|&l| l as usize >= images.len()) {
            return None;
        }
        Some(Substitution { images })
    }

    /// `0 ↦ 1`, `1 ↦ 01`.
    pub fn fibonacci() -> Self {
        Substitution { images: vec![vec![1], vec![0, 1]] }
    }

    pub fn image(&self, l: Letter) -> &[Letter] {
        &self.images[l as usize]
    }

    pub fn apply(&self, w: &[Letter]) -> Vec<Letter> {
        w.iter().flat_map(|&l| self.images[l as usize].iter().copied()).collect()
    }
}

/// `τ^k(w)`.
pub fn substitute(t: &Substitution, w: &[Letter], k: usize) -> Vec<Letter> {
    (0..k).fold(w.to_vec(), |acc, _| t.apply(&acc))
}

/// `w_0 = 01`, `w_1 = 101`, `w_{p+2} = w_p w_{p+1}`.
pub fn fibonacci_word(p: usize) -> Vec<Letter> {
    let (mut a, mut b) = (vec![0, 1], vec![1, 0, 1]);
    for _ in 0..p {
        let mut c = a.clone();
        c.extend_from_slice(&b);
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// `f_p = |w_p|`: `f_0 = 2`, `f_1 = 3`.
pub fn fibonacci_len(p: usize) -> u128 {
    let (mut a, mut b) = (2u128, 3u128);
    for _ in 0..p {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

/// First `n` letters of the limit of the reversed words `w_p`.
pub fn fibonacci_phi(n: usize) -> Vec<Letter> {
    let mut p = 0;
    while (fibonacci_len(p) as usize) < n {
        p += 1;
    }
    let mut w = fibonacci_word(p);
    w.reverse();
    w.truncate(n);
    w
}

/// Least `i > 0` with `σ^i(b) = b`, if any.
pub fn periodic_point_period(b: &BiWord) -> Option<usize> {
    b.is_purely_periodic().then(|| b.right_cycle().len())
}

/// `(p + q·√d)/s` with exact integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticReal {
    p: i128,
    q: i128,
    d: i128,
    s: i128,
}

fn ck(x: Option<i128>) -> Result<i128, DynamicsError> {
    x.ok_or(DynamicsError::Overflow)
}

impl QuadraticReal {
    pub fn new(p: i128, q: i128, d: i128, s: i128) -> Result<Self, DynamicsError> {
        if s == 0 {
            return Err(DynamicsError::Parse(format!("({p} + {q} sqrt {d})/{s}"), "zero denominator".into()));
        }
        if d < 0 {
            return Err(DynamicsError::Parse(format!("sqrt {d}"), "negative radicand".into()));
        }
        let (mut p, mut q, mut d, mut s) = (p, q, d, s);
        let r = d.sqrt();
        if r * r == d {
            p = ck(q.checked_mul(r).and_then(|t| t.checked_add(p)))?;
            q = 0;
            d = 0;
        }
        if q == 0 {
            d = 0;
        }
        if s < 0 {
            p = -p;
            q = -q;
            s = -s;
        }
        let g = p.gcd(&q).gcd(&s);
        if g > 1 {
            p /= g;
            q /= g;
            s /= g;
        }
        Ok(QuadraticReal { p, q, d, s })
    }

    pub fn rational(num: i128, den: i128) -> Result<Self, DynamicsError> {
        Self::new(num, 0, 0, den)
    }

    pub fn integer(n: i128) -> Self {
        QuadraticReal { p: n, q: 0, d: 0, s: 1 }
    }

    pub fn is_rational(&self) -> bool {
        self.q == 0
    }

    pub fn parts(&self) -> (i128, i128, i128, i128) {
        (self.p, self.q, self.d, self.s)
    }

    fn common_d(&self, o: &Self) -> Result<i128, DynamicsError> {
        match (self.q == 0, o.q == 0) {
            (true, _) => Ok(o.d),
            (_, true) => Ok(self.d),
            _ if self.d == o.d => Ok(self.d),
            _ => Err(DynamicsError::MixedSurds(self.d, o.d)),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, DynamicsError> {
        let d = self.common_d(o)?;
        let p = ck(ck(self.p.checked_mul(o.s))?.checked_add(ck(o.p.checked_mul(self.s))?))?;
        let q = ck(ck(self.q.checked_mul(o.s))?.checked_add(ck(o.q.checked_mul(self.s))?))?;
        Self::new(p, q, d, ck(self.s.checked_mul(o.s))?)
    }

    pub fn neg(&self) -> Self {
        QuadraticReal { p: -self.p, q: -self.q, d: self.d, s: self.s }
    }

    pub fn sub(&self, o: &Self) -> Result<Self, DynamicsError> {
        self.add(&o.neg())
    }

    pub fn mul_int(&self, n: i128) -> Result<Self, DynamicsError> {
        Self::new(ck(self.p.checked_mul(n))?, ck(self.q.checked_mul(n))?, self.d, self.s)
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> Result<i32, DynamicsError> {
        let (p, q) = (self.p, self.q);
        if q == 0 {
            return Ok(p.signum() as i32);
        }
        if p.signum() == q.signum() || p == 0 {
            return Ok(q.signum() as i32);
        }
        let p2 = ck(p.checked_mul(p))?;
        let q2d = ck(q.checked_mul(q).and_then(|t| t.checked_mul(self.d)))?;
        // d is not a square, so p² ≠ q²d.
        Ok(if p > 0 {
            if p2 > q2d {
                1
            } else {
                -1
            }
        } else if q2d > p2 {
            1
        } else {
            -1
        })
    }

    pub fn compare(&self, o: &Self) -> Result<Ordering, DynamicsError> {
        Ok(self.sub(o)?.signum()?.cmp(&0))
    }

    pub fn floor(&self) -> Result<i128, DynamicsError> {
        if self.q == 0 {
            return Ok(num_integer::Integer::div_floor(&self.p, &self.s));
        }
        let m = ck(self.q.checked_mul(self.q).and_then(|t| t.checked_mul(self.d)))?.sqrt();
        let num = if self.q > 0 { ck(self.p.checked_add(m))? } else { ck(self.p.checked_sub(m + 1))? };
        Ok(num_integer::Integer::div_floor(&num, &self.s))
    }

    /// `x − ⌊x⌋`.
    pub fn frac(&self) -> Result<Self, DynamicsError> {
        self.sub(&Self::integer(self.floor()?))
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + self.q as f64 * (self.d as f64).sqrt()) / self.s as f64
    }

    /// Grammar `(p + q sqrt D)/s`; also accepts `-` for the surd sign, a bare
    /// integer or fraction `a/b`, and omits `/s` when `s = 1`.
    pub fn parse(text: &str) -> Result<Self, DynamicsError> {
        let err = |m: &str| DynamicsError::Parse(text.to_string(), m.to_string());
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, den) = match t.rfind(")/") {
            Some(i) if t.starts_with('(') => (&t[1..i], &t[i + 2..]),
            _ => match (t.starts_with('('), t.ends_with(')')) {
                (true, true) => (&t[1..t.len() - 1], "1"),
                _ => match t.split_once('/') {
                    Some((a, b)) if !t.contains("sqrt") => (a, b),
                    _ => (t.as_str(), "1"),
                },
            },
        };
        let s: i128 = den.parse().map_err(|_| err("bad denominator"))?;
        let Some(k) = num.find("sqrt") else {
            let p: i128 = num.parse().map_err(|_| err("bad integer"))?;
            return Self::new(p, 0, 0, s);
        };
        let d: i128 = num[k + 4..].parse().map_err(|_| err("bad radicand"))?;
        let left = &num[..k];
        // Split `p±q` at the last sign that is not leading.
        let cut = left.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).next_back();
        let (p, qs) = match cut {
            Some(i) => (left[..i].parse::<i128>().map_err(|_| err("bad rational part"))?, &left[i..]),
            None => (0, left),
        };
        let q: i128 = match qs.trim_end_matches('*') {
            "" | "+" => 1,
            "-" => -1,
            v => v.parse().map_err(|_| err("bad surd coefficient"))?,
        };
        Self::new(p, q, d, s)
    }
}

impl fmt::Display for QuadraticReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            if self.s == 1 {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.s)
            }
        } else {
            let sign = if self.q < 0 { '-' } else { '+' };
            write!(f, "({} {} {} sqrt {})/{}", self.p, sign, self.q.abs(), self.d, self.s)
        }
    }
}

/// Checks `r ∉ ℚ` and `0 < r < 1/2`.
pub fn check_rotation(r: &QuadraticReal) -> Result<(), DynamicsError> {
    if r.is_rational() {
        return Err(DynamicsError::RationalRotation);
    }
    let half = QuadraticReal::rational(1, 2)?;
    if r.signum()? <= 0 || r.compare(&half)? != Ordering::Less {
        return Err(DynamicsError::RotationOutOfRange);
    }
    Ok(())
}

/// Letters `a..=b` of the coding of the rotation by `r` from `x`: letter 0 iff
/// `frac(x + n·r) < r`. `x` is rational or lies in the field of `r`.
pub fn sturmian_code(r: &QuadraticReal, x: &QuadraticReal, a: i64, b: i64) -> Result<Vec<Letter>, DynamicsError> {
    check_rotation(r)?;
    if a > b {
        return Err(DynamicsError::EmptyWindow(a, b));
    }
    (a..=b)
        .map(|n| {
            let y = x.add(&r.mul_int(n as i128)?)?.frac()?;
            Ok(if y.compare(r)? == Ordering::Less { 0 } else { 1 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_floor_and_sign() {
        let phi = QuadraticReal::parse("(1 + 1 sqrt 5)/2").unwrap();
        assert_eq!(phi.floor().unwrap(), 1);
        assert_eq!(phi.neg().floor().unwrap(), -2);
        let r = QuadraticReal::parse("(3 - 1 sqrt 5)/2").unwrap();
        assert_eq!(r.floor().unwrap(), 0);
        assert!((r.to_f64() - 0.381966).abs() < 1e-5);
        assert_eq!(QuadraticReal::parse("(2 + 3 sqrt 4)/2").unwrap(), QuadraticReal::integer(4));
    }

    #[test]
    fn radix_grammar() {
        let d = Radix::parse("d=2,3,(5)^rep").unwrap();
        assert_eq!((0..5).map(|j| d.digit(j)).collect::<Vec<_>>(), vec![2, 3, 5, 5, 5]);
        assert_eq!(d.to_string(), "2,3,(5)^inf");
        assert!(Radix::parse("1,(3)^inf").is_err());
    }
}
