//! Eventually periodic one-sided and two-sided words over a declared alphabet.
//!
//! Letters are indices into an [`Alphabet`]; the alphabet order is the order used
//! for every canonical sort in the crate. One-sided words are `u(v)^inf`, two-sided
//! words are `(u)^inf.w(v)^inf` with the dot in front of coordinate 0.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub type Letter = u16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate letter `{0}` in alphabet")]
    DuplicateLetter(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("cycle must be nonempty")]
    EmptyCycle,
    #[error("cannot parse word `{0}`: {1}")]
    Syntax(String, String),
}

/// Ordered finite list of letter tokens.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        for (i, l) in letters.iter().enumerate() {
            if letters[..i].contains(l) {
                return Err(WordError::DuplicateLetter(l.clone()));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Numerals `0..n`, followed by the given marker tokens.
    pub fn numerals_with(n: usize, markers: &[&str]) -> Self {
        let mut letters: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        letters.extend(markers.iter().map(|m| m.to_string()));
        Alphabet::new(letters).expect("numerals and markers are distinct")
    }

    pub fn numerals(n: usize) -> Self {
        Self::numerals_with(n, &[])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.letters
    }

    pub fn token(&self, l: Letter) -> &str {
        &self.letters[l as usize]
    }

    pub fn index(&self, token: &str) -> Option<Letter> {
        self.letters.iter().position(|t| t == token).map(|i| i as Letter)
    }

    pub fn letter(&self, token: &str) -> Result<Letter, WordError> {
        self.index(token).ok_or_else(|| WordError::UnknownLetter(token.to_string()))
    }

    /// True when some token is longer than one character; words are then written
    /// with comma-separated letters.
    pub fn is_wide(&self) -> bool {
        self.letters.iter().any(|t| t.chars().count() > 1)
    }

    /// Numeric value of a numeral letter.
    pub fn value(&self, l: Letter) -> Option<usize> {
        self.token(l).parse().ok()
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        let sep = if self.is_wide() { "," } else { "" };
        w.iter().map(|&l| self.token(l)).collect::<Vec<_>>().join(sep)
    }

    fn join_parts(&self, parts: &[String]) -> String {
        let sep = if self.is_wide() { "," } else { "" };
        parts.iter().filter(|p| !p.is_empty()).cloned().collect::<Vec<_>>().join(sep)
    }

    /// Parse a finite word (no parentheses).
    pub fn parse_word(&self, s: &str) -> Result<Vec<Letter>, WordError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        if s.contains(',') {
            return s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| self.letter(t)).collect();
        }
        let chars: Result<Vec<Letter>, WordError> = s.chars().map(|c| self.letter(&c.to_string())).collect();
        match chars {
            Ok(w) => Ok(w),
            Err(e) => self.index(s).map(|l| vec![l]).ok_or(e),
        }
    }
}

// Splits `u(v)^inf` style text into (head, cycle) strings.
fn split_periodic<'a>(s: &'a str, whole: &str) -> Result<(&'a str, &'a str, &'a str), WordError> {
    let open = s.find('(').ok_or_else(|| WordError::Syntax(whole.into(), "missing `(`".into()))?;
    let close =
        s[open..].find(')').map(|i| i + open).ok_or_else(|| WordError::Syntax(whole.into(), "missing `)`".into()))?;
    let rest = &s[close + 1..];
    let rest = rest
        .strip_prefix("^inf")
        .or_else(|| rest.strip_prefix("^rep"))
        .ok_or_else(|| WordError::Syntax(whole.into(), "expected `^inf` after `)`".into()))?;
    Ok((&s[..open], &s[open + 1..close], rest))
}

fn strip_commas(s: &str) -> &str {
    s.trim().trim_matches(',')
}

fn primitive_root(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]) {
            return w[..p].to_vec();
        }
    }
    w.to_vec()
}

fn rotate_left(w: &mut [Letter], k: usize) {
    if !w.is_empty() {
        let k = k % w.len();
        w.rotate_left(k);
    }
}

/// `head · cycle^∞` indexed by ω, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UltWord {
    head: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl UltWord {
    pub fn new(head: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self, WordError> {
        if cycle.is_empty() {
            return Err(WordError::EmptyCycle);
        }
        let mut head = head;
        let mut cycle = primitive_root(&cycle);
        while let (Some(&h), Some(&c)) = (head.last(), cycle.last()) {
            if h != c {
                break;
            }
            head.pop();
            cycle.rotate_right(1);
        }
        Ok(UltWord { head, cycle })
    }

    /// Panicking constructor for words built by the crate itself.
    pub fn of(head: &[Letter], cycle: &[Letter]) -> Self {
        Self::new(head.to_vec(), cycle.to_vec()).expect("nonempty cycle")
    }

    pub fn constant(l: Letter) -> Self {
        UltWord { head: Vec::new(), cycle: vec![l] }
    }

    pub fn head(&self) -> &[Letter] {
        &self.head
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    pub fn letter(&self, i: usize) -> Letter {
        if i < self.head.len() {
            self.head[i]
        } else {
            self.cycle[(i - self.head.len()) % self.cycle.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<Letter> {
        (0..n).map(|i| self.letter(i)).collect()
    }

    /// The word with its first `k` letters removed.
    pub fn drop_front(&self, k: usize) -> UltWord {
        if k <= self.head.len() {
            UltWord::of(&self.head[k..], &self.cycle)
        } else {
            let mut c = self.cycle.clone();
            rotate_left(&mut c, k - self.head.len());
            UltWord::of(&[], &c)
        }
    }

    pub fn prepend(&self, w: &[Letter]) -> UltWord {
        let mut head = w.to_vec();
        head.extend_from_slice(&self.head);
        UltWord::of(&head, &self.cycle)
    }

    pub fn factors(&self, m: usize) -> BTreeSet<Vec<Letter>> {
        let starts = self.head.len() + self.cycle.len();
        (0..starts).map(|i| (i..i + m).map(|j| self.letter(j)).collect()).collect()
    }

    pub fn parse(s: &str, alpha: &Alphabet) -> Result<Self, WordError> {
        let t = s.trim();
        let (head, cycle, rest) = split_periodic(t, s)?;
        if !rest.trim().is_empty() {
            return Err(WordError::Syntax(s.into(), "trailing text".into()));
        }
        let head = alpha.parse_word(strip_commas(head))?;
        let cycle = alpha.parse_word(strip_commas(cycle))?;
        UltWord::new(head, cycle)
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        let head = alpha.format_word(&self.head);
        let cyc = format!("({})^inf", alpha.format_word(&self.cycle));
        alpha.join_parts(&[head, cyc])
    }
}

/// `…L L · C R R…` over ℤ in canonical form. `start` is the coordinate of the first
/// core letter (or of the first right-cycle letter when the core is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiWord {
    left: Vec<Letter>,
    core: Vec<Letter>,
    right: Vec<Letter>,
    start: i64,
}

impl BiWord {
    /// `left^∞ · core · right^∞` with core(0) at coordinate `start`.
    pub fn from_parts(left: Vec<Letter>, core: Vec<Letter>, right: Vec<Letter>, start: i64) -> Result<Self, WordError> {
        if left.is_empty() || right.is_empty() {
            return Err(WordError::EmptyCycle);
        }
        let raw = BiWord { left: primitive_root(&left), core, right: primitive_root(&right), start };
        Ok(raw.normalize())
    }

    /// `left^∞ · core · right^∞` with core(0) at coordinate 0.
    pub fn new(left: Vec<Letter>, core: Vec<Letter>, right: Vec<Letter>) -> Result<Self, WordError> {
        Self::from_parts(left, core, right, 0)
    }

    pub fn of(left: &[Letter], core: &[Letter], right: &[Letter]) -> Self {
        Self::new(left.to_vec(), core.to_vec(), right.to_vec()).expect("nonempty cycles")
    }

    /// `w^ℤ` with w(0) at coordinate 0.
    pub fn periodic(w: &[Letter]) -> Self {
        Self::of(w, &[], w)
    }

    fn normalize(self) -> Self {
        let BiWord { mut left, mut core, mut right, mut start } = self;
        // Absorb core letters continuing the left cycle.
        while !core.is_empty() && core[0] == left[0] {
            core.remove(0);
            left.rotate_left(1);
            start += 1;
        }
        if core.is_empty() {
            // Left and right rays may continue each other; bounded by Fine-Wilf.
            let limit = 2 * (left.len() + right.len()) + 2;
            let mut steps = 0;
            while right[0] == left[0] && steps < limit {
                left.rotate_left(1);
                right.rotate_left(1);
                start += 1;
                steps += 1;
            }
            if steps == limit {
                // Purely periodic: cycle read from coordinate 0.
                let p = right.len() as i64;
                let mut cyc = right.clone();
                rotate_left(&mut cyc, (-start).rem_euclid(p) as usize);
                return BiWord { left: cyc.clone(), core: Vec::new(), right: cyc, start: 0 };
            }
        }
        while let (Some(&c), Some(&r)) = (core.last(), right.last()) {
            if c != r {
                break;
            }
            core.pop();
            right.rotate_right(1);
        }
        BiWord { left, core, right, start }
    }

    pub fn left_cycle(&self) -> &[Letter] {
        &self.left
    }

    pub fn core(&self) -> &[Letter] {
        &self.core
    }

    pub fn right_cycle(&self) -> &[Letter] {
        &self.right
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.core.is_empty() && self.start == 0 && self.left == self.right
    }

    pub fn letter(&self, i: i64) -> Letter {
        let end = self.start + self.core.len() as i64;
        if i < self.start {
            self.left[(i - self.start).rem_euclid(self.left.len() as i64) as usize]
        } else if i < end {
            self.core[(i - self.start) as usize]
        } else {
            self.right[((i - end) as usize) % self.right.len()]
        }
    }

    pub fn window(&self, a: i64, len: usize) -> Vec<Letter> {
        (0..len as i64).map(|k| self.letter(a + k)).collect()
    }

    /// result(i) = self(i + k).
    pub fn shift(&self, k: i64) -> BiWord {
        BiWord { left: self.left.clone(), core: self.core.clone(), right: self.right.clone(), start: self.start - k }
            .normalize()
    }

    pub fn factors(&self, m: usize) -> BTreeSet<Vec<Letter>> {
        let lo = self.start - m as i64 - self.left.len() as i64;
        let hi = self.start + self.core.len() as i64 + self.right.len() as i64;
        (lo..hi).map(|i| self.window(i, m)).collect()
    }

    pub fn parse(s: &str, alpha: &Alphabet) -> Result<Self, WordError> {
        let t = s.trim();
        let (pre, left, rest) = split_periodic(t, s)?;
        if !pre.trim().is_empty() {
            return Err(WordError::Syntax(s.into(), "text before left cycle".into()));
        }
        let (mid, right, tail) = split_periodic(rest, s)?;
        if !tail.trim().is_empty() {
            return Err(WordError::Syntax(s.into(), "trailing text".into()));
        }
        let dot = mid.find('.').ok_or_else(|| WordError::Syntax(s.into(), "missing `.` before coordinate 0".into()))?;
        let before = alpha.parse_word(strip_commas(&mid[..dot]))?;
        let after = alpha.parse_word(strip_commas(&mid[dot + 1..]))?;
        let start = -(before.len() as i64);
        let mut core = before;
        core.extend(after);
        BiWord::from_parts(alpha.parse_word(strip_commas(left))?, core, alpha.parse_word(strip_commas(right))?, start)
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        let lo = self.start.min(0);
        let mut hi = (self.start + self.core.len() as i64).max(0);
        let p = self.left.len() as i64;
        let left: Vec<Letter> = (lo - p..lo).map(|i| self.letter(i)).collect();
        // Spell the right cycle like the left one when they are conjugate.
        if left.len() == self.right.len() {
            if let Some(t) = (0..p).find(|&t| self.window(hi + t, left.len()) == left) {
                hi += t;
            }
        }
        let before: Vec<Letter> = (lo..0).map(|i| self.letter(i)).collect();
        let after: Vec<Letter> = (0..hi).map(|i| self.letter(i)).collect();
        let right = self.window(hi, self.right.len());
        let l = format!("({})^inf", alpha.format_word(&left));
        let r = format!("({})^inf", alpha.format_word(&right));
        let a = alpha.join_parts(&[l, alpha.format_word(&before)]);
        let b = alpha.join_parts(&[alpha.format_word(&after), r]);
        format!("{a}.{b}")
    }
}

/// Two-sided point whose left side is periodic and whose right side is an explicit
/// (long, materialized) finite word. Used for points that are not eventually periodic.
#[derive(Clone, Debug)]
pub struct GenPoint {
    left: Arc<Vec<Letter>>,
    right: Arc<Vec<Letter>>,
    shift: i64,
}

impl GenPoint {
    pub fn new(left: Vec<Letter>, right: Vec<Letter>) -> Self {
        GenPoint { left: Arc::new(left), right: Arc::new(right), shift: 0 }
    }

    pub fn shifted(&self, k: i64) -> GenPoint {
        GenPoint { left: self.left.clone(), right: self.right.clone(), shift: self.shift + k }
    }

    pub fn offset(&self) -> i64 {
        self.shift
    }

    /// Number of materialized coordinates to the right of 0 (for the unshifted point).
    pub fn materialized(&self) -> usize {
        self.right.len()
    }

    pub fn try_letter(&self, i: i64) -> Option<Letter> {
        let j = i + self.shift;
        if j < 0 {
            Some(self.left[j.rem_euclid(self.left.len() as i64) as usize])
        } else {
            self.right.get(j as usize).copied()
        }
    }

    pub fn letter(&self, i: i64) -> Letter {
        self.try_letter(i).expect("coordinate beyond the materialized part of a generated point")
    }
}

impl PartialEq for GenPoint {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.right, &other.right) && self.shift == other.shift
    }
}

impl Eq for GenPoint {}

impl std::hash::Hash for GenPoint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        Arc::as_ptr(&self.right).hash(state);
        self.shift.hash(state);
    }
}

/// Level `n` reads the coordinates 0, -1, 1, -2, 2, ... of a two-sided point.
pub fn level_coordinate(t: usize) -> i64 {
    if t.is_multiple_of(2) {
        (t / 2) as i64
    } else {
        -(t.div_ceil(2) as i64)
    }
}

/// A representable point of a symbolic space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    One(UltWord),
    Two(BiWord),
    Gen(GenPoint),
}

impl Point {
    pub fn two_sided(&self) -> bool {
        !matches!(self, Point::One(_))
    }

    /// The first `n` letters in level order (see [`level_coordinate`]).
    pub fn level_prefix(&self, n: usize) -> Prefix {
        let letters = match self {
            Point::One(w) => w.prefix(n),
            Point::Two(b) => (0..n).map(|t| b.letter(level_coordinate(t))).collect(),
            Point::Gen(g) => (0..n).map(|t| g.letter(level_coordinate(t))).collect(),
        };
        Prefix { letters, two_sided: self.two_sided() }
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        match self {
            Point::One(w) => w.display(alpha),
            Point::Two(b) => b.display(alpha),
            Point::Gen(g) => {
                let p = g.left.len() as i64;
                let left: Vec<Letter> = (-p..0).map(|i| g.letter(i - g.shift.max(0) - p)).collect();
                let shown: Vec<Letter> = (0..24).filter_map(|i| g.try_letter(i)).collect();
                format!("({})^inf...{}.{}...", alpha.format_word(&left), g.shift, alpha.format_word(&shown))
            }
        }
    }
}

/// A cylinder label: finite word in level order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prefix {
    pub letters: Vec<Letter>,
    pub two_sided: bool,
}

impl Prefix {
    pub fn one_sided(letters: Vec<Letter>) -> Self {
        Prefix { letters, two_sided: false }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn truncate(&self, n: usize) -> Prefix {
        Prefix { letters: self.letters[..n.min(self.letters.len())].to_vec(), two_sided: self.two_sided }
    }

    pub fn is_prefix_of(&self, other: &Prefix) -> bool {
        other.letters.starts_with(&self.letters)
    }

    /// One-sided: the word itself. Two-sided: the window in coordinate order with a
    /// dot in front of coordinate 0.
    pub fn display(&self, alpha: &Alphabet) -> String {
        if !self.two_sided {
            return alpha.format_word(&self.letters);
        }
        let mut coords: Vec<(i64, Letter)> =
            self.letters.iter().enumerate().map(|(t, &l)| (level_coordinate(t), l)).collect();
        coords.sort();
        let before: Vec<Letter> = coords.iter().filter(|(c, _)| *c < 0).map(|x| x.1).collect();
        let after: Vec<Letter> = coords.iter().filter(|(c, _)| *c >= 0).map(|x| x.1).collect();
        format!("{}.{}", alpha.format_word(&before), alpha.format_word(&after))
    }

    /// Inverse of [`Prefix::display`].
    pub fn parse(s: &str, alpha: &Alphabet, two_sided: bool) -> Result<Prefix, WordError> {
        if !two_sided {
            return Ok(Prefix::one_sided(alpha.parse_word(s)?));
        }
        let dot = s.find('.').ok_or_else(|| WordError::Syntax(s.into(), "missing `.`".into()))?;
        let before = alpha.parse_word(strip_commas(&s[..dot]))?;
        let after = alpha.parse_word(strip_commas(&s[dot + 1..]))?;
        let n = before.len() + after.len();
        let mut letters = Vec::with_capacity(n);
        for t in 0..n {
            let c = level_coordinate(t);
            let l = if c < 0 {
                let idx = before.len() as i64 + c;
                if idx < 0 {
                    return Err(WordError::Syntax(s.into(), "window is not a level window".into()));
                }
                before[idx as usize]
            } else {
                *after
                    .get(c as usize)
                    .ok_or_else(|| WordError::Syntax(s.into(), "window is not a level window".into()))?
            };
            letters.push(l);
        }
        Ok(Prefix { letters, two_sided: true })
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Alphabet {
        Alphabet::numerals(2)
    }

    #[test]
    fn canonical_head_and_cycle() {
        let a = bin();
        let x = UltWord::parse("0(10)^inf", &a).unwrap();
        let y = UltWord::parse("01(01)^inf", &a).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.display(&a), "(01)^inf");
        let z = UltWord::parse("(00)^inf", &a).unwrap();
        assert_eq!(z, UltWord::constant(0));
        assert_ne!(UltWord::parse("0(1)^inf", &a).unwrap(), UltWord::parse("1(0)^inf", &a).unwrap());
    }

    #[test]
    fn wide_words() {
        let a = Alphabet::new(["c", "a", "abar"]).unwrap();
        let w = UltWord::parse("c,a,(abar)^inf", &a).unwrap();
        assert_eq!(a.format_word(&w.prefix(4)), "c,a,abar,abar");
        assert_eq!(w.display(&a), "c,a,(abar)^inf");
        assert_eq!(UltWord::parse(&w.display(&a), &a).unwrap(), w);
    }

    #[test]
    fn biword_display_roundtrip() {
        let a = bin();
        for s in ["(01)^inf.1(01)^inf", "(01)^inf1.(01)^inf", "(01)^inf.(01)^inf", "(0)^inf.(1)^inf"] {
            let b = BiWord::parse(s, &a).unwrap();
            assert_eq!(b.display(&a), s);
        }
        let beta = BiWord::parse("(01)^inf.1(01)^inf", &a).unwrap();
        assert_eq!(beta.shift(1).display(&a), "(01)^inf1.(01)^inf");
        let alpha0 = BiWord::parse("(01)^inf.(01)^inf", &a).unwrap();
        assert_eq!(alpha0.letter(-1), 1);
        assert_eq!(alpha0.letter(-2), 0);
    }

    #[test]
    fn two_sided_prefix_display() {
        let a = bin();
        let beta = Point::Two(BiWord::parse("(01)^inf.1(01)^inf", &a).unwrap());
        let p = beta.level_prefix(4);
        assert_eq!(p.display(&a), "01.10");
        assert_eq!(Prefix::parse("01.10", &a, true).unwrap(), p);
    }
}
