//! Finite words and eventually periodic digit sequences.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A finite word over the alphabet `{0, …, m}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(digits: Vec<u8>) -> Self {
        Word(digits)
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_alphabet(&self, m: u8) -> Result<()> {
        match self.0.iter().find(|&&d| d > m) {
            Some(&digit) => Err(Error::DigitOutOfRange { digit, m }),
            None => Ok(()),
        }
    }

    pub fn reflect(&self, m: u8) -> Word {
        Word(reflect_digits(&self.0, m))
    }

    /// `ω⁺`: last digit incremented. Undefined when the last digit is `m`.
    pub fn plus(&self, m: u8) -> Result<Word> {
        match self.0.last() {
            None => Err(Error::UndefinedWordOp("plus of the empty word".into())),
            Some(&d) if d >= m => Err(Error::UndefinedWordOp(format!(
                "plus of {self}: last digit is already {m}"
            ))),
            Some(_) => {
                let mut v = self.0.clone();
                *v.last_mut().unwrap() += 1;
                Ok(Word(v))
            }
        }
    }

    /// `ω⁻`: last digit decremented. Undefined when the last digit is `0`.
    pub fn minus(&self) -> Result<Word> {
        match self.0.last() {
            None => Err(Error::UndefinedWordOp("minus of the empty word".into())),
            Some(0) => Err(Error::UndefinedWordOp(format!(
                "minus of {self}: last digit is 0"
            ))),
            Some(_) => {
                let mut v = self.0.clone();
                *v.last_mut().unwrap() -= 1;
                Ok(Word(v))
            }
        }
    }

    /// `ω^∞`.
    pub fn repeat(&self) -> Result<PeriodicSeq> {
        PeriodicSeq::new(Vec::new(), self.0.clone())
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.0)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// `"3122"` or, for alphabets past 9, `"10,3,0"`.
    fn from_str(s: &str) -> Result<Self> {
        parse_digits(s).map(Word)
    }
}

/// An eventually periodic sequence `pre · period^∞` in canonical form
/// (shortest period, then shortest preperiod), so that structural equality
/// is sequence equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicSeq {
    pre: Vec<u8>,
    period: Vec<u8>,
}

impl PeriodicSeq {
    pub fn new(pre: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidParams("empty period".into()));
        }
        Ok(canonicalize(pre, period))
    }

    pub fn zeros() -> Self {
        PeriodicSeq {
            pre: Vec::new(),
            period: vec![0],
        }
    }

    pub fn constant(d: u8) -> Self {
        PeriodicSeq {
            pre: Vec::new(),
            period: vec![d],
        }
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// Number of distinct shifts `σ^k x`, `k ≥ 0`.
    pub fn orbit_len(&self) -> usize {
        self.pre.len() + self.period.len()
    }

    /// Digit at 0-based position `i`.
    pub fn digit(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.digit(i)).collect())
    }

    /// Finite in the sense of ending with `0^∞`.
    pub fn is_finite(&self) -> bool {
        self.period == [0]
    }

    pub fn check_alphabet(&self, m: u8) -> Result<()> {
        match self.pre.iter().chain(&self.period).find(|&&d| d > m) {
            Some(&digit) => Err(Error::DigitOutOfRange { digit, m }),
            None => Ok(()),
        }
    }

    pub fn reflect(&self, m: u8) -> PeriodicSeq {
        canonicalize(reflect_digits(&self.pre, m), reflect_digits(&self.period, m))
    }

    /// `σ^k x`.
    pub fn shift(&self, k: usize) -> PeriodicSeq {
        if k <= self.pre.len() {
            return canonicalize(self.pre[k..].to_vec(), self.period.clone());
        }
        let r = (k - self.pre.len()) % self.period.len();
        let mut period = self.period[r..].to_vec();
        period.extend_from_slice(&self.period[..r]);
        canonicalize(Vec::new(), period)
    }

    /// The sequence `w · x`.
    pub fn prepend(&self, w: &[u8]) -> PeriodicSeq {
        let mut pre = w.to_vec();
        pre.extend_from_slice(&self.pre);
        canonicalize(pre, self.period.clone())
    }

    /// Number of leading digits that decide any comparison with `other`.
    fn comparison_horizon(&self, other: &PeriodicSeq) -> usize {
        self.pre.len() + other.pre.len() + self.period.len().lcm(&other.period.len())
    }
}

impl fmt::Display for PeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.pre)?;
        if self.period.len() > 1 {
            write!(f, "(")?;
            write_digits(f, &self.period)?;
            write!(f, ")^∞")
        } else {
            write_digits(f, &self.period)?;
            write!(f, "^∞")
        }
    }
}

impl FromStr for PeriodicSeq {
    type Err = Error;

    /// Accepts the display form: `"31(22)^∞"`, `"21^∞"`, `"(10)^inf"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_suffix("^∞")
            .or_else(|| s.strip_suffix("^inf"))
            .ok_or_else(|| Error::Parse(format!("periodic sequence must end in ^∞: {s:?}")))?;
        if let Some(open) = body.find('(') {
            let inner = body[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
            let pre = parse_digits(&body[..open])?;
            PeriodicSeq::new(pre, parse_digits(inner)?)
        } else {
            // Only the last digit repeats.
            let mut digits = parse_digits(body)?;
            let last = digits
                .pop()
                .ok_or_else(|| Error::Parse(format!("missing period in {s:?}")))?;
            PeriodicSeq::new(digits, vec![last])
        }
    }
}

/// Lexicographic comparison of two eventually periodic sequences, decided
/// exactly from a bounded prefix.
pub fn lex_compare(a: &PeriodicSeq, b: &PeriodicSeq) -> Ordering {
    let horizon = a.comparison_horizon(b);
    for i in 0..horizon {
        match a.digit(i).cmp(&b.digit(i)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// `d(x, y) = 2^{-(first disagreement index) + 1}` with 1-based indices.
pub fn metric_d(x: &PeriodicSeq, y: &PeriodicSeq) -> f64 {
    let horizon = x.comparison_horizon(y);
    match (0..horizon).find(|&i| x.digit(i) != y.digit(i)) {
        Some(i) => 2f64.powi(-(i as i32)),
        None => 0.0,
    }
}

/// An exact eventually periodic sequence, or a truncation of one whose tail
/// is not known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sequence {
    Periodic(PeriodicSeq),
    Truncated(Word),
}

impl Sequence {
    pub fn is_exact(&self) -> bool {
        matches!(self, Sequence::Periodic(_))
    }

    /// Digit at 0-based position `i`, or `None` past a truncation.
    pub fn digit(&self, i: usize) -> Option<u8> {
        match self {
            Sequence::Periodic(p) => Some(p.digit(i)),
            Sequence::Truncated(w) => w.digits().get(i).copied(),
        }
    }

    /// Number of known digits (`None` when exact).
    pub fn known_len(&self) -> Option<usize> {
        match self {
            Sequence::Periodic(_) => None,
            Sequence::Truncated(w) => Some(w.len()),
        }
    }

    pub fn prefix(&self, n: usize) -> Option<Word> {
        match self {
            Sequence::Periodic(p) => Some(p.prefix(n)),
            Sequence::Truncated(w) if w.len() >= n => Some(Word(w.digits()[..n].to_vec())),
            Sequence::Truncated(_) => None,
        }
    }

    pub fn reflect(&self, m: u8) -> Sequence {
        match self {
            Sequence::Periodic(p) => Sequence::Periodic(p.reflect(m)),
            Sequence::Truncated(w) => Sequence::Truncated(w.reflect(m)),
        }
    }

    /// Up to `n` digits, fewer for a short truncation.
    pub fn digits_upto(&self, n: usize) -> Vec<u8> {
        (0..n).map_while(|i| self.digit(i)).collect()
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sequence::Periodic(p) => write!(f, "{p}"),
            Sequence::Truncated(w) => write!(f, "{w}…"),
        }
    }
}

pub(crate) fn reflect_digits(d: &[u8], m: u8) -> Vec<u8> {
    d.iter().map(|&x| m - x).collect()
}

fn canonicalize(mut pre: Vec<u8>, period: Vec<u8>) -> PeriodicSeq {
    let l = period.len();
    let p = (1..=l)
        .find(|&p| l % p == 0 && (p..l).all(|i| period[i] == period[i - p]))
        .unwrap_or(l);
    let mut period = period[..p].to_vec();
    while let Some(&last) = pre.last() {
        if last != *period.last().unwrap() {
            break;
        }
        pre.pop();
        period.rotate_right(1);
    }
    PeriodicSeq { pre, period }
}

fn write_digits(f: &mut fmt::Formatter<'_>, d: &[u8]) -> fmt::Result {
    if d.iter().all(|&x| x < 10) {
        for x in d {
            write!(f, "{x}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn parse_digits(s: &str) -> Result<Vec<u8>> {
    let s = s.trim();
    if s.contains(',') {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad digit {t:?}")))
            })
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
            })
            .collect()
    }
}
