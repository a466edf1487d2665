//! The symmetric β-shift `X_{m,β}`: sequences whose every shift lies
//! between the reflected kneading sequence and the kneading sequence.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expansion::{self, beta_t, transitive_pattern, Params};
use crate::number::NumberField;
use crate::sequence::{lex_compare, PeriodicSeq, Sequence, Word};

/// Default number of kneading digits computed when the expansion of 1 is
/// not eventually periodic.
pub const DEFAULT_KNEADING_DEPTH: usize = 96;

/// Three-valued outcome of a comparison against possibly truncated data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }

    /// Conjunction: any `No` wins, then any `Unknown`.
    pub fn and(self, other: Decision) -> Decision {
        match (self, other) {
            (Decision::No, _) | (_, Decision::No) => Decision::No,
            (Decision::Unknown, _) | (_, Decision::Unknown) => Decision::Unknown,
            _ => Decision::Yes,
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "true",
            Decision::No => "false",
            Decision::Unknown => "unknown",
        })
    }
}

/// `x^{m,β}` and its reflection, the bounds defining the shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kneading {
    m: u8,
    upper: Sequence,
    lower: Sequence,
    depth: usize,
}

impl Kneading {
    pub fn new(p: &Params, depth: usize) -> Self {
        let upper = expansion::quasi_greedy_of_one(p, depth);
        Kneading::from_upper(p.m(), upper, depth)
    }

    /// Kneading data from an explicit upper sequence.
    pub fn from_upper(m: u8, upper: Sequence, depth: usize) -> Self {
        let lower = upper.reflect(m);
        let depth = upper.known_len().unwrap_or(depth);
        Kneading {
            m,
            upper,
            lower,
            depth,
        }
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn upper(&self) -> &Sequence {
        &self.upper
    }

    pub fn lower(&self) -> &Sequence {
        &self.lower
    }

    pub fn is_exact(&self) -> bool {
        self.upper.is_exact()
    }

    /// Number of digits available for comparisons (`usize::MAX` when exact).
    pub fn depth(&self) -> usize {
        if self.is_exact() {
            usize::MAX
        } else {
            self.depth
        }
    }

    /// Whether `upper = m^∞`, i.e. the shift is the full shift.
    pub fn is_full_shift(&self) -> bool {
        matches!(&self.upper, Sequence::Periodic(s) if *s == PeriodicSeq::constant(self.m))
    }

    /// Whether `x^{m,β}` is itself a point of the shift it defines.
    pub fn self_admissible(&self) -> Decision {
        match (&self.upper, &self.lower) {
            (Sequence::Periodic(u), Sequence::Periodic(l)) => {
                let ok = (1..=u.orbit_len()).all(|k| {
                    let s = u.shift(k);
                    lex_compare(&s, u) != Ordering::Greater && lex_compare(&s, l) != Ordering::Less
                });
                Decision::from_bool(ok)
            }
            _ => {
                let u = self.upper.digits_upto(self.depth);
                let mut result = Decision::Yes;
                for k in 1..u.len() {
                    let s = &u[k..];
                    for (bound, bad) in [(&self.upper, Ordering::Greater), (&self.lower, Ordering::Less)] {
                        match compare_prefix(s, bound) {
                            Some(o) if o == bad => return Decision::No,
                            Some(_) => {}
                            None => result = Decision::Unknown,
                        }
                    }
                }
                // A finite window can refute but never certify.
                if result == Decision::Yes {
                    Decision::Unknown
                } else {
                    result
                }
            }
        }
    }
}

impl fmt::Display for Kneading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.upper)
    }
}

/// Compares `s` with the first `s.len()` digits of `bound`.
/// `None` when the comparison runs past the known digits of `bound`.
fn compare_prefix(s: &[u8], bound: &Sequence) -> Option<Ordering> {
    for (i, &d) in s.iter().enumerate() {
        let b = bound.digit(i)?;
        match d.cmp(&b) {
            Ordering::Equal => {}
            o => return Some(o),
        }
    }
    Some(Ordering::Equal)
}

/// Checks only the full word against the bounds; suffixes are assumed
/// admissible already.
fn fits(w: &[u8], k: &Kneading) -> Decision {
    let up = match compare_prefix(w, &k.upper) {
        Some(Ordering::Greater) => return Decision::No,
        Some(_) => Decision::Yes,
        None => Decision::Unknown,
    };
    let lo = match compare_prefix(w, &k.lower) {
        Some(Ordering::Less) => return Decision::No,
        Some(_) => Decision::Yes,
        None => Decision::Unknown,
    };
    up.and(lo)
}

/// Every suffix `s` of `w` satisfies `lower(1..|s|) ⪯ s ⪯ upper(1..|s|)`.
pub fn is_admissible(w: &Word, k: &Kneading) -> Decision {
    let d = w.digits();
    if d.iter().any(|&x| x > k.m) {
        return Decision::No;
    }
    (0..d.len()).fold(Decision::Yes, |acc, i| acc.and(fits(&d[i..], k)))
}

/// Incremental admissibility for words grown to the right.
///
/// Tracks the suffixes that still coincide with a prefix of either bound;
/// only those can be violated by the next digit.
#[derive(Clone, Debug, Default)]
pub struct SuffixTracker {
    /// Lengths of suffixes equal to `upper(1..len)`.
    upper_tight: Vec<usize>,
    lower_tight: Vec<usize>,
}

impl SuffixTracker {
    pub fn new() -> Self {
        Self::default()
    }

    /// Tracker state after `w`, or the verdict if `w` is not admissible.
    pub fn from_word(w: &[u8], k: &Kneading) -> std::result::Result<Self, Decision> {
        let mut t = SuffixTracker::new();
        for &d in w {
            t = t.push(d, k)?;
        }
        Ok(t)
    }

    /// State after appending `d`; `Err(No)` on violation, `Err(Unknown)` when
    /// the kneading data is too short to decide.
    pub fn push(&self, d: u8, k: &Kneading) -> std::result::Result<Self, Decision> {
        let step = |tight: &[usize], bound: &Sequence, bad: Ordering| {
            let mut next = Vec::with_capacity(tight.len() + 1);
            for len in tight.iter().copied().chain(std::iter::once(0)) {
                let b = bound.digit(len).ok_or(Decision::Unknown)?;
                match d.cmp(&b) {
                    Ordering::Equal => next.push(len + 1),
                    o if o == bad => return Err(Decision::No),
                    _ => {}
                }
            }
            Ok(next)
        };
        if d > k.m {
            return Err(Decision::No);
        }
        Ok(SuffixTracker {
            upper_tight: step(&self.upper_tight, &k.upper, Ordering::Greater)?,
            lower_tight: step(&self.lower_tight, &k.lower, Ordering::Less)?,
        })
    }
}

/// Lex-sorted admissible words of a fixed length, stored contiguously.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderBasis {
    m: u8,
    depth: usize,
    digits: Vec<u8>,
}

impl CylinderBasis {
    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.digits.len() / self.depth.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn word(&self, i: usize) -> &[u8] {
        &self.digits[i * self.depth..(i + 1) * self.depth]
    }

    pub fn words(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        self.digits.chunks_exact(self.depth)
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        if w.len() != self.depth {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.word(mid).cmp(w) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.index_of(w).is_some()
    }
}

fn extend_left(prev: &[u8], prev_depth: usize, k: &Kneading) -> Result<Vec<u8>> {
    let n = prev_depth + 1;
    let blocks: Vec<Result<Vec<u8>>> = (0..=k.m)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            let mut w = vec![a; n];
            let chunks: Box<dyn Iterator<Item = &[u8]>> = if prev_depth == 0 {
                Box::new(std::iter::once(&[][..]))
            } else {
                Box::new(prev.chunks_exact(prev_depth))
            };
            for v in chunks {
                w[1..].copy_from_slice(v);
                match fits(&w, k) {
                    Decision::Yes => out.extend_from_slice(&w),
                    Decision::No => {}
                    Decision::Unknown => return Err(Error::Undecided(k.depth)),
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for b in blocks {
        all.extend(b?);
    }
    Ok(all)
}

/// All admissible words of length `n`, built by prepending digits to the
/// admissible words of length `n - 1`.
pub fn enumerate_words(k: &Kneading, n: usize) -> Result<CylinderBasis> {
    Ok(enumerate_all(k, n)?.pop().expect("n >= 1"))
}

/// Bases of every depth `1..=n`.
pub fn enumerate_all(k: &Kneading, n: usize) -> Result<Vec<CylinderBasis>> {
    if n == 0 {
        return Err(Error::InvalidParams("cylinder depth must be at least 1".into()));
    }
    let mut out: Vec<CylinderBasis> = Vec::with_capacity(n);
    let mut prev: Vec<u8> = Vec::new();
    for depth in 1..=n {
        let digits = extend_left(&prev, depth - 1, k)?;
        if digits.is_empty() {
            return Err(Error::EmptyBasis(depth));
        }
        prev = digits.clone();
        out.push(CylinderBasis {
            m: k.m,
            depth,
            digits,
        });
    }
    Ok(out)
}

/// Smallest admissible continuation of `w` to `len` digits, found by
/// depth-first search; `None` when every continuation dies out.
pub fn minimal_continuation(w: &[u8], k: &Kneading, len: usize) -> Result<Option<Vec<u8>>> {
    fn extend(tr: &SuffixTracker, digits: &mut Vec<u8>, len: usize, k: &Kneading) -> Result<bool> {
        if digits.len() >= len {
            return Ok(true);
        }
        for d in 0..=k.m {
            match tr.push(d, k) {
                Ok(next) => {
                    digits.push(d);
                    if extend(&next, digits, len, k)? {
                        return Ok(true);
                    }
                    digits.pop();
                }
                Err(Decision::No) => {}
                Err(_) => return Err(Error::Undecided(k.depth)),
            }
        }
        Ok(false)
    }
    let tracker = match SuffixTracker::from_word(w, k) {
        Ok(t) => t,
        Err(Decision::No) => return Ok(None),
        Err(_) => return Err(Error::Undecided(k.depth)),
    };
    let mut digits = w.to_vec();
    Ok(extend(&tracker, &mut digits, len, k)?.then_some(digits))
}

/// Drops words with no admissible continuation of `lookahead` further
/// digits. Returns the pruned basis and the number of words removed.
///
/// Nothing is removed when the kneading sequence lies in its own shift.
pub fn prune_dead_ends(basis: &CylinderBasis, k: &Kneading, lookahead: usize) -> Result<(CylinderBasis, usize)> {
    let n = basis.depth;
    let keep: Vec<bool> = (0..basis.len())
        .into_par_iter()
        .map(|i| minimal_continuation(basis.word(i), k, n + lookahead).map(|c| c.is_some()))
        .collect::<Result<_>>()?;
    let mut digits = Vec::with_capacity(basis.digits.len());
    for (i, &ok) in keep.iter().enumerate() {
        if ok {
            digits.extend_from_slice(basis.word(i));
        }
    }
    if digits.is_empty() {
        return Err(Error::EmptyBasis(n));
    }
    let removed = keep.iter().filter(|&&b| !b).count();
    Ok((
        CylinderBasis {
            m: basis.m,
            depth: n,
            digits,
        },
        removed,
    ))
}

/// Minimal forbidden words of length at most `n`, ordered by length then
/// lexicographically.
pub fn forbidden_words(k: &Kneading, n: usize) -> Result<Vec<Word>> {
    let bases = enumerate_all(k, n)?;
    let mut out = Vec::new();
    for len in 1..=n {
        let empty: [u8; 0] = [];
        let shorter: Vec<&[u8]> = if len == 1 {
            vec![&empty[..]]
        } else {
            bases[len - 2].words().collect()
        };
        let mut found = Vec::new();
        for a in 0..=k.m {
            for v in &shorter {
                let mut w = Vec::with_capacity(len);
                w.push(a);
                w.extend_from_slice(v);
                let prefix_ok = len == 1 || bases[len - 2].contains(&w[..len - 1]);
                if prefix_ok && !bases[len - 1].contains(&w) {
                    found.push(Word::new(w));
                }
            }
        }
        found.sort();
        out.extend(found);
    }
    Ok(out)
}

/// `{a : a·w(1..n-1)` admissible`}` for a basis word `w` of depth `n`.
pub fn preimage_digits(w: &[u8], basis: &CylinderBasis) -> Vec<u8> {
    let n = basis.depth();
    let mut cand = vec![0u8; n];
    cand[1..].copy_from_slice(&w[..n - 1]);
    (0..=basis.m())
        .filter(|&a| {
            cand[0] = a;
            basis.contains(&cand)
        })
        .collect()
}

/// `{a : a·x ∈ X_{m,β}}` for an admissible point `x`.
pub fn preimage_digits_of_point(x: &PeriodicSeq, k: &Kneading) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for a in 0..=k.m {
        let ax = x.prepend(&[a]);
        let ok = match (&k.upper, &k.lower) {
            (Sequence::Periodic(u), Sequence::Periodic(l)) => {
                lex_compare(&ax, u) != Ordering::Greater && lex_compare(&ax, l) != Ordering::Less
            }
            _ => {
                let d = ax.prefix(k.depth).into_digits();
                match fits(&d, k) {
                    Decision::Yes => true,
                    Decision::No => false,
                    Decision::Unknown => return Err(Error::Undecided(k.depth)),
                }
            }
        };
        if ok {
            out.push(a);
        }
    }
    Ok(out)
}

/// The open interval `(β(m-β+1)/(β-1), β-1)` and the digits inside it.
#[derive(Clone, Debug, PartialEq)]
pub struct DigitInterval {
    pub lo: f64,
    pub hi: f64,
    pub digits: Vec<u8>,
}

pub fn digit_interval(p: &Params) -> DigitInterval {
    let f: &NumberField = p.field();
    let b = f.beta();
    let bm1 = f.sub(&b, &f.one());
    let lo = f.mul(
        &f.mul(&b, &f.sub(&f.from_int(p.m() as i64 + 1), &b)),
        &f.inv(&bm1).expect("beta > 1"),
    );
    let digits = (0..=p.m())
        .filter(|&d| {
            let d = f.from_int(d as i64);
            f.cmp(&lo, &d) == Ordering::Less && f.cmp(&d, &bm1) == Ordering::Less
        })
        .collect();
    DigitInterval {
        lo: f.to_f64(&lo),
        hi: f.to_f64(&bm1),
        digits,
    }
}

/// Outcome of the irreducibility test with the indices that were examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub decision: Decision,
    /// Indices `j` where the comparison was carried out and held.
    pub checked: Vec<usize>,
    /// Indices where `x(j) = 0`, so the reflected block has no successor.
    pub skipped: Vec<usize>,
    /// First `j` where the comparison failed.
    pub failed_at: Option<usize>,
    /// First `j` where the comparison could not be decided.
    pub undecided_at: Option<usize>,
}

/// Tests `x(1..j)·(reflect(x(1..j))⁺)^∞ ≺ x^{m,β}` for `j = 1..=J`.
pub fn is_irreducible(k: &Kneading, max_j: usize) -> IrreducibilityReport {
    let mut report = IrreducibilityReport {
        decision: Decision::Yes,
        checked: Vec::new(),
        skipped: Vec::new(),
        failed_at: None,
        undecided_at: None,
    };
    for j in 1..=max_j {
        let Some(prefix) = k.upper.prefix(j) else {
            report.decision = Decision::Unknown;
            report.undecided_at = Some(j);
            break;
        };
        let Ok(block) = prefix.reflect(k.m).plus(k.m) else {
            report.skipped.push(j);
            continue;
        };
        let candidate = PeriodicSeq::new(prefix.into_digits(), block.into_digits())
            .expect("nonempty block");
        let ord = match &k.upper {
            Sequence::Periodic(u) => Some(lex_compare(&candidate, u)),
            Sequence::Truncated(_) => {
                let d = candidate.prefix(k.depth).into_digits();
                match compare_prefix(&d, &k.upper) {
                    Some(Ordering::Equal) | None => None,
                    o => o,
                }
            }
        };
        match ord {
            Some(Ordering::Less) => report.checked.push(j),
            Some(_) => {
                report.decision = Decision::No;
                report.failed_at = Some(j);
                break;
            }
            None => {
                report.decision = Decision::Unknown;
                report.undecided_at = Some(j);
                break;
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transitivity {
    Transitive,
    NotTransitive,
    Unknown,
}

impl fmt::Display for Transitivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transitivity::Transitive => "transitive",
            Transitivity::NotTransitive => "not_transitive",
            Transitivity::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub verdict: Transitivity,
    pub beta_t_branch: bool,
    pub self_admissible: Decision,
    pub irreducible: IrreducibilityReport,
    pub reason: String,
}

/// Transitive iff `x^{m,β}` is irreducible or `β = β_T`; full shifts are
/// transitive outright.
///
/// The criterion presupposes that `x^{m,β}` is a point of its own shift;
/// when it is not, the verdict is `Unknown`.
pub fn check_transitivity(p: &Params, k: &Kneading, max_j: usize) -> TransitivityReport {
    let pattern = transitive_pattern(p.m());
    let beta_t_branch = match k.upper() {
        Sequence::Periodic(u) => *u == pattern,
        Sequence::Truncated(_) => (p.beta().approx() - beta_t(p.m(), 1e-15)).abs() <= 1e-12,
    };
    let self_admissible = k.self_admissible();
    let irreducible = is_irreducible(k, max_j);
    let (verdict, reason) = if k.is_full_shift() {
        // The irreducibility test degenerates at m = 1, where 1(0⁺)^∞ = u.
        (Transitivity::Transitive, "full shift".to_string())
    } else if beta_t_branch {
        (Transitivity::Transitive, "beta equals beta_T".to_string())
    } else if self_admissible == Decision::No {
        (
            Transitivity::Unknown,
            "criterion not applicable: the kneading sequence leaves its own shift".to_string(),
        )
    } else {
        match irreducible.decision {
            Decision::Yes => (
                Transitivity::Transitive,
                format!("irreducible up to j = {max_j}"),
            ),
            Decision::No => (
                Transitivity::NotTransitive,
                format!("irreducibility fails at j = {}", irreducible.failed_at.unwrap_or(0)),
            ),
            Decision::Unknown => (
                Transitivity::Unknown,
                format!(
                    "irreducibility undecided at j = {}",
                    irreducible.undecided_at.unwrap_or(0)
                ),
            ),
        }
    };
    TransitivityReport {
        verdict,
        beta_t_branch,
        self_admissible,
        irreducible,
        reason,
    }
}

/// Default `J` for the irreducibility test: enough to cover two orbits of
/// an exact kneading sequence, or the whole known window otherwise.
pub fn default_irreducibility_depth(k: &Kneading) -> usize {
    match k.upper() {
        Sequence::Periodic(u) => (2 * u.orbit_len()).max(16),
        Sequence::Truncated(w) => w.len(),
    }
}

/// Whether greedy and lazy expansions of `a` agree.
pub fn unique_expansion_test(a: &crate::number::Scalar, p: &Params, depth: usize) -> Result<Decision> {
    let g = expansion::greedy_sequence(a, p, depth)?;
    let l = expansion::lazy_sequence(a, p, depth)?;
    Ok(match (&g.exact, &l.exact) {
        (Some(x), Some(y)) => Decision::from_bool(x == y),
        _ => Decision::from_bool(g.digits == l.digits),
    })
}

/// Number of words of each length `1..=n`.
pub fn word_counts(k: &Kneading, n: usize) -> Result<Vec<usize>> {
    Ok(enumerate_all(k, n)?.iter().map(CylinderBasis::len).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kneading(m: u8, beta: &str) -> (Params, Kneading) {
        let p = Params::parse(m, beta).unwrap();
        let k = Kneading::new(&p, DEFAULT_KNEADING_DEPTH);
        (p, k)
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Brute-force oracle: every word over the alphabet through `is_admissible`.
    fn brute_force(k: &Kneading, n: usize) -> Vec<Vec<u8>> {
        let base = k.m() as usize + 1;
        let mut out = Vec::new();
        for code in 0..base.pow(n as u32) {
            let mut d = vec![0u8; n];
            let mut c = code;
            for i in (0..n).rev() {
                d[i] = (c % base) as u8;
                c /= base;
            }
            if is_admissible(&Word::new(d.clone()), k) == Decision::Yes {
                out.push(d);
            }
        }
        out
    }

    #[test]
    fn full_shift_admits_everything() {
        let (_, k) = kneading(3, "4");
        assert!(k.is_full_shift());
        assert_eq!(is_admissible(&w("3030"), &k), Decision::Yes);
        assert_eq!(enumerate_words(&k, 2).unwrap().len(), 16);
        assert!(forbidden_words(&k, 4).unwrap().is_empty());
    }

    #[test]
    fn beta_t_for_m_two() {
        let (_, k) = kneading(2, "beta_T");
        assert_eq!(is_admissible(&w("22"), &k), Decision::No);
        assert_eq!(is_admissible(&w("00"), &k), Decision::No);
        assert_eq!(is_admissible(&w("21"), &k), Decision::Yes);
        let basis = enumerate_words(&k, 2).unwrap();
        assert_eq!(basis.len(), 7);
        assert_eq!(forbidden_words(&k, 2).unwrap(), vec![w("00"), w("22")]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (m, beta) in [(2, "beta_T"), (3, "3.5"), (4, "4"), (3, "golden"), (5, "4.2")] {
            let (_, k) = kneading(m, beta);
            for n in 1..=5 {
                let basis = enumerate_words(&k, n).unwrap();
                let got: Vec<Vec<u8>> = basis.words().map(<[u8]>::to_vec).collect();
                assert_eq!(got, brute_force(&k, n), "m={m} beta={beta} n={n}");
            }
        }
    }

    #[test]
    fn forbidden_words_are_minimal() {
        let (_, k) = kneading(3, "3.5");
        let fw = forbidden_words(&k, 6).unwrap();
        assert!(!fw.is_empty());
        for f in &fw {
            assert_eq!(is_admissible(f, &k), Decision::No);
            let d = f.digits();
            for i in 0..d.len() {
                for j in i + 1..=d.len() {
                    if j - i < d.len() {
                        assert_eq!(is_admissible(&Word::from(&d[i..j]), &k), Decision::Yes);
                    }
                }
            }
        }
    }

    #[test]
    fn digit_intervals() {
        let p = Params::parse(3, "3.5").unwrap();
        let di = digit_interval(&p);
        assert!((di.lo - 0.7).abs() < 1e-15 && (di.hi - 2.5).abs() < 1e-15);
        assert_eq!(di.digits, vec![1, 2]);
        let di = digit_interval(&Params::parse(4, "4").unwrap());
        assert!((di.lo - 4.0 / 3.0).abs() < 1e-15 && (di.hi - 3.0).abs() < 1e-15);
        assert_eq!(di.digits, vec![2]);
        let di = digit_interval(&Params::parse(5, "6").unwrap());
        assert_eq!((di.lo, di.hi), (0.0, 5.0));
        assert_eq!(di.digits, vec![1, 2, 3, 4]);
    }

    #[test]
    fn preimages() {
        let (_, k) = kneading(3, "4");
        let basis = enumerate_words(&k, 3).unwrap();
        assert_eq!(preimage_digits(&[1, 2, 3], &basis), vec![0, 1, 2, 3]);
        let (p, k) = kneading(3, "3.5");
        let basis = enumerate_words(&k, 5).unwrap();
        let guaranteed = digit_interval(&p).digits;
        for word in basis.words() {
            let pre = preimage_digits(word, &basis);
            assert!(guaranteed.iter().all(|d| pre.contains(d)), "{word:?}");
        }
        // 0·(12)^∞ starts 01 and falls below the reflected bound 02…
        let x: PeriodicSeq = "(12)^∞".parse().unwrap();
        assert_eq!(preimage_digits_of_point(&x, &k).unwrap(), vec![1, 2, 3]);
        let (_, k) = kneading(2, "beta_T");
        let x: PeriodicSeq = "1^∞".parse().unwrap();
        assert_eq!(preimage_digits_of_point(&x, &k).unwrap(), vec![0, 1, 2]);
        let x: PeriodicSeq = "2(1)^∞".parse().unwrap();
        // 22... > 21^∞; 02... ok; 12... ok
        assert_eq!(preimage_digits_of_point(&x, &k).unwrap(), vec![0, 1]);
    }

    #[test]
    fn irreducibility_literal_examples() {
        let (_, k) = kneading(2, "beta_T");
        let r = is_irreducible(&k, 3);
        // j = 1 gives 2·1^∞, equal to the kneading sequence, not below it.
        assert_eq!(r.decision, Decision::No);
        assert_eq!(r.failed_at, Some(1));
        let (_, k) = kneading(3, "4");
        assert_eq!(is_irreducible(&k, 10).decision, Decision::Yes);
        assert_eq!(is_irreducible(&k, 0).decision, Decision::Yes);
    }

    #[test]
    fn transitivity_verdicts() {
        let (p, k) = kneading(2, "beta_T");
        let r = check_transitivity(&p, &k, 8);
        assert_eq!(r.verdict, Transitivity::Transitive);
        assert!(r.beta_t_branch);
        let (p, k) = kneading(3, "4");
        assert_eq!(check_transitivity(&p, &k, 8).verdict, Transitivity::Transitive);
        let (p, k) = kneading(3, "3.5");
        assert!(!k.is_exact());
        assert_eq!(k.self_admissible(), Decision::No);
        assert_eq!(check_transitivity(&p, &k, 20).verdict, Transitivity::Unknown);
        for (m, beta) in [(4u8, "4"), (6, "5"), (4, "5")] {
            let (p, k) = kneading(m, beta);
            let r = check_transitivity(&p, &k, 16);
            assert_eq!(r.verdict, Transitivity::Transitive, "m={m} beta={beta}");
        }
    }

    #[test]
    fn truncated_kneading_surfaces_unknown() {
        let p = Params::parse(3, "3.5").unwrap();
        let k = Kneading::new(&p, 4);
        assert_eq!(k.upper().known_len(), Some(4));
        // Equal to the first four kneading digits and one more digit.
        let u = k.upper().digits_upto(4);
        let mut word = u.clone();
        word.push(0);
        assert_eq!(is_admissible(&Word::new(word), &k), Decision::Unknown);
        assert!(matches!(enumerate_words(&k, 6), Err(Error::Undecided(4))));
    }

    #[test]
    fn unique_expansions() {
        let p = Params::parse(1, "golden").unwrap();
        let f = p.field();
        assert_eq!(unique_expansion_test(&f.zero(), &p, 30).unwrap(), Decision::Yes);
        assert_eq!(unique_expansion_test(&p.max_value(), &p, 30).unwrap(), Decision::Yes);
        assert_eq!(unique_expansion_test(&f.one(), &p, 30).unwrap(), Decision::No);
    }

    #[test]
    fn dead_ends() {
        let (_, k) = kneading(3, "3.5");
        // 0211 follows the reflected bound, whose fourth shift exceeds it.
        assert_eq!(is_admissible(&w("0211"), &k), Decision::Yes);
        assert_eq!(minimal_continuation(&[0, 2, 1, 1], &k, 12).unwrap(), None);
        let basis = enumerate_words(&k, 5).unwrap();
        let (pruned, removed) = prune_dead_ends(&basis, &k, 24).unwrap();
        assert!(removed > 0);
        assert_eq!(pruned.len() + removed, basis.len());
        for (_, k) in [kneading(3, "4"), kneading(4, "4"), kneading(2, "beta_T")] {
            let basis = enumerate_words(&k, 5).unwrap();
            assert_eq!(prune_dead_ends(&basis, &k, 24).unwrap().1, 0);
        }
    }

    #[test]
    fn suffix_tracker_agrees_with_full_check() {
        let (_, k) = kneading(3, "3.5");
        for word in brute_force(&kneading(3, "4").1, 4) {
            let full = is_admissible(&Word::new(word.clone()), &k);
            let inc = SuffixTracker::from_word(&word, &k).map(|_| Decision::Yes);
            assert_eq!(inc.unwrap_or_else(|e| e), full, "{word:?}");
        }
    }
}
