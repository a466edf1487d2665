//! Expansions of real numbers in base `β` over the alphabet `{0, …, m}`.
//!
//! All digit recursions run in exact arithmetic (see [`crate::number`]).
//! Remainders of the greedy recursion are tracked, so an expansion whose
//! remainders cycle is recovered as an exact [`PeriodicSeq`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::number::{parse_rational, rat_from_f64, NumberField, Rat, Scalar};
use crate::sequence::{PeriodicSeq, Sequence, Word};

/// Greedy remainders are tracked for at least this many steps when looking
/// for an exact period.
pub const CYCLE_SEARCH_STEPS: usize = 256;

/// The base `β`, held exactly.
#[derive(Clone, Debug)]
pub struct Beta {
    field: Arc<NumberField>,
    label: String,
}

impl Beta {
    pub fn rational(r: Rat) -> Self {
        let label = if r.is_integer() {
            r.to_integer().to_string()
        } else {
            format!("{r}")
        };
        Beta {
            field: Arc::new(NumberField::rational(r)),
            label,
        }
    }

    pub fn integer(k: i64) -> Self {
        Beta::rational(Rat::from_integer(BigInt::from(k)))
    }

    /// Decimal (`"3.5"`) or fraction (`"7/2"`) input, kept exact.
    pub fn parse_decimal(s: &str) -> Result<Self> {
        let mut b = Beta::rational(parse_rational(s)?);
        b.label = s.trim().to_string();
        Ok(b)
    }

    /// The generalized golden ratio `G(m)`.
    pub fn golden(m: u8) -> Result<Self> {
        check_m(m)?;
        let k = (m / 2) as i64;
        if m % 2 == 0 {
            let mut b = Beta::integer(k + 1);
            b.label = "golden".into();
            return Ok(b);
        }
        // x² - (k+1)x - (k+1)
        Beta::from_poly(&[-(k + 1), -(k + 1), 1], golden_ratio(m), "golden")
    }

    /// `β_T`: the base whose quasi-greedy expansion of 1 is
    /// `(k+1)k^∞` (m = 2k) or `(k+1)((k+1)k)^∞` (m = 2k+1).
    pub fn transitive_base(m: u8) -> Result<Self> {
        check_m(m)?;
        let k = (m / 2) as i64;
        let approx = beta_t(m, 1e-15);
        if m % 2 == 0 {
            // x² - (k+2)x + 1
            Beta::from_poly(&[1, -(k + 2), 1], approx, "beta_T")
        } else {
            // x³ - (k+1)x² - (k+2)x + 1
            Beta::from_poly(&[1, -(k + 2), -(k + 1), 1], approx, "beta_T")
        }
    }

    /// Parses a decimal, a fraction, or one of the named constants
    /// `golden`, `beta_T`, `m+1`.
    pub fn parse(s: &str, m: u8) -> Result<Self> {
        match s.trim() {
            "golden" => Beta::golden(m),
            "beta_T" | "beta_t" | "betaT" => Beta::transitive_base(m),
            "m+1" => {
                let mut b = Beta::integer(m as i64 + 1);
                b.label = "m+1".into();
                Ok(b)
            }
            other => Beta::parse_decimal(other),
        }
    }

    fn from_poly(coeffs: &[i64], approx: f64, label: &str) -> Result<Self> {
        let w = 1e-9 * approx.max(1.0);
        let field = NumberField::from_integer_poly(
            coeffs,
            rat_from_f64(approx - w),
            rat_from_f64(approx + w),
        )?;
        Ok(Beta {
            field: Arc::new(field),
            label: label.into(),
        })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn approx(&self) -> f64 {
        self.field.approx()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Whether both values are the same real number.
    pub fn exact_eq(&self, other: &Beta) -> bool {
        self.field.same_as(&other.field)
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (≈{})", self.label, self.approx())
    }
}

/// The pair `(m, β)` and its derived constants.
#[derive(Clone, Debug)]
pub struct Params {
    m: u8,
    beta: Beta,
    golden_ratio: f64,
    beta_t: f64,
    operator_regime: bool,
}

impl Params {
    pub fn new(m: u8, beta: Beta) -> Result<Self> {
        check_m(m)?;
        let f = beta.field();
        let b = f.beta();
        if f.sign(&f.sub(&b, &f.one())) != Ordering::Greater {
            return Err(Error::InvalidParams(format!("beta must exceed 1, got {beta}")));
        }
        if f.sign(&f.sub(&b, &f.from_int(m as i64 + 1))) == Ordering::Greater {
            return Err(Error::InvalidParams(format!(
                "beta must not exceed m + 1 = {}, got {beta}",
                m as u32 + 1
            )));
        }
        // β ≥ m/2 + 2  ⟺  2β - m - 4 ≥ 0
        let regime_gap = f.sub(&f.mul(&f.from_int(2), &b), &f.from_int(m as i64 + 4));
        let operator_regime = m > 2 && f.sign(&regime_gap) != Ordering::Less;
        Ok(Params {
            m,
            golden_ratio: golden_ratio(m),
            beta_t: beta_t(m, 1e-15),
            operator_regime,
            beta,
        })
    }

    /// Convenience constructor from a textual base (see [`Beta::parse`]).
    pub fn parse(m: u8, beta: &str) -> Result<Self> {
        Params::new(m, Beta::parse(beta, m)?)
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn beta(&self) -> &Beta {
        &self.beta
    }

    pub fn field(&self) -> &NumberField {
        self.beta.field()
    }

    pub fn golden_ratio(&self) -> f64 {
        self.golden_ratio
    }

    pub fn beta_t(&self) -> f64 {
        self.beta_t
    }

    /// `m > 2` and `β ∈ [m/2 + 2, m + 1]`.
    pub fn operator_regime(&self) -> bool {
        self.operator_regime
    }

    /// Exact scalar from a decimal or fraction string.
    pub fn scalar(&self, s: &str) -> Result<Scalar> {
        Ok(self.field().from_rational(parse_rational(s)?))
    }

    /// `m / (β - 1)`, the largest representable value.
    pub fn max_value(&self) -> Scalar {
        let f = self.field();
        let denom = f.sub(&f.beta(), &f.one());
        f.mul(&f.from_int(self.m as i64), &f.inv(&denom).expect("beta > 1"))
    }

    fn check_range(&self, a: &Scalar) -> Result<()> {
        let f = self.field();
        if f.sign(a) == Ordering::Less || f.cmp(a, &self.max_value()) == Ordering::Greater {
            return Err(Error::OutOfRange(format!(
                "{} is outside [0, m/(β-1)] = [0, {}]",
                f.to_f64(a),
                f.to_f64(&self.max_value())
            )));
        }
        Ok(())
    }
}

fn check_m(m: u8) -> Result<()> {
    if m == 0 || m > 200 {
        return Err(Error::InvalidParams(format!("m must be in 1..=200, got {m}")));
    }
    Ok(())
}

/// `G(m)`: `k+1` for `m = 2k`, `(k+1+√(k²+6k+5))/2` for `m = 2k+1`.
pub fn golden_ratio(m: u8) -> f64 {
    let k = (m / 2) as f64;
    if m % 2 == 0 {
        k + 1.0
    } else {
        (k + 1.0 + (k * k + 6.0 * k + 5.0).sqrt()) / 2.0
    }
}

/// The quasi-greedy expansion of 1 that defines `β_T`.
pub fn transitive_pattern(m: u8) -> PeriodicSeq {
    let k = m / 2;
    let seq = if m % 2 == 0 {
        PeriodicSeq::new(vec![k + 1], vec![k])
    } else {
        PeriodicSeq::new(vec![k + 1], vec![k + 1, k])
    };
    seq.expect("nonempty period")
}

/// `β_T` by bisection on `Σ x(n) β^{-n} = 1` for the defining pattern.
pub fn beta_t(m: u8, tol: f64) -> f64 {
    let pattern = transitive_pattern(m);
    let f = |b: f64| series_value_f64(&pattern, b) - 1.0;
    let (mut lo, mut hi) = (1.0 + 1e-12, m as f64 + 1.0);
    // The series is decreasing in β.
    while hi - lo > tol.max(f64::EPSILON * hi) {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if mid == lo && mid == hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Closed-form value of an eventually periodic series in double precision.
pub fn series_value_f64(s: &PeriodicSeq, beta: f64) -> f64 {
    let inv = 1.0 / beta;
    let mut value = 0.0;
    let mut scale = 1.0;
    for &d in s.preperiod() {
        scale *= inv;
        value += d as f64 * scale;
    }
    let mut cycle = 0.0;
    let mut cscale = 1.0;
    for &d in s.period() {
        cscale *= inv;
        cycle += d as f64 * cscale;
    }
    value + scale * cycle / (1.0 - cscale)
}

/// A series value with its truncation bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub error_bound: f64,
    pub terms: usize,
}

/// `Σ x(n) β^{-n}`, truncated once the geometric tail bound
/// `m β^{-N} / (β - 1)` falls below `precision`.
pub fn eval_series(s: &PeriodicSeq, p: &Params, precision: f64) -> SeriesValue {
    let beta = p.beta().approx();
    let m = p.m() as f64;
    let mut value = 0.0;
    let mut scale = 1.0;
    let mut n = 0;
    let tail = |scale: f64| m * scale / (beta - 1.0);
    while tail(scale) > precision && n < 100_000 {
        scale /= beta;
        value += s.digit(n) as f64 * scale;
        n += 1;
    }
    SeriesValue {
        value,
        error_bound: tail(scale),
        terms: n,
    }
}

/// The exact value of `Σ x(n) β^{-n}` in `Q(β)`.
pub fn eval_series_exact(s: &PeriodicSeq, p: &Params) -> Scalar {
    let f = p.field();
    let inv = f.inv(&f.beta()).expect("beta > 1");
    let mut value = f.zero();
    let mut scale = f.one();
    for &d in s.preperiod() {
        scale = f.mul(&scale, &inv);
        value = f.add(&value, &f.mul(&scale, &f.from_int(d as i64)));
    }
    let mut cycle = f.zero();
    let mut cscale = f.one();
    for &d in s.period() {
        cscale = f.mul(&cscale, &inv);
        cycle = f.add(&cycle, &f.mul(&cscale, &f.from_int(d as i64)));
    }
    let denom = f.sub(&f.one(), &cscale);
    let geometric = f.mul(&cycle, &f.inv(&denom).expect("beta > 1"));
    f.add(&value, &f.mul(&scale, &geometric))
}

/// Exact value of a finite word read as `Σ w(n) β^{-n}`.
pub fn eval_word_exact(w: &Word, p: &Params) -> Scalar {
    let s = PeriodicSeq::new(w.digits().to_vec(), vec![0]).expect("nonempty period");
    eval_series_exact(&s, p)
}

/// Digits produced by an expansion algorithm, with the exact sequence when
/// the remainders were seen to cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub digits: Word,
    pub exact: Option<PeriodicSeq>,
}

impl Expansion {
    pub fn as_sequence(&self) -> Sequence {
        match &self.exact {
            Some(p) => Sequence::Periodic(p.clone()),
            None => Sequence::Truncated(self.digits.clone()),
        }
    }
}

/// Greedy expansion via `x(n) = min(⌊β r_{n-1}⌋, m)`, `r_n = β r_{n-1} - x(n)`.
pub fn greedy_sequence(a: &Scalar, p: &Params, depth: usize) -> Result<Expansion> {
    p.check_range(a)?;
    Ok(greedy_unchecked(a, p, depth))
}

fn greedy_unchecked(a: &Scalar, p: &Params, depth: usize) -> Expansion {
    let f = p.field();
    let b = f.beta();
    let mut seen: HashMap<Scalar, usize> = HashMap::new();
    let mut digits: Vec<u8> = Vec::new();
    let mut r = a.clone();
    let steps = depth.max(CYCLE_SEARCH_STEPS);
    for n in 0..steps {
        if let Some(&start) = seen.get(&r) {
            let exact = PeriodicSeq::new(digits[..start].to_vec(), digits[start..n].to_vec())
                .expect("nonempty cycle");
            return Expansion {
                digits: exact.prefix(depth),
                exact: Some(exact),
            };
        }
        seen.insert(r.clone(), n);
        let t = f.mul(&b, &r);
        let d = f.floor_clamped(&t, p.m() as u32);
        digits.push(d as u8);
        r = f.sub(&t, &f.from_int(d as i64));
    }
    digits.truncate(depth);
    Expansion {
        digits: Word::new(digits),
        exact: None,
    }
}

/// First `depth` digits of the greedy expansion of `a`.
pub fn greedy_expansion(a: &Scalar, p: &Params, depth: usize) -> Result<Word> {
    greedy_sequence(a, p, depth).map(|e| e.digits)
}

/// Lazy expansion through `lazy(a) = reflect(greedy(m/(β-1) - a))`.
pub fn lazy_sequence(a: &Scalar, p: &Params, depth: usize) -> Result<Expansion> {
    p.check_range(a)?;
    let f = p.field();
    let dual = f.sub(&p.max_value(), a);
    let g = greedy_unchecked(&dual, p, depth);
    Ok(Expansion {
        digits: g.digits.reflect(p.m()),
        exact: g.exact.map(|s| s.reflect(p.m())),
    })
}

pub fn lazy_expansion(a: &Scalar, p: &Params, depth: usize) -> Result<Word> {
    lazy_sequence(a, p, depth).map(|e| e.digits)
}

/// The quasi-greedy expansion of 1, `x^{m,β}`.
///
/// A finite greedy expansion `x(1)…x(k)0^∞` is rewritten to
/// `(x(1)…x(k-1)(x(k)-1))^∞`; otherwise the greedy expansion is returned,
/// exact when its remainders cycle within the search window.
pub fn quasi_greedy_of_one(p: &Params, depth: usize) -> Sequence {
    let one = p.field().one();
    let g = greedy_unchecked(&one, p, depth);
    match g.exact {
        Some(s) if s.is_finite() => {
            let mut block = s.preperiod().to_vec();
            *block.last_mut().expect("1 has a nonzero digit") -= 1;
            Sequence::Periodic(PeriodicSeq::new(Vec::new(), block).expect("nonempty"))
        }
        Some(s) => Sequence::Periodic(s),
        None => Sequence::Truncated(g.digits),
    }
}

/// Quasi-greedy expansion of an arbitrary `a`: a finite greedy expansion
/// `x(1)…x(k)0^∞` becomes `x(1)…(x(k)-1) · x^{m,β}`. For `a = 0` no infinite
/// expansion exists and `0^∞` is returned.
pub fn quasi_greedy(a: &Scalar, p: &Params, depth: usize) -> Result<Sequence> {
    let g = greedy_sequence(a, p, depth)?;
    match g.exact {
        Some(s) if s.is_finite() && s.preperiod().is_empty() => {
            Ok(Sequence::Periodic(PeriodicSeq::zeros()))
        }
        Some(s) if s.is_finite() => {
            let mut head = s.preperiod().to_vec();
            *head.last_mut().unwrap() -= 1;
            Ok(match quasi_greedy_of_one(p, depth) {
                Sequence::Periodic(k) => Sequence::Periodic(k.prepend(&head)),
                Sequence::Truncated(w) => {
                    let mut d = head;
                    d.extend_from_slice(w.digits());
                    d.truncate(depth);
                    Sequence::Truncated(Word::new(d))
                }
            })
        }
        Some(s) => Ok(Sequence::Periodic(s)),
        None => Ok(Sequence::Truncated(g.digits)),
    }
}

/// Quasi-lazy expansion: the smallest expansion without a `0^∞` tail.
///
/// Lazy expansions of `a > 0` never end in `0^∞`, so this is the lazy
/// expansion; `a = 0` returns `0^∞`.
pub fn quasi_lazy(a: &Scalar, p: &Params, depth: usize) -> Result<Sequence> {
    p.check_range(a)?;
    if a.is_zero() {
        return Ok(Sequence::Periodic(PeriodicSeq::zeros()));
    }
    Ok(lazy_sequence(a, p, depth)?.as_sequence())
}

/// Approximate `f64` of a scalar, convenient for reports.
pub fn scalar_f64(a: &Scalar, p: &Params) -> f64 {
    p.field().to_f64(a)
}

/// `Q(β)` element `m/(β-1) - 1`, the value whose quasi-lazy expansion is the
/// reflected kneading sequence.
pub fn reflected_one(p: &Params) -> Scalar {
    let f = p.field();
    f.sub(&p.max_value(), &f.one())
}

#[allow(dead_code)]
fn to_f64_rat(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden1() -> Params {
        Params::parse(1, "golden").unwrap()
    }

    fn seq(s: &str) -> PeriodicSeq {
        s.parse().unwrap()
    }

    #[test]
    fn golden_ratio_expansions_of_one() {
        let p = golden1();
        let one = p.field().one();
        let g = greedy_sequence(&one, &p, 10).unwrap();
        assert_eq!(g.exact, Some(seq("110^∞")));
        let l = lazy_sequence(&one, &p, 10).unwrap();
        assert_eq!(l.exact, Some(seq("01^∞")));
        assert_eq!(quasi_greedy_of_one(&p, 10), Sequence::Periodic(seq("(10)^∞")));
        assert_eq!(quasi_lazy(&one, &p, 10).unwrap(), Sequence::Periodic(seq("01^∞")));
    }

    #[test]
    fn series_values() {
        let p = golden1();
        let v = eval_series_exact(&seq("110^∞"), &p);
        assert_eq!(v, p.field().one());
        let sv = eval_series(&seq("110^∞"), &p, 1e-14);
        assert!((sv.value - 1.0).abs() <= sv.error_bound + 1e-15);
        assert_eq!(eval_series_exact(&PeriodicSeq::zeros(), &p), p.field().zero());
        let p3 = Params::parse(3, "3.5").unwrap();
        let top = eval_series_exact(&PeriodicSeq::constant(3), &p3);
        assert_eq!(top, p3.max_value());
        assert!((p3.field().to_f64(&top) - 3.0 / 2.5).abs() < 1e-15);
    }

    #[test]
    fn greedy_in_base_three_and_a_half() {
        let p = Params::parse(3, "3.5").unwrap();
        let one = p.field().one();
        let g = greedy_sequence(&one, &p, 60).unwrap();
        assert_eq!(&g.digits.digits()[..5], &[3, 1, 2, 2, 0]);
        // Denominators of the remainders grow like 2^n: no exact period.
        assert!(g.exact.is_none());
        let partial = eval_series(
            &PeriodicSeq::new(g.digits.digits().to_vec(), vec![0]).unwrap(),
            &p,
            1e-15,
        );
        let tail = 3.0 * 3.5f64.powi(-60) / 2.5;
        assert!((partial.value - 1.0).abs() <= tail + 1e-14);
    }

    #[test]
    fn zero_and_maximum() {
        let p = Params::parse(3, "3.5").unwrap();
        let zero = p.field().zero();
        assert_eq!(greedy_expansion(&zero, &p, 5).unwrap().digits(), &[0; 5]);
        let top = p.max_value();
        assert_eq!(lazy_expansion(&top, &p, 5).unwrap().digits(), &[3; 5]);
        assert_eq!(greedy_expansion(&top, &p, 5).unwrap().digits(), &[3; 5]);
        let too_big = p.field().add(&top, &p.field().one());
        assert!(greedy_expansion(&too_big, &p, 5).is_err());
        assert!(greedy_expansion(&p.field().from_int(-1), &p, 5).is_err());
    }

    #[test]
    fn quasi_greedy_examples() {
        let p = Params::parse(2, "beta_T").unwrap();
        assert_eq!(quasi_greedy_of_one(&p, 20), Sequence::Periodic(seq("21^∞")));
        let p = Params::parse(3, "4").unwrap();
        assert_eq!(quasi_greedy_of_one(&p, 20), Sequence::Periodic(seq("3^∞")));
        for m in 1..=8u8 {
            let p = Params::parse(m, "beta_T").unwrap();
            assert_eq!(
                quasi_greedy_of_one(&p, 20),
                Sequence::Periodic(transitive_pattern(m)),
                "m = {m}"
            );
        }
    }

    #[test]
    fn quasi_lazy_of_reflected_one() {
        let p = Params::parse(2, "beta_T").unwrap();
        let a = reflected_one(&p);
        assert_eq!(quasi_lazy(&a, &p, 20).unwrap(), Sequence::Periodic(seq("01^∞")));
        let v = eval_series_exact(&seq("01^∞"), &p);
        assert_eq!(v, a);
        assert_eq!(
            quasi_lazy(&p.field().zero(), &p, 5).unwrap(),
            Sequence::Periodic(PeriodicSeq::zeros())
        );
    }

    #[test]
    fn quasi_greedy_of_finite_values() {
        let p = golden1();
        // 1/β has greedy expansion 10^∞, so the quasi-greedy one is 0(10)^∞.
        let a = p.field().inv(&p.field().beta()).unwrap();
        let q = quasi_greedy(&a, &p, 10).unwrap();
        assert_eq!(q, Sequence::Periodic(seq("(01)^∞")));
        assert_eq!(eval_series_exact(&seq("(01)^∞"), &p), a);
    }

    #[test]
    fn beta_t_closed_forms() {
        assert!((beta_t(2, 1e-14) - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((beta_t(4, 1e-14) - (2.0 + 3f64.sqrt())).abs() < 1e-12);
        for m in 1..=8u8 {
            let b = beta_t(m, 1e-14);
            assert!(b > golden_ratio(m) && b <= m as f64 + 1.0, "m = {m}: {b}");
            let exact = Beta::transitive_base(m).unwrap();
            assert!((exact.approx() - b).abs() < 1e-12);
        }
    }

    #[test]
    fn golden_ratio_closed_form() {
        assert_eq!(golden_ratio(2), 2.0);
        assert!((golden_ratio(1) - 1.618033988749895).abs() < 1e-15);
        for m in 1..=8u8 {
            let g = Beta::golden(m).unwrap();
            assert!((g.approx() - golden_ratio(m)).abs() < 1e-12);
        }
    }

    #[test]
    fn params_validation() {
        assert!(Params::parse(3, "1").is_err());
        assert!(Params::parse(3, "4.01").is_err());
        assert!(Params::parse(0, "1.5").is_err());
        assert!(Params::parse(3, "4").unwrap().operator_regime());
        assert!(Params::parse(3, "3.5").unwrap().operator_regime());
        assert!(!Params::parse(3, "3.49").unwrap().operator_regime());
        assert!(!Params::parse(2, "3").unwrap().operator_regime());
        assert!(Params::parse(4, "4").unwrap().operator_regime());
        for m in 3..=20u8 {
            assert!(m as f64 / 2.0 + 2.0 > golden_ratio(m));
        }
    }

    /// Direct smallest-digit recursion, independent of the reflection route.
    fn lazy_direct(a: &Scalar, p: &Params, depth: usize) -> Vec<u8> {
        let f = p.field();
        let top = p.max_value();
        let b = f.beta();
        let mut r = a.clone();
        let mut out = Vec::new();
        for _ in 0..depth {
            let t = f.mul(&b, &r);
            // smallest d with t - d <= m/(β-1)
            let d = (0..=p.m())
                .find(|&d| f.cmp(&f.sub(&t, &f.from_int(d as i64)), &top) != Ordering::Greater)
                .unwrap();
            out.push(d);
            r = f.sub(&t, &f.from_int(d as i64));
        }
        out
    }

    #[test]
    fn lazy_duality_matches_direct_recursion() {
        for (m, beta, a) in [
            (2u8, "beta_T", "1"),
            (1, "golden", "1"),
            (3, "3.5", "1"),
            (3, "3.5", "0.7"),
            (4, "4", "1/3"),
            (6, "5", "1.25"),
        ] {
            let p = Params::parse(m, beta).unwrap();
            let a = p.scalar(a).unwrap();
            let dual = lazy_expansion(&a, &p, 40).unwrap();
            assert_eq!(dual.digits(), &lazy_direct(&a, &p, 40)[..], "m={m} beta={beta}");
        }
    }

    #[test]
    fn greedy_and_lazy_bracket_their_value() {
        let p = Params::parse(3, "3.5").unwrap();
        for a in ["0.3", "1", "1.1", "0.05"] {
            let x = p.scalar(a).unwrap();
            let av = p.field().to_f64(&x);
            for w in [greedy_expansion(&x, &p, 30).unwrap(), lazy_expansion(&x, &p, 30).unwrap()] {
                let s = PeriodicSeq::new(w.digits().to_vec(), vec![0]).unwrap();
                let v = eval_series(&s, &p, 1e-16).value;
                let bound = 3.0 * 3.5f64.powi(-30) / 2.5;
                assert!(v <= av + 1e-14 && v >= av - bound - 1e-14, "{a}: {v}");
            }
        }
    }
}
