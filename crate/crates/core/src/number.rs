//! Exact arithmetic in the number field `Q(β)`.
//!
//! Greedy digits are discontinuous in the base, so every digit decision is
//! made exactly. The base is either rational or a root of an irreducible
//! integer polynomial of degree 2 or 3, isolated by a rational interval.
//! Elements of `Q(β)` are polynomials in `β` of degree below the field
//! degree. Equality is structural; signs are decided by interval evaluation,
//! refining the isolating interval until zero is excluded (this terminates
//! because a nonzero element cannot vanish at `β`).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Width of the isolating interval kept by a field, as a power of two.
const ISOLATION_BITS: u32 = 160;

/// An element of `Q(β)`: coefficients of `c_0 + c_1 β + …` (low to high).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Vec<Rat>);

impl Scalar {
    pub fn coefficients(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// The field `Q(β)` together with an isolating interval for `β`.
#[derive(Clone, Debug)]
pub struct NumberField {
    /// Monic minimal polynomial, low to high.
    modulus: Vec<Rat>,
    lo: Rat,
    hi: Rat,
    sign_lo: Ordering,
    approx: f64,
}

impl NumberField {
    /// `Q` with `β = r`.
    pub fn rational(r: Rat) -> Self {
        let approx = r.to_f64().unwrap_or(f64::NAN);
        NumberField {
            modulus: vec![-r.clone(), Rat::one()],
            lo: r.clone(),
            hi: r,
            sign_lo: Ordering::Equal,
            approx,
        }
    }

    /// Field generated by the unique root of `coeffs` (integer, low to high)
    /// inside `(lo, hi)`. Degrees 2 and 3 must be irreducible over `Q`.
    pub fn from_integer_poly(coeffs: &[i64], lo: Rat, hi: Rat) -> Result<Self> {
        let coeffs: Vec<i64> = trim_i64(coeffs);
        let degree = coeffs.len().saturating_sub(1);
        match degree {
            0 => return Err(Error::InvalidParams("constant minimal polynomial".into())),
            1 => {
                let r = Rat::new(BigInt::from(-coeffs[0]), BigInt::from(coeffs[1]));
                if r <= lo || r >= hi {
                    return Err(Error::InvalidParams("root outside isolating interval".into()));
                }
                return Ok(Self::rational(r));
            }
            2 | 3 => {}
            _ => {
                return Err(Error::InvalidParams(format!(
                    "minimal polynomials of degree {degree} are not supported"
                )))
            }
        }
        if let Some(root) = rational_root(&coeffs) {
            return Err(Error::InvalidParams(format!(
                "polynomial is reducible (rational root {root})"
            )));
        }
        let lead = Rat::from_integer(BigInt::from(*coeffs.last().unwrap()));
        let modulus: Vec<Rat> = coeffs
            .iter()
            .map(|&c| Rat::from_integer(BigInt::from(c)) / &lead)
            .collect();
        let s_lo = sign(&horner(&modulus, &lo));
        let s_hi = sign(&horner(&modulus, &hi));
        if s_lo == Ordering::Equal || s_hi == Ordering::Equal || s_lo == s_hi {
            return Err(Error::InvalidParams(
                "interval does not isolate a simple root".into(),
            ));
        }
        let mut field = NumberField {
            modulus,
            lo,
            hi,
            sign_lo: s_lo,
            approx: 0.0,
        };
        let eps = Rat::new(BigInt::one(), BigInt::one() << ISOLATION_BITS);
        while &field.hi - &field.lo > eps {
            let (lo, hi) = field.bisect(&field.lo, &field.hi);
            field.lo = lo;
            field.hi = hi;
        }
        field.approx = ((&field.lo + &field.hi) / Rat::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN);
        Ok(field)
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Double-precision value of `β`.
    pub fn approx(&self) -> f64 {
        self.approx
    }

    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }

    pub fn beta(&self) -> Scalar {
        self.reduce(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_rational(&self, r: Rat) -> Scalar {
        self.reduce(vec![r])
    }

    pub fn from_int(&self, k: i64) -> Scalar {
        self.from_rational(Rat::from_integer(BigInt::from(k)))
    }

    pub fn zero(&self) -> Scalar {
        Scalar(vec![Rat::zero(); self.degree()])
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        Scalar(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let mut prod = vec![Rat::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        // Extended Euclid: s·a + t·P = g, with g a nonzero constant since P is
        // irreducible.
        let (mut r0, mut r1) = (self.modulus.clone(), trim(a.0.clone()));
        let (mut s0, mut s1) = (vec![Rat::zero()], vec![Rat::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let g = r1[0].clone();
        debug_assert!(!g.is_zero());
        let s: Vec<Rat> = s1.into_iter().map(|c| c / &g).collect();
        Some(self.reduce(s))
    }

    pub fn sign(&self, a: &Scalar) -> Ordering {
        if a.is_zero() {
            return Ordering::Equal;
        }
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        loop {
            let (l, h) = interval_eval(&a.0, &lo, &hi);
            if l.is_positive() {
                return Ordering::Greater;
            }
            if h.is_negative() {
                return Ordering::Less;
            }
            (lo, hi) = self.bisect(&lo, &hi);
        }
    }

    pub fn cmp(&self, a: &Scalar, b: &Scalar) -> Ordering {
        self.sign(&self.sub(a, b))
    }

    /// Double-precision approximation of an element.
    pub fn to_f64(&self, a: &Scalar) -> f64 {
        let mid = (&self.lo + &self.hi) / Rat::from_integer(2.into());
        horner(&a.0, &mid).to_f64().unwrap_or(f64::NAN)
    }

    /// Cheap approximation used only as a starting guess for exact decisions.
    pub(crate) fn quick_f64(&self, a: &Scalar) -> f64 {
        a.0.iter()
            .rev()
            .fold(0.0, |acc, c| acc * self.approx + c.to_f64().unwrap_or(0.0))
    }

    /// Largest `d` in `0..=max` with `d <= x`, assuming `x >= 0`.
    pub fn floor_clamped(&self, x: &Scalar, max: u32) -> u32 {
        let guess = self.quick_f64(x).floor();
        let mut d = if guess.is_finite() {
            guess.clamp(0.0, max as f64) as u32
        } else {
            0
        };
        while d > 0 && self.sign(&self.sub(x, &self.from_int(d as i64))) == Ordering::Less {
            d -= 1;
        }
        while d < max && self.sign(&self.sub(x, &self.from_int(d as i64 + 1))) != Ordering::Less {
            d += 1;
        }
        d
    }

    /// Same root and same field.
    pub fn same_as(&self, other: &NumberField) -> bool {
        self.modulus == other.modulus && self.lo <= other.hi && other.lo <= self.hi
    }

    fn reduce(&self, mut p: Vec<Rat>) -> Scalar {
        let d = self.degree();
        while p.len() > d {
            let lead = p.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = p.len() - d;
            for (i, c) in self.modulus[..d].iter().enumerate() {
                p[shift + i] -= &lead * c;
            }
        }
        p.resize(d, Rat::zero());
        Scalar(p)
    }

    fn bisect(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        let mid = (lo + hi) / Rat::from_integer(2.into());
        let s = sign(&horner(&self.modulus, &mid));
        if s == self.sign_lo {
            (mid, hi.clone())
        } else {
            (lo.clone(), mid)
        }
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of ")?;
        let mut first = true;
        for (i, c) in self.modulus.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    write!(f, "x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        write!(f, " near {}", self.approx)
    }
}

/// Parses `"3.5"`, `"-0.25"`, `"7/2"` or `"4"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a decimal or fraction: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rat::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Rational approximation of an `f64` (exact binary value).
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

fn sign(x: &Rat) -> Ordering {
    x.cmp(&Rat::zero())
}

fn horner(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

fn interval_eval(p: &[Rat], lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut acc = (Rat::zero(), Rat::zero());
    for c in p.iter().rev() {
        let products = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
        let min = products.iter().min().unwrap().clone();
        let max = products.iter().max().unwrap().clone();
        acc = (min + c, max + c);
    }
    acc
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rat::zero());
    }
    p
}

fn trim_i64(p: &[i64]) -> Vec<i64> {
    let mut v = p.to_vec();
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rat::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![Rat::zero()], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let coef = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &coef * c;
        }
        q[shift] = coef;
        r.pop();
        r = trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (trim(q), r)
}

/// A rational root of an integer polynomial, if one exists.
fn rational_root(coeffs: &[i64]) -> Option<Rat> {
    let poly: Vec<Rat> = coeffs
        .iter()
        .map(|&c| Rat::from_integer(BigInt::from(c)))
        .collect();
    let a0 = coeffs[0];
    if a0 == 0 {
        return Some(Rat::zero());
    }
    let an = *coeffs.last().unwrap();
    let divisors = |n: i64| -> Vec<i64> {
        let n = n.abs();
        (1..=n).filter(|d| n % d == 0).collect()
    };
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for s in [1, -1] {
                let r = Rat::new(BigInt::from(s * p), BigInt::from(q));
                if horner(&poly, &r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}
