//! Hölder potentials `A : X_{m,β} → ℝ` evaluated on finite digit prefixes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum PotentialSpec {
    Zero,
    /// `A(x) = table[x(1)]`.
    DigitTable(Vec<f64>),
    /// `A(x) = table[x(1..k)]`, with `default` for unlisted blocks.
    BlockTable {
        k: usize,
        table: BTreeMap<Vec<u8>, f64>,
        default: f64,
    },
    /// `A(x) = offset + c Σ_{i ≤ K} θ^{i-1} x(i)`.
    Geometric {
        c: f64,
        theta: f64,
        terms: usize,
        offset: f64,
    },
}

impl PotentialSpec {
    pub fn geometric(c: f64, theta: f64, terms: usize) -> Self {
        PotentialSpec::Geometric {
            c,
            theta,
            terms,
            offset: 0.0,
        }
    }

    /// Digits of a point that `eval` reads.
    pub fn needed_digits(&self) -> usize {
        match self {
            PotentialSpec::Zero => 0,
            PotentialSpec::DigitTable(_) => 1,
            PotentialSpec::BlockTable { k, .. } => *k,
            PotentialSpec::Geometric { terms, .. } => *terms,
        }
    }

    /// Rejects tables that do not fit the alphabet `{0, …, m}`.
    pub fn validate(&self, m: u8) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPotential(msg));
        match self {
            PotentialSpec::Zero => Ok(()),
            PotentialSpec::DigitTable(t) => {
                if t.len() != m as usize + 1 {
                    return bad(format!("digit table needs {} values, got {}", m as usize + 1, t.len()));
                }
                if t.iter().any(|v| !v.is_finite()) {
                    return bad("digit table values must be finite".into());
                }
                Ok(())
            }
            PotentialSpec::BlockTable { k, table, default } => {
                if *k == 0 {
                    return bad("block length must be positive".into());
                }
                for (w, v) in table {
                    if w.len() != *k || w.iter().any(|&d| d > m) || !v.is_finite() {
                        return bad(format!("invalid block entry {w:?} = {v}"));
                    }
                }
                if !default.is_finite() {
                    return bad("block default must be finite".into());
                }
                Ok(())
            }
            PotentialSpec::Geometric { c, theta, terms, offset } => {
                if !(*theta > 0.0 && *theta < 1.0) {
                    return bad(format!("theta must lie in (0, 1), got {theta}"));
                }
                if *terms == 0 || !c.is_finite() || !offset.is_finite() {
                    return bad("geometric potential needs K >= 1 and finite c".into());
                }
                Ok(())
            }
        }
    }

    /// `A` at a point given by at least `needed_digits()` leading digits.
    pub fn eval(&self, x: &[u8]) -> f64 {
        match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::DigitTable(t) => t[x[0] as usize],
            PotentialSpec::BlockTable { k, table, default } => {
                table.get(&x[..*k]).copied().unwrap_or(*default)
            }
            PotentialSpec::Geometric { c, theta, terms, offset } => {
                let mut s = 0.0;
                let mut w = 1.0;
                for &d in &x[..*terms] {
                    s += w * d as f64;
                    w *= theta;
                }
                offset + c * s
            }
        }
    }

    /// An upper bound for `A` on the cylinder `[w]` over the full alphabet.
    pub fn sup_on_cylinder(&self, w: &[u8], m: u8) -> f64 {
        match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::DigitTable(t) => match w.first() {
                Some(&d) => t[d as usize],
                None => t.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            },
            PotentialSpec::BlockTable { k, table, default } => {
                if w.len() >= *k {
                    return self.eval(w);
                }
                let listed = table.iter().filter(|(b, _)| b.starts_with(w));
                let total = (m as usize + 1).pow((*k - w.len()) as u32);
                let mut count = 0usize;
                let mut best = f64::NEG_INFINITY;
                for (_, &v) in listed {
                    count += 1;
                    best = best.max(v);
                }
                if count < total {
                    best = best.max(*default);
                }
                best
            }
            PotentialSpec::Geometric { c, theta, terms, offset } => {
                let mut s = 0.0;
                let mut tail = 0.0;
                let mut wgt = 1.0;
                for i in 0..*terms {
                    match w.get(i) {
                        Some(&d) => s += wgt * d as f64,
                        None => tail += wgt * m as f64,
                    }
                    wgt *= theta;
                }
                offset + c * s + c.max(0.0) * tail
            }
        }
    }

    /// Hölder exponent with respect to `d(x, y) = 2^{1-n}`.
    pub fn alpha(&self) -> f64 {
        match self {
            PotentialSpec::Geometric { theta, .. } => (1.0 / theta).log2(),
            _ => 1.0,
        }
    }

    /// Constant `K` in `|A(x) - A(y)| ≤ K d(x, y)^α`.
    pub fn holder_const(&self, m: u8) -> f64 {
        let range = |vals: &mut dyn Iterator<Item = f64>| {
            let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
            if hi >= lo {
                hi - lo
            } else {
                0.0
            }
        };
        match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::DigitTable(t) => range(&mut t.iter().copied()),
            PotentialSpec::BlockTable { k, table, default } => {
                let r = range(&mut table.values().copied().chain(std::iter::once(*default)));
                r * 2f64.powi(*k as i32 - 1)
            }
            PotentialSpec::Geometric { c, theta, .. } => c.abs() * m as f64 / (1.0 - theta),
        }
    }

    /// Bound on the oscillation of `A` over any cylinder of depth `n`.
    pub fn variation_bound(&self, n: usize, m: u8) -> f64 {
        self.holder_const(m) * 2f64.powf(-self.alpha() * n as f64)
    }

    /// `A + κ`.
    pub fn plus_constant(&self, kappa: f64, m: u8) -> PotentialSpec {
        match self {
            PotentialSpec::Zero => PotentialSpec::DigitTable(vec![kappa; m as usize + 1]),
            PotentialSpec::DigitTable(t) => PotentialSpec::DigitTable(t.iter().map(|v| v + kappa).collect()),
            PotentialSpec::BlockTable { k, table, default } => PotentialSpec::BlockTable {
                k: *k,
                table: table.iter().map(|(w, v)| (w.clone(), v + kappa)).collect(),
                default: default + kappa,
            },
            PotentialSpec::Geometric { c, theta, terms, offset } => PotentialSpec::Geometric {
                c: *c,
                theta: *theta,
                terms: *terms,
                offset: offset + kappa,
            },
        }
    }

    /// Whether `A ∘ reflect = A` holds for the tabulated forms.
    pub fn is_reflection_symmetric(&self, m: u8) -> bool {
        match self {
            PotentialSpec::Zero => true,
            PotentialSpec::DigitTable(t) => (0..t.len()).all(|i| t[i] == t[m as usize - i]),
            PotentialSpec::BlockTable { table, .. } => table.iter().all(|(w, v)| {
                let r: Vec<u8> = w.iter().map(|&d| m - d).collect();
                table.get(&r) == Some(v)
            }),
            PotentialSpec::Geometric { c, .. } => *c == 0.0,
        }
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialSpec::Zero => f.write_str("zero"),
            PotentialSpec::DigitTable(t) => {
                let vals: Vec<String> = t.iter().map(f64::to_string).collect();
                write!(f, "digit:{}", vals.join(","))
            }
            PotentialSpec::BlockTable { k, table, default } => {
                let mut parts: Vec<String> = table
                    .iter()
                    .map(|(w, v)| {
                        let sep = if w.iter().any(|&d| d > 9) { "." } else { "" };
                        let key = w.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(sep);
                        format!("{key}={v}")
                    })
                    .collect();
                parts.push(format!("*={default}"));
                write!(f, "block:{k}:{}", parts.join(","))
            }
            PotentialSpec::Geometric { c, theta, terms, offset } => {
                write!(f, "geometric:c={c},theta={theta},K={terms}")?;
                if *offset != 0.0 {
                    write!(f, ",offset={offset}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

impl FromStr for PotentialSpec {
    type Err = Error;

    /// Formats: `zero`, `digit:v0,v1,…`, `block:k:w=v,…,*=v`,
    /// `geometric:c=..,theta=..,K=..[,offset=..]`. Block keys are digit
    /// strings, dot-separated when a digit exceeds 9.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "zero" => Ok(PotentialSpec::Zero),
            "digit" => {
                let t = rest.split(',').map(parse_f64).collect::<Result<Vec<_>>>()?;
                Ok(PotentialSpec::DigitTable(t))
            }
            "block" => {
                let (k, entries) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("block potential needs block:k:entries".into()))?;
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad block length {k:?}")))?;
                let mut table = BTreeMap::new();
                let mut default = 0.0;
                for entry in entries.split(',').filter(|e| !e.trim().is_empty()) {
                    let (key, v) = entry
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("bad block entry {entry:?}")))?;
                    let v = parse_f64(v)?;
                    let key = key.trim();
                    if key == "*" {
                        default = v;
                        continue;
                    }
                    let digits: Option<Vec<u8>> = if key.contains('.') {
                        key.split('.').map(|d| d.parse::<u8>().ok()).collect()
                    } else {
                        key.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
                    };
                    let digits = digits.ok_or_else(|| Error::Parse(format!("bad block key {key:?}")))?;
                    table.insert(digits, v);
                }
                Ok(PotentialSpec::BlockTable { k, table, default })
            }
            "geometric" => {
                let (mut c, mut theta, mut terms, mut offset) = (1.0, 0.25, 40usize, 0.0);
                for kv in rest.split(',').filter(|e| !e.trim().is_empty()) {
                    let (key, v) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("bad geometric entry {kv:?}")))?;
                    match key.trim() {
                        "c" => c = parse_f64(v)?,
                        "theta" => theta = parse_f64(v)?,
                        "K" | "k" => {
                            terms = v
                                .trim()
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad K {v:?}")))?
                        }
                        "offset" => offset = parse_f64(v)?,
                        other => return Err(Error::Parse(format!("unknown geometric key {other:?}"))),
                    }
                }
                Ok(PotentialSpec::Geometric { c, theta, terms, offset })
            }
            other => Err(Error::Parse(format!("unknown potential kind {other:?}"))),
        }
    }
}
