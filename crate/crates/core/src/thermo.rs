//! Pressure, entropy, Gibbs measures, ergodic optimization and
//! zero-temperature scans on a solved [`TransferSystem`].
//!
//! Invariant measures live on edges of the cylinder graph, i.e. on
//! admissible words of length `n + 1`. An edge measure is shift-invariant
//! when, for every basis word, its mass as a target equals its mass as a
//! source.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sequence::{lex_compare, PeriodicSeq, Sequence};
use crate::shift::Kneading;
use crate::transfer::{SolveOptions, TransferSystem};

/// `P(tA) = log λ`.
pub fn pressure(t: &TransferSystem) -> Result<f64> {
    Ok(t.solved()?.log_lambda)
}

/// `μ = ρψ` on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GibbsMeasure {
    pub weights: Vec<f64>,
}

impl GibbsMeasure {
    pub fn of(t: &TransferSystem) -> Result<Self> {
        let mu = t.solved()?.mu();
        let z: f64 = mu.iter().sum();
        Ok(GibbsMeasure {
            weights: mu.into_iter().map(|m| m / z).collect(),
        })
    }

    /// `max_v |Σ_a μ[a·v] - Σ_d μ[v·d]|` over words `v` of length `n - 1`.
    pub fn shift_invariance_defect(&self, t: &TransferSystem) -> f64 {
        let basis = t.basis();
        let n = basis.depth();
        if n < 2 {
            return 0.0;
        }
        let mut by_suffix: std::collections::BTreeMap<&[u8], f64> = Default::default();
        let mut by_prefix: std::collections::BTreeMap<&[u8], f64> = Default::default();
        for (w, &mu) in basis.words().zip(&self.weights) {
            *by_suffix.entry(&w[1..]).or_default() += mu;
            *by_prefix.entry(&w[..n - 1]).or_default() += mu;
        }
        let keys: std::collections::BTreeSet<&[u8]> = by_suffix.keys().chain(by_prefix.keys()).copied().collect();
        keys.into_iter()
            .map(|k| (by_suffix.get(k).unwrap_or(&0.0) - by_prefix.get(k).unwrap_or(&0.0)).abs())
            .fold(0.0, f64::max)
    }
}

/// A probability measure on the edges of the cylinder graph.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeMeasure {
    pub weights: Vec<f64>,
}

impl EdgeMeasure {
    /// `ν_e = μ(target) · P̄_e` for the equilibrium state.
    pub fn gibbs(t: &TransferSystem) -> Result<Self> {
        let nt = normalized(t)?;
        let mu = GibbsMeasure::of(&nt)?.weights;
        let g = nt.graph();
        let weights = (0..g.edges())
            .map(|e| mu[g.target(e)] * nt.log_weights()[e].exp())
            .collect();
        Ok(EdgeMeasure { weights })
    }

    /// Stationary measure of a random backward Markov chain on the graph.
    pub fn random_markov(t: &TransferSystem, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = t.graph();
        let n = g.nodes();
        let mut q = vec![0.0; g.edges()];
        for w in 0..n {
            let row = g.row(w);
            let raw: Vec<f64> = row.clone().map(|_| rng.random::<f64>().powi(3) + 1e-3).collect();
            let z: f64 = raw.iter().sum();
            for (e, r) in row.zip(raw) {
                q[e] = r / z;
            }
        }
        // π(w') = Σ_w π(w) Q[w, w'], iterated with damping against periodicity.
        let mut pi = vec![1.0 / n as f64; n];
        for _ in 0..5000 {
            let mut next = vec![0.0; n];
            for (e, qe) in q.iter().enumerate() {
                next[g.source(e)] += pi[g.target(e)] * qe;
            }
            let z: f64 = next.iter().sum();
            let mut diff: f64 = 0.0;
            for (p, x) in pi.iter_mut().zip(&next) {
                let v = 0.5 * (*p + x / z);
                diff = diff.max((v - *p).abs());
                *p = v;
            }
            if diff < 1e-16 {
                break;
            }
        }
        let weights = (0..g.edges()).map(|e| pi[g.target(e)] * q[e]).collect();
        EdgeMeasure { weights }
    }

    /// Uniform measure on the orbit of `p^∞`; `None` unless all its windows
    /// of length `n + 1` are admissible.
    pub fn periodic_orbit(t: &TransferSystem, period: &[u8]) -> Option<Self> {
        let basis = t.basis();
        let g = t.graph();
        let n = basis.depth();
        let l = period.len();
        let mut weights = vec![0.0; g.edges()];
        for i in 0..l {
            let window: Vec<u8> = (0..=n).map(|j| period[(i + j) % l]).collect();
            let src = basis.index_of(&window[..n])?;
            let tgt = basis.index_of(&window[1..])?;
            let e = g.row(tgt).find(|&e| g.source(e) == src)?;
            weights[e] += 1.0 / l as f64;
        }
        Some(EdgeMeasure { weights })
    }

    /// `max_w |mass as target - mass as source|`.
    pub fn invariance_defect(&self, t: &TransferSystem) -> f64 {
        let g = t.graph();
        let mut as_target = vec![0.0; g.nodes()];
        let mut as_source = vec![0.0; g.nodes()];
        for (e, &v) in self.weights.iter().enumerate() {
            as_target[g.target(e)] += v;
            as_source[g.source(e)] += v;
        }
        as_target
            .iter()
            .zip(&as_source)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Mass of each basis word (as target).
    pub fn node_marginal(&self, t: &TransferSystem) -> Vec<f64> {
        let g = t.graph();
        let mut r = vec![0.0; g.nodes()];
        for (e, &v) in self.weights.iter().enumerate() {
            r[g.target(e)] += v;
        }
        r
    }

    /// `∫A dν`, with `A` sampled per source.
    pub fn average(&self, t: &TransferSystem) -> f64 {
        let g = t.graph();
        self.weights
            .iter()
            .enumerate()
            .map(|(e, &v)| v * t.values()[g.source(e)])
            .sum()
    }
}

/// Row-stochastic form, so that `-Σ ν log P̄ ≥ 0` holds exactly.
fn normalized(t: &TransferSystem) -> Result<TransferSystem> {
    let nt = if t.is_normalized() {
        t.clone()
    } else {
        t.normalize_potential()?
    };
    Ok(nt.stochastic_rows())
}

/// `Σ_w r(w) log Σ_{e→w} u_e - Σ_e ν_e log u_e` for a positive edge function
/// `u`: the discrete `∫ log(ℒ₀u / u) dν`.
pub fn inf_formula_value(t: &TransferSystem, nu: &EdgeMeasure, u: &[f64]) -> f64 {
    let g = t.graph();
    let r = nu.node_marginal(t);
    let mut total = 0.0;
    for (w, &rw) in r.iter().enumerate() {
        if rw > 0.0 {
            let s: f64 = g.row(w).map(|e| u[e]).sum();
            total += rw * s.ln();
        }
    }
    for (e, &v) in nu.weights.iter().enumerate() {
        if v > 0.0 {
            total -= v * u[e].ln();
        }
    }
    total
}

/// Upper bound for the entropy of `ν` from the infimum formula, using
/// `ν`'s own conditional transitions (and `ε` on null edges) as trial.
pub fn entropy_upper_bound(t: &TransferSystem, nu: &EdgeMeasure) -> f64 {
    let g = t.graph();
    let r = nu.node_marginal(t);
    let u: Vec<f64> = (0..g.edges())
        .map(|e| {
            let rw = r[g.target(e)];
            if nu.weights[e] > 0.0 && rw > 0.0 {
                nu.weights[e] / rw
            } else {
                1e-30
            }
        })
        .collect();
    inf_formula_value(t, nu, &u).max(0.0)
}

/// `h(μ) = -Σ_e ν_e log P̄_e = -∫Ā dμ` for the equilibrium state.
pub fn entropy_of_gibbs(t: &TransferSystem) -> Result<f64> {
    let nt = normalized(t)?;
    let nu = EdgeMeasure::gibbs(t)?;
    Ok(-nu
        .weights
        .iter()
        .zip(nt.log_weights())
        .filter(|(v, _)| **v > 0.0)
        .map(|(v, l)| v * l)
        .sum::<f64>())
}

/// `∫A dμ`, unscaled.
pub fn average(t: &TransferSystem) -> Result<f64> {
    let mu = GibbsMeasure::of(t)?.weights;
    Ok(mu.iter().zip(t.values()).map(|(m, a)| m * a).sum())
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfCheck {
    pub entropy: f64,
    /// Value at `u₀ = e^{Ā}`.
    pub at_u0: f64,
    /// Values at the other trial functions.
    pub trials: Vec<f64>,
    pub minimum: f64,
}

impl InfCheck {
    /// All trials stay above the entropy and `u₀` attains it.
    pub fn holds(&self, tol: f64) -> bool {
        self.minimum >= self.entropy - tol && (self.at_u0 - self.entropy).abs() <= tol
    }
}

/// Evaluates the infimum formula at `u₀`, the constant function and
/// `random` seeded positive trials.
pub fn entropy_inf_check(t: &TransferSystem, random: usize, seed: u64) -> Result<InfCheck> {
    let nt = normalized(t)?;
    let nu = EdgeMeasure::gibbs(t)?;
    let entropy = entropy_of_gibbs(t)?;
    let u0: Vec<f64> = nt.log_weights().iter().map(|l| l.exp()).collect();
    let at_u0 = inf_formula_value(&nt, &nu, &u0);
    let edges = u0.len();
    let mut trials = vec![inf_formula_value(&nt, &nu, &vec![1.0; edges])];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let u: Vec<f64> = (0..edges).map(|_| rng.random_range(0.01..1.0)).collect();
        trials.push(inf_formula_value(&nt, &nu, &u));
        // Perturbations of u₀ probe the minimum locally.
        let eps: f64 = rng.random_range(1e-4..1e-1);
        let u: Vec<f64> = u0.iter().map(|x| x * (1.0 + eps * rng.random_range(-1.0..1.0))).collect();
        trials.push(inf_formula_value(&nt, &nu, &u));
    }
    let minimum = trials.iter().copied().fold(at_u0, f64::min);
    Ok(InfCheck {
        entropy,
        at_u0,
        trials,
        minimum,
    })
}

/// `P(tA) - h(ν) - t∫A dν`, with `h(ν)` from the infimum-formula bound.
pub fn variational_gap(t: &TransferSystem, nu: &EdgeMeasure) -> Result<f64> {
    let p = pressure(t)?;
    Ok(p - entropy_upper_bound(t, nu) - t.scale() * nu.average(t))
}

/// Best periodic orbit found by [`max_ergodic_average`].
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitBound {
    pub value: f64,
    pub period: Vec<u8>,
}

fn orbit_admissible(period: &[u8], k: &Kneading) -> bool {
    let l = period.len();
    (0..l).all(|i| {
        let rot: Vec<u8> = period[i..].iter().chain(&period[..i]).copied().collect();
        let x = PeriodicSeq::new(Vec::new(), rot).expect("nonempty");
        match (k.upper(), k.lower()) {
            (Sequence::Periodic(u), Sequence::Periodic(lo)) => {
                lex_compare(&x, u) != Ordering::Greater && lex_compare(&x, lo) != Ordering::Less
            }
            _ => {
                let d = x.prefix(k.depth()).into_digits();
                let cmp = |bound: &Sequence| {
                    d.iter()
                        .enumerate()
                        .map(|(i, &a)| bound.digit(i).map(|b| a.cmp(&b)))
                        .find(|o| *o != Some(Ordering::Equal))
                        .flatten()
                };
                // Undecided comparisons reject the orbit.
                cmp(k.upper()) == Some(Ordering::Less) && cmp(k.lower()) == Some(Ordering::Greater)
            }
        }
    })
}

/// Lyndon words (primitive, lexicographically least rotation) of length `l`.
fn is_lyndon(w: &[u8]) -> bool {
    let l = w.len();
    (1..l).all(|i| {
        let rot = w[i..].iter().chain(&w[..i]);
        w.iter().cmp(rot) == Ordering::Less
    })
}

/// Lower bound for `m(A)`: the best orbit average of `A` over admissible
/// periodic orbits of period at most `max_period`.
pub fn max_ergodic_average(
    k: &Kneading,
    a: &crate::potential::PotentialSpec,
    max_period: usize,
) -> Option<OrbitBound> {
    let m = k.m();
    let need = a.needed_digits().max(1);
    let best = (1..=max_period)
        .into_par_iter()
        .flat_map_iter(|l| {
            let base = m as u64 + 1;
            let total = base.pow(l as u32);
            (0..total).filter_map(move |code| {
                let mut w = vec![0u8; l];
                let mut c = code;
                for d in w.iter_mut().rev() {
                    *d = (c % base) as u8;
                    c /= base;
                }
                if !is_lyndon(&w) || !orbit_admissible(&w, k) {
                    return None;
                }
                let avg = (0..l)
                    .map(|i| {
                        let x: Vec<u8> = (0..need).map(|j| w[(i + j) % l]).collect();
                        a.eval(&x)
                    })
                    .sum::<f64>()
                    / l as f64;
                Some(OrbitBound { value: avg, period: w })
            })
        })
        .reduce_with(|x, y| match x.value.partial_cmp(&y.value) {
            Some(Ordering::Less) => y,
            Some(Ordering::Greater) => x,
            _ if (x.period.len(), &x.period) <= (y.period.len(), &y.period) => x,
            _ => y,
        });
    best
}

/// Upper bound for `m(A)`: the max-plus Collatz–Wielandt bound for the
/// maximal cycle mean of the cylinder suprema of `A`.
pub fn max_average_upper_bound(t: &TransferSystem, iterations: usize) -> f64 {
    let g = t.graph();
    let s = t.cylinder_sups();
    let mut v = vec![0.0f64; g.nodes()];
    let mut best = f64::INFINITY;
    for _ in 0..iterations.max(1) {
        let next: Vec<f64> = (0..g.nodes())
            .map(|w| {
                g.row(w)
                    .map(|e| s[g.source(e)] + v[g.source(e)])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        let bound = next
            .iter()
            .zip(&v)
            .filter(|(_, b)| b.is_finite())
            .map(|(a, b)| a - b)
            .fold(f64::NEG_INFINITY, f64::max);
        best = best.min(bound);
        // Renormalize to keep values bounded.
        let top = next.iter().copied().filter(|x| x.is_finite()).fold(f64::NEG_INFINITY, f64::max);
        v = next.into_iter().map(|x| x - top).collect();
    }
    best
}

/// `(P(t₂A) - P(t₁A)) / (t₂ - t₁)`.
pub fn pressure_slope(t: &TransferSystem, t1: f64, t2: f64, opts: &SolveOptions) -> Result<f64> {
    let p1 = t.scaled(t1).power_solve(opts)?.log_lambda;
    let p2 = t.scaled(t2).power_solve(opts)?.log_lambda;
    Ok((p2 - p1) / (t2 - t1))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermoRecord {
    pub t: f64,
    pub pressure: f64,
    pub entropy: f64,
    pub average: f64,
    pub converged: bool,
    /// `|P - h - t·avg|`.
    pub identity_defect: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThermoCurve {
    pub records: Vec<ThermoRecord>,
    /// `[orbit lower bound, max-plus upper bound]` for `m(A)`.
    pub max_avg_interval: (f64, f64),
    /// Pressure slope over the last two grid points.
    pub max_avg_slope: f64,
    /// `h` at the largest `t`.
    pub residual_entropy: f64,
    /// `2h(t_N) - h(t_{N-1})`, first-order extrapolation on a doubling grid.
    pub richardson: f64,
    /// Mean of `h` over the upper half of the grid.
    pub cesaro_entropy: f64,
    pub warnings: Vec<String>,
}

impl ThermoCurve {
    /// Smallest discrete second difference of `P` (convexity when ≥ 0).
    pub fn min_convexity(&self) -> f64 {
        let r = &self.records;
        r.windows(3)
            .map(|w| {
                let s1 = (w[1].pressure - w[0].pressure) / (w[1].t - w[0].t);
                let s2 = (w[2].pressure - w[1].pressure) / (w[2].t - w[1].t);
                s2 - s1
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest increase of `h` between consecutive records from index `from`.
    pub fn entropy_increase(&self, from: usize) -> f64 {
        self.records[from.min(self.records.len())..]
            .windows(2)
            .map(|w| w[1].entropy - w[0].entropy)
            .fold(0.0, f64::max)
    }

    /// Largest decrease of `avg` between consecutive records.
    pub fn average_decrease(&self) -> f64 {
        self.records
            .windows(2)
            .map(|w| w[0].average - w[1].average)
            .fold(0.0, f64::max)
    }

    pub fn max_identity_defect(&self) -> f64 {
        self.records.iter().map(|r| r.identity_defect).fold(0.0, f64::max)
    }
}

/// Default grid `t = 1, 2, 4, …, 512`.
pub fn default_t_grid() -> Vec<f64> {
    (0..10).map(|i| 2f64.powi(i)).collect()
}

/// One solved record at scale `t`.
pub fn thermo_record(base: &TransferSystem, t: f64, opts: &SolveOptions) -> Result<ThermoRecord> {
    let sys = base.scaled(t).solved_with(opts)?;
    let e = sys.solved()?;
    let pressure = e.log_lambda;
    let entropy = entropy_of_gibbs(&sys)?;
    let average = average(&sys)?;
    Ok(ThermoRecord {
        t,
        pressure,
        entropy,
        average,
        converged: e.converged,
        identity_defect: (pressure - entropy - t * average).abs(),
    })
}

/// `(t, P(tA), h(μ_tA), ∫A dμ_tA)` along an increasing grid.
pub fn zero_temperature_scan(
    base: &TransferSystem,
    k: &Kneading,
    grid: &[f64],
    opts: &SolveOptions,
    max_period: usize,
) -> Result<ThermoCurve> {
    if grid.is_empty() || grid.windows(2).any(|w| w[1] <= w[0]) || grid[0] <= 0.0 {
        return Err(Error::InvalidParams("t grid must be positive and increasing".into()));
    }
    let records: Vec<ThermoRecord> = grid
        .par_iter()
        .map(|&t| thermo_record(base, t, opts))
        .collect::<Result<_>>()?;
    let mut warnings = Vec::new();
    for r in records.iter().filter(|r| !r.converged) {
        warnings.push(format!("power iteration did not converge at t = {}", r.t));
    }
    let lower = max_ergodic_average(k, base.potential(), max_period)
        .map(|o| o.value)
        .unwrap_or(f64::NEG_INFINITY);
    let upper = max_average_upper_bound(base, 200);
    let nrec = records.len();
    let last = records[nrec - 1];
    let max_avg_slope = if nrec >= 2 {
        let prev = records[nrec - 2];
        (last.pressure - prev.pressure) / (last.t - prev.t)
    } else {
        last.average
    };
    let richardson = if nrec >= 2 {
        2.0 * last.entropy - records[nrec - 2].entropy
    } else {
        last.entropy
    };
    let half = &records[nrec / 2..];
    let cesaro_entropy = half.iter().map(|r| r.entropy).sum::<f64>() / half.len() as f64;
    let curve = ThermoCurve {
        records,
        max_avg_interval: (lower, upper),
        max_avg_slope,
        residual_entropy: last.entropy,
        richardson,
        cesaro_entropy,
        warnings,
    };
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::Params;
    use crate::shift::DEFAULT_KNEADING_DEPTH;
    use crate::transfer::{build_system, BuildOptions};

    fn solved(m: u8, beta: &str, a: &str, n: usize) -> (Kneading, TransferSystem) {
        let p = Params::parse(m, beta).unwrap();
        let k = Kneading::new(&p, DEFAULT_KNEADING_DEPTH);
        let t = build_system(&p, &k, &a.parse().unwrap(), n, &BuildOptions::strict())
            .unwrap()
            .solved_with(&SolveOptions::default())
            .unwrap();
        (k, t)
    }

    /// Shannon entropy of the Bernoulli weights `e^{c_a} / Σ e^{c}`.
    fn bernoulli_entropy(c: &[f64]) -> f64 {
        let z: f64 = c.iter().map(|x| x.exp()).sum();
        -c.iter().map(|x| x.exp() / z).map(|p| p * p.ln()).sum::<f64>()
    }

    #[test]
    fn full_shift_closed_forms() {
        let (_, t) = solved(3, "4", "zero", 3);
        assert!((pressure(&t).unwrap() - 4f64.ln()).abs() < 1e-12);
        assert!((entropy_of_gibbs(&t).unwrap() - 4f64.ln()).abs() < 1e-12);
        let c = [0.3, -1.0, 0.5, 2.0];
        let (_, t) = solved(3, "4", "digit:0.3,-1,0.5,2", 3);
        let h = entropy_of_gibbs(&t).unwrap();
        assert!((h - bernoulli_entropy(&c)).abs() < 1e-10);
        let p = pressure(&t).unwrap();
        assert!((h - (p - average(&t).unwrap())).abs() < 1e-12);
    }

    #[test]
    fn constant_shift_moves_pressure() {
        let (_, t) = solved(3, "3.5", "geometric:c=1,theta=0.25,K=12", 4);
        let (_, s) = solved(3, "3.5", "geometric:c=1,theta=0.25,K=12,offset=0.7", 4);
        assert!((pressure(&s).unwrap() - pressure(&t).unwrap() - 0.7).abs() < 1e-12);
        assert!((entropy_of_gibbs(&s).unwrap() - entropy_of_gibbs(&t).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn gibbs_measure_is_invariant() {
        let (_, t) = solved(3, "3.5", "digit:0,1,0.5,0", 5);
        let mu = GibbsMeasure::of(&t).unwrap();
        assert!((mu.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(mu.shift_invariance_defect(&t) < 1e-12);
        assert!(EdgeMeasure::gibbs(&t).unwrap().invariance_defect(&t) < 1e-12);
    }

    #[test]
    fn variational_principle() {
        let (_, t) = solved(3, "3.5", "geometric:c=1,theta=0.25,K=12", 3);
        assert!(variational_gap(&t, &EdgeMeasure::gibbs(&t).unwrap()).unwrap().abs() < 1e-10);
        for seed in 0..20 {
            let nu = EdgeMeasure::random_markov(&t, seed);
            assert!(nu.invariance_defect(&t) < 1e-12);
            assert!(variational_gap(&t, &nu).unwrap() >= -1e-10);
        }
        // A fixed point carries no entropy.
        let (_, z) = solved(3, "4", "zero", 3);
        let dirac = EdgeMeasure::periodic_orbit(&z, &[2]).unwrap();
        let gap = variational_gap(&z, &dirac).unwrap();
        assert!((gap - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn inf_formula_minimized_at_u0() {
        let (_, t) = solved(4, "4", "geometric:c=0.5,theta=0.3,K=15", 3);
        let c = entropy_inf_check(&t, 20, 7).unwrap();
        assert!(c.holds(1e-8), "{c:?}");
        let (_, z) = solved(3, "4", "zero", 2);
        let c = entropy_inf_check(&z, 10, 1).unwrap();
        assert!(c.trials.iter().all(|v| *v >= 4f64.ln() - 1e-12));
    }

    #[test]
    fn orbit_search_and_upper_bound() {
        let (k, t) = solved(3, "4", "digit:0,0.2,1,0.4", 2);
        let o = max_ergodic_average(&k, t.potential(), 4).unwrap();
        assert_eq!(o.period, vec![2]);
        assert_eq!(o.value, 1.0);
        assert!((max_average_upper_bound(&t, 50) - 1.0).abs() < 1e-12);
        let (k, t) = solved(3, "4", "zero", 2);
        assert_eq!(max_ergodic_average(&k, t.potential(), 3).unwrap().value, 0.0);
    }

    #[test]
    fn lyndon_words() {
        assert!(is_lyndon(&[0, 1]));
        assert!(!is_lyndon(&[1, 0]));
        assert!(!is_lyndon(&[1, 1]));
        assert!(is_lyndon(&[2]));
        assert!(is_lyndon(&[0, 0, 1]));
    }

    #[test]
    fn zero_temperature_unique_maximum() {
        let (k, t) = solved(3, "4", "digit:0,0.2,1,0.4", 2);
        let curve = zero_temperature_scan(&t, &k, &default_t_grid(), &SolveOptions::default(), 4).unwrap();
        assert!(curve.residual_entropy < 1e-3);
        assert!(curve.max_identity_defect() < 1e-8);
        assert!(curve.min_convexity() >= -1e-8);
        assert!(curve.average_decrease() <= 1e-8);
        assert!((curve.max_avg_interval.0 - 1.0).abs() < 1e-12);
        assert!((curve.max_avg_interval.1 - 1.0).abs() < 1e-12);
    }
}
