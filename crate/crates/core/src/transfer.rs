//! The Ruelle operator `ℒ_A φ(x) = Σ_{σy = x} e^{A(y)} φ(y)` on a depth-`n`
//! cylinder basis.
//!
//! Rows of the matrix are targets `w`, columns are sources `a·w(1..n-1)`.
//! The weight of an edge depends only on its source, sampled at the source's
//! canonical point. Matrix-vector products are parallel over rows; each row
//! is summed sequentially, so results do not depend on the thread count.

use std::collections::VecDeque;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expansion::Params;
use crate::potential::PotentialSpec;
use crate::sequence::Word;
use crate::shift::{
    check_transitivity, default_irreducibility_depth, enumerate_words, is_admissible, minimal_continuation,
    prune_dead_ends, CylinderBasis, Decision, Kneading, Transitivity, TransitivityReport,
};

/// Sparse admissible-extension relation in both orientations.
#[derive(Debug)]
pub struct Graph {
    row_ptr: Vec<usize>,
    source: Vec<u32>,
    target: Vec<u32>,
    /// Edge ids grouped by source.
    out_ptr: Vec<usize>,
    out_edges: Vec<u32>,
}

impl Graph {
    fn from_basis(basis: &CylinderBasis) -> Self {
        let n = basis.depth();
        let m = basis.m();
        let rows: Vec<Vec<u32>> = (0..basis.len())
            .into_par_iter()
            .map(|i| {
                let w = basis.word(i);
                let mut cand = vec![0u8; n];
                cand[1..].copy_from_slice(&w[..n - 1]);
                (0..=m)
                    .filter_map(|a| {
                        cand[0] = a;
                        basis.index_of(&cand).map(|j| j as u32)
                    })
                    .collect()
            })
            .collect();
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        row_ptr.push(0);
        let mut source = Vec::new();
        let mut target = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            source.extend_from_slice(r);
            target.extend(std::iter::repeat(i as u32).take(r.len()));
            row_ptr.push(source.len());
        }
        let nodes = rows.len();
        let mut counts = vec![0usize; nodes + 1];
        for &s in &source {
            counts[s as usize + 1] += 1;
        }
        for i in 0..nodes {
            counts[i + 1] += counts[i];
        }
        let out_ptr = counts.clone();
        let mut fill = counts;
        let mut out_edges = vec![0u32; source.len()];
        for (e, &s) in source.iter().enumerate() {
            out_edges[fill[s as usize]] = e as u32;
            fill[s as usize] += 1;
        }
        Graph {
            row_ptr,
            source,
            target,
            out_ptr,
            out_edges,
        }
    }

    pub fn nodes(&self) -> usize {
        self.row_ptr.len() - 1
    }

    pub fn edges(&self) -> usize {
        self.source.len()
    }

    /// Edge ids whose target is `w`.
    pub fn row(&self, w: usize) -> std::ops::Range<usize> {
        self.row_ptr[w]..self.row_ptr[w + 1]
    }

    /// Edge ids whose source is `w`.
    pub fn out_edges(&self, w: usize) -> &[u32] {
        &self.out_edges[self.out_ptr[w]..self.out_ptr[w + 1]]
    }

    pub fn source(&self, e: usize) -> usize {
        self.source[e] as usize
    }

    pub fn target(&self, e: usize) -> usize {
        self.target[e] as usize
    }

    fn reach(&self, forward: bool) -> usize {
        let n = self.nodes();
        if n == 0 {
            return 0;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            let next: Vec<usize> = if forward {
                self.out_edges(v).iter().map(|&e| self.target(e as usize)).collect()
            } else {
                self.row(v).map(|e| self.source(e)).collect()
            };
            for u in next {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.nodes();
        self.reach(true) == n && self.reach(false) == n
    }
}

/// Arithmetic used for matrix applications.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Width of the Collatz–Wielandt bracket on `log λ`, relative to
    /// `max(1, |log λ|)`, accepted as converged.
    pub tol: f64,
    pub max_iter: usize,
    /// Scale `t` above which the log domain is used.
    pub log_threshold: f64,
    pub domain: Option<Domain>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-13,
            max_iter: 20_000,
            log_threshold: 32.0,
            domain: None,
        }
    }
}

/// Perron data, stored as logarithms so that large scales do not overflow.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub log_lambda: f64,
    pub log_psi: Vec<f64>,
    pub log_rho: Vec<f64>,
    pub iterations: usize,
    /// Width of the Collatz–Wielandt bracket on `log λ`.
    pub residual: f64,
    pub converged: bool,
    /// Contraction rate of the iteration, from the residual decay; below 1
    /// exactly when the leading eigenvalue is simple and dominant.
    pub gap_ratio: f64,
    pub domain: Domain,
}

impl Eigen {
    pub fn lambda(&self) -> f64 {
        self.log_lambda.exp()
    }

    pub fn psi(&self) -> Vec<f64> {
        self.log_psi.iter().map(|v| v.exp()).collect()
    }

    pub fn rho(&self) -> Vec<f64> {
        self.log_rho.iter().map(|v| v.exp()).collect()
    }

    /// `μ = ρψ`.
    pub fn mu(&self) -> Vec<f64> {
        self.log_rho.iter().zip(&self.log_psi).map(|(r, p)| (r + p).exp()).collect()
    }
}

/// Digits of lookahead used to discard cylinders that are empty in the shift.
pub const DEFAULT_LOOKAHEAD: usize = 32;

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Refuse parameters outside `m > 2`, `β ≥ m/2 + 2`.
    pub require_regime: bool,
    /// `J` for the irreducibility test; defaults to the kneading orbit scale.
    pub irreducibility_depth: Option<usize>,
    /// Basis words need an admissible continuation of this many digits.
    pub lookahead: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            require_regime: false,
            irreducibility_depth: None,
            lookahead: DEFAULT_LOOKAHEAD,
        }
    }
}

impl BuildOptions {
    pub fn strict() -> Self {
        BuildOptions {
            require_regime: true,
            ..Default::default()
        }
    }
}

/// The discretized operator, optionally with solved eigendata.
#[derive(Clone, Debug)]
pub struct TransferSystem {
    m: u8,
    basis: Arc<CylinderBasis>,
    graph: Arc<Graph>,
    potential: PotentialSpec,
    values: Arc<Vec<f64>>,
    sups: Arc<Vec<f64>>,
    scale: f64,
    log_weights: Arc<Vec<f64>>,
    eigen: Option<Eigen>,
    normalized: bool,
    transitivity: TransitivityReport,
    strongly_connected: bool,
    warnings: Vec<String>,
}

/// Deterministic admissible point in `[w]`: the minimal continuation of
/// `w` to `len` digits.
pub fn canonical_point(w: &[u8], k: &Kneading, len: usize) -> Result<Word> {
    if is_admissible(&Word::from(w), k) == Decision::No {
        return Err(Error::InvalidParams(format!("word {} is not admissible", Word::from(w))));
    }
    minimal_continuation(w, k, len)?
        .map(Word::new)
        .ok_or_else(|| Error::Refused(format!("word {} has no admissible continuation", Word::from(w))))
}

/// Builds the depth-`n` operator for `A`.
///
/// Refuses non-transitive parameters; with `require_regime` also parameters
/// outside the operator regime.
pub fn build_system(
    p: &Params,
    k: &Kneading,
    a: &PotentialSpec,
    n: usize,
    opts: &BuildOptions,
) -> Result<TransferSystem> {
    a.validate(p.m())?;
    if opts.require_regime && !p.operator_regime() {
        return Err(Error::Refused(format!(
            "outside the operator regime: need m > 2 and beta >= m/2 + 2 (m = {}, beta = {})",
            p.m(),
            p.beta()
        )));
    }
    let j = opts.irreducibility_depth.unwrap_or_else(|| default_irreducibility_depth(k));
    let transitivity = check_transitivity(p, k, j);
    if transitivity.verdict == Transitivity::NotTransitive {
        return Err(Error::Refused(format!("shift is not transitive: {}", transitivity.reason)));
    }
    let mut warnings = Vec::new();
    if transitivity.verdict == Transitivity::Unknown {
        warnings.push(format!("transitivity unknown: {}", transitivity.reason));
    }
    let lookahead = opts.lookahead.max(a.needed_digits().saturating_sub(n));
    let (basis, removed) = prune_dead_ends(&enumerate_words(k, n)?, k, lookahead)?;
    if removed > 0 {
        warnings.push(format!(
            "{removed} admissible words of length {n} have no continuation of {lookahead} digits and were dropped"
        ));
    }
    let graph = Graph::from_basis(&basis);
    let strongly_connected = graph.is_strongly_connected();
    if !strongly_connected {
        warnings.push(format!("depth-{n} cylinder graph is not strongly connected"));
    }
    let len = n.max(a.needed_digits());
    let values: Vec<f64> = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let w = basis.word(i);
            if len == n {
                Ok(a.eval(w))
            } else {
                canonical_point(w, k, len).map(|x| a.eval(x.digits()))
            }
        })
        .collect::<Result<_>>()?;
    let sups: Vec<f64> = basis.words().map(|w| a.sup_on_cylinder(w, p.m())).collect();
    let log_weights = (0..graph.edges()).map(|e| values[graph.source(e)]).collect();
    Ok(TransferSystem {
        m: p.m(),
        basis: Arc::new(basis),
        graph: Arc::new(graph),
        potential: a.clone(),
        values: Arc::new(values),
        sups: Arc::new(sups),
        scale: 1.0,
        log_weights: Arc::new(log_weights),
        eigen: None,
        normalized: false,
        transitivity,
        strongly_connected,
        warnings,
    })
}

fn log_sum_exp(it: impl Iterator<Item = f64>) -> f64 {
    let vals: Vec<f64> = it.collect();
    let mx = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if mx == f64::NEG_INFINITY {
        return mx;
    }
    mx + vals.iter().map(|v| (v - mx).exp()).sum::<f64>().ln()
}

/// Bracket `min_i log(ℒv)_i/v_i ≤ log λ ≤ max_i log(ℒv)_i/v_i`.
///
/// Componentwise, so exponentially small entries of `v` still count; a
/// sup-norm residual can stall on a transient at large scales.
fn collatz_wielandt(log_y: &[f64], log_v: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (y, v) in log_y.iter().zip(log_v) {
        let d = if v.is_finite() {
            y - v
        } else if y.is_finite() {
            f64::INFINITY
        } else {
            continue;
        };
        lo = lo.min(d);
        hi = hi.max(d);
    }
    (lo, hi)
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        hi
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

struct PerronVector {
    log_lambda: f64,
    log_v: Vec<f64>,
    iterations: usize,
    residual: f64,
    converged: bool,
    gap_ratio: f64,
}

impl TransferSystem {
    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn basis(&self) -> &CylinderBasis {
        &self.basis
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn depth(&self) -> usize {
        self.basis.depth()
    }

    pub fn potential(&self) -> &PotentialSpec {
        &self.potential
    }

    /// `A(ẑ(w))` per basis word, unscaled.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Upper bounds of `A` on each cylinder, unscaled.
    pub fn cylinder_sups(&self) -> &[f64] {
        &self.sups
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Logarithm of each stored matrix entry, in edge order.
    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn eigen(&self) -> Option<&Eigen> {
        self.eigen.as_ref()
    }

    pub fn solved(&self) -> Result<&Eigen> {
        self.eigen.as_ref().ok_or(Error::Unsolved)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn transitivity(&self) -> &TransitivityReport {
        &self.transitivity
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.strongly_connected
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Number of preimage digits of each basis word.
    pub fn preimage_counts(&self) -> Vec<usize> {
        (0..self.graph.nodes()).map(|w| self.graph.row(w).len()).collect()
    }

    /// The operator for `tA`, unsolved, sharing the basis and samples.
    pub fn scaled(&self, t: f64) -> TransferSystem {
        let log_weights = (0..self.graph.edges())
            .map(|e| t * self.values[self.graph.source(e)])
            .collect();
        TransferSystem {
            scale: t,
            log_weights: Arc::new(log_weights),
            eigen: None,
            normalized: false,
            ..self.clone()
        }
    }

    /// Dense copy `M[target][source]`, for small systems.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.graph.nodes();
        let mut d = vec![vec![0.0; n]; n];
        for w in 0..n {
            for e in self.graph.row(w) {
                d[w][self.graph.source(e)] += self.log_weights[e].exp();
            }
        }
        d
    }

    fn pick_domain(&self, opts: &SolveOptions) -> Domain {
        opts.domain.unwrap_or_else(|| {
            let big = self.log_weights.iter().any(|w| w.abs() > 300.0);
            if self.scale > opts.log_threshold || big {
                Domain::Log
            } else {
                Domain::Linear
            }
        })
    }

    /// `ℒv` (or `ℒ*v` when `transpose`) in linear arithmetic.
    fn apply(&self, weights: &[f64], v: &[f64], transpose: bool) -> Vec<f64> {
        let g = &*self.graph;
        (0..g.nodes())
            .into_par_iter()
            .map(|i| {
                if transpose {
                    g.out_edges(i)
                        .iter()
                        .map(|&e| weights[e as usize] * v[g.target(e as usize)])
                        .sum()
                } else {
                    g.row(i).map(|e| weights[e] * v[g.source(e)]).sum()
                }
            })
            .collect()
    }

    /// `log ℒ exp(v)` (or the transpose).
    fn apply_log(&self, v: &[f64], transpose: bool) -> Vec<f64> {
        let g = &*self.graph;
        let lw = &*self.log_weights;
        (0..g.nodes())
            .into_par_iter()
            .map(|i| {
                if transpose {
                    log_sum_exp(g.out_edges(i).iter().map(|&e| lw[e as usize] + v[g.target(e as usize)]))
                } else {
                    log_sum_exp(g.row(i).map(|e| lw[e] + v[g.source(e)]))
                }
            })
            .collect()
    }

    fn perron(&self, transpose: bool, domain: Domain, opts: &SolveOptions) -> Result<PerronVector> {
        let n = self.graph.nodes();
        if n == 0 {
            return Err(Error::EmptyBasis(self.depth()));
        }
        let weights: Vec<f64> = match domain {
            Domain::Linear => self.log_weights.iter().map(|w| w.exp()).collect(),
            Domain::Log => Vec::new(),
        };
        let mut log_v: Vec<f64> = vec![0.0; n];
        let mut best: Option<PerronVector> = None;
        let mut history: Vec<f64> = Vec::new();
        for it in 1..=opts.max_iter {
            let log_y = match domain {
                Domain::Linear => {
                    let v: Vec<f64> = log_v.iter().map(|x| x.exp()).collect();
                    self.apply(&weights, &v, transpose).into_iter().map(f64::ln).collect()
                }
                Domain::Log => self.apply_log(&log_v, transpose),
            };
            let top = log_y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if !top.is_finite() {
                return Err(Error::Overflow(it));
            }
            let (lo, hi) = collatz_wielandt(&log_y, &log_v);
            let log_lambda = if hi.is_finite() { 0.5 * (lo + hi) } else { top };
            let residual = hi - lo;
            history.push(residual);
            let converged = residual < opts.tol * log_lambda.abs().max(1.0);
            if best.as_ref().is_none_or(|b| residual <= b.residual) || converged {
                let tail = &history[history.len().saturating_sub(11)..];
                let gap_ratio = if tail.len() >= 2 && tail[0] > 0.0 && tail[tail.len() - 1] > 0.0 {
                    (tail[tail.len() - 1] / tail[0]).powf(1.0 / (tail.len() - 1) as f64)
                } else {
                    0.0
                };
                best = Some(PerronVector {
                    log_lambda,
                    log_v: log_v.clone(),
                    iterations: it,
                    residual,
                    converged,
                    gap_ratio,
                });
            }
            if converged {
                break;
            }
            // Step with ℒ + λ̂I: same eigenvectors, and eigenvalues near -λ
            // (near-periodic chains at large t) no longer stall the iteration.
            let shifted: Vec<f64> = log_y
                .iter()
                .zip(&log_v)
                .map(|(y, v)| log_add_exp(*y, log_lambda + v))
                .collect();
            let top = shifted.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            log_v = shifted.iter().map(|y| y - top).collect();
        }
        let mut out = best.expect("at least one iteration");
        out.iterations = out.iterations.max(history.len().min(opts.max_iter));
        Ok(out)
    }

    fn assemble(&self, right: PerronVector, left: PerronVector, domain: Domain) -> Eigen {
        let mut log_rho = left.log_v;
        let z = log_sum_exp(log_rho.iter().copied());
        log_rho.iter_mut().for_each(|r| *r -= z);
        let mut log_psi = right.log_v;
        let c = log_sum_exp(log_rho.iter().zip(&log_psi).map(|(r, p)| r + p));
        log_psi.iter_mut().for_each(|p| *p -= c);
        Eigen {
            log_lambda: right.log_lambda,
            log_psi,
            log_rho,
            iterations: right.iterations.max(left.iterations),
            residual: right.residual.max(left.residual),
            converged: right.converged && left.converged,
            gap_ratio: right.gap_ratio,
            domain,
        }
    }

    /// Perron root and eigenvectors by sup-normalized power iteration.
    ///
    /// Normalization: `Σρ = 1`, `Σρψ = 1`. When the residual never drops
    /// below `tol` the best iterate is kept with `converged = false`.
    pub fn power_solve(&self, opts: &SolveOptions) -> Result<Eigen> {
        let domain = self.pick_domain(opts);
        let right = self.perron(false, domain, opts)?;
        let left = self.perron(true, domain, opts)?;
        Ok(self.assemble(right, left, domain))
    }

    /// Solves in place.
    pub fn solve(&mut self, opts: &SolveOptions) -> Result<&Eigen> {
        let e = self.power_solve(opts)?;
        self.eigen = Some(e);
        Ok(self.eigen.as_ref().unwrap())
    }

    pub fn solved_with(mut self, opts: &SolveOptions) -> Result<TransferSystem> {
        self.solve(opts)?;
        Ok(self)
    }

    /// Fixed points of `L_k(ψ) = ℒ(ψ + 1/k) / ‖ℒ(ψ + 1/k)‖_∞` along the
    /// schedule; `λ_k = ‖ℒ(ψ_k + 1/k)‖_∞`.
    pub fn lk_solve(&self, schedule: &[f64], opts: &SolveOptions) -> Result<LkSolution> {
        let n = self.graph.nodes();
        let weights: Vec<f64> = self.log_weights.iter().map(|w| w.exp()).collect();
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::Overflow(0));
        }
        let mut psi = vec![1.0; n];
        let mut steps = Vec::with_capacity(schedule.len());
        let mut converged = true;
        for &k in schedule {
            let mut lambda_k = 0.0;
            let mut ok = false;
            let mut iters = 0;
            for it in 1..=opts.max_iter {
                let shifted: Vec<f64> = psi.iter().map(|p| p + 1.0 / k).collect();
                let y = self.apply(&weights, &shifted, false);
                lambda_k = y.iter().copied().fold(0.0, f64::max);
                let next: Vec<f64> = y.iter().map(|v| v / lambda_k).collect();
                let diff = next.iter().zip(&psi).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                psi = next;
                iters = it;
                if diff < opts.tol {
                    ok = true;
                    break;
                }
            }
            converged &= ok;
            steps.push(LkStep {
                k,
                lambda_k,
                iterations: iters,
                converged: ok,
            });
        }
        let domain = Domain::Linear;
        let lambda = steps.last().map(|s| s.lambda_k).unwrap_or(f64::NAN);
        let log_v: Vec<f64> = psi.iter().map(|p| p.ln()).collect();
        let (lo, hi) = collatz_wielandt(&self.apply_log(&log_v, false), &log_v);
        let right = PerronVector {
            log_lambda: lambda.ln(),
            log_v,
            iterations: steps.iter().map(|s| s.iterations).sum(),
            residual: hi - lo,
            converged,
            gap_ratio: 0.0,
        };
        let left = self.perron(true, domain, opts)?;
        let eigen = self.assemble(right, left, domain);
        Ok(LkSolution { eigen, steps })
    }

    /// `‖ℒψ/λ - ψ‖_∞ / ‖ψ‖_∞`.
    pub fn eigen_residual(&self, e: &Eigen) -> f64 {
        let shift = e.log_psi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let v: Vec<f64> = e.log_psi.iter().map(|p| p - shift).collect();
        let y = self.apply_log(&v, false);
        y.iter()
            .zip(&v)
            .map(|(a, b)| ((a - e.log_lambda).exp() - b.exp()).abs())
            .fold(0.0, f64::max)
    }

    /// The operator of `Ā = A + log ψ - log ψ∘σ - log λ`, whose rows sum to 1.
    ///
    /// Eigendata becomes `λ = 1`, `ψ = 1`, `ρ = μ`.
    pub fn normalize_potential(&self) -> Result<TransferSystem> {
        let e = self.solved()?;
        if e.log_psi.iter().any(|p| !p.is_finite()) {
            return Err(Error::Refused("eigenfunction vanishes on some cylinder".into()));
        }
        let g = &*self.graph;
        let lw: Vec<f64> = (0..g.edges())
            .map(|i| {
                self.log_weights[i] + e.log_psi[g.source(i)] - e.log_lambda - e.log_psi[g.target(i)]
            })
            .collect();
        let mu = e.mu();
        let z: f64 = mu.iter().sum();
        let eigen = Eigen {
            log_lambda: 0.0,
            log_psi: vec![0.0; g.nodes()],
            log_rho: mu.iter().map(|m| (m / z).ln()).collect(),
            ..e.clone()
        };
        Ok(TransferSystem {
            log_weights: Arc::new(lw),
            eigen: Some(eigen),
            normalized: true,
            ..self.clone()
        })
    }

    /// Shifts each row's log weights so that its row sums to 1 up to rounding.
    ///
    /// Removes the eigen-solver error left in a normalized operator, which
    /// grows with the spread of `log ψ` at large scales.
    pub fn stochastic_rows(&self) -> TransferSystem {
        let g = &*self.graph;
        let mut lw = self.log_weights.to_vec();
        for w in 0..g.nodes() {
            let r = g.row(w);
            let z = log_sum_exp(lw[r.clone()].iter().copied());
            lw[r].iter_mut().for_each(|l| *l -= z);
        }
        TransferSystem {
            log_weights: Arc::new(lw),
            ..self.clone()
        }
    }

    /// `‖ℒ1 - 1‖_∞`.
    pub fn row_sum_residual(&self) -> f64 {
        let g = &*self.graph;
        (0..g.nodes())
            .map(|w| (g.row(w).map(|e| self.log_weights[e].exp()).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `ℒ^n φ` in linear arithmetic.
    pub fn iterate(&self, phi: &[f64], n: usize) -> Result<Vec<f64>> {
        let weights: Vec<f64> = self.log_weights.iter().map(|w| w.exp()).collect();
        let mut v = phi.to_vec();
        for step in 1..=n {
            v = self.apply(&weights, &v, false);
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::Overflow(step));
            }
        }
        Ok(v)
    }

    /// `log ℒ^n exp(φ)`; never overflows.
    pub fn iterate_log(&self, log_phi: &[f64], n: usize) -> Vec<f64> {
        (0..n).fold(log_phi.to_vec(), |v, _| self.apply_log(&v, false))
    }

    /// `‖λ^{-k} ℒ^k 1 - ψ ∫1 dρ‖_∞` for `k = 1..=steps`.
    pub fn uniform_limit_trace(&self, steps: usize) -> Result<Vec<f64>> {
        let e = self.solved()?;
        let mass = log_sum_exp(e.log_rho.iter().copied());
        let mut v = vec![0.0; self.graph.nodes()];
        let mut out = Vec::with_capacity(steps);
        for _ in 0..steps {
            v = self.apply_log(&v, false).into_iter().map(|x| x - e.log_lambda).collect();
            let d = v
                .iter()
                .zip(&e.log_psi)
                .map(|(a, p)| (a.exp() - (p + mass).exp()).abs())
                .fold(0.0, f64::max);
            out.push(d);
        }
        Ok(out)
    }

    /// `max_w |⟨ℒφ, ρ⟩ - λ⟨φ, ρ⟩|`-type duality defect for a test vector.
    pub fn duality_defect(&self, phi: &[f64]) -> Result<f64> {
        let e = self.solved()?;
        let weights: Vec<f64> = self.log_weights.iter().map(|w| w.exp()).collect();
        let lphi = self.apply(&weights, phi, false);
        let rho = e.rho();
        let lhs: f64 = lphi.iter().zip(&rho).map(|(a, b)| a * b).sum();
        let rhs: f64 = e.lambda() * phi.iter().zip(&rho).map(|(a, b)| a * b).sum::<f64>();
        Ok((lhs - rhs).abs() / rhs.abs().max(1.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LkStep {
    pub k: f64,
    pub lambda_k: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub struct LkSolution {
    pub eigen: Eigen,
    pub steps: Vec<LkStep>,
}

/// `k = 10, 10², …, 10¹⁴`.
pub fn default_lk_schedule() -> Vec<f64> {
    (1..=14).map(|i| 10f64.powi(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::DEFAULT_KNEADING_DEPTH;

    fn system(m: u8, beta: &str, a: &str, n: usize) -> TransferSystem {
        let p = Params::parse(m, beta).unwrap();
        let k = Kneading::new(&p, DEFAULT_KNEADING_DEPTH);
        build_system(&p, &k, &a.parse().unwrap(), n, &BuildOptions::strict()).unwrap()
    }

    #[test]
    fn full_shift_depth_one_is_all_ones() {
        let t = system(3, "4", "zero", 1);
        assert_eq!(t.to_dense(), vec![vec![1.0; 4]; 4]);
        let e = t.power_solve(&SolveOptions::default()).unwrap();
        assert!((e.lambda() - 4.0).abs() < 1e-12);
        assert!(e.converged);
    }

    #[test]
    fn digit_table_closed_form() {
        let t = system(3, "4", "digit:0.3,-1,0.5,2", 3);
        let e = t.power_solve(&SolveOptions::default()).unwrap();
        let expect: f64 = [0.3f64, -1.0, 0.5, 2.0].iter().map(|c| c.exp()).sum();
        assert!((e.lambda() - expect).abs() < 1e-10 * expect);
        let psi = e.psi();
        assert!(psi.iter().all(|p| (p - psi[0]).abs() < 1e-10));
        let rho: f64 = e.rho().iter().sum();
        let rp: f64 = e.mu().iter().sum();
        assert!((rho - 1.0).abs() < 1e-12 && (rp - 1.0).abs() < 1e-12);
    }

    #[test]
    fn row_counts_match_preimages() {
        let t = system(3, "3.5", "zero", 3);
        let basis = t.basis();
        let dense = t.to_dense();
        for (i, w) in basis.words().enumerate() {
            let count = crate::shift::preimage_digits(w, basis).len() as f64;
            assert_eq!(dense[i].iter().sum::<f64>(), count);
        }
    }

    #[test]
    fn canonical_points() {
        let p = Params::parse(3, "4").unwrap();
        let k = Kneading::new(&p, 32);
        assert_eq!(canonical_point(&[3, 1], &k, 6).unwrap().digits(), &[3, 1, 0, 0, 0, 0]);
        let p = Params::parse(2, "beta_T").unwrap();
        let k = Kneading::new(&p, 32);
        // After 0 the smallest continuation follows the reflected kneading bound 01^∞.
        assert_eq!(canonical_point(&[0], &k, 6).unwrap().digits(), &[0, 1, 1, 1, 1, 1]);
        let p = Params::parse(3, "3.5").unwrap();
        let k = Kneading::new(&p, 64);
        let basis = prune_dead_ends(&enumerate_words(&k, 4).unwrap(), &k, 30).unwrap().0;
        for w in basis.words() {
            let x = canonical_point(w, &k, 30).unwrap();
            assert_eq!(is_admissible(&x, &k), Decision::Yes);
        }
        assert!(canonical_point(&[0, 2, 1, 1], &k, 30).is_err());
    }

    #[test]
    fn normalization_and_idempotence() {
        let mut t = system(3, "3.5", "geometric:c=1,theta=0.25,K=20", 4);
        t.solve(&SolveOptions::default()).unwrap();
        let nt = t.normalize_potential().unwrap();
        assert!(nt.row_sum_residual() < 1e-12);
        let again = nt.clone().solved_with(&SolveOptions::default()).unwrap();
        assert!(again.solved().unwrap().log_lambda.abs() < 1e-12);
        let nn = again.normalize_potential().unwrap();
        let diff = nn
            .log_weights()
            .iter()
            .zip(nt.log_weights())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-10);
    }

    #[test]
    fn log_and_linear_domains_agree() {
        let t = system(4, "4", "digit:0,1,0.5,2,-1", 3).scaled(3.0);
        let lin = t
            .power_solve(&SolveOptions {
                domain: Some(Domain::Linear),
                ..Default::default()
            })
            .unwrap();
        let log = t
            .power_solve(&SolveOptions {
                domain: Some(Domain::Log),
                ..Default::default()
            })
            .unwrap();
        assert!((lin.log_lambda - log.log_lambda).abs() < 1e-12);
        for (a, b) in lin.log_psi.iter().zip(&log.log_psi) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn linear_iteration_overflows_loudly() {
        let t = system(3, "4", "digit:300,0,0,0", 1);
        assert!(matches!(t.iterate(&[1.0; 4], 5), Err(Error::Overflow(_))));
        let v = t.iterate_log(&[0.0; 4], 5);
        assert!(v.iter().all(|x| x.is_finite()));
        assert_eq!(t.iterate(&[1.0; 4], 0).unwrap(), vec![1.0; 4]);
    }

    #[test]
    fn refuses_outside_regime() {
        let p = Params::parse(2, "beta_T").unwrap();
        let k = Kneading::new(&p, 32);
        let err = build_system(&p, &k, &PotentialSpec::Zero, 3, &BuildOptions::strict());
        assert!(matches!(err, Err(Error::Refused(_))));
        assert!(build_system(&p, &k, &PotentialSpec::Zero, 3, &BuildOptions::default()).is_ok());
    }
}
