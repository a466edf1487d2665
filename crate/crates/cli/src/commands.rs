use serde_json::{json, Value};

use symbeta::expansion::{self, beta_t, golden_ratio, scalar_f64};
use symbeta::shift::{
    check_transitivity, default_irreducibility_depth, digit_interval, enumerate_words, forbidden_words,
    preimage_digits, prune_dead_ends, unique_expansion_test, word_counts, Decision, Transitivity,
    TransitivityReport,
};
use symbeta::thermo::{self, EdgeMeasure, GibbsMeasure};
use symbeta::transfer::{default_lk_schedule, DEFAULT_LOOKAHEAD};
use symbeta::{build_system, BuildOptions, Kneading, Params, Sequence, TransferSystem};

use crate::config::RunConfig;
use crate::report::{Meta, Report, Table};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const INVALID_CONFIG: i32 = 2;
    pub const REFUSED: i32 = 3;
    pub const NOT_CONVERGED: i32 = 4;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<symbeta::Error> for CliError {
    fn from(e: symbeta::Error) -> Self {
        use symbeta::Error as E;
        let code = match e {
            E::Refused(_) => exit::REFUSED,
            E::InvalidParams(_)
            | E::OutOfRange(_)
            | E::InvalidPotential(_)
            | E::Parse(_)
            | E::DigitOutOfRange { .. } => exit::INVALID_CONFIG,
            _ => exit::FAILURE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Report, CliError>;

/// Seed for the random test measures and trial functions; fixed so that
/// reports are reproducible.
const SEED: u64 = 0x5eed;
const RANDOM_MEASURES: u64 = 16;
const INF_TRIALS: usize = 8;
/// Steps of the uniform-limit trace reported by `spectrum`.
const LIMIT_STEPS: usize = 200;

fn decision(d: Decision) -> Value {
    match d {
        Decision::Yes => json!(true),
        Decision::No => json!(false),
        Decision::Unknown => json!("unknown"),
    }
}

fn seq_text(s: &Sequence, digits: usize) -> String {
    match s {
        Sequence::Periodic(p) => p.to_string(),
        Sequence::Truncated(w) => {
            let d = &w.digits()[..w.len().min(digits)];
            format!("{}…", symbeta::Word::from(d))
        }
    }
}

fn prefix_text(s: &Sequence, digits: usize) -> String {
    format!("{}…", symbeta::Word::new(s.digits_upto(digits)))
}

fn regime(r: &mut Report, p: &Params, k: &Kneading) -> TransitivityReport {
    let j = default_irreducibility_depth(k);
    let t = check_transitivity(p, k, j);
    r.regime("operator_regime", p.operator_regime());
    r.regime("transitivity", t.verdict.to_string());
    r.regime("transitivity_reason", t.reason.clone());
    r.regime("evidence_depth", j);
    r.regime("kneading_exact", k.is_exact());
    if !k.is_exact() {
        r.warn(format!(
            "kneading sequence has no detected period; comparisons beyond {} digits are undecided",
            k.depth()
        ));
    }
    if t.verdict == Transitivity::Unknown {
        r.warn(format!("transitivity unknown: {}", t.reason));
    }
    t
}

pub fn expand(cfg: &RunConfig, p: &Params) -> CmdResult {
    let mut r = Report::new("expand", cfg);
    let k = cfg.kneading(p);
    regime(&mut r, p, &k);
    let a = p.scalar(&cfg.a)?;
    let n = cfg.digits;
    let meta = Meta {
        depth: Some(n),
        tol: None,
    };
    let g = expansion::greedy_sequence(&a, p, n)?;
    let l = expansion::lazy_sequence(&a, p, n)?;
    let qg = expansion::quasi_greedy(&a, p, n)?;
    let ql = expansion::quasi_lazy(&a, p, n)?;
    r.result("a", scalar_f64(&a, p), Meta::default());
    r.result("greedy", g.digits.to_string(), meta);
    r.result("greedy_exact", g.exact.map(|s| s.to_string()), Meta::default());
    r.result("lazy", l.digits.to_string(), meta);
    r.result("lazy_exact", l.exact.map(|s| s.to_string()), Meta::default());
    r.result("quasi_greedy", prefix_text(&qg, n), meta);
    r.result("quasi_greedy_exact", qg.is_exact().then(|| qg.to_string()), Meta::default());
    r.result("quasi_lazy", prefix_text(&ql, n), meta);
    r.result("unique", decision(unique_expansion_test(&a, p, n)?), meta);
    Ok(r)
}

pub fn check(cfg: &RunConfig, p: &Params) -> CmdResult {
    let mut r = Report::new("check", cfg);
    let k = cfg.kneading(p);
    let t = regime(&mut r, p, &k);
    let m = p.m();
    let n = cfg.depth;
    let depth = Meta {
        depth: Some(n),
        tol: None,
    };
    let j = default_irreducibility_depth(&k);
    r.result("golden_ratio", golden_ratio(m), Meta::default());
    r.result("beta_t", beta_t(m, 1e-15), Meta { depth: None, tol: Some(1e-15) });
    r.result("beta", p.beta().approx(), Meta::default());
    r.result("kneading", seq_text(k.upper(), cfg.digits), Meta::default());
    r.result("self_admissible", decision(k.self_admissible()), Meta::default());
    r.result("beta_t_branch", t.beta_t_branch, Meta::default());
    r.result("irreducible", decision(t.irreducible.decision), Meta { depth: Some(j), tol: None });
    r.result("irreducible_checked", t.irreducible.checked.len(), Meta::default());
    r.result("irreducible_skipped", json!(t.irreducible.skipped), Meta::default());

    let di = digit_interval(p);
    r.result("digit_interval", json!([di.lo, di.hi]), Meta::default());
    r.result("interval_digits", json!(di.digits), Meta::default());
    let (basis, dropped) = prune_dead_ends(&enumerate_words(&k, n)?, &k, DEFAULT_LOOKAHEAD)?;
    if dropped > 0 {
        r.warn(format!("{dropped} admissible words of length {n} have empty cylinders"));
    }
    let pre: Vec<Vec<u8>> = basis.words().map(|w| preimage_digits(w, &basis)).collect();
    let counts: Vec<usize> = pre.iter().map(Vec::len).collect();
    let min = counts.iter().copied().min().unwrap_or(0);
    let max = counts.iter().copied().max().unwrap_or(0);
    r.result("preimage_count_min", min, depth);
    r.result("preimage_count_max", max, depth);
    if min < 2 {
        r.warn(format!("some depth-{n} cylinder has {min} preimage digit(s), fewer than 2"));
    }
    if p.operator_regime() {
        let missing = pre
            .iter()
            .filter(|s| !di.digits.iter().all(|d| s.contains(d)))
            .count();
        if missing > 0 {
            r.warn(format!("{missing} cylinders miss a digit of the preimage interval"));
        }
    }

    let forbidden = forbidden_words(&k, n)?;
    r.result("forbidden_words", forbidden.len(), depth);
    let mut table = Table::new("forbidden", &["length", "word"], depth);
    for w in &forbidden {
        table.push(vec![json!(w.len()), json!(w.to_string())]);
    }
    r.tables.push(table);
    Ok(r)
}

pub fn words(cfg: &RunConfig, p: &Params) -> CmdResult {
    let mut r = Report::new("words", cfg);
    let k = cfg.kneading(p);
    regime(&mut r, p, &k);
    let n = cfg.depth;
    let counts = word_counts(&k, n)?;
    let mut table = Table::new("counts", &["length", "count", "log_count_per_digit"], Meta::default());
    for (i, c) in counts.iter().enumerate() {
        let len = i + 1;
        table.push(vec![json!(len), json!(c), json!((*c as f64).ln() / len as f64)]);
    }
    r.tables.push(table);
    let basis = enumerate_words(&k, n)?;
    let (live, dropped) = prune_dead_ends(&basis, &k, DEFAULT_LOOKAHEAD)?;
    let depth = Meta {
        depth: Some(n),
        tol: None,
    };
    r.result("words", basis.len(), depth);
    r.result("nonempty_cylinders", live.len(), depth);
    if dropped > 0 {
        r.warn(format!("{dropped} admissible words of length {n} have empty cylinders"));
    }
    let limit = if cfg.dump { basis.len() } else { cfg.top.min(basis.len()) };
    let mut list = Table::new("words", &["index", "word", "nonempty"], depth);
    for (i, w) in basis.words().take(limit).enumerate() {
        list.push(vec![
            json!(i),
            json!(symbeta::Word::from(w).to_string()),
            json!(live.contains(w)),
        ]);
    }
    r.tables.push(list);
    Ok(r)
}

fn build(cfg: &RunConfig, p: &Params, k: &Kneading, strict: bool) -> Result<TransferSystem, CliError> {
    let opts = BuildOptions {
        require_regime: strict,
        ..Default::default()
    };
    Ok(build_system(p, k, &cfg.potential, cfg.depth, &opts)?)
}

fn refuse_unless_transitive(v: Transitivity) -> Result<(), CliError> {
    if v == Transitivity::NotTransitive {
        return Err(CliError {
            code: exit::REFUSED,
            message: "refused: the shift is not transitive".into(),
        });
    }
    Ok(())
}

pub fn spectrum(cfg: &RunConfig, p: &Params) -> CmdResult {
    let mut r = Report::new("spectrum", cfg);
    let k = cfg.kneading(p);
    refuse_unless_transitive(regime(&mut r, p, &k).verdict)?;
    if !p.operator_regime() {
        r.warn("parameters lie outside the operator regime");
    }
    let n = cfg.depth;
    let opts = cfg.solve_options();
    let meta = Meta {
        depth: Some(n),
        tol: Some(cfg.tol),
    };
    let sys = build(cfg, p, &k, false)?.solved_with(&opts)?;
    for w in sys.warnings() {
        r.warn(w.clone());
    }
    let e = sys.solved()?.clone();
    if !e.converged {
        r.not_converged = true;
        r.warn(format!("power iteration stopped at max_iter with residual {:e}", e.residual));
    }
    r.result("cylinders", sys.basis().len(), meta);
    r.result("edges", sys.graph().edges(), meta);
    r.result("strongly_connected", sys.is_strongly_connected(), meta);
    r.result("lambda", e.lambda(), meta);
    r.result("pressure", e.log_lambda, meta);
    r.result("iterations", e.iterations, meta);
    r.result("residual", e.residual, meta);
    r.result("converged", e.converged, meta);
    r.result("gap_ratio", e.gap_ratio, meta);
    r.result("domain", format!("{:?}", e.domain).to_lowercase(), meta);
    r.result("eigen_residual", sys.eigen_residual(&e), meta);
    r.result("row_sum_residual", sys.normalize_potential()?.row_sum_residual(), meta);
    r.result("psi_min", e.psi().into_iter().fold(f64::INFINITY, f64::min), meta);
    let trace = sys.uniform_limit_trace(LIMIT_STEPS)?;
    r.result("uniform_limit_distance", *trace.last().unwrap_or(&f64::NAN), Meta {
        depth: Some(LIMIT_STEPS),
        tol: None,
    });

    match sys.lk_solve(&default_lk_schedule(), &opts) {
        Ok(lk) => {
            r.result("lk_lambda", lk.eigen.lambda(), meta);
            r.result("lk_difference", (lk.eigen.lambda() - e.lambda()).abs(), meta);
            if !lk.eigen.converged {
                r.warn("L_k iteration did not converge at every k");
            }
        }
        Err(err) => r.warn(format!("L_k solver skipped: {err}")),
    }

    let next = build_system(p, &k, &cfg.potential, n + 1, &BuildOptions::default())
        .and_then(|s| s.power_solve(&opts));
    match next {
        Ok(next) => {
            let d = (next.log_lambda - e.log_lambda).abs();
            r.result("depth_increment", d, Meta {
                depth: Some(n + 1),
                tol: Some(cfg.tol),
            });
            r.result("holder_bound", cfg.potential.variation_bound(n, p.m()), meta);
        }
        Err(err) => r.warn(format!("depth {} comparison skipped: {err}", n + 1)),
    }

    let psi = e.psi();
    let rho = e.rho();
    let mu = e.mu();
    let mut order: Vec<usize> = (0..psi.len()).collect();
    if !cfg.dump {
        order.sort_by(|&i, &j| mu[j].total_cmp(&mu[i]).then(i.cmp(&j)));
        order.truncate(cfg.top);
    }
    let mut table = Table::new("cylinders", &["word", "psi", "rho", "mu"], meta);
    for i in order {
        table.push(vec![
            json!(symbeta::Word::from(sys.basis().word(i)).to_string()),
            json!(psi[i]),
            json!(rho[i]),
            json!(mu[i]),
        ]);
    }
    r.tables.push(table);
    Ok(r)
}

fn strict_base(cfg: &RunConfig, p: &Params, k: &Kneading, r: &mut Report) -> Result<TransferSystem, CliError> {
    let base = build(cfg, p, k, true)?;
    for w in base.warnings() {
        r.warn(w.clone());
    }
    Ok(base)
}

/// Fixed points and 2-cycles, kept when their orbit is admissible.
fn periodic_test_measures(s: &TransferSystem) -> Vec<EdgeMeasure> {
    let m = s.m();
    let mut periods: Vec<Vec<u8>> = (0..=m).map(|d| vec![d]).collect();
    for a in 0..=m {
        for b in a + 1..=m {
            periods.push(vec![a, b]);
        }
    }
    periods
        .iter()
        .filter_map(|per| EdgeMeasure::periodic_orbit(s, per))
        .collect()
}

pub fn thermo(cfg: &RunConfig, p: &Params) -> CmdResult {
    let mut r = Report::new("thermo", cfg);
    let k = cfg.kneading(p);
    refuse_unless_transitive(regime(&mut r, p, &k).verdict)?;
    let base = strict_base(cfg, p, &k, &mut r)?;
    let opts = cfg.solve_options();
    let meta = Meta {
        depth: Some(cfg.depth),
        tol: Some(cfg.tol),
    };
    let mut table = Table::new(
        "thermo",
        &[
            "t",
            "pressure",
            "entropy",
            "average",
            "identity_defect",
            "inf_minimum",
            "inf_u0_defect",
            "min_variational_gap",
            "gibbs_invariance_defect",
            "converged",
        ],
        meta,
    );
    for &t in &cfg.t_grid {
        let s = base.scaled(t).solved_with(&opts)?;
        let e = s.solved()?;
        if !e.converged {
            r.not_converged = true;
            r.warn(format!("power iteration did not converge at t = {t}"));
        }
        let pr = thermo::pressure(&s)?;
        let h = thermo::entropy_of_gibbs(&s)?;
        let avg = thermo::average(&s)?;
        let inf = thermo::entropy_inf_check(&s, INF_TRIALS, SEED)?;
        let mut gaps: Vec<f64> = (0..RANDOM_MEASURES)
            .map(|i| thermo::variational_gap(&s, &EdgeMeasure::random_markov(&s, SEED + i)))
            .collect::<Result<_, _>>()?;
        for nu in periodic_test_measures(&s) {
            gaps.push(thermo::variational_gap(&s, &nu)?);
        }
        let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
        if min_gap < -1e-8 {
            r.warn(format!("variational gap {min_gap:e} below -1e-8 at t = {t}"));
        }
        if !inf.holds(1e-8) {
            r.warn(format!("entropy infimum check fails at t = {t}"));
        }
        let gibbs = GibbsMeasure::of(&s)?;
        table.push(vec![
            json!(t),
            json!(pr),
            json!(h),
            json!(avg),
            json!((pr - h - t * avg).abs()),
            json!(inf.minimum),
            json!((inf.at_u0 - inf.entropy).abs()),
            json!(min_gap),
            json!(gibbs.shift_invariance_defect(&s)),
            json!(e.converged),
        ]);
    }
    r.result("t_points", cfg.t_grid.len(), meta);
    r.result("random_measures", RANDOM_MEASURES, Meta::default());
    r.tables.push(table);
    Ok(r)
}

pub fn zerotemp(cfg: &RunConfig, p: &Params) -> CmdResult {
    let mut r = Report::new("zerotemp", cfg);
    let k = cfg.kneading(p);
    refuse_unless_transitive(regime(&mut r, p, &k).verdict)?;
    let base = strict_base(cfg, p, &k, &mut r)?;
    let curve = thermo::zero_temperature_scan(&base, &k, &cfg.t_grid, &cfg.solve_options(), cfg.max_period)?;
    for w in &curve.warnings {
        r.warn(w.clone());
    }
    if curve.records.iter().any(|c| !c.converged) {
        r.not_converged = true;
    }
    let meta = Meta {
        depth: Some(cfg.depth),
        tol: Some(cfg.tol),
    };
    let (lo, hi) = curve.max_avg_interval;
    r.result("max_avg_lower", lo, Meta {
        depth: Some(cfg.max_period),
        tol: None,
    });
    r.result("max_avg_upper", hi, meta);
    r.result("max_avg_slope", curve.max_avg_slope, meta);
    r.result("residual_entropy", curve.residual_entropy, meta);
    r.result("richardson_entropy", curve.richardson, meta);
    r.result("cesaro_entropy", curve.cesaro_entropy, meta);
    r.result("min_convexity", curve.min_convexity(), meta);
    r.result("average_decrease", curve.average_decrease(), meta);
    r.result("max_identity_defect", curve.max_identity_defect(), meta);
    if curve.average_decrease() > 1e-8 {
        r.warn("average decreases along the grid by more than 1e-8");
    }
    if curve.min_convexity() < -1e-8 {
        r.warn("pressure fails discrete convexity by more than 1e-8");
    }
    let mut table = Table::new(
        "curve",
        &["t", "pressure", "entropy", "average", "identity_defect", "converged"],
        meta,
    );
    for c in &curve.records {
        table.push(vec![
            json!(c.t),
            json!(c.pressure),
            json!(c.entropy),
            json!(c.average),
            json!(c.identity_defect),
            json!(c.converged),
        ]);
    }
    r.tables.push(table);
    Ok(r)
}
