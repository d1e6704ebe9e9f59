use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::operators::probe_monotone;
use crate::rng;
use crate::sharpness::SAFETY_FACTOR;
use crate::solvers::{
    self, check_step_decay, check_telescoping_exact, check_telescoping_gpm, check_trigger, exact_ppa_iteration_bound,
    gpm_iteration_bound, gpm_trigger_threshold, ErrorSchedule, Flag, IterateTrace, Method, SolverConfig,
};
use crate::Vector;

use super::problem::{self, ProblemInstance};

pub const MONOTONE_PROBE_SAMPLES: usize = 500;
/// Step norms of inexact runs must be non-increasing from this record on.
pub const DECAY_FROM: usize = 10;
pub const DECAY_SLACK: f64 = 1e-12;
pub const DEFAULT_SEED: u64 = 42;
const STARTS_PER_PAIR: usize = 5;

/// One solver run: a problem, a configuration and a starting point.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub problem: ProblemInstance,
    pub config: SolverConfig,
    pub x1: Vector,
}

impl Experiment {
    /// Fills `μ` and `L` from the problem when the configuration leaves them
    /// open.
    pub fn new(problem: ProblemInstance, mut config: SolverConfig, x1: Vector) -> Self {
        config.mu = config.mu.or(problem.mu);
        config.lipschitz = config.lipschitz.or(problem.lipschitz);
        Experiment { problem, config, x1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A hypothesis of the relevant theorem is not met, so no termination
    /// claim is checked.
    NoVerdict,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NoVerdict => "no_verdict",
        }
    }
}

/// One report row. Every number the bound depends on is recorded so that
/// the bound can be recomputed from the row alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub run: usize,
    pub problem: String,
    pub method: Method,
    pub cfg_digest: String,
    pub dist1: f64,
    pub a: Option<f64>,
    pub sigma: Option<f64>,
    pub mu: Option<f64>,
    pub lipschitz: Option<f64>,
    /// Modulus after the safety factor, as used by the bound.
    pub alpha_used: Option<f64>,
    pub l_obs: Option<usize>,
    pub bound: Option<f64>,
    pub monotone: Flag,
    pub step_window: Flag,
    pub error_decay: Flag,
    pub fejer: (usize, usize),
    pub contraction: (usize, usize),
    pub step_bound: (usize, usize),
    pub telescoping: Flag,
    pub trigger: Flag,
    pub step_decay: Flag,
    pub iterations: usize,
    pub verdict: Verdict,
    pub note: String,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunRow {
    /// Recompute the bound from the recorded inputs.
    pub fn recompute_bound(&self) -> Option<f64> {
        let alpha = self.alpha_used?;
        match self.method {
            Method::ExactPpa => exact_ppa_iteration_bound(self.dist1, self.a?, alpha).ok(),
            Method::Gpm => gpm_iteration_bound(self.dist1, self.mu?, self.lipschitz?, self.sigma?, alpha).ok(),
            Method::InexactPpa => None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentReport {
    pub rows: Vec<RunRow>,
    pub traces: Vec<Option<IterateTrace>>,
    pub wall_time: Duration,
}

pub const REPORT_COLUMNS: &[&str] = &[
    "run",
    "problem",
    "method",
    "cfg_digest",
    "dist1",
    "a",
    "sigma",
    "mu",
    "L",
    "alpha_used",
    "l_obs",
    "bound",
    "monotone",
    "step_window",
    "error_decay",
    "fejer_pass",
    "fejer_fail",
    "contraction_pass",
    "contraction_fail",
    "step_bound_pass",
    "step_bound_fail",
    "telescoping",
    "trigger",
    "step_decay",
    "iterations",
    "verdict",
    "note",
];

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

impl ExperimentReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == verdict).count()
    }

    /// No run failed. Runs without a verdict do not count against the suite.
    pub fn all_pass(&self) -> bool {
        self.count(Verdict::Fail) == 0
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(REPORT_COLUMNS)?;
        for r in &self.rows {
            w.write_record([
                r.run.to_string(),
                r.problem.clone(),
                r.method.to_string(),
                r.cfg_digest.clone(),
                num(r.dist1),
                opt(r.a),
                opt(r.sigma),
                opt(r.mu),
                opt(r.lipschitz),
                opt(r.alpha_used),
                r.l_obs.map(|l| l.to_string()).unwrap_or_default(),
                opt(r.bound),
                r.monotone.to_string(),
                r.step_window.to_string(),
                r.error_decay.to_string(),
                r.fejer.0.to_string(),
                r.fejer.1.to_string(),
                r.contraction.0.to_string(),
                r.contraction.1.to_string(),
                r.step_bound.0.to_string(),
                r.step_bound.1.to_string(),
                r.telescoping.to_string(),
                r.trigger.to_string(),
                r.step_decay.to_string(),
                r.iterations.to_string(),
                r.verdict.as_str().to_string(),
                r.note.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "runs: {}  pass: {}  fail: {}  no verdict: {}  wall time: {:.3} s",
            self.rows.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::NoVerdict),
            self.wall_time.as_secs_f64()
        );
        for r in &self.rows {
            let l = r.l_obs.map_or("-".to_string(), |l| l.to_string());
            let b = r.bound.map_or("-".to_string(), |b| format!("{b:.3}"));
            let _ = write!(
                s,
                "{:>4} {:<24} {:<11} l_obs={:<4} bound={:<10} {}",
                r.run,
                r.problem,
                r.method.name(),
                l,
                b,
                r.verdict.as_str()
            );
            if !r.note.is_empty() {
                let _ = write!(s, "  ({})", r.note);
            }
            let _ = writeln!(s, "  [{:.1} ms]", r.wall_time.as_secs_f64() * 1e3);
        }
        let _ = writeln!(s, "overall: {}", if self.all_pass() { "PASS" } else { "FAIL" });
        s
    }

    /// Writes `report.csv`, `summary.txt` and one trace per run under
    /// `traces/`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        let traces = dir.join("traces");
        std::fs::create_dir_all(&traces)?;
        for (row, trace) in self.rows.iter().zip(&self.traces) {
            if let Some(t) = trace {
                let name = format!("{:03}_{}_{}.csv", row.run, row.problem, row.method.name());
                t.write_csv(std::fs::File::create(traces.join(name))?)?;
            }
        }
        self.write_csv(std::fs::File::create(dir.join("report.csv"))?)?;
        std::fs::write(dir.join("summary.txt"), self.summary())?;
        Ok(())
    }
}

/// Runs one experiment and judges it against the bound of its method.
pub fn run_experiment(index: usize, exp: &Experiment, seed: u64) -> (RunRow, Option<IterateTrace>) {
    let started = Instant::now();
    let problem = &exp.problem;
    let cfg = &exp.config;
    let mut row = RunRow {
        run: index,
        problem: problem.name.clone(),
        method: cfg.method,
        cfg_digest: cfg.digest(),
        dist1: f64::NAN,
        a: None,
        sigma: None,
        mu: None,
        lipschitz: None,
        alpha_used: None,
        l_obs: None,
        bound: None,
        monotone: Flag::NotApplicable,
        step_window: Flag::NotApplicable,
        error_decay: Flag::NotApplicable,
        fejer: (0, 0),
        contraction: (0, 0),
        step_bound: (0, 0),
        telescoping: Flag::NotApplicable,
        trigger: Flag::NotApplicable,
        step_decay: Flag::NotApplicable,
        iterations: 0,
        verdict: Verdict::NoVerdict,
        note: String::new(),
        wall_time: Duration::ZERO,
    };
    let outcome = judge(&mut row, exp, rng::derive(seed, index as u64));
    let trace = match outcome {
        Ok(t) => t,
        Err(e) => {
            row.verdict = Verdict::Fail;
            row.note = e.to_string();
            None
        }
    };
    row.wall_time = started.elapsed();
    (row, trace)
}

fn judge(row: &mut RunRow, exp: &Experiment, seed: u64) -> Result<Option<IterateTrace>> {
    let problem = &exp.problem;
    let cfg = &exp.config;
    row.dist1 = problem.solutions.distance(&exp.x1)?;
    let trace = solvers::run(&problem.set, &problem.map, Some(&problem.solutions), &exp.x1, cfg)?;
    row.iterations = trace.records.len();
    row.l_obs = trace.l_obs();
    row.fejer = trace.tally(|r| r.fejer);
    row.contraction = trace.tally(|r| r.contraction);
    row.step_bound = trace.tally(|r| r.step_bound);

    let monotone = probe_monotone(&problem.map, &problem.set, MONOTONE_PROBE_SAMPLES, seed)?.monotone;
    row.monotone = Flag::from_bool(monotone);
    let alpha = problem.alpha.and_then(|m| m.value()).filter(|a| *a > 0.0);
    row.alpha_used = alpha.map(|a| SAFETY_FACTOR * a);

    let mut blockers: Vec<&str> = Vec::new();
    if let solvers::Termination::Failed { reason } = &trace.termination {
        row.note = format!("step failed: {reason}");
        row.verdict = Verdict::Fail;
        return Ok(Some(trace));
    }
    if !monotone {
        blockers.push("monotonicity not supported by probe");
    }
    if alpha.is_none() {
        blockers.push("solution set not weakly sharp");
    }

    match cfg.method {
        Method::ExactPpa => {
            row.a = cfg.a;
            row.telescoping = check_telescoping_exact(&trace, row.dist1);
            match (cfg.a, row.alpha_used) {
                (Some(a), Some(alpha)) => {
                    row.bound = Some(exact_ppa_iteration_bound(row.dist1, a, alpha)?);
                    row.trigger = check_trigger(&trace, a * alpha);
                }
                (None, _) => blockers.push("no step floor a"),
                _ => {}
            }
        }
        Method::Gpm => {
            let xstar = problem.unique_solution();
            if xstar.is_none() {
                blockers.push("solution not unique");
            }
            if cfg.checks_step_window() {
                row.step_window = Flag::Pass;
                row.sigma = cfg.sigma;
                row.mu = cfg.mu;
                row.lipschitz = cfg.lipschitz;
                let (sigma, mu, l) = (
                    cfg.sigma.unwrap_or_default(),
                    cfg.mu.unwrap_or_default(),
                    cfg.lipschitz.unwrap_or_default(),
                );
                if let (Some(xstar), Some(alpha)) = (&xstar, row.alpha_used) {
                    let d = (&exp.x1 - xstar).norm();
                    row.telescoping = check_telescoping_gpm(&trace, d, sigma);
                    row.trigger = check_trigger(&trace, gpm_trigger_threshold(mu, l, alpha));
                    row.bound = Some(gpm_iteration_bound(d, mu, l, sigma, alpha)?);
                }
            } else {
                blockers.push("free-form step sizes");
            }
        }
        Method::InexactPpa => {
            let vanishes = cfg.errors.vanishes();
            row.error_decay = Flag::from_bool(vanishes);
            row.step_decay = check_step_decay(&trace, DECAY_FROM, DECAY_SLACK);
            if !vanishes {
                blockers.push("error terms do not vanish");
            }
        }
    }

    let failures = row.fejer.1
        + row.contraction.1
        + row.step_bound.1
        + [row.telescoping, row.trigger, row.step_decay]
            .iter()
            .filter(|f| **f == Flag::Fail)
            .count();
    if !blockers.is_empty() {
        row.verdict = Verdict::NoVerdict;
        row.note = blockers.join("; ");
        return Ok(Some(trace));
    }
    let within_bound = match (row.l_obs, row.bound) {
        (Some(l), Some(b)) => l as f64 <= b,
        (Some(_), None) => true,
        (None, _) => false,
    };
    row.verdict = if within_bound && failures == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    if row.l_obs.is_none() {
        row.note = "no member iterate within max_iter".into();
    } else if !within_bound {
        row.note = "observed index exceeds bound".into();
    } else if failures > 0 {
        row.note = format!("{failures} inequality failures");
    }
    Ok(Some(trace))
}

/// Runs every experiment in parallel; rows keep the input order.
pub fn run_suite(experiments: &[Experiment], seed: u64) -> ExperimentReport {
    let started = Instant::now();
    let results: Vec<(RunRow, Option<IterateTrace>)> = experiments
        .par_iter()
        .enumerate()
        .map(|(i, e)| run_experiment(i, e, seed))
        .collect();
    let (rows, traces) = results.into_iter().unzip();
    ExperimentReport {
        rows,
        traces,
        wall_time: started.elapsed(),
    }
}

/// Why `config` cannot run on `problem`, if it cannot.
pub fn incompatibility(problem: &ProblemInstance, config: &SolverConfig) -> Option<String> {
    let cfg = Experiment::new(problem.clone(), config.clone(), Vector::zeros(problem.dim())).config;
    if let Err(e) = cfg.validate() {
        return Some(e.to_string());
    }
    if let ErrorSchedule::Constant { e } = &cfg.errors {
        if e.len() != problem.dim() {
            return Some(format!(
                "error vector has {} components, problem has {}",
                e.len(),
                problem.dim()
            ));
        }
    }
    None
}

/// Every compatible (problem, config) pair with `starts` sampled starting
/// points each; incompatible pairs are skipped with a logged reason.
pub fn cross(
    problems: &[ProblemInstance],
    configs: &[SolverConfig],
    starts: usize,
    seed: u64,
) -> Result<Vec<Experiment>> {
    let mut out = Vec::new();
    for (i, p) in problems.iter().enumerate() {
        for (j, c) in configs.iter().enumerate() {
            if let Some(reason) = incompatibility(p, c) {
                log::warn!("skipping {} x {}: {reason}", p.name, c.method);
                continue;
            }
            let pair_seed = rng::derive(seed, (i * configs.len() + j) as u64);
            for x1 in starting_points(p, starts, pair_seed)? {
                out.push(Experiment::new(p.clone(), c.clone(), x1));
            }
        }
    }
    Ok(out)
}

/// `count` starting points sampled from the problem's feasible set.
pub fn starting_points(problem: &ProblemInstance, count: usize, seed: u64) -> Result<Vec<Vector>> {
    problem.set.sample(count, &mut rng::seeded(seed))
}

/// The step size `σ = max(L^2/(2μ), ½)`, kept below 1, used for the checked
/// gradient projection runs.
pub fn checked_gpm_sigma(mu: f64, lipschitz: f64) -> f64 {
    (lipschitz * lipschitz / (2.0 * mu)).clamp(0.5, 1.0 - 1e-9)
}

/// Overrides applied to every configuration of a suite.
#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteOptions {
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
}

impl SuiteOptions {
    pub fn apply(&self, mut cfg: SolverConfig) -> SolverConfig {
        if let Some(t) = self.tol {
            cfg.tol_membership = t;
        }
        if let Some(m) = self.max_iter {
            cfg.max_iter = m;
        }
        cfg
    }
}

/// The bound-verification suite:
///
/// * box corner in R^2 and R^3 with checked gradient projection,
/// * the unit-square and simplex linear programs with exact proximal point
///   steps `γ ≡ a`, `a ∈ {1, 5, 10}`,
/// * strongly pseudomonotone corners for `μ ∈ {0.5, 1, 1.5}`,
/// * inexact proximal point on the box corner with vanishing and with
///   constant error terms,
/// * free-form gradient projection on the interior (non-sharp) problem.
pub fn default_suite(seed: u64, opts: SuiteOptions) -> Result<Vec<Experiment>> {
    let mut out = Vec::new();
    let mut pair = 0u64;
    let mut add = |problem: &ProblemInstance, cfg: SolverConfig, starts: usize| -> Result<()> {
        pair += 1;
        for x1 in starting_points(problem, starts, rng::derive(seed, pair))? {
            out.push(Experiment::new(problem.clone(), opts.apply(cfg.clone()), x1));
        }
        Ok(())
    };

    for n in [2, 3] {
        let p = problem::box_corner(n)?;
        add(&p, SolverConfig::gpm(0.5).with_sigma(0.5), STARTS_PER_PAIR)?;
    }
    for p in [problem::lp_unit_square()?, problem::lp_simplex()?] {
        for a in [1.0, 5.0, 10.0] {
            add(&p, SolverConfig::exact_ppa(a).with_floor(a), STARTS_PER_PAIR)?;
        }
    }
    for n in [2, 3] {
        for mu in [0.5, 1.0, 1.5] {
            let p = problem::strong_pseudo(n, mu)?;
            let sigma = checked_gpm_sigma(mu, mu);
            add(&p, SolverConfig::gpm(sigma).with_sigma(sigma), STARTS_PER_PAIR)?;
        }
    }
    let corner = problem::box_corner(2)?;
    add(
        &corner,
        SolverConfig::inexact_ppa(0.5, ErrorSchedule::decaying(rng::derive(seed, 1_000))),
        STARTS_PER_PAIR,
    )?;
    add(
        &corner,
        SolverConfig::inexact_ppa(0.5, ErrorSchedule::Constant { e: vec![0.1, 0.0] }),
        1,
    )?;
    add(&problem::interior(2)?, SolverConfig::gpm(0.5), 1)?;
    Ok(out)
}
