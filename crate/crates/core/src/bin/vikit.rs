use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use vikit::harness::{self, Experiment, ProblemInstance, SuiteOptions, Verdict};
use vikit::sharpness::{self, Modulus};
use vikit::solvers::{ErrorSchedule, SolverConfig};
use vikit::{dual_gap, primal_gap, Vector};

#[derive(Parser)]
#[command(
    name = "vikit",
    version,
    about = "Variational inequality solvers and finite-termination checks"
)]
struct Cli {
    /// Seed for sampling, starting points and error terms.
    #[arg(long, global = true, default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
    /// Membership tolerance for declaring an iterate a solution.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Iteration cap for each run.
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Output file or directory, depending on the command.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solver on one problem and write its trace as CSV.
    Solve {
        #[arg(long)]
        problem: PathBuf,
        /// JSON solver configuration; overrides the method flags.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::Gpm)]
        method: MethodArg,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long)]
        sigma: Option<f64>,
        /// Step floor for the proximal methods.
        #[arg(long)]
        a: Option<f64>,
        /// `zero`, `decaying`, or comma-separated constant components.
        #[arg(long, default_value = "zero")]
        errors: String,
        /// Comma-separated starting point; sampled from the set if absent.
        #[arg(long)]
        x1: Option<String>,
    },
    /// Estimate the weak-sharpness modulus three ways.
    Certify {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
    },
    /// Evaluate the primal and dual gap functions at a point.
    Gap {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Run the bound-verification suite.
    VerifyBounds,
    /// Write a generated problem file.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Gpm,
    ExactPpa,
    InexactPpa,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    BoxCorner,
    StrongPseudo,
    LpSquare,
    LpSimplex,
    Interior,
}

fn parse_point(text: &str) -> vikit::Result<Vector> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    values
        .map(Vector::from_vec)
        .map_err(|e| vikit::Error::InvalidConfig(format!("cannot parse point {text:?}: {e}")))
}

fn emit(text: &str, out: Option<&Path>) -> vikit::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn solve_config(
    config: Option<&Path>,
    method: MethodArg,
    gamma: f64,
    sigma: Option<f64>,
    a: Option<f64>,
    errors: &str,
    seed: u64,
) -> vikit::Result<SolverConfig> {
    if let Some(path) = config {
        return Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?);
    }
    let mut cfg = match method {
        MethodArg::Gpm => SolverConfig::gpm(gamma),
        MethodArg::ExactPpa => SolverConfig::exact_ppa(gamma),
        MethodArg::InexactPpa => {
            let schedule = match errors {
                "zero" => ErrorSchedule::Zero,
                "decaying" => ErrorSchedule::decaying(seed),
                other => ErrorSchedule::Constant {
                    e: parse_point(other)?.iter().copied().collect(),
                },
            };
            SolverConfig::inexact_ppa(gamma, schedule)
        }
    };
    cfg.sigma = sigma;
    cfg.a = a;
    Ok(cfg)
}

fn execute(cli: Cli) -> vikit::Result<bool> {
    let opts = SuiteOptions {
        tol: cli.tol,
        max_iter: cli.max_iter,
    };
    let out = cli.out.as_deref();
    match cli.command {
        Command::Solve {
            problem,
            config,
            method,
            gamma,
            sigma,
            a,
            errors,
            x1,
        } => {
            let problem = ProblemInstance::load(&problem)?;
            problem.verify()?;
            let cfg = opts.apply(solve_config(
                config.as_deref(),
                method,
                gamma,
                sigma,
                a,
                &errors,
                cli.seed,
            )?);
            let x1 = match x1 {
                Some(text) => parse_point(&text)?,
                None => harness::starting_points(&problem, 1, cli.seed)?.remove(0),
            };
            // Bad input is an error here, not a failed run.
            cfg.validate()?;
            problem.set.require_member(&x1)?;
            let (row, trace) = harness::run_experiment(0, &Experiment::new(problem, cfg, x1), cli.seed);
            if let Some(t) = &trace {
                match out {
                    Some(p) => t.write_csv(std::fs::File::create(p)?)?,
                    None => t.write_csv(std::io::stdout())?,
                }
            }
            let l = row.l_obs.map_or("-".into(), |l| l.to_string());
            let b = row.bound.map_or("-".into(), |b| b.to_string());
            eprintln!(
                "{} {} l_obs={l} bound={b} {} {}",
                row.problem,
                row.method,
                row.verdict.as_str(),
                row.note
            );
            Ok(row.verdict != Verdict::Fail)
        }
        Command::Certify { problem, samples } => {
            let p = ProblemInstance::load(&problem)?;
            let certs = [
                sharpness::modulus_cone(&p.set, &p.solutions, &p.map, samples, cli.seed)?,
                sharpness::modulus_error_bound_at_projection(&p.set, &p.solutions, &p.map, samples, cli.seed)?,
                sharpness::modulus_error_bound_at_point(&p.set, &p.solutions, &p.map, samples, cli.seed)?,
            ];
            let agrees = match (p.alpha, certs[0].alpha) {
                (None, _) => true,
                (Some(Modulus::Vacuous), Modulus::Vacuous) => true,
                (Some(Modulus::Finite(a)), Modulus::Finite(b)) => (a - b).abs() <= harness::ALPHA_CONFIRM_TOL,
                _ => false,
            };
            let doc = json!({ "problem": p.name, "declared": p.alpha, "agrees": agrees, "certificates": certs });
            emit(&(serde_json::to_string_pretty(&doc)? + "\n"), out)?;
            Ok(agrees)
        }
        Command::Gap { problem, point } => {
            let p = ProblemInstance::load(&problem)?;
            let x = parse_point(&point)?;
            let primal = primal_gap(&p.set, &p.map, &x)?;
            let dual = dual_gap(&p.set, &p.map, &x)?;
            let doc = json!({
                "point": x.as_slice(),
                "primal": { "value": primal.value, "maximizer": primal.maximizer.as_slice(), "exact": primal.exact },
                "dual": { "value": dual.value, "maximizer": dual.maximizer.as_slice(), "exact": dual.exact },
            });
            emit(&(serde_json::to_string_pretty(&doc)? + "\n"), out)?;
            Ok(true)
        }
        Command::VerifyBounds => {
            let experiments = harness::default_suite(cli.seed, opts)?;
            let report = harness::run_suite(&experiments, cli.seed);
            if let Some(dir) = out {
                report.write_to(dir)?;
            }
            print!("{}", report.summary());
            Ok(report.all_pass())
        }
        Command::Gen { kind, n, mu } => {
            let p = match kind {
                Kind::BoxCorner => harness::box_corner(n)?,
                Kind::StrongPseudo => harness::strong_pseudo(n, mu)?,
                Kind::LpSquare => harness::lp_unit_square()?,
                Kind::LpSimplex => harness::lp_simplex()?,
                Kind::Interior => harness::interior(n)?,
            };
            emit(&(p.to_json()? + "\n"), out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
