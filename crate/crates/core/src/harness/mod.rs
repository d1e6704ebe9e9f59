//! Problems with known solution sets, the suite runner and its reports.

mod problem;
mod suite;

pub use problem::{
    box_corner, interior, lp_as_vi, lp_simplex, lp_unit_square, strong_pseudo, Constants, ProblemFile, ProblemInstance,
    Provenance, ALPHA_CONFIRM_TOL, SOLUTION_RESIDUAL_TOL,
};
pub use suite::{
    checked_gpm_sigma, cross, default_suite, incompatibility, run_experiment, run_suite, starting_points, Experiment,
    ExperimentReport, RunRow, SuiteOptions, Verdict, DECAY_FROM, DECAY_SLACK, DEFAULT_SEED, MONOTONE_PROBE_SAMPLES,
    REPORT_COLUMNS,
};
