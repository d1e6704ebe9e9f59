//! Gradient projection and (in)exact proximal point iterations with
//! per-iteration instrumentation, iteration bounds and step checks.

mod bounds;
mod config;
mod steps;
mod trace;

pub use bounds::{
    check_fejer, check_gpm_step, check_step_decay, check_telescoping_exact, check_telescoping_gpm, check_trigger,
    exact_ppa_iteration_bound, gpm_iteration_bound, gpm_trigger_threshold, Flag, STEP_CHECK_TOL, TELESCOPING_TOL,
};
pub use config::{
    ErrorSchedule, GammaSchedule, Method, SolverConfig, DEFAULT_INNER_CAP, DEFAULT_INNER_TOL, DEFAULT_MAX_ITER,
    DEFAULT_TOL_MEMBERSHIP,
};
pub use steps::{exact_ppa_step, gpm_step, inexact_ppa_step};
pub use trace::{IterateRecord, IterateTrace, Termination, TRACE_SCHEMA};

use crate::error::{check_dim, Result};
use crate::geometry::ConvexSet;
use crate::operators::VectorMap;
use crate::sharpness;
use crate::Vector;

const MAX_REFERENCE_POINTS: usize = 64;

/// Points of `X*` the Fejér inequality is checked against: the vertices of
/// the solution set when it has finitely many, else the projection of `x1`.
fn fejer_references(solutions: &ConvexSet, x1: &Vector) -> Result<Vec<Vector>> {
    match solutions.vertices() {
        Some(v) if !v.is_empty() && v.len() <= MAX_REFERENCE_POINTS => Ok(v),
        _ => Ok(vec![solutions.project(x1)?]),
    }
}

/// Iterate from `x1` until an iterate is declared a member of the solution
/// set (distance to `solutions` at most `tol_membership` when given,
/// otherwise residual at most `tol_membership`) or `max_iter` iterates have
/// been recorded.
///
/// Step failures end the run with [`Termination::Failed`] and the partial
/// trace. Configuration errors and step sizes outside the declared window
/// are returned as errors before any step is taken.
pub fn run(
    set: &ConvexSet,
    map: &VectorMap,
    solutions: Option<&ConvexSet>,
    x1: &Vector,
    cfg: &SolverConfig,
) -> Result<IterateTrace> {
    cfg.validate()?;
    let dim = set.dim();
    check_dim(dim, map.dim())?;
    check_dim(dim, x1.len())?;
    if let Some(s) = solutions {
        check_dim(dim, s.dim())?;
    }
    set.require_member(x1)?;
    for n in 1..cfg.max_iter {
        cfg.checked_gamma(n)?;
    }

    let fejer_refs = match (cfg.method, solutions) {
        (Method::ExactPpa, Some(s)) => fejer_references(s, x1)?,
        _ => Vec::new(),
    };
    let gpm_ref = match (cfg.method, solutions, cfg.mu, cfg.lipschitz) {
        (Method::Gpm, Some(s), Some(_), Some(_)) => Some(s.project(x1)?),
        _ => None,
    };
    let mut reference_points: Vec<Vec<f64>> = fejer_refs.iter().map(|p| p.iter().copied().collect()).collect();
    if let Some(p) = &gpm_ref {
        reference_points.push(p.iter().copied().collect());
    }

    let mut trace = IterateTrace {
        method: cfg.method,
        dim,
        records: Vec::new(),
        termination: Termination::CapExceeded,
        reference_points,
    };
    let mut x = x1.clone();
    for n in 1..=cfg.max_iter {
        let residual = sharpness::residual(set, map, &x)?;
        let dist = solutions.map(|s| s.distance(&x)).transpose()?;
        let member = match dist {
            Some(d) => d <= cfg.tol_membership,
            None => residual <= cfg.tol_membership,
        };
        let mut record = IterateRecord {
            n,
            x: x.iter().copied().collect(),
            gamma: None,
            e_norm: None,
            residual,
            dist,
            step_norm: None,
            member,
            fejer: Flag::NotApplicable,
            contraction: Flag::NotApplicable,
            step_bound: Flag::NotApplicable,
        };
        if member {
            trace.records.push(record);
            trace.termination = Termination::Member { n };
            return Ok(trace);
        }
        if n == cfg.max_iter {
            trace.records.push(record);
            break;
        }

        let gamma = cfg.gamma.gamma(n);
        let stepped = match cfg.method {
            Method::Gpm => gpm_step(set, map, &x, gamma).map(|next| (next, None)),
            Method::ExactPpa => {
                exact_ppa_step(set, map, &x, gamma, cfg.inner_tol, cfg.inner_cap).map(|next| (next, None))
            }
            Method::InexactPpa => cfg.errors.error(n, dim).and_then(|e| {
                inexact_ppa_step(set, map, &x, &e, gamma, cfg.inner_tol, cfg.inner_cap)
                    .map(|next| (next, Some(e.norm())))
            }),
        };
        let (next, e_norm) = match stepped {
            Ok(s) => s,
            Err(err) => {
                log::warn!("run aborted at iterate {n}: {err}");
                trace.records.push(record);
                trace.termination = Termination::Failed {
                    reason: err.to_string(),
                };
                return Ok(trace);
            }
        };

        record.gamma = Some(gamma);
        record.e_norm = e_norm;
        record.step_norm = Some((&next - &x).norm());
        record.fejer = fejer_refs
            .iter()
            .fold(Flag::NotApplicable, |acc, r| acc.and(check_fejer(&x, &next, r)));
        if let (Some(r), Some(mu), Some(l)) = (&gpm_ref, cfg.mu, cfg.lipschitz) {
            let (c, s) = check_gpm_step(&x, &next, r, gamma, mu, l);
            record.contraction = c;
            record.step_bound = s;
        }
        trace.records.push(record);
        x = next;
    }
    Ok(trace)
}
