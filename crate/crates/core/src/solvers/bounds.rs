//! Iteration bounds for finite termination and the per-step inequalities
//! their proofs rely on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Vector;

use super::trace::IterateTrace;

/// Relative slack for the per-step inequalities.
pub const STEP_CHECK_TOL: f64 = 1e-9;
/// Absolute slack for telescoped sums over a whole trace.
pub const TELESCOPING_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Pass,
    Fail,
    NotApplicable,
}

impl Flag {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Flag::Pass
        } else {
            Flag::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Pass => "pass",
            Flag::Fail => "fail",
            Flag::NotApplicable => "na",
        }
    }

    /// Combine two checks of the same property: any failure fails, any pass
    /// on otherwise inapplicable checks passes.
    pub fn and(self, other: Flag) -> Flag {
        match (self, other) {
            (Flag::Fail, _) | (_, Flag::Fail) => Flag::Fail,
            (Flag::Pass, _) | (_, Flag::Pass) => Flag::Pass,
            _ => Flag::NotApplicable,
        }
    }
}

impl std::fmt::Display for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn lhs_le_rhs(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + STEP_CHECK_TOL * (1.0 + rhs.abs())
}

/// Iteration bound of the exact proximal point method with `γ_n >= a`:
/// `dist1^2 / (a^2 α^2) + 1`.
pub fn exact_ppa_iteration_bound(dist1: f64, a: f64, alpha: f64) -> Result<f64> {
    if !(a > 0.0 && alpha > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "a and alpha must be positive, got {a}, {alpha}"
        )));
    }
    if dist1.is_nan() || dist1 < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "distance must be non-negative, got {dist1}"
        )));
    }
    Ok(dist1 * dist1 / (a * a * alpha * alpha) + 1.0)
}

/// Iteration bound of gradient projection under strong pseudomonotonicity:
/// `dist1^2 (2μ + L^3)^2 / ((1 - σ^2) α^2 L^4) + 1`. Rejects inputs whose
/// step window `L^2/(2μ) <= γ <= σ` is empty.
pub fn gpm_iteration_bound(dist1: f64, mu: f64, lipschitz: f64, sigma: f64, alpha: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::InvalidConfig(format!("sigma must lie in (0,1), got {sigma}")));
    }
    if !(mu > 0.0 && lipschitz > 0.0 && alpha > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "mu, L and alpha must be positive, got {mu}, {lipschitz}, {alpha}"
        )));
    }
    if dist1.is_nan() || dist1 < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "distance must be non-negative, got {dist1}"
        )));
    }
    let floor = lipschitz * lipschitz / (2.0 * mu);
    if floor > sigma {
        return Err(Error::Hypothesis(format!(
            "step window empty: L^2/(2mu) = {floor} exceeds sigma = {sigma}"
        )));
    }
    let l2 = lipschitz * lipschitz;
    let num = dist1 * dist1 * (2.0 * mu + l2 * lipschitz).powi(2);
    Ok(num / ((1.0 - sigma * sigma) * alpha * alpha * l2 * l2) + 1.0)
}

/// Step-length threshold below which the next gradient projection iterate
/// must be the solution: `L^2 α / (2μ + L^3)`.
pub fn gpm_trigger_threshold(mu: f64, lipschitz: f64, alpha: f64) -> f64 {
    lipschitz.powi(2) * alpha / (2.0 * mu + lipschitz.powi(3))
}

/// Fejér inequality of the exact proximal point method:
/// `||x+ - x*||^2 <= ||x - x*||^2 - ||x+ - x||^2`.
pub fn check_fejer(x_prev: &Vector, x_next: &Vector, xstar: &Vector) -> Flag {
    let lhs = (x_next - xstar).norm_squared();
    let rhs = (x_prev - xstar).norm_squared() - (x_next - x_prev).norm_squared();
    Flag::from_bool(lhs_le_rhs(lhs, rhs))
}

/// The two gradient projection inequalities, returned as
/// `(contraction, step_bound)`:
///
/// * `[1 + γ(2μ - γL^2)] ||x+ - x*||^2 <= ||x - x*||^2`
/// * `(1 - γ^2) ||x+ - x||^2 <= (L^2 - 2γμ - 1) ||x+ - x*||^2 + ||x - x*||^2`
pub fn check_gpm_step(
    x_prev: &Vector,
    x_next: &Vector,
    xstar: &Vector,
    gamma: f64,
    mu: f64,
    lipschitz: f64,
) -> (Flag, Flag) {
    let l2 = lipschitz * lipschitz;
    let next = (x_next - xstar).norm_squared();
    let prev = (x_prev - xstar).norm_squared();
    let step = (x_next - x_prev).norm_squared();
    let contraction = lhs_le_rhs((1.0 + gamma * (2.0 * mu - gamma * l2)) * next, prev);
    let step_bound = lhs_le_rhs(
        (1.0 - gamma * gamma) * step,
        (l2 - 2.0 * gamma * mu - 1.0) * next + prev,
    );
    (Flag::from_bool(contraction), Flag::from_bool(step_bound))
}

/// `Σ ||x_{i+1} - x_i||^2 <= dist1^2` over the whole trace.
pub fn check_telescoping_exact(trace: &IterateTrace, dist1: f64) -> Flag {
    Flag::from_bool(trace.squared_path_length() <= dist1 * dist1 + TELESCOPING_TOL)
}

/// `(1 - σ^2) Σ ||x_{i+1} - x_i||^2 <= ||x_1 - x*||^2` over the whole trace.
pub fn check_telescoping_gpm(trace: &IterateTrace, dist1: f64, sigma: f64) -> Flag {
    Flag::from_bool((1.0 - sigma * sigma) * trace.squared_path_length() <= dist1 * dist1 + TELESCOPING_TOL)
}

/// Every step shorter than `threshold` must land in the solution set.
/// Not applicable when no step triggers.
pub fn check_trigger(trace: &IterateTrace, threshold: f64) -> Flag {
    let records = &trace.records;
    let mut flag = Flag::NotApplicable;
    for (i, r) in records.iter().enumerate() {
        if let Some(step) = r.step_norm {
            if step < threshold {
                let next_member = records.get(i + 1).is_some_and(|next| next.member);
                flag = flag.and(Flag::from_bool(next_member));
            }
        }
    }
    flag
}

/// Step norms are non-increasing from record `from` (1-based) onwards, up
/// to `slack`.
pub fn check_step_decay(trace: &IterateTrace, from: usize, slack: f64) -> Flag {
    let steps: Vec<f64> = trace
        .records
        .iter()
        .filter(|r| r.n >= from)
        .filter_map(|r| r.step_norm)
        .collect();
    if steps.len() < 2 {
        return Flag::NotApplicable;
    }
    Flag::from_bool(steps.windows(2).all(|w| w[1] <= w[0] + slack))
}
