//! Gradient projection on a strongly pseudomonotone corner problem with
//! the step window L^2/(2μ) <= γ <= σ < 1 enforced, compared with the
//! iteration bound.

use vikit::harness::{self, checked_gpm_sigma};
use vikit::sharpness::SAFETY_FACTOR;
use vikit::solvers::{gpm_iteration_bound, run, SolverConfig};
use vikit::Vector;

fn main() -> vikit::Result<()> {
    let mu = 0.5;
    let p = harness::strong_pseudo(2, mu)?;
    let sigma = checked_gpm_sigma(mu, mu);
    let cfg = SolverConfig::gpm(sigma).with_sigma(sigma).with_constants(mu, mu);
    let x1 = Vector::from_column_slice(&[0.0, 0.2]);
    let trace = run(&p.set, &p.map, Some(&p.solutions), &x1, &cfg)?;
    for r in &trace.records {
        println!(
            "n={:<3} x={:?} dist={:.3e} step={:?} contraction={} step_bound={}",
            r.n,
            r.x,
            r.dist.unwrap_or(f64::NAN),
            r.step_norm,
            r.contraction,
            r.step_bound
        );
    }
    let alpha = SAFETY_FACTOR * mu;
    let d = (&x1 - p.unique_solution().unwrap()).norm();
    println!(
        "l_obs = {:?}, bound = {:.2}",
        trace.l_obs(),
        gpm_iteration_bound(d, mu, mu, sigma, alpha)?
    );
    Ok(())
}
