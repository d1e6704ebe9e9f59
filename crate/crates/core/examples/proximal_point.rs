//! Exact proximal point steps on min x_1 over the unit square with γ ≡ a.
//! Larger a terminates sooner, as the bound dist^2/(a^2 α^2) + 1 predicts.

use vikit::harness;
use vikit::sharpness::SAFETY_FACTOR;
use vikit::solvers::{exact_ppa_iteration_bound, run, SolverConfig};
use vikit::Vector;

fn main() -> vikit::Result<()> {
    let p = harness::lp_unit_square()?;
    let alpha = SAFETY_FACTOR * p.alpha.and_then(|a| a.value()).unwrap_or(1.0);
    let x1 = Vector::from_column_slice(&[1.0, 0.5]);
    let d = p.solutions.distance(&x1)?;
    for a in [0.1, 0.25, 1.0, 10.0] {
        let trace = run(
            &p.set,
            &p.map,
            Some(&p.solutions),
            &x1,
            &SolverConfig::exact_ppa(a).with_floor(a),
        )?;
        let fejer = trace.tally(|r| r.fejer);
        println!(
            "a = {a:<5} l_obs = {:?}  bound = {:.2}  fejer pass/fail = {fejer:?}  end = {:?}",
            trace.l_obs(),
            exact_ppa_iteration_bound(d, a, alpha)?,
            trace.last_point().map(|x| x.as_slice().to_vec())
        );
    }
    Ok(())
}
