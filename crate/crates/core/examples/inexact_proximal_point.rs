//! Inexact proximal point on the box corner, once with vanishing error
//! terms e_n = 0.1·0.5^n·u_n and once with a constant error.

use vikit::harness;
use vikit::solvers::{run, ErrorSchedule, SolverConfig};
use vikit::Vector;

fn main() -> vikit::Result<()> {
    let p = harness::box_corner(2)?;
    let x1 = Vector::from_column_slice(&[0.1, 0.0]);
    for errors in [
        ErrorSchedule::decaying(5),
        ErrorSchedule::Constant { e: vec![0.1, 0.0] },
    ] {
        let vanishes = errors.vanishes();
        let cfg = SolverConfig::inexact_ppa(0.2, errors).with_max_iter(200);
        let trace = run(&p.set, &p.map, Some(&p.solutions), &x1, &cfg)?;
        let steps: Vec<String> = trace
            .records
            .iter()
            .filter_map(|r| r.step_norm)
            .map(|s| format!("{s:.3e}"))
            .collect();
        println!(
            "errors vanish: {vanishes}  l_obs = {:?}  steps = [{}]",
            trace.l_obs(),
            steps.join(", ")
        );
    }
    Ok(())
}
