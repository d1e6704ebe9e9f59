//! An interior solution is not weakly sharp: F(x*) = 0 and the sharpness
//! cone is the whole space. Gradient projection only converges
//! geometrically and the membership tolerance decides when it stops.

use vikit::harness;
use vikit::sharpness::modulus_cone;
use vikit::solvers::{run, SolverConfig};
use vikit::Vector;

fn main() -> vikit::Result<()> {
    let p = harness::interior(2)?;
    println!(
        "cone modulus: {:?}",
        modulus_cone(&p.set, &p.solutions, &p.map, 5_000, 0)?.alpha
    );
    for tol in [1e-4, 1e-8, 1e-12] {
        let cfg = SolverConfig::gpm(0.5).with_tol(tol);
        let trace = run(&p.set, &p.map, Some(&p.solutions), &Vector::zeros(2), &cfg)?;
        println!("tol = {tol:e}  l_obs = {:?}", trace.l_obs());
    }
    Ok(())
}
