//! CSV export of a single trace.

use vikit::harness;
use vikit::solvers::{run, SolverConfig};
use vikit::Vector;

fn main() -> vikit::Result<()> {
    let p = harness::lp_simplex()?;
    let x1 = Vector::from_column_slice(&[0.2, 0.3, 0.5]);
    let trace = run(
        &p.set,
        &p.map,
        Some(&p.solutions),
        &x1,
        &SolverConfig::exact_ppa(0.2).with_floor(0.2),
    )?;
    trace.write_csv(std::io::stdout())
}
