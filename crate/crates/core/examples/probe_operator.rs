//! Sampling probes for the monotonicity class of a map.

use vikit::operators::{probe_monotone, probe_pseudomonotone_plus, probe_strong_pseudomonotone};
use vikit::{ConvexSet, Matrix, Vector, VectorMap};

fn main() -> vikit::Result<()> {
    let ball = ConvexSet::ball(Vector::zeros(2), 1.0)?;
    let shift = VectorMap::scaled_shift(1.0, Vector::from_column_slice(&[2.0, 2.0]))?;
    let rotation = VectorMap::affine(Matrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]), Vector::zeros(2))?;

    for (name, f) in [("x - (2,2)", &shift), ("rotation", &rotation)] {
        let m = probe_monotone(f, &ball, 2_000, 7)?;
        let s = probe_strong_pseudomonotone(f, &ball, 2_000, 7)?;
        let p = probe_pseudomonotone_plus(f, &ball, 2_000, 7)?;
        println!(
            "{name:<10} monotone: {} (min {:.3e})  strong modulus <= {:.4}  pseudomonotone+: {} (max discrepancy {:.3e})",
            m.monotone, m.min_value, s.modulus, p.consistent, p.max_discrepancy
        );
    }
    println!("Lipschitz of x - (2,2): {}", shift.estimate_lipschitz()?.value);
    Ok(())
}
