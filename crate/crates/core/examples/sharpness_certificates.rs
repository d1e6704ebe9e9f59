//! The three weak-sharpness estimators on the box corner and on the unit
//! square linear program, both with modulus 1.

use vikit::harness;
use vikit::sharpness::{modulus_cone, modulus_error_bound_at_point, modulus_error_bound_at_projection};

fn main() -> vikit::Result<()> {
    for p in [harness::box_corner(2)?, harness::lp_unit_square()?] {
        println!("{} (declared {:?})", p.name, p.alpha);
        let certs = [
            modulus_cone(&p.set, &p.solutions, &p.map, 20_000, 1)?,
            modulus_error_bound_at_projection(&p.set, &p.solutions, &p.map, 20_000, 1)?,
            modulus_error_bound_at_point(&p.set, &p.solutions, &p.map, 20_000, 1)?,
        ];
        for c in certs {
            println!(
                "  {:<26} alpha = {:?}  exact = {}",
                format!("{:?}", c.method),
                c.alpha,
                c.exact
            );
        }
    }
    Ok(())
}
