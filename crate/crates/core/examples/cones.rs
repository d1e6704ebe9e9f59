//! Tangent and normal cones at a box corner, their generators, and the
//! Moreau split of a vector into cone and polar parts.

use vikit::{ConvexSet, Vector};

fn main() -> vikit::Result<()> {
    let set = ConvexSet::unit_box(2)?;
    let corner = Vector::from_column_slice(&[1.0, 1.0]);
    let tangent = set.tangent_cone(&corner)?;
    let normal = set.normal_cone(&corner)?;

    let gens = tangent.generators()?;
    for g in gens.spanning() {
        println!("tangent generator {:?}", g.as_slice());
    }

    let u = Vector::from_column_slice(&[0.5, -2.0]);
    let t = tangent.project(&u)?;
    let n = normal.project(&u)?;
    println!("u = {:?} = {:?} + {:?}", u.as_slice(), t.as_slice(), n.as_slice());
    println!("<t, n> = {:e}", t.dot(&n));
    Ok(())
}
