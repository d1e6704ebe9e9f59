//! The tangent-cone residual ||P_T(-F(x))|| against a sampled maximum of
//! <v, -F(x)> over unit tangent directions.

use vikit::sharpness::{residual, sampled_tangent_max};
use vikit::{ConvexSet, Vector, VectorMap};

fn main() -> vikit::Result<()> {
    let set = ConvexSet::unit_box(2)?;
    let f = VectorMap::constant(Vector::from_column_slice(&[0.3, -0.4]))?;
    for x in [[0.5, 0.5], [1.0, 0.5], [0.0, 1.0], [1.0, 1.0]] {
        let x = Vector::from_column_slice(&x);
        let exact = residual(&set, &f, &x)?;
        let sampled = sampled_tangent_max(&set, &f, &x, 100_000, 3)?;
        println!("x = {:?}  residual = {exact:.6}  sampled = {sampled:.6}", x.as_slice());
    }
    Ok(())
}
