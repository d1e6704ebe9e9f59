//! Euclidean projection onto each set variant.

use vikit::{ConvexSet, Matrix, Vector};

fn main() -> vikit::Result<()> {
    let x = Vector::from_column_slice(&[1.5, -0.25]);
    let sets = [
        ("unit box", ConvexSet::unit_box(2)?),
        ("unit ball", ConvexSet::ball(Vector::zeros(2), 1.0)?),
        ("simplex", ConvexSet::simplex(2)?),
        (
            "x + y <= 1, x >= 0, y >= 0",
            ConvexSet::polyhedron(
                Matrix::from_row_slice(3, 2, &[1.0, 1.0, -1.0, 0.0, 0.0, -1.0]),
                Vector::from_column_slice(&[1.0, 0.0, 0.0]),
            )?,
        ),
    ];
    for (name, set) in &sets {
        let p = set.project(&x)?;
        println!("{name:<28} P(x) = {:?}  dist = {:.6}", p.as_slice(), set.distance(&x)?);
    }
    Ok(())
}
