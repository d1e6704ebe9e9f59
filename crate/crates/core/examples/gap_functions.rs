//! Primal gap g(x) = max <F(x), x - y> and dual gap G(x) = max <F(y), x - y>
//! over the box, along the diagonal towards the solution (1, 1).

use vikit::{dual_gap, primal_gap, ConvexSet, Vector, VectorMap};

fn main() -> vikit::Result<()> {
    let set = ConvexSet::unit_box(2)?;
    let f = VectorMap::scaled_shift(1.0, Vector::from_column_slice(&[2.0, 2.0]))?;
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let x = Vector::from_element(2, t);
        let g = primal_gap(&set, &f, &x)?;
        let d = dual_gap(&set, &f, &x)?;
        println!(
            "x = ({t}, {t})  g = {:.4}  G = {:.4}  (exact: {}, {})",
            g.value, d.value, g.exact, d.exact
        );
    }
    Ok(())
}
