use approx::assert_abs_diff_eq;
use vikit::geometry::{intersect_cones, project_cone};
use vikit::{ConvexSet, Matrix, PolyhedralCone, Vector};

fn v(xs: &[f64]) -> Vector {
    Vector::from_column_slice(xs)
}

/// {x1 + x2 <= 1, x >= 0}
fn triangle() -> ConvexSet {
    ConvexSet::polyhedron(
        Matrix::from_row_slice(3, 2, &[1.0, 1.0, -1.0, 0.0, 0.0, -1.0]),
        v(&[1.0, 0.0, 0.0]),
    )
    .unwrap()
}

fn in_triangle(z: &[f64]) -> bool {
    z[0] >= 0.0 && z[1] >= 0.0 && z[0] + z[1] <= 1.0
}

/// Feasible grid points of the triangle at spacing `h`.
fn triangle_grid(h: f64) -> Vec<[f64; 2]> {
    let k = (1.0 / h).round() as i64;
    let mut out = Vec::new();
    for i in 0..=k {
        for j in 0..=k {
            let z = [i as f64 * h, j as f64 * h];
            if in_triangle(&z) {
                out.push(z);
            }
        }
    }
    out
}

fn grid_argmin(x: [f64; 2], h: f64) -> ([f64; 2], f64) {
    triangle_grid(h)
        .into_iter()
        .map(|z| (z, ((z[0] - x[0]).powi(2) + (z[1] - x[1]).powi(2)).sqrt()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
}

#[test]
fn trivial_projections() {
    let unit = ConvexSet::unit_box(2).unwrap();
    assert_eq!(unit.project(&v(&[2.0, -1.0])).unwrap(), v(&[1.0, 0.0]));
    let ball = ConvexSet::ball(v(&[0.0, 0.0]), 1.0).unwrap();
    assert_abs_diff_eq!(ball.project(&v(&[3.0, 4.0])).unwrap(), v(&[0.6, 0.8]), epsilon = 1e-12);
    let simplex = ConvexSet::simplex(3).unwrap();
    let third = 1.0 / 3.0;
    assert_abs_diff_eq!(
        simplex.project(&v(&[0.5, 0.5, 0.5])).unwrap(),
        v(&[third, third, third]),
        epsilon = 1e-12
    );
}

#[test]
fn polyhedron_projection_matches_grid_oracle() {
    let p = triangle().project(&v(&[1.0, 1.0])).unwrap();
    assert_abs_diff_eq!(p, v(&[0.5, 0.5]), epsilon = 1e-9);
    let (g, _) = grid_argmin([1.0, 1.0], 1e-3);
    assert!((p[0] - g[0]).abs() <= 2e-3 && (p[1] - g[1]).abs() <= 2e-3, "{g:?}");
}

#[test]
fn polyhedron_distance_matches_grid_oracle() {
    let d = triangle().distance(&v(&[1.0, 1.0])).unwrap();
    assert_abs_diff_eq!(d, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-9);
    let (_, gd) = grid_argmin([1.0, 1.0], 1e-3);
    assert!((d - gd).abs() <= 2e-3);
}

#[test]
fn distances_and_membership() {
    let unit = ConvexSet::unit_box(2).unwrap();
    assert_abs_diff_eq!(unit.distance(&v(&[2.0, 1.0])).unwrap(), 1.0);
    assert_eq!(unit.distance(&v(&[0.3, 0.9])).unwrap(), 0.0);
    assert!(unit.contains(&v(&[0.5, 0.5]), 0.0).unwrap());
    let ball = ConvexSet::ball(v(&[0.0, 0.0]), 1.0).unwrap();
    assert!(ball.contains(&v(&[1.0 + 1e-12, 0.0]), 1e-9).unwrap());
    let simplex = ConvexSet::simplex(2).unwrap();
    assert!(!simplex.contains(&v(&[0.7, 0.2]), 1e-9).unwrap());
}

#[test]
fn invalid_sets_are_rejected() {
    assert!(ConvexSet::new_box(v(&[1.0, 0.0]), v(&[0.0, 1.0])).is_err());
    assert!(ConvexSet::ball(v(&[0.0]), 0.0).is_err());
    assert!(ConvexSet::ball(v(&[0.0]), -1.0).is_err());
    // x1 <= -1 and x1 >= 1
    let empty = ConvexSet::polyhedron(Matrix::from_row_slice(2, 1, &[1.0, -1.0]), v(&[-1.0, -1.0]));
    assert!(empty.is_err());
}

#[test]
fn box_cones() {
    let unit = ConvexSet::unit_box(2).unwrap();
    let t = unit.tangent_cone(&v(&[1.0, 1.0])).unwrap();
    assert!(t.contains(&v(&[-1.0, -0.5]), 1e-12));
    assert!(!t.contains(&v(&[0.1, -1.0]), 1e-12));
    let interior = unit.tangent_cone(&v(&[0.5, 0.5])).unwrap();
    assert_eq!(interior.rows().nrows(), 0);
    let n = unit.normal_cone(&v(&[1.0, 1.0])).unwrap();
    let gens = n.generators().unwrap();
    assert_eq!(gens.rays.len(), 2);
    assert!(gens.lineality.is_empty());
    let normal_interior = unit.normal_cone(&v(&[0.5, 0.5])).unwrap();
    assert!(normal_interior.generators().unwrap().is_trivial());
}

#[test]
fn triangle_tangent_cone_matches_feasible_directions() {
    let set = triangle();
    let x = v(&[1.0, 0.0]);
    let cone = set.tangent_cone(&x).unwrap();
    let t = 1e-6;
    for k in 0..3600 {
        let theta = (k as f64 + 0.5) * std::f64::consts::TAU / 3600.0;
        let d = [theta.cos(), theta.sin()];
        let feasible = in_triangle(&[x[0] + t * d[0], x[1] + t * d[1]]);
        // Skip directions within rounding of the cone boundary.
        let margin = (d[0] + d[1]).abs().min(d[1].abs());
        if margin < 1e-6 {
            continue;
        }
        assert_eq!(cone.contains(&v(&d), 1e-12), feasible, "direction {d:?}");
    }
}

#[test]
fn triangle_normal_cone_passes_polarity_check() {
    let set = triangle();
    let x = v(&[1.0, 0.0]);
    let gens = set.normal_cone(&x).unwrap().generators().unwrap();
    assert!(gens.lineality.is_empty());
    assert_eq!(gens.rays.len(), 2);
    let expected = [v(&[1.0, 1.0]) / 2f64.sqrt(), v(&[0.0, -1.0])];
    for e in &expected {
        assert!(gens.rays.iter().any(|r| (r - e).norm() < 1e-9), "missing generator {e}");
    }
    for y in triangle_grid(1e-2) {
        for g in &gens.rays {
            assert!(g[0] * (y[0] - 1.0) + g[1] * y[1] <= 1e-12);
        }
    }
}

#[test]
fn cone_projection_examples() {
    let orthant = PolyhedralCone::new(2, Matrix::identity(2, 2)).unwrap();
    assert_eq!(project_cone(&orthant, &v(&[-1.0, -1.0])).unwrap(), v(&[-1.0, -1.0]));
    assert_abs_diff_eq!(
        project_cone(&orthant, &v(&[1.0, 1.0])).unwrap(),
        v(&[0.0, 0.0]),
        epsilon = 1e-12
    );
}

#[test]
fn halfplane_cone_projection_matches_brute_force() {
    let k = PolyhedralCone::new(2, Matrix::from_row_slice(1, 2, &[1.0, 1.0])).unwrap();
    let u = v(&[1.0, 0.0]);
    let p = project_cone(&k, &u).unwrap();
    assert_abs_diff_eq!(p, v(&[0.5, -0.5]), epsilon = 1e-12);
    // Brute force over directions and lengths inside the cone.
    let mut best = (f64::INFINITY, [0.0, 0.0]);
    for i in 0..2000 {
        let theta = i as f64 * std::f64::consts::TAU / 2000.0;
        let d = [theta.cos(), theta.sin()];
        if d[0] + d[1] > 0.0 {
            continue;
        }
        for j in 0..=1000 {
            let r = j as f64 * 1e-3;
            let z = [r * d[0], r * d[1]];
            let dist = ((z[0] - 1.0).powi(2) + z[1].powi(2)).sqrt();
            if dist < best.0 {
                best = (dist, z);
            }
        }
    }
    assert!(
        (p[0] - best.1[0]).abs() < 5e-3 && (p[1] - best.1[1]).abs() < 5e-3,
        "{best:?}"
    );
    assert!((p - &u).norm() <= best.0 + 1e-12);
}

#[test]
fn cone_intersections() {
    let k = PolyhedralCone::new(2, Matrix::from_row_slice(1, 2, &[1.0, 2.0])).unwrap();
    let whole = PolyhedralCone::whole_space(2);
    let both = intersect_cones(&k, &whole).unwrap();
    for d in [v(&[1.0, -1.0]), v(&[1.0, 0.0]), v(&[-3.0, 1.0]), v(&[0.0, 1.0])] {
        assert_eq!(both.contains(&d, 1e-12), k.contains(&d, 1e-12));
    }
    let left = PolyhedralCone::new(2, Matrix::from_row_slice(1, 2, &[1.0, 0.0])).unwrap();
    let right = PolyhedralCone::new(2, Matrix::from_row_slice(1, 2, &[-1.0, 0.0])).unwrap();
    let line = intersect_cones(&left, &right).unwrap();
    assert!(line.contains(&v(&[0.0, 5.0]), 1e-12));
    assert!(line.contains(&v(&[0.0, -5.0]), 1e-12));
    assert!(!line.contains(&v(&[0.1, 0.0]), 1e-12));
}

#[test]
fn tangent_normal_intersection_matches_sampling() {
    let x = ConvexSet::unit_box(2).unwrap();
    let solutions = ConvexSet::new_box(v(&[0.0, 0.0]), v(&[0.0, 1.0])).unwrap();
    let at = v(&[0.0, 0.5]);
    let cone = intersect_cones(&x.tangent_cone(&at).unwrap(), &solutions.normal_cone(&at).unwrap()).unwrap();
    for k in 0..720 {
        let theta = k as f64 * std::f64::consts::TAU / 720.0;
        let d = v(&[theta.cos(), theta.sin()]);
        let expected = d[0] >= 0.0 && d[1].abs() < 1e-12;
        assert_eq!(cone.contains(&d, 1e-12), expected, "{d}");
    }
    assert!(cone.contains(&v(&[3.0, 0.0]), 1e-12));
}

#[test]
fn sampled_points_are_members() {
    let mut r = vikit::rng::seeded(5);
    for set in [
        ConvexSet::unit_box(3).unwrap(),
        ConvexSet::ball(v(&[1.0, -1.0]), 2.0).unwrap(),
        ConvexSet::simplex(4).unwrap(),
        triangle(),
    ] {
        for x in set.sample(200, &mut r).unwrap() {
            assert!(set.contains(&x, 1e-8).unwrap(), "{x}");
        }
    }
}
