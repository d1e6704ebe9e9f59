use crate::error::{check_dim, Error, Result};
use crate::geometry::ConvexSet;
use crate::operators::VectorMap;
use crate::Vector;

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("step size must be positive, got {gamma}")))
    }
}

/// One gradient projection step `P(x - γ F(x))`.
pub fn gpm_step(set: &ConvexSet, map: &VectorMap, x: &Vector, gamma: f64) -> Result<Vector> {
    check_gamma(gamma)?;
    check_dim(set.dim(), x.len())?;
    set.project(&(x - map.evaluate(x)? * gamma))
}

/// Resolvent `z = P(x - γ F(z))`, the implicit proximal step at anchor `x`.
///
/// With `γL < 1` the map `z -> P(x - γF(z))` contracts and is iterated from
/// `z = x`. Otherwise `z` is the solution of the VI for
/// `F + (· - x)/γ`, which is strongly monotone with modulus `1/γ` when `F`
/// is monotone, found by projection iterations with step
/// `τ = (1/γ) / (L + 1/γ)^2`. Both stop once `||z - P(x - γF(z))||` is at
/// most `inner_tol`.
pub fn exact_ppa_step(
    set: &ConvexSet,
    map: &VectorMap,
    x: &Vector,
    gamma: f64,
    inner_tol: f64,
    inner_cap: usize,
) -> Result<Vector> {
    check_gamma(gamma)?;
    check_dim(set.dim(), x.len())?;
    let lipschitz = map.lipschitz_for(set)?;
    let implicit = |z: &Vector| -> Result<Vector> { set.project(&(x - map.evaluate(z)? * gamma)) };

    let mut z = x.clone();
    let mut achieved = f64::INFINITY;
    if gamma * lipschitz < 1.0 {
        for _ in 0..inner_cap {
            let next = implicit(&z)?;
            achieved = (&next - &z).norm();
            z = next;
            if achieved <= inner_tol {
                return Ok(z);
            }
        }
    } else {
        let inv = 1.0 / gamma;
        let tau = inv / (lipschitz + inv).powi(2);
        for _ in 0..inner_cap {
            let fixed = implicit(&z)?;
            achieved = (&fixed - &z).norm();
            if achieved <= inner_tol {
                return Ok(z);
            }
            let g = map.evaluate(&z)? + (&z - x) * inv;
            z = set.project(&(&z - g * tau))?;
        }
    }
    Err(Error::NoConvergence {
        what: "resolvent",
        iterations: inner_cap,
        achieved,
    })
}

/// Inexact proximal step: the resolvent at the perturbed anchor `x + e`.
pub fn inexact_ppa_step(
    set: &ConvexSet,
    map: &VectorMap,
    x: &Vector,
    e: &Vector,
    gamma: f64,
    inner_tol: f64,
    inner_cap: usize,
) -> Result<Vector> {
    check_dim(x.len(), e.len())?;
    exact_ppa_step(set, map, &(x + e), gamma, inner_tol, inner_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Matrix;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn gpm_examples() {
        let b = ConvexSet::unit_box(2).unwrap();
        let f = VectorMap::scaled_shift(1.0, v(&[2.0, 2.0])).unwrap();
        assert_eq!(gpm_step(&b, &f, &v(&[0.0, 0.0]), 0.5).unwrap(), v(&[1.0, 1.0]));
        assert_eq!(gpm_step(&b, &f, &v(&[1.0, 1.0]), 0.5).unwrap(), v(&[1.0, 1.0]));
        let line = ConvexSet::unit_box(1).unwrap();
        let g = VectorMap::scaled_shift(1.0, v(&[2.0])).unwrap();
        assert_eq!(gpm_step(&line, &g, &v(&[0.0]), 0.25).unwrap(), v(&[0.5]));
        assert!(gpm_step(&line, &g, &v(&[0.0]), 0.0).is_err());
    }

    #[test]
    fn exact_ppa_examples() {
        let b = ConvexSet::unit_box(2).unwrap();
        let f = VectorMap::constant(v(&[1.0, 0.0])).unwrap();
        let z = exact_ppa_step(&b, &f, &v(&[1.0, 0.5]), 10.0, 1e-12, 1000).unwrap();
        assert_eq!(z, v(&[0.0, 0.5]));
        let line = ConvexSet::unit_box(1).unwrap();
        let g = VectorMap::scaled_shift(1.0, v(&[2.0])).unwrap();
        let z = exact_ppa_step(&line, &g, &v(&[0.0]), 1.0, 1e-12, 1_000_000).unwrap();
        assert!((z[0] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn regularized_branch_matches_closed_form() {
        // Interior resolvent of F(x) = x - c: z = (x + γc)/(1 + γ).
        let b = ConvexSet::new_box(v(&[-10.0, -10.0]), v(&[10.0, 10.0])).unwrap();
        let f = VectorMap::affine(Matrix::identity(2, 2), v(&[-1.0, 2.0])).unwrap();
        let x = v(&[0.5, 0.25]);
        let z = exact_ppa_step(&b, &f, &x, 3.0, 1e-12, 1_000_000).unwrap();
        let expected = (&x + v(&[1.0, -2.0]) * 3.0) / 4.0;
        assert!((z - expected).norm() < 1e-10);
    }

    #[test]
    fn inexact_ppa_examples() {
        let b = ConvexSet::unit_box(2).unwrap();
        let f = VectorMap::constant(v(&[1.0, 0.0])).unwrap();
        let x = v(&[1.0, 0.5]);
        let z = inexact_ppa_step(&b, &f, &x, &v(&[0.0, 0.1]), 10.0, 1e-12, 1000).unwrap();
        assert!((z - v(&[0.0, 0.6])).norm() < 1e-15);
        let zero = inexact_ppa_step(&b, &f, &x, &v(&[0.0, 0.0]), 10.0, 1e-12, 1000).unwrap();
        assert_eq!(zero, exact_ppa_step(&b, &f, &x, 10.0, 1e-12, 1000).unwrap());
    }

    #[test]
    fn inner_cap_reports_residual() {
        let b = ConvexSet::unit_box(1).unwrap();
        let g = VectorMap::scaled_shift(1.0, v(&[2.0])).unwrap();
        let err = exact_ppa_step(&b, &g, &v(&[0.0]), 50.0, 1e-12, 3).unwrap_err();
        assert!(matches!(
            err,
            Error::NoConvergence {
                what: "resolvent",
                iterations: 3,
                ..
            }
        ));
    }
}
