use nalgebra::{DMatrix, DVector};

/// Cycle cap for the cyclic Dykstra projection.
pub const DYKSTRA_CAP: usize = 10_000;
/// Stop once a full cycle moves the iterate and the corrections by less than this.
pub const DYKSTRA_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct DykstraOutcome {
    pub point: DVector<f64>,
    pub cycles: usize,
    pub converged: bool,
    /// Largest violation `max_i (a_i x - b_i)^+` at the returned point.
    pub infeasibility: f64,
}

/// Cyclic Dykstra projection of `x0` onto `{x : a x <= b}`.
///
/// Rows with zero norm are skipped; callers reject infeasible zero rows.
pub fn dykstra(a: &DMatrix<f64>, b: &DVector<f64>, x0: &DVector<f64>, cap: usize, tol: f64) -> DykstraOutcome {
    let m = a.nrows();
    let n = a.ncols();
    let rows: Vec<DVector<f64>> = (0..m).map(|i| a.row(i).transpose()).collect();
    let norms2: Vec<f64> = rows.iter().map(|r| r.norm_squared()).collect();
    let mut x = x0.clone();
    let mut corrections = vec![DVector::<f64>::zeros(n); m];
    let mut cycles = 0;
    let mut converged = false;

    while cycles < cap {
        cycles += 1;
        let start = x.clone();
        let mut correction_change = 0.0;
        for i in 0..m {
            if norms2[i] == 0.0 {
                continue;
            }
            let y = &x + &corrections[i];
            let excess = rows[i].dot(&y) - b[i];
            let next = if excess > 0.0 {
                &y - &rows[i] * (excess / norms2[i])
            } else {
                y.clone()
            };
            let new_corr = &y - &next;
            correction_change += (&new_corr - &corrections[i]).norm_squared();
            corrections[i] = new_corr;
            x = next;
        }
        let moved = (&x - &start).norm();
        let scale = 1.0 + x.norm();
        if moved < tol * scale && correction_change.sqrt() < tol * scale {
            converged = true;
            break;
        }
    }
    let infeasibility = violation(a, b, &x);
    DykstraOutcome {
        point: x,
        cycles,
        converged,
        infeasibility,
    }
}

pub(crate) fn violation(a: &DMatrix<f64>, b: &DVector<f64>, x: &DVector<f64>) -> f64 {
    (a * x - b).iter().fold(0.0_f64, |acc, v| acc.max(*v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_halfspace_is_exact() {
        let a = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let b = DVector::from_vec(vec![1.0]);
        let x = DVector::from_vec(vec![1.0, 1.0]);
        let out = dykstra(&a, &b, &x, DYKSTRA_CAP, DYKSTRA_TOL);
        assert!(out.converged);
        assert!((out.point - DVector::from_vec(vec![0.5, 0.5])).norm() < 1e-14);
    }

    #[test]
    fn feasible_start_is_fixed() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let b = DVector::from_vec(vec![1.0, 1.0]);
        let x = DVector::from_vec(vec![0.2, -3.0]);
        let out = dykstra(&a, &b, &x, DYKSTRA_CAP, DYKSTRA_TOL);
        assert_eq!(out.point, x);
        assert_eq!(out.cycles, 1);
    }
}
