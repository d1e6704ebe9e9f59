//! Small dense helpers shared by the geometry and gap modules.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Singular values below `RANK_TOL * max(1, sigma_max)` count as zero.
pub(crate) const RANK_TOL: f64 = 1e-10;

/// Orthonormal bases `(row_space, null_space)` of `d` (k x n), as columns of
/// n x r and n x (n - r) matrices.
pub(crate) fn row_and_null_space(d: &DMatrix<f64>, n: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    if d.nrows() == 0 {
        return (DMatrix::zeros(n, 0), DMatrix::identity(n, n));
    }
    // pad so the SVD returns a full n x n right factor
    let rows = d.nrows().max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (d.nrows(), n)).copy_from(d);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.max().max(1.0);
    let mut range = Vec::new();
    let mut null = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        let col = v_t.row(i).transpose();
        if *s > RANK_TOL * smax {
            range.push(col);
        } else {
            null.push(col);
        }
    }
    (stack_columns(n, &range), stack_columns(n, &null))
}

pub(crate) fn stack_columns(n: usize, cols: &[DVector<f64>]) -> DMatrix<f64> {
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(cols)
    }
}

pub(crate) fn rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.singular_values();
    let smax = sv.max().max(1.0);
    sv.iter().filter(|s| **s > RANK_TOL * smax).count()
}

/// Least squares `min ||a x - b||` returning the minimum-norm solution.
pub(crate) fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    if a.ncols() == 0 {
        return DVector::zeros(0);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max().max(1.0);
    svd.solve(b, RANK_TOL * smax)
        .expect("both singular factors were computed")
}

/// Lawson-Hanson non-negative least squares: `min ||a x - b||` over `x >= 0`.
pub(crate) fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    let k = a.ncols();
    let mut x = DVector::zeros(k);
    if k == 0 {
        return Ok(x);
    }
    let scale = a.norm().max(1.0) * b.norm().max(1.0);
    let tol = 1e-14 * scale * (k.max(a.nrows()) as f64);
    let mut passive = vec![false; k];
    let max_outer = 3 * k + 30;

    for _ in 0..max_outer {
        let w = a.tr_mul(&(b - a * &x));
        let candidate = (0..k).filter(|&j| !passive[j]).max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate else {
            return Ok(x);
        };
        if w[j] <= tol {
            return Ok(x);
        }
        passive[j] = true;

        let mut inner = 0;
        loop {
            inner += 1;
            if inner > 10 * k + 30 {
                break;
            }
            let idx: Vec<usize> = (0..k).filter(|&i| passive[i]).collect();
            let sub = a.select_columns(&idx);
            let s_sub = lstsq(&sub, b);
            if s_sub.iter().all(|v| *v > 0.0) {
                x.fill(0.0);
                for (p, &i) in idx.iter().enumerate() {
                    x[i] = s_sub[p];
                }
                break;
            }
            // step back to the boundary of the feasible region
            let mut alpha = 1.0_f64;
            for (p, &i) in idx.iter().enumerate() {
                if s_sub[p] <= 0.0 {
                    let denom = x[i] - s_sub[p];
                    if denom > 0.0 {
                        alpha = alpha.min(x[i] / denom);
                    } else {
                        alpha = 0.0;
                    }
                }
            }
            for (p, &i) in idx.iter().enumerate() {
                x[i] += alpha * (s_sub[p] - x[i]);
            }
            for &i in &idx {
                if x[i] <= tol {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
            if !passive.iter().any(|p| *p) {
                break;
            }
        }
    }
    let residual = (a * &x - b).norm();
    Err(Error::NoConvergence {
        what: "non-negative least squares",
        iterations: max_outer,
        achieved: residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nnls_recovers_nonnegative_solution() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let truth = DVector::from_vec(vec![0.5, 2.0]);
        let b = &a * &truth;
        let x = nnls(&a, &b).unwrap();
        assert!((x - truth).norm() < 1e-12);
    }

    #[test]
    fn nnls_clamps_negative_component() {
        let a = DMatrix::identity(2, 2);
        let b = DVector::from_vec(vec![1.0, -3.0]);
        let x = nnls(&a, &b).unwrap();
        assert_eq!(x, DVector::from_vec(vec![1.0, 0.0]));
    }

    #[test]
    fn nnls_handles_opposing_columns() {
        // columns e1 and -e1 are linearly dependent
        let a = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, 0.0, 0.0]);
        let b = DVector::from_vec(vec![-2.0, 1.0]);
        let x = nnls(&a, &b).unwrap();
        let fit = &a * &x;
        assert!((fit[0] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn null_space_of_single_row() {
        let d = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let (range, null) = row_and_null_space(&d, 3);
        assert_eq!(range.ncols(), 1);
        assert_eq!(null.ncols(), 2);
        assert!((&d * &null).norm() < 1e-12);
    }
}
