use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{nnls, rank, row_and_null_space};
use crate::Vector;

/// Upper limit on the row subsets visited by [`PolyhedralCone::generators`].
const MAX_SUBSETS: usize = 200_000;
const RAY_TOL: f64 = 1e-9;

/// The cone `{v : D v <= 0}`, optionally with a list of unit generators.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCone {
    dim: usize,
    rows: DMatrix<f64>,
    generators: Option<Vec<Vector>>,
}

/// Minkowski-Weyl description of a polyhedral cone: extreme rays of its
/// pointed part plus an orthonormal basis of its lineality space.
#[derive(Debug, Clone)]
pub struct ConeGenerators {
    pub rays: Vec<Vector>,
    pub lineality: Vec<Vector>,
}

impl ConeGenerators {
    /// Rays together with both signs of every lineality direction; the cone is
    /// exactly the conic hull of this list.
    pub fn spanning(&self) -> Vec<Vector> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(-l);
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }
}

impl PolyhedralCone {
    /// `rows` is k x n; an empty row set describes the whole space.
    pub fn new(dim: usize, rows: DMatrix<f64>) -> Result<Self> {
        if rows.nrows() > 0 {
            check_dim(dim, rows.ncols())?;
        }
        let rows = if rows.nrows() == 0 {
            DMatrix::zeros(0, dim)
        } else {
            rows
        };
        Ok(Self {
            dim,
            rows,
            generators: None,
        })
    }

    pub fn from_rows(dim: usize, rows: &[Vector]) -> Result<Self> {
        for r in rows {
            check_dim(dim, r.len())?;
        }
        let m = if rows.is_empty() {
            DMatrix::zeros(0, dim)
        } else {
            DMatrix::from_rows(&rows.iter().map(|r| r.transpose()).collect::<Vec<_>>())
        };
        Self::new(dim, m)
    }

    pub fn whole_space(dim: usize) -> Self {
        Self {
            dim,
            rows: DMatrix::zeros(0, dim),
            generators: None,
        }
    }

    /// Attach generators; each must satisfy `D g <= tol`.
    pub fn with_generators(mut self, generators: Vec<Vector>) -> Result<Self> {
        for g in &generators {
            check_dim(self.dim, g.len())?;
            if !self.contains(g, 1e-9) {
                return Err(Error::InvalidSet(
                    "cone generator violates the inequality system".into(),
                ));
            }
        }
        self.generators = Some(generators);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &DMatrix<f64> {
        &self.rows
    }

    pub fn generator_list(&self) -> Option<&[Vector]> {
        self.generators.as_deref()
    }

    /// Row-relative membership test `d_i v <= tol ||d_i|| ||v||`, which is
    /// invariant under positive scaling of `v`.
    pub fn contains(&self, v: &Vector, tol: f64) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let vn = v.norm();
        self.rows
            .row_iter()
            .all(|r| r.transpose().dot(v) <= tol * r.norm() * vn)
    }

    /// Euclidean projection onto the cone through the Moreau decomposition:
    /// the polar part is the non-negative least squares fit of `u` by the rows.
    pub fn project(&self, u: &Vector) -> Result<Vector> {
        check_dim(self.dim, u.len())?;
        if self.rows.nrows() == 0 {
            return Ok(u.clone());
        }
        let at = self.rows.transpose();
        let lambda = nnls(&at, u)?;
        Ok(u - at * lambda)
    }

    /// Stacked inequality system; generators are dropped.
    pub fn intersect(&self, other: &PolyhedralCone) -> Result<PolyhedralCone> {
        check_dim(self.dim, other.dim)?;
        let k = self.rows.nrows() + other.rows.nrows();
        let mut rows = DMatrix::zeros(k, self.dim);
        if self.rows.nrows() > 0 {
            rows.view_mut((0, 0), (self.rows.nrows(), self.dim))
                .copy_from(&self.rows);
        }
        if other.rows.nrows() > 0 {
            rows.view_mut((self.rows.nrows(), 0), (other.rows.nrows(), self.dim))
                .copy_from(&other.rows);
        }
        PolyhedralCone::new(self.dim, rows)
    }

    /// Enumerate extreme rays and lineality basis. Exhaustive over row subsets,
    /// so only meant for the small systems that tangent cones produce.
    pub fn generators(&self) -> Result<ConeGenerators> {
        let n = self.dim;
        let (range, null) = row_and_null_space(&self.rows, n);
        let lineality: Vec<Vector> = null.column_iter().map(|c| c.into_owned()).collect();
        let r = range.ncols();
        if r == 0 {
            return Ok(ConeGenerators {
                rays: Vec::new(),
                lineality,
            });
        }
        let reduced = &self.rows * &range; // k x r, full column rank
        let k = reduced.nrows();
        let subsets = binomial(k, r - 1);
        if subsets > MAX_SUBSETS {
            return Err(Error::EnumerationTooLarge(subsets));
        }
        let row_norms: Vec<f64> = reduced.row_iter().map(|row| row.norm()).collect();
        let mut rays: Vec<Vector> = Vec::new();
        for subset in (0..k).combinations(r - 1) {
            let sub = reduced.select_rows(&subset);
            if rank(&sub) != r - 1 {
                continue;
            }
            let (_, sub_null) = row_and_null_space(&sub, r);
            let z: DVector<f64> = sub_null.column(0).into_owned();
            for sign in [1.0, -1.0] {
                let zs = &z * sign;
                let ok = reduced
                    .row_iter()
                    .zip(&row_norms)
                    .all(|(row, nrm)| row.transpose().dot(&zs) <= RAY_TOL * nrm.max(1.0));
                if ok {
                    let mut ray = &range * &zs;
                    ray /= ray.norm();
                    if !rays.iter().any(|g| (g - &ray).norm() < 1e-9) {
                        rays.push(ray);
                    }
                }
            }
        }
        Ok(ConeGenerators { rays, lineality })
    }

    /// True when the cone is `{0}`.
    pub fn is_trivial(&self) -> Result<bool> {
        if rank(&self.rows) < self.dim {
            return Ok(false);
        }
        Ok(self.generators()?.is_trivial())
    }

    /// Polar cone `{u : <u, v> <= 0 for all v in K}`. Its inequality rows are
    /// the spanning generators of `K`; its generators are the normalised rows
    /// of `K`.
    pub fn polar(&self) -> Result<PolyhedralCone> {
        let gens = self.generators()?;
        let polar = PolyhedralCone::from_rows(self.dim, &gens.spanning())?;
        let mut normals: Vec<Vector> = Vec::new();
        for row in self.rows.row_iter() {
            let nrm = row.norm();
            if nrm > 0.0 {
                let g = row.transpose() / nrm;
                if !normals.iter().any(|h| (h - &g).norm() < 1e-12) {
                    normals.push(g);
                }
            }
        }
        polar.with_generators(normals)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
