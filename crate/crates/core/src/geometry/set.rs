use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::cone::PolyhedralCone;
use super::dykstra::{dykstra, violation, DYKSTRA_CAP, DYKSTRA_TOL};
use super::{ACTIVITY_TOL, MEMBERSHIP_TOL};
use crate::error::{check_dim, Error, Result};
use crate::rng::{self, Rng};
use crate::{Matrix, Vector};

/// Vertex enumeration for general polyhedra is attempted only up to this size.
pub(crate) const ENUM_MAX_DIM: usize = 3;
pub(crate) const ENUM_MAX_ROWS: usize = 12;
/// Boxes are enumerated up to 2^12 corners.
const BOX_ENUM_MAX_DIM: usize = 12;
/// Relative padding of the bounding box used by the sampler, so that a
/// positive fraction of samples lands on faces after projection.
const SAMPLE_PADDING: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    Box,
    Ball,
    Simplex,
    Polyhedron,
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Box { lower: Vector, upper: Vector },
    Ball { center: Vector, radius: f64 },
    Simplex { dim: usize },
    Polyhedron { a: Matrix, b: Vector },
}

/// A nonempty closed convex subset of R^n. Construct through the checked
/// constructors; the invariants of each variant hold for every value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SetDoc", into = "SetDoc")]
pub struct ConvexSet {
    shape: Shape,
}

/// File representation of a set: `{"variant": ..., "params": {...}}` with
/// matrices as lists of rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params", rename_all = "snake_case")]
pub enum SetDoc {
    Box { lower: Vec<f64>, upper: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Simplex { dim: usize },
    Polyhedron { a: Vec<Vec<f64>>, b: Vec<f64> },
}

impl TryFrom<SetDoc> for ConvexSet {
    type Error = Error;

    fn try_from(doc: SetDoc) -> Result<Self> {
        match doc {
            SetDoc::Box { lower, upper } => ConvexSet::new_box(Vector::from_vec(lower), Vector::from_vec(upper)),
            SetDoc::Ball { center, radius } => ConvexSet::ball(Vector::from_vec(center), radius),
            SetDoc::Simplex { dim } => ConvexSet::simplex(dim),
            SetDoc::Polyhedron { a, b } => {
                let m = a.len();
                let n = a.first().map_or(0, Vec::len);
                if a.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidSet("ragged polyhedron matrix".into()));
                }
                let flat: Vec<f64> = a.into_iter().flatten().collect();
                ConvexSet::polyhedron(DMatrix::from_row_slice(m, n, &flat), Vector::from_vec(b))
            }
        }
    }
}

impl From<ConvexSet> for SetDoc {
    fn from(set: ConvexSet) -> Self {
        match set.shape {
            Shape::Box { lower, upper } => SetDoc::Box {
                lower: lower.iter().copied().collect(),
                upper: upper.iter().copied().collect(),
            },
            Shape::Ball { center, radius } => SetDoc::Ball {
                center: center.iter().copied().collect(),
                radius,
            },
            Shape::Simplex { dim } => SetDoc::Simplex { dim },
            Shape::Polyhedron { a, b } => SetDoc::Polyhedron {
                a: a.row_iter().map(|r| r.iter().copied().collect()).collect(),
                b: b.iter().copied().collect(),
            },
        }
    }
}

impl ConvexSet {
    pub fn new_box(lower: Vector, upper: Vector) -> Result<Self> {
        check_dim(lower.len(), upper.len())?;
        if lower.is_empty() {
            return Err(Error::InvalidSet("box must have dimension >= 1".into()));
        }
        if lower.iter().chain(upper.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidSet("box bounds must be finite".into()));
        }
        if lower.iter().zip(upper.iter()).any(|(l, u)| l > u) {
            return Err(Error::InvalidSet("box requires lower <= upper".into()));
        }
        Ok(Self {
            shape: Shape::Box { lower, upper },
        })
    }

    /// `[0, 1]^n`.
    pub fn unit_box(n: usize) -> Result<Self> {
        Self::new_box(Vector::zeros(n), Vector::from_element(n, 1.0))
    }

    /// The singleton `{p}` as a degenerate box.
    pub fn point(p: Vector) -> Result<Self> {
        Self::new_box(p.clone(), p)
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidSet("ball must have dimension >= 1".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidSet("ball radius must be positive".into()));
        }
        Ok(Self {
            shape: Shape::Ball { center, radius },
        })
    }

    /// Standard unit simplex `{z >= 0, sum z = 1}` in R^dim.
    pub fn simplex(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSet("simplex must have dimension >= 1".into()));
        }
        Ok(Self {
            shape: Shape::Simplex { dim },
        })
    }

    /// `{x : a x <= b}`; rejected when a Dykstra run from the origin stalls
    /// with infeasibility above 1e-6.
    pub fn polyhedron(a: Matrix, b: Vector) -> Result<Self> {
        check_dim(a.nrows(), b.len())?;
        if a.ncols() == 0 {
            return Err(Error::InvalidSet("polyhedron must have dimension >= 1".into()));
        }
        if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidSet("polyhedron data must be finite".into()));
        }
        for (i, row) in a.row_iter().enumerate() {
            if row.norm() == 0.0 && b[i] < 0.0 {
                return Err(Error::InvalidSet(format!("row {i} reads 0 <= {}", b[i])));
            }
        }
        let origin = Vector::zeros(a.ncols());
        let probe = dykstra(&a, &b, &origin, DYKSTRA_CAP, DYKSTRA_TOL);
        if probe.infeasibility > 1e-6 {
            return Err(Error::InvalidSet(format!(
                "polyhedron appears empty (infeasibility {:.3e})",
                probe.infeasibility
            )));
        }
        Ok(Self {
            shape: Shape::Polyhedron { a, b },
        })
    }

    pub fn kind(&self) -> SetKind {
        match self.shape {
            Shape::Box { .. } => SetKind::Box,
            Shape::Ball { .. } => SetKind::Ball,
            Shape::Simplex { .. } => SetKind::Simplex,
            Shape::Polyhedron { .. } => SetKind::Polyhedron,
        }
    }

    pub fn as_box(&self) -> Option<(&Vector, &Vector)> {
        match &self.shape {
            Shape::Box { lower, upper } => Some((lower, upper)),
            _ => None,
        }
    }

    pub fn as_ball(&self) -> Option<(&Vector, f64)> {
        match &self.shape {
            Shape::Ball { center, radius } => Some((center, *radius)),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            Shape::Box { lower, .. } => lower.len(),
            Shape::Ball { center, .. } => center.len(),
            Shape::Simplex { dim } => *dim,
            Shape::Polyhedron { a, .. } => a.ncols(),
        }
    }

    /// Euclidean projection.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim(), x.len())?;
        match &self.shape {
            Shape::Box { lower, upper } => Ok(x.zip_zip_map(lower, upper, |v, l, u| v.clamp(l, u))),
            Shape::Ball { center, radius } => {
                let d = x - center;
                let norm = d.norm();
                if norm <= *radius {
                    Ok(x.clone())
                } else {
                    Ok(center + d * (*radius / norm))
                }
            }
            Shape::Simplex { .. } => Ok(project_simplex(x)),
            Shape::Polyhedron { a, b } => {
                let out = dykstra(a, b, x, DYKSTRA_CAP, DYKSTRA_TOL);
                if out.converged {
                    Ok(out.point)
                } else {
                    Err(Error::NoConvergence {
                        what: "Dykstra projection",
                        iterations: out.cycles,
                        achieved: out.infeasibility,
                    })
                }
            }
        }
    }

    pub fn distance(&self, x: &Vector) -> Result<f64> {
        Ok((x - self.project(x)?).norm())
    }

    /// Largest constraint violation at `x` (zero inside the set).
    pub fn violation(&self, x: &Vector) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        Ok(match &self.shape {
            Shape::Box { lower, upper } => x
                .iter()
                .zip(lower.iter().zip(upper.iter()))
                .fold(0.0_f64, |acc, (v, (l, u))| acc.max(l - v).max(v - u)),
            Shape::Ball { center, radius } => ((x - center).norm() - radius).max(0.0),
            Shape::Simplex { .. } => {
                let neg = x.iter().fold(0.0_f64, |acc, v| acc.max(-v));
                neg.max((x.sum() - 1.0).abs())
            }
            Shape::Polyhedron { a, b } => violation(a, b, x),
        })
    }

    /// True iff every defining constraint holds within `tol`.
    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        Ok(self.violation(x)? <= tol)
    }

    pub fn require_member(&self, x: &Vector) -> Result<()> {
        let violation = self.violation(x)?;
        if violation > MEMBERSHIP_TOL {
            return Err(Error::NotInSet { violation });
        }
        Ok(())
    }

    /// Inequality description `{x : a x <= b}` for every variant except the
    /// ball. The simplex equality appears as two opposing rows.
    pub fn halfspaces(&self) -> Option<(Matrix, Vector)> {
        match &self.shape {
            Shape::Box { lower, upper } => {
                let n = lower.len();
                let mut a = DMatrix::zeros(2 * n, n);
                let mut b = Vector::zeros(2 * n);
                for i in 0..n {
                    a[(i, i)] = 1.0;
                    b[i] = upper[i];
                    a[(n + i, i)] = -1.0;
                    b[n + i] = -lower[i];
                }
                Some((a, b))
            }
            Shape::Simplex { dim } => {
                let n = *dim;
                let mut a = DMatrix::zeros(n + 2, n);
                let mut b = Vector::zeros(n + 2);
                for i in 0..n {
                    a[(i, i)] = -1.0;
                    a[(n, i)] = 1.0;
                    a[(n + 1, i)] = -1.0;
                }
                b[n] = 1.0;
                b[n + 1] = -1.0;
                Some((a, b))
            }
            Shape::Polyhedron { a, b } => Some((a.clone(), b.clone())),
            Shape::Ball { .. } => None,
        }
    }

    /// Tangent cone `T_S(x)` as the inequality system of the constraints
    /// active at `x`. Interior points give the whole space.
    pub fn tangent_cone(&self, x: &Vector) -> Result<PolyhedralCone> {
        self.require_member(x)?;
        let n = self.dim();
        let active = |lhs: f64, rhs: f64| (lhs - rhs).abs() <= ACTIVITY_TOL * (1.0 + rhs.abs());
        let mut rows: Vec<Vector> = Vec::new();
        match &self.shape {
            Shape::Box { lower, upper } => {
                for i in 0..n {
                    if active(x[i], upper[i]) {
                        rows.push(unit(n, i, 1.0));
                    }
                    if active(-x[i], -lower[i]) {
                        rows.push(unit(n, i, -1.0));
                    }
                }
            }
            Shape::Ball { center, radius } => {
                let d = x - center;
                if active(d.norm(), *radius) {
                    rows.push(d);
                }
            }
            Shape::Simplex { .. } => {
                rows.push(Vector::from_element(n, 1.0));
                rows.push(Vector::from_element(n, -1.0));
                for i in 0..n {
                    if active(-x[i], 0.0) {
                        rows.push(unit(n, i, -1.0));
                    }
                }
            }
            Shape::Polyhedron { a, b } => {
                for (i, row) in a.row_iter().enumerate() {
                    let row = row.transpose();
                    if row.norm() > 0.0 && active(row.dot(x), b[i]) {
                        rows.push(row);
                    }
                }
            }
        }
        PolyhedralCone::from_rows(n, &rows)
    }

    /// Normal cone `N_S(x)`, the polar of the tangent cone. Box, simplex and
    /// polyhedron cones carry the normalised active constraint normals as
    /// generators.
    pub fn normal_cone(&self, x: &Vector) -> Result<PolyhedralCone> {
        let tangent = self.tangent_cone(x)?;
        let polar = tangent.polar()?;
        match self.shape {
            Shape::Ball { .. } => PolyhedralCone::new(polar.dim(), polar.rows().clone()),
            _ => Ok(polar),
        }
    }

    pub fn is_bounded(&self) -> Result<bool> {
        match &self.shape {
            Shape::Polyhedron { a, .. } => PolyhedralCone::new(a.ncols(), a.clone())?.is_trivial(),
            _ => Ok(true),
        }
    }

    /// Vertex list when it is cheap to enumerate exactly: box corners up to
    /// n = 12, simplex vertices, and polyhedra with n <= 3 and at most 12 rows.
    /// `None` when the set is a ball, too large, or has no vertices.
    pub fn vertices(&self) -> Option<Vec<Vector>> {
        match &self.shape {
            Shape::Box { lower, upper } => {
                let n = lower.len();
                if n > BOX_ENUM_MAX_DIM {
                    return None;
                }
                let mut out: Vec<Vector> = Vec::new();
                for mask in 0..(1usize << n) {
                    let v = Vector::from_fn(n, |i, _| if mask & (1 << i) != 0 { upper[i] } else { lower[i] });
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
                Some(out)
            }
            Shape::Simplex { dim } => Some((0..*dim).map(|i| unit(*dim, i, 1.0)).collect()),
            Shape::Polyhedron { a, b } => polyhedron_vertices(a, b),
            Shape::Ball { .. } => None,
        }
    }

    /// Axis-aligned box containing the set (for polyhedra without enumerable
    /// vertices, the hull of projected random probes).
    pub fn bounding_box(&self) -> Result<(Vector, Vector)> {
        match &self.shape {
            Shape::Box { lower, upper } => Ok((lower.clone(), upper.clone())),
            Shape::Ball { center, radius } => Ok((center.add_scalar(-radius), center.add_scalar(*radius))),
            Shape::Simplex { dim } => Ok((Vector::zeros(*dim), Vector::from_element(*dim, 1.0))),
            Shape::Polyhedron { a, b } => {
                let n = a.ncols();
                let points = match (self.is_bounded()?, polyhedron_vertices(a, b)) {
                    (true, Some(vs)) => vs,
                    _ => {
                        let mut rng = rng::seeded(0x5EED_B0C5);
                        let spread = 1.0 + b.amax();
                        (0..200)
                            .map(|_| self.project(&(rng::gaussian(&mut rng, n) * spread)))
                            .collect::<Result<Vec<_>>>()?
                    }
                };
                let mut lo = Vector::from_element(n, f64::INFINITY);
                let mut hi = Vector::from_element(n, f64::NEG_INFINITY);
                for p in &points {
                    lo = lo.inf(p);
                    hi = hi.sup(p);
                }
                Ok((lo, hi))
            }
        }
    }

    /// Draw `count` points of the set: uniform over a padded bounding box,
    /// then projected. Padding puts positive mass on faces and vertices.
    pub fn sample(&self, count: usize, rng: &mut Rng) -> Result<Vec<Vector>> {
        let (lo, hi) = self.bounding_box()?;
        let width = &hi - &lo;
        let lo = &lo - &width * SAMPLE_PADDING;
        let hi = &hi + &width * SAMPLE_PADDING;
        (0..count)
            .map(|_| {
                let raw = Vector::from_fn(lo.len(), |i, _| {
                    if hi[i] > lo[i] {
                        rng.random_range(lo[i]..hi[i])
                    } else {
                        lo[i]
                    }
                });
                self.project(&raw)
            })
            .collect()
    }
}

fn unit(n: usize, i: usize, sign: f64) -> Vector {
    let mut e = Vector::zeros(n);
    e[i] = sign;
    e
}

/// Sorting-based projection onto the unit simplex.
pub(crate) fn project_simplex(x: &Vector) -> Vector {
    let mut sorted: Vec<f64> = x.iter().copied().collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (i, v) in sorted.iter().enumerate() {
        cumulative += v;
        let candidate = (cumulative - 1.0) / (i + 1) as f64;
        if v - candidate > 0.0 {
            theta = candidate;
        }
    }
    x.map(|v| (v - theta).max(0.0))
}

fn polyhedron_vertices(a: &Matrix, b: &Vector) -> Option<Vec<Vector>> {
    let (m, n) = a.shape();
    if n > ENUM_MAX_DIM || m > ENUM_MAX_ROWS {
        return None;
    }
    let mut out: Vec<Vector> = Vec::new();
    for subset in (0..m).combinations(n) {
        let sub_a = a.select_rows(&subset);
        let sub_b = DVector::from_iterator(n, subset.iter().map(|&i| b[i]));
        if crate::linalg::rank(&sub_a) < n {
            continue;
        }
        let Some(p) = sub_a.lu().solve(&sub_b) else {
            continue;
        };
        let feasible = (0..m).all(|i| a.row(i).transpose().dot(&p) <= b[i] + ACTIVITY_TOL * (1.0 + b[i].abs()));
        if feasible && !out.iter().any(|q| (q - &p).norm() < 1e-9) {
            out.push(p);
        }
    }
    if out.is_empty() {
        None
    } else {
        Some(out)
    }
}
