//! Convex sets in R^n, Euclidean projections onto them, and the tangent and
//! normal cones used by the sharpness and solver modules.
//!
//! Every type here is immutable after construction and every operation is a
//! pure function of its inputs.

mod cone;
mod dykstra;
mod set;

pub use cone::{ConeGenerators, PolyhedralCone};
pub use dykstra::{dykstra, DykstraOutcome, DYKSTRA_CAP, DYKSTRA_TOL};
pub use set::{ConvexSet, SetDoc, SetKind};

use crate::{Result, Vector};

/// Default tolerance for "x belongs to S".
pub const MEMBERSHIP_TOL: f64 = 1e-8;

/// A constraint `a x <= b` is active at `x` when `|a x - b| <= ACTIVITY_TOL (1 + |b|)`.
pub const ACTIVITY_TOL: f64 = 1e-9;

pub fn project(set: &ConvexSet, x: &Vector) -> Result<Vector> {
    set.project(x)
}

pub fn distance(set: &ConvexSet, x: &Vector) -> Result<f64> {
    set.distance(x)
}

pub fn contains(set: &ConvexSet, x: &Vector, tol: f64) -> Result<bool> {
    set.contains(x, tol)
}

pub fn tangent_cone(set: &ConvexSet, x: &Vector) -> Result<PolyhedralCone> {
    set.tangent_cone(x)
}

pub fn normal_cone(set: &ConvexSet, x: &Vector) -> Result<PolyhedralCone> {
    set.normal_cone(x)
}

pub fn project_cone(cone: &PolyhedralCone, u: &Vector) -> Result<Vector> {
    cone.project(u)
}

pub fn intersect_cones(a: &PolyhedralCone, b: &PolyhedralCone) -> Result<PolyhedralCone> {
    a.intersect(b)
}
