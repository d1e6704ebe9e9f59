//! Finite-dimensional variational inequalities: find `x*` in a closed convex
//! set `X` with `<F(x*), x - x*> >= 0` for every `x` in `X`.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: convex sets, Euclidean projections, tangent and normal cones.
//! * [`operators`]: the map `F` and sampling probes for its monotonicity class.
//! * [`gap`]: primal and dual gap functions.
//! * [`sharpness`]: weak-sharpness moduli and the tangent-cone residual.
//! * [`solvers`]: gradient projection and (in)exact proximal point iterations
//!   with per-step instrumentation and finite-termination bounds.
//! * [`harness`]: problem generators with known solution sets, problem files,
//!   suite runner and CSV reports.

pub mod error;
pub mod gap;
pub mod geometry;
pub mod harness;
pub(crate) mod linalg;
pub mod operators;
pub mod rng;
pub mod sharpness;
pub mod solvers;

pub use error::{Error, Result};
pub use gap::{dual_gap, primal_gap, support_maximizer, GapValue, Support};
pub use geometry::{ConvexSet, PolyhedralCone};
pub use operators::VectorMap;
pub use sharpness::{Modulus, SharpnessCertificate};
pub use solvers::{IterateTrace, Method, SolverConfig};

/// Dense column vector used throughout the crate.
pub type Vector = nalgebra::DVector<f64>;
/// Dense row-major-agnostic matrix.
pub type Matrix = nalgebra::DMatrix<f64>;
