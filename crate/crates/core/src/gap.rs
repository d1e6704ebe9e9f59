//! Primal gap `g(x) = max_z <F(x), x - z>` and dual gap
//! `G(x) = max_z <F(z), x - z>` over the feasible set, with one maximiser
//! reported as a witness.

use nalgebra::SymmetricEigen;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{ConvexSet, SetKind, MEMBERSHIP_TOL};
use crate::operators::{MapKind, VectorMap};
use crate::rng;
use crate::{Matrix, Vector};

const ASCENT_TOL: f64 = 1e-10;
const ASCENT_CAP: usize = 200_000;
/// Grid budget of the heuristic dual-gap search.
const GRID_BUDGET: usize = 20_000;

/// Maximiser of a linear functional over a set.
#[derive(Debug, Clone, PartialEq)]
pub struct Support {
    pub point: Vector,
    pub value: f64,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapValue {
    pub value: f64,
    /// One member of the argmax set (`Gamma(x)` or `Lambda(x)`).
    pub maximizer: Vector,
    /// True when obtained in closed form, by exhaustive vertex search, or by
    /// converged ascent on a concave objective.
    pub exact: bool,
}

/// `argmax <d, z>` over `set`. Ties go to the lexicographically smallest
/// vertex. Unbounded polyhedra yield [`Error::Unbounded`].
pub fn support_maximizer(set: &ConvexSet, d: &Vector) -> Result<Support> {
    check_dim(set.dim(), d.len())?;
    let n = d.len();
    let (point, exact) = match set.kind() {
        SetKind::Box => {
            let (lower, upper) = set.as_box().expect("box variant");
            let z = Vector::from_fn(n, |i, _| if d[i] > 0.0 { upper[i] } else { lower[i] });
            (z, true)
        }
        SetKind::Simplex => {
            let vs = set.vertices().expect("simplex vertices are always listed");
            (best_vertex(&vs, d), true)
        }
        SetKind::Ball => {
            let (center, radius) = set.as_ball().expect("ball variant");
            let norm = d.norm();
            if norm == 0.0 {
                let mut z = center.clone();
                z[0] -= radius;
                (z, true)
            } else {
                (center + d * (radius / norm), true)
            }
        }
        SetKind::Polyhedron => polyhedron_support(set, d)?,
    };
    let value = d.dot(&point);
    Ok(Support { point, value, exact })
}

fn best_vertex(vertices: &[Vector], d: &Vector) -> Vector {
    let mut best: Option<(&Vector, f64)> = None;
    for v in vertices {
        let val = d.dot(v);
        best = match best {
            None => Some((v, val)),
            Some((b, bv)) => {
                let tie = (val - bv).abs() <= 1e-12 * (1.0 + bv.abs());
                if (tie && lex_less(v, b)) || (!tie && val > bv) {
                    Some((v, val))
                } else {
                    Some((b, bv))
                }
            }
        };
    }
    best.expect("vertex list is nonempty").0.clone()
}

fn lex_less(a: &Vector, b: &Vector) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

fn polyhedron_support(set: &ConvexSet, d: &Vector) -> Result<(Vector, bool)> {
    let (a, _) = set.halfspaces().expect("polyhedra have halfspaces");
    let recession = crate::geometry::PolyhedralCone::new(set.dim(), a)?;
    let dn = d.norm();
    match recession.generators() {
        Ok(gens) => {
            if gens.spanning().iter().any(|g| d.dot(g) > 1e-12 * dn) {
                return Err(Error::Unbounded);
            }
            if gens.lineality.is_empty() {
                if let Some(vs) = set.vertices() {
                    return Ok((best_vertex(&vs, d), true));
                }
            }
        }
        Err(Error::EnumerationTooLarge(_)) => {}
        Err(e) => return Err(e),
    }
    Ok((projected_ascent_linear(set, d)?, false))
}

/// Projected ascent for a linear objective; fixed points satisfy
/// `d in N_S(z)`.
fn projected_ascent_linear(set: &ConvexSet, d: &Vector) -> Result<Vector> {
    let (lo, hi) = set.bounding_box()?;
    let width = (&hi - &lo).norm().max(1.0);
    let dn = d.norm();
    let mut z = set.project(&Vector::zeros(set.dim()))?;
    if dn == 0.0 {
        return Ok(z);
    }
    let step = width / dn;
    for _ in 0..2_000 {
        let next = set.project(&(&z + d * step))?;
        let moved = (&next - &z).norm();
        z = next;
        if moved <= 1e-12 * (1.0 + z.norm()) {
            break;
        }
    }
    Ok(z)
}

fn require_member(set: &ConvexSet, x: &Vector) -> Result<()> {
    let violation = set.violation(x)?;
    if violation > MEMBERSHIP_TOL {
        return Err(Error::NotInSet { violation });
    }
    Ok(())
}

/// `g(x) = max_{z in S} <F(x), x - z>`.
pub fn primal_gap(set: &ConvexSet, map: &VectorMap, x: &Vector) -> Result<GapValue> {
    check_dim(set.dim(), map.dim())?;
    require_member(set, x)?;
    let fx = map.evaluate(x)?;
    let support = support_maximizer(set, &-&fx)?;
    Ok(GapValue {
        value: fx.dot(&(x - &support.point)),
        maximizer: support.point,
        exact: support.exact,
    })
}

/// `G(x) = max_{z in S} <F(z), x - z>` on a bounded set.
///
/// Affine maps with a positive semidefinite symmetric part give a concave
/// inner objective, solved by projected gradient ascent (exact). Everything
/// else goes through a grid search refined around the best point (heuristic).
pub fn dual_gap(set: &ConvexSet, map: &VectorMap, x: &Vector) -> Result<GapValue> {
    check_dim(set.dim(), map.dim())?;
    require_member(set, x)?;
    if !set.is_bounded()? {
        return Err(Error::UnboundedSet);
    }
    if let MapKind::Affine { matrix, offset } = map.kind() {
        let sym = (matrix + matrix.transpose()) * 0.5;
        let scale = sym.norm();
        if scale <= 1e-14 {
            // <Mz, z> vanishes: the objective is linear in z
            let direction = matrix.tr_mul(x) - offset;
            let s = support_maximizer(set, &direction)?;
            let value = objective(map, x, &s.point)?;
            return Ok(GapValue {
                value,
                maximizer: s.point,
                exact: s.exact,
            });
        }
        let min_eig = SymmetricEigen::new(sym.clone()).eigenvalues.min();
        if min_eig >= -1e-12 * (1.0 + scale) {
            if let Some(gap) = concave_ascent(set, map, matrix, offset, x)? {
                return Ok(gap);
            }
        }
    }
    grid_search(set, map, x)
}

fn objective(map: &VectorMap, x: &Vector, z: &Vector) -> Result<f64> {
    Ok(map.evaluate(z)?.dot(&(x - z)))
}

fn concave_ascent(
    set: &ConvexSet,
    map: &VectorMap,
    matrix: &Matrix,
    offset: &Vector,
    x: &Vector,
) -> Result<Option<GapValue>> {
    let hessian = matrix + matrix.transpose();
    let curvature = hessian.norm().max(1e-300);
    let step = 1.0 / curvature;
    let linear = matrix.tr_mul(x) - offset;
    let mut z = match set.vertices() {
        Some(vs) => {
            let mut best = vs[0].clone();
            let mut best_val = objective(map, x, &best)?;
            for v in vs.iter().skip(1) {
                let val = objective(map, x, v)?;
                if val > best_val {
                    best_val = val;
                    best = v.clone();
                }
            }
            best
        }
        None => x.clone(),
    };
    for _ in 0..ASCENT_CAP {
        let grad = &linear - &hessian * &z;
        let next = set.project(&(&z + grad * step))?;
        let moved = (&next - &z).norm();
        z = next;
        if moved <= ASCENT_TOL {
            let value = objective(map, x, &z)?;
            return Ok(Some(GapValue {
                value,
                maximizer: z,
                exact: true,
            }));
        }
    }
    Ok(None)
}

fn grid_search(set: &ConvexSet, map: &VectorMap, x: &Vector) -> Result<GapValue> {
    let n = set.dim();
    let (lo, hi) = set.bounding_box()?;
    let mut candidates: Vec<Vector> = set.vertices().unwrap_or_default();
    let per_axis = (GRID_BUDGET as f64).powf(1.0 / n as f64).floor() as usize;
    let spacing = (&hi - &lo) / (per_axis.max(2) - 1) as f64;
    if n <= 4 && per_axis >= 2 {
        let total = per_axis.pow(n as u32);
        for idx in 0..total {
            let mut rem = idx;
            let p = Vector::from_fn(n, |i, _| {
                let k = rem % per_axis;
                rem /= per_axis;
                lo[i] + spacing[i] * k as f64
            });
            candidates.push(set.project(&p)?);
        }
    } else {
        let mut rng = rng::seeded(0x6A9);
        candidates.extend(set.sample(GRID_BUDGET, &mut rng)?);
    }
    candidates.push(x.clone());

    let mut best = candidates[0].clone();
    let mut best_val = objective(map, x, &best)?;
    for c in &candidates[1..] {
        let val = objective(map, x, c)?;
        if val > best_val {
            best_val = val;
            best = c.clone();
        }
    }

    // local pattern search around the incumbent
    let mut radius = spacing.amax().max(1e-3);
    while radius > 1e-10 {
        let mut improved = false;
        for i in 0..n {
            for sign in [1.0, -1.0] {
                let mut trial = best.clone();
                trial[i] += sign * radius;
                let trial = set.project(&trial)?;
                let val = objective(map, x, &trial)?;
                if val > best_val {
                    best_val = val;
                    best = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            radius *= 0.5;
        }
    }
    Ok(GapValue {
        value: best_val,
        maximizer: best,
        exact: false,
    })
}
