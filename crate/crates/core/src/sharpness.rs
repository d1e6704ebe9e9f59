//! Weak-sharpness moduli of a solution set and the tangent-cone residual.
//!
//! A solution set `X*` is weakly sharp with modulus `alpha > 0` when
//! `<F(x*), v> >= alpha ||v||` for every `x*` in `X*` and every `v` in
//! `T_X(x*) ∩ N_{X*}(x*)`. Three sampled estimators are provided: the cone
//! condition itself and two error-bound forms, one evaluating `F` at the
//! projection onto `X*` and one at the query point.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{ConvexSet, PolyhedralCone, MEMBERSHIP_TOL};
use crate::operators::VectorMap;
use crate::rng::{self, Rng};
use crate::Vector;

/// Sampled moduli overestimate the infimum; bounds use `SAFETY_FACTOR * alpha`.
pub const SAFETY_FACTOR: f64 = 0.99;
pub const CONSTANCY_PAIRS: usize = 100;
pub const CONSTANCY_TOL: f64 = 1e-8;
/// Points closer than this to `X*` are skipped by the error-bound estimators.
pub const MIN_DISTANCE: f64 = 1e-9;
const MAX_ANCHORS: usize = 64;

/// Serialized as a bare number or the string `"vacuous"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "ModulusDoc", into = "ModulusDoc")]
pub enum Modulus {
    Finite(f64),
    /// The cone `T_X(x*) ∩ N_{X*}(x*)` is `{0}` everywhere sampled, so the
    /// sharpness inequality holds for every alpha.
    Vacuous,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ModulusDoc {
    Finite(f64),
    Vacuous(VacuousTag),
}

#[derive(Serialize, Deserialize)]
enum VacuousTag {
    #[serde(rename = "vacuous")]
    Vacuous,
}

impl From<ModulusDoc> for Modulus {
    fn from(doc: ModulusDoc) -> Self {
        match doc {
            ModulusDoc::Finite(v) => Modulus::Finite(v),
            ModulusDoc::Vacuous(_) => Modulus::Vacuous,
        }
    }
}

impl From<Modulus> for ModulusDoc {
    fn from(m: Modulus) -> Self {
        match m {
            Modulus::Finite(v) => ModulusDoc::Finite(v),
            Modulus::Vacuous => ModulusDoc::Vacuous(VacuousTag::Vacuous),
        }
    }
}

impl Modulus {
    pub fn value(&self) -> Option<f64> {
        match self {
            Modulus::Finite(v) => Some(*v),
            Modulus::Vacuous => None,
        }
    }

    /// Finite and strictly positive.
    pub fn is_sharp(&self) -> bool {
        matches!(self, Modulus::Finite(v) if *v > 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    /// `min <F(x*), v>` over unit `v` in `T_X(x*) ∩ N_{X*}(x*)`.
    Cone,
    /// `min <F(P(x)), x - P(x)> / dist(x, X*)`.
    ErrorBoundAtProjection,
    /// `min <F(x), x - P(x)> / dist(x, X*)`.
    ErrorBoundAtPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessCertificate {
    pub alpha: Modulus,
    pub method: CertificateMethod,
    pub samples: usize,
    pub witness_point: Vec<f64>,
    pub witness_direction: Option<Vec<f64>>,
    pub exact: bool,
}

fn check_solution_set(set: &ConvexSet, solutions: &ConvexSet, map: &VectorMap, rng: &mut Rng) -> Result<Vec<Vector>> {
    check_dim(set.dim(), solutions.dim())?;
    check_dim(set.dim(), map.dim())?;
    let mut points = solutions.vertices().unwrap_or_default();
    points.truncate(MAX_ANCHORS);
    points.extend(solutions.sample(2 * CONSTANCY_PAIRS, rng)?);
    for p in &points {
        if !set.contains(p, MEMBERSHIP_TOL)? {
            return Err(Error::NotSubset);
        }
    }
    let mut spread = 0.0_f64;
    for pair in points.chunks_exact(2).take(CONSTANCY_PAIRS) {
        spread = spread.max((map.evaluate(&pair[0])? - map.evaluate(&pair[1])?).norm());
    }
    if spread > CONSTANCY_TOL {
        return Err(Error::NotConstantOnSolutions { spread });
    }
    Ok(points)
}

/// Sample unit directions of `cone` by projecting Gaussian vectors.
fn cone_direction(cone: &PolyhedralCone, rng: &mut Rng) -> Result<Option<Vector>> {
    let g = rng::gaussian(rng, cone.dim());
    let p = cone.project(&g)?;
    let norm = p.norm();
    Ok((norm >= 1e-12).then(|| p / norm))
}

/// Cone-condition modulus: the minimum of `<F(x*), v>` over sampled `x*` in
/// `X*` and unit `v` in `T_X(x*) ∩ N_{X*}(x*)`.
///
/// Cone generators are enumerated when possible and always included among
/// the candidates; the result is `exact` when every anchor's cone was
/// enumerated and the minimum is non-negative (a non-negative linear form on
/// a cone attains its minimum ratio at a generator).
pub fn modulus_cone(
    set: &ConvexSet,
    solutions: &ConvexSet,
    map: &VectorMap,
    samples: usize,
    seed: u64,
) -> Result<SharpnessCertificate> {
    let mut rng = rng::seeded(seed);
    let pool = check_solution_set(set, solutions, map, &mut rng)?;
    let mut anchors: Vec<Vector> = solutions.vertices().unwrap_or_default();
    anchors.truncate(MAX_ANCHORS / 2);
    let extra = (samples / 500).clamp(1, MAX_ANCHORS);
    anchors.extend(pool.into_iter().rev().take(extra));
    let per_anchor = (samples / anchors.len()).max(1);

    let mut best: Option<(f64, Vector, Vector)> = None;
    let mut all_enumerated = true;
    let consider = |value: f64, x: &Vector, v: &Vector, best: &mut Option<(f64, Vector, Vector)>| {
        if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
            *best = Some((value, x.clone(), v.clone()));
        }
    };

    for x in &anchors {
        let tangent = set.tangent_cone(x)?;
        let normal = solutions.normal_cone(x)?;
        let cone = tangent.intersect(&normal)?;
        let f = map.evaluate(x)?;
        match cone.generators() {
            Ok(gens) => {
                if gens.is_trivial() {
                    continue;
                }
                for g in gens.spanning() {
                    consider(f.dot(&g), x, &g, &mut best);
                }
            }
            Err(Error::EnumerationTooLarge(_)) => all_enumerated = false,
            Err(e) => return Err(e),
        }
        for _ in 0..per_anchor {
            if let Some(v) = cone_direction(&cone, &mut rng)? {
                consider(f.dot(&v), x, &v, &mut best);
            }
        }
    }

    Ok(match best {
        None => SharpnessCertificate {
            alpha: Modulus::Vacuous,
            method: CertificateMethod::Cone,
            samples,
            witness_point: anchors[0].iter().copied().collect(),
            witness_direction: None,
            exact: all_enumerated,
        },
        Some((alpha, x, v)) => SharpnessCertificate {
            alpha: Modulus::Finite(alpha),
            method: CertificateMethod::Cone,
            samples,
            witness_point: x.iter().copied().collect(),
            witness_direction: Some(v.iter().copied().collect()),
            exact: all_enumerated && alpha >= 0.0,
        },
    })
}

/// Points of `set` for the error-bound estimators: half drawn globally, half
/// near `X*` along random directions at log-uniform radii, so that both far
/// and nearly-touching configurations are represented.
fn error_bound_samples(set: &ConvexSet, solutions: &ConvexSet, samples: usize, rng: &mut Rng) -> Result<Vec<Vector>> {
    let global = samples / 2;
    let mut points = set.sample(global, rng)?;
    let (lo, hi) = set.bounding_box()?;
    let top = (&hi - &lo).norm().max(1e-12).log10();
    let anchors = solutions.sample((samples - global).clamp(1, 1_000), rng)?;
    for i in 0..(samples - global) {
        let anchor = &anchors[i % anchors.len()];
        let u = rng::unit_vector(rng, set.dim());
        let exponent: f64 = rand::Rng::random_range(rng, top - 6.0..top);
        let t = 10f64.powf(exponent);
        points.push(set.project(&(anchor + u * t))?);
    }
    Ok(points)
}

fn error_bound_modulus(
    set: &ConvexSet,
    solutions: &ConvexSet,
    map: &VectorMap,
    samples: usize,
    seed: u64,
    method: CertificateMethod,
) -> Result<SharpnessCertificate> {
    let mut rng = rng::seeded(seed);
    check_solution_set(set, solutions, map, &mut rng)?;
    let points = error_bound_samples(set, solutions, samples, &mut rng)?;
    let mut best: Option<(f64, Vector, Vector)> = None;
    for x in points {
        let p = solutions.project(&x)?;
        let d = &x - &p;
        let dist = d.norm();
        if dist < MIN_DISTANCE {
            continue;
        }
        let f = match method {
            CertificateMethod::ErrorBoundAtPoint => map.evaluate(&x)?,
            _ => map.evaluate(&p)?,
        };
        let ratio = f.dot(&d) / dist;
        if best.as_ref().is_none_or(|(b, _, _)| ratio < *b) {
            best = Some((ratio, x, d / dist));
        }
    }
    Ok(match best {
        None => SharpnessCertificate {
            alpha: Modulus::Vacuous,
            method,
            samples,
            witness_point: Vec::new(),
            witness_direction: None,
            exact: false,
        },
        Some((alpha, x, v)) => SharpnessCertificate {
            alpha: Modulus::Finite(alpha),
            method,
            samples,
            witness_point: x.iter().copied().collect(),
            witness_direction: Some(v.iter().copied().collect()),
            exact: false,
        },
    })
}

/// Error-bound modulus with `F` evaluated at the projection onto `X*`:
/// `min <F(P(x)), x - P(x)> / dist(x, X*)` over sampled `x` in `S \ X*`.
pub fn modulus_error_bound_at_projection(
    set: &ConvexSet,
    solutions: &ConvexSet,
    map: &VectorMap,
    samples: usize,
    seed: u64,
) -> Result<SharpnessCertificate> {
    error_bound_modulus(
        set,
        solutions,
        map,
        samples,
        seed,
        CertificateMethod::ErrorBoundAtProjection,
    )
}

/// Error-bound modulus with `F` evaluated at the query point:
/// `min <F(x), x - P(x)> / dist(x, X*)`. Uses the same samples as
/// [`modulus_error_bound_at_projection`] for equal seeds.
pub fn modulus_error_bound_at_point(
    set: &ConvexSet,
    solutions: &ConvexSet,
    map: &VectorMap,
    samples: usize,
    seed: u64,
) -> Result<SharpnessCertificate> {
    error_bound_modulus(set, solutions, map, samples, seed, CertificateMethod::ErrorBoundAtPoint)
}

/// `||P_{T_S(x)}(-F(x))||`, which equals `max <v, -F(x)>` over unit `v` in
/// the tangent cone and vanishes exactly at solutions.
pub fn residual(set: &ConvexSet, map: &VectorMap, x: &Vector) -> Result<f64> {
    let tangent = set.tangent_cone(x)?;
    Ok(tangent.project(&-map.evaluate(x)?)?.norm())
}

/// Sampled `max <v, -F(x)>` over `directions` unit vectors of `T_S(x)`.
/// A lower bound for [`residual`].
pub fn sampled_tangent_max(set: &ConvexSet, map: &VectorMap, x: &Vector, directions: usize, seed: u64) -> Result<f64> {
    let tangent = set.tangent_cone(x)?;
    let target = -map.evaluate(x)?;
    let mut rng = rng::seeded(seed);
    let mut best = 0.0_f64;
    for _ in 0..directions {
        if let Some(v) = cone_direction(&tangent, &mut rng)? {
            best = best.max(v.dot(&target));
        }
    }
    Ok(best)
}
