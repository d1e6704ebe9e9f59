//! The map `F` of a variational inequality and sampling probes for the
//! monotonicity classes the convergence theory relies on.
//!
//! Probes can only falsify or support a property on the drawn sample; each
//! report carries its sample count and, where relevant, a witness pair.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::ConvexSet;
use crate::rng;
use crate::{Matrix, Vector};

/// Cap and tolerance of the power iteration used for the spectral norm.
pub const POWER_ITER_CAP: usize = 10_000;
pub const POWER_ITER_TOL: f64 = 1e-10;
/// `|<F(y), y - x>| <= EQUALITY_TOL` counts as zero in the pseudomonotone+ probe.
pub const EQUALITY_TOL: f64 = 1e-9;
/// Largest `||F(x) - F(y)||` over qualifying pairs that still counts as
/// consistent with pseudomonotonicity+. Qualifying pairs of a Lipschitz map
/// can sit up to about `sqrt(EQUALITY_TOL)` apart, so the threshold is well
/// above that.
pub const DISCREPANCY_TOL: f64 = 1e-3;
const MONOTONE_TOL: f64 = 1e-10;

type EvalFn = dyn Fn(&Vector) -> Vector + Send + Sync;

/// A named nonlinear map from the built-in catalog.
#[derive(Clone)]
pub struct BlackBox {
    name: String,
    center: Vector,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for BlackBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlackBox")
            .field("name", &self.name)
            .field("center", &self.center.as_slice())
            .finish()
    }
}

impl PartialEq for BlackBox {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.center == other.center
    }
}

/// Names accepted by [`VectorMap::from_catalog`].
pub const CATALOG: &[&str] = &["tanh_shift", "cubic_shift"];

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    /// `F(x) = M x + q`.
    Affine {
        matrix: Matrix,
        offset: Vector,
    },
    BlackBox(BlackBox),
}

/// The operator `F : R^n -> R^n` with optional declared constants.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "MapDoc", into = "MapDoc")]
pub struct VectorMap {
    kind: MapKind,
    declared_mu: Option<f64>,
    declared_lipschitz: Option<f64>,
    spectral_norm: OnceLock<f64>,
}

/// Equality ignores the cached spectral norm.
impl PartialEq for VectorMap {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.declared_mu == other.declared_mu
            && self.declared_lipschitz == other.declared_lipschitz
    }
}

/// File representation: `{"variant": "affine", "params": {"m": [[..]], "q": [..]}}`
/// or `{"variant": "black_box", "params": {"name": .., "c": [..]}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params", rename_all = "snake_case")]
pub enum MapDoc {
    Affine { m: Vec<Vec<f64>>, q: Vec<f64> },
    BlackBox { name: String, c: Vec<f64> },
}

impl TryFrom<MapDoc> for VectorMap {
    type Error = Error;

    fn try_from(doc: MapDoc) -> Result<Self> {
        match doc {
            MapDoc::Affine { m, q } => {
                let n = q.len();
                if m.len() != n || m.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidMap(format!("affine map needs an {n}x{n} matrix")));
                }
                let flat: Vec<f64> = m.into_iter().flatten().collect();
                VectorMap::affine(Matrix::from_row_slice(n, n, &flat), Vector::from_vec(q))
            }
            MapDoc::BlackBox { name, c } => VectorMap::from_catalog(&name, Vector::from_vec(c)),
        }
    }
}

impl From<VectorMap> for MapDoc {
    fn from(map: VectorMap) -> Self {
        match map.kind {
            MapKind::Affine { matrix, offset } => MapDoc::Affine {
                m: matrix.row_iter().map(|r| r.iter().copied().collect()).collect(),
                q: offset.iter().copied().collect(),
            },
            MapKind::BlackBox(bb) => MapDoc::BlackBox {
                name: bb.name,
                c: bb.center.iter().copied().collect(),
            },
        }
    }
}

/// Spectral-norm or sampled Lipschitz estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipschitzEstimate {
    pub value: f64,
    /// Sampled estimates only bound the true constant from below.
    pub lower_bound_only: bool,
}

#[derive(Debug, Clone)]
pub struct MonotoneReport {
    pub samples: usize,
    /// Minimum of `<F(x) - F(y), x - y>` over sampled pairs.
    pub min_value: f64,
    pub witness: Option<(Vector, Vector)>,
    pub monotone: bool,
}

#[derive(Debug, Clone)]
pub struct ModulusProbe {
    pub samples: usize,
    pub qualifying_pairs: usize,
    /// Smallest sampled ratio; an upper bound on any valid modulus.
    pub modulus: f64,
    pub witness: (Vector, Vector),
}

#[derive(Debug, Clone)]
pub struct PseudoPlusReport {
    pub samples: usize,
    /// A pair violating plain pseudomonotonicity, if one was found.
    pub pseudomonotone_witness: Option<(Vector, Vector)>,
    pub qualifying_pairs: usize,
    /// Largest `||F(x) - F(y)||` over pairs with `<F(x), y - x> >= 0` and
    /// `<F(y), y - x> = 0`.
    pub max_discrepancy: f64,
    pub witness: Option<(Vector, Vector)>,
    pub consistent: bool,
}

impl VectorMap {
    pub fn affine(matrix: Matrix, offset: Vector) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidMap("affine matrix must be square".into()));
        }
        check_dim(matrix.nrows(), offset.len())?;
        if offset.is_empty() {
            return Err(Error::InvalidMap("map must have dimension >= 1".into()));
        }
        Ok(Self::from_kind(MapKind::Affine { matrix, offset }))
    }

    /// `F(x) = q` everywhere.
    pub fn constant(offset: Vector) -> Result<Self> {
        let n = offset.len();
        Self::affine(Matrix::zeros(n, n), offset)
    }

    /// `F(x) = scale * (x - center)`.
    pub fn scaled_shift(scale: f64, center: Vector) -> Result<Self> {
        let n = center.len();
        Self::affine(Matrix::identity(n, n) * scale, -center * scale)
    }

    /// Catalog maps, all monotone and 1-Lipschitz around `center`:
    /// `tanh_shift` is `tanh(x_i - c_i)` per coordinate and `cubic_shift` is
    /// `(x_i - c_i)^3 + (x_i - c_i)` (Lipschitz only on bounded sets).
    pub fn from_catalog(name: &str, center: Vector) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidMap("map must have dimension >= 1".into()));
        }
        let c = center.clone();
        let eval: Arc<EvalFn> = match name {
            "tanh_shift" => Arc::new(move |x: &Vector| (x - &c).map(f64::tanh)),
            "cubic_shift" => Arc::new(move |x: &Vector| (x - &c).map(|t| t * t * t + t)),
            other => return Err(Error::InvalidMap(format!("unknown catalog map '{other}'"))),
        };
        Ok(Self::from_kind(MapKind::BlackBox(BlackBox {
            name: name.to_string(),
            center,
            eval,
        })))
    }

    fn from_kind(kind: MapKind) -> Self {
        Self {
            kind,
            declared_mu: None,
            declared_lipschitz: None,
            spectral_norm: OnceLock::new(),
        }
    }

    /// Declare a strong-pseudomonotonicity (or inverse-strong-monotonicity) modulus.
    pub fn with_mu(mut self, mu: f64) -> Result<Self> {
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::InvalidMap("declared mu must be >= 0".into()));
        }
        self.declared_mu = Some(mu);
        Ok(self)
    }

    /// Declare a Lipschitz constant. For affine maps it may not undercut the
    /// spectral norm by more than 1e-8.
    pub fn with_lipschitz(mut self, lipschitz: f64) -> Result<Self> {
        if !(lipschitz > 0.0 && lipschitz.is_finite()) {
            return Err(Error::InvalidMap("declared L must be > 0".into()));
        }
        if let MapKind::Affine { .. } = self.kind {
            let norm = self.spectral_norm()?;
            if lipschitz < norm - 1e-8 {
                return Err(Error::InvalidMap(format!(
                    "declared L = {lipschitz} is below the spectral norm {norm}"
                )));
            }
        }
        self.declared_lipschitz = Some(lipschitz);
        Ok(self)
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn declared_mu(&self) -> Option<f64> {
        self.declared_mu
    }

    pub fn declared_lipschitz(&self) -> Option<f64> {
        self.declared_lipschitz
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            MapKind::Affine { offset, .. } => offset.len(),
            MapKind::BlackBox(bb) => bb.center.len(),
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self.kind, MapKind::Affine { .. })
    }

    /// True for affine maps with a zero matrix.
    pub fn is_constant(&self) -> bool {
        match &self.kind {
            MapKind::Affine { matrix, .. } => matrix.iter().all(|v| *v == 0.0),
            MapKind::BlackBox(_) => false,
        }
    }

    pub fn evaluate(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim(), x.len())?;
        Ok(match &self.kind {
            MapKind::Affine { matrix, offset } => matrix * x + offset,
            MapKind::BlackBox(bb) => (bb.eval)(x),
        })
    }

    fn spectral_norm(&self) -> Result<f64> {
        let MapKind::Affine { matrix, .. } = &self.kind else {
            return Err(Error::InvalidMap("spectral norm needs an affine map".into()));
        };
        if let Some(v) = self.spectral_norm.get() {
            return Ok(*v);
        }
        let v = power_iteration_norm(matrix)?;
        Ok(*self.spectral_norm.get_or_init(|| v))
    }

    /// Spectral norm of `M` for affine maps. Black-box maps need a domain,
    /// see [`VectorMap::estimate_lipschitz_on`].
    pub fn estimate_lipschitz(&self) -> Result<LipschitzEstimate> {
        match self.kind {
            MapKind::Affine { .. } => Ok(LipschitzEstimate {
                value: self.spectral_norm()?,
                lower_bound_only: false,
            }),
            MapKind::BlackBox(_) => Err(Error::InvalidMap(
                "black-box Lipschitz estimate needs a sampling domain".into(),
            )),
        }
    }

    /// Like [`VectorMap::estimate_lipschitz`], but black-box maps are probed
    /// with `max ||F(x) - F(y)|| / ||x - y||` over sampled pairs of `domain`.
    pub fn estimate_lipschitz_on(&self, domain: &ConvexSet, samples: usize, seed: u64) -> Result<LipschitzEstimate> {
        if self.is_affine() {
            return self.estimate_lipschitz();
        }
        check_dim(self.dim(), domain.dim())?;
        let mut best = 0.0_f64;
        for (x, y) in sample_pairs(domain, samples, seed)? {
            let dx = (&x - &y).norm();
            if dx > 1e-12 {
                let df = (self.evaluate(&x)? - self.evaluate(&y)?).norm();
                best = best.max(df / dx);
            }
        }
        Ok(LipschitzEstimate {
            value: best,
            lower_bound_only: true,
        })
    }

    /// Lipschitz constant used by the solvers: declared value, else the
    /// spectral norm, else a sampled estimate on `domain`.
    pub fn lipschitz_for(&self, domain: &ConvexSet) -> Result<f64> {
        if let Some(l) = self.declared_lipschitz {
            return Ok(l);
        }
        Ok(self.estimate_lipschitz_on(domain, 2_000, 0)?.value)
    }
}

/// Largest singular value of `m` by power iteration on `m^T m`.
fn power_iteration_norm(m: &Matrix) -> Result<f64> {
    let n = m.ncols();
    let gram = m.tr_mul(m);
    let mut rng = rng::seeded(0x00DD_BA11);
    let mut v = rng::unit_vector(&mut rng, n);
    let mut rho_prev = f64::NAN;
    for _ in 0..POWER_ITER_CAP {
        let w = &gram * &v;
        let rho = v.dot(&w);
        let wn = w.norm();
        if wn == 0.0 {
            return Ok(0.0);
        }
        let residual = (&w - &v * rho).norm();
        if residual <= POWER_ITER_TOL * rho || (rho - rho_prev).abs() <= 4.0 * f64::EPSILON * rho {
            return Ok(rho.max(0.0).sqrt());
        }
        rho_prev = rho;
        v = w / wn;
    }
    Err(Error::NoConvergence {
        what: "power iteration",
        iterations: POWER_ITER_CAP,
        achieved: rho_prev.max(0.0).sqrt(),
    })
}

fn sample_pairs(set: &ConvexSet, samples: usize, seed: u64) -> Result<Vec<(Vector, Vector)>> {
    let mut rng = rng::seeded(seed);
    let pts = set.sample(2 * samples, &mut rng)?;
    let mut it = pts.into_iter();
    let mut out = Vec::with_capacity(samples);
    while let (Some(x), Some(y)) = (it.next(), it.next()) {
        out.push((x, y));
    }
    Ok(out)
}

pub fn evaluate(map: &VectorMap, x: &Vector) -> Result<Vector> {
    map.evaluate(x)
}

pub fn estimate_lipschitz(map: &VectorMap) -> Result<LipschitzEstimate> {
    map.estimate_lipschitz()
}

/// Minimum of `<F(x) - F(y), x - y>` over sampled pairs of `set`.
pub fn probe_monotone(map: &VectorMap, set: &ConvexSet, samples: usize, seed: u64) -> Result<MonotoneReport> {
    check_dim(map.dim(), set.dim())?;
    if samples == 0 {
        return Err(Error::Sampling("at least one sample is required".into()));
    }
    let mut min_value = f64::INFINITY;
    let mut witness = None;
    for (x, y) in sample_pairs(set, samples, seed)? {
        let value = (map.evaluate(&x)? - map.evaluate(&y)?).dot(&(&x - &y));
        if value < min_value {
            min_value = value;
            if value < -MONOTONE_TOL {
                witness = Some((x, y));
            }
        }
    }
    Ok(MonotoneReport {
        samples,
        min_value,
        monotone: witness.is_none(),
        witness,
    })
}

/// Smallest `<F(y), y - x> / ||y - x||^2` over sampled pairs with
/// `<F(x), y - x> >= 0` and `y != x`.
pub fn probe_strong_pseudomonotone(
    map: &VectorMap,
    set: &ConvexSet,
    samples: usize,
    seed: u64,
) -> Result<ModulusProbe> {
    check_dim(map.dim(), set.dim())?;
    let mut best: Option<(f64, Vector, Vector)> = None;
    let mut qualifying = 0;
    for (a, b) in sample_pairs(set, samples, seed)? {
        let fa = map.evaluate(&a)?;
        let fb = map.evaluate(&b)?;
        // both orientations of the pair are admissible
        for (x, fx, y, fy) in [(&a, &fa, &b, &fb), (&b, &fb, &a, &fa)] {
            let d = y - x;
            let d2 = d.norm_squared();
            if d2 <= 1e-24 || fx.dot(&d) < 0.0 {
                continue;
            }
            qualifying += 1;
            let ratio = fy.dot(&d) / d2;
            if best.as_ref().is_none_or(|(r, _, _)| ratio < *r) {
                best = Some((ratio, x.clone(), y.clone()));
            }
        }
    }
    let (modulus, x, y) = best.ok_or_else(|| Error::Sampling("no pair with <F(x), y - x> >= 0 was drawn".into()))?;
    Ok(ModulusProbe {
        samples,
        qualifying_pairs: qualifying,
        modulus,
        witness: (x, y),
    })
}

/// Smallest `<F(x) - F(y), x - y> / ||F(x) - F(y)||^2` over sampled pairs.
/// No theorem here consumes this class; it is reported for completeness.
pub fn probe_inverse_strongly_monotone(
    map: &VectorMap,
    set: &ConvexSet,
    samples: usize,
    seed: u64,
) -> Result<ModulusProbe> {
    check_dim(map.dim(), set.dim())?;
    let mut best: Option<(f64, Vector, Vector)> = None;
    let mut qualifying = 0;
    for (x, y) in sample_pairs(set, samples, seed)? {
        let df = map.evaluate(&x)? - map.evaluate(&y)?;
        let df2 = df.norm_squared();
        if df2 <= 1e-24 {
            continue;
        }
        qualifying += 1;
        let ratio = df.dot(&(&x - &y)) / df2;
        if best.as_ref().is_none_or(|(r, _, _)| ratio < *r) {
            best = Some((ratio, x, y));
        }
    }
    let (modulus, x, y) = best.ok_or_else(|| Error::Sampling("no pair with F(x) != F(y) was drawn".into()))?;
    Ok(ModulusProbe {
        samples,
        qualifying_pairs: qualifying,
        modulus,
        witness: (x, y),
    })
}

/// Sampled check of pseudomonotonicity+.
///
/// Pairs with `<F(y), y - x>` exactly zero have measure zero, so besides the
/// raw pairs the probe draws triples `(x, y1, y2)` and, when
/// `h(y) = <F(y), y - x>` changes sign between `y1` and `y2`, bisects the
/// segment for a root.
pub fn probe_pseudomonotone_plus(
    map: &VectorMap,
    set: &ConvexSet,
    samples: usize,
    seed: u64,
) -> Result<PseudoPlusReport> {
    check_dim(map.dim(), set.dim())?;
    let mut rng = rng::seeded(seed);
    let points = set.sample(3 * samples, &mut rng)?;
    let mut report = PseudoPlusReport {
        samples,
        pseudomonotone_witness: None,
        qualifying_pairs: 0,
        max_discrepancy: 0.0,
        witness: None,
        consistent: true,
    };

    let h = |x: &Vector, y: &Vector| -> Result<f64> { Ok(map.evaluate(y)?.dot(&(y - x))) };
    let consider = |x: &Vector, y: &Vector, report: &mut PseudoPlusReport| -> Result<()> {
        let fx = map.evaluate(x)?;
        let fy = map.evaluate(y)?;
        let d = y - x;
        let lhs = fx.dot(&d);
        let rhs = fy.dot(&d);
        if lhs >= 0.0 && rhs < -MONOTONE_TOL && report.pseudomonotone_witness.is_none() {
            report.pseudomonotone_witness = Some((x.clone(), y.clone()));
        }
        if lhs >= -EQUALITY_TOL && rhs.abs() <= EQUALITY_TOL {
            report.qualifying_pairs += 1;
            let gap = (&fx - &fy).norm();
            if gap > report.max_discrepancy {
                report.max_discrepancy = gap;
                report.witness = Some((x.clone(), y.clone()));
            }
        }
        Ok(())
    };

    for chunk in points.chunks_exact(3) {
        let (x, y1, y2) = (&chunk[0], &chunk[1], &chunk[2]);
        consider(x, y1, &mut report)?;
        let h1 = h(x, y1)?;
        let h2 = h(x, y2)?;
        if h1 * h2 < 0.0 {
            let (mut lo, mut hi) = (y1.clone(), y2.clone());
            let mut h_lo = h1;
            let mut mid = lo.clone();
            for _ in 0..200 {
                mid = (&lo + &hi) * 0.5;
                let h_mid = h(x, &mid)?;
                if h_mid.abs() <= EQUALITY_TOL * 0.1 {
                    break;
                }
                if (h_mid < 0.0) == (h_lo < 0.0) {
                    lo = mid.clone();
                    h_lo = h_mid;
                } else {
                    hi = mid.clone();
                }
            }
            consider(x, &mid, &mut report)?;
        }
    }
    report.consistent = report.pseudomonotone_witness.is_none() && report.max_discrepancy <= DISCREPANCY_TOL;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn affine_evaluation() {
        let f = VectorMap::affine(Matrix::identity(2, 2), v(&[-2.0, -2.0])).unwrap();
        assert_eq!(f.evaluate(&v(&[1.0, 1.0])).unwrap(), v(&[-1.0, -1.0]));
        let c = VectorMap::constant(v(&[1.0, 0.0])).unwrap();
        assert_eq!(c.evaluate(&v(&[7.0, -3.0])).unwrap(), v(&[1.0, 0.0]));
        let rot = VectorMap::affine(Matrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]), v(&[0.0, 0.0])).unwrap();
        assert_eq!(rot.evaluate(&v(&[1.0, 0.0])).unwrap(), v(&[0.0, -1.0]));
        assert!(f.evaluate(&v(&[1.0])).is_err());
    }

    #[test]
    fn spectral_norms() {
        let id = VectorMap::affine(Matrix::identity(3, 3), Vector::zeros(3)).unwrap();
        assert!((id.estimate_lipschitz().unwrap().value - 1.0).abs() < 1e-12);
        let diag = VectorMap::affine(Matrix::from_diagonal(&v(&[3.0, 0.5])), Vector::zeros(2)).unwrap();
        assert!((diag.estimate_lipschitz().unwrap().value - 3.0).abs() < 1e-10);
        let zero = VectorMap::constant(v(&[1.0, 2.0])).unwrap();
        assert_eq!(zero.estimate_lipschitz().unwrap().value, 0.0);
    }

    #[test]
    fn declared_lipschitz_checked() {
        let f = VectorMap::scaled_shift(2.0, v(&[0.0, 0.0])).unwrap();
        assert!(f.clone().with_lipschitz(1.0).is_err());
        assert!(f.with_lipschitz(2.0).is_ok());
    }

    #[test]
    fn black_box_needs_domain() {
        let f = VectorMap::from_catalog("tanh_shift", v(&[0.5, 0.5])).unwrap();
        assert!(f.estimate_lipschitz().is_err());
        let s = ConvexSet::unit_box(2).unwrap();
        let est = f.estimate_lipschitz_on(&s, 500, 3).unwrap();
        assert!(est.lower_bound_only);
        assert!(est.value > 0.5 && est.value <= 1.0 + 1e-12);
        assert!(VectorMap::from_catalog("nope", v(&[0.0])).is_err());
    }

    #[test]
    fn monotone_probe_cases() {
        let s = ConvexSet::unit_box(2).unwrap();
        let shift = VectorMap::scaled_shift(1.0, v(&[2.0, 2.0])).unwrap();
        let r = probe_monotone(&shift, &s, 500, 1).unwrap();
        assert!(r.monotone && r.min_value >= 0.0);
        let neg = VectorMap::affine(-Matrix::identity(2, 2), Vector::zeros(2)).unwrap();
        let r = probe_monotone(&neg, &s, 500, 1).unwrap();
        assert!(!r.monotone && r.witness.is_some());
        let c = VectorMap::constant(v(&[1.0, -1.0])).unwrap();
        assert_eq!(probe_monotone(&c, &s, 100, 1).unwrap().min_value, 0.0);
    }

    #[test]
    fn strong_pseudomonotone_probe() {
        let s = ConvexSet::unit_box(2).unwrap();
        let c = VectorMap::constant(v(&[1.0, 0.0])).unwrap();
        let r = probe_strong_pseudomonotone(&c, &s, 2000, 5).unwrap();
        assert!(r.modulus.abs() < 0.05, "constant map modulus {}", r.modulus);
    }

    #[test]
    fn pseudo_plus_constant_map_is_consistent() {
        let s = ConvexSet::unit_box(2).unwrap();
        let c = VectorMap::constant(v(&[1.0, 1.0])).unwrap();
        let r = probe_pseudomonotone_plus(&c, &s, 2000, 9).unwrap();
        assert_eq!(r.max_discrepancy, 0.0);
        assert!(r.consistent);
    }

    #[test]
    fn file_format_round_trip() {
        let json = r#"{"variant":"affine","params":{"m":[[1,0],[0,1]],"q":[-2,-2]}}"#;
        let f: VectorMap = serde_json::from_str(json).unwrap();
        assert_eq!(f.evaluate(&v(&[0.0, 0.0])).unwrap(), v(&[-2.0, -2.0]));
        let bb: VectorMap =
            serde_json::from_str(r#"{"variant":"black_box","params":{"name":"cubic_shift","c":[1]}}"#).unwrap();
        assert_eq!(bb.evaluate(&v(&[2.0])).unwrap(), v(&[2.0]));
        let text = serde_json::to_string(&bb).unwrap();
        assert!(text.contains("cubic_shift"));
    }
}
