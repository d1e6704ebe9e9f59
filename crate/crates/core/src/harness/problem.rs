use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::ConvexSet;
use crate::operators::VectorMap;
use crate::rng;
use crate::sharpness::{self, Modulus};
use crate::{Matrix, Vector};

/// Residual a sampled solution point may carry.
pub const SOLUTION_RESIDUAL_TOL: f64 = 1e-8;
/// Agreement required between a declared modulus and the cone estimate.
pub const ALPHA_CONFIRM_TOL: f64 = 1e-3;
const VERIFY_SAMPLES: usize = 50;
const CONE_SAMPLES: usize = 20_000;
const CONE_SEED: u64 = 0x00A1_FA5E;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    BoxCorner,
    LpAsVi,
    StrongPseudo,
    Custom,
}

/// A VI with an analytically known solution set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ProblemFile", try_from = "ProblemFile")]
pub struct ProblemInstance {
    pub name: String,
    pub set: ConvexSet,
    pub map: VectorMap,
    pub solutions: ConvexSet,
    pub alpha: Option<Modulus>,
    pub mu: Option<f64>,
    pub lipschitz: Option<f64>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    #[serde(default)]
    pub mu: Option<f64>,
    #[serde(default, rename = "L")]
    pub lipschitz: Option<f64>,
    #[serde(default)]
    pub alpha: Option<Modulus>,
}

/// On-disk layout of a problem.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub name: String,
    pub set: ConvexSet,
    pub map: VectorMap,
    pub solution_set: ConvexSet,
    #[serde(default)]
    pub constants: Constants,
    #[serde(default = "custom")]
    pub provenance: Provenance,
}

fn custom() -> Provenance {
    Provenance::Custom
}

impl From<ProblemInstance> for ProblemFile {
    fn from(p: ProblemInstance) -> Self {
        ProblemFile {
            name: p.name,
            set: p.set,
            map: p.map,
            solution_set: p.solutions,
            constants: Constants {
                mu: p.mu,
                lipschitz: p.lipschitz,
                alpha: p.alpha,
            },
            provenance: p.provenance,
        }
    }
}

impl TryFrom<ProblemFile> for ProblemInstance {
    type Error = Error;

    fn try_from(f: ProblemFile) -> Result<Self> {
        check_dim(f.set.dim(), f.map.dim())?;
        check_dim(f.set.dim(), f.solution_set.dim())?;
        let mut map = f.map;
        if let Some(mu) = f.constants.mu {
            map = map.with_mu(mu)?;
        }
        if let Some(l) = f.constants.lipschitz {
            map = map.with_lipschitz(l)?;
        }
        Ok(ProblemInstance {
            name: f.name,
            set: f.set,
            map,
            solutions: f.solution_set,
            alpha: f.constants.alpha,
            mu: f.constants.mu,
            lipschitz: f.constants.lipschitz,
            provenance: f.provenance,
        })
    }
}

impl ProblemInstance {
    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// The unique solution when the solution set is a single point.
    pub fn unique_solution(&self) -> Option<Vector> {
        match self.solutions.vertices() {
            Some(v) if v.len() == 1 => v.into_iter().next(),
            _ => None,
        }
    }

    /// Check the solution set: sampled points (and vertices) must have
    /// residual at most [`SOLUTION_RESIDUAL_TOL`], and a declared modulus
    /// must agree with [`sharpness::modulus_cone`] within
    /// [`ALPHA_CONFIRM_TOL`].
    pub fn verify(&self) -> Result<()> {
        let mut r = rng::seeded(CONE_SEED);
        let mut points = self.solutions.vertices().unwrap_or_default();
        points.extend(self.solutions.sample(VERIFY_SAMPLES, &mut r)?);
        for p in &points {
            let res = sharpness::residual(&self.set, &self.map, p)?;
            if res > SOLUTION_RESIDUAL_TOL {
                return Err(Error::Hypothesis(format!(
                    "{}: solution point {:?} has residual {res:.3e}",
                    self.name,
                    p.as_slice()
                )));
            }
        }
        if let Some(declared) = self.alpha {
            let cert = sharpness::modulus_cone(&self.set, &self.solutions, &self.map, CONE_SAMPLES, CONE_SEED)?;
            let agree = match (declared, cert.alpha) {
                (Modulus::Finite(a), Modulus::Finite(b)) => (a - b).abs() <= ALPHA_CONFIRM_TOL,
                (Modulus::Vacuous, Modulus::Vacuous) => true,
                _ => false,
            };
            if !agree {
                return Err(Error::Hypothesis(format!(
                    "{}: declared modulus {declared:?} but the cone estimate is {:?}",
                    self.name, cert.alpha
                )));
            }
        }
        Ok(())
    }
}

fn corner_shift(n: usize, mu: f64) -> Result<VectorMap> {
    VectorMap::scaled_shift(mu, Vector::from_element(n, 2.0))?
        .with_mu(mu)?
        .with_lipschitz(mu)
}

/// `X = [0,1]^n`, `F(x) = x - (2,…,2)`, `X* = {(1,…,1)}`, `μ = L = α = 1`.
pub fn box_corner(n: usize) -> Result<ProblemInstance> {
    if n == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    Ok(ProblemInstance {
        name: format!("box_corner_{n}"),
        set: ConvexSet::unit_box(n)?,
        map: corner_shift(n, 1.0)?,
        solutions: ConvexSet::point(Vector::from_element(n, 1.0))?,
        alpha: Some(Modulus::Finite(1.0)),
        mu: Some(1.0),
        lipschitz: Some(1.0),
        provenance: Provenance::BoxCorner,
    })
}

/// `X = [0,1]^n`, `F(x) = μ(x - (2,…,2))` with `0 < μ < 2`, so that the
/// step window `L^2/(2μ) = μ/2 <= σ < 1` is non-empty. `X* = {(1,…,1)}`,
/// `L = α = μ`.
pub fn strong_pseudo(n: usize, mu: f64) -> Result<ProblemInstance> {
    if n == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    if !(mu > 0.0 && mu < 2.0) {
        return Err(Error::InvalidConfig(format!(
            "mu must lie in (0,2) for a non-empty step window, got {mu}"
        )));
    }
    Ok(ProblemInstance {
        name: format!("strong_pseudo_{n}_mu{mu}"),
        set: ConvexSet::unit_box(n)?,
        map: corner_shift(n, mu)?,
        solutions: ConvexSet::point(Vector::from_element(n, 1.0))?,
        alpha: Some(Modulus::Finite(mu)),
        mu: Some(mu),
        lipschitz: Some(mu),
        provenance: Provenance::StrongPseudo,
    })
}

/// Linear program `min <c, x>` over a bounded polytope, posed as the VI with
/// constant `F = c`. The solution set is the optimal face, a single point
/// when the optimal vertex is unique and otherwise the polytope cut by
/// `<c, x> <= min`. The modulus comes from [`sharpness::modulus_cone`].
pub fn lp_as_vi(name: &str, set: ConvexSet, c: Vector) -> Result<ProblemInstance> {
    check_dim(set.dim(), c.len())?;
    if c.iter().all(|v| *v == 0.0) {
        return Err(Error::InvalidMap("c = 0 makes every point a solution".into()));
    }
    if !set.is_bounded()? {
        return Err(Error::UnboundedSet);
    }
    let vertices = set
        .vertices()
        .ok_or_else(|| Error::InvalidSet("vertex enumeration unavailable for this polytope".into()))?;
    let values: Vec<f64> = vertices.iter().map(|v| c.dot(v)).collect();
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let tie = 1e-12 * (1.0 + best.abs());
    let optimal: Vec<&Vector> = vertices
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v <= best + tie)
        .map(|(p, _)| p)
        .collect();

    let solutions = if optimal.len() == 1 {
        ConvexSet::point(optimal[0].clone())?
    } else {
        let (a, b) = set
            .halfspaces()
            .ok_or_else(|| Error::InvalidSet("polytope needs an inequality description".into()))?;
        let n = set.dim();
        let mut a2 = Matrix::zeros(a.nrows() + 1, n);
        a2.rows_mut(0, a.nrows()).copy_from(&a);
        a2.row_mut(a.nrows()).copy_from(&c.transpose());
        let mut b2 = Vector::zeros(b.len() + 1);
        b2.rows_mut(0, b.len()).copy_from(&b);
        b2[b.len()] = best;
        ConvexSet::polyhedron(a2, b2)?
    };
    let map = VectorMap::constant(c)?;
    let cert = sharpness::modulus_cone(&set, &solutions, &map, CONE_SAMPLES, CONE_SEED)?;
    Ok(ProblemInstance {
        name: name.to_string(),
        set,
        map,
        solutions,
        alpha: Some(cert.alpha),
        mu: None,
        lipschitz: None,
        provenance: Provenance::LpAsVi,
    })
}

/// `min x_1` over `[0,1]^2`: `X* = {0} x [0,1]`, `α = 1`.
pub fn lp_unit_square() -> Result<ProblemInstance> {
    lp_as_vi(
        "lp_square",
        ConvexSet::unit_box(2)?,
        Vector::from_column_slice(&[1.0, 0.0]),
    )
}

/// `min x_2 + x_3` over the standard simplex in R^3: `X* = {e_1}`,
/// `α = 1/√2`.
pub fn lp_simplex() -> Result<ProblemInstance> {
    lp_as_vi(
        "lp_simplex",
        ConvexSet::simplex(3)?,
        Vector::from_column_slice(&[0.0, 1.0, 1.0]),
    )
}

/// `X = [0,1]^n`, `F(x) = x - (½,…,½)`: the solution is interior, the
/// sharpness cone is all of R^n and `F(x*) = 0`, so the modulus is 0 and no
/// finite termination is expected.
pub fn interior(n: usize) -> Result<ProblemInstance> {
    if n == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    Ok(ProblemInstance {
        name: format!("interior_{n}"),
        set: ConvexSet::unit_box(n)?,
        map: VectorMap::scaled_shift(1.0, Vector::from_element(n, 0.5))?
            .with_mu(1.0)?
            .with_lipschitz(1.0)?,
        solutions: ConvexSet::point(Vector::from_element(n, 0.5))?,
        alpha: Some(Modulus::Finite(0.0)),
        mu: Some(1.0),
        lipschitz: Some(1.0),
        provenance: Provenance::Custom,
    })
}
