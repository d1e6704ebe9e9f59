use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rng;
use crate::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// `x_{n+1} = P(x_n - γ_n F(x_n))`.
    Gpm,
    /// `x_{n+1} = P(x_n - γ_n F(x_{n+1}))`.
    ExactPpa,
    /// `x_{n+1} = P(x_n - γ_n F(x_{n+1}) + e_n)`.
    InexactPpa,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Gpm => "gpm",
            Method::ExactPpa => "exact_ppa",
            Method::InexactPpa => "inexact_ppa",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Step sizes `γ_n`, indexed from `n = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GammaSchedule {
    Constant {
        gamma: f64,
    },
    /// Explicit values; the last one repeats once the list runs out.
    Sequence {
        values: Vec<f64>,
    },
    /// `clamp(start * ratio^(n-1), min, max)`.
    GeometricClamp {
        start: f64,
        ratio: f64,
        min: f64,
        max: f64,
    },
}

impl GammaSchedule {
    pub fn gamma(&self, n: usize) -> f64 {
        match self {
            GammaSchedule::Constant { gamma } => *gamma,
            GammaSchedule::Sequence { values } => values[(n.max(1) - 1).min(values.len() - 1)],
            GammaSchedule::GeometricClamp { start, ratio, min, max } => {
                (start * ratio.powi(n as i32 - 1)).clamp(*min, *max)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            GammaSchedule::Constant { gamma } => *gamma > 0.0 && gamma.is_finite(),
            GammaSchedule::Sequence { values } => {
                !values.is_empty() && values.iter().all(|g| *g > 0.0 && g.is_finite())
            }
            GammaSchedule::GeometricClamp { start, ratio, min, max } => {
                *start > 0.0 && *ratio > 0.0 && *min > 0.0 && min <= max && max.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "step sizes must be positive and finite: {self:?}"
            )))
        }
    }
}

/// Error terms `e_n` of the inexact proximal point method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErrorSchedule {
    Zero,
    /// `e_n = eps0 * rho^n * u_n` with `u_n` a seeded unit vector.
    Decaying {
        eps0: f64,
        rho: f64,
        seed: u64,
    },
    /// `e_n = e` for every `n`; does not vanish unless `e = 0`.
    Constant {
        e: Vec<f64>,
    },
}

impl ErrorSchedule {
    pub fn decaying(seed: u64) -> Self {
        ErrorSchedule::Decaying {
            eps0: 0.1,
            rho: 0.5,
            seed,
        }
    }

    pub fn error(&self, n: usize, dim: usize) -> Result<Vector> {
        match self {
            ErrorSchedule::Zero => Ok(Vector::zeros(dim)),
            ErrorSchedule::Decaying { eps0, rho, seed } => {
                let mut r = rng::seeded(rng::derive(*seed, n as u64));
                Ok(rng::unit_vector(&mut r, dim) * (eps0 * rho.powi(n as i32)))
            }
            ErrorSchedule::Constant { e } => {
                if e.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: e.len(),
                    });
                }
                Ok(Vector::from_column_slice(e))
            }
        }
    }

    /// Whether `e_n -> 0`.
    pub fn vanishes(&self) -> bool {
        match self {
            ErrorSchedule::Zero | ErrorSchedule::Decaying { .. } => true,
            ErrorSchedule::Constant { e } => e.iter().all(|v| *v == 0.0),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            ErrorSchedule::Decaying { eps0, rho, .. } if !(*eps0 >= 0.0 && *rho > 0.0 && *rho < 1.0) => {
                Err(Error::InvalidConfig(format!(
                    "decaying errors need eps0 >= 0 and rho in (0,1), got {eps0}, {rho}"
                )))
            }
            ErrorSchedule::Constant { e } if e.iter().any(|v| !v.is_finite()) => {
                Err(Error::InvalidConfig("error vector must be finite".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub method: Method,
    pub gamma: GammaSchedule,
    /// Upper step bound for gradient projection. When set together with
    /// `mu` and `lipschitz`, every step must satisfy
    /// `L^2/(2μ) <= γ_n <= σ < 1`.
    pub sigma: Option<f64>,
    /// Lower step bound for the exact proximal point method, `γ_n >= a`.
    pub a: Option<f64>,
    pub errors: ErrorSchedule,
    /// Strong pseudomonotonicity modulus used by the per-step checks.
    pub mu: Option<f64>,
    pub lipschitz: Option<f64>,
    pub max_iter: usize,
    pub tol_membership: f64,
    pub inner_tol: f64,
    pub inner_cap: usize,
}

pub const DEFAULT_MAX_ITER: usize = 1_000;
pub const DEFAULT_TOL_MEMBERSHIP: f64 = 1e-8;
pub const DEFAULT_INNER_TOL: f64 = 1e-12;
pub const DEFAULT_INNER_CAP: usize = 1_000_000;

impl SolverConfig {
    fn base(method: Method, gamma: GammaSchedule) -> Self {
        SolverConfig {
            method,
            gamma,
            sigma: None,
            a: None,
            errors: ErrorSchedule::Zero,
            mu: None,
            lipschitz: None,
            max_iter: DEFAULT_MAX_ITER,
            tol_membership: DEFAULT_TOL_MEMBERSHIP,
            inner_tol: DEFAULT_INNER_TOL,
            inner_cap: DEFAULT_INNER_CAP,
        }
    }

    pub fn gpm(gamma: f64) -> Self {
        Self::base(Method::Gpm, GammaSchedule::Constant { gamma })
    }

    pub fn exact_ppa(gamma: f64) -> Self {
        Self::base(Method::ExactPpa, GammaSchedule::Constant { gamma })
    }

    pub fn inexact_ppa(gamma: f64, errors: ErrorSchedule) -> Self {
        Self {
            errors,
            ..Self::base(Method::InexactPpa, GammaSchedule::Constant { gamma })
        }
    }

    pub fn with_schedule(mut self, gamma: GammaSchedule) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = Some(sigma);
        self
    }

    pub fn with_floor(mut self, a: f64) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_constants(mut self, mu: f64, lipschitz: f64) -> Self {
        self.mu = Some(mu);
        self.lipschitz = Some(lipschitz);
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol_membership = tol;
        self
    }

    /// `L^2/(2μ)` when both constants are declared.
    pub fn step_floor(&self) -> Option<f64> {
        Some(self.lipschitz?.powi(2) / (2.0 * self.mu?))
    }

    /// Gradient projection with `σ`, `μ` and `L` all declared; such runs
    /// enforce the step window and feed the iteration bound.
    pub fn checks_step_window(&self) -> bool {
        self.method == Method::Gpm && self.sigma.is_some() && self.mu.is_some() && self.lipschitz.is_some()
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")))
            }
        };
        positive("tol_membership", self.tol_membership)?;
        positive("inner_tol", self.inner_tol)?;
        if self.max_iter == 0 || self.inner_cap == 0 {
            return Err(Error::InvalidConfig("iteration caps must be at least 1".into()));
        }
        self.gamma.validate()?;
        self.errors.validate()?;
        if let Some(sigma) = self.sigma {
            if !(sigma > 0.0 && sigma < 1.0) {
                return Err(Error::InvalidConfig(format!("sigma must lie in (0,1), got {sigma}")));
            }
        }
        if let Some(a) = self.a {
            positive("a", a)?;
        }
        if let Some(mu) = self.mu {
            positive("mu", mu)?;
        }
        if let Some(l) = self.lipschitz {
            positive("lipschitz", l)?;
        }
        if self.method != Method::InexactPpa && self.errors != ErrorSchedule::Zero {
            return Err(Error::InvalidConfig(format!("{} takes no error terms", self.method)));
        }
        if self.checks_step_window() {
            let floor = self.step_floor().unwrap_or_default();
            let sigma = self.sigma.unwrap_or_default();
            if floor > sigma {
                return Err(Error::Hypothesis(format!(
                    "step window empty: L^2/(2mu) = {floor} exceeds sigma = {sigma}"
                )));
            }
        }
        Ok(())
    }

    /// Step size for iteration `n`, rejected when it leaves the declared
    /// window (`[L^2/(2μ), σ]` for checked gradient projection, `[a, ∞)` for
    /// the proximal methods).
    pub fn checked_gamma(&self, n: usize) -> Result<f64> {
        let gamma = self.gamma.gamma(n);
        if self.checks_step_window() {
            let floor = self.step_floor().unwrap_or_default();
            let sigma = self.sigma.unwrap_or_default();
            if gamma < floor || gamma > sigma {
                return Err(Error::Hypothesis(format!(
                    "gamma_{n} = {gamma} outside [{floor}, {sigma}]"
                )));
            }
        }
        if let (Some(a), Method::ExactPpa | Method::InexactPpa) = (self.a, self.method) {
            if gamma < a {
                return Err(Error::Hypothesis(format!("gamma_{n} = {gamma} below floor a = {a}")));
            }
        }
        Ok(gamma)
    }

    /// Short SHA-256 digest of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        hex::encode(&Sha256::digest(&json)[..8])
    }
}
