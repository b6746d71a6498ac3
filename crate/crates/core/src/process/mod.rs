//! Thinning operators, exact simulation, and process-level closed forms.

mod analytic;
mod simulate;

pub use analytic::{acf, autocovariance, cond_cf, cond_mean, cond_var, joint_cf, spectral_density};
pub use simulate::{
    binomial_thin, nb_thin, simulate_alternating, simulate_nginar, simulate_stinar, simulate_stinar_latent,
    simulate_tinar, LatentPaths,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::innovations::{StinarInnovation, BOUND_SLACK};
use crate::sdl::SdlParams;

/// Parameters `(alpha, mu1, mu2)` of a STINAR(1) process.
///
/// Admissible when `0 <= alpha <= min(mu1 / (1 + mu1), mu2 / (1 + mu2))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStinarParams", into = "RawStinarParams")]
pub struct StinarParams {
    pub(crate) alpha: f64,
    pub(crate) mu1: f64,
    pub(crate) mu2: f64,
}

#[derive(Serialize, Deserialize)]
struct RawStinarParams {
    alpha: f64,
    mu1: f64,
    mu2: f64,
}

impl TryFrom<RawStinarParams> for StinarParams {
    type Error = Error;

    fn try_from(r: RawStinarParams) -> Result<Self> {
        Self::new(r.alpha, r.mu1, r.mu2)
    }
}

impl From<StinarParams> for RawStinarParams {
    fn from(p: StinarParams) -> Self {
        Self { alpha: p.alpha, mu1: p.mu1, mu2: p.mu2 }
    }
}

/// Largest admissible thinning parameter for the given side means.
pub fn alpha_bound(mu1: f64, mu2: f64) -> f64 {
    (mu1 / (1.0 + mu1)).min(mu2 / (1.0 + mu2))
}

impl StinarParams {
    pub fn new(alpha: f64, mu1: f64, mu2: f64) -> Result<Self> {
        SdlParams::new(mu1, mu2)?;
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::ParameterDomain(format!("alpha must be non-negative, got {alpha}")));
        }
        let bound = alpha_bound(mu1, mu2);
        if alpha > bound * (1.0 + BOUND_SLACK) {
            return Err(Error::Inadmissible { alpha, bound });
        }
        Ok(Self { alpha, mu1, mu2 })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    pub fn bound(&self) -> f64 {
        alpha_bound(self.mu1, self.mu2)
    }

    /// Stationary marginal law.
    pub fn sdl(&self) -> SdlParams {
        SdlParams::new(self.mu1, self.mu2).expect("validated at construction")
    }

    pub fn mean(&self) -> f64 {
        self.mu1 - self.mu2
    }

    pub fn variance(&self) -> f64 {
        self.sdl().variance()
    }

    pub fn innovation(&self) -> StinarInnovation {
        StinarInnovation::new(*self)
    }
}

/// Parameters of the asymmetric TINAR(1) process: binomial thinning `beta`
/// and Poisson innovation means `lambda1`, `lambda2` of the two latent chains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TinarParams {
    beta: f64,
    lambda1: f64,
    lambda2: f64,
}

impl TinarParams {
    pub fn new(beta: f64, lambda1: f64, lambda2: f64) -> Result<Self> {
        if !(beta.is_finite() && (0.0..1.0).contains(&beta)) {
            return Err(Error::ParameterDomain(format!("beta must lie in [0, 1), got {beta}")));
        }
        if !(lambda1.is_finite() && lambda1 > 0.0 && lambda2.is_finite() && lambda2 > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "innovation means must be positive, got ({lambda1}, {lambda2})"
            )));
        }
        Ok(Self { beta, lambda1, lambda2 })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn mean(&self) -> f64 {
        (self.lambda1 - self.lambda2) / (1.0 - self.beta)
    }

    pub fn variance(&self) -> f64 {
        (self.lambda1 + self.lambda2) / (1.0 - self.beta)
    }
}
