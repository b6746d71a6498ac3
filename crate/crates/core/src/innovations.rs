//! Innovation laws of the geometric INAR(1) chain and of the STINAR(1) process.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::process::StinarParams;
use crate::sdl::{geom_pmf, geom_sample, SdlParams};

/// Relative slack accepted on the admissibility bound so that the bound itself,
/// recomputed in floating point, is admitted.
pub(crate) const BOUND_SLACK: f64 = 1e-12;

/// Innovation of a geometric INAR(1) chain with marginal mean `mu`.
///
/// A mixture of geometric laws with means `mu` and `alpha`, the latter with
/// weight `w = alpha mu / (mu - alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NginarInnovation {
    mu: f64,
    alpha: f64,
    weight: f64,
}

impl NginarInnovation {
    pub fn new(mu: f64, alpha: f64) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::ParameterDomain(format!("marginal mean must be positive, got {mu}")));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::ParameterDomain(format!("alpha must be non-negative, got {alpha}")));
        }
        let bound = mu / (1.0 + mu);
        if alpha > bound * (1.0 + BOUND_SLACK) {
            return Err(Error::Inadmissible { alpha, bound });
        }
        let weight = (alpha * mu / (mu - alpha)).clamp(0.0, 1.0);
        Ok(Self { mu, alpha, weight })
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn pmf(&self, l: u64) -> f64 {
        (1.0 - self.weight) * geom_pmf(l, self.mu) + self.weight * geom_pmf(l, self.alpha)
    }

    pub fn mean(&self) -> f64 {
        (1.0 - self.alpha) * self.mu
    }

    pub fn cf(&self, s: f64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let d = one - Complex64::from_polar(1.0, s);
        (1.0 - self.weight) / (one + self.mu * d) + self.weight / (one + self.alpha * d)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        if self.weight > 0.0 && rng.random::<f64>() < self.weight {
            geom_sample(self.alpha, rng)
        } else {
            geom_sample(self.mu, rng)
        }
    }
}

/// Innovation `eps - nu` of the STINAR(1) process: a four-component mixture of
/// skew discrete Laplace laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StinarInnovation {
    params: StinarParams,
    pos: NginarInnovation,
    neg: NginarInnovation,
}

impl StinarInnovation {
    pub fn new(params: StinarParams) -> Self {
        let pos = NginarInnovation::new(params.mu1(), params.alpha()).expect("admissible params");
        let neg = NginarInnovation::new(params.mu2(), params.alpha()).expect("admissible params");
        Self { params, pos, neg }
    }

    pub fn params(&self) -> StinarParams {
        self.params
    }

    /// Mixture weights `(b1, b2, b3, b4)` for the components
    /// `(mu1, mu2)`, `(mu1, alpha)`, `(alpha, mu2)`, `(alpha, alpha)`.
    pub fn weights(&self) -> [f64; 4] {
        let (w1, w2) = (self.pos.weight, self.neg.weight);
        let b1 = (1.0 - w1) * (1.0 - w2);
        let b2 = (1.0 - w1) * w2;
        let b3 = w1 * (1.0 - w2);
        [b1, b2, b3, 1.0 - b1 - b2 - b3]
    }

    fn components(&self) -> [SdlParams; 4] {
        let StinarParams { alpha, mu1, mu2, .. } = self.params;
        let sdl = |a: f64, b: f64| SdlParams::non_negative(a, b).expect("non-negative");
        [sdl(mu1, mu2), sdl(mu1, alpha), sdl(alpha, mu2), sdl(alpha, alpha)]
    }

    pub fn pmf(&self, k: i64) -> f64 {
        self.weights().iter().zip(self.components()).map(|(b, c)| b * c.pmf(k)).sum()
    }

    /// Closed-form characteristic function.
    pub fn cf(&self, s: f64) -> Complex64 {
        let StinarParams { alpha, mu1, mu2, .. } = self.params;
        let one = Complex64::new(1.0, 0.0);
        let e = Complex64::from_polar(1.0, s);
        let (d, dc) = (one - e, one - e.conj());
        let num = (one + alpha * (1.0 + mu1) * d) * (one + alpha * (1.0 + mu2) * dc);
        let den = (one + mu1 * d) * (one + alpha * d) * (one + mu2 * dc) * (one + alpha * dc);
        num / den
    }

    /// `(mean, variance)` of the innovation.
    pub fn cumulants(&self) -> (f64, f64) {
        let StinarParams { alpha, mu1, mu2, .. } = self.params;
        let mean = (1.0 - alpha) * (mu1 - mu2);
        let var =
            (1.0 + alpha) * (mu1 * ((1.0 - alpha) * (1.0 + mu1) - alpha) + mu2 * ((1.0 - alpha) * (1.0 + mu2) - alpha));
        (mean, var)
    }

    /// Draws `eps - nu` from the two latent geometric-chain innovations.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        self.pos.sample(rng) as i64 - self.neg.sample(rng) as i64
    }

    pub(crate) fn latent(&self) -> (&NginarInnovation, &NginarInnovation) {
        (&self.pos, &self.neg)
    }
}
