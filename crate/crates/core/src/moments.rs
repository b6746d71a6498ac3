//! Joint moments `mu(s_1, ..., s_{r-1}) = E(Z_t Z_{t+s_1} ... Z_{t+s_{r-1}})`
//! up to third order, and the jump process `J_t = Z_t - Z_{t-1}`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::process::{self, StinarParams};

/// Which closed form to use for the third-order joint moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentForm {
    /// Built from the cumulants of the two latent geometric chains.
    /// Agrees with simulation for every lag pattern.
    #[default]
    Cumulant,
    /// The historical printed expressions, kept verbatim for comparison.
    /// `mu(s, s)` and `mu(s, u)` in this form disagree with simulation
    /// whenever `mu1 != mu2`, and `mu(s, u)` is nonzero even when `mu1 = mu2`.
    AsPrinted,
}

/// Supported lag patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LagPattern {
    /// `mu(s) = E(Z_t Z_{t+s})`
    Pair(u32),
    /// `mu(0, s) = E(Z_t^2 Z_{t+s})`
    ZeroS(u32),
    /// `mu(s, s) = E(Z_t Z_{t+s}^2)`, `s >= 1`
    Double(u32),
    /// `mu(s, u) = E(Z_t Z_{t+s} Z_{t+u})`, `1 <= s < u`
    Distinct(u32, u32),
}

impl LagPattern {
    /// Classifies a sorted lag tuple.
    pub fn from_lags(lags: &[u32]) -> Result<Self> {
        match *lags {
            [s] => Ok(Self::Pair(s)),
            [0, s] => Ok(Self::ZeroS(s)),
            [s, u] if s == u => Ok(Self::Double(s)),
            [s, u] if s < u => Ok(Self::Distinct(s, u)),
            _ => Err(Error::UnsupportedLags(format!("{lags:?}: expected [s], [0, s], [s, s] or [s, u] with s < u"))),
        }
    }
}

/// Joint moment for a sorted lag tuple using the default [`MomentForm`].
pub fn joint_moment(p: &StinarParams, lags: &[u32]) -> Result<f64> {
    joint_moment_with(p, lags, MomentForm::default())
}

pub fn joint_moment_with(p: &StinarParams, lags: &[u32], form: MomentForm) -> Result<f64> {
    let pattern = LagPattern::from_lags(lags)?;
    Ok(match form {
        MomentForm::Cumulant => cumulant_form(p, pattern),
        MomentForm::AsPrinted => printed_form(p, pattern),
    })
}

/// Third cumulant of a geometric law with mean `m`.
fn geom_k3(m: f64) -> f64 {
    m * (1.0 + m) * (1.0 + 2.0 * m)
}

/// `E[(X_0 - m)(X_s - m)^2]` for a geometric INAR(1) chain with mean `m`.
fn chain_k3_ss(alpha: f64, m: f64, s: u32) -> f64 {
    let a_s = alpha.powi(s as i32);
    (1.0 + alpha) * a_s * (1.0 - a_s) / (1.0 - alpha) * m * (1.0 + m) + a_s * a_s * geom_k3(m)
}

fn cumulant_form(p: &StinarParams, pattern: LagPattern) -> f64 {
    let StinarParams { alpha, mu1, mu2 } = *p;
    let mu = mu1 - mu2;
    let var = p.variance();
    let pw = |k: u32| alpha.powi(k as i32);
    match pattern {
        LagPattern::Pair(s) => pw(s) * var + mu * mu,
        LagPattern::ZeroS(s) => pw(s) * (geom_k3(mu1) - geom_k3(mu2)) + mu * var * (1.0 + 2.0 * pw(s)) + mu.powi(3),
        LagPattern::Double(s) => {
            let k3 = chain_k3_ss(alpha, mu1, s) - chain_k3_ss(alpha, mu2, s);
            k3 + mu * var * (1.0 + 2.0 * pw(s)) + mu.powi(3)
        }
        LagPattern::Distinct(s, u) => {
            let k3 = pw(u - s) * (chain_k3_ss(alpha, mu1, s) - chain_k3_ss(alpha, mu2, s));
            k3 + mu * var * (pw(s) + pw(u) + pw(u - s)) + mu.powi(3)
        }
    }
}

fn printed_form(p: &StinarParams, pattern: LagPattern) -> f64 {
    let StinarParams { alpha: a, mu1: m1, mu2: m2 } = *p;
    let pw = |k: u32| a.powi(k as i32);
    let base =
        |s: u32| 2.0 * (2.0 + pw(s)) * m1 * m2 * (m2 - m1) + m1 * m1 * (1.0 + 2.0 * m1) - m2 * m2 * (1.0 + 2.0 * m2);
    match pattern {
        LagPattern::Pair(s) => pw(s) * p.variance() + (m1 - m2).powi(2),
        LagPattern::ZeroS(s) => {
            base(s) + pw(s) * (m1 * (1.0 + 5.0 * m1 + 4.0 * m1 * m1) - m2 * (1.0 + 5.0 * m2 + 4.0 * m2 * m2))
        }
        LagPattern::Double(s) => {
            base(s)
                + 2.0 * pw(s + 1) / (1.0 - a) * (m2 * (1.0 + m2).powi(2) - m1 * (1.0 + m1).powi(2))
                + 2.0 * pw(2 * s) / (1.0 - a) * (m1 * m1 * (1.0 + m1) - m2 * m2 * (1.0 + m2))
                + pw(s + 1) / (1.0 - a) * (m1 * (1.0 + m1) * (1.0 - 2.0 * m1) - m2 * (1.0 + m2) * (1.0 - 2.0 * m2))
                + pw(s) / (1.0 - a) * (m1 * (1.0 + m1) * (1.0 + 2.0 * m1) - m2 * (1.0 + m2) * (1.0 + 2.0 * m2))
        }
        LagPattern::Distinct(s, u) => {
            let d = u - s;
            let sum = pw(s) + pw(u) + pw(d);
            let lead = -m2 * (3.0 * m1 * m1 + m1 * (1.0 + m1) * sum) + m1 * (3.0 * m2 * m2 + m2 * (1.0 + m2) * sum);
            // the printed expression has no operator between the first two lines; read as '+'
            let braced = 2.0 * pw(2 * s + 1) * (m2 * (1.0 + m2).powi(2) - m1 * (1.0 + m1).powi(2))
                + 2.0 * pw(2 * s) * (m1 * m1 * (1.0 + m1).powi(2) - m2 * m2 * (1.0 + m2))
                + pw(s + 1) * (m1 * m1 * (1.0 + m1) * (1.0 - 2.0 * m1) - m2 * (1.0 + m2) * (1.0 - 2.0 * m2))
                + pw(s) * (m1 * m1 * (1.0 + m1) * (1.0 + 2.0 * m1) - m2 * (1.0 + m2) * (1.0 + 2.0 * m2));
            lead + pw(d) / (1.0 - a) * braced
                + pw(d) * (m1 * m1 * (1.0 + 2.0 * m1) - m2 * m2 * (1.0 + 2.0 * m2))
                + (1.0 - pw(d)) * (pw(s) * (m1 * m1 * (1.0 + m1) - m2 * m2 * (1.0 + m2)) + m1.powi(3) - m2.powi(3))
        }
    }
}

/// First three moments and autocorrelations of the jump process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpSummary {
    pub mean: f64,
    pub second_moment: f64,
    pub third_moment: f64,
    pub sigma_j: f64,
    /// `rho_J(k)` for `k = 1..=JUMP_ACF_LAGS`.
    pub acf: BTreeMap<u32, f64>,
}

/// Number of lags tabulated in [`JumpSummary::acf`].
pub const JUMP_ACF_LAGS: u32 = 10;

/// `(E J^2, E J^3)` evaluated at arbitrary `(alpha, mu1, mu2)` with `alpha != 1`.
///
/// Used for plug-in estimates, where the fitted values need not be admissible.
pub fn jump_moments_raw(alpha: f64, mu1: f64, mu2: f64) -> (f64, f64) {
    let a = alpha;
    let g = |m: f64| m * (1.0 + m);
    let second = 2.0 * (1.0 - a) * (g(mu1) + g(mu2));
    let third = 3.0 * a * (mu1 * (1.0 + 5.0 * mu1 + 4.0 * mu1 * mu1) - mu2 * (1.0 + 5.0 * mu2 + 4.0 * mu2 * mu2))
        - 6.0 * a.powi(3) / (1.0 - a) * (mu2 * (1.0 + mu2).powi(2) - mu1 * (1.0 + mu1).powi(2))
        - 3.0 * a * a / (1.0 - a) * (g(mu1) - g(mu2))
        - 3.0 * a / (1.0 - a) * (geom_k3(mu1) - geom_k3(mu2));
    (second, third)
}

pub fn jump_moments(p: &StinarParams) -> JumpSummary {
    let (second, third) = jump_moments_raw(p.alpha, p.mu1, p.mu2);
    let acf = (1..=JUMP_ACF_LAGS).map(|k| (k, jump_rho(p.alpha, k))).collect();
    JumpSummary { mean: 0.0, second_moment: second, third_moment: third, sigma_j: second.sqrt(), acf }
}

fn jump_rho(alpha: f64, k: u32) -> f64 {
    -alpha.powi(k as i32 - 1) * (1.0 - alpha) / 2.0
}

/// Jump autocorrelation `rho_J(k) = -alpha^{k-1} (1 - alpha) / 2` for `k >= 1`.
///
/// The autocovariance is `-sigma^2 alpha^{k-1} (1 - alpha)^2`; dividing by
/// `Var(J) = 2 sigma^2 (1 - alpha)` gives the correlation. The unnormalized
/// ratio `-alpha^{k-1} (1 - alpha)^2` coincides with it only at `alpha = 1/2`.
pub fn jump_acf(p: &StinarParams, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::ParameterDomain("jump autocorrelation lag must be at least 1".into()));
    }
    Ok(jump_rho(p.alpha, k))
}

/// Characteristic function of `J_t`: the joint cf at `u = -s`.
pub fn jump_cf(s: f64, p: &StinarParams) -> Complex64 {
    process::joint_cf(s, -s, p)
}
