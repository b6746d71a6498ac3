//! Conditional least squares for the thinning parameter, method of moments
//! for the side means, and plug-in asymptotic inference.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::process::{alpha_bound, StinarParams};
use crate::sdl::SdlParams;
use crate::series::IntSeries;

/// Which conditional least squares ratio to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClsForm {
    /// Intercept estimated jointly (`mu1 != mu2`).
    #[default]
    NonSymmetric,
    /// Zero-mean model (`mu1 = mu2`), ratio through the origin.
    Symmetric,
}

/// Non-fatal conditions raised during fitting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FitWarning {
    /// The CLS estimate lies outside `[0, bound]`; it is reported raw.
    AlphaOutsideRegion { alpha: f64, bound: f64 },
    /// Variance formulas were evaluated at a clamped alpha.
    AlphaClampedForVariance { from: f64, to: f64 },
    /// A method-of-moments side mean is not strictly positive.
    NonPositiveMu { mu1: f64, mu2: f64 },
    /// Every observation is zero; moment estimates are zero.
    AllZeroSeries,
    /// Asymptotic inference could not be evaluated at the estimates.
    InferenceUnavailable { reason: String },
    /// Sample variance below |sample mean|: a TINAR innovation mean is negative.
    NegativeLambda { lambda1: f64, lambda2: f64 },
}

/// Conditional least squares estimate of the thinning parameter.
pub fn cls_alpha(z: &IntSeries, form: ClsForm) -> Result<f64> {
    let v = z.values();
    if v.len() < 2 {
        return Err(Error::DegenerateSeries("CLS needs at least two observations".into()));
    }
    let (mut sxy, mut sx, mut sy, mut sxx) = (0.0, 0.0, 0.0, 0.0);
    for w in v.windows(2) {
        let (prev, cur) = (w[0] as f64, w[1] as f64);
        sxy += cur * prev;
        sx += prev;
        sy += cur;
        sxx += prev * prev;
    }
    let m = (v.len() - 1) as f64;
    let (num, den) = match form {
        ClsForm::Symmetric => (sxy, sxx),
        ClsForm::NonSymmetric => (m * sxy - sy * sx, m * sxx - sx * sx),
    };
    if den == 0.0 {
        return Err(Error::DegenerateSeries("lagged observations have no variation; CLS ratio undefined".into()));
    }
    Ok(num / den)
}

/// Warning when `alpha` falls outside `[0, alpha_bound(mu1, mu2)]`.
pub fn alpha_region_warning(alpha: f64, mu1: f64, mu2: f64) -> Option<FitWarning> {
    let bound = alpha_bound(mu1.max(0.0), mu2.max(0.0));
    (!(0.0..=bound).contains(&alpha)).then_some(FitWarning::AlphaOutsideRegion { alpha, bound })
}

pub fn f1(x: f64, y: f64) -> f64 {
    let r = (1.0 + 4.0 * x * y).sqrt();
    (2.0 * y + (x - y) * (1.0 + r)) / ((1.0 + r) * (1.0 + x - y))
}

pub fn f2(x: f64, y: f64) -> f64 {
    let r = (1.0 + 4.0 * x * y).sqrt();
    2.0 * y * (1.0 + x - y) / (1.0 + 2.0 * y * (x - y) + r)
}

/// Method-of-moments side means.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomEstimate {
    pub mu1: f64,
    pub mu2: f64,
    /// Series was identically zero.
    pub degenerate: bool,
}

/// Solves the moment equations from the means of the positive and negative
/// parts, `x = E(Z+)` and `y = E(Z-)`.
pub fn mom_from_parts(x: f64, y: f64) -> MomEstimate {
    if x == 0.0 && y == 0.0 {
        return MomEstimate { mu1: 0.0, mu2: 0.0, degenerate: true };
    }
    let odds = |f: f64| f / (1.0 - f);
    let (mu1, mu2) = if x - y >= 0.0 { (odds(f1(x, y)), odds(f2(x, y))) } else { (odds(f2(y, x)), odds(f1(y, x))) };
    MomEstimate { mu1, mu2, degenerate: false }
}

pub fn mom_mu(z: &IntSeries) -> MomEstimate {
    let n = z.len() as f64;
    let (pos, neg) = z.values().iter().fold((0i64, 0i64), |(p, q), &v| if v >= 0 { (p + v, q) } else { (p, q - v) });
    mom_from_parts(pos as f64 / n, neg as f64 / n)
}

/// Asymptotic variance `nu^2` of `sqrt(n)(alpha_hat - alpha)`.
pub fn asym_var_alpha(p: &StinarParams) -> f64 {
    asym_var_alpha_at(p.alpha(), &p.sdl())
}

fn asym_var_alpha_at(alpha: f64, sdl: &SdlParams) -> f64 {
    let (m1, m2) = (sdl.mu1(), sdl.mu2());
    let var = sdl.variance();
    let mu = sdl.mean();
    let var_eps =
        (1.0 + alpha) * (m1 * ((1.0 - alpha) * (1.0 + m1) - alpha) + m2 * ((1.0 - alpha) * (1.0 + m2) - alpha));
    let abs1 = sdl.abs_moment(1).expect("order 1");
    let abs3 = sdl.abs_moment(3).expect("order 3");
    let cond = var_eps + 2.0 * alpha * (1.0 + alpha) * m1 * m2 / (1.0 + m1 + m2);
    cond / var + alpha * (1.0 + alpha) / (var * var) * (abs3 - 2.0 * mu * sdl.sgn_z2() + mu * mu * abs1)
}

/// Asymptotic covariance matrix of `sqrt(n)((mu1_hat, mu2_hat) - (mu1, mu2))`.
pub fn asym_cov_mu(p: &SdlParams) -> [[f64; 2]; 2] {
    let (m1, m2) = (p.mu1(), p.mu2());
    let scale = m1 * m2 * (1.0 + m1) * (1.0 + m2) / ((1.0 + m1) * (1.0 + m2) + m1 * m2);
    let s11 = ((1.0 + m1) * (1.0 + m2).powi(2) - m1 * m2 * m2) / (m2 * (1.0 + m2));
    let s22 = ((1.0 + m2) * (1.0 + m1).powi(2) - m2 * m1 * m1) / (m1 * (1.0 + m1));
    [[scale * s11, scale], [scale, scale * s22]]
}

/// Two-sided standard normal quantile for a confidence `level`.
pub fn normal_quantile(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::ParameterDomain(format!("confidence level must lie in (0, 1), got {level}")));
    }
    if (level - 0.95).abs() < 1e-12 {
        return Ok(1.959964);
    }
    let n = Normal::standard();
    Ok(n.inverse_cdf(1.0 - (1.0 - level) / 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn around(center: f64, half_width: f64) -> Self {
        Self { lower: center - half_width, upper: center + half_width }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Verdict of the test of `mu1 = mu2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuTest {
    pub reject: bool,
    /// Significance level `1 - confidence`.
    pub level: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inference {
    pub se_alpha: f64,
    pub se_mu1: f64,
    pub se_mu2: f64,
    pub se_mu: f64,
    pub cov_mu1_mu2: f64,
    pub ci_alpha: Interval,
    pub ci_mu1: Interval,
    pub ci_mu2: Interval,
    pub ci_mu: Interval,
    pub mu_test: MuTest,
}

/// Point estimates with plug-in standard errors and intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub n: usize,
    pub level: f64,
    pub cls_form: ClsForm,
    pub alpha_hat: f64,
    pub mu1_hat: f64,
    pub mu2_hat: f64,
    pub mu_hat: f64,
    /// `None` when the variance formulas cannot be evaluated at the estimates.
    pub inference: Option<Inference>,
    pub warnings: Vec<FitWarning>,
}

impl FitReport {
    /// Innovation mean `(1 - alpha)(mu1 - mu2)` at the estimates.
    pub fn innovation_mean(&self) -> f64 {
        (1.0 - self.alpha_hat) * self.mu_hat
    }

    /// One-step predictor `E(Z_t | Z_{t-1} = z)` at the estimates.
    pub fn predict(&self, z: i64) -> f64 {
        self.innovation_mean() + self.alpha_hat * z as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub level: f64,
    pub cls_form: ClsForm,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { level: 0.95, cls_form: ClsForm::NonSymmetric }
    }
}

/// Offset below the admissible bound used when clamping alpha for variances.
const CLAMP_MARGIN: f64 = 1e-9;

pub fn infer(z: &IntSeries, level: f64) -> Result<FitReport> {
    infer_with(z, FitOptions { level, ..FitOptions::default() })
}

pub fn infer_with(z: &IntSeries, opts: FitOptions) -> Result<FitReport> {
    let zq = normal_quantile(opts.level)?;
    let alpha_hat = cls_alpha(z, opts.cls_form)?;
    let mom = mom_mu(z);
    let n = z.len();
    let mut warnings = Vec::new();
    if mom.degenerate {
        warnings.push(FitWarning::AllZeroSeries);
    }
    warnings.extend(alpha_region_warning(alpha_hat, mom.mu1, mom.mu2));

    let inference = if mom.mu1 > 0.0 && mom.mu2 > 0.0 {
        let sdl = SdlParams::new(mom.mu1, mom.mu2)?;
        let bound = alpha_bound(mom.mu1, mom.mu2);
        let alpha_eval = if (0.0..=bound).contains(&alpha_hat) {
            alpha_hat
        } else {
            let to = alpha_hat.clamp(0.0, bound - CLAMP_MARGIN);
            warnings.push(FitWarning::AlphaClampedForVariance { from: alpha_hat, to });
            to
        };
        let nf = n as f64;
        let se_alpha = (asym_var_alpha_at(alpha_eval, &sdl) / nf).sqrt();
        let sigma = asym_cov_mu(&sdl);
        let se_mu1 = (sigma[0][0] / nf).sqrt();
        let se_mu2 = (sigma[1][1] / nf).sqrt();
        let se_mu = ((sigma[0][0] + sigma[1][1] - 2.0 * sigma[0][1]) / nf).sqrt();
        let ci_mu = Interval::around(mom.mu1 - mom.mu2, zq * se_mu);
        Some(Inference {
            se_alpha,
            se_mu1,
            se_mu2,
            se_mu,
            cov_mu1_mu2: sigma[0][1] / nf,
            ci_alpha: Interval::around(alpha_hat, zq * se_alpha),
            ci_mu1: Interval::around(mom.mu1, zq * se_mu1),
            ci_mu2: Interval::around(mom.mu2, zq * se_mu2),
            ci_mu,
            mu_test: MuTest { reject: !ci_mu.contains(0.0), level: 1.0 - opts.level },
        })
    } else {
        if !mom.degenerate {
            warnings.push(FitWarning::NonPositiveMu { mu1: mom.mu1, mu2: mom.mu2 });
        }
        warnings
            .push(FitWarning::InferenceUnavailable { reason: "side-mean estimates must be strictly positive".into() });
        None
    };

    Ok(FitReport {
        n,
        level: opts.level,
        cls_form: opts.cls_form,
        alpha_hat,
        mu1_hat: mom.mu1,
        mu2_hat: mom.mu2,
        mu_hat: mom.mu1 - mom.mu2,
        inference,
        warnings,
    })
}

/// Moment fit of the asymmetric TINAR(1) comparison model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TinarFit {
    pub beta_hat: f64,
    pub lambda1_hat: f64,
    pub lambda2_hat: f64,
    pub sample_mean: f64,
    pub sample_variance: f64,
    pub warnings: Vec<FitWarning>,
}

impl TinarFit {
    pub fn predict(&self, z: i64) -> f64 {
        self.beta_hat * z as f64 + self.lambda1_hat - self.lambda2_hat
    }
}

pub fn tinar_fit(z: &IntSeries) -> Result<TinarFit> {
    let beta_hat = cls_alpha(z, ClsForm::NonSymmetric)?;
    let mean = z.mean();
    let n = z.len() as f64;
    let var = z.values().iter().map(|&v| (v as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let lambda1_hat = (1.0 - beta_hat) * (var + mean) / 2.0;
    let lambda2_hat = (1.0 - beta_hat) * (var - mean) / 2.0;
    let mut warnings = Vec::new();
    if var < mean.abs() {
        warnings.push(FitWarning::NegativeLambda { lambda1: lambda1_hat, lambda2: lambda2_hat });
    }
    if !(0.0..1.0).contains(&beta_hat) {
        warnings.push(FitWarning::AlphaOutsideRegion { alpha: beta_hat, bound: 1.0 });
    }
    Ok(TinarFit { beta_hat, lambda1_hat, lambda2_hat, sample_mean: mean, sample_variance: var, warnings })
}
