//! Residuals, goodness-of-fit statistics, sample correlations, descriptive
//! statistics and the jump control chart.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::jump_moments;
use crate::process::StinarParams;
use crate::series::IntSeries;

/// One-step residuals `e_t = z_t - predict(z_{t-1})` for `t = 2..n`.
pub fn residuals(z: &IntSeries, predict: &dyn Fn(i64) -> f64) -> Result<Vec<f64>> {
    let v = z.values();
    if v.len() < 2 {
        return Err(Error::DegenerateSeries("residuals need at least two observations".into()));
    }
    Ok(v.windows(2).map(|w| w[1] as f64 - predict(w[0])).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofStats {
    /// `sign(mean e) sqrt(|mean e|)`
    pub rm: f64,
    /// `sqrt(mean e^2)`
    pub rms: f64,
    /// `mean |e|`
    pub ma: f64,
    /// `median |e|`
    pub mda: f64,
    pub residuals: Vec<f64>,
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

pub fn gof(residuals: &[f64]) -> Result<GofStats> {
    if residuals.is_empty() {
        return Err(Error::DegenerateSeries("no residuals".into()));
    }
    let n = residuals.len() as f64;
    let mean = residuals.iter().sum::<f64>() / n;
    let rms = (residuals.iter().map(|e| e * e).sum::<f64>() / n).sqrt();
    let mut abs: Vec<f64> = residuals.iter().map(|e| e.abs()).collect();
    let ma = abs.iter().sum::<f64>() / n;
    abs.sort_by(f64::total_cmp);
    Ok(GofStats {
        rm: if mean == 0.0 { 0.0 } else { mean.signum() * mean.abs().sqrt() },
        rms,
        ma,
        mda: median(&abs),
        residuals: residuals.to_vec(),
    })
}

/// Sample autocorrelations `rho(0..=max_lag)` with the lag-0 autocovariance
/// as the common denominator.
pub fn sample_acf(values: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    let n = values.len();
    if max_lag >= n {
        return Err(Error::ParameterDomain(format!("max_lag {max_lag} must be below the length {n}")));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let c: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let c0: f64 = c.iter().map(|v| v * v).sum();
    if c0 == 0.0 {
        return Err(Error::DegenerateSeries("constant series has no autocorrelation".into()));
    }
    Ok((0..=max_lag).map(|k| c[k..].iter().zip(&c).map(|(a, b)| a * b).sum::<f64>() / c0).collect())
}

pub fn empirical_acf(z: &IntSeries, max_lag: usize) -> Result<Vec<f64>> {
    let v: Vec<f64> = z.values().iter().map(|&x| x as f64).collect();
    sample_acf(&v, max_lag)
}

/// Partial autocorrelations by Durbin-Levinson from autocorrelations
/// `rho[0..=K]`. Index `k` holds lag `k`; index 0 is 1 by convention.
pub fn pacf_from_acf(rho: &[f64]) -> Vec<f64> {
    let mut out = vec![1.0];
    let mut phi: Vec<f64> = Vec::new();
    for k in 1..rho.len() {
        let num = rho[k] - (1..k).map(|j| phi[j - 1] * rho[k - j]).sum::<f64>();
        let den = 1.0 - (1..k).map(|j| phi[j - 1] * rho[j]).sum::<f64>();
        let pkk = num / den;
        phi = (1..k).map(|j| phi[j - 1] - pkk * phi[k - j - 1]).chain([pkk]).collect();
        out.push(pkk);
    }
    out
}

pub fn sample_pacf(values: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    Ok(pacf_from_acf(&sample_acf(values, max_lag)?))
}

pub fn empirical_pacf(z: &IntSeries, max_lag: usize) -> Result<Vec<f64>> {
    let v: Vec<f64> = z.values().iter().map(|&x| x as f64).collect();
    sample_pacf(&v, max_lag)
}

/// Jump chart with `+-3 sigma_J` limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartSpec {
    pub sigma_j: f64,
    pub lower: f64,
    pub upper: f64,
    /// `jumps[i] = z[i + 1] - z[i]`, i.e. `J_t` at series index `t = i + 1`.
    pub jumps: Vec<i64>,
    /// Series indices `t` (0-based) where `|J_t| > 3 sigma_J`.
    pub violations: Vec<usize>,
}

/// One plot-ready row of the jump chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartRow {
    pub t: usize,
    pub jump: i64,
    pub lower: f64,
    pub upper: f64,
}

impl ChartSpec {
    pub fn rows(&self) -> Vec<ChartRow> {
        self.jumps
            .iter()
            .enumerate()
            .map(|(i, &jump)| ChartRow { t: i + 1, jump, lower: self.lower, upper: self.upper })
            .collect()
    }
}

pub fn jump_chart(z: &IntSeries, p: &StinarParams) -> ChartSpec {
    let sigma_j = jump_moments(p).sigma_j;
    let limit = 3.0 * sigma_j;
    let jumps: Vec<i64> = z.values().windows(2).map(|w| w[1] - w[0]).collect();
    let violations = jumps.iter().enumerate().filter(|(_, j)| (**j as f64).abs() > limit).map(|(i, _)| i + 1).collect();
    ChartSpec { sigma_j, lower: -limit, upper: limit, jumps, violations }
}

/// Descriptive statistics of a series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub min: i64,
    pub median: f64,
    pub mean: f64,
    /// Denominator `n - 1`; `None` for a single observation.
    pub variance: Option<f64>,
    /// `None` when the series is constant or too short.
    pub rho1: Option<f64>,
    pub max: i64,
}

pub fn describe(z: &IntSeries) -> Summary {
    let v = z.values();
    let n = v.len();
    let mean = z.mean();
    let mut sorted: Vec<f64> = v.iter().map(|&x| x as f64).collect();
    sorted.sort_by(f64::total_cmp);
    let variance = (n > 1).then(|| v.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (n - 1) as f64);
    let rho1 = if n > 1 { empirical_acf(z, 1).ok().map(|r| r[1]) } else { None };
    Summary {
        n,
        min: *v.iter().min().expect("non-empty"),
        median: median(&sorted),
        mean,
        variance,
        rho1,
        max: *v.iter().max().expect("non-empty"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(v: &[i64]) -> IntSeries {
        IntSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn zero_predictor_gives_tail() {
        let z = series(&[3, -1, 4, 1]);
        assert_eq!(residuals(&z, &|_| 0.0).unwrap(), vec![-1.0, 4.0, 1.0]);
        assert!(residuals(&series(&[1]), &|_| 0.0).is_err());
    }

    #[test]
    fn zero_residuals() {
        let g = gof(&[0.0; 5]).unwrap();
        assert_eq!((g.rm, g.rms, g.ma, g.mda), (0.0, 0.0, 0.0, 0.0));
        assert!(gof(&[]).is_err());
    }

    #[test]
    fn gof_small_example() {
        let g = gof(&[1.0, -3.0, 4.0]).unwrap();
        assert!((g.rm - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((g.rms - (26.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((g.ma - 8.0 / 3.0).abs() < 1e-15);
        assert_eq!(g.mda, 3.0);
        let neg = gof(&[-1.0, -3.0]).unwrap();
        assert!((neg.rm + 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn acf_basics() {
        let z = series(&[1, 3, 2, 5, 4, 6, 2, 1]);
        let r = empirical_acf(&z, 3).unwrap();
        assert_eq!(r[0], 1.0);
        let p = empirical_pacf(&z, 3).unwrap();
        assert!((p[1] - r[1]).abs() < 1e-15);
        assert!(empirical_acf(&series(&[2, 2, 2]), 1).is_err());
        assert!(empirical_acf(&z, 8).is_err());
    }

    #[test]
    fn pacf_of_exact_ar1_cuts_off() {
        let rho: Vec<f64> = (0..8).map(|k| 0.6f64.powi(k)).collect();
        let p = pacf_from_acf(&rho);
        assert!((p[1] - 0.6).abs() < 1e-15);
        assert!(p[2..].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn constant_series_chart() {
        let p = StinarParams::new(0.3, 3.0, 3.0).unwrap();
        let c = jump_chart(&series(&[4, 4, 4, 4]), &p);
        assert!(c.jumps.iter().all(|&j| j == 0));
        assert!(c.violations.is_empty());
        assert_eq!(c.rows().len(), 3);
    }

    #[test]
    fn describe_small() {
        let d = describe(&series(&[-1, 1]));
        assert_eq!(d.mean, 0.0);
        assert_eq!(d.median, 0.0);
        let single = describe(&series(&[5]));
        assert!(single.variance.is_none() && single.rho1.is_none());
    }
}
