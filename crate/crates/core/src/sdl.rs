//! Skew discrete Laplace distribution on the integers.
//!
//! `Z = G1 - G2` with `G1`, `G2` independent geometric variables on `{0, 1, ...}`
//! with means `mu1` and `mu2`. The positive tail decays like
//! `(mu1 / (1 + mu1))^k` and the negative tail like `(mu2 / (1 + mu2))^|k|`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of a skew discrete Laplace law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SdlParams {
    mu1: f64,
    mu2: f64,
}

impl SdlParams {
    /// Both side means strictly positive.
    pub fn new(mu1: f64, mu2: f64) -> Result<Self> {
        if !(mu1.is_finite() && mu1 > 0.0) || !(mu2.is_finite() && mu2 > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "skew discrete Laplace needs mu1 > 0 and mu2 > 0, got ({mu1}, {mu2})"
            )));
        }
        Ok(Self { mu1, mu2 })
    }

    /// Allows zero side means. `mu2 = 0` is the plain geometric law and
    /// `mu1 = mu2 = 0` the point mass at zero; every formula stays valid.
    pub fn non_negative(mu1: f64, mu2: f64) -> Result<Self> {
        if !(mu1.is_finite() && mu1 >= 0.0) || !(mu2.is_finite() && mu2 >= 0.0) {
            return Err(Error::ParameterDomain(format!(
                "side means must be finite and non-negative, got ({mu1}, {mu2})"
            )));
        }
        Ok(Self { mu1, mu2 })
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    /// Ratio of successive positive-side probabilities.
    pub fn q1(&self) -> f64 {
        self.mu1 / (1.0 + self.mu1)
    }

    /// Ratio of successive negative-side probabilities.
    pub fn q2(&self) -> f64 {
        self.mu2 / (1.0 + self.mu2)
    }

    fn norm(&self) -> f64 {
        1.0 + self.mu1 + self.mu2
    }

    /// Probability mass at `k`.
    pub fn pmf(&self, k: i64) -> f64 {
        if k >= 0 {
            self.q1().powf(k as f64) / self.norm()
        } else {
            self.q2().powf(k.unsigned_abs() as f64) / self.norm()
        }
    }

    /// `P(Z <= k)`.
    pub fn cdf(&self, k: i64) -> f64 {
        if k >= 0 {
            1.0 - self.mu1 / self.norm() * self.q1().powf(k as f64)
        } else {
            (1.0 + self.mu2) / self.norm() * self.q2().powf(k.unsigned_abs() as f64)
        }
    }

    /// Characteristic function `E exp(i s Z)`.
    pub fn cf(&self, s: f64) -> Complex64 {
        let e = Complex64::from_polar(1.0, s);
        let one = Complex64::new(1.0, 0.0);
        one / ((one + self.mu1 * (one - e)) * (one + self.mu2 * (one - e.conj())))
    }

    pub fn mean(&self) -> f64 {
        self.mu1 - self.mu2
    }

    pub fn variance(&self) -> f64 {
        self.mu1 * (1.0 + self.mu1) + self.mu2 * (1.0 + self.mu2)
    }

    /// `E|Z|`.
    pub fn abs_mean(&self) -> f64 {
        self.variance() / self.norm()
    }

    /// Raw moment `E(Z^k)`, `k >= 1`, by the Stirling-number expansion.
    pub fn moment(&self, k: u32) -> Result<f64> {
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        self.stirling_sum(k, sign)
    }

    /// Absolute moment `E(|Z|^k)`, `k >= 1`.
    pub fn abs_moment(&self, k: u32) -> Result<f64> {
        self.stirling_sum(k, 1.0)
    }

    fn stirling_sum(&self, k: u32, neg_sign: f64) -> Result<f64> {
        if k == 0 {
            return Err(Error::ParameterDomain("moment order must be at least 1".into()));
        }
        let (m1, m2) = (self.mu1, self.mu2);
        let mut acc = 0.0;
        let mut fact = 1.0;
        for j in 1..=k {
            fact *= j as f64;
            let s = stirling2(k, j)? as f64;
            acc += fact * s * (m1.powi(j as i32) / (1.0 + m2) + neg_sign * m2.powi(j as i32) / (1.0 + m1));
        }
        Ok((1.0 + m1) * (1.0 + m2) / self.norm() * acc)
    }

    /// `E(sgn(Z) Z^2)` with `sgn(0) = 1`.
    pub fn sgn_z2(&self) -> f64 {
        let (m1, m2) = (self.mu1, self.mu2);
        (m1 * (1.0 + m1) * (1.0 + 2.0 * m1) - m2 * (1.0 + m2) * (1.0 + 2.0 * m2)) / self.norm()
    }

    /// One draw as the difference of two geometric variables.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        geom_sample(self.mu1, rng) as i64 - geom_sample(self.mu2, rng) as i64
    }
}

/// Stirling number of the second kind `S(k, j)`, exact.
pub fn stirling2(k: u32, j: u32) -> Result<u64> {
    if j > k {
        return Err(Error::ParameterDomain(format!("S({k}, {j}) needs j <= k")));
    }
    // row-by-row recurrence S(n, m) = m S(n-1, m) + S(n-1, m-1)
    let mut row = vec![0u64; j as usize + 1];
    row[0] = 1;
    for n in 1..=k as usize {
        for m in (1..=n.min(j as usize)).rev() {
            row[m] = (m as u64)
                .checked_mul(row[m])
                .and_then(|v| v.checked_add(row[m - 1]))
                .ok_or_else(|| Error::ParameterDomain(format!("S({k}, {j}) overflows u64")))?;
        }
        row[0] = 0;
    }
    Ok(row[j as usize])
}

/// Geometric pmf on `{0, 1, ...}` with the given mean: `mean^g / (1 + mean)^(g + 1)`.
pub fn geom_pmf(g: u64, mean: f64) -> f64 {
    (mean / (1.0 + mean)).powf(g as f64) / (1.0 + mean)
}

/// Inverse-cdf geometric draw with the given mean; mean zero always yields 0.
pub fn geom_sample<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    // P(G >= g) = q^g, so G = floor(ln U / ln q) for U uniform on (0, 1].
    let u = 1.0 - rng.random::<f64>();
    let ln_q = -(1.0 / mean).ln_1p();
    (u.ln() / ln_q).floor() as u64
}
