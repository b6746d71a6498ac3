use std::f64::consts::PI;

use num_complex::Complex64;

use crate::process::StinarParams;

/// Autocorrelation `rho(k) = alpha^k` (`rho(0) = 1`).
pub fn acf(p: &StinarParams, k: u32) -> f64 {
    p.alpha.powi(k as i32)
}

/// Autocovariance `gamma(k) = alpha^k sigma^2`.
pub fn autocovariance(p: &StinarParams, k: u32) -> f64 {
    acf(p, k) * p.variance()
}

/// Spectral density `(1 - a^2) / (2 pi) * sigma^2 / (1 + a^2 - 2 a cos w)`.
///
/// This is the autocovariance-based density, so it integrates to `sigma^2`
/// over `(-pi, pi]`.
pub fn spectral_density(p: &StinarParams, omega: f64) -> f64 {
    let a = p.alpha;
    (1.0 - a * a) / (2.0 * PI) * p.variance() / (1.0 + a * a - 2.0 * a * omega.cos())
}

pub fn cond_mean(z: i64, p: &StinarParams) -> f64 {
    let (mean_eps, _) = p.innovation().cumulants();
    mean_eps + p.alpha * z as f64
}

pub fn cond_var(z: i64, p: &StinarParams) -> f64 {
    let StinarParams { alpha, mu1, mu2 } = *p;
    let (_, var_eps) = p.innovation().cumulants();
    var_eps
        + alpha * (1.0 + alpha) * z.unsigned_abs() as f64
        + 2.0 * alpha * (1.0 + alpha) * mu1 * mu2 / (1.0 + mu1 + mu2)
}

struct Kernel {
    /// `1 + alpha (1 - e^{is})`
    a: Complex64,
    /// `1 + alpha (1 - e^{-is})`
    b: Complex64,
    /// `(1 + mu1)(1 + mu2) a b - mu1 mu2`
    d: Complex64,
    phi_eps: Complex64,
}

impl Kernel {
    fn new(s: f64, p: &StinarParams) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let e = Complex64::from_polar(1.0, s);
        let a = one + p.alpha * (one - e);
        let b = one + p.alpha * (one - e.conj());
        let d = (1.0 + p.mu1) * (1.0 + p.mu2) * a * b - p.mu1 * p.mu2;
        Self { a, b, d, phi_eps: p.innovation().cf(s) }
    }

    /// `phi_eps(s) a b / d`
    fn varphi(&self) -> Complex64 {
        self.phi_eps * self.a * self.b / self.d
    }
}

fn cpow(base: Complex64, exp: i64) -> Complex64 {
    match i32::try_from(exp) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(exp as f64),
    }
}

/// Conditional characteristic function `E(exp(i s Z_t) | Z_{t-1} = z)`.
pub fn cond_cf(s: f64, z: i64, p: &StinarParams) -> Complex64 {
    let k = Kernel::new(s, p);
    let c = 1.0 + p.mu1 + p.mu2;
    let tail = if z >= 0 { cpow(k.a, 1 - z) * k.b } else { k.a * cpow(k.b, 1 + z) };
    c * k.phi_eps * tail / k.d
}

/// Joint characteristic function `E exp(i s Z_t + i u Z_{t-1})`.
///
/// The negative-side term carries `e^{-iu}`: summing `cond_cf` against the
/// SDL weights over `z < 0` yields the geometric ratio `q2 e^{-iu} / b`.
pub fn joint_cf(s: f64, u: f64, p: &StinarParams) -> Complex64 {
    let k = Kernel::new(s, p);
    let (m1, m2) = (p.mu1, p.mu2);
    let eu = Complex64::from_polar(1.0, -u);
    let pos = (1.0 + m1) * k.a / ((1.0 + m1) * k.a - eu.conj() * m1);
    let neg = m2 * eu / ((1.0 + m2) * k.b - eu * m2);
    k.varphi() * (pos + neg)
}
