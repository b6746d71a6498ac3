use rand::Rng;
use rand_distr::{Binomial, Distribution, Poisson};

use crate::error::Result;
use crate::innovations::NginarInnovation;
use crate::process::{StinarParams, TinarParams};
use crate::sdl::geom_sample;
use crate::series::IntSeries;

/// Negative binomial thinning `alpha * x`: the sum of `x` geometric draws with mean `alpha`.
pub fn nb_thin<R: Rng + ?Sized>(x: u64, alpha: f64, rng: &mut R) -> u64 {
    if alpha <= 0.0 {
        return 0;
    }
    (0..x).map(|_| geom_sample(alpha, rng)).sum()
}

/// Binomial thinning `beta o x`: the number of successes in `x` Bernoulli(`beta`) trials.
pub fn binomial_thin<R: Rng + ?Sized>(x: u64, beta: f64, rng: &mut R) -> u64 {
    if x == 0 || beta <= 0.0 {
        return 0;
    }
    Binomial::new(x, beta).expect("beta in [0, 1]").sample(rng)
}

fn nginar_path<R: Rng + ?Sized>(mu: f64, alpha: f64, n: usize, rng: &mut R) -> Result<Vec<u64>> {
    let innovation = NginarInnovation::new(mu, alpha)?;
    Ok(nginar_path_with(&innovation, mu, alpha, n, rng))
}

fn nginar_path_with<R: Rng + ?Sized>(
    innovation: &NginarInnovation,
    mu: f64,
    alpha: f64,
    n: usize,
    rng: &mut R,
) -> Vec<u64> {
    let mut path = Vec::with_capacity(n);
    if n == 0 {
        return path;
    }
    // stationary start: no burn-in
    let mut x = geom_sample(mu, rng);
    path.push(x);
    for _ in 1..n {
        x = nb_thin(x, alpha, rng) + innovation.sample(rng);
        path.push(x);
    }
    path
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        return Err(crate::Error::ParameterDomain("path length must be at least 1".into()));
    }
    Ok(())
}

/// Stationary geometric INAR(1) path of length `n`.
pub fn simulate_nginar<R: Rng + ?Sized>(mu: f64, alpha: f64, n: usize, rng: &mut R) -> Result<IntSeries> {
    check_len(n)?;
    let path = nginar_path(mu, alpha, n, rng)?;
    IntSeries::new(path.into_iter().map(|v| v as i64).collect())
}

/// A STINAR(1) path together with its two latent geometric chains.
#[derive(Debug, Clone)]
pub struct LatentPaths {
    pub z: IntSeries,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

/// Simulates `Z_t = X_t - Y_t` and keeps the latent chains.
pub fn simulate_stinar_latent<R: Rng + ?Sized>(p: &StinarParams, n: usize, rng: &mut R) -> Result<LatentPaths> {
    check_len(n)?;
    let innovation = p.innovation();
    let (pos, neg) = innovation.latent();
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    let mut xt = geom_sample(p.mu1, rng);
    let mut yt = geom_sample(p.mu2, rng);
    x.push(xt);
    y.push(yt);
    for _ in 1..n {
        xt = nb_thin(xt, p.alpha, rng) + pos.sample(rng);
        yt = nb_thin(yt, p.alpha, rng) + neg.sample(rng);
        x.push(xt);
        y.push(yt);
    }
    let z = x.iter().zip(&y).map(|(&a, &b)| a as i64 - b as i64).collect();
    Ok(LatentPaths { z: IntSeries::new(z)?, x, y })
}

/// Stationary STINAR(1) path of length `n`.
pub fn simulate_stinar<R: Rng + ?Sized>(p: &StinarParams, n: usize, rng: &mut R) -> Result<IntSeries> {
    simulate_stinar_latent(p, n, rng).map(|l| l.z)
}

/// Negatively correlated variant: `X_t - Y_t` at even `t`, `Y_t - X_t` at odd `t`.
///
/// The lag-k autocorrelation is `(-alpha)^k`. With `mu1 != mu2` the marginal
/// alternates between SDL(mu1, mu2) and SDL(mu2, mu1).
pub fn simulate_alternating<R: Rng + ?Sized>(p: &StinarParams, n: usize, rng: &mut R) -> Result<IntSeries> {
    let latent = simulate_stinar_latent(p, n, rng)?;
    let z = latent.z.values().iter().enumerate().map(|(t, &v)| if t % 2 == 0 { v } else { -v }).collect();
    IntSeries::new(z)
}

fn poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).expect("positive mean").sample(rng) as u64
}

/// Asymmetric TINAR(1): difference of two Poisson INAR(1) chains with
/// binomial thinning `beta` and innovation means `lambda1`, `lambda2`.
pub fn simulate_tinar<R: Rng + ?Sized>(p: &TinarParams, n: usize, rng: &mut R) -> Result<IntSeries> {
    check_len(n)?;
    let beta = p.beta();
    let mut x = poisson(p.lambda1() / (1.0 - beta), rng);
    let mut y = poisson(p.lambda2() / (1.0 - beta), rng);
    let mut z = Vec::with_capacity(n);
    z.push(x as i64 - y as i64);
    for _ in 1..n {
        x = binomial_thin(x, beta, rng) + poisson(p.lambda1(), rng);
        y = binomial_thin(y, beta, rng) + poisson(p.lambda2(), rng);
        z.push(x as i64 - y as i64);
    }
    IntSeries::new(z)
}
