//! Skew true INAR(1) processes on the integers.
//!
//! The process `Z_t = X_t - Y_t` is the difference of two independent
//! geometric INAR(1) chains driven by negative binomial thinning with a common
//! thinning parameter. Its marginals are skew discrete Laplace.
//!
//! The crate is split by concern:
//!
//! - [`sdl`]: skew discrete Laplace distribution (pmf, cdf, cf, moments, sampling)
//! - [`innovations`]: geometric-mixture and SDL-mixture innovation laws
//! - [`process`]: thinning, exact simulation, and process-level closed forms
//! - [`moments`]: joint third-order moments and the jump process
//! - [`estimation`]: conditional least squares, method of moments, plug-in inference
//! - [`diagnostics`]: residuals, goodness of fit, sample ACF/PACF, jump chart
//! - [`mc`]: seeded Monte Carlo study harness (parallel with the `parallel` feature)

pub mod data;
pub mod diagnostics;
pub mod error;
pub mod estimation;
pub mod innovations;
pub mod mc;
pub mod moments;
pub mod process;
pub mod rng;
pub mod sdl;
pub mod series;

pub use error::{Error, Result};
pub use process::{StinarParams, TinarParams};
pub use rng::RngState;
pub use sdl::SdlParams;
pub use series::IntSeries;
