//! Seeded Monte Carlo study of the estimators.
//!
//! Every replication draws from its own [`RngState`] derived from
//! `(seed, cell, replication)`, and aggregates are summed in replication order,
//! so reports are bit-identical for any thread count.

mod tables;

pub use tables::{emit_tables, parse_csv, TableFormat, CSV_HEADER};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{cls_alpha, mom_mu, ClsForm};
use crate::moments::{jump_moments, jump_moments_raw};
use crate::process::{alpha_bound, simulate_stinar, StinarParams};
use crate::rng::RngState;

/// Thread count for a study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "ParallelismRepr", into = "ParallelismRepr")]
pub enum Parallelism {
    /// Rayon's global pool (sequential without the `parallel` feature).
    #[default]
    Auto,
    /// Fixed number of worker threads; 1 runs on the calling thread.
    Threads(usize),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ParallelismRepr {
    Name(String),
    Threads(usize),
}

impl TryFrom<ParallelismRepr> for Parallelism {
    type Error = String;

    fn try_from(r: ParallelismRepr) -> std::result::Result<Self, String> {
        match r {
            ParallelismRepr::Name(s) if s == "auto" => Ok(Self::Auto),
            ParallelismRepr::Name(s) => Err(format!("parallelism must be \"auto\" or a thread count, got {s:?}")),
            ParallelismRepr::Threads(0) => Err("parallelism thread count must be at least 1".into()),
            ParallelismRepr::Threads(k) => Ok(Self::Threads(k)),
        }
    }
}

impl From<Parallelism> for ParallelismRepr {
    fn from(p: Parallelism) -> Self {
        match p {
            Parallelism::Auto => Self::Name("auto".into()),
            Parallelism::Threads(k) => Self::Threads(k),
        }
    }
}

/// Declarative experiment grid.
///
/// ```toml
/// seed = 20130501
/// replications = 1000
/// sample_sizes = [50, 100, 200, 400]
/// parallelism = "auto"        # or a thread count
/// cls_form = "non_symmetric"  # or "symmetric"
///
/// [[grid]]
/// alpha = 0.5
/// mu1 = 3.0
/// mu2 = 3.0
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McConfig {
    #[serde(default)]
    pub grid: Vec<StinarParams>,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    #[serde(default)]
    pub parallelism: Parallelism,
    #[serde(default)]
    pub cls_form: ClsForm,
}

/// Smallest path length the estimators accept.
pub const MIN_SAMPLE_SIZE: usize = 3;

impl McConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Config("replications: must be at least 1".into()));
        }
        if let Some(n) = self.sample_sizes.iter().find(|&&n| n < MIN_SAMPLE_SIZE) {
            return Err(Error::Config(format!("sample_sizes: {n} is below the minimum {MIN_SAMPLE_SIZE}")));
        }
        for p in &self.grid {
            StinarParams::new(p.alpha(), p.mu1(), p.mu2()).map_err(|e| Error::Config(format!("grid: {e}")))?;
        }
        if let Parallelism::Threads(0) = self.parallelism {
            return Err(Error::Config("parallelism: thread count must be at least 1".into()));
        }
        Ok(())
    }

    /// The full design: `alpha` in {0.1, 0.3, 0.5, 0.7}, `(mu1, mu2)` in
    /// {(3, 3), (6, 3)}, `n` in {50, 100, 200, 400}, 5000 replications.
    pub fn full_study(seed: u64) -> Self {
        let grid = [(3.0, 3.0), (6.0, 3.0)]
            .iter()
            .flat_map(|&(m1, m2)| {
                [0.1, 0.3, 0.5, 0.7].map(|a| StinarParams::new(a, m1, m2).expect("admissible preset"))
            })
            .collect();
        Self {
            grid,
            sample_sizes: vec![50, 100, 200, 400],
            replications: 5000,
            seed,
            parallelism: Parallelism::Auto,
            cls_form: ClsForm::NonSymmetric,
        }
    }

    /// The full grid with a single replication per cell.
    pub fn smoke(seed: u64) -> Self {
        Self { replications: 1, ..Self::full_study(seed) }
    }

    /// Grid point and sample size of every cell, in cell-index order.
    pub fn cells(&self) -> Vec<(StinarParams, usize)> {
        self.grid.iter().flat_map(|p| self.sample_sizes.iter().map(move |&n| (*p, n))).collect()
    }
}

/// Aggregated results for one `(params, n)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McCell {
    pub alpha: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub n: usize,
    /// Replications attempted.
    pub replications: usize,
    /// Replications whose CLS ratio was undefined; excluded from aggregates.
    pub failed: usize,
    /// Included replications with alpha outside the admissible region or a
    /// non-positive side-mean estimate.
    pub flagged: usize,
    pub mean_alpha: f64,
    pub mse_alpha: f64,
    pub mean_mu1: f64,
    pub mse_mu1: f64,
    pub mean_mu2: f64,
    pub mse_mu2: f64,
    pub mean_mu_j2: f64,
    pub mean_mu_j3: f64,
    pub true_mu_j2: f64,
    pub true_mu_j3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub seed: u64,
    pub replications: usize,
    pub cells: Vec<McCell>,
}

impl McReport {
    /// Checks every cell ran the configured number of replications and has
    /// finite aggregates.
    pub fn check_complete(&self) -> Result<()> {
        for (i, c) in self.cells.iter().enumerate() {
            if c.replications != self.replications {
                return Err(Error::PartialReport(format!(
                    "cell {i} ran {} of {} replications",
                    c.replications, self.replications
                )));
            }
            if c.failed >= c.replications {
                return Err(Error::PartialReport(format!("cell {i} has no usable replications")));
            }
        }
        Ok(())
    }

    pub fn cell(&self, alpha: f64, mu1: f64, mu2: f64, n: usize) -> Option<&McCell> {
        self.cells.iter().find(|c| c.alpha == alpha && c.mu1 == mu1 && c.mu2 == mu2 && c.n == n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Outcome {
    alpha: f64,
    mu1: f64,
    mu2: f64,
    j2: f64,
    j3: f64,
    flagged: bool,
}

fn replicate(seed: u64, cell: usize, rep: usize, p: &StinarParams, n: usize, form: ClsForm) -> Option<Outcome> {
    let mut rng = RngState::for_replication(seed, cell as u64, rep as u64);
    let z = simulate_stinar(p, n, &mut rng).expect("validated params");
    let alpha = cls_alpha(&z, form).ok()?;
    let mom = mom_mu(&z);
    let (j2, j3) = jump_moments_raw(alpha, mom.mu1, mom.mu2);
    let bound = alpha_bound(mom.mu1.max(0.0), mom.mu2.max(0.0));
    let flagged = !(0.0..=bound).contains(&alpha) || mom.mu1 <= 0.0 || mom.mu2 <= 0.0;
    Some(Outcome { alpha, mu1: mom.mu1, mu2: mom.mu2, j2, j3, flagged })
}

/// Order-fixed pairwise summation.
pub(crate) fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

fn mean_of(v: &[f64]) -> f64 {
    pairwise_sum(v) / v.len() as f64
}

fn mse_of(v: &[f64], truth: f64) -> f64 {
    let sq: Vec<f64> = v.iter().map(|x| (x - truth).powi(2)).collect();
    mean_of(&sq)
}

fn aggregate(p: &StinarParams, n: usize, outcomes: &[Option<Outcome>]) -> McCell {
    let ok: Vec<&Outcome> = outcomes.iter().flatten().collect();
    let col = |f: fn(&Outcome) -> f64| ok.iter().map(|o| f(o)).collect::<Vec<f64>>();
    let (alpha, mu1, mu2) = (col(|o| o.alpha), col(|o| o.mu1), col(|o| o.mu2));
    let truth = jump_moments(p);
    McCell {
        alpha: p.alpha(),
        mu1: p.mu1(),
        mu2: p.mu2(),
        n,
        replications: outcomes.len(),
        failed: outcomes.len() - ok.len(),
        flagged: ok.iter().filter(|o| o.flagged).count(),
        mean_alpha: mean_of(&alpha),
        mse_alpha: mse_of(&alpha, p.alpha()),
        mean_mu1: mean_of(&mu1),
        mse_mu1: mse_of(&mu1, p.mu1()),
        mean_mu2: mean_of(&mu2),
        mse_mu2: mse_of(&mu2, p.mu2()),
        mean_mu_j2: mean_of(&col(|o| o.j2)),
        mean_mu_j3: mean_of(&col(|o| o.j3)),
        true_mu_j2: truth.second_moment,
        true_mu_j3: truth.third_moment,
    }
}

fn run_all(cfg: &McConfig, cells: &[(StinarParams, usize)]) -> Result<Vec<Option<Outcome>>> {
    let reps = cfg.replications;
    let job = |i: usize| {
        let (cell, rep) = (i / reps, i % reps);
        let (p, n) = &cells[cell];
        replicate(cfg.seed, cell, rep, p, *n, cfg.cls_form)
    };
    let total = cells.len() * reps;
    match cfg.parallelism {
        Parallelism::Threads(1) => Ok(sequential(total, job)),
        #[cfg(feature = "parallel")]
        Parallelism::Auto => Ok(parallel(total, job)),
        #[cfg(feature = "parallel")]
        Parallelism::Threads(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Config(format!("parallelism: {e}")))?;
            Ok(pool.install(|| parallel(total, job)))
        }
        #[cfg(not(feature = "parallel"))]
        _ => Ok(sequential(total, job)),
    }
}

fn sequential<T>(total: usize, job: impl Fn(usize) -> T) -> Vec<T> {
    (0..total).map(job).collect()
}

#[cfg(feature = "parallel")]
fn parallel<T: Send>(total: usize, job: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..total).into_par_iter().map(job).collect()
}

/// Runs every cell of the grid and aggregates means and mean squared errors.
pub fn run_study(cfg: &McConfig) -> Result<McReport> {
    cfg.validate()?;
    let cells = cfg.cells();
    let outcomes = run_all(cfg, &cells)?;
    let reps = cfg.replications;
    let cells = cells.iter().zip(outcomes.chunks(reps.max(1))).map(|((p, n), chunk)| aggregate(p, *n, chunk)).collect();
    Ok(McReport { seed: cfg.seed, replications: reps, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(reps: usize, par: Parallelism) -> McConfig {
        McConfig {
            grid: vec![StinarParams::new(0.3, 3.0, 3.0).unwrap(), StinarParams::new(0.5, 6.0, 3.0).unwrap()],
            sample_sizes: vec![20, 60],
            replications: reps,
            seed: 99,
            parallelism: par,
            cls_form: ClsForm::NonSymmetric,
        }
    }

    #[test]
    fn single_replication_mse_is_squared_error() {
        let c = cfg(1, Parallelism::Threads(1));
        let r = run_study(&c).unwrap();
        let cell = &r.cells[0];
        assert_eq!(cell.replications, 1);
        let err = cell.mean_alpha - 0.3;
        assert!((cell.mse_alpha - err * err).abs() < 1e-15);
        let err = cell.mean_mu1 - 3.0;
        assert!((cell.mse_mu1 - err * err).abs() < 1e-12);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let a = run_study(&cfg(40, Parallelism::Threads(1))).unwrap();
        let b = run_study(&cfg(40, Parallelism::Threads(4))).unwrap();
        let c = run_study(&cfg(40, Parallelism::Auto)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn mse_dominates_squared_bias() {
        let r = run_study(&cfg(50, Parallelism::Auto)).unwrap();
        for c in &r.cells {
            assert!(c.mse_alpha >= (c.mean_alpha - c.alpha).powi(2));
            assert!(c.mse_mu1 >= (c.mean_mu1 - c.mu1).powi(2));
            assert!(c.mse_mu2 >= (c.mean_mu2 - c.mu2).powi(2));
        }
        r.check_complete().unwrap();
    }

    #[test]
    fn config_parsing_and_validation() {
        let text = r#"
            seed = 5
            replications = 10
            sample_sizes = [50]
            parallelism = 2
            [[grid]]
            alpha = 0.5
            mu1 = 3.0
            mu2 = 3.0
        "#;
        let c = McConfig::from_toml_str(text).unwrap();
        assert_eq!(c.parallelism, Parallelism::Threads(2));
        assert_eq!(c.grid.len(), 1);

        let bad = McConfig::from_toml_str("seed = 1\nreplications = 0\nsample_sizes = [50]");
        assert!(matches!(bad, Err(Error::Config(m)) if m.contains("replications")));

        let missing = McConfig::from_toml_str("seed = 1\nsample_sizes = [50]");
        assert!(matches!(missing, Err(Error::Config(m)) if m.contains("replications")));

        let inadmissible = McConfig::from_toml_str(
            "seed = 1\nreplications = 2\nsample_sizes = [50]\n[[grid]]\nalpha = 0.9\nmu1 = 1.0\nmu2 = 1.0",
        );
        assert!(matches!(inadmissible, Err(Error::Config(_))));

        let typo = McConfig::from_toml_str("seed = 1\nreplications = 2\nsample_size = [50]");
        assert!(matches!(typo, Err(Error::Config(m)) if m.contains("sample_size")));
    }

    #[test]
    fn pairwise_sum_matches_naive_on_integers() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499_500.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn partial_report_detected() {
        let mut r = run_study(&cfg(3, Parallelism::Threads(1))).unwrap();
        r.cells[1].replications = 2;
        assert!(matches!(r.check_complete(), Err(Error::PartialReport(_))));
    }
}
