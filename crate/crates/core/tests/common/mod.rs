#![allow(dead_code)]

use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson chi-square p-value of integer draws against `pmf`, pooling every
/// cell with expected count below 5 into a single remainder cell.
pub fn chi_square_p(draws: &[i64], pmf: impl Fn(i64) -> f64) -> f64 {
    let n = draws.len() as f64;
    let mut counts: BTreeMap<i64, f64> = BTreeMap::new();
    for &d in draws {
        *counts.entry(d).or_default() += 1.0;
    }
    let lo = *counts.keys().next().unwrap();
    let hi = *counts.keys().last().unwrap();
    let mut stat = 0.0;
    let mut cells = 0usize;
    let (mut rest_obs, mut rest_exp) = (0.0, 0.0);
    for k in lo - 50..=hi + 50 {
        let e = n * pmf(k);
        let o = counts.get(&k).copied().unwrap_or(0.0);
        if e >= 5.0 {
            stat += (o - e).powi(2) / e;
            cells += 1;
        } else {
            rest_obs += o;
            rest_exp += e;
        }
    }
    // mass outside the scanned window
    rest_exp += n - (lo - 50..=hi + 50).map(|k| n * pmf(k)).sum::<f64>();
    if rest_exp > 0.0 {
        stat += (rest_obs - rest_exp).powi(2) / rest_exp;
        cells += 1;
    }
    let dof = (cells - 1) as f64;
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}

/// Mean and batch-means standard error of a stationary sequence.
pub fn batch_means(values: &[f64], batches: usize) -> (f64, f64) {
    let size = values.len() / batches;
    let means: Vec<f64> =
        values.chunks_exact(size).take(batches).map(|c| c.iter().sum::<f64>() / size as f64).collect();
    let m = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (batches - 1) as f64;
    (m, (var / batches as f64).sqrt())
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn variance(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64
}
