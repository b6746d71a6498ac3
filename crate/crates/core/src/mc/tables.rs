use std::fmt::Write as _;

use super::{McCell, McReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Text,
}

pub const CSV_HEADER: &str = "alpha,mu1,mu2,n,replications,failed,flagged,mean_alpha,mse_alpha,mean_mu1,mse_mu1,mean_mu2,mse_mu2,mean_mu_j2,mean_mu_j3,true_mu_j2,true_mu_j3";

/// Renders a complete report. CSV writes floats with shortest round-trip
/// formatting; text is an aligned layout grouped by `(mu1, mu2)`.
pub fn emit_tables(report: &McReport, format: TableFormat) -> Result<String> {
    report.check_complete()?;
    Ok(match format {
        TableFormat::Csv => csv(&report.cells),
        TableFormat::Text => text(&report.cells),
    })
}

fn csv(cells: &[McCell]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            c.alpha,
            c.mu1,
            c.mu2,
            c.n,
            c.replications,
            c.failed,
            c.flagged,
            c.mean_alpha,
            c.mse_alpha,
            c.mean_mu1,
            c.mse_mu1,
            c.mean_mu2,
            c.mse_mu2,
            c.mean_mu_j2,
            c.mean_mu_j3,
            c.true_mu_j2,
            c.true_mu_j3
        );
    }
    out
}

fn sorted(cells: &[McCell]) -> Vec<&McCell> {
    let mut v: Vec<&McCell> = cells.iter().collect();
    v.sort_by(|a, b| {
        (a.mu1, a.mu2, a.n, a.alpha).partial_cmp(&(b.mu1, b.mu2, b.n, b.alpha)).unwrap_or(std::cmp::Ordering::Equal)
    });
    v
}

fn text(cells: &[McCell]) -> String {
    let rows = sorted(cells);
    let mut out = String::new();
    let _ = writeln!(out, "Empirical means (MSE) of the estimators");
    let _ = writeln!(
        out,
        "{:>6} {:>6} {:>6} {:>5} | {:>20} | {:>20} | {:>20} | {:>7}",
        "mu1", "mu2", "alpha", "n", "alpha_hat", "mu1_hat", "mu2_hat", "flagged"
    );
    for c in &rows {
        let _ = writeln!(
            out,
            "{:>6} {:>6} {:>6} {:>5} | {:>20} | {:>20} | {:>20} | {:>7}",
            c.mu1,
            c.mu2,
            c.alpha,
            c.n,
            pair(c.mean_alpha, c.mse_alpha),
            pair(c.mean_mu1, c.mse_mu1),
            pair(c.mean_mu2, c.mse_mu2),
            c.flagged
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "Jump moments: true value and mean plug-in estimate");
    let _ = writeln!(
        out,
        "{:>6} {:>6} {:>6} {:>5} | {:>10} {:>10} | {:>10} {:>10}",
        "mu1", "mu2", "alpha", "n", "true_J2", "mean_J2", "true_J3", "mean_J3"
    );
    for c in &rows {
        let _ = writeln!(
            out,
            "{:>6} {:>6} {:>6} {:>5} | {:>10.4} {:>10.4} | {:>10.4} {:>10.4}",
            c.mu1, c.mu2, c.alpha, c.n, c.true_mu_j2, c.mean_mu_j2, c.true_mu_j3, c.mean_mu_j3
        );
    }
    out
}

fn pair(mean: f64, mse: f64) -> String {
    format!("{mean:.4} ({mse:.4})")
}

/// Parses CSV produced by [`emit_tables`] back into cells.
pub fn parse_csv(text: &str) -> Result<Vec<McCell>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        Some((i, _)) => return Err(Error::InputFormat { line: i + 1, message: "unexpected header".into() }),
        None => return Err(Error::InputFormat { line: 1, message: "missing header".into() }),
    }
    lines.map(|(i, l)| parse_row(l).map_err(|message| Error::InputFormat { line: i + 1, message })).collect()
}

fn parse_row(line: &str) -> std::result::Result<McCell, String> {
    let f: Vec<&str> = line.trim().split(',').collect();
    if f.len() != 17 {
        return Err(format!("expected 17 fields, found {}", f.len()));
    }
    let real = |i: usize| f[i].parse::<f64>().map_err(|e| format!("field {}: {e}", i + 1));
    let count = |i: usize| f[i].parse::<usize>().map_err(|e| format!("field {}: {e}", i + 1));
    Ok(McCell {
        alpha: real(0)?,
        mu1: real(1)?,
        mu2: real(2)?,
        n: count(3)?,
        replications: count(4)?,
        failed: count(5)?,
        flagged: count(6)?,
        mean_alpha: real(7)?,
        mse_alpha: real(8)?,
        mean_mu1: real(9)?,
        mse_mu1: real(10)?,
        mean_mu2: real(11)?,
        mse_mu2: real(12)?,
        mean_mu_j2: real(13)?,
        mean_mu_j3: real(14)?,
        true_mu_j2: real(15)?,
        true_mu_j3: real(16)?,
    })
}
