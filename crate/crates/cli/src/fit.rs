use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use stinar::data::{builtin, parse_series};
use stinar::diagnostics::{describe, gof, jump_chart, residuals, sample_acf, sample_pacf, ChartRow, Summary};
use stinar::estimation::{infer_with, tinar_fit, ClsForm, FitOptions, FitReport, TinarFit};
use stinar::{IntSeries, StinarParams};

use crate::output::{emit, fmt_num, to_json, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Stinar,
    Tinar,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Cls {
    NonSymmetric,
    Symmetric,
}

#[derive(clap::Args)]
pub struct Args {
    /// `builtin:swedish` or a file with one integer per line.
    #[arg(long)]
    data: String,
    #[arg(long, value_enum, default_value_t = Model::Stinar)]
    model: Model,
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    #[arg(long, value_enum, default_value_t = Cls::NonSymmetric)]
    cls_form: Cls,
    /// Largest lag of the residual ACF/PACF.
    #[arg(long, default_value_t = 10)]
    max_lag: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Gof {
    rm: f64,
    rms: f64,
    ma: f64,
    mda: f64,
}

#[derive(Serialize)]
struct LagValue {
    lag: usize,
    value: f64,
}

#[derive(Serialize)]
struct Chart {
    sigma_j: f64,
    lower: f64,
    upper: f64,
    violations: Vec<usize>,
    rows: Vec<ChartRow>,
}

#[derive(Serialize)]
struct Diagnostics {
    residual_acf: Vec<LagValue>,
    residual_pacf: Vec<LagValue>,
    /// `1.96 / sqrt(n)` white-noise band for the residual correlations.
    white_noise_band: f64,
    /// Present for STINAR fits whose estimates are admissible.
    jump_chart: Option<Chart>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Estimates {
    Stinar(FitReport),
    Tinar(TinarFit),
}

#[derive(Serialize)]
struct Report {
    model: Model,
    source: String,
    summary: Summary,
    fit: Estimates,
    gof: Gof,
    diagnostics: Diagnostics,
}

fn load(source: &str) -> Result<IntSeries> {
    if source.starts_with("builtin:") {
        return match builtin(source) {
            Some(z) => Ok(z),
            None => bail!(stinar::Error::InputFormat { line: 0, message: format!("unknown dataset {source:?}") }),
        };
    }
    let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    parse_series(&text).with_context(|| format!("parsing {source}"))
}

fn lag_values(v: &[f64]) -> Vec<LagValue> {
    v.iter().enumerate().skip(1).map(|(lag, &value)| LagValue { lag, value }).collect()
}

fn build(a: &Args) -> Result<Report> {
    let z = load(&a.data)?;
    let (fit, e, chart) = match a.model {
        Model::Stinar => {
            let cls_form = match a.cls_form {
                Cls::NonSymmetric => ClsForm::NonSymmetric,
                Cls::Symmetric => ClsForm::Symmetric,
            };
            let r = infer_with(&z, FitOptions { level: a.level, cls_form })?;
            let e = residuals(&z, &|x| r.predict(x))?;
            let chart = StinarParams::new(r.alpha_hat, r.mu1_hat, r.mu2_hat).ok().map(|p| {
                let c = jump_chart(&z, &p);
                Chart { sigma_j: c.sigma_j, lower: c.lower, upper: c.upper, rows: c.rows(), violations: c.violations }
            });
            (Estimates::Stinar(r), e, chart)
        }
        Model::Tinar => {
            let t = tinar_fit(&z)?;
            let e = residuals(&z, &|x| t.predict(x))?;
            (Estimates::Tinar(t), e, None)
        }
    };
    let g = gof(&e)?;
    let max_lag = a.max_lag.min(e.len().saturating_sub(1));
    Ok(Report {
        model: a.model,
        source: a.data.clone(),
        summary: describe(&z),
        fit,
        gof: Gof { rm: g.rm, rms: g.rms, ma: g.ma, mda: g.mda },
        diagnostics: Diagnostics {
            residual_acf: lag_values(&sample_acf(&e, max_lag)?),
            residual_pacf: lag_values(&sample_pacf(&e, max_lag)?),
            white_noise_band: 1.96 / (e.len() as f64).sqrt(),
            jump_chart: chart,
        },
    })
}

fn text(r: &Report) -> String {
    let mut s = String::new();
    let f = fmt_num;
    let _ = writeln!(s, "model   {:?}\nsource  {}\nn       {}", r.model, r.source, r.summary.n);
    match &r.fit {
        Estimates::Stinar(e) => {
            let _ =
                writeln!(s, "alpha_hat  {}\nmu1_hat    {}\nmu2_hat    {}", f(e.alpha_hat), f(e.mu1_hat), f(e.mu2_hat));
            if let Some(i) = &e.inference {
                for (name, se, ci) in [
                    ("alpha", i.se_alpha, i.ci_alpha),
                    ("mu1", i.se_mu1, i.ci_mu1),
                    ("mu2", i.se_mu2, i.ci_mu2),
                    ("mu", i.se_mu, i.ci_mu),
                ] {
                    let _ = writeln!(s, "{name:<6} se {:<12} ci [{}, {}]", f(se), f(ci.lower), f(ci.upper));
                }
                let _ = writeln!(s, "mu1 = mu2 rejected at confidence {}: {}", f(e.level), i.mu_test.reject);
            }
        }
        Estimates::Tinar(t) => {
            let _ = writeln!(
                s,
                "beta_hat     {}\nlambda1_hat  {}\nlambda2_hat  {}",
                f(t.beta_hat),
                f(t.lambda1_hat),
                f(t.lambda2_hat)
            );
        }
    }
    let g = &r.gof;
    let _ = writeln!(s, "RM {}  RMS {}  MA {}  MDA {}", f(g.rm), f(g.rms), f(g.ma), f(g.mda));
    if let Some(c) = &r.diagnostics.jump_chart {
        let _ = writeln!(s, "jump chart +-{}  violations at {:?}", f(c.upper), c.violations);
    }
    s
}

pub fn run(a: Args) -> Result<()> {
    let report = build(&a)?;
    let out = match a.format {
        Format::Json => to_json(&report)?,
        Format::Text => text(&report),
        Format::Csv => bail!("fit reports are available as json or text"),
    };
    emit(a.out.as_deref(), &out)
}
