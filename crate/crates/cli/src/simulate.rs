use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{anyhow, Result};
use clap::ValueEnum;
use serde::Serialize;
use stinar::process::{simulate_alternating, simulate_nginar, simulate_stinar, simulate_tinar};
use stinar::{IntSeries, RngState, StinarParams, TinarParams};

use crate::output::{emit, fmt_num, to_json, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Stinar,
    Nginar,
    Alternating,
    Tinar,
}

#[derive(clap::Args)]
pub struct Args {
    #[arg(long, value_enum, default_value_t = Variant::Stinar)]
    variant: Variant,
    /// Path length.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: Option<f64>,
    /// Positive-side mean; the chain mean for `nginar`.
    #[arg(long)]
    mu1: Option<f64>,
    #[arg(long)]
    mu2: Option<f64>,
    /// Binomial thinning parameter for `tinar`.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    lambda1: Option<f64>,
    #[arg(long)]
    lambda2: Option<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn req(v: Option<f64>, name: &str, variant: Variant) -> Result<f64> {
    v.ok_or_else(|| anyhow!("--{name} is required for the {variant:?} variant"))
}

#[derive(Serialize)]
struct Simulated<'a> {
    variant: Variant,
    seed: u64,
    n: usize,
    params: BTreeMap<&'a str, f64>,
    values: &'a [i64],
}

pub fn run(a: Args) -> Result<()> {
    let mut rng = RngState::from_seed(a.seed);
    let v = a.variant;
    let (params, z): (Vec<(&str, f64)>, IntSeries) = match v {
        Variant::Stinar | Variant::Alternating => {
            let p = StinarParams::new(req(a.alpha, "alpha", v)?, req(a.mu1, "mu1", v)?, req(a.mu2, "mu2", v)?)?;
            let z = if v == Variant::Stinar {
                simulate_stinar(&p, a.n, &mut rng)?
            } else {
                simulate_alternating(&p, a.n, &mut rng)?
            };
            (vec![("alpha", p.alpha()), ("mu1", p.mu1()), ("mu2", p.mu2())], z)
        }
        Variant::Nginar => {
            let (alpha, mu) = (req(a.alpha, "alpha", v)?, req(a.mu1, "mu1", v)?);
            (vec![("alpha", alpha), ("mu", mu)], simulate_nginar(mu, alpha, a.n, &mut rng)?)
        }
        Variant::Tinar => {
            let p = TinarParams::new(
                req(a.beta, "beta", v)?,
                req(a.lambda1, "lambda1", v)?,
                req(a.lambda2, "lambda2", v)?,
            )?;
            (
                vec![("beta", p.beta()), ("lambda1", p.lambda1()), ("lambda2", p.lambda2())],
                simulate_tinar(&p, a.n, &mut rng)?,
            )
        }
    };
    let text = match a.format {
        Format::Json => to_json(&Simulated {
            variant: v,
            seed: a.seed,
            n: a.n,
            params: params.iter().copied().collect(),
            values: z.values(),
        })?,
        Format::Csv | Format::Text => {
            let meta: Vec<String> = params.iter().map(|(k, x)| format!("{k}={}", fmt_num(*x))).collect();
            let mut s = format!(
                "# variant={} seed={} n={} {}\nvalue\n",
                format!("{v:?}").to_lowercase(),
                a.seed,
                a.n,
                meta.join(" ")
            );
            for x in z.values() {
                s.push_str(&x.to_string());
                s.push('\n');
            }
            s
        }
    };
    emit(a.out.as_deref(), &text)
}
