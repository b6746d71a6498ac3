use anyhow::{bail, Result};
use clap::ValueEnum;
use stinar::SdlParams;

use crate::output::{fmt_complex, fmt_num};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Query {
    Pmf,
    Cdf,
    Cf,
    Moment,
}

#[derive(clap::Args)]
pub struct Args {
    query: Query,
    #[arg(long, default_value_t = 1.0)]
    mu1: f64,
    #[arg(long, default_value_t = 1.0)]
    mu2: f64,
    /// Support point for pmf/cdf, or the order for moment.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Argument of the characteristic function.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    /// Absolute moment `E|Z|^k` instead of `E Z^k`.
    #[arg(long)]
    abs: bool,
}

pub fn run(a: Args) -> Result<()> {
    let p = SdlParams::new(a.mu1, a.mu2)?;
    let need_k = || a.k.ok_or_else(|| anyhow::anyhow!("--k is required for {:?}", a.query));
    let text = match a.query {
        Query::Pmf => fmt_num(p.pmf(need_k()?)),
        Query::Cdf => fmt_num(p.cdf(need_k()?)),
        Query::Cf => match a.s {
            Some(s) => fmt_complex(p.cf(s)),
            None => bail!("--s is required for cf"),
        },
        Query::Moment => {
            let k = need_k()?;
            let k = u32::try_from(k)
                .map_err(|_| stinar::Error::ParameterDomain(format!("moment order must be non-negative, got {k}")))?;
            fmt_num(if a.abs { p.abs_moment(k)? } else { p.moment(k)? })
        }
    };
    println!("{text}");
    Ok(())
}
