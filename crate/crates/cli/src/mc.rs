use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use stinar::mc::{emit_tables, run_study, McConfig, Parallelism, TableFormat};

use crate::output::{emit, Format};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    /// Full 32-cell design, 5000 replications per cell.
    Full,
    /// Published grid with one replication per cell.
    Smoke,
}

#[derive(clap::Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["config", "preset"])))]
pub struct Args {
    /// TOML study configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Seed for a preset; overrides the seed of a config file.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; overrides the configured parallelism.
    #[arg(long)]
    threads: Option<usize>,
    /// Directory receiving `mc_tables.csv` and `mc_tables.txt`. Without it the
    /// tables are printed in `--format`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

pub fn run(a: Args) -> Result<()> {
    let mut cfg = match (&a.config, a.preset) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            McConfig::from_toml_str(&text)?
        }
        (None, Some(Preset::Full)) => McConfig::full_study(a.seed.unwrap_or(1)),
        (None, Some(Preset::Smoke)) => McConfig::smoke(a.seed.unwrap_or(1)),
        (None, None) => unreachable!("clap requires a source"),
    };
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    if let Some(t) = a.threads {
        cfg.parallelism = Parallelism::Threads(t);
    }
    cfg.validate()?;
    let report = run_study(&cfg)?;
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            emit(Some(&dir.join("mc_tables.csv")), &emit_tables(&report, TableFormat::Csv)?)?;
            emit(Some(&dir.join("mc_tables.txt")), &emit_tables(&report, TableFormat::Text)?)
        }
        None => match a.format {
            Format::Csv => emit(None, &emit_tables(&report, TableFormat::Csv)?),
            Format::Text => emit(None, &emit_tables(&report, TableFormat::Text)?),
            Format::Json => bail!("mc tables are available as csv or text"),
        },
    }
}
