use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rounds to 10 significant digits.
pub fn sig10(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.9e}").parse().expect("formatted float parses")
}

/// Shortest decimal text of `v` at 10 significant digits, e.g. `63` or `0.1428571429`.
pub fn fmt_num(v: f64) -> String {
    let r = sig10(v);
    if r == 0.0 {
        return "0".into();
    }
    let mag = r.abs();
    if (1e-6..1e15).contains(&mag) {
        r.to_string()
    } else {
        format!("{r:e}")
    }
}

/// `a+bi` / `a-bi` with both parts at 10 significant digits.
pub fn fmt_complex(z: Complex64) -> String {
    let im = sig10(z.im);
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", fmt_num(z.re), fmt_num(im.abs()))
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(sig10).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to 10 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_floats(&mut v);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

/// Writes to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
