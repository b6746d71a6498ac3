//! Series ingestion and the embedded Swedish population-increase data.

use crate::error::{Error, Result};
use crate::series::IntSeries;

/// Annual Swedish population increases per thousand, 1750 to 1849.
pub const SWEDISH_POPULATION: [i64; 100] = [
    9, 12, 8, 12, 10, 10, 8, 2, 0, 7, 10, 9, 4, 1, 7, 5, 8, //
    9, 5, 5, 6, 4, -9, -27, 12, 10, 10, 8, 8, 9, 14, 7, 4, 1, //
    1, 2, 6, 7, 7, -2, -1, 7, 12, 10, 10, 4, 9, 10, 9, 5, 4, //
    3, 7, 7, 6, 8, 3, 4, -5, -14, 1, 6, 3, 2, 6, 1, 13, 10, //
    10, 6, 9, 10, 13, 16, 14, 16, 12, 8, 7, 6, 9, 4, 7, 12, 8, //
    14, 11, 5, 5, 5, 10, 11, 11, 9, 12, 13, 8, 6, 10, 13,
];

/// First year covered by [`SWEDISH_POPULATION`].
pub const SWEDISH_FIRST_YEAR: i32 = 1750;

pub fn swedish() -> IntSeries {
    IntSeries::new(SWEDISH_POPULATION.to_vec()).expect("non-empty")
}

/// Resolves a `builtin:<name>` dataset id.
pub fn builtin(id: &str) -> Option<IntSeries> {
    match id.strip_prefix("builtin:")? {
        "swedish" => Some(swedish()),
        _ => None,
    }
}

/// Parses one integer per line. Accepts an optional `value` header, blank
/// lines, `#` comment lines, and CRLF endings. Line numbers in errors are 1-based.
pub fn parse_series(text: &str) -> Result<IntSeries> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut values = Vec::new();
    let mut seen_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_data && line.eq_ignore_ascii_case("value") {
            seen_data = true;
            continue;
        }
        seen_data = true;
        let v = line.parse::<i64>().map_err(|_| Error::InputFormat {
            line: idx + 1,
            message: format!("expected an integer, found {line:?}"),
        })?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::InputFormat { line: 0, message: "no observations found".into() });
    }
    IntSeries::new(values)
}
