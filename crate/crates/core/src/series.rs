use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Non-empty ordered sequence of signed integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntSeries(Vec<i64>);

impl IntSeries {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DegenerateSeries("series must hold at least one value".into()));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().map(|&v| v as f64).sum::<f64>() / self.0.len() as f64
    }

    /// Series with every value negated.
    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|v| -v).collect())
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl TryFrom<Vec<i64>> for IntSeries {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<IntSeries> for Vec<i64> {
    fn from(s: IntSeries) -> Self {
        s.0
    }
}

impl AsRef<[i64]> for IntSeries {
    fn as_ref(&self) -> &[i64] {
        &self.0
    }
}
