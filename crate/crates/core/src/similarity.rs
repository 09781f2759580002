//! Distance measures for ranking descriptors.
//!
//! All five metrics accumulate in index-ascending order so results are
//! bit-reproducible across runs and thread counts.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::descriptor::FeatureVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Metric {
    /// `Σ |a - b| / (1 + a + b)`
    #[default]
    D1,
    Euclidean,
    Manhattan,
    /// `Σ |a - b| / (a + b)`, zero where `a + b = 0`
    Canberra,
    /// `½ Σ (a - b)² / (a + b)`, zero where `a + b = 0`
    ChiSquare,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::D1,
        Metric::Euclidean,
        Metric::Manhattan,
        Metric::Canberra,
        Metric::ChiSquare,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Metric::D1 => "d1",
            Metric::Euclidean => "euclidean",
            Metric::Manhattan => "manhattan",
            Metric::Canberra => "canberra",
            Metric::ChiSquare => "chisq",
        }
    }

    /// Distance between two equally long slices. Panics in debug builds on a
    /// length mismatch; use [`distance`] for checked access.
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        let pairs = a.iter().zip(b);
        match self {
            Metric::D1 => pairs
                .map(|(&x, &y)| ((x - y) / (1.0 + (x + y))).abs())
                .sum(),
            Metric::Euclidean => pairs.map(|(&x, &y)| (x - y) * (x - y)).sum::<f64>().sqrt(),
            Metric::Manhattan => pairs.map(|(&x, &y)| (x - y).abs()).sum(),
            Metric::Canberra => pairs
                .map(|(&x, &y)| {
                    let den = x + y;
                    if den == 0.0 {
                        0.0
                    } else {
                        ((x - y) / den).abs()
                    }
                })
                .sum(),
            Metric::ChiSquare => {
                0.5 * pairs
                    .map(|(&x, &y)| {
                        let den = x + y;
                        if den == 0.0 {
                            0.0
                        } else {
                            (x - y) * (x - y) / den
                        }
                    })
                    .sum::<f64>()
            }
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "d1" => Ok(Metric::D1),
            "euclidean" => Ok(Metric::Euclidean),
            "manhattan" => Ok(Metric::Manhattan),
            "canberra" => Ok(Metric::Canberra),
            "chisq" | "chi_square" | "chi-square" => Ok(Metric::ChiSquare),
            other => Err(Error::Config(format!(
                "unknown metric {other:?}; expected d1, euclidean, manhattan, canberra or chisq"
            ))),
        }
    }
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

pub fn distance(a: &FeatureVector, b: &FeatureVector, metric: Metric) -> Result<f64> {
    if a.scheme() != b.scheme() || a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "cannot compare {} ({} values) with {} ({} values)",
            a.scheme(),
            a.len(),
            b.scheme(),
            b.len()
        )));
    }
    Ok(metric.eval(a.values(), b.values()))
}
