//! Final feature assembly: `[hue-voted ‖ saturation-voted ‖ GLCM]`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::color::color_feature;
use crate::error::{Error, Result};
use crate::imaging::{rgb_to_hsv, HsvImage, RgbImage};
use crate::texture::{texture_feature, GLCM_LEN};

/// Hue and saturation bin counts; the texture block is always 256 long.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantizationScheme {
    k_bins: usize,
    l_bins: usize,
}

impl QuantizationScheme {
    /// The six hue/saturation combinations evaluated in the reference experiments.
    pub const STANDARD: [QuantizationScheme; 6] = [
        Self::new_unchecked(18, 10),
        Self::new_unchecked(18, 20),
        Self::new_unchecked(36, 10),
        Self::new_unchecked(36, 20),
        Self::new_unchecked(72, 10),
        Self::new_unchecked(72, 20),
    ];

    pub fn new(k_bins: usize, l_bins: usize) -> Result<Self> {
        if k_bins == 0 || l_bins == 0 {
            return Err(Error::Config(format!(
                "bin counts must be positive, got ({k_bins},{l_bins})"
            )));
        }
        Ok(Self { k_bins, l_bins })
    }

    const fn new_unchecked(k_bins: usize, l_bins: usize) -> Self {
        Self { k_bins, l_bins }
    }

    pub fn k_bins(&self) -> usize {
        self.k_bins
    }

    pub fn l_bins(&self) -> usize {
        self.l_bins
    }

    pub fn texture_len(&self) -> usize {
        GLCM_LEN
    }

    pub fn feature_len(&self) -> usize {
        self.k_bins + self.l_bins + GLCM_LEN
    }

    pub fn is_standard(&self) -> bool {
        Self::STANDARD.contains(self)
    }
}

impl Default for QuantizationScheme {
    fn default() -> Self {
        Self::new_unchecked(18, 10)
    }
}

impl fmt::Display for QuantizationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HSV({},{},{})", self.k_bins, self.l_bins, GLCM_LEN)
    }
}

/// Accepts either `K,L` or `HSV(K,L,256)`.
impl FromStr for QuantizationScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Config(format!(
                "cannot parse scheme {s:?}; expected K,L or HSV(K,L,256)"
            ))
        };
        let trimmed = s.trim();
        let inner = match trimmed.strip_prefix("HSV(") {
            Some(rest) => rest.strip_suffix(')').ok_or_else(bad)?,
            None => trimmed,
        };
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let parse = |p: &str| p.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            [k, l] => Self::new(parse(k)?, parse(l)?),
            [k, l, t] if trimmed.starts_with("HSV(") => {
                if parse(t)? != GLCM_LEN {
                    return Err(Error::Config(format!(
                        "texture length must be {GLCM_LEN}, got {t}"
                    )));
                }
                Self::new(parse(k)?, parse(l)?)
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for QuantizationScheme {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A complete descriptor tagged with the scheme that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    values: Vec<f64>,
    scheme: QuantizationScheme,
}

impl FeatureVector {
    pub fn new(values: Vec<f64>, scheme: QuantizationScheme) -> Result<Self> {
        if values.len() != scheme.feature_len() {
            return Err(Error::Dimension(format!(
                "{} values for scheme {scheme} (expected {})",
                values.len(),
                scheme.feature_len()
            )));
        }
        Ok(Self { values, scheme })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn scheme(&self) -> QuantizationScheme {
        self.scheme
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn hue_block(&self) -> &[f64] {
        &self.values[..self.scheme.k_bins]
    }

    pub fn saturation_block(&self) -> &[f64] {
        &self.values[self.scheme.k_bins..self.scheme.k_bins + self.scheme.l_bins]
    }

    pub fn texture_block(&self) -> &[f64] {
        &self.values[self.scheme.k_bins + self.scheme.l_bins..]
    }
}

pub fn extract_feature(img: &RgbImage, scheme: QuantizationScheme) -> Result<FeatureVector> {
    extract_from_hsv(&rgb_to_hsv(img), scheme)
}

pub fn extract_from_hsv(hsv: &HsvImage, scheme: QuantizationScheme) -> Result<FeatureVector> {
    let mut values = color_feature(hsv, scheme.k_bins, scheme.l_bins)?;
    values.extend(texture_feature(&hsv.v)?);
    FeatureVector::new(values, scheme)
}
