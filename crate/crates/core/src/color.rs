//! Inter-channel voting histograms.
//!
//! Bins are defined by quantizing one channel while the vote mass comes from
//! the other: hue bins accumulate saturation, saturation bins accumulate hue.

use crate::error::{Error, Result};
use crate::imaging::{HsvImage, Plane};

/// Accumulated vote mass per bin.
#[derive(Debug, Clone, PartialEq)]
pub struct VotingHistogram {
    bins: Vec<f64>,
}

impl VotingHistogram {
    pub fn bins(&self) -> &[f64] {
        &self.bins
    }

    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    pub fn mass(&self) -> f64 {
        self.bins.iter().sum()
    }

    pub fn into_bins(self) -> Vec<f64> {
        self.bins
    }

    /// Divides every bin by the total mass. A zero histogram stays zero.
    pub fn l1_normalized(mut self) -> Self {
        l1_normalize(&mut self.bins);
        self
    }
}

/// Half-open bins `[i/n, (i+1)/n)`, with 1.0 folded into the last bin.
#[inline]
pub fn bin_index(x: f64, bins: usize) -> usize {
    ((x * bins as f64) as usize).min(bins - 1)
}

/// In-place L1 normalization; leaves an all-zero slice untouched.
pub fn l1_normalize(values: &mut [f64]) {
    let mass: f64 = values.iter().sum();
    if mass > 0.0 {
        values.iter_mut().for_each(|v| *v /= mass);
    }
}

fn voting_histogram(binned: &Plane, votes: &Plane, bins: usize) -> Result<VotingHistogram> {
    if bins == 0 {
        return Err(Error::Config("histogram bin count must be positive".into()));
    }
    let mut hist = vec![0.0; bins];
    for (&b, &w) in binned.data().iter().zip(votes.data()) {
        hist[bin_index(b, bins)] += w;
    }
    Ok(VotingHistogram { bins: hist })
}

/// Hue quantized into `k_bins`, each pixel voting with its saturation.
pub fn hue_voted_histogram(img: &HsvImage, k_bins: usize) -> Result<VotingHistogram> {
    voting_histogram(&img.h, &img.s, k_bins)
}

/// Saturation quantized into `l_bins`, each pixel voting with its hue.
pub fn saturation_voted_histogram(img: &HsvImage, l_bins: usize) -> Result<VotingHistogram> {
    voting_histogram(&img.s, &img.h, l_bins)
}

/// `[hue-voted ‖ saturation-voted]`, each half L1-normalized on its own.
pub fn color_feature(img: &HsvImage, k_bins: usize, l_bins: usize) -> Result<Vec<f64>> {
    let mut out = hue_voted_histogram(img, k_bins)?
        .l1_normalized()
        .into_bins();
    out.extend(
        saturation_voted_histogram(img, l_bins)?
            .l1_normalized()
            .into_bins(),
    );
    Ok(out)
}
