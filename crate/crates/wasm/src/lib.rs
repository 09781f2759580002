//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Images cross the boundary as interleaved RGBA bytes, the layout of
//! `ImageData.data` on a canvas.

use cbir::color::{hue_voted_histogram, saturation_voted_histogram};
use cbir::index_store::{FeatureIndex, Record};
use cbir::synthetic::{corpus, SyntheticClass};
use cbir::texture::{dscop_map, glcm, GLCM_LEVELS};
use cbir::{extract_feature, query, rgb_to_hsv, Metric, QuantizationScheme, RgbImage};
use wasm_bindgen::prelude::*;

fn js_err(e: cbir::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn to_rgba(img: &RgbImage) -> Vec<u8> {
    img.pixels()
        .iter()
        .flat_map(|&[r, g, b]| [r, g, b, 255])
        .collect()
}

/// RGBA pixels of one synthetic image from class `class` of `classes`.
#[wasm_bindgen]
pub fn synthetic_image(class: usize, classes: usize, size: usize, seed: u32) -> Vec<u8> {
    to_rgba(&SyntheticClass::nth(class, classes).render(size.max(3), u64::from(seed)))
}

/// DSCoP codes of the value channel as an RGBA image two pixels smaller in
/// each direction; codes 0..63 are stretched to gray levels 0..252.
#[wasm_bindgen]
pub fn dscop_view(rgba: &[u8], width: usize, height: usize) -> Result<Vec<u8>, JsValue> {
    let img = RgbImage::from_rgba(width, height, rgba).map_err(js_err)?;
    let map = dscop_map(&rgb_to_hsv(&img).v).map_err(js_err)?;
    Ok(map
        .codes()
        .iter()
        .flat_map(|&c| {
            let g = c * 4;
            [g, g, g, 255]
        })
        .collect())
}

/// Raw 16x16 co-occurrence counts of the quantized DSCoP map, row-major.
#[wasm_bindgen]
pub fn glcm_counts(rgba: &[u8], width: usize, height: usize) -> Result<Vec<u32>, JsValue> {
    let img = RgbImage::from_rgba(width, height, rgba).map_err(js_err)?;
    let map = dscop_map(&rgb_to_hsv(&img).v).map_err(js_err)?;
    let g = glcm(&map).map_err(js_err)?;
    debug_assert_eq!(g.counts().len(), GLCM_LEVELS * GLCM_LEVELS);
    Ok(g.counts().to_vec())
}

/// Hue-voted (K bins) followed by saturation-voted (L bins) histogram,
/// each L1-normalized.
#[wasm_bindgen]
pub fn voting_histograms(
    rgba: &[u8],
    width: usize,
    height: usize,
    k_bins: usize,
    l_bins: usize,
) -> Result<Vec<f64>, JsValue> {
    let img = RgbImage::from_rgba(width, height, rgba).map_err(js_err)?;
    let hsv = rgb_to_hsv(&img);
    let mut out = hue_voted_histogram(&hsv, k_bins)
        .map_err(js_err)?
        .l1_normalized()
        .into_bins();
    out.extend(
        saturation_voted_histogram(&hsv, l_bins)
            .map_err(js_err)?
            .l1_normalized()
            .into_bins(),
    );
    Ok(out)
}

/// A generated, labeled image collection indexed under one scheme.
#[wasm_bindgen]
pub struct Gallery {
    images: Vec<RgbImage>,
    index: FeatureIndex,
}

#[wasm_bindgen]
impl Gallery {
    #[wasm_bindgen(constructor)]
    pub fn new(
        classes: usize,
        per_class: usize,
        size: usize,
        seed: u32,
        k_bins: usize,
        l_bins: usize,
    ) -> Result<Gallery, JsValue> {
        let scheme = QuantizationScheme::new(k_bins, l_bins).map_err(js_err)?;
        let generated = corpus(
            classes.max(1),
            per_class.max(1),
            size.max(3),
            u64::from(seed),
        );
        let mut images = Vec::with_capacity(generated.len());
        let mut records = Vec::with_capacity(generated.len());
        for (i, g) in generated.into_iter().enumerate() {
            records.push(Record {
                id: format!("{i:04}"),
                label: g.label,
                feature: extract_feature(&g.image, scheme).map_err(js_err)?,
            });
            images.push(g.image);
        }
        let index = FeatureIndex::from_records(scheme, Metric::D1, records).map_err(js_err)?;
        Ok(Gallery { images, index })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn size(&self) -> usize {
        self.images.first().map(RgbImage::width).unwrap_or(0)
    }

    pub fn image(&self, i: usize) -> Vec<u8> {
        self.images.get(i).map(to_rgba).unwrap_or_default()
    }

    pub fn label(&self, i: usize) -> String {
        self.index
            .records()
            .get(i)
            .map(|r| r.label.clone())
            .unwrap_or_default()
    }

    pub fn feature(&self, i: usize) -> Vec<f64> {
        self.index
            .records()
            .get(i)
            .map(|r| r.feature.values().to_vec())
            .unwrap_or_default()
    }

    /// Gallery positions of the `n` nearest images to image `i`.
    pub fn rank(&self, i: usize, metric: &str, n: usize) -> Result<Vec<u32>, JsValue> {
        let hits = self.ranked(i, metric, n)?;
        Ok(hits.iter().map(|h| h.0).collect())
    }

    /// Distances matching [`Gallery::rank`].
    pub fn distances(&self, i: usize, metric: &str, n: usize) -> Result<Vec<f64>, JsValue> {
        let hits = self.ranked(i, metric, n)?;
        Ok(hits.iter().map(|h| h.1).collect())
    }

    /// Precision of the top `n` results for image `i` (fraction sharing its label).
    pub fn precision(&self, i: usize, metric: &str, n: usize) -> Result<f64, JsValue> {
        let hits = self.ranked(i, metric, n)?;
        let label = self.label(i);
        let correct = hits
            .iter()
            .filter(|h| self.label(h.0 as usize) == label)
            .count();
        Ok(correct as f64 / hits.len().max(1) as f64)
    }
}

impl Gallery {
    fn ranked(&self, i: usize, metric: &str, n: usize) -> Result<Vec<(u32, f64)>, JsValue> {
        let metric: Metric = metric.parse().map_err(js_err)?;
        let record = self
            .index
            .records()
            .get(i)
            .ok_or_else(|| JsValue::from_str("image index out of range"))?;
        let result = query(&self.index, &record.feature, metric, n.max(1)).map_err(js_err)?;
        Ok(result
            .hits
            .iter()
            .map(|h| (h.id.parse::<u32>().unwrap_or(0), h.distance))
            .collect())
    }
}
