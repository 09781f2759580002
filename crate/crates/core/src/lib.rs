//! Content-based image retrieval with a combined color and texture descriptor.
//!
//! The color half quantizes hue and votes with saturation (and the reverse);
//! the texture half computes a 6-bit diagonally symmetric co-occurrence
//! pattern per pixel of the value channel and summarizes the pattern map with
//! a 16-level co-occurrence matrix. Descriptors are ranked by exhaustive scan
//! under one of five distance measures and scored with precision/recall.

pub mod color;
pub mod descriptor;
pub mod error;
pub mod evaluation;
pub mod imaging;
pub mod index_store;
pub mod retrieval;
pub mod similarity;
pub mod synthetic;
pub mod texture;

pub use descriptor::{extract_feature, extract_from_hsv, FeatureVector, QuantizationScheme};
pub use error::{Error, Result};
pub use evaluation::{evaluate_all, precision_recall, sweep_curves, CurveData, EvalReport};
pub use imaging::{decode_image, rgb_to_hsv, HsvImage, Plane, RgbImage};
pub use index_store::{
    build_index, ingest_dataset, load_index, save_index, FeatureIndex, LabeledImage, Record,
};
pub use retrieval::{query, query_with, Hit, QueryOptions, RankedResult};
pub use similarity::{distance, Metric};
