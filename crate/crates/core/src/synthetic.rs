//! Procedurally generated, class-structured image corpora.
//!
//! Each class has its own dominant hue and its own stripe frequency and
//! orientation; images within a class differ by phase, small hue offsets
//! and pixel noise. Used for end-to-end checks and the demo page.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::imaging::RgbImage;

/// Inverse hexcone conversion, all components in [0, 1].
pub fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [u8; 3] {
    let h6 = (h.rem_euclid(1.0)) * 6.0;
    let sector = (h6.floor() as usize) % 6;
    let f = h6 - h6.floor();
    let (p, q, t) = (v * (1.0 - s), v * (1.0 - s * f), v * (1.0 - s * (1.0 - f)));
    let (r, g, b) = match sector {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    let to_u8 = |x: f64| (x.clamp(0.0, 1.0) * 255.0).round() as u8;
    [to_u8(r), to_u8(g), to_u8(b)]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticClass {
    /// Dominant hue in [0, 1).
    pub hue: f64,
    /// Stripe cycles across the image side.
    pub frequency: f64,
    /// Stripe direction in radians.
    pub orientation: f64,
    pub saturation: f64,
}

impl SyntheticClass {
    /// The `index`-th of `count` mutually distinct classes.
    pub fn nth(index: usize, count: usize) -> Self {
        let count = count.max(1);
        Self {
            hue: (index as f64 + 0.5) / count as f64,
            frequency: 2.0 + 2.5 * (index % 5) as f64,
            orientation: PI * ((index * 7) % count) as f64 / count as f64,
            saturation: 0.45 + 0.4 * ((index % 3) as f64 / 2.0),
        }
    }

    pub fn render(&self, size: usize, seed: u64) -> RgbImage {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phase = rng.random_range(0.0..2.0 * PI);
        let hue_offset = rng.random_range(-0.01..0.01);
        let (dx, dy) = (self.orientation.cos(), self.orientation.sin());
        let omega = 2.0 * PI * self.frequency / size as f64;
        RgbImage::from_fn(size, size, |x, y| {
            let t = omega * (x as f64 * dx + y as f64 * dy) + phase;
            let v = 0.55 + 0.3 * t.sin() + rng.random_range(-0.04..0.04);
            let s = self.saturation + rng.random_range(-0.08..0.08);
            let h = self.hue + hue_offset + rng.random_range(-0.01..0.01);
            hsv_to_rgb(h, s.clamp(0.0, 1.0), v.clamp(0.0, 1.0))
        })
        .expect("synthetic images are at least 3x3")
    }
}

/// One generated image with its class label.
#[derive(Debug, Clone)]
pub struct SyntheticImage {
    pub label: String,
    pub name: String,
    pub image: RgbImage,
}

/// `classes × per_class` square images of side `size`, labels `class00`, ...
pub fn corpus(classes: usize, per_class: usize, size: usize, seed: u64) -> Vec<SyntheticImage> {
    let mut out = Vec::with_capacity(classes * per_class);
    for c in 0..classes {
        let class = SyntheticClass::nth(c, classes);
        for i in 0..per_class {
            let image_seed = seed
                .wrapping_mul(1_000_003)
                .wrapping_add((c * 10_007 + i) as u64);
            out.push(SyntheticImage {
                label: format!("class{c:02}"),
                name: format!("{i:03}.png"),
                image: class.render(size, image_seed),
            });
        }
    }
    out
}

pub fn save_png(image: &RgbImage, path: &Path) -> Result<()> {
    let raw: Vec<u8> = image.pixels().iter().flatten().copied().collect();
    image::save_buffer(
        path,
        &raw,
        image.width() as u32,
        image.height() as u32,
        image::ExtendedColorType::Rgb8,
    )
    .map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

/// Writes a corpus as `root/<label>/<name>` PNG files.
pub fn write_corpus(root: &Path, images: &[SyntheticImage]) -> Result<()> {
    for img in images {
        let dir = root.join(&img.label);
        fs::create_dir_all(&dir)?;
        save_png(&img.image, &dir.join(&img.name))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imaging::pixel_to_hsv;

    #[test]
    fn hsv_round_trip() {
        for &(h, s, v) in &[
            (0.0, 1.0, 1.0),
            (0.5, 1.0, 1.0),
            (0.25, 0.5, 0.8),
            (0.9, 0.3, 0.6),
        ] {
            let (h2, s2, v2) = pixel_to_hsv(hsv_to_rgb(h, s, v));
            assert!((h - h2).abs() < 0.01, "{h} {h2}");
            assert!((s - s2).abs() < 0.01);
            assert!((v - v2).abs() < 0.01);
        }
    }

    #[test]
    fn deterministic() {
        let a = corpus(2, 2, 16, 7);
        let b = corpus(2, 2, 16, 7);
        assert_eq!(a.len(), 4);
        assert!(a.iter().zip(&b).all(|(x, y)| x.image == y.image));
        assert_ne!(a[0].image, a[1].image);
    }
}
