//! Image decoding and RGB to HSV conversion.
//!
//! Everything downstream works on [`HsvImage`]: the color branch reads the hue
//! and saturation planes, the texture branch reads the value plane.

use std::path::Path;

use image::ImageReader;

use crate::error::{Error, Result};

/// Smallest side length that still has one interior pixel for a 3x3 window.
pub const MIN_SIDE: usize = 3;

/// 8-bit RGB raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        if width < MIN_SIDE || height < MIN_SIDE {
            return Err(Error::TooSmall { width, height });
        }
        if pixels.len() != width * height {
            return Err(Error::Dimension(format!(
                "{} pixels supplied for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image from interleaved RGBA bytes (as produced by a canvas),
    /// dropping alpha.
    pub fn from_rgba(width: usize, height: usize, rgba: &[u8]) -> Result<Self> {
        if rgba.len() != width * height * 4 {
            return Err(Error::Dimension(format!(
                "{} RGBA bytes supplied for a {width}x{height} image",
                rgba.len()
            )));
        }
        let pixels = rgba.chunks_exact(4).map(|p| [p[0], p[1], p[2]]).collect();
        Self::new(width, height, pixels)
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [u8; 3],
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }
}

/// A single real-valued channel, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Plane {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != width * height {
            return Err(Error::Dimension(format!(
                "{} values supplied for a {width}x{height} plane",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }
}

/// Hue, saturation and value planes, each in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct HsvImage {
    pub h: Plane,
    pub s: Plane,
    pub v: Plane,
}

impl HsvImage {
    /// Assembles an HSV image from three equally sized planes whose values
    /// all lie in [0, 1].
    pub fn from_planes(h: Plane, s: Plane, v: Plane) -> Result<Self> {
        let dims = (h.width, h.height);
        if (s.width, s.height) != dims || (v.width, v.height) != dims {
            return Err(Error::Dimension("HSV planes differ in size".into()));
        }
        for (name, plane) in [("hue", &h), ("saturation", &s), ("value", &v)] {
            if let Some(bad) = plane.data.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                return Err(Error::Config(format!("{name} value {bad} outside [0, 1]")));
            }
        }
        Ok(Self { h, s, v })
    }

    pub fn width(&self) -> usize {
        self.h.width
    }

    pub fn height(&self) -> usize {
        self.h.height
    }
}

/// Reads a raster file and reduces it to 8-bit RGB. Grayscale sources have
/// their single channel replicated, alpha is dropped, 16-bit samples are
/// scaled down.
pub fn decode_image(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    let decode_err = |reason: String| Error::Decode {
        path: path.to_path_buf(),
        reason,
    };
    let reader = ImageReader::open(path)
        .map_err(|e| decode_err(e.to_string()))?
        .with_guessed_format()
        .map_err(|e| decode_err(e.to_string()))?;
    let decoded = reader.decode().map_err(|e| decode_err(e.to_string()))?;
    let rgb = decoded.to_rgb8();
    let (width, height) = (rgb.width() as usize, rgb.height() as usize);
    if width < MIN_SIDE || height < MIN_SIDE {
        return Err(decode_err(format!(
            "image too small: {width}x{height} (minimum 3x3)"
        )));
    }
    let pixels = rgb.pixels().map(|p| p.0).collect();
    RgbImage::new(width, height, pixels)
}

/// Hexcone HSV for one pixel, hue scaled to [0, 1). Achromatic pixels get hue 0.
pub fn pixel_to_hsv([r, g, b]: [u8; 3]) -> (f64, f64, f64) {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let v = f64::from(max) / 255.0;
    if max == min {
        return (0.0, 0.0, v);
    }
    let chroma = f64::from(max - min);
    let s = chroma / f64::from(max);
    let (r, g, b) = (f64::from(r), f64::from(g), f64::from(b));
    let sector = if max as f64 == r {
        let x = (g - b) / chroma;
        if x < 0.0 {
            x + 6.0
        } else {
            x
        }
    } else if max as f64 == g {
        (b - r) / chroma + 2.0
    } else {
        (r - g) / chroma + 4.0
    };
    let h = sector / 6.0;
    (if h >= 1.0 { 0.0 } else { h }, s, v)
}

pub fn rgb_to_hsv(img: &RgbImage) -> HsvImage {
    let n = img.pixels.len();
    let (mut h, mut s, mut v) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    for &p in &img.pixels {
        let (ph, ps, pv) = pixel_to_hsv(p);
        h.push(ph);
        s.push(ps);
        v.push(pv);
    }
    let plane = |data| Plane {
        width: img.width,
        height: img.height,
        data,
    };
    HsvImage {
        h: plane(h),
        s: plane(s),
        v: plane(v),
    }
}
