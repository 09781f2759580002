//! Texture branch: diagonally symmetric co-occurrence patterns (DSCoP), the
//! co-occurrence matrix of the quantized pattern map, and a plain LBP
//! baseline.
//!
//! Neighbors of a 3x3 window are numbered k = 1..8 counter-clockwise from the
//! top-center pixel:
//!
//! ```text
//!   2  1  8
//!   3  c  7
//!   4  5  6
//! ```
//!
//! Under this numbering `(12 - k) mod 8` for k in {1, 7, 8} is the mirror of
//! neighbor k about the principal (top-left to bottom-right) diagonal, and
//! `8 - k` for k in {1, 2, 3} is its mirror about the counter diagonal.

use crate::color::l1_normalize;
use crate::error::{Error, Result};
use crate::imaging::{Plane, MIN_SIDE};

/// Number of DSCoP codes (6 bits).
pub const DSCOP_CODES: usize = 64;
/// Gray levels the DSCoP map is quantized to before co-occurrence counting.
pub const GLCM_LEVELS: usize = 16;
/// Length of the flattened co-occurrence matrix.
pub const GLCM_LEN: usize = GLCM_LEVELS * GLCM_LEVELS;

/// (row, col) of neighbor k = 1..8, stored at index k - 1.
pub const NEIGHBOR_OFFSETS: [(usize, usize); 8] = [
    (0, 1),
    (0, 0),
    (1, 0),
    (2, 0),
    (2, 1),
    (2, 2),
    (1, 2),
    (0, 2),
];

const fn principal_mirror(k: usize) -> usize {
    (12 - k) % 8
}

const fn counter_mirror(k: usize) -> usize {
    8 - k
}

/// The six mirrored neighbor pairs, 1-based, in bit order (MSB first).
pub const DSCOP_PAIRS: [(usize, usize); 6] = [
    (1, principal_mirror(1)),
    (7, principal_mirror(7)),
    (8, principal_mirror(8)),
    (1, counter_mirror(1)),
    (2, counter_mirror(2)),
    (3, counter_mirror(3)),
];

/// A 3x3 neighborhood: center value plus neighbors 1..8 (index k - 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window3x3 {
    pub center: f64,
    pub neighbors: [f64; 8],
}

impl Window3x3 {
    /// Window centred on the interior pixel `(x, y)`.
    #[inline]
    pub fn at(plane: &Plane, x: usize, y: usize) -> Self {
        let mut neighbors = [0.0; 8];
        for (n, &(r, c)) in neighbors.iter_mut().zip(&NEIGHBOR_OFFSETS) {
            *n = plane.get(x + c - 1, y + r - 1);
        }
        Self {
            center: plane.get(x, y),
            neighbors,
        }
    }

    /// Builds a window from a row-major 3x3 grid.
    pub fn from_grid(grid: [[f64; 3]; 3]) -> Self {
        let mut neighbors = [0.0; 8];
        for (n, &(r, c)) in neighbors.iter_mut().zip(&NEIGHBOR_OFFSETS) {
            *n = grid[r][c];
        }
        Self {
            center: grid[1][1],
            neighbors,
        }
    }

    pub fn to_grid(&self) -> [[f64; 3]; 3] {
        let mut grid = [[self.center; 3]; 3];
        for (&n, &(r, c)) in self.neighbors.iter().zip(&NEIGHBOR_OFFSETS) {
            grid[r][c] = n;
        }
        grid
    }
}

/// Sign agreement of two center differences; a zero difference agrees with
/// anything, matching `a * b >= 0` without the risk of underflow.
#[inline]
fn same_sign(a: f64, b: f64) -> bool {
    (a >= 0.0 && b >= 0.0) || (a <= 0.0 && b <= 0.0)
}

/// 6-bit DSCoP code of one window.
pub fn dscop_code(w: &Window3x3) -> u8 {
    let diff = |k: usize| w.neighbors[k - 1] - w.center;
    DSCOP_PAIRS.iter().fold(0u8, |code, &(k, j)| {
        (code << 1) | u8::from(same_sign(diff(k), diff(j)))
    })
}

/// Per-pixel DSCoP codes over the interior of a plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DscopMap {
    width: usize,
    height: usize,
    codes: Vec<u8>,
}

impl DscopMap {
    pub fn new(width: usize, height: usize, codes: Vec<u8>) -> Result<Self> {
        if codes.len() != width * height {
            return Err(Error::Dimension(format!(
                "{} codes supplied for a {width}x{height} map",
                codes.len()
            )));
        }
        if let Some(bad) = codes.iter().find(|&&c| c as usize >= DSCOP_CODES) {
            return Err(Error::Config(format!(
                "DSCoP code {bad} out of range 0..=63"
            )));
        }
        Ok(Self {
            width,
            height,
            codes,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn codes(&self) -> &[u8] {
        &self.codes
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.codes[y * self.width + x]
    }
}

fn check_size(plane: &Plane) -> Result<()> {
    if plane.width() < MIN_SIDE || plane.height() < MIN_SIDE {
        return Err(Error::TooSmall {
            width: plane.width(),
            height: plane.height(),
        });
    }
    Ok(())
}

/// DSCoP codes for every interior pixel; the map is two pixels smaller than
/// the plane in each direction.
pub fn dscop_map(channel: &Plane) -> Result<DscopMap> {
    check_size(channel)?;
    let (w, h) = (channel.width() - 2, channel.height() - 2);
    let mut codes = Vec::with_capacity(w * h);
    for y in 1..=h {
        for x in 1..=w {
            codes.push(dscop_code(&Window3x3::at(channel, x, y)));
        }
    }
    Ok(DscopMap {
        width: w,
        height: h,
        codes,
    })
}

/// Quantizes a 6-bit code to one of the 16 co-occurrence levels.
#[inline]
pub const fn glcm_level(code: u8) -> usize {
    (code / 4) as usize
}

/// Displacement from the reference pixel to its partner in a co-occurring pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlcmOffset {
    pub dx: isize,
    pub dy: isize,
}

impl GlcmOffset {
    /// Distance 1 in the 0° direction: the partner is the right-hand neighbor.
    pub const HORIZONTAL: Self = Self { dx: 1, dy: 0 };

    /// Offset for a distance and one of the four standard angles (0, 45, 90,
    /// 135 degrees, measured counter-clockwise with rows growing downward).
    pub fn from_angle(distance: usize, degrees: u32) -> Result<Self> {
        let d = distance as isize;
        if d == 0 {
            return Err(Error::Config(
                "co-occurrence distance must be positive".into(),
            ));
        }
        let (dx, dy) = match degrees {
            0 => (d, 0),
            45 => (d, -d),
            90 => (0, -d),
            135 => (-d, -d),
            other => {
                return Err(Error::Config(format!(
                    "co-occurrence angle {other} not one of 0, 45, 90, 135"
                )))
            }
        };
        Ok(Self { dx, dy })
    }
}

impl Default for GlcmOffset {
    fn default() -> Self {
        Self::HORIZONTAL
    }
}

/// 16x16 ordered co-occurrence counts, row = reference level, column = partner level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlcmVector {
    counts: [u32; GLCM_LEN],
}

impl GlcmVector {
    pub fn counts(&self) -> &[u32; GLCM_LEN] {
        &self.counts
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.counts[row * GLCM_LEVELS + col]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn to_normalized(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.counts.iter().map(|&c| f64::from(c)).collect();
        l1_normalize(&mut v);
        v
    }
}

/// Co-occurrence matrix of the quantized map at distance 1, 0°.
pub fn glcm(map: &DscopMap) -> Result<GlcmVector> {
    glcm_with_offset(map, GlcmOffset::HORIZONTAL)
}

pub fn glcm_with_offset(map: &DscopMap, offset: GlcmOffset) -> Result<GlcmVector> {
    let (w, h) = (map.width as isize, map.height as isize);
    let (adx, ady) = (offset.dx.abs(), offset.dy.abs());
    if adx >= w || ady >= h {
        return Err(Error::TooSmall {
            width: map.width,
            height: map.height,
        });
    }
    // reference pixels whose partner stays inside the map
    let xs = (-offset.dx).max(0)..w - offset.dx.max(0);
    let ys = (-offset.dy).max(0)..h - offset.dy.max(0);
    let mut counts = [0u32; GLCM_LEN];
    for y in ys {
        let row = &map.codes[(y * w) as usize..((y + 1) * w) as usize];
        let partner_row =
            &map.codes[((y + offset.dy) * w) as usize..((y + offset.dy + 1) * w) as usize];
        for x in xs.clone() {
            let a = glcm_level(row[x as usize]);
            let b = glcm_level(partner_row[(x + offset.dx) as usize]);
            counts[a * GLCM_LEVELS + b] += 1;
        }
    }
    Ok(GlcmVector { counts })
}

/// L1-normalized 256-entry GLCM of the DSCoP map of `v_channel`.
pub fn texture_feature(v_channel: &Plane) -> Result<Vec<f64>> {
    Ok(glcm(&dscop_map(v_channel)?)?.to_normalized())
}

/// 8-bit LBP code: bit k - 1 is set when neighbor k is at least the center.
pub fn lbp_code(w: &Window3x3) -> u8 {
    w.neighbors
        .iter()
        .enumerate()
        .fold(0u8, |code, (i, &n)| code | (u8::from(n >= w.center) << i))
}

/// 256-bin histogram of LBP codes over the interior pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LbpHistogram {
    pub bins: [u32; 256],
}

impl LbpHistogram {
    pub fn total(&self) -> u64 {
        self.bins.iter().map(|&c| u64::from(c)).sum()
    }
}

pub fn lbp_histogram(v_channel: &Plane) -> Result<LbpHistogram> {
    check_size(v_channel)?;
    let mut bins = [0u32; 256];
    for y in 1..v_channel.height() - 1 {
        for x in 1..v_channel.width() - 1 {
            bins[lbp_code(&Window3x3::at(v_channel, x, y)) as usize] += 1;
        }
    }
    Ok(LbpHistogram { bins })
}
