//! Basin-of-attraction rendering by forward iteration, with binary PPM
//! output. Runs entirely in f64 with a fixed pixel order, so repeated runs
//! produce identical bytes.

use std::io::{self, Write};

use crate::error::Error;
use crate::Result;

use super::fixed::fixed_points;
use super::poly::ConservativePolynomial;

/// Rectangle in the dynamical plane.
#[derive(Clone, Copy, Debug)]
pub struct Viewport {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Viewport {
    /// Square window centered at the origin with the given half-width.
    pub fn centered(half: f64) -> Viewport {
        Viewport {
            x0: -half,
            x1: half,
            y0: -half,
            y1: half,
        }
    }
}

/// Basin colors by attractor id; non-convergent pixels are black.
pub const PALETTE: [[u8; 3]; 12] = [
    [215, 70, 60],
    [65, 130, 215],
    [95, 180, 90],
    [230, 170, 60],
    [150, 95, 190],
    [70, 185, 180],
    [225, 120, 170],
    [150, 150, 70],
    [100, 100, 220],
    [200, 120, 80],
    [120, 200, 140],
    [180, 180, 180],
];

/// Per-pixel attractor assignment; `-1` marks non-convergence.
#[derive(Clone, Debug)]
pub struct BasinMap {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub cells: Vec<i32>,
    /// Attractor positions by id, f64 midpoints of the critical points.
    pub attractors: Vec<(f64, f64)>,
}

/// RGB raster image, row-major from the top-left corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RasterImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl RasterImage {
    /// Writes the image as binary PPM (P6).
    pub fn write_ppm<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "P6\n{} {}\n255\n", self.width, self.height)?;
        out.write_all(&self.pixels)
    }

    pub fn ppm_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::with_capacity(self.pixels.len() + 32);
        self.write_ppm(&mut buf).expect("writing to memory");
        buf
    }
}

/// Iterates every pixel of the viewport forward and records which
/// superattracting fixed point captures it.
pub fn basin_map(
    poly: &ConservativePolynomial,
    viewport: &Viewport,
    width: usize,
    height: usize,
    max_iter: usize,
) -> Result<BasinMap> {
    if width == 0 || height == 0 {
        return Err(Error::Validation("empty raster".into()));
    }
    if !(viewport.x1 > viewport.x0 && viewport.y1 > viewport.y0) {
        return Err(Error::Validation("empty viewport".into()));
    }
    let coeffs: Vec<(f64, f64)> = poly
        .coefficients()
        .iter()
        .map(|b| b.mid().to_f64())
        .collect();
    let attractors: Vec<(f64, f64)> = poly
        .critical_points()
        .iter()
        .map(|cp| cp.location.mid().to_f64())
        .collect();

    // Capture disks must stay clear of every other fixed point, repelling
    // ones included, or boundary pixels get claimed by a basin.
    let fixed = fixed_points(poly, 48)?;
    let all: Vec<(f64, f64)> = fixed
        .points
        .iter()
        .map(|fp| fp.location.mid().to_f64())
        .collect();
    let capture2: Vec<f64> = attractors
        .iter()
        .map(|w| {
            let mut nearest2 = f64::INFINITY;
            for q in &all {
                let dx = w.0 - q.0;
                let dy = w.1 - q.1;
                let d2 = dx * dx + dy * dy;
                if d2 > 1e-12 {
                    nearest2 = nearest2.min(d2);
                }
            }
            if nearest2.is_finite() {
                nearest2 * 0.04
            } else {
                0.04
            }
        })
        .collect();

    let lead = coeffs[coeffs.len() - 1];
    let lead_abs = (lead.0 * lead.0 + lead.1 * lead.1).sqrt();
    let tail: f64 = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| (c.0 * c.0 + c.1 * c.1).sqrt())
        .sum();
    let escape = (2.0f64).max(2.0 * (tail + 1.0) / lead_abs);
    let escape2 = escape * escape;

    let dx = (viewport.x1 - viewport.x0) / width as f64;
    let dy = (viewport.y1 - viewport.y0) / height as f64;
    let mut cells = Vec::with_capacity(width * height);
    for row in 0..height {
        let y = viewport.y1 - (row as f64 + 0.5) * dy;
        for col in 0..width {
            let x = viewport.x0 + (col as f64 + 0.5) * dx;
            cells.push(classify(
                &coeffs,
                &attractors,
                (x, y),
                max_iter,
                &capture2,
                escape2,
            ));
        }
    }
    Ok(BasinMap {
        width,
        height,
        cells,
        attractors,
    })
}

/// Renders the basin map through the palette.
pub fn render_basins(
    poly: &ConservativePolynomial,
    viewport: &Viewport,
    width: usize,
    height: usize,
    max_iter: usize,
) -> Result<RasterImage> {
    let map = basin_map(poly, viewport, width, height, max_iter)?;
    let mut pixels = Vec::with_capacity(3 * map.cells.len());
    for &cell in &map.cells {
        let rgb = if cell < 0 {
            [0, 0, 0]
        } else {
            PALETTE[cell as usize % PALETTE.len()]
        };
        pixels.extend_from_slice(&rgb);
    }
    Ok(RasterImage {
        width,
        height,
        pixels,
    })
}

fn classify(
    coeffs: &[(f64, f64)],
    attractors: &[(f64, f64)],
    start: (f64, f64),
    max_iter: usize,
    capture2: &[f64],
    escape2: f64,
) -> i32 {
    let (mut zx, mut zy) = start;
    for _ in 0..max_iter {
        for (id, w) in attractors.iter().enumerate() {
            let dx = zx - w.0;
            let dy = zy - w.1;
            if dx * dx + dy * dy <= capture2[id] {
                return id as i32;
            }
        }
        if zx * zx + zy * zy > escape2 {
            return -1;
        }
        let (mut ax, mut ay) = (0.0f64, 0.0f64);
        for c in coeffs.iter().rev() {
            let nx = ax * zx - ay * zy + c.0;
            let ny = ax * zy + ay * zx + c.1;
            ax = nx;
            ay = ny;
        }
        zx = ax;
        zy = ay;
    }
    -1
}
