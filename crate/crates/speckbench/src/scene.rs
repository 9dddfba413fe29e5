//! Deterministic synthetic SAR-like test scene.
//!
//! A bright sea background with smooth low-frequency texture, dark
//! elliptical slick patches, and a few bright point targets. All arithmetic
//! is +, -, *, / and sqrt on f64, so a fixed (width, height, seed) renders
//! bit-identically on every platform.
//!
//! The sea sits near the top of the byte range on purpose: under clamped
//! multiplicative noise, the neighborhood mean of bright pixels is biased
//! down by the one-sided clip at 1.0 while the neighborhood median is not,
//! and that bias is what lets the median overtake the mean as the variance
//! grows. A mid-range sea would leave the mean ahead at every level.

use crate::error::{Error, Result};
use crate::image::{byte_from_real, Image};
use crate::noise::{mix64, unit_draw, GOLDEN_GAMMA};

const SEA_LEVEL: f64 = 242.0;
const TEXTURE_OCTAVES: [(usize, f64); 2] = [(64, 4.0), (16, 2.0)];
const SLICK_COUNT: usize = 4;
const SLICK_CORE: f64 = 55.0;
const TARGET_COUNT: usize = 12;

const TAG_TEXTURE: u64 = 0x7465_7874; // "text"
const TAG_SLICKS: u64 = 0x736c_6963; // "slic"
const TAG_TARGETS: u64 = 0x7461_7267; // "targ"

/// Sequential generator for scene layout draws.
struct SceneRng {
    state: u64,
}

impl SceneRng {
    fn new(seed: u64, tag: u64) -> Self {
        Self {
            state: mix64(seed ^ tag),
        }
    }

    fn next_unit(&mut self) -> f64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        (mix64(self.state) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_unit()
    }
}

/// Smooth lattice noise in [-amp, amp]: uniform values on a `cell`-spaced
/// grid, blended with a smoothstep bilinear interpolation.
fn add_texture(buf: &mut [f64], width: usize, height: usize, seed: u64, octave: u64, cell: usize, amp: f64) {
    let grid_w = width / cell + 2;
    let lattice_seed = mix64(seed ^ TAG_TEXTURE ^ (octave.wrapping_mul(GOLDEN_GAMMA)));
    let lattice = |gy: usize, gx: usize| -> f64 {
        2.0 * unit_draw(lattice_seed, (gy * grid_w + gx) as u64) - 1.0
    };
    for i in 0..height {
        let y0 = i / cell;
        let fy = (i % cell) as f64 / cell as f64;
        let sy = fy * fy * (3.0 - 2.0 * fy);
        for j in 0..width {
            let x0 = j / cell;
            let fx = (j % cell) as f64 / cell as f64;
            let sx = fx * fx * (3.0 - 2.0 * fx);
            let top = lattice(y0, x0) * (1.0 - sx) + lattice(y0, x0 + 1) * sx;
            let bot = lattice(y0 + 1, x0) * (1.0 - sx) + lattice(y0 + 1, x0 + 1) * sx;
            buf[i * width + j] += amp * (top * (1.0 - sy) + bot * sy);
        }
    }
}

fn add_slicks(buf: &mut [f64], width: usize, height: usize, seed: u64) {
    let w = width as f64;
    let h = height as f64;
    let mut rng = SceneRng::new(seed, TAG_SLICKS);
    for _ in 0..SLICK_COUNT {
        let cy = rng.next_range(0.15, 0.85) * h;
        let cx = rng.next_range(0.15, 0.85) * w;
        let a = rng.next_range(w / 16.0, w / 7.0);
        let b = rng.next_range(h / 24.0, h / 10.0);
        let ux = rng.next_range(-1.0, 1.0);
        let uy = rng.next_range(-1.0, 1.0);
        let norm = (ux * ux + uy * uy).sqrt();
        let (ux, uy) = if norm < 1e-6 { (1.0, 0.0) } else { (ux / norm, uy / norm) };
        for i in 0..height {
            for j in 0..width {
                let dx = j as f64 - cx;
                let dy = i as f64 - cy;
                let xr = dx * ux + dy * uy;
                let yr = -dx * uy + dy * ux;
                let d = (xr / a) * (xr / a) + (yr / b) * (yr / b);
                if d < 1.0 {
                    let wgt = (1.0 - d) * (1.0 - d);
                    let v = &mut buf[i * width + j];
                    *v = *v * (1.0 - wgt) + (SLICK_CORE + 10.0 * d) * wgt;
                }
            }
        }
    }
}

fn add_targets(buf: &mut [f64], width: usize, height: usize, seed: u64) {
    let mut rng = SceneRng::new(seed, TAG_TARGETS);
    for _ in 0..TARGET_COUNT {
        let ty = rng.next_range(2.0, (height - 3) as f64) as usize;
        let tx = rng.next_range(2.0, (width - 3) as f64) as usize;
        for i in ty - 1..=ty + 1 {
            for j in tx - 1..=tx + 1 {
                let v = &mut buf[i * width + j];
                if *v < 250.0 {
                    *v = 250.0;
                }
            }
        }
        buf[ty * width + tx] = 255.0;
    }
}

/// Renders the default benchmark scene. Dimensions must be at least 64x64;
/// a fixed seed gives a bit-identical image.
pub fn synthetic_scene(width: usize, height: usize, seed: u64) -> Result<Image> {
    if width < 64 || height < 64 {
        return Err(Error::InvalidGeometry(format!(
            "scene needs at least 64x64, got {width}x{height}"
        )));
    }
    let mut buf = vec![SEA_LEVEL; width * height];
    for (octave, &(cell, amp)) in TEXTURE_OCTAVES.iter().enumerate() {
        add_texture(&mut buf, width, height, seed, octave as u64, cell, amp);
    }
    add_slicks(&mut buf, width, height, seed);
    add_targets(&mut buf, width, height, seed);
    let samples = buf.into_iter().map(byte_from_real).collect();
    Image::new_byte(width, height, samples)
}
