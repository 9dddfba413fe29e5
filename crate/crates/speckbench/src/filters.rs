//! Sliding-window mean and median filters with explicit border policy.
//!
//! The median has two independent implementations: a per-pixel sort
//! (`median_filter_naive`, the oracle) and a sliding two-level histogram
//! (`median_filter_fast`). They must agree bit-exactly on every Byte input;
//! tests enforce that, so do not route one through the other.

use crate::error::{Error, Result};
use crate::image::{byte_from_real, Domain, Image, Pixels};

/// Rule for neighborhood samples falling outside the image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Border {
    /// Clamp to the nearest edge pixel.
    #[default]
    Replicate,
    /// Substitute 0.
    ZeroPad,
}

/// Odd window geometry plus border policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    size: usize,
    border: Border,
}

impl Default for WindowSpec {
    fn default() -> Self {
        Self {
            size: 3,
            border: Border::Replicate,
        }
    }
}

impl WindowSpec {
    /// Builds a window; `size` must be odd and >= 1.
    pub fn new(size: usize, border: Border) -> Result<Self> {
        if size == 0 || size.is_multiple_of(2) {
            return Err(Error::InvalidWindow(size));
        }
        Ok(Self { size, border })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn border(&self) -> Border {
        self.border
    }

    /// Window/image compatibility: size must not exceed `2 * min(w, h) - 1`.
    pub fn validate_for(&self, img: &Image) -> Result<()> {
        let limit = 2 * img.width().min(img.height()) - 1;
        if self.size > limit {
            return Err(Error::WindowTooLarge {
                size: self.size,
                width: img.width(),
                height: img.height(),
            });
        }
        Ok(())
    }
}

fn sample_byte(s: &[u8], w: usize, h: usize, i: isize, j: isize, border: Border) -> u8 {
    match border {
        Border::Replicate => {
            let i = i.clamp(0, h as isize - 1) as usize;
            let j = j.clamp(0, w as isize - 1) as usize;
            s[i * w + j]
        }
        Border::ZeroPad => {
            if i < 0 || j < 0 || i >= h as isize || j >= w as isize {
                0
            } else {
                s[i as usize * w + j as usize]
            }
        }
    }
}

fn sample_unit(s: &[f64], w: usize, h: usize, i: isize, j: isize, border: Border) -> f64 {
    match border {
        Border::Replicate => {
            let i = i.clamp(0, h as isize - 1) as usize;
            let j = j.clamp(0, w as isize - 1) as usize;
            s[i * w + j]
        }
        Border::ZeroPad => {
            if i < 0 || j < 0 || i >= h as isize || j >= w as isize {
                0.0
            } else {
                s[i as usize * w + j as usize]
            }
        }
    }
}

/// Intensity at (row `i`, col `j`), which may lie outside the image.
pub fn sample_with_border(img: &Image, i: isize, j: isize, border: Border) -> f64 {
    match img.pixels() {
        Pixels::Byte(s) => f64::from(sample_byte(s, img.width(), img.height(), i, j, border)),
        Pixels::Unit(s) => sample_unit(s, img.width(), img.height(), i, j, border),
    }
}

/// Arithmetic mean over each size x size neighborhood. Byte output rounds
/// half away from zero; Unit output stays real.
pub fn mean_filter(img: &Image, window: WindowSpec) -> Result<Image> {
    window.validate_for(img)?;
    let (w, h) = (img.width(), img.height());
    let r = (window.size / 2) as isize;
    let m = (window.size * window.size) as f64;
    match img.pixels() {
        Pixels::Byte(s) => {
            let mut out = Vec::with_capacity(w * h);
            for i in 0..h as isize {
                for j in 0..w as isize {
                    let mut sum = 0.0;
                    for di in -r..=r {
                        for dj in -r..=r {
                            sum += f64::from(sample_byte(s, w, h, i + di, j + dj, window.border));
                        }
                    }
                    out.push(byte_from_real(sum / m));
                }
            }
            Image::new_byte(w, h, out)
        }
        Pixels::Unit(s) => {
            let mut out = Vec::with_capacity(w * h);
            for i in 0..h as isize {
                for j in 0..w as isize {
                    let mut sum = 0.0;
                    for di in -r..=r {
                        for dj in -r..=r {
                            sum += sample_unit(s, w, h, i + di, j + dj, window.border);
                        }
                    }
                    out.push(sum / m);
                }
            }
            Image::new_unit(w, h, out)
        }
    }
}

/// Reference median: sorts each neighborhood and takes the middle element
/// (index `(M - 1) / 2` of the ascending order; M is odd by construction).
pub fn median_filter_naive(img: &Image, window: WindowSpec) -> Result<Image> {
    window.validate_for(img)?;
    let (w, h) = (img.width(), img.height());
    let r = (window.size / 2) as isize;
    let mid = (window.size * window.size - 1) / 2;
    match img.pixels() {
        Pixels::Byte(s) => {
            let mut out = Vec::with_capacity(w * h);
            let mut buf = Vec::with_capacity(window.size * window.size);
            for i in 0..h as isize {
                for j in 0..w as isize {
                    buf.clear();
                    for di in -r..=r {
                        for dj in -r..=r {
                            buf.push(sample_byte(s, w, h, i + di, j + dj, window.border));
                        }
                    }
                    buf.sort_unstable();
                    out.push(buf[mid]);
                }
            }
            Image::new_byte(w, h, out)
        }
        Pixels::Unit(s) => {
            let mut out = Vec::with_capacity(w * h);
            let mut buf = Vec::with_capacity(window.size * window.size);
            for i in 0..h as isize {
                for j in 0..w as isize {
                    buf.clear();
                    for di in -r..=r {
                        for dj in -r..=r {
                            buf.push(sample_unit(s, w, h, i + di, j + dj, window.border));
                        }
                    }
                    buf.sort_unstable_by(f64::total_cmp);
                    out.push(buf[mid]);
                }
            }
            Image::new_unit(w, h, out)
        }
    }
}

/// Running window histogram with an anchored median position.
///
/// `anchor` tracks the last median's bin and `below` the count of entries in
/// bins strictly under it, so each step only walks the few bins the median
/// actually moved. A 16-block coarse level bounds that walk at 32 bin visits
/// even when the window contents change completely.
struct WindowHist {
    fine: [u32; 256],
    coarse: [u32; 16],
    anchor: usize,
    below: u32,
}

impl WindowHist {
    fn new() -> Self {
        Self {
            fine: [0; 256],
            coarse: [0; 16],
            anchor: 0,
            below: 0,
        }
    }

    #[inline]
    fn add(&mut self, v: u8) {
        let v = v as usize;
        self.fine[v] += 1;
        self.coarse[v >> 4] += 1;
        self.below += u32::from(v < self.anchor);
    }

    #[inline]
    fn remove(&mut self, v: u8) {
        let v = v as usize;
        self.fine[v] -= 1;
        self.coarse[v >> 4] -= 1;
        self.below -= u32::from(v < self.anchor);
    }

    /// Moves the anchor to the bin holding rank `rank` and returns it.
    fn select(&mut self, rank: u32) -> u8 {
        let mut m = self.anchor;
        let mut below = self.below;
        while below > rank {
            if m.is_multiple_of(16) {
                let block = m / 16 - 1;
                if below - self.coarse[block] > rank {
                    below -= self.coarse[block];
                    m -= 16;
                    continue;
                }
            }
            m -= 1;
            below -= self.fine[m];
        }
        while below + self.fine[m] <= rank {
            below += self.fine[m];
            m += 1;
            if m.is_multiple_of(16) {
                while below + self.coarse[m / 16] <= rank {
                    below += self.coarse[m / 16];
                    m += 16;
                }
            }
        }
        self.anchor = m;
        self.below = below;
        m as u8
    }
}

/// A window row resolved against the border policy: either a real image
/// row or an all-zero virtual one.
enum WindowRow<'a> {
    Pixels(&'a [u8]),
    Zeros,
}

impl WindowRow<'_> {
    #[inline]
    fn at(&self, w: usize, j: isize, border: Border) -> u8 {
        match self {
            WindowRow::Zeros => 0,
            WindowRow::Pixels(row) => match border {
                Border::Replicate => row[j.clamp(0, w as isize - 1) as usize],
                Border::ZeroPad => {
                    if j < 0 || j >= w as isize {
                        0
                    } else {
                        row[j as usize]
                    }
                }
            },
        }
    }
}

/// Sliding-histogram median for Byte images: bit-identical to
/// [`median_filter_naive`], O(size) histogram updates per column step.
pub fn median_filter_fast(img: &Image, window: WindowSpec) -> Result<Image> {
    window.validate_for(img)?;
    if img.domain() != Domain::Byte {
        return Err(Error::DomainMismatch(
            "fast median needs a Byte image; Unit images route to the naive path".into(),
        ));
    }
    let s = img.as_bytes()?;
    let (w, h) = (img.width(), img.height());
    let r = (window.size / 2) as isize;
    let rank = ((window.size * window.size - 1) / 2) as u32;
    let mut out = Vec::with_capacity(w * h);
    let mut rows: Vec<WindowRow> = Vec::with_capacity(window.size);
    for i in 0..h as isize {
        rows.clear();
        for di in -r..=r {
            let ri = i + di;
            rows.push(match window.border {
                Border::Replicate => {
                    let ri = ri.clamp(0, h as isize - 1) as usize;
                    WindowRow::Pixels(&s[ri * w..(ri + 1) * w])
                }
                Border::ZeroPad => {
                    if ri < 0 || ri >= h as isize {
                        WindowRow::Zeros
                    } else {
                        let ri = ri as usize;
                        WindowRow::Pixels(&s[ri * w..(ri + 1) * w])
                    }
                }
            });
        }
        let mut hist = WindowHist::new();
        for row in &rows {
            for dj in -r..=r {
                hist.add(row.at(w, dj, window.border));
            }
        }
        out.push(hist.select(rank));
        for j in 1..w as isize {
            let leaving = j - 1 - r;
            let entering = j + r;
            if leaving >= 0 && entering < w as isize {
                // Interior columns need no border handling; all-zero rows
                // would remove and re-add bin 0, so they can be skipped.
                for row in &rows {
                    if let WindowRow::Pixels(p) = row {
                        hist.remove(p[leaving as usize]);
                        hist.add(p[entering as usize]);
                    }
                }
            } else {
                for row in &rows {
                    hist.remove(row.at(w, leaving, window.border));
                    hist.add(row.at(w, entering, window.border));
                }
            }
            out.push(hist.select(rank));
        }
    }
    Image::new_byte(w, h, out)
}

/// Filter selector used by the sweep harness and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FilterKind {
    Mean,
    Median,
}

impl FilterKind {
    /// Lowercase name used in CSV/Markdown/plot output.
    pub fn name(&self) -> &'static str {
        match self {
            FilterKind::Mean => "mean",
            FilterKind::Median => "median",
        }
    }
}

impl std::fmt::Display for FilterKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Dispatches to the matching filter; Median on Byte takes the fast path.
pub fn apply_filter(kind: FilterKind, img: &Image, window: WindowSpec) -> Result<Image> {
    match kind {
        FilterKind::Mean => mean_filter(img, window),
        FilterKind::Median => match img.domain() {
            Domain::Byte => median_filter_fast(img, window),
            Domain::Unit => median_filter_naive(img, window),
        },
    }
}
