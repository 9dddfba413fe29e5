//! Benchmark sweep: noise levels x filters x seeds, scored against a
//! configurable reference, plus the mean-vs-median crossover analysis.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::filters::{apply_filter, FilterKind, WindowSpec};
use crate::image::Image;
use crate::metrics::metrics_report;
use crate::noise::{add_speckle, NoiseSpec};

/// The 18 noise levels used throughout: 0.01..0.09 step 0.01, then
/// 0.1..0.9 step 0.1.
pub const REFERENCE_LEVELS: [f64; 18] = [
    0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8,
    0.9,
];

/// Which image each filtered result is scored against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReferenceMode {
    /// The clean input image (denoising quality).
    #[default]
    Clean,
    /// The noisy image before filtering (emulation mode).
    Noisy,
}

/// Metric selector for tables, plots, and crossover analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Mse,
    Psnr,
}

impl Metric {
    /// Lowercase name used in file names and CSV fields.
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Mse => "mse",
            Metric::Psnr => "psnr",
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Metric::Mse => f.write_str("MSE"),
            Metric::Psnr => f.write_str("PSNR"),
        }
    }
}

/// Full sweep description. `Default` reproduces the reference protocol:
/// the 18 levels above, both filters, 3x3 Replicate window, seeds 1..=5,
/// clean reference.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Noise variances, strictly increasing, each in (0, 1].
    pub levels: Vec<f64>,
    pub filters: Vec<FilterKind>,
    pub window: WindowSpec,
    pub seeds: Vec<u64>,
    pub reference: ReferenceMode,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            levels: REFERENCE_LEVELS.to_vec(),
            filters: vec![FilterKind::Mean, FilterKind::Median],
            window: WindowSpec::default(),
            seeds: vec![1, 2, 3, 4, 5],
            reference: ReferenceMode::Clean,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::InvalidConfig("levels must be nonempty".into()));
        }
        for &v in &self.levels {
            if !v.is_finite() || v <= 0.0 || v > 1.0 {
                return Err(Error::InvalidVariance(v));
            }
        }
        if !self.levels.windows(2).all(|p| p[0] < p[1]) {
            return Err(Error::InvalidConfig(
                "levels must be strictly increasing".into(),
            ));
        }
        if self.filters.is_empty() {
            return Err(Error::InvalidConfig("filters must be nonempty".into()));
        }
        let mut kinds = self.filters.clone();
        kinds.sort_unstable();
        kinds.dedup();
        if kinds.len() != self.filters.len() {
            return Err(Error::InvalidConfig("filters must be distinct".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidConfig("seeds must be nonempty".into()));
        }
        let mut seen = self.seeds.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidConfig("seeds must be distinct".into()));
        }
        Ok(())
    }
}

/// One measured cell: a (filter, variance, seed) triple with its scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub filter: FilterKind,
    pub variance: f64,
    pub seed: u64,
    pub mse: f64,
    pub psnr: f64,
}

/// Run metadata recorded next to the rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepMeta {
    /// Dimensions plus a content fingerprint of the input image.
    pub image_id: String,
    pub config: SweepConfig,
    pub version: String,
}

/// All rows of one sweep, ordered by filter, then level, then seed.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub meta: SweepMeta,
}

fn fingerprint(img: &Image) -> String {
    // FNV-1a over the samples; only used as a human-readable identifier.
    let mut state: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in img.as_bytes().unwrap_or(&[]) {
        state = (state ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{}x{}-{:016x}", img.width(), img.height(), state)
}

/// Runs the full grid. Cells are computed in parallel; the row order and
/// every value are bit-identical to a sequential run because each cell is a
/// pure function of (image, level, seed) and assembly order is fixed.
pub fn run_sweep(img: &Image, config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    img.as_bytes()?;
    config.window.validate_for(img)?;
    let unit = img.to_unit()?;

    let cells: Vec<(usize, usize)> = (0..config.levels.len())
        .flat_map(|li| (0..config.seeds.len()).map(move |si| (li, si)))
        .collect();
    // cell_rows[cell] holds that cell's rows in config.filters order.
    let cell_rows: Vec<Vec<SweepRow>> = cells
        .par_iter()
        .map(|&(li, si)| -> Result<Vec<SweepRow>> {
            let variance = config.levels[li];
            let seed = config.seeds[si];
            let spec = NoiseSpec::new(variance, seed)?;
            let noisy = add_speckle(&unit, &spec)?.to_byte()?;
            let reference = match config.reference {
                ReferenceMode::Clean => img,
                ReferenceMode::Noisy => &noisy,
            };
            config
                .filters
                .iter()
                .map(|&filter| {
                    let filtered = apply_filter(filter, &noisy, config.window)?;
                    let report = metrics_report(reference, &filtered)?;
                    Ok(SweepRow {
                        filter,
                        variance,
                        seed,
                        mse: report.mse,
                        psnr: report.psnr,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(config.filters.len() * cells.len());
    for (fi, _) in config.filters.iter().enumerate() {
        for li in 0..config.levels.len() {
            for si in 0..config.seeds.len() {
                rows.push(cell_rows[li * config.seeds.len() + si][fi]);
            }
        }
    }
    Ok(SweepResult {
        rows,
        meta: SweepMeta {
            image_id: fingerprint(img),
            config: config.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
    })
}

/// Seed-averaged metric values per filter, in row order.
///
/// This is the single aggregation path behind tables, plots, and the
/// crossover analysis, so the three artifacts can never disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSet {
    /// Levels in first-appearance order (the config's order).
    pub levels: Vec<f64>,
    /// One (filter, value-per-level) series per filter.
    pub series: Vec<(FilterKind, Vec<f64>)>,
}

pub fn seed_averaged(result: &SweepResult, metric: Metric) -> SeriesSet {
    let mut levels: Vec<f64> = Vec::new();
    let mut filters: Vec<FilterKind> = Vec::new();
    for row in &result.rows {
        if !levels.contains(&row.variance) {
            levels.push(row.variance);
        }
        if !filters.contains(&row.filter) {
            filters.push(row.filter);
        }
    }
    let series = filters
        .into_iter()
        .map(|filter| {
            let values = levels
                .iter()
                .map(|&level| {
                    let mut sum = 0.0;
                    let mut n = 0u32;
                    for row in &result.rows {
                        if row.filter == filter && row.variance == level {
                            sum += match metric {
                                Metric::Mse => row.mse,
                                Metric::Psnr => row.psnr,
                            };
                            n += 1;
                        }
                    }
                    sum / f64::from(n.max(1))
                })
                .collect();
            (filter, values)
        })
        .collect();
    SeriesSet { levels, series }
}

impl SeriesSet {
    pub fn get(&self, filter: FilterKind) -> Option<&[f64]> {
        self.series
            .iter()
            .find(|(f, _)| *f == filter)
            .map(|(_, v)| v.as_slice())
    }
}

/// Adjacent-level bracket where the sign of seed-averaged (mean - median)
/// flips, or `None` if the ordering never changes.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverReport {
    pub metric: Metric,
    /// `(v_lo, v_hi)`: adjacent levels with opposite (mean - median) sign.
    pub bracket: Option<(f64, f64)>,
}

/// Scans adjacent levels of the seed-averaged series for the first
/// mean-vs-median ordering flip. Requires both filters in the result.
pub fn crossover_analysis(result: &SweepResult, metric: Metric) -> Result<CrossoverReport> {
    let set = seed_averaged(result, metric);
    let mean = set
        .get(FilterKind::Mean)
        .ok_or_else(|| Error::MissingSeries("mean".into()))?;
    let median = set
        .get(FilterKind::Median)
        .ok_or_else(|| Error::MissingSeries("median".into()))?;
    let diffs: Vec<f64> = mean.iter().zip(median).map(|(m, d)| m - d).collect();
    let bracket = diffs
        .windows(2)
        .position(|p| p[0] * p[1] < 0.0)
        .map(|i| (set.levels[i], set.levels[i + 1]));
    Ok(CrossoverReport { metric, bracket })
}
