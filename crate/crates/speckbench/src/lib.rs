//! Despeckling evaluation toolkit: multiplicative speckle-noise injection,
//! mean/median sliding-window filters, MSE/PSNR scoring, and a benchmark
//! sweep harness that emits tables, plots, and a filter-crossover analysis.
//!
//! Everything is deterministic: noise is a pure function of (seed, pixel
//! index), filters and metrics are pure functions of their inputs, and all
//! emitted artifacts are byte-stable across runs and thread counts.

pub mod error;
pub mod filters;
pub mod image;
pub mod io;
pub mod metrics;
pub mod noise;
pub mod plot;
pub mod scene;
pub mod sweep;
pub mod table;

pub use error::{Error, Result};
pub use filters::{
    apply_filter, mean_filter, median_filter_fast, median_filter_naive, sample_with_border,
    Border, FilterKind, WindowSpec,
};
pub use image::{Domain, Histogram, Image, Pixels, RgbImage};
pub use io::{load_image, save_image, save_rgb_image, ImageFormat, LoadedImage};
pub use metrics::{metrics_report, mse, psnr, psnr_from_mse, MetricsReport};
pub use noise::{add_speckle, noise_field, Distribution, NoiseField, NoiseSpec};
pub use plot::{emit_plot, AxisScale};
pub use scene::synthetic_scene;
pub use sweep::{
    crossover_analysis, run_sweep, seed_averaged, CrossoverReport, Metric, ReferenceMode,
    SeriesSet, SweepConfig, SweepMeta, SweepResult, SweepRow, REFERENCE_LEVELS,
};
pub use table::{emit_table, format_sig, sweep_csv, TableFormat};
