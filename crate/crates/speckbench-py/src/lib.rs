//! Python bindings for the speckbench core: images, speckle noise, the two
//! filters, metrics, and the benchmark sweep.

use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use speckbench::{
    apply_filter, crossover_analysis, emit_plot, emit_table, load_image, metrics_report,
    run_sweep, save_image, sweep_csv, AxisScale, Border, Domain, Error, FilterKind,
    Image as CoreImage, ImageFormat, Metric, NoiseSpec, ReferenceMode, SweepConfig, SweepResult,
    TableFormat, WindowSpec, REFERENCE_LEVELS,
};

fn pyerr(e: Error) -> PyErr {
    match e {
        Error::FileNotFound(_) | Error::Io(_) => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_border(s: &str) -> PyResult<Border> {
    match s {
        "replicate" => Ok(Border::Replicate),
        "zero" => Ok(Border::ZeroPad),
        _ => Err(PyValueError::new_err(format!(
            "unknown border {s:?}; expected \"replicate\" or \"zero\""
        ))),
    }
}

fn parse_metric(s: &str) -> PyResult<Metric> {
    match s {
        "mse" => Ok(Metric::Mse),
        "psnr" => Ok(Metric::Psnr),
        _ => Err(PyValueError::new_err(format!(
            "unknown metric {s:?}; expected \"mse\" or \"psnr\""
        ))),
    }
}

fn window_spec(window: usize, border: &str) -> PyResult<WindowSpec> {
    WindowSpec::new(window, parse_border(border)?).map_err(pyerr)
}

/// A grayscale image in either the byte (0..=255) or unit ([0, 1]) domain.
#[pyclass(name = "Image")]
struct PyImage {
    inner: CoreImage,
}

#[pymethods]
impl PyImage {
    /// Builds a byte-domain image from row-major samples.
    #[staticmethod]
    fn from_bytes(width: usize, height: usize, pixels: Vec<u8>) -> PyResult<Self> {
        CoreImage::new_byte(width, height, pixels)
            .map(|inner| Self { inner })
            .map_err(pyerr)
    }

    /// Builds a constant byte-domain image.
    #[staticmethod]
    fn constant(width: usize, height: usize, value: u8) -> PyResult<Self> {
        CoreImage::constant_byte(width, height, value)
            .map(|inner| Self { inner })
            .map_err(pyerr)
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    #[getter]
    fn height(&self) -> usize {
        self.inner.height()
    }

    /// "byte" or "unit".
    #[getter]
    fn domain(&self) -> String {
        match self.inner.domain() {
            Domain::Byte => "byte".to_string(),
            Domain::Unit => "unit".to_string(),
        }
    }

    /// Row-major samples of a byte-domain image.
    fn to_bytes(&self) -> PyResult<Vec<u8>> {
        self.inner.as_bytes().map(<[u8]>::to_vec).map_err(pyerr)
    }

    /// Row-major samples of a unit-domain image.
    fn to_floats(&self) -> PyResult<Vec<f64>> {
        self.inner.as_units().map(<[f64]>::to_vec).map_err(pyerr)
    }

    /// Rescales bytes to the unit domain (s / 255).
    fn to_unit(&self) -> PyResult<Self> {
        self.inner.to_unit().map(|inner| Self { inner }).map_err(pyerr)
    }

    /// Quantizes unit samples back to bytes (round half away from zero).
    fn to_byte(&self) -> PyResult<Self> {
        self.inner.to_byte().map(|inner| Self { inner }).map_err(pyerr)
    }

    /// 256-bin intensity histogram of a byte-domain image.
    fn histogram(&self) -> PyResult<Vec<u64>> {
        self.inner.histogram().map(|h| h.bins.to_vec()).map_err(pyerr)
    }

    fn __repr__(&self) -> String {
        format!(
            "Image({}x{}, {})",
            self.inner.width(),
            self.inner.height(),
            self.domain()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Result of a benchmark sweep; exposes rows and every artifact renderer.
#[pyclass(name = "SweepResult")]
struct PySweepResult {
    inner: SweepResult,
}

#[pymethods]
impl PySweepResult {
    /// One dict per (filter, variance, seed) cell.
    fn rows<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.inner
            .rows
            .iter()
            .map(|r| {
                let d = PyDict::new(py);
                d.set_item("filter", r.filter.name())?;
                d.set_item("variance", r.variance)?;
                d.set_item("seed", r.seed)?;
                d.set_item("mse", r.mse)?;
                d.set_item("psnr", r.psnr)?;
                Ok(d)
            })
            .collect()
    }

    /// Long-form CSV, one row per sweep cell.
    fn csv(&self) -> String {
        sweep_csv(&self.inner)
    }

    /// Seed-averaged wide table. format: "csv" or "markdown".
    #[pyo3(signature = (metric = "mse", format = "csv"))]
    fn table(&self, metric: &str, format: &str) -> PyResult<String> {
        let format = match format {
            "csv" => TableFormat::Csv,
            "markdown" => TableFormat::Markdown,
            _ => {
                return Err(PyValueError::new_err(format!(
                    "unknown format {format:?}; expected \"csv\" or \"markdown\""
                )))
            }
        };
        Ok(emit_table(&self.inner, parse_metric(metric)?, format))
    }

    /// SVG line chart of seed-averaged values. scale: "linear" or "log".
    #[pyo3(signature = (metric = "mse", scale = "linear"))]
    fn plot(&self, metric: &str, scale: &str) -> PyResult<String> {
        let scale = match scale {
            "linear" => AxisScale::Linear,
            "log" => AxisScale::Log,
            _ => {
                return Err(PyValueError::new_err(format!(
                    "unknown scale {scale:?}; expected \"linear\" or \"log\""
                )))
            }
        };
        Ok(emit_plot(&self.inner, parse_metric(metric)?, scale))
    }

    /// Adjacent level pair where the mean/median ordering flips, or None.
    #[pyo3(signature = (metric = "mse"))]
    fn crossover(&self, metric: &str) -> PyResult<Option<(f64, f64)>> {
        crossover_analysis(&self.inner, parse_metric(metric)?)
            .map(|r| r.bracket)
            .map_err(pyerr)
    }

    fn __repr__(&self) -> String {
        format!("SweepResult({} rows)", self.inner.rows.len())
    }
}

/// Deterministic synthetic benchmark scene (bright sea, dark slicks,
/// point targets).
#[pyfunction]
fn synthetic_scene(width: usize, height: usize, seed: u64) -> PyResult<PyImage> {
    speckbench::synthetic_scene(width, height, seed)
        .map(|inner| PyImage { inner })
        .map_err(pyerr)
}

/// Loads a PGM or PNG file as a grayscale byte image (RGB inputs are
/// luma-converted).
#[pyfunction]
fn load(path: PathBuf) -> PyResult<PyImage> {
    load_image(&path)
        .map(|img| PyImage { inner: img.into_gray() })
        .map_err(pyerr)
}

/// Saves an image; the format follows the path extension (.png, else PGM).
#[pyfunction]
fn save(img: &PyImage, path: PathBuf) -> PyResult<()> {
    save_image(&img.inner, &path, ImageFormat::from_path(&path)).map_err(pyerr)
}

/// Applies multiplicative uniform speckle (J = I + n*I) to a unit-domain
/// image, clamped to [0, 1].
#[pyfunction]
fn add_speckle(img: &PyImage, variance: f64, seed: u64) -> PyResult<PyImage> {
    let spec = NoiseSpec::new(variance, seed).map_err(pyerr)?;
    speckbench::add_speckle(&img.inner, &spec)
        .map(|inner| PyImage { inner })
        .map_err(pyerr)
}

/// Sliding-window arithmetic mean filter.
#[pyfunction]
#[pyo3(signature = (img, window = 3, border = "replicate"))]
fn mean_filter(img: &PyImage, window: usize, border: &str) -> PyResult<PyImage> {
    apply_filter(FilterKind::Mean, &img.inner, window_spec(window, border)?)
        .map(|inner| PyImage { inner })
        .map_err(pyerr)
}

/// Sliding-window median filter.
#[pyfunction]
#[pyo3(signature = (img, window = 3, border = "replicate"))]
fn median_filter(img: &PyImage, window: usize, border: &str) -> PyResult<PyImage> {
    apply_filter(FilterKind::Median, &img.inner, window_spec(window, border)?)
        .map(|inner| PyImage { inner })
        .map_err(pyerr)
}

/// MSE and PSNR of a candidate against a reference, as a dict.
#[pyfunction]
fn metrics<'py>(
    py: Python<'py>,
    reference: &PyImage,
    candidate: &PyImage,
) -> PyResult<Bound<'py, PyDict>> {
    let report = metrics_report(&reference.inner, &candidate.inner).map_err(pyerr)?;
    let d = PyDict::new(py);
    d.set_item("mse", report.mse)?;
    d.set_item("psnr", report.psnr)?;
    d.set_item("peak", report.peak)?;
    Ok(d)
}

/// The 18 reference noise levels (0.01..0.09 step 0.01, 0.1..0.9 step 0.1).
#[pyfunction]
fn reference_levels() -> Vec<f64> {
    REFERENCE_LEVELS.to_vec()
}

/// Runs the mean-vs-median sweep over levels x seeds on a byte image.
#[pyfunction]
#[pyo3(signature = (
    img,
    levels = None,
    seeds = None,
    window = 3,
    border = "replicate",
    reference = "clean",
))]
fn sweep(
    img: &PyImage,
    levels: Option<Vec<f64>>,
    seeds: Option<Vec<u64>>,
    window: usize,
    border: &str,
    reference: &str,
) -> PyResult<PySweepResult> {
    let defaults = SweepConfig::default();
    let config = SweepConfig {
        levels: levels.unwrap_or_else(|| defaults.levels.clone()),
        seeds: seeds.unwrap_or_else(|| defaults.seeds.clone()),
        window: window_spec(window, border)?,
        reference: match reference {
            "clean" => ReferenceMode::Clean,
            "noisy" => ReferenceMode::Noisy,
            _ => {
                return Err(PyValueError::new_err(format!(
                    "unknown reference {reference:?}; expected \"clean\" or \"noisy\""
                )))
            }
        },
        ..defaults
    };
    run_sweep(&img.inner, &config)
        .map(|inner| PySweepResult { inner })
        .map_err(pyerr)
}

#[pymodule]
fn speckbench_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyImage>()?;
    m.add_class::<PySweepResult>()?;
    m.add_function(wrap_pyfunction!(synthetic_scene, m)?)?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(save, m)?)?;
    m.add_function(wrap_pyfunction!(add_speckle, m)?)?;
    m.add_function(wrap_pyfunction!(mean_filter, m)?)?;
    m.add_function(wrap_pyfunction!(median_filter, m)?)?;
    m.add_function(wrap_pyfunction!(metrics, m)?)?;
    m.add_function(wrap_pyfunction!(reference_levels, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
