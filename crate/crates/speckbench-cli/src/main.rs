//! `speckbench`: batch CLI over the despeckling pipeline.
//!
//! Exit codes: 0 on success, 1 on any domain or i/o error (with a one-line
//! diagnostic on stderr), 2 on usage errors (clap's default).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use speckbench::{
    apply_filter, crossover_analysis, emit_plot, emit_table, format_sig, load_image,
    metrics_report, run_sweep, save_image, sweep_csv, synthetic_scene, AxisScale, Border, Error,
    FilterKind, Image, ImageFormat, Metric, ReferenceMode, Result, SweepConfig, SweepResult,
    TableFormat, WindowSpec, REFERENCE_LEVELS,
};

/// Saves in the format implied by the output path's extension.
fn save(img: &Image, path: &Path) -> Result<()> {
    save_image(img, path, ImageFormat::from_path(path))
}

#[derive(Parser)]
#[command(name = "speckbench", version, about = "Speckle-noise benchmark pipeline")]
struct CliInvocation {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert an image to 8-bit grayscale (gray inputs pass through).
    Gray {
        /// Input image (PGM or PNG).
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Output image path; format chosen by extension.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Add multiplicative uniform speckle noise to a grayscale image.
    Noise {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Noise variance, in (0, 1].
        #[arg(long)]
        variance: f64,
        /// RNG seed; the same seed reproduces the same field.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply a despeckling filter.
    Filter {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Filter kind.
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Odd window size.
        #[arg(long, default_value_t = 3)]
        window: usize,
        /// Border policy at the image edge.
        #[arg(long, value_enum, default_value_t = BorderArg::Replicate)]
        border: BorderArg,
    },
    /// Compute MSE and PSNR between a reference and a candidate image.
    Metrics {
        /// Reference (ground-truth) image.
        #[arg(long = "ref", value_name = "PATH")]
        reference: PathBuf,
        /// Candidate (degraded or restored) image.
        #[arg(long, value_name = "PATH")]
        cand: PathBuf,
        /// Output layout.
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Print the 256-bin intensity histogram of a grayscale image.
    Histogram {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Write to this file instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the full mean-vs-median sweep and write its artifacts.
    Bench(BenchArgs),
    /// Generate the synthetic benchmark scene.
    Scene {
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Scene dimensions as WxH.
        #[arg(long, value_name = "WxH", default_value = "512x512")]
        size: String,
        /// Scene layout seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Benchmark this grayscale image instead of the synthetic scene.
    #[arg(long = "in", value_name = "PATH", conflicts_with = "synthetic")]
    input: Option<PathBuf>,
    /// Generate a synthetic scene of this size (the default, at 512x512).
    #[arg(long, value_name = "WxH")]
    synthetic: Option<String>,
    /// Seed for the synthetic scene layout.
    #[arg(long, default_value_t = 7)]
    scene_seed: u64,
    /// Directory for artifact files; created if absent.
    #[arg(long, value_name = "DIR")]
    out_dir: PathBuf,
    /// Comma-separated variance levels, or "paper" for the 18 reference levels.
    #[arg(long, default_value = "paper")]
    levels: String,
    /// Comma-separated noise seeds; cells are averaged across them.
    #[arg(long, default_value = "1,2,3,4,5")]
    seeds: String,
    /// Odd filter window size.
    #[arg(long, default_value_t = 3)]
    window: usize,
    #[arg(long, value_enum, default_value_t = BorderArg::Replicate)]
    border: BorderArg,
    /// Error reference: the clean input or the noisy realization itself.
    #[arg(long, value_enum, default_value_t = ReferenceArg::Clean)]
    reference: ReferenceArg,
    /// Emit table_mse and table_psnr (CSV and Markdown).
    #[arg(long)]
    metric_tables: bool,
    /// Emit plot_mse.svg and plot_psnr.svg.
    #[arg(long)]
    plots: bool,
    /// Emit crossover.txt.
    #[arg(long)]
    crossover: bool,
    /// Worker thread count; defaults to all cores. Results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Mean,
    Median,
}

impl From<KindArg> for FilterKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Mean => FilterKind::Mean,
            KindArg::Median => FilterKind::Median,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum BorderArg {
    Replicate,
    Zero,
}

impl From<BorderArg> for Border {
    fn from(b: BorderArg) -> Self {
        match b {
            BorderArg::Replicate => Border::Replicate,
            BorderArg::Zero => Border::ZeroPad,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FormatArg {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ReferenceArg {
    Clean,
    Noisy,
}

impl From<ReferenceArg> for ReferenceMode {
    fn from(r: ReferenceArg) -> Self {
        match r {
            ReferenceArg::Clean => ReferenceMode::Clean,
            ReferenceArg::Noisy => ReferenceMode::Noisy,
        }
    }
}

fn main() -> ExitCode {
    let cli = CliInvocation::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Gray { input, out } => {
            let img = load_image(&input)?.into_gray();
            save(&img, &out)
        }
        Command::Noise {
            input,
            out,
            variance,
            seed,
        } => {
            let img = load_image(&input)?.into_gray();
            let spec = speckbench::NoiseSpec::new(variance, seed)?;
            let noisy = speckbench::add_speckle(&img.to_unit()?, &spec)?.to_byte()?;
            save(&noisy, &out)
        }
        Command::Filter {
            input,
            out,
            kind,
            window,
            border,
        } => {
            let img = load_image(&input)?.into_gray();
            let spec = WindowSpec::new(window, border.into())?;
            let filtered = apply_filter(kind.into(), &img, spec)?;
            save(&filtered, &out)
        }
        Command::Metrics {
            reference,
            cand,
            format,
        } => {
            let reference = load_image(&reference)?.into_gray();
            let cand = load_image(&cand)?.into_gray();
            let report = metrics_report(&reference, &cand)?;
            let psnr = if report.psnr.is_infinite() {
                "inf".to_string()
            } else {
                format!("{:.6}", report.psnr)
            };
            match format {
                FormatArg::Text => println!("mse={:.6} psnr={psnr}", report.mse),
                FormatArg::Csv => {
                    println!("mse,psnr");
                    println!("{},{}", format_sig(report.mse), format_sig(report.psnr));
                }
            }
            Ok(())
        }
        Command::Histogram { input, out } => {
            let img = load_image(&input)?.into_gray();
            let hist = img.histogram()?;
            let mut text = String::from("value,count\n");
            for (value, count) in hist.bins.iter().enumerate() {
                let _ = writeln!(text, "{value},{count}");
            }
            match out {
                Some(path) => std::fs::write(path, text).map_err(Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::Bench(args) => cmd_bench(args),
        Command::Scene { out, size, seed } => {
            let (width, height) = parse_size(&size)?;
            let img = synthetic_scene(width, height, seed)?;
            save(&img, &out)
        }
    }
}

/// Parses "WxH" into (width, height).
fn parse_size(s: &str) -> Result<(usize, usize)> {
    let parse = |part: &str| {
        part.parse::<usize>()
            .map_err(|_| Error::InvalidConfig(format!("bad size {s:?}; expected WxH")))
    };
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| Error::InvalidConfig(format!("bad size {s:?}; expected WxH")))?;
    Ok((parse(w)?, parse(h)?))
}

fn parse_levels(s: &str) -> Result<Vec<f64>> {
    if s == "paper" {
        return Ok(REFERENCE_LEVELS.to_vec());
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("bad level {part:?}")))
        })
        .collect()
}

fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidConfig(format!("bad seed {part:?}")))
        })
        .collect()
}

fn bench_image(args: &BenchArgs) -> Result<Image> {
    if let Some(path) = &args.input {
        return Ok(load_image(path)?.into_gray());
    }
    let size = args.synthetic.as_deref().unwrap_or("512x512");
    let (width, height) = parse_size(size)?;
    synthetic_scene(width, height, args.scene_seed)
}

fn crossover_text(result: &SweepResult) -> Result<String> {
    let mut out = String::new();
    for metric in [Metric::Mse, Metric::Psnr] {
        let report = crossover_analysis(result, metric)?;
        match report.bracket {
            Some((lo, hi)) => {
                let _ = writeln!(
                    out,
                    "{metric} crossover bracket: ({}, {})",
                    format_sig(lo),
                    format_sig(hi)
                );
            }
            None => {
                let _ = writeln!(out, "{metric} crossover bracket: none");
            }
        }
    }
    Ok(out)
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let img = bench_image(&args)?;
    let config = SweepConfig {
        levels: parse_levels(&args.levels)?,
        filters: vec![FilterKind::Mean, FilterKind::Median],
        window: WindowSpec::new(args.window, args.border.into())?,
        seeds: parse_seeds(&args.seeds)?,
        reference: args.reference.into(),
    };

    let result = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
            .install(|| run_sweep(&img, &config))?,
        None => run_sweep(&img, &config)?,
    };

    // Render everything before touching the filesystem so a failure cannot
    // leave a torn artifact behind.
    let all = !(args.metric_tables || args.plots || args.crossover);
    let mut artifacts: Vec<(String, String)> = vec![("sweep.csv".into(), sweep_csv(&result))];
    if all || args.metric_tables {
        for metric in [Metric::Mse, Metric::Psnr] {
            for (format, ext) in [(TableFormat::Csv, "csv"), (TableFormat::Markdown, "md")] {
                artifacts.push((
                    format!("table_{}.{ext}", metric.name()),
                    emit_table(&result, metric, format),
                ));
            }
        }
    }
    if all || args.plots {
        for metric in [Metric::Mse, Metric::Psnr] {
            artifacts.push((
                format!("plot_{}.svg", metric.name()),
                emit_plot(&result, metric, AxisScale::Linear),
            ));
        }
    }
    if all || args.crossover {
        artifacts.push(("crossover.txt".into(), crossover_text(&result)?));
    }

    std::fs::create_dir_all(&args.out_dir)?;
    write_all_or_nothing(&args.out_dir, &artifacts)
}

/// Writes every artifact, removing all of them if any write fails.
fn write_all_or_nothing(dir: &Path, artifacts: &[(String, String)]) -> Result<()> {
    let mut written: Vec<PathBuf> = Vec::new();
    for (name, content) in artifacts {
        let path = dir.join(name);
        if let Err(e) = std::fs::write(&path, content) {
            written.push(path);
            for p in &written {
                let _ = std::fs::remove_file(p);
            }
            return Err(Error::from(e));
        }
        written.push(path);
    }
    Ok(())
}
