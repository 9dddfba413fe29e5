use std::path::Path;
use std::process::{Command, Output};

use speckbench::{
    load_image, save_image, save_rgb_image, synthetic_scene, Image, ImageFormat, RgbImage,
};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_speckbench"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn path_str(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn write_scene(dir: &TempDir, name: &str, seed: u64) -> String {
    let img = synthetic_scene(64, 64, seed).unwrap();
    let path = dir.path().join(name);
    save_image(&img, &path, ImageFormat::from_path(&path)).unwrap();
    path.to_str().unwrap().to_owned()
}

fn load_bytes(path: &str) -> Vec<u8> {
    load_image(Path::new(path))
        .unwrap()
        .into_gray()
        .as_bytes()
        .unwrap()
        .to_vec()
}

#[test]
fn gray_converts_rgb_png() {
    let dir = TempDir::new().unwrap();
    let pixels = vec![[255, 0, 0], [0, 255, 0], [0, 0, 255], [250, 250, 250]];
    let rgb = RgbImage::new(2, 2, pixels).unwrap();
    let input = dir.path().join("rgb.png");
    save_rgb_image(&rgb, &input, ImageFormat::Png).unwrap();
    let out = path_str(&dir, "gray.pgm");

    let output = run(&["gray", "--in", input.to_str().unwrap(), "--out", &out]);
    assert!(output.status.success());
    let expected = rgb.to_gray();
    assert_eq!(load_bytes(&out), expected.as_bytes().unwrap());
}

#[test]
fn gray_passes_through_gray_input() {
    let dir = TempDir::new().unwrap();
    let input = write_scene(&dir, "scene.pgm", 3);
    let out = path_str(&dir, "copy.pgm");
    let output = run(&["gray", "--in", &input, "--out", &out]);
    assert!(output.status.success());
    assert_eq!(load_bytes(&out), load_bytes(&input));
}

#[test]
fn gray_missing_input_names_the_path() {
    let dir = TempDir::new().unwrap();
    let out = path_str(&dir, "out.pgm");
    let output = run(&["gray", "--in", "no-such-file.png", "--out", &out]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("no-such-file.png"), "{stderr}");
    assert_eq!(stderr.lines().count(), 1, "one-line diagnostic");
}

#[test]
fn noise_is_deterministic_and_seed_sensitive() {
    let dir = TempDir::new().unwrap();
    let input = write_scene(&dir, "scene.pgm", 3);
    let a = path_str(&dir, "a.pgm");
    let b = path_str(&dir, "b.pgm");
    let c = path_str(&dir, "c.pgm");
    for (out, seed) in [(&a, "7"), (&b, "7"), (&c, "8")] {
        let output = run(&[
            "noise", "--in", &input, "--out", out, "--variance", "0.5", "--seed", seed,
        ]);
        assert!(output.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn noise_rejects_out_of_range_variance() {
    let dir = TempDir::new().unwrap();
    let input = write_scene(&dir, "scene.pgm", 3);
    let out = path_str(&dir, "out.pgm");
    for bad in ["0", "1.5"] {
        let output = run(&["noise", "--in", &input, "--out", &out, "--variance", bad]);
        assert_eq!(output.status.code(), Some(1), "variance {bad}");
        let stderr = String::from_utf8_lossy(&output.stderr);
        assert!(stderr.contains("0 < v <= 1"), "{stderr}");
    }
}

#[test]
fn filter_median_keeps_constant_image() {
    let dir = TempDir::new().unwrap();
    let img = Image::constant_byte(16, 16, 42).unwrap();
    let input = dir.path().join("const.pgm");
    save_image(&img, &input, ImageFormat::PgmBinary).unwrap();
    let out = path_str(&dir, "out.pgm");
    let output = run(&[
        "filter", "--in", input.to_str().unwrap(), "--out", &out, "--kind", "median",
    ]);
    assert!(output.status.success());
    assert_eq!(load_bytes(&out), vec![42u8; 256]);
}

#[test]
fn filter_window_one_is_identity() {
    let dir = TempDir::new().unwrap();
    let input = write_scene(&dir, "scene.pgm", 3);
    let out = path_str(&dir, "out.pgm");
    let output = run(&[
        "filter", "--in", &input, "--out", &out, "--kind", "mean", "--window", "1",
    ]);
    assert!(output.status.success());
    assert_eq!(load_bytes(&out), load_bytes(&input));
}

#[test]
fn filter_rejects_even_window() {
    let dir = TempDir::new().unwrap();
    let input = write_scene(&dir, "scene.pgm", 3);
    let out = path_str(&dir, "out.pgm");
    let output = run(&[
        "filter", "--in", &input, "--out", &out, "--kind", "mean", "--window", "4",
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("odd"));
}

#[test]
fn metrics_text_for_identical_files() {
    let dir = TempDir::new().unwrap();
    let input = write_scene(&dir, "scene.pgm", 3);
    let output = run(&["metrics", "--ref", &input, "--cand", &input]);
    assert!(output.status.success());
    assert_eq!(
        String::from_utf8_lossy(&output.stdout),
        "mse=0.000000 psnr=inf\n"
    );
}

#[test]
fn metrics_csv_layout() {
    let dir = TempDir::new().unwrap();
    let a = write_scene(&dir, "a.pgm", 3);
    let b = write_scene(&dir, "b.pgm", 4);
    let output = run(&["metrics", "--ref", &a, "--cand", &b, "--format", "csv"]);
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "mse,psnr");
    assert_eq!(lines[1].split(',').count(), 2);
}

#[test]
fn metrics_rejects_mismatched_sizes() {
    let dir = TempDir::new().unwrap();
    let a = write_scene(&dir, "a.pgm", 3);
    let small = synthetic_scene(64, 128, 3).unwrap();
    let b = dir.path().join("b.pgm");
    save_image(&small, &b, ImageFormat::PgmBinary).unwrap();
    let output = run(&["metrics", "--ref", &a, "--cand", b.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("dimension mismatch"));
}

#[test]
fn histogram_prints_all_256_bins() {
    let dir = TempDir::new().unwrap();
    let input = write_scene(&dir, "scene.pgm", 3);
    let output = run(&["histogram", "--in", &input]);
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 257);
    assert_eq!(lines[0], "value,count");
    let total: u64 = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 64 * 64);
}

#[test]
fn scene_command_writes_a_loadable_image() {
    let dir = TempDir::new().unwrap();
    let out = path_str(&dir, "scene.png");
    let output = run(&["scene", "--out", &out, "--size", "80x64", "--seed", "5"]);
    assert!(output.status.success());
    let img = load_image(Path::new(&out)).unwrap().into_gray();
    assert_eq!((img.width(), img.height()), (80, 64));
    let direct = synthetic_scene(80, 64, 5).unwrap();
    assert_eq!(img.as_bytes().unwrap(), direct.as_bytes().unwrap());
}

const BENCH_REDUCED: &[&str] = &[
    "--synthetic",
    "64x64",
    "--levels",
    "0.1,0.2",
    "--seeds",
    "1,2",
];

const ALL_ARTIFACTS: &[&str] = &[
    "sweep.csv",
    "table_mse.csv",
    "table_mse.md",
    "table_psnr.csv",
    "table_psnr.md",
    "plot_mse.svg",
    "plot_psnr.svg",
    "crossover.txt",
];

#[test]
fn bench_default_writes_every_artifact() {
    let dir = TempDir::new().unwrap();
    let out_dir = path_str(&dir, "arts");
    let mut args = vec!["bench", "--out-dir", &out_dir];
    args.extend_from_slice(BENCH_REDUCED);
    let output = run(&args);
    assert!(output.status.success());
    for name in ALL_ARTIFACTS {
        assert!(dir.path().join("arts").join(name).exists(), "{name}");
    }
    let csv = std::fs::read_to_string(dir.path().join("arts/sweep.csv")).unwrap();
    // header + 2 filters x 2 levels x 2 seeds
    assert_eq!(csv.lines().count(), 1 + 8);
}

#[test]
fn bench_artifact_selection_flags() {
    let dir = TempDir::new().unwrap();
    let out_dir = path_str(&dir, "arts");
    let mut args = vec!["bench", "--out-dir", &out_dir, "--crossover"];
    args.extend_from_slice(BENCH_REDUCED);
    let output = run(&args);
    assert!(output.status.success());
    assert!(dir.path().join("arts/sweep.csv").exists());
    assert!(dir.path().join("arts/crossover.txt").exists());
    assert!(!dir.path().join("arts/table_mse.csv").exists());
    assert!(!dir.path().join("arts/plot_mse.svg").exists());
}

#[test]
fn bench_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for out in ["one", "two"] {
        let out_dir = path_str(&dir, out);
        let mut args = vec!["bench", "--out-dir", &out_dir];
        args.extend_from_slice(BENCH_REDUCED);
        assert!(run(&args).status.success());
    }
    for name in ALL_ARTIFACTS {
        let one = std::fs::read(dir.path().join("one").join(name)).unwrap();
        let two = std::fs::read(dir.path().join("two").join(name)).unwrap();
        assert_eq!(one, two, "{name}");
    }
}

#[test]
fn bench_rejects_malformed_levels() {
    let dir = TempDir::new().unwrap();
    let out_dir = path_str(&dir, "arts");
    let output = run(&["bench", "--out-dir", &out_dir, "--levels", "0.1,abc"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let output = run(&["gray", "--bogus"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn help_lists_flags_with_defaults() {
    let output = run(&["bench", "--help"]);
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    for flag in [
        "--in", "--synthetic", "--out-dir", "--levels", "--seeds", "--window", "--border",
        "--reference", "--metric-tables", "--plots", "--crossover", "--threads",
    ] {
        assert!(stdout.contains(flag), "missing {flag}");
    }
    assert!(stdout.contains("paper"), "default levels shown");
    assert!(stdout.contains("1,2,3,4,5"), "default seeds shown");
}
