use proptest::prelude::*;
use speckbench::{metrics_report, mse, psnr, psnr_from_mse, Error, Image};

fn rnd_image(seed: u64, w: usize, h: usize) -> Image {
    let samples = (0..w * h)
        .map(|k| (seed.wrapping_mul(2 * k as u64 + 1).wrapping_add(7) >> 21) as u8)
        .collect();
    Image::new_byte(w, h, samples).unwrap()
}

#[test]
fn mse_identical_is_zero() {
    let img = rnd_image(1, 8, 8);
    assert_eq!(mse(&img, &img).unwrap(), 0.0);
}

#[test]
fn mse_two_pixel_arithmetic() {
    let a = Image::new_byte(1, 2, vec![0, 0]).unwrap();
    let b = Image::new_byte(1, 2, vec![3, 4]).unwrap();
    assert_eq!(mse(&a, &b).unwrap(), 12.5);
}

#[test]
fn mse_maximal_error() {
    let a = Image::constant_byte(4, 4, 0).unwrap();
    let b = Image::constant_byte(4, 4, 255).unwrap();
    assert_eq!(mse(&a, &b).unwrap(), 65025.0);
}

#[test]
fn psnr_identical_is_infinite() {
    let img = rnd_image(2, 5, 5);
    assert_eq!(psnr(&img, &img).unwrap(), f64::INFINITY);
}

#[test]
fn psnr_zero_db_at_peak_squared() {
    assert_eq!(psnr_from_mse(65025.0, 255.0), 0.0);
}

#[test]
fn psnr_twenty_db() {
    // 10 log10(65025 / 650.25) = 10 log10(100) = 20.
    assert!((psnr_from_mse(650.25, 255.0) - 20.0).abs() < 1e-12);
}

#[test]
fn unit_domain_peak_is_one() {
    let a = Image::new_unit(1, 2, vec![0.0, 0.0]).unwrap();
    let b = Image::new_unit(1, 2, vec![0.1, 0.1]).unwrap();
    let report = metrics_report(&a, &b).unwrap();
    assert_eq!(report.peak, 1.0);
    assert!((report.mse - 0.01).abs() < 1e-15);
    assert!((report.psnr - 20.0).abs() < 1e-9);
}

#[test]
fn report_spec_example() {
    let a = Image::new_byte(1, 2, vec![0, 0]).unwrap();
    let b = Image::new_byte(1, 2, vec![3, 4]).unwrap();
    let report = metrics_report(&a, &b).unwrap();
    assert_eq!(report.mse, 12.5);
    assert_eq!(report.psnr, 10.0 * (65025.0_f64 / 12.5).log10());
    let identical = metrics_report(&a, &a).unwrap();
    assert_eq!(identical.mse, 0.0);
    assert_eq!(identical.psnr, f64::INFINITY);
}

#[test]
fn dimension_mismatch_is_rejected() {
    let a = Image::constant_byte(2, 2, 0).unwrap();
    let b = Image::constant_byte(2, 3, 0).unwrap();
    assert!(matches!(mse(&a, &b), Err(Error::DimensionMismatch(..))));
    assert!(matches!(psnr(&a, &b), Err(Error::DimensionMismatch(..))));
}

#[test]
fn domain_mismatch_is_rejected() {
    let a = Image::constant_byte(2, 2, 0).unwrap();
    let b = a.to_unit().unwrap();
    assert!(matches!(mse(&a, &b), Err(Error::DomainMismatch(_))));
}

#[test]
fn unit_error_doubling_quadruples_mse() {
    // No clamping: reference 0.5, errors within +/- 0.25.
    let reference = Image::new_unit(8, 8, vec![0.5; 64]).unwrap();
    let errors: Vec<f64> = (0..64).map(|k| (f64::from(k) - 31.5) / 31.5 * 0.12).collect();
    let cand1 =
        Image::new_unit(8, 8, errors.iter().map(|e| 0.5 + e).collect()).unwrap();
    let cand2 =
        Image::new_unit(8, 8, errors.iter().map(|e| 0.5 + 2.0 * e).collect()).unwrap();
    let m1 = mse(&reference, &cand1).unwrap();
    let m2 = mse(&reference, &cand2).unwrap();
    assert!((m2 / m1 - 4.0).abs() < 1e-12);
    let p1 = psnr(&reference, &cand1).unwrap();
    let p2 = psnr(&reference, &cand2).unwrap();
    assert!((p1 - p2 - 10.0 * 4.0_f64.log10()).abs() < 1e-9);
}

proptest! {
    #[test]
    fn prop_mse_symmetric_nonnegative_zero_iff_equal(
        seed_a in any::<u64>(),
        seed_b in any::<u64>(),
    ) {
        let a = rnd_image(seed_a, 6, 7);
        let b = rnd_image(seed_b, 6, 7);
        let ab = mse(&a, &b).unwrap();
        prop_assert_eq!(ab, mse(&b, &a).unwrap());
        prop_assert!(ab >= 0.0);
        prop_assert_eq!(ab == 0.0, a == b);
    }

    #[test]
    fn prop_psnr_reconstructs_from_mse(seed_a in any::<u64>(), seed_b in any::<u64>()) {
        let a = rnd_image(seed_a, 9, 4);
        let b = rnd_image(seed_b, 9, 4);
        let report = metrics_report(&a, &b).unwrap();
        if report.mse == 0.0 {
            prop_assert_eq!(report.psnr, f64::INFINITY);
        } else {
            let reconstructed = 10.0 * (report.peak * report.peak / report.mse).log10();
            prop_assert!((report.psnr - reconstructed).abs() < 1e-9);
        }
    }

    #[test]
    fn prop_psnr_decreases_as_mse_increases(seeds in proptest::collection::vec(any::<u64>(), 5)) {
        // Sorting pair reports by mse ascending equals sorting by psnr descending.
        let reference = rnd_image(12345, 8, 8);
        let mut reports: Vec<_> = seeds
            .iter()
            .map(|&s| metrics_report(&reference, &rnd_image(s, 8, 8)).unwrap())
            .collect();
        reports.sort_by(|a, b| a.mse.total_cmp(&b.mse));
        for pair in reports.windows(2) {
            prop_assert!(pair[0].psnr >= pair[1].psnr);
        }
    }
}
