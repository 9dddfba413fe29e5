use proptest::prelude::*;
use speckbench::{add_speckle, noise_field, Error, Image, NoiseSpec};

#[test]
fn invalid_variances_are_rejected() {
    for v in [0.0, -0.1, 1.0001, f64::NAN, f64::INFINITY] {
        assert!(matches!(
            NoiseSpec::new(v, 1),
            Err(Error::InvalidVariance(_))
        ));
    }
    assert!(NoiseSpec::new(1.0, 1).is_ok());
    assert!(NoiseSpec::new(1e-9, 1).is_ok());
}

#[test]
fn field_is_deterministic() {
    let spec = NoiseSpec::new(0.25, 42).unwrap();
    let a = noise_field(33, 17, &spec).unwrap();
    let b = noise_field(33, 17, &spec).unwrap();
    assert_eq!(a, b);
}

#[test]
fn field_depends_on_seed() {
    let a = noise_field(8, 8, &NoiseSpec::new(0.25, 1).unwrap()).unwrap();
    let b = noise_field(8, 8, &NoiseSpec::new(0.25, 2).unwrap()).unwrap();
    assert_ne!(a, b);
}

#[test]
fn values_depend_only_on_seed_and_pixel_index() {
    // A wider field starts with the same values: the derivation is counter
    // based, not geometry based, so parallel row generation cannot reorder it.
    let spec = NoiseSpec::new(0.5, 9).unwrap();
    let narrow = noise_field(16, 1, &spec).unwrap();
    let wide = noise_field(64, 4, &spec).unwrap();
    assert_eq!(narrow.values, wide.values[..16]);
}

#[test]
fn support_bound_at_low_variance() {
    // Uniform with variance 0.01 is supported on +/- sqrt(0.03).
    let limit = 0.03_f64.sqrt();
    let field = noise_field(128, 128, &NoiseSpec::new(0.01, 7).unwrap()).unwrap();
    assert!(field.values.iter().all(|n| n.abs() <= limit));
}

#[test]
fn large_field_statistics() {
    // Law-of-large-numbers bounds: mean within 3*sqrt(v/N), variance within
    // 5% of v, support within sqrt(3v).
    let n = 1024.0 * 1024.0;
    for v in [0.01, 0.05, 0.5] {
        let field = noise_field(1024, 1024, &NoiseSpec::new(v, 7).unwrap()).unwrap();
        let mean = field.values.iter().sum::<f64>() / n;
        let var = field.values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        let max = field.values.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
        assert!(mean.abs() <= 3.0 * (v / n).sqrt(), "v={v} mean={mean}");
        assert!((var - v).abs() <= 0.05 * v, "v={v} var={var}");
        assert!(max <= (3.0 * v).sqrt(), "v={v} max={max}");
    }
}

#[test]
fn add_speckle_matches_noise_field() {
    let img = Image::new_byte(9, 5, (0..45).map(|k| (k * 5) as u8).collect())
        .unwrap()
        .to_unit()
        .unwrap();
    let spec = NoiseSpec::new(0.3, 11).unwrap();
    let noisy = add_speckle(&img, &spec).unwrap();
    let field = noise_field(9, 5, &spec).unwrap();
    for ((&x, &n), &y) in img
        .as_units()
        .unwrap()
        .iter()
        .zip(&field.values)
        .zip(noisy.as_units().unwrap())
    {
        assert_eq!(y, (x + n * x).clamp(0.0, 1.0));
    }
}

#[test]
fn zero_image_is_a_fixpoint() {
    let img = Image::new_unit(16, 16, vec![0.0; 256]).unwrap();
    let noisy = add_speckle(&img, &NoiseSpec::new(0.9, 123).unwrap()).unwrap();
    assert_eq!(noisy, img);
}

#[test]
fn bright_pixels_clamp_to_one() {
    let img = Image::new_unit(32, 32, vec![1.0; 1024]).unwrap();
    let spec = NoiseSpec::new(0.9, 5).unwrap();
    let field = noise_field(32, 32, &spec).unwrap();
    assert!(field.values.iter().any(|&n| n > 0.0), "need a positive draw");
    let noisy = add_speckle(&img, &spec).unwrap();
    for (&n, &y) in field.values.iter().zip(noisy.as_units().unwrap()) {
        if n >= 0.0 {
            assert_eq!(y, 1.0, "positive noise on a 1.0 pixel clamps to 1.0");
        } else {
            assert!(y < 1.0);
        }
    }
}

#[test]
fn constant_half_image_output_variance() {
    // Var(x + n x) = x^2 v for constant x: 0.25 * 0.04 = 0.01.
    let img = Image::new_unit(512, 512, vec![0.5; 512 * 512]).unwrap();
    let noisy = add_speckle(&img, &NoiseSpec::new(0.04, 3).unwrap()).unwrap();
    let n = noisy.len() as f64;
    let mean = noisy.as_units().unwrap().iter().sum::<f64>() / n;
    let var = noisy
        .as_units()
        .unwrap()
        .iter()
        .map(|x| (x - mean) * (x - mean))
        .sum::<f64>()
        / n;
    assert!((var - 0.01).abs() <= 0.0005, "var={var}");
}

#[test]
fn add_speckle_rejects_byte_domain() {
    let img = Image::constant_byte(4, 4, 7).unwrap();
    assert!(matches!(
        add_speckle(&img, &NoiseSpec::new(0.1, 1).unwrap()),
        Err(Error::DomainMismatch(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn prop_support_bound(v in 0.001f64..=1.0, seed in any::<u64>()) {
        let limit = (3.0 * v).sqrt();
        let field = noise_field(32, 32, &NoiseSpec::new(v, seed).unwrap()).unwrap();
        prop_assert!(field.values.iter().all(|n| n.abs() <= limit));
    }

    #[test]
    fn prop_output_stays_in_unit_range(v in 0.001f64..=1.0, seed in any::<u64>()) {
        let samples: Vec<f64> = (0..64).map(|k| f64::from(k) / 63.0).collect();
        let img = Image::new_unit(8, 8, samples).unwrap();
        let noisy = add_speckle(&img, &NoiseSpec::new(v, seed).unwrap()).unwrap();
        prop_assert!(noisy.as_units().unwrap().iter().all(|y| (0.0..=1.0).contains(y)));
    }
}
