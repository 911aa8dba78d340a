use lrdkit::changepoint::{detect_k, ChangepointConfig};
use lrdkit::dfa::{dfa_profile, estimate_h_dfa};
use lrdkit::inference::loglog_fit;
use lrdkit::synthesis::{aggregate, difference, FgnSampler};
use lrdkit::UniformSeries;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn aggregate_then_difference_is_identity(values in prop::collection::vec(-1e3f64..1e3, 1..200)) {
        let s = UniformSeries::from_values(values).unwrap();
        let back = difference(&aggregate(&s));
        for (a, b) in s.values().iter().zip(back.values()) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()) * s.len() as f64);
        }
    }

    #[test]
    fn fgn_sampling_is_seed_deterministic(h in 0.05f64..0.95, seed in any::<u64>()) {
        let sampler = FgnSampler::new(h, 1.0, 256).unwrap();
        prop_assert_eq!(sampler.sample(seed), sampler.sample(seed));
    }

    #[test]
    fn loglog_slope_ignores_scaling_of_y(
        ys in prop::collection::vec(0.01f64..100.0, 5),
        c in 0.001f64..1000.0,
    ) {
        let x = [1.0, 2.0, 3.0, 5.0, 8.0];
        let base = loglog_fit(&x, &ys, None).unwrap();
        let scaled: Vec<f64> = ys.iter().map(|y| c * y).collect();
        let other = loglog_fit(&x, &scaled, None).unwrap();
        prop_assert!((base.slope - other.slope).abs() < 1e-9);
        prop_assert!((other.intercept - base.intercept - c.ln()).abs() < 1e-9);
    }

    #[test]
    fn dfa_estimate_is_scale_invariant(seed in any::<u64>(), c in 0.01f64..100.0) {
        let s = FgnSampler::new(0.7, 1.0, 1024).unwrap().sample(seed);
        let scaled = UniformSeries::from_values(s.values().iter().map(|v| c * v).collect()).unwrap();
        let windows = [4, 8, 16, 32, 64, 128];
        let a = estimate_h_dfa(&dfa_profile(&s, &windows).unwrap()).unwrap();
        let b = estimate_h_dfa(&dfa_profile(&scaled, &windows).unwrap()).unwrap();
        prop_assert!((a.h_hat - b.h_hat).abs() < 1e-9);
    }

    #[test]
    fn change_points_ignore_level_shifts(
        values in prop::collection::vec(-10f64..10.0, 80..160),
        shift in -1e3f64..1e3,
    ) {
        let cfg = ChangepointConfig { min_seg: 10, ..Default::default() };
        let base = detect_k(&UniformSeries::from_values(values.clone()).unwrap(), 3, &cfg).unwrap();
        let moved: Vec<f64> = values.iter().map(|v| v + shift).collect();
        let other = detect_k(&UniformSeries::from_values(moved).unwrap(), 3, &cfg).unwrap();
        prop_assert_eq!(base.taus, other.taus);
    }
}
