use lrdkit::changepoint::*;
use lrdkit::rng::{derive_seed, seeded};
use lrdkit::synthesis::{FgnSampler, LfgnSampler, SpectralProfile};
use lrdkit::UniformSeries;
use rand_distr::{Distribution, Normal};

fn normal(n: usize, mean: f64, sd: f64, seed: u64) -> Vec<f64> {
    let mut rng = seeded(seed);
    let d = Normal::new(mean, sd).unwrap();
    (0..n).map(|_| d.sample(&mut rng)).collect()
}

fn series(v: Vec<f64>) -> UniformSeries {
    UniformSeries::from_values(v).unwrap()
}

/// Contrast of one segment, computed with a two-pass variance.
fn direct_cost(y: &[f64], floor2: f64) -> f64 {
    let n = y.len() as f64;
    let m = y.iter().sum::<f64>() / n;
    let var = y.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n;
    n * var.max(floor2).ln()
}

/// Exhaustive search over all change-instant tuples.
fn brute_force(y: &[f64], k: usize, min_seg: usize) -> (f64, Vec<usize>) {
    let n = y.len();
    let m = y.iter().sum::<f64>() / n as f64;
    let sd = (y.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n as f64).sqrt();
    let floor2 = (1e-6 * sd).powi(2);
    let mut best = (f64::INFINITY, vec![]);
    #[allow(clippy::too_many_arguments)]
    fn rec(
        y: &[f64],
        start: usize,
        left: usize,
        min_seg: usize,
        floor2: f64,
        taus: &mut Vec<usize>,
        acc: f64,
        best: &mut (f64, Vec<usize>),
    ) {
        let n = y.len();
        if left == 1 {
            if n - start >= min_seg {
                let total = acc + direct_cost(&y[start..], floor2);
                if total < best.0 {
                    *best = (total, taus.clone());
                }
            }
            return;
        }
        for t in start + min_seg..=n - (left - 1) * min_seg {
            taus.push(t);
            rec(y, t, left - 1, min_seg, floor2, taus, acc + direct_cost(&y[start..t], floor2), best);
            taus.pop();
        }
    }
    rec(y, 0, k, min_seg, floor2, &mut vec![], 0.0, &mut best);
    best
}

#[test]
fn dp_equals_exhaustive_enumeration() {
    let cfg = ChangepointConfig { min_seg: 8, ..Default::default() };
    let mut cases = 0;
    for seed in 0..6u64 {
        for n in [60usize, 120, 200] {
            // Random levels and spreads on random pieces.
            let mut y = Vec::with_capacity(n);
            let mut rng_seed = derive_seed(seed, n as u64, 0);
            while y.len() < n {
                rng_seed = derive_seed(rng_seed, 1, 1);
                let len = 10 + (rng_seed % 50) as usize;
                let level = (rng_seed % 7) as f64;
                let spread = 0.5 + (rng_seed % 3) as f64;
                y.extend(normal(len.min(n - y.len()), level, spread, rng_seed));
            }
            let s = series(y.clone());
            let k_top = if n <= 120 { 4 } else { 3 };
            for k in 1..=k_top {
                let dp = detect_k(&s, k, &cfg).unwrap();
                let (bf_cost, bf_taus) = brute_force(&y, k, cfg.min_seg);
                assert!(
                    (dp.contrast - bf_cost).abs() <= 1e-9 * bf_cost.abs().max(1.0),
                    "seed {seed} n {n} k {k}: {} vs {bf_cost}",
                    dp.contrast
                );
                assert_eq!(dp.taus, bf_taus, "seed {seed} n {n} k {k}");
                cases += 1;
            }
        }
    }
    assert_eq!(cases, 6 * (4 + 4 + 3));
}

#[test]
fn dp_equals_exhaustive_for_four_segments_at_n_200() {
    let cfg = ChangepointConfig { min_seg: 20, ..Default::default() };
    let mut y = normal(50, 0.0, 1.0, 1);
    y.extend(normal(70, 1.0, 2.0, 2));
    y.extend(normal(40, -1.0, 0.5, 3));
    y.extend(normal(40, 0.5, 1.0, 4));
    let dp = detect_k(&series(y.clone()), 4, &cfg).unwrap();
    let (cost, taus) = brute_force(&y, 4, 20);
    assert_eq!(dp.taus, taus);
    assert!((dp.contrast - cost).abs() < 1e-9 * cost.abs());
}

#[test]
fn noiseless_step_is_located_and_matches_scan() {
    for seed in 0..20 {
        let mut y = vec![0.0; 100];
        y.extend(vec![5.0; 100]);
        let jitter = normal(200, 0.0, 0.01, seed);
        let y: Vec<f64> = y.iter().zip(&jitter).map(|(a, b)| a + b).collect();
        let seg = detect_k(&series(y.clone()), 2, &ChangepointConfig::default()).unwrap();
        assert!((99..=101).contains(&seg.taus[0]), "seed {seed}: {:?}", seg.taus);
        let (_, taus) = brute_force(&y, 2, 20);
        assert_eq!(seg.taus, taus);
    }
}

#[test]
fn variance_change_is_localized() {
    let cfg = ChangepointConfig::default();
    let hits = (0..100)
        .filter(|&s| {
            let mut y = normal(500, 0.0, 1.0, derive_seed(9, 0, s));
            y.extend(normal(500, 0.0, 3.0, derive_seed(9, 1, s)));
            let seg = detect_k(&series(y), 2, &cfg).unwrap();
            seg.taus[0].abs_diff(500) <= 25
        })
        .count();
    assert!(hits >= 90, "{hits}/100");
}

#[test]
fn staircase_selects_three_segments() {
    let mut y = vec![0.0; 150];
    y.extend(vec![4.0; 150]);
    y.extend(vec![-3.0; 150]);
    let jitter = normal(450, 0.0, 0.05, 5);
    let y: Vec<f64> = y.iter().zip(&jitter).map(|(a, b)| a + b).collect();
    let scan = select_k(&series(y.clone()), 8, &ChangepointConfig::default()).unwrap();
    assert_eq!(scan.selected, 3, "{:?}", scan.betas);
    let seg = scan.selected_segmentation();
    let (_, taus) = brute_force(&y, 3, 20);
    assert_eq!(seg.taus, taus);
}

#[test]
fn white_noise_selects_one_segment() {
    let cfg = ChangepointConfig::default();
    let ones = (0..100)
        .filter(|&s| {
            let y = normal(500, 0.0, 1.0, derive_seed(10, 0, s));
            select_k(&series(y), 6, &cfg).unwrap().selected == 1
        })
        .count();
    assert!(ones >= 80, "{ones}/100");
}

#[test]
fn race_like_surrogate_selects_three_or_four() {
    let cfg = ChangepointConfig::default();
    let mut ok = 0;
    for s in 0..20u64 {
        // Rise, plateau and fall in mean with a variance shift, over correlated noise.
        let n = 3000;
        let noise = FgnSampler::new(0.8, 1.0, n).unwrap().sample(derive_seed(11, 0, s)).into_values();
        let y: Vec<f64> = (0..n)
            .map(|i| {
                let (level, sd) = if i < 800 {
                    (150.0, 3.0)
                } else if i < 2200 {
                    (165.0, 4.0)
                } else {
                    (172.0, 6.0)
                };
                level + sd * noise[i]
            })
            .collect();
        let k = select_k(&series(y), 8, &cfg).unwrap().selected;
        if k == 3 || k == 4 {
            ok += 1;
        }
    }
    assert!(ok >= 16, "{ok}/20");
}

#[test]
fn contrast_curve_is_non_increasing() {
    let profile = SpectralProfile::new(1.2, 1.0, 0.2, 4.0).unwrap();
    let y = LfgnSampler::new(&profile, 2000, 1.0).unwrap().sample(3);
    let scan = select_k(&y, 8, &ChangepointConfig::default()).unwrap();
    assert!(scan.contrasts.windows(2).all(|w| w[1] <= w[0] + 1e-9));
    assert!(scan.betas.iter().all(|b| *b >= -1e-9));
}

#[test]
fn shift_scale_and_reversal() {
    let mut y = normal(200, 0.0, 1.0, 20);
    y.extend(normal(150, 2.0, 1.5, 21));
    y.extend(normal(150, -1.0, 0.7, 22));
    let cfg = ChangepointConfig::default();
    let base = detect_k(&series(y.clone()), 3, &cfg).unwrap();
    let shifted: Vec<f64> = y.iter().map(|v| v + 1000.0).collect();
    assert_eq!(detect_k(&series(shifted), 3, &cfg).unwrap().taus, base.taus);
    let scaled: Vec<f64> = y.iter().map(|v| v * 7.5).collect();
    assert_eq!(detect_k(&series(scaled), 3, &cfg).unwrap().taus, base.taus);
    let reversed: Vec<f64> = y.iter().rev().copied().collect();
    let mut rev_taus: Vec<usize> =
        detect_k(&series(reversed), 3, &cfg).unwrap().taus.iter().map(|t| y.len() - t).collect();
    rev_taus.reverse();
    assert_eq!(rev_taus, base.taus);
}

#[test]
fn segments_partition_the_series() {
    let y = normal(400, 0.0, 1.0, 30);
    let seg = detect_k(&series(y), 4, &ChangepointConfig::default()).unwrap();
    assert_eq!(seg.segments.first().unwrap().lo, 0);
    assert_eq!(seg.segments.last().unwrap().hi, 400);
    for w in seg.segments.windows(2) {
        assert_eq!(w[0].hi, w[1].lo);
    }
    assert!(seg.segments.iter().all(|s| s.hi - s.lo >= 20 && s.std > 0.0));
}
