//! Volume oracles: component volumes, pattern sums and Monte Carlo.

use contpath_core::catalan::lambda_volume;
use contpath_core::lattice::Pattern;
use contpath_core::oracle::{gamma_component_volume, mc_volume, pattern_sum_closed, pattern_sum_volume, PolytopeSpec};
use contpath_core::{SeriesConfig, VolumeMethod};

#[test]
fn pattern_sum_reproduces_closed_series() {
    let cfg = SeriesConfig::default();
    for i in 0..=8 {
        for j in 0..=8 {
            let (x, y) = (0.5 * i as f64, 0.5 * j as f64);
            let a = pattern_sum_volume(x, y, &cfg).unwrap();
            let b = pattern_sum_closed(x, y, &cfg).unwrap();
            assert!((a - b).abs() <= 1e-14 * b, "({x}, {y}): {a} vs {b}");
        }
    }
}

#[test]
fn monte_carlo_brackets_lambda_volumes() {
    for n in 1..=3 {
        for (x, y) in [(3.0, 1.0), (2.0, 0.0)] {
            let spec = PolytopeSpec::catalan_component(n, x, y).unwrap();
            let est = mc_volume(&spec, 1_000_000, 11).unwrap();
            let exact = lambda_volume(n, x, y).unwrap();
            assert_eq!(est.method, VolumeMethod::MonteCarlo);
            assert!(
                (est.value - exact).abs() < 4.0 * est.std_error,
                "n = {n} ({x}, {y}): {est:?} vs {exact}"
            );
        }
    }
}

#[test]
fn monte_carlo_brackets_binomial_components() {
    for (c, s, u) in [
        (vec![1, 2], 1.0, 1.5),
        (vec![1, 2, 1, 2], 2.0, 1.0),
        (vec![1, 2, 1], 2.0, 1.0),
        (vec![2, 1, 2, 1], 1.5, 2.0),
    ] {
        let pattern = Pattern::new(c).unwrap();
        let exact = gamma_component_volume(&pattern, s, u).unwrap();
        let spec = PolytopeSpec::binomial_component(pattern, s, u).unwrap();
        let est = mc_volume(&spec, 1_000_000, 5).unwrap();
        if est.method == VolumeMethod::Exact {
            assert_eq!(est.value, exact);
        } else {
            assert!((est.value - exact).abs() <= 4.0 * est.std_error, "{est:?} vs {exact}");
        }
    }
}
