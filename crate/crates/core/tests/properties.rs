//! Property-based invariants.

use contpath_core::binom::{cont_binom, cont_binom_bessel, interval_family_to_path, pde_residual, IntervalFamily};
use contpath_core::catalan::CoeffTable;
use contpath_core::dist::CenteredDensity;
use contpath_core::lattice::{
    count_paths, count_paths_by_pattern, count_paths_by_pattern_restricted, interior_lattice_points,
    pattern_decomposition, pattern_of, HalfspaceRegion, LatticePath, Pattern, StepSet,
};
use contpath_core::oracle::{gamma_component_volume, mc_volume, PolytopeSpec};
use contpath_core::SeriesConfig;
use num_bigint::BigUint;
use proptest::prelude::*;

fn cfg() -> SeriesConfig {
    SeriesConfig::default()
}

fn step_sets() -> impl Strategy<Value = StepSet> {
    (1usize..=2, 1usize..=3)
        .prop_flat_map(|(d, k)| prop::collection::vec(prop::collection::vec(-1i64..=1, d), k))
        .prop_filter_map("steps must be distinct", |v| StepSet::new(v).ok())
}

fn point(d: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binomial_is_symmetric(x in 0.0f64..10.0, t in 0.0f64..1.0) {
        let s = x * t;
        let a = cont_binom(x, s, &cfg()).unwrap();
        let b = cont_binom(x, x - s, &cfg()).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * a);
    }

    #[test]
    fn series_and_bessel_agree(x in 0.1f64..10.0, t in 0.01f64..0.99) {
        let s = x * t;
        let a = cont_binom(x, s, &cfg()).unwrap();
        let b = cont_binom_bessel(x, s, &cfg()).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn binomial_peaks_at_midpoint(x in 0.5f64..10.0, t in 0.0f64..1.0) {
        let mid = cont_binom(x, 0.5 * x, &cfg()).unwrap();
        prop_assert!(cont_binom(x, x * t, &cfg()).unwrap() <= mid * (1.0 + 1e-15));
    }

    #[test]
    fn pde_residual_is_small(x in 1.0f64..8.0, t in 0.2f64..0.8) {
        let s = x * t;
        let r = pde_residual(x, s, 1e-3, &cfg()).unwrap();
        let f = cont_binom(x, s, &cfg()).unwrap();
        prop_assert!(r.abs() < 1e-5 * f, "residual {r} against {f}");
    }

    #[test]
    fn pattern_decomposition_sums_to_total(steps in step_sets(), l in 0usize..=7, seed in any::<u64>()) {
        let d = steps.dim();
        let p: Vec<i64> = (0..d).map(|i| ((seed >> (8 * i)) % 3) as i64 - 1).collect();
        let q: Vec<i64> = (0..d).map(|i| ((seed >> (8 * i + 4)) % 5) as i64 - 2).collect();
        let total = count_paths(&steps, &p, &q, l).unwrap();
        let parts = pattern_decomposition(&steps, &p, &q, l, &HalfspaceRegion::whole_space()).unwrap();
        let summed: BigUint = parts.iter().map(|(_, n)| n.clone()).sum();
        prop_assert_eq!(total, summed);
    }

    #[test]
    fn interior_points_count_paths_by_pattern(
        steps in step_sets(),
        l in 1usize..=7,
        len in 1usize..=4,
        first in 1usize..=3,
        q in point(2),
        restrict in any::<bool>(),
    ) {
        let k = steps.len();
        let d = steps.dim();
        let labels: Vec<usize> = (0..len).map(|i| (first + i - 1) % k + 1).collect();
        prop_assume!(labels.windows(2).all(|w| w[0] != w[1]));
        let c = Pattern::new(labels).unwrap();
        let p = vec![0; d];
        let q: Vec<i64> = q[..d].to_vec();
        let region = if restrict {
            let mut normal = vec![0; d];
            normal[d - 1] = 1;
            HalfspaceRegion::new(vec![(normal, -1)])
        } else {
            HalfspaceRegion::whole_space()
        };
        prop_assume!(region.contains(&q));
        let spec = PolytopeSpec::PathComponent {
            steps: steps.clone(),
            pattern: c.clone(),
            start: p.clone(),
            end: q.clone(),
            time: l,
            region: region.clone(),
        };
        let a = interior_lattice_points(&spec).unwrap();
        let b = count_paths_by_pattern_restricted(&steps, &p, &q, l, &c, &region).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn pattern_of_reproduces_its_own_counts(labels in prop::collection::vec(1usize..=2, 0..8)) {
        let path = LatticePath::new(vec![0, 0], labels.clone());
        let c = pattern_of(&path);
        let steps = StepSet::binomial();
        let end = path.points(&steps).unwrap().pop().unwrap();
        let n = count_paths_by_pattern(&steps, &[0, 0], &end, labels.len(), &c).unwrap();
        prop_assert!(n >= BigUint::from(1u32));
    }

    #[test]
    fn component_volume_swaps_roles(len in 2usize..=9, first in 1usize..=2, s in 0.0f64..4.0, u in 0.0f64..4.0) {
        let c = Pattern::alternating(first, len);
        let swapped = Pattern::new(c.entries().iter().map(|&e| 3 - e).collect()).unwrap().reversed();
        let a = gamma_component_volume(&c, s, u).unwrap();
        let b = gamma_component_volume(&swapped, u, s).unwrap();
        prop_assert!((a - b).abs() <= 1e-14 * a.max(1.0));
    }

    #[test]
    fn density_is_even(x in 0.1f64..50.0, t in 0.0f64..0.5) {
        let d = CenteredDensity::new(x).unwrap();
        let a = d.density(x * t, &cfg()).unwrap();
        let b = d.density(-x * t, &cfg()).unwrap();
        let direct = cont_binom(x, 0.5 * x - x * t, &cfg()).unwrap() / (2.0 * x.exp_m1());
        prop_assert!(a >= 0.0);
        prop_assert_eq!(a, b);
        prop_assert!((a - direct).abs() <= 1e-12 * a);
    }

    #[test]
    fn interval_map_is_injective(cuts in prop::collection::btree_set(1u32..100, 0..8), other in prop::collection::btree_set(1u32..100, 0..8)) {
        let fam = |c: &std::collections::BTreeSet<u32>| {
            let v: Vec<f64> = c.iter().map(|&k| k as f64 / 20.0).collect();
            let ivs = v.chunks_exact(2).map(|w| (w[0], w[1])).collect();
            IntervalFamily::new(5.0, ivs).unwrap()
        };
        let (a, b) = (fam(&cuts), fam(&other));
        let (pa, pb) = (interval_family_to_path(&a), interval_family_to_path(&b));
        prop_assert!((pa.total_time() - 5.0).abs() < 1e-12);
        prop_assert_eq!(a == b, pa == pb);
    }
}

#[test]
fn monte_carlo_is_reproducible() {
    let spec = PolytopeSpec::catalan_component(2, 3.0, 1.0).unwrap();
    let a = mc_volume(&spec, 50_000, 99).unwrap();
    let b = mc_volume(&spec, 50_000, 99).unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    assert_ne!(a.value, mc_volume(&spec, 50_000, 100).unwrap().value);
}

#[test]
fn coefficient_rows_are_homogeneous() {
    let table = CoeffTable::new(10, 22);
    for (n, k, l, v) in table.iter() {
        if k + l != 2 * n {
            assert_eq!(*v, 0.into(), "I^{n}_{{{k},{l}}}");
        }
    }
}
