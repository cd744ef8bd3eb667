//! The fourteen acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the table is always printed:
//! `cargo test -p contpath-core --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::rel_err;
use contpath_core::binom::{cont_binom, cont_binom_bessel, pde_residual};
use contpath_core::catalan::{
    catalan_series_coeffs, integral_equation_residual, lambda_volume, majorant_tail, CoeffTable,
};
use contpath_core::dist::{
    binom_integral, centered_even_moment, centered_moment, delta_limit_check, moment_half, moment_p, moment_quadrature,
    normalizer_bessel, normalizer_double_series, normalizer_quadrature, sample, CenteredDensity, ContBinomDist,
};
use contpath_core::lattice::{binomial, catalan_number, dyck_by_peaks, dyck_count, narayana_number};
use contpath_core::oracle::{binomial_interior_total, mc_volume, pattern_sum_closed, pattern_sum_volume, PolytopeSpec};
use contpath_core::{QuadConfig, SeriesConfig};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
/// Name, runtime limit in seconds, check.
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

fn cfg() -> SeriesConfig {
    SeriesConfig::default()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn boundary_and_symmetry() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 1..=50 {
        let x = 10.0 * i as f64 / 50.0;
        ensure(ok(cont_binom(x, 0.0, &cfg()))? == 2.0 + x, || {
            format!("{{{x}<0>}} != {}", 2.0 + x)
        })?;
        ensure(ok(cont_binom(x, x, &cfg()))? == 2.0 + x, || {
            format!("{{{x}<{x}>}} != {}", 2.0 + x)
        })?;
        for j in 0..50 {
            let s = x * j as f64 / 49.0;
            let d = (ok(cont_binom(x, s, &cfg()))? - ok(cont_binom(x, x - s, &cfg()))?).abs();
            worst = worst.max(d);
            ensure(d < 1e-12, || format!("asymmetry {d:e} at ({x}, {s})"))?;
        }
    }
    Ok(format!("max |f(s) - f(x-s)| = {worst:.1e}"))
}

fn integral_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for x in [0.5, 1.0, 2.0, 5.0, 10.0] {
        let closed = 2.0 * f64::exp_m1(x);
        let e = rel_err(ok(binom_integral(x, &cfg(), &QuadConfig::default()))?, closed);
        worst = worst.max(e);
        ensure(e < 1e-9, || format!("x = {x}: relative error {e:e}"))?;
    }
    Ok(format!("max relative error {worst:.1e}"))
}

fn bessel_closed_form() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 1..=50 {
        let x = 0.1 + 9.9 * i as f64 / 50.0;
        for j in 0..=40 {
            let s = 0.05 + (x - 0.1) * j as f64 / 40.0;
            let a = ok(cont_binom(x, s, &cfg()))?;
            let b = ok(cont_binom_bessel(x, s, &cfg()))?;
            let e = rel_err(b, a);
            worst = worst.max(e);
            ensure(e < 1e-10, || format!("({x}, {s}): {a} vs {b}"))?;
        }
    }
    Ok(format!("max relative difference {worst:.1e}"))
}

fn pde_ratio() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ratios = Vec::new();
    for _ in 0..10 {
        let x = rng.random_range(1.0..9.0);
        let s = x * rng.random_range(0.1..0.9);
        let r = ok(pde_residual(x, s, 1e-2, &cfg()))? / ok(pde_residual(x, s, 5e-3, &cfg()))?;
        ensure((r - 4.0).abs() <= 0.5, || format!("({x}, {s}): ratio {r}"))?;
        ratios.push(r);
    }
    let (lo, hi) = ratios
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), &r| (a.min(r), b.max(r)));
    Ok(format!("ratios in [{lo:.4}, {hi:.4}]"))
}

fn discrete_anchoring() -> Outcome {
    let mut cases = 0;
    for x in 2..=8u32 {
        for s in 1..x {
            let got = ok(binomial_interior_total(s, x - s))?;
            let want = binomial(x.into(), s.into());
            ensure(got == want, || format!("C({x}, {s}): {got} vs {want}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} exact matches"))
}

fn triple_check() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 1..=20 {
        let x = 0.5 * i as f64;
        for j in 0..=20 {
            let s = x * j as f64 / 20.0;
            let f = ok(cont_binom(x, s, &cfg()))?;
            let a = ok(pattern_sum_volume(s, x - s, &cfg()))?;
            let b = ok(pattern_sum_closed(s, x - s, &cfg()))?;
            let e = rel_err(a, f).max(rel_err(b, f)).max(rel_err(a, b));
            worst = worst.max(e);
            ensure(e < 1e-8, || format!("({x}, {s}): {f} {a} {b}"))?;
        }
    }
    Ok(format!("max relative difference {worst:.1e}"))
}

fn normalizers() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in [0.2, 0.3, 0.7] {
        for x in [1.0, 2.0, 5.0] {
            let d = ok(ContBinomDist::new(x, p))?;
            let a = ok(normalizer_quadrature(&d, &cfg(), &QuadConfig::default()))?;
            let b = ok(normalizer_double_series(&d, &cfg()))?;
            let c = ok(normalizer_bessel(&d, &cfg()))?;
            let e = rel_err(b, a).max(rel_err(c, a)).max(rel_err(c, b));
            worst = worst.max(e);
            ensure(e < 1e-7, || format!("({x}, {p}): {a} {b} {c}"))?;
        }
    }
    Ok(format!("max pairwise relative difference {worst:.1e}"))
}

fn moments() -> Outcome {
    let mut worst: f64 = 0.0;
    for x in [0.5, 1.0, 2.0, 5.0, 10.0] {
        for p in [0.5, 0.3] {
            let d = ok(ContBinomDist::new(x, p))?;
            for l in 1..=4 {
                let series = if p == 0.5 {
                    ok(moment_half(x, l, &cfg()))?
                } else {
                    ok(moment_p(&d, l, &cfg()))?
                };
                let quad = ok(moment_quadrature(&d, l, &cfg(), &QuadConfig::default()))?;
                let e = rel_err(series, quad);
                worst = worst.max(e);
                ensure(e < 1e-8, || format!("({x}, {p}) l = {l}: {series} vs {quad}"))?;
            }
        }
        for r in [1, 3, 5, 7] {
            ensure(ok(centered_moment(x, r, &cfg()))? == 0.0, || {
                format!("odd moment {r} at x = {x}")
            })?;
        }
    }

    let x = 10.0;
    let n = 1_000_000usize;
    let draws = ok(sample(&ok(CenteredDensity::new(x))?, n, 1, &cfg()))?;
    let nf = n as f64;
    let var = ok(centered_even_moment(x, 1, &cfg()))?;
    let m4 = ok(centered_even_moment(x, 2, &cfg()))?;
    let mean = draws.iter().sum::<f64>() / nf;
    let mean_z = mean / (var / nf).sqrt();
    let second = draws.iter().map(|s| s * s).sum::<f64>() / nf;
    let var_z = (second - var) / ((m4 - var * var) / nf).sqrt();
    ensure(mean_z.abs() < 4.0, || {
        format!("sample mean {mean} is {mean_z:.2} standard errors out")
    })?;
    ensure(var_z.abs() < 4.0, || {
        format!("sample variance {second} is {var_z:.2} standard errors out")
    })?;
    Ok(format!(
        "moments {worst:.1e}; sampler z-scores mean {mean_z:.2}, variance {var_z:.2}"
    ))
}

fn catalan_volumes() -> Outcome {
    let grid = [(2.0, 0.0), (3.0, 1.0), (4.0, 0.5), (1.5, 1.0)];
    for (x, y) in grid {
        let want: f64 = (x - y) * (x + 3.0 * y) / 8.0;
        let got = ok(lambda_volume(1, x, y))?;
        ensure((got - want).abs() <= 1e-12 * want.max(1.0), || {
            format!("Λ¹({x}, {y}): {got} vs {want}")
        })?;
    }
    let rule = common::gauss_legendre(8);
    let mut worst_z: f64 = 0.0;
    for n in 2..=3 {
        for (x, y) in grid {
            let got = ok(lambda_volume(n, x, y))?;
            let nested = common::lambda_nested(n, x, y, &rule);
            ensure((got - nested).abs() <= 1e-8 * nested.abs(), || {
                format!("Λ{n}({x}, {y}): {got} vs {nested}")
            })?;
        }
        let (x, y) = (3.0, 1.0);
        let est = ok(mc_volume(&ok(PolytopeSpec::catalan_component(n, x, y))?, 1_000_000, 9))?;
        let z = (est.value - ok(lambda_volume(n, x, y))?) / est.std_error;
        worst_z = worst_z.max(z.abs());
        ensure(z.abs() < 4.0, || {
            format!("Λ{n}({x}, {y}): Monte Carlo {} is {z:.2}σ out", est.value)
        })?;
    }
    Ok(format!("largest Monte Carlo deviation {worst_z:.2}σ"))
}

fn coefficient_table() -> Outcome {
    let t = CoeffTable::new(24, 24);
    t.check_side_conditions()?;
    let mut nonzero = 0;
    for (n, k, l, v) in t.iter() {
        if v.is_zero() {
            continue;
        }
        nonzero += 1;
        ensure(k + l == 2 * n, || {
            format!("I^{n}_{{{k},{l}}} = {v} off degree {}", 2 * n)
        })?;
        if n == 1 {
            ensure((k, l) == (1, 1) || (k, l) == (0, 2), || {
                format!("unexpected I^1_{{{k},{l}}} = {v}")
            })?;
        }
    }
    ensure(t.get(1, 1, 1) == Some(&BigInt::from(1)), || "I^1_{1,1} != 1".into())?;
    ensure(t.get(1, 0, 2) == Some(&BigInt::from(1)), || "I^1_{0,2} != 1".into())?;
    Ok(format!("{nonzero} nonzero entries"))
}

fn diagonal_series() -> Outcome {
    let coeffs = catalan_series_coeffs(24);
    let n_max = 8;
    let mut worst: f64 = 0.0;
    for x in [0.25, 0.5, 1.0] {
        let direct: f64 = (0..=n_max)
            .map(|n| lambda_volume(n, 2.0 * x, 0.0))
            .sum::<Result<f64, _>>()
            .map_err(|e| e.to_string())?;
        let tail = majorant_tail(2.0 * x, 0.0, n_max);
        let d = (coeffs.eval(x) - direct).abs();
        worst = worst.max(d);
        ensure(d <= 1e-9 + tail, || format!("x = {x}: difference {d:e}, tail {tail:e}"))?;
    }
    Ok(format!("max difference {worst:.1e}"))
}

fn integral_equation() -> Outcome {
    let mut worst: f64 = 0.0;
    for (x, y) in [(2.0, 0.0), (3.0, 1.0), (5.0, 2.0)] {
        let r = ok(integral_equation_residual(x, y, &QuadConfig::default()))?;
        worst = worst.max(r);
        ensure(r < 1e-6, || format!("({x}, {y}): residual {r:e}"))?;
    }
    Ok(format!("max residual {worst:.1e}"))
}

fn narayana_catalan() -> Outcome {
    for n in 0..=8usize {
        ensure(dyck_count(n) == catalan_number(n as u64), || format!("c_{n}"))?;
        for (i, v) in dyck_by_peaks(n).iter().enumerate() {
            let k = i as u64 + 1;
            ensure(*v == narayana_number(n as u64, k), || format!("N({n}, {k}): {v}"))?;
        }
    }
    Ok("n ≤ 8 exact".into())
}

fn delta_limit() -> Outcome {
    let vals = ok(delta_limit_check(
        f64::cos,
        &[1.0, 0.5, 0.1, 0.02],
        &cfg(),
        &QuadConfig::default(),
    ))?;
    ensure(vals.windows(2).all(|w| w[0] < w[1]), || {
        format!("not increasing: {vals:?}")
    })?;
    let gap = 1.0 - vals[3];
    ensure((0.0..1e-4).contains(&gap), || format!("final value {}", vals[3]))?;
    Ok(format!("values {vals:.6?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("boundary and symmetry", Some(1), boundary_and_symmetry),
        ("integral identity", Some(5), integral_identity),
        ("Bessel closed form", Some(2), bessel_closed_form),
        ("PDE residual ratio", None, pde_ratio),
        ("discrete anchoring", Some(30), discrete_anchoring),
        ("pattern-sum triple check", None, triple_check),
        ("normalizer consistency", None, normalizers),
        ("moments and sampler", Some(20), moments),
        ("Catalan volumes", None, catalan_volumes),
        ("coefficient table", None, coefficient_table),
        ("C(2x) series", None, diagonal_series),
        ("integral equation residual", None, integral_equation),
        ("Narayana and Catalan counts", Some(10), narayana_catalan),
        ("delta limit", None, delta_limit),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if elapsed > Duration::from_secs(*secs) => {
                Err(format!("took {:.2} s, limit {secs} s", elapsed.as_secs_f64()))
            }
            (o, _) => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag} {name} ({:.3} s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
