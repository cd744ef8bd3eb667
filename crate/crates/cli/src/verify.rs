//! `verify all`: the acceptance checks run against the library's own
//! independent evaluation routes (series against Bessel form, series against
//! quadrature, counts against closed forms, Monte Carlo against exact volumes).

use std::time::Instant;

use contpath_core::binom::{cont_binom, cont_binom_bessel, pde_residual};
use contpath_core::catalan::{
    catalan_series_coeffs, integral_equation_residual, lambda_volume, lambda_volume_exact, majorant_tail,
    narayana_anchor, CoeffTable,
};
use contpath_core::dist::{
    binom_integral, centered_even_moment, centered_moment, delta_limit_check, moment_half, moment_p, moment_quadrature,
    normalizer_bessel, normalizer_double_series, normalizer_quadrature, sample, CenteredDensity, ContBinomDist,
};
use contpath_core::lattice::{
    binomial, catalan_number, count_paths_restricted, dyck_by_peaks, dyck_count, narayana_number,
    pattern_decomposition, HalfspaceRegion, StepSet,
};
use contpath_core::oracle::{binomial_interior_total, mc_volume, pattern_sum_closed, pattern_sum_volume, PolytopeSpec};
use contpath_core::quad::try_integrate_2d;
use contpath_core::Result as CoreResult;
use num_bigint::BigUint;
use num_rational::BigRational;

use crate::commands::Ctx;
use crate::output::Record;

type Check = Result<String, String>;
type CheckFn = fn(&Suite) -> Check;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: CoreResult<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

struct Suite {
    fast: bool,
    ctx: Ctx,
}

impl Suite {
    fn grid(&self, full: usize, fast: usize) -> usize {
        if self.fast {
            fast
        } else {
            full
        }
    }

    fn boundary_and_symmetry(&self) -> Check {
        let cfg = &self.ctx.series;
        let n = self.grid(50, 20);
        for i in 1..=n {
            let x = 10.0 * i as f64 / n as f64;
            ensure(
                ok(cont_binom(x, 0.0, cfg))? == 2.0 + x && ok(cont_binom(x, x, cfg))? == 2.0 + x,
                || format!("boundary at x = {x}"),
            )?;
            for j in 0..n {
                let s = x * j as f64 / (n - 1) as f64;
                let d = (ok(cont_binom(x, s, cfg))? - ok(cont_binom(x, x - s, cfg))?).abs();
                ensure(d < 1e-12, || format!("asymmetry {d:e} at ({x}, {s})"))?;
            }
        }
        Ok(format!("{n}x{n} grid"))
    }

    fn integral_identity(&self) -> Check {
        let mut worst: f64 = 0.0;
        for x in [0.5, 1.0, 2.0, 5.0, 10.0] {
            let e = rel(
                ok(binom_integral(x, &self.ctx.series, &self.ctx.quad))?,
                2.0 * x.exp_m1(),
            );
            worst = worst.max(e);
            ensure(e < 1e-9, || format!("x = {x}: {e:e}"))?;
        }
        Ok(format!("max relative error {worst:.1e}"))
    }

    fn bessel_form(&self) -> Check {
        let cfg = &self.ctx.series;
        let n = self.grid(50, 15);
        let mut worst: f64 = 0.0;
        for i in 1..=n {
            let x = 0.1 + 9.9 * i as f64 / n as f64;
            for j in 0..=n {
                let s = 0.05 + (x - 0.1) * j as f64 / n as f64;
                let e = rel(ok(cont_binom_bessel(x, s, cfg))?, ok(cont_binom(x, s, cfg))?);
                worst = worst.max(e);
                ensure(e < 1e-10, || format!("({x}, {s}): {e:e}"))?;
            }
        }
        Ok(format!("max relative difference {worst:.1e}"))
    }

    fn pde_ratio(&self) -> Check {
        let points = [
            (1.5, 0.5),
            (2.0, 1.0),
            (3.0, 1.0),
            (3.5, 2.5),
            (4.0, 0.7),
            (5.0, 2.5),
            (6.0, 4.0),
            (7.0, 1.5),
            (8.0, 6.0),
            (9.0, 4.5),
        ];
        for (x, s) in points {
            let r = ok(pde_residual(x, s, 1e-2, &self.ctx.series))? / ok(pde_residual(x, s, 5e-3, &self.ctx.series))?;
            ensure((r - 4.0).abs() <= 0.5, || format!("({x}, {s}): ratio {r}"))?;
        }
        Ok("10 points, ratio within 4 ± 0.5".into())
    }

    fn discrete_anchoring(&self) -> Check {
        let top = self.grid(8, 6) as u32;
        for x in 2..=top {
            for s in 1..x {
                let got = ok(binomial_interior_total(s, x - s))?;
                ensure(got == binomial(x.into(), s.into()), || {
                    format!("C({x}, {s}) gave {got}")
                })?;
            }
        }
        let steps = StepSet::dyck();
        let region = HalfspaceRegion::upper_half_plane();
        for l in (0..=self.grid(12, 8)).step_by(2) {
            let q = [l as i64, 0];
            let parts: BigUint = ok(pattern_decomposition(&steps, &[0, 0], &q, l, &region))?
                .into_iter()
                .map(|(_, n)| n)
                .sum();
            ensure(
                parts == ok(count_paths_restricted(&steps, &[0, 0], &q, l, &region))?,
                || format!("restricted decomposition at l = {l}"),
            )?;
        }
        Ok(format!("x <= {top} exact"))
    }

    fn triple_check(&self) -> Check {
        let cfg = &self.ctx.series;
        let n = self.grid(20, 8);
        for i in 1..=n {
            let x = 10.0 * i as f64 / n as f64;
            for j in 0..=n {
                let s = x * j as f64 / n as f64;
                let f = ok(cont_binom(x, s, cfg))?;
                let a = ok(pattern_sum_volume(s, x - s, cfg))?;
                let b = ok(pattern_sum_closed(s, x - s, cfg))?;
                ensure(rel(a, f) < 1e-8 && rel(b, f) < 1e-8, || {
                    format!("({x}, {s}): {f} {a} {b}")
                })?;
            }
        }
        Ok("pattern sums match".into())
    }

    fn normalizers(&self) -> Check {
        let cfg = &self.ctx.series;
        let mut worst: f64 = 0.0;
        for p in [0.2, 0.3, 0.7] {
            for x in [1.0, 2.0, 5.0] {
                let d = ok(ContBinomDist::new(x, p))?;
                let a = ok(normalizer_quadrature(&d, cfg, &self.ctx.quad))?;
                let b = ok(normalizer_double_series(&d, cfg))?;
                let c = ok(normalizer_bessel(&d, cfg))?;
                let e = rel(b, a).max(rel(c, a)).max(rel(c, b));
                worst = worst.max(e);
                ensure(e < 1e-7, || format!("({x}, {p}): {a} {b} {c}"))?;
            }
        }
        Ok(format!("max pairwise difference {worst:.1e}"))
    }

    fn moments(&self) -> Check {
        let cfg = &self.ctx.series;
        for x in [0.5, 2.0, 10.0] {
            for p in [0.5, 0.3] {
                let d = ok(ContBinomDist::new(x, p))?;
                for l in 1..=4 {
                    let series = if p == 0.5 {
                        ok(moment_half(x, l, cfg))?
                    } else {
                        ok(moment_p(&d, l, cfg))?
                    };
                    let quad = ok(moment_quadrature(&d, l, cfg, &self.ctx.quad))?;
                    ensure(rel(series, quad) < 1e-8, || {
                        format!("({x}, {p}) l = {l}: {series} vs {quad}")
                    })?;
                }
            }
            ensure(ok(centered_moment(x, 3, cfg))? == 0.0, || "odd centered moment".into())?;
        }
        let n = self.grid(1_000_000, 100_000);
        let x = 10.0;
        let draws = ok(sample(&ok(CenteredDensity::new(x))?, n, 1, cfg))?;
        let nf = n as f64;
        let var = ok(centered_even_moment(x, 1, cfg))?;
        let m4 = ok(centered_even_moment(x, 2, cfg))?;
        let mean_z = draws.iter().sum::<f64>() / nf / (var / nf).sqrt();
        let var_z = (draws.iter().map(|s| s * s).sum::<f64>() / nf - var) / ((m4 - var * var) / nf).sqrt();
        ensure(mean_z.abs() < 4.0 && var_z.abs() < 4.0, || {
            format!("sampler z-scores {mean_z:.2}, {var_z:.2}")
        })?;
        Ok(format!("{n} draws, z-scores {mean_z:.2}, {var_z:.2}"))
    }

    fn catalan_volumes(&self) -> Check {
        let r = |n: i64| BigRational::from_integer(n.into());
        for (x, y) in [(3, 1), (2, 0), (7, 2)] {
            let want = (r(x) - r(y)) * (r(x) + r(3) * r(y)) / r(8);
            ensure(ok(lambda_volume_exact(1, &r(x), &r(y)))? == want, || {
                format!("Λ¹({x}, {y})")
            })?;
        }
        // One level of the recursion by adaptive quadrature over vol Λⁿ⁻¹.
        for n in 2..=3 {
            for (x, y) in [(3.0, 1.0), (2.0, 0.0), (4.0, 0.5)] {
                let (p, q) = (0.5 * (x + y), 0.5 * (x - y));
                let nested = ok(try_integrate_2d(
                    |b, a| lambda_volume(n - 1, a + 2.0 * b, a),
                    (0.0, q),
                    |b| (0.0, p - b),
                    &self.ctx.quad,
                ))?
                .value;
                let got = ok(lambda_volume(n, x, y))?;
                ensure(rel(got, nested) < 1e-8, || format!("Λ{n}({x}, {y}): {got} vs {nested}"))?;
            }
            let samples = self.grid(1_000_000, 100_000) as u64;
            let est = ok(mc_volume(
                &ok(PolytopeSpec::catalan_component(n, 3.0, 1.0))?,
                samples,
                9,
            ))?;
            let z = (est.value - ok(lambda_volume(n, 3.0, 1.0))?) / est.std_error;
            ensure(z.abs() < 4.0, || format!("Λ{n} Monte Carlo {z:.2}σ out"))?;
        }
        Ok("exact, quadrature and Monte Carlo agree".into())
    }

    fn coefficient_table(&self) -> Check {
        let t = CoeffTable::new(24, 24);
        t.check_side_conditions()?;
        let one = 1.into();
        ensure(t.get(1, 1, 1) == Some(&one) && t.get(1, 0, 2) == Some(&one), || {
            "I¹ entries".into()
        })?;
        let extra = t
            .iter()
            .filter(|(n, k, l, v)| *n == 1 && !((*k, *l) == (1, 1) || (*k, *l) == (0, 2)) && **v != 0.into())
            .count();
        ensure(extra == 0, || format!("{extra} unexpected nonzero I¹ entries"))?;
        Ok("N = M = 24".into())
    }

    fn diagonal_series(&self) -> Check {
        let coeffs = catalan_series_coeffs(24);
        for x in [0.25, 0.5, 1.0] {
            let direct: f64 = (0..=8)
                .map(|n| lambda_volume(n, 2.0 * x, 0.0))
                .sum::<CoreResult<f64>>()
                .map_err(|e| e.to_string())?;
            let d = (coeffs.eval(x) - direct).abs();
            ensure(d <= 1e-9 + majorant_tail(2.0 * x, 0.0, 8), || format!("x = {x}: {d:e}"))?;
        }
        Ok("within majorant tail".into())
    }

    fn integral_equation(&self) -> Check {
        let mut worst: f64 = 0.0;
        for (x, y) in [(2.0, 0.0), (3.0, 1.0), (5.0, 2.0)] {
            let r = ok(integral_equation_residual(x, y, &self.ctx.quad))?;
            worst = worst.max(r);
            ensure(r < 1e-6, || format!("({x}, {y}): {r:e}"))?;
        }
        Ok(format!("max residual {worst:.1e}"))
    }

    fn narayana_catalan(&self) -> Check {
        for n in 0..=8usize {
            ensure(dyck_count(n) == catalan_number(n as u64), || format!("c_{n}"))?;
            for (i, v) in dyck_by_peaks(n).iter().enumerate() {
                ensure(*v == narayana_number(n as u64, i as u64 + 1), || {
                    format!("N({n}, {})", i + 1)
                })?;
            }
        }
        for n in 1..=self.grid(8, 5) {
            for row in ok(narayana_anchor(n))? {
                ensure(row.lattice_count == row.narayana, || {
                    format!("anchor n = {n}, runs = {}", row.up_runs)
                })?;
            }
        }
        Ok("n <= 8 exact".into())
    }

    fn delta_limit(&self) -> Check {
        let vals = ok(delta_limit_check(
            f64::cos,
            &[1.0, 0.5, 0.1, 0.02],
            &self.ctx.series,
            &self.ctx.quad,
        ))?;
        ensure(
            vals.windows(2).all(|w| w[0] < w[1]) && (0.0..1e-4).contains(&(1.0 - vals[3])),
            || format!("{vals:?}"),
        )?;
        Ok(format!("final value {}", vals[3]))
    }
}

pub fn run_all(fast: bool, ctx: &Ctx) -> (Record, bool) {
    let suite = Suite {
        fast,
        ctx: Ctx {
            series: ctx.series,
            quad: ctx.quad,
        },
    };
    let checks: [(&str, CheckFn); 14] = [
        ("boundary and symmetry", Suite::boundary_and_symmetry),
        ("integral identity", Suite::integral_identity),
        ("Bessel closed form", Suite::bessel_form),
        ("PDE residual ratio", Suite::pde_ratio),
        ("discrete anchoring", Suite::discrete_anchoring),
        ("pattern-sum triple check", Suite::triple_check),
        ("normalizer consistency", Suite::normalizers),
        ("moments and sampler", Suite::moments),
        ("Catalan volumes", Suite::catalan_volumes),
        ("coefficient table", Suite::coefficient_table),
        ("C(2x) series", Suite::diagonal_series),
        ("integral equation residual", Suite::integral_equation),
        ("Narayana and Catalan counts", Suite::narayana_catalan),
        ("delta limit", Suite::delta_limit),
    ];
    let mut rec = Record::new("verify all", &["check", "name", "status", "detail"])
        .param("fast", fast)
        .meta("rel_tol", ctx.series.rel_tol)
        .meta("max_terms", ctx.series.max_terms);
    let mut all = true;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&suite);
        eprintln!("{name}: {:.3} s", start.elapsed().as_secs_f64());
        let (status, detail) = match outcome {
            Ok(d) => ("pass", d),
            Err(d) => {
                all = false;
                ("FAIL", d)
            }
        };
        rec.row(vec![(i + 1).into(), (*name).into(), status.into(), detail.into()]);
    }
    (rec, all)
}
