//! Subcommand handlers: each turns parsed flags into one [`Record`].

use contpath_core::binom::{
    cont_binom, cont_binom_bessel, cont_binom_series, expansion_coefficient, expansion_ts, interval_family_to_path,
    midpoint_series, pde_residual, IntervalFamily,
};
use contpath_core::catalan::{
    catalan_c, catalan_series_coeffs, integral_equation_residual, lambda_polynomial, lambda_polynomial_with,
    lambda_volume, lambda_volume_exact, narayana_anchor, terms_for_tail, CoeffTable,
};
use contpath_core::dist::{
    binom_integral, binom_integral_closed, centered_even_moment, centered_moment, delta_limit_check, moment_half,
    moment_integral, moment_p, moment_quadrature, normalizer, normalizer_by, sample, weighted_moment_integral,
    CenteredDensity, ContBinomDist, NormalizerMethod,
};
use contpath_core::lattice::{
    binomial, catalan_number, count_paths, count_paths_by_pattern, count_paths_by_pattern_restricted,
    count_paths_restricted, dyck_by_peaks, dyck_count, interior_lattice_points, narayana_number, pattern_decomposition,
    pattern_of, patterns, LatticePath,
};
use contpath_core::oracle::{
    binomial_interior_total, gamma_component_volume, mc_volume, pattern_sum_closed, pattern_sum_volume,
};
use contpath_core::specfn::{
    bessel_i0, bessel_i1, bessel_i_half, bessel_i_half_recurrence, bessel_i_half_scaled, bessel_i_half_series,
    falling_factorial,
};
use contpath_core::{Error, HalfspaceRegion, PolytopeSpec, QuadConfig, SeriesConfig, StepSet, VolumeMethod};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::args::*;
use crate::output::{exact, Cell, Record};
use crate::verify;

pub enum Failure {
    /// Inconsistent flags; exit 2.
    Usage(String),
    /// Arguments outside an operation's domain; exit 1.
    Domain(Error),
    /// The verify table, with at least one failed check; exit 3.
    Verify(Record),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<Record, Failure>;

pub struct Ctx {
    pub series: SeriesConfig,
    pub quad: QuadConfig,
}

impl Ctx {
    fn record(&self, command: &str, columns: &[&'static str]) -> Record {
        Record::new(command, columns)
            .meta("rel_tol", self.series.rel_tol)
            .meta("max_terms", self.series.max_terms)
    }
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--kind {kind} needs --{flag}")))
}

pub fn run(cmd: &Command, ctx: &Ctx) -> Out {
    match cmd {
        Command::Binom(c) => binom(c, ctx),
        Command::Dist(c) => dist(c, ctx),
        Command::Catalan(c) => catalan(c, ctx),
        Command::Lattice(c) => lattice(c, ctx),
        Command::Oracle(c) => oracle(c, ctx),
        Command::Specfn(c) => specfn(c, ctx),
        Command::Verify(VerifyCmd::All { fast }) => {
            let (rec, ok) = verify::run_all(*fast, ctx);
            if ok {
                Ok(rec)
            } else {
                Err(Failure::Verify(rec))
            }
        }
    }
}

fn binom(cmd: &BinomCmd, ctx: &Ctx) -> Out {
    let cfg = &ctx.series;
    Ok(match *cmd {
        BinomCmd::Eval { x, s, method } => {
            let (value, terms) = match method {
                EvalMethod::Series => (cont_binom(x, s, cfg)?, Some(cont_binom_series(x, s, cfg)?.terms)),
                EvalMethod::Bessel => (cont_binom_bessel(x, s, cfg)?, None),
                EvalMethod::Oracle => (pattern_sum_volume(s, x - s, cfg)?, None),
            };
            let name = format!("{method:?}").to_lowercase();
            let mut rec = ctx
                .record("binom eval", &["value"])
                .param("x", x)
                .param("s", s)
                .param("method", name);
            if let Some(t) = terms {
                rec = rec.meta("terms", t);
            }
            rec.with_row(vec![value.into()])
        }
        BinomCmd::Integral { x } => ctx
            .record("binom integral", &["integral", "closed_form"])
            .param("x", x)
            .with_row(vec![
                binom_integral(x, cfg, &ctx.quad)?.into(),
                binom_integral_closed(x).into(),
            ]),
        BinomCmd::Pde { x, s, h } => ctx
            .record("binom pde", &["residual"])
            .param("x", x)
            .param("s", s)
            .param("h", h)
            .with_row(vec![pde_residual(x, s, h, cfg)?.into()]),
        BinomCmd::Expand { t, s, order } => ctx
            .record("binom expand", &["value"])
            .param("t", t)
            .param("s", s)
            .param("order", order)
            .with_row(vec![expansion_ts(t, s, order)?.into()]),
        BinomCmd::Coeff { n, j } => ctx
            .record("binom coeff", &["coefficient"])
            .param("n", n)
            .param("j", j)
            .with_row(vec![exact(expansion_coefficient(n, j))]),
        BinomCmd::Midpoint { s } => ctx
            .record("binom midpoint", &["value"])
            .param("s", s)
            .with_row(vec![midpoint_series(s, cfg)?.into()]),
        BinomCmd::Path { x, ref intervals } => {
            let fam = IntervalFamily::new(x, intervals.0.clone())?;
            let path = interval_family_to_path(&fam);
            let peaks = path.peaks(&StepSet::binomial(), &[0.0, 0.0])?;
            let mut rec = ctx
                .record("binom path", &["segment", "label", "time", "end_x", "end_y"])
                .param("x", x)
                .param("marked_length", fam.total_length())
                .meta("pattern", path.pattern().to_string());
            for (i, ((&c, &t), p)) in path
                .pattern()
                .entries()
                .iter()
                .zip(path.times())
                .zip(&peaks[1..])
                .enumerate()
            {
                rec.row(vec![(i + 1).into(), c.into(), t.into(), p[0].into(), p[1].into()]);
            }
            rec
        }
    })
}

fn dist(cmd: &DistCmd, ctx: &Ctx) -> Out {
    let cfg = &ctx.series;
    Ok(match *cmd {
        DistCmd::Density { x, from, to, points } => {
            let d = CenteredDensity::new(x)?;
            let (a, b) = (from.unwrap_or(-0.5 * x), to.unwrap_or(0.5 * x));
            if points < 2 || a.partial_cmp(&b) != Some(std::cmp::Ordering::Less) {
                return Err(Failure::Usage("need --points >= 2 and --from < --to".into()));
            }
            let mut rec = ctx
                .record("dist density", &["s", "d_x(s)"])
                .param("x", x)
                .param("from", a)
                .param("to", b)
                .param("points", points);
            for i in 0..points {
                let s = if i + 1 == points {
                    b
                } else {
                    a + (b - a) * i as f64 / (points - 1) as f64
                };
                rec.row(vec![s.into(), d.density(s, cfg)?.into()]);
            }
            rec
        }
        DistCmd::Moments { x, p, l } => {
            let d = ContBinomDist::new(x, p)?;
            let (moment, integral) = if p == 0.5 {
                (moment_half(x, l, cfg)?, moment_integral(x, l, cfg)?)
            } else {
                (moment_p(&d, l, cfg)?, weighted_moment_integral(&d, l, cfg)?)
            };
            ctx.record("dist moments", &["moment", "series_integral", "quadrature"])
                .param("x", x)
                .param("p", p)
                .param("l", l)
                .with_row(vec![
                    moment.into(),
                    integral.into(),
                    moment_quadrature(&d, l, cfg, &ctx.quad)?.into(),
                ])
        }
        DistCmd::Sample { x, n, seed } => {
            let draws = sample(&CenteredDensity::new(x)?, n, seed, cfg)?;
            let mut rec = ctx
                .record("dist sample", &["s"])
                .param("x", x)
                .param("n", n)
                .meta("seed", seed);
            for s in draws {
                rec.row(vec![s.into()]);
            }
            rec
        }
        DistCmd::Normalizer { x, p, method } => {
            let d = ContBinomDist::new(x, p)?;
            let value = match method {
                NormMethod::Auto => normalizer(&d, cfg, &ctx.quad)?,
                NormMethod::Quadrature => normalizer_by(&d, NormalizerMethod::Quadrature, cfg, &ctx.quad)?,
                NormMethod::Series => normalizer_by(&d, NormalizerMethod::DoubleSeries, cfg, &ctx.quad)?,
                NormMethod::Bessel => normalizer_by(&d, NormalizerMethod::Bessel, cfg, &ctx.quad)?,
            };
            ctx.record("dist normalizer", &["b_p"])
                .param("x", x)
                .param("p", p)
                .param("method", format!("{method:?}").to_lowercase())
                .with_row(vec![value.into()])
        }
        DistCmd::Centered { x, r } => {
            let v = if r % 2 == 0 {
                centered_even_moment(x, r / 2, cfg)?
            } else {
                centered_moment(x, r, cfg)?
            };
            ctx.record("dist centered", &["moment"])
                .param("x", x)
                .param("r", r)
                .with_row(vec![v.into()])
        }
        DistCmd::Delta { f, ref xs } => {
            let g: fn(f64) -> f64 = match f {
                TestFn::Cos => f64::cos,
                TestFn::One => |_| 1.0,
                TestFn::Square => |s| s * s,
            };
            let vals = delta_limit_check(g, xs, cfg, &ctx.quad)?;
            let mut rec = ctx
                .record("dist delta", &["x", "integral"])
                .param("f", format!("{f:?}").to_lowercase());
            for (&x, v) in xs.iter().zip(vals) {
                rec.row(vec![x.into(), v.into()]);
            }
            rec
        }
    })
}

fn rational(s: &str) -> Result<BigRational, Failure> {
    s.parse::<BigRational>()
        .map_err(|e| Failure::Usage(format!("bad rational {s:?}: {e}")))
}

fn real(s: &str) -> Result<f64, Failure> {
    s.parse::<f64>()
        .map_err(|e| Failure::Usage(format!("bad number {s:?}: {e}")))
}

fn catalan(cmd: &CatalanCmd, ctx: &Ctx) -> Out {
    Ok(match *cmd {
        CatalanCmd::Eval { x, y, nmax } => {
            let n = nmax.unwrap_or_else(|| terms_for_tail(x, y, ctx.series.rel_tol));
            let v = catalan_c(x, y, n)?;
            ctx.record("catalan eval", &["value", "tail_bound", "n_max"])
                .param("x", x)
                .param("y", y)
                .with_row(vec![v.value.into(), v.tail_bound.into(), v.n_max.into()])
        }
        CatalanCmd::Coeffs { mmax } => {
            let c = catalan_series_coeffs(mmax);
            let mut rec = ctx
                .record(
                    "catalan coeffs",
                    &["m", "m!_coefficient", "coefficient", "coefficient_f64"],
                )
                .param("mmax", mmax);
            for (m, (i, t)) in c.integers.iter().zip(&c.taylor).enumerate() {
                rec.row(vec![
                    m.into(),
                    exact(i),
                    exact(t),
                    t.to_f64().unwrap_or(f64::NAN).into(),
                ]);
            }
            rec
        }
        CatalanCmd::Residual { x, y } => ctx
            .record("catalan residual", &["residual"])
            .param("x", x)
            .param("y", y)
            .with_row(vec![integral_equation_residual(x, y, &ctx.quad)?.into()]),
        CatalanCmd::Volume {
            n,
            ref x,
            ref y,
            exact: want_exact,
        } => {
            let rec = ctx
                .record("catalan volume", &["volume", "exact"])
                .param("n", n)
                .param("x", x.as_str())
                .param("y", y.as_str());
            if want_exact {
                let v = lambda_volume_exact(n, &rational(x)?, &rational(y)?)?;
                let f = v.to_f64().unwrap_or(f64::NAN);
                rec.with_row(vec![f.into(), exact(v)])
            } else {
                rec.with_row(vec![
                    lambda_volume(n, real(x)?, real(y)?)?.into(),
                    Cell::S(String::new()),
                ])
            }
        }
        CatalanCmd::Polynomial { n, table } => {
            let poly = match table {
                Some(size) => lambda_polynomial_with(n, &CoeffTable::new(size, size))?,
                None => lambda_polynomial(n)?,
            };
            ctx.record("catalan polynomial", &["polynomial"])
                .param("n", n)
                .with_row(vec![exact(poly)])
        }
        CatalanCmd::Table { n, m } => {
            let t = CoeffTable::new(n, m);
            t.check_side_conditions()
                .map_err(|e| Failure::Domain(Error::Domain(format!("side condition fails: {e}"))))?;
            let mut rec = ctx
                .record("catalan table", &["n", "k", "l", "value"])
                .param("n", n)
                .param("m", m)
                .meta("side_conditions", "hold");
            for (n, k, l, v) in t.iter() {
                if *v != 0.into() {
                    rec.row(vec![n.into(), k.into(), l.into(), exact(v)]);
                }
            }
            rec
        }
        CatalanCmd::Anchor { n } => {
            let mut rec = ctx
                .record(
                    "catalan anchor",
                    &["up_runs", "lattice_count", "narayana", "narayana_by_index", "volume"],
                )
                .param("n", n);
            for r in narayana_anchor(n)? {
                rec.row(vec![
                    r.up_runs.into(),
                    exact(r.lattice_count),
                    exact(r.narayana),
                    exact(r.narayana_by_index),
                    r.volume.into(),
                ]);
            }
            rec
        }
    })
}

fn lattice(cmd: &LatticeCmd, ctx: &Ctx) -> Out {
    Ok(match cmd {
        LatticeCmd::Count { path, pattern } => {
            let PathArgs {
                steps,
                from,
                to,
                len,
                region,
            } = path;
            let n = match (pattern, region) {
                (None, None) => count_paths(steps, &from.0, &to.0, *len)?,
                (None, Some(r)) => count_paths_restricted(steps, &from.0, &to.0, *len, r)?,
                (Some(c), None) => count_paths_by_pattern(steps, &from.0, &to.0, *len, c)?,
                (Some(c), Some(r)) => count_paths_by_pattern_restricted(steps, &from.0, &to.0, *len, c, r)?,
            };
            let mut rec = ctx.record("lattice count", &["count"]).param("len", *len);
            if let Some(c) = pattern {
                rec = rec.param("pattern", c.to_string());
            }
            rec.with_row(vec![exact(n)])
        }
        LatticeCmd::Decompose { path } => {
            let PathArgs {
                steps,
                from,
                to,
                len,
                region,
            } = path;
            let region = region.clone().unwrap_or_else(HalfspaceRegion::whole_space);
            let mut rec = ctx
                .record("lattice decompose", &["pattern", "count"])
                .param("len", *len);
            for (c, n) in pattern_decomposition(steps, &from.0, &to.0, *len, &region)? {
                rec.row(vec![c.to_string().into(), exact(n)]);
            }
            rec
        }
        LatticeCmd::Patterns { k, len } => {
            let mut rec = ctx
                .record("lattice patterns", &["pattern"])
                .param("k", *k)
                .param("len", *len);
            for c in patterns(*k, *len) {
                rec.row(vec![c.to_string().into()]);
            }
            rec
        }
        LatticeCmd::PatternOf { labels } => {
            let c = pattern_of(&LatticePath::new(Vec::new(), labels.clone()));
            ctx.record("lattice pattern-of", &["pattern"])
                .with_row(vec![c.to_string().into()])
        }
        LatticeCmd::Dyck { n } => ctx
            .record("lattice dyck", &["count"])
            .param("n", *n)
            .with_row(vec![exact(dyck_count(*n))]),
        LatticeCmd::Narayana { n } => {
            let mut rec = ctx
                .record("lattice narayana", &["peaks", "count", "narayana"])
                .param("n", *n);
            for (i, v) in dyck_by_peaks(*n).into_iter().enumerate() {
                rec.row(vec![
                    (i + 1).into(),
                    exact(v),
                    exact(narayana_number(*n as u64, i as u64 + 1)),
                ]);
            }
            rec
        }
        LatticeCmd::Catalan { n } => ctx
            .record("lattice catalan", &["value"])
            .param("n", *n)
            .with_row(vec![exact(catalan_number(*n))]),
        LatticeCmd::Binomial { n, k } => ctx
            .record("lattice binomial", &["value"])
            .param("n", *n)
            .param("k", *k)
            .with_row(vec![exact(binomial(*n, *k))]),
        LatticeCmd::Interior { poly } => {
            let spec = polytope(poly)?;
            ctx.record("lattice interior", &["points"])
                .param("kind", kind_name(poly.kind))
                .with_row(vec![exact(interior_lattice_points(&spec)?)])
        }
    })
}

fn kind_name(k: PolytopeKind) -> String {
    format!("{k:?}").to_lowercase()
}

fn polytope(a: &PolytopeArgs) -> Result<PolytopeSpec, Failure> {
    Ok(match a.kind {
        PolytopeKind::Binomial => PolytopeSpec::binomial_component(
            need(a.pattern.clone(), "pattern", "binomial")?,
            need(a.s, "s", "binomial")?,
            need(a.u, "u", "binomial")?,
        )?,
        PolytopeKind::Catalan => PolytopeSpec::catalan_component(
            need(a.index, "index", "catalan")?,
            need(a.x, "x", "catalan")?,
            a.y.unwrap_or(0.0),
        )?,
        PolytopeKind::Path => {
            let spec = PolytopeSpec::PathComponent {
                steps: need(a.steps.clone(), "steps", "path")?,
                pattern: need(a.pattern.clone(), "pattern", "path")?,
                start: need(a.from.clone(), "from", "path")?.0,
                end: need(a.to.clone(), "to", "path")?.0,
                time: need(a.len, "len", "path")?,
                region: a.region.clone().unwrap_or_else(HalfspaceRegion::whole_space),
            };
            spec.validate()?;
            spec
        }
    })
}

fn oracle(cmd: &OracleCmd, ctx: &Ctx) -> Out {
    Ok(match cmd {
        OracleCmd::Volume { poly, mc_samples, seed } => {
            let est = mc_volume(&polytope(poly)?, *mc_samples, *seed)?;
            let method = match est.method {
                VolumeMethod::Exact => "exact",
                VolumeMethod::MonteCarlo => "monte_carlo",
            };
            ctx.record("oracle volume", &["volume", "std_error", "samples", "method"])
                .param("kind", kind_name(poly.kind))
                .meta("seed", *seed)
                .with_row(vec![
                    est.value.into(),
                    est.std_error.into(),
                    est.samples.into(),
                    method.into(),
                ])
        }
        OracleCmd::Component { pattern, s, u } => ctx
            .record("oracle component", &["volume"])
            .param("pattern", pattern.to_string())
            .param("s", *s)
            .param("u", *u)
            .with_row(vec![gamma_component_volume(pattern, *s, *u)?.into()]),
        OracleCmd::PatternSum { s, u } => ctx
            .record("oracle pattern-sum", &["closed_series"])
            .param("s", *s)
            .param("u", *u)
            .with_row(vec![pattern_sum_closed(*s, *u, &ctx.series)?.into()]),
        OracleCmd::Anchor { s, u } => ctx
            .record("oracle anchor", &["points"])
            .param("s", *s)
            .param("u", *u)
            .with_row(vec![exact(binomial_interior_total(*s, *u)?)]),
    })
}

fn specfn(cmd: &SpecfnCmd, ctx: &Ctx) -> Out {
    let cfg = &ctx.series;
    Ok(match *cmd {
        SpecfnCmd::Bessel { kind, n, z, method } => {
            let v = match (kind, method) {
                (BesselKind::I0, _) => bessel_i0(z, cfg)?,
                (BesselKind::I1, _) => bessel_i1(z, cfg)?,
                (BesselKind::Half, HalfMethod::Auto) => bessel_i_half(n, z, cfg)?,
                (BesselKind::Half, HalfMethod::Series) => bessel_i_half_series(n, z, cfg)?,
                (BesselKind::Half, HalfMethod::Recurrence) => bessel_i_half_recurrence(n, z),
                (BesselKind::Half, HalfMethod::Scaled) => bessel_i_half_scaled(n, z, cfg)?,
            };
            ctx.record("specfn bessel", &["value"])
                .param("kind", format!("{kind:?}").to_lowercase())
                .param("n", n)
                .param("z", z)
                .param("method", format!("{method:?}").to_lowercase())
                .with_row(vec![v.into()])
        }
        SpecfnCmd::Falling { a, n } => ctx
            .record("specfn falling", &["value"])
            .param("a", a)
            .param("n", n)
            .with_row(vec![exact(falling_factorial(a, n))]),
    })
}

/// Which subcommand exposes each public library operation.
pub const COMMAND_TABLE: &[(&str, &[&str])] = &[
    (
        "binom eval",
        &[
            "cont_binom",
            "cont_binom_series",
            "cont_binom_bessel",
            "pattern_sum_volume",
        ],
    ),
    ("binom integral", &["binom_integral", "binom_integral_closed"]),
    ("binom pde", &["pde_residual"]),
    ("binom expand", &["expansion_ts"]),
    ("binom coeff", &["expansion_coefficient"]),
    ("binom midpoint", &["midpoint_series"]),
    ("binom path", &["interval_family_to_path"]),
    ("dist density", &["CenteredDensity::density"]),
    (
        "dist moments",
        &[
            "moment_half",
            "moment_integral",
            "moment_p",
            "weighted_moment_integral",
            "moment_quadrature",
        ],
    ),
    ("dist sample", &["sample"]),
    (
        "dist normalizer",
        &[
            "normalizer",
            "normalizer_by",
            "normalizer_quadrature",
            "normalizer_double_series",
            "normalizer_bessel",
        ],
    ),
    ("dist centered", &["centered_moment", "centered_even_moment"]),
    ("dist delta", &["delta_limit_check"]),
    ("catalan eval", &["catalan_c", "majorant_tail", "terms_for_tail"]),
    ("catalan coeffs", &["catalan_series_coeffs"]),
    ("catalan residual", &["integral_equation_residual"]),
    ("catalan volume", &["lambda_volume", "lambda_volume_exact"]),
    ("catalan polynomial", &["lambda_polynomial", "lambda_polynomial_with"]),
    (
        "catalan table",
        &["CoeffTable::new", "CoeffTable::check_side_conditions"],
    ),
    ("catalan anchor", &["narayana_anchor"]),
    (
        "lattice count",
        &[
            "count_paths",
            "count_paths_restricted",
            "count_paths_by_pattern",
            "count_paths_by_pattern_restricted",
        ],
    ),
    ("lattice decompose", &["pattern_decomposition"]),
    ("lattice patterns", &["patterns"]),
    ("lattice pattern-of", &["pattern_of"]),
    ("lattice dyck", &["dyck_count"]),
    ("lattice narayana", &["dyck_by_peaks", "narayana_number"]),
    ("lattice catalan", &["catalan_number"]),
    ("lattice binomial", &["binomial"]),
    ("lattice interior", &["interior_lattice_points"]),
    ("oracle volume", &["mc_volume"]),
    ("oracle component", &["gamma_component_volume"]),
    ("oracle pattern-sum", &["pattern_sum_closed"]),
    ("oracle anchor", &["binomial_interior_total"]),
    (
        "specfn bessel",
        &[
            "bessel_i0",
            "bessel_i1",
            "bessel_i_half",
            "bessel_i_half_series",
            "bessel_i_half_recurrence",
            "bessel_i_half_scaled",
        ],
    ),
    ("specfn falling", &["falling_factorial"]),
    ("verify all", &[]),
];
