//! The continuous binomial distribution.
//!
//! For `0 < p < 1` and `x > 0` the weight of horizontal time `s ∈ [0, x]` is
//! `{x<s>} pˢ (1−p)^{x−s}`, with normalizer `b_p(x)`. The centered density
//! `d_x` is the `p = 1/2` case shifted to `[−x/2, x/2]`.
//!
//! Unweighted moment integrals `∫₀ˣ sˡ {x<s>} ds` have the closed form
//! `2 Σ (n+l)_l x^{2n+l+1}/(2n+l+1)! + Σ (n+l)_{l−1} x^{2n+l+2}/(2n+l+1)!`,
//! and `∫₀ˣ {x<s>} ds = 2(eˣ − 1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binom::cont_binom;
use crate::error::{domain, Result};
use crate::quad::{integrate, try_integrate, QuadConfig};
use crate::specfn::{bessel_i_half_scaled, falling_factorial_f64, SeriesConfig};

/// `∫₀ˣ {x<s>} ds` by adaptive quadrature.
pub fn binom_integral(x: f64, scfg: &SeriesConfig, qcfg: &QuadConfig) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return domain(format!("x must be finite and nonnegative, got {x}"));
    }
    Ok(try_integrate(|s| cont_binom(x, s.clamp(0.0, x), scfg), 0.0, x, qcfg)?.value)
}

/// `∫₀ˣ {x<s>} ds = 2(eˣ − 1)`.
pub fn binom_integral_closed(x: f64) -> f64 {
    2.0 * x.exp_m1()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContBinomDist {
    x: f64,
    p: f64,
}

impl ContBinomDist {
    pub fn new(x: f64, p: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return domain(format!("x must be finite and positive, got {x}"));
        }
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("p must lie in (0, 1), got {p}"));
        }
        Ok(Self { x, p })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// ln(p/(1−p)).
    pub fn log_odds(&self) -> f64 {
        (self.p / (1.0 - self.p)).ln()
    }

    fn weight(&self, s: f64) -> f64 {
        (s * self.p.ln() + (self.x - s) * (1.0 - self.p).ln()).exp()
    }
}

/// Ways to compute `b_p(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizerMethod {
    Quadrature,
    DoubleSeries,
    Bessel,
}

/// `b_p(x)`, by quadrature; `p = 1/2` uses `(eˣ − 1) 2^{1−x}` directly.
pub fn normalizer(d: &ContBinomDist, scfg: &SeriesConfig, qcfg: &QuadConfig) -> Result<f64> {
    if d.p == 0.5 {
        return Ok(d.x.exp_m1() * (1.0 - d.x).exp2());
    }
    normalizer_quadrature(d, scfg, qcfg)
}

pub fn normalizer_by(
    d: &ContBinomDist,
    method: NormalizerMethod,
    scfg: &SeriesConfig,
    qcfg: &QuadConfig,
) -> Result<f64> {
    match method {
        NormalizerMethod::Quadrature => normalizer_quadrature(d, scfg, qcfg),
        NormalizerMethod::DoubleSeries => normalizer_double_series(d, scfg),
        NormalizerMethod::Bessel => normalizer_bessel(d, scfg),
    }
}

/// `∫₀ˣ {x<s>} pˢ (1−p)^{x−s} ds`.
pub fn normalizer_quadrature(d: &ContBinomDist, scfg: &SeriesConfig, qcfg: &QuadConfig) -> Result<f64> {
    let x = d.x;
    Ok(try_integrate(
        |s| Ok(cont_binom(x, s.clamp(0.0, x), scfg)? * d.weight(s)),
        0.0,
        x,
        qcfg,
    )?
    .value)
}

fn reject_half(d: &ContBinomDist) -> Result<()> {
    if d.p == 0.5 {
        return domain("the log-odds series degenerate at p = 1/2; use the closed form");
    }
    Ok(())
}

/// `b_p(x)` from the double series in powers of `L = ln(p/(1−p))`.
pub fn normalizer_double_series(d: &ContBinomDist, cfg: &SeriesConfig) -> Result<f64> {
    reject_half(d)?;
    weighted_moment_integral(d, 0, cfg)
}

/// `b_p(x) = √π (p(1−p))^{x/2} Σ (x+2n+2)/(n+1)! (x/L)^{n+½} I_{n+½}(xL/2)`.
///
/// `(x/L)^v I_v(xL/2) = (x²/2)^v · z^{−v}I_v(z)` at `z = xL/2`, and the scaled
/// Bessel function is even, so `|L|` is used for `p < 1/2`.
pub fn normalizer_bessel(d: &ContBinomDist, cfg: &SeriesConfig) -> Result<f64> {
    reject_half(d)?;
    let x = d.x;
    let z = 0.5 * x * d.log_odds().abs();
    let h = 0.5 * x * x;
    // c_n = (x²/2)^{n+½}/(n+1)!
    let mut c = h.sqrt();
    let mut err = None;
    let sum = cfg.sum("normalizer_bessel", |n| {
        let nf = n as f64;
        c *= if n == 0 { 1.0 } else { h / (nf + 1.0) };
        match bessel_i_half_scaled(n as u32, z, cfg) {
            Ok(b) => (x + 2.0 * nf + 2.0) * c * b,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let log_pref = 0.5 * std::f64::consts::PI.ln() + 0.5 * x * (d.p * (1.0 - d.p)).ln();
    Ok(log_pref.exp() * sum?.value)
}

/// Natural logs of 0!, 1!, …, n!.
fn ln_factorials(n: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(0.0);
    for i in 1..=n {
        v.push(v[i - 1] + (i as f64).ln());
    }
    v
}

/// `∫₀ˣ sˡ {x<s>} pˢ(1−p)^{x−s} ds` as
/// `2(1−p)ˣ Σ_{k,n} Lᵏ C(n+k+l, n)(k+l)_l [x^{j}/j! + x^{j+1}/((2n+2) j!)]`
/// with `j = 2n+k+l+1`, swept by anti-diagonals `k + n = m`.
pub fn weighted_moment_integral(d: &ContBinomDist, l: usize, cfg: &SeriesConfig) -> Result<f64> {
    let x = d.x;
    let big_l = d.log_odds();
    let ln_abs_l = big_l.abs().ln();
    let ln_x = x.ln();
    let lf = ln_factorials(3 * cfg.max_terms + l + 4);

    let sum = cfg.sum_diagonals("weighted_moment_integral", |m| {
        let mut t = 0.0;
        let mut mag = 0.0;
        for k in 0..=m {
            if big_l == 0.0 && k > 0 {
                break;
            }
            let n = m - k;
            let j = 2 * n + k + l + 1;
            let ln_coef = lf[n + k + l] - lf[n] - lf[k] + if k > 0 { k as f64 * ln_abs_l } else { 0.0 };
            let first = (ln_coef + j as f64 * ln_x - lf[j]).exp();
            let second = first * x / (2.0 * n as f64 + 2.0);
            let v = first + second;
            mag += v;
            t += if big_l < 0.0 && k % 2 == 1 { -v } else { v };
        }
        (t, mag)
    })?;
    Ok(2.0 * (x * (1.0 - d.p).ln()).exp() * sum.value)
}

/// `∫₀ˣ sˡ {x<s>} ds`; `l = 0` gives `2(eˣ − 1)`.
pub fn moment_integral(x: f64, l: usize, cfg: &SeriesConfig) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return domain(format!("x must be finite and nonnegative, got {x}"));
    }
    if l == 0 {
        return Ok(binom_integral_closed(x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let lf = ln_factorials(2 * cfg.max_terms + l + 3);
    let ln_x = x.ln();
    let sum = cfg.sum("moment_integral", |n| {
        let j = 2 * n + l + 1;
        let base = (j as f64 * ln_x - lf[j]).exp();
        2.0 * falling_factorial_f64((n + l) as u64, l as u64) * base
            + falling_factorial_f64((n + l) as u64, (l - 1) as u64) * base * x
    })?;
    Ok(sum.value)
}

/// `E(sˡ)` for `p = 1/2`: the moment integral over `2(eˣ − 1)`.
pub fn moment_half(x: f64, l: usize, cfg: &SeriesConfig) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return domain(format!("x must be finite and positive, got {x}"));
    }
    if l == 0 {
        return domain("moment order must be at least 1");
    }
    Ok(moment_integral(x, l, cfg)? / binom_integral_closed(x))
}

/// `E_p(sˡ)`; delegates to [`moment_half`] at `p = 1/2`.
pub fn moment_p(d: &ContBinomDist, l: usize, cfg: &SeriesConfig) -> Result<f64> {
    if l == 0 {
        return domain("moment order must be at least 1");
    }
    if d.p == 0.5 {
        return moment_half(d.x, l, cfg);
    }
    Ok(weighted_moment_integral(d, l, cfg)? / weighted_moment_integral(d, 0, cfg)?)
}

/// `∫ sˡ w(s) ds / ∫ w(s) ds` with `w(s) = {x<s>}pˢ(1−p)^{x−s}`, by quadrature.
pub fn moment_quadrature(d: &ContBinomDist, l: usize, scfg: &SeriesConfig, qcfg: &QuadConfig) -> Result<f64> {
    let x = d.x;
    let f = |s: f64| Ok(cont_binom(x, s.clamp(0.0, x), scfg)? * d.weight(s));
    let num = try_integrate(|s| Ok(f(s)? * s.powi(l as i32)), 0.0, x, qcfg)?.value;
    let den = try_integrate(f, 0.0, x, qcfg)?.value;
    Ok(num / den)
}

/// The centered density `d_x` on `[−x/2, x/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenteredDensity {
    x: f64,
    norm: f64,
}

impl CenteredDensity {
    pub fn new(x: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return domain(format!("x must be finite and positive, got {x}"));
        }
        Ok(Self {
            x,
            norm: binom_integral_closed(x),
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// `{x<x/2+s>} / (2(eˣ − 1))`, zero outside the support.
    pub fn density(&self, s: f64, cfg: &SeriesConfig) -> Result<f64> {
        if !s.is_finite() {
            return domain(format!("argument must be finite, got {s}"));
        }
        let half = 0.5 * self.x;
        if s.abs() > half {
            return Ok(0.0);
        }
        // Evaluating at |s| makes the evenness exact in floating point.
        Ok(cont_binom(self.x, (half + s.abs()).min(self.x), cfg)? / self.norm)
    }
}

/// `E(s^{2k})` under `d_x`, expanded over the uncentered moment integrals.
pub fn centered_even_moment(x: f64, k: usize, cfg: &SeriesConfig) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return domain(format!("x must be finite and positive, got {x}"));
    }
    let order = 2 * k;
    let mut total = 0.0;
    let mut binom = 1.0;
    for l in 0..=order {
        if l > 0 {
            binom *= (order - l + 1) as f64 / l as f64;
        }
        total += binom * (-0.5 * x).powi((order - l) as i32) * moment_integral(x, l, cfg)?;
    }
    Ok(total / binom_integral_closed(x))
}

/// `E(sʳ)` under `d_x`; odd orders vanish.
pub fn centered_moment(x: f64, r: usize, cfg: &SeriesConfig) -> Result<f64> {
    if r % 2 == 1 {
        if !(x.is_finite() && x > 0.0) {
            return domain(format!("x must be finite and positive, got {x}"));
        }
        return Ok(0.0);
    }
    centered_even_moment(x, r / 2, cfg)
}

/// `count` draws from `d_x` by rejection from the uniform envelope of height `d_x(0)`.
pub fn sample(d: &CenteredDensity, count: usize, seed: u64, cfg: &SeriesConfig) -> Result<Vec<f64>> {
    if count == 0 {
        return domain("sample count must be at least 1");
    }
    let peak = d.density(0.0, cfg)?;
    let half = 0.5 * d.x;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let s = (2.0 * rng.random::<f64>() - 1.0) * half;
        let u = rng.random::<f64>() * peak;
        if u <= d.density(s, cfg)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// `∫ f · d_x` for each `x` of a strictly decreasing positive sequence.
pub fn delta_limit_check(
    f: impl Fn(f64) -> f64,
    xs: &[f64],
    scfg: &SeriesConfig,
    qcfg: &QuadConfig,
) -> Result<Vec<f64>> {
    if xs.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return domain("x values must be finite and positive");
    }
    if xs.windows(2).any(|w| w[1] >= w[0]) {
        return domain("x values must be strictly decreasing");
    }
    xs.iter()
        .map(|&x| {
            let d = CenteredDensity::new(x)?;
            let mut err = None;
            let q = integrate(
                |s| match d.density(s, scfg) {
                    Ok(v) => f(s) * v,
                    Err(e) => {
                        err = Some(e);
                        0.0
                    }
                },
                -0.5 * x,
                0.5 * x,
                qcfg,
            )?;
            match err {
                Some(e) => Err(e),
                None => Ok(q.value),
            }
        })
        .collect()
}
