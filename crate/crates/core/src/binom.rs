//! The continuous binomial coefficient `{x<s>}`.
//!
//! `{x<s>}` is the total volume of the space of directed paths with unit
//! steps (1,0), (0,1) from the origin to (s, x−s). The primary evaluator is
//! the positive series
//!
//! ```text
//! {x<s>} = Σ_{n≥0} (x + 2n + 2) sⁿ(x−s)ⁿ / (n!(n+1)!)
//! ```
//!
//! which equals `2 I₀(2r) + (x/r) I₁(2r)` with `r = √(s(x−s))`.

use crate::error::{domain, Result};
use crate::lattice::{Pattern, StepSet};
use crate::specfn::{bessel_i0, bessel_i1, falling_factorial, SeriesConfig, SeriesSum};

use num_bigint::BigUint;

fn check_args(x: f64, s: f64) -> Result<()> {
    if !(x.is_finite() && s.is_finite()) {
        return domain(format!("arguments must be finite, got x = {x}, s = {s}"));
    }
    if !(0.0 <= s && s <= x) {
        return domain(format!("need 0 <= s <= x, got x = {x}, s = {s}"));
    }
    Ok(())
}

/// `s(x−s)` computed identically for `s` and `x−s`: the larger factor is
/// rounded once and the smaller is `x` minus it, which is exact.
fn product(x: f64, s: f64) -> f64 {
    let big = if s >= 0.5 * x { s } else { x - s };
    big * (x - big)
}

/// Series value of `{x<s>}` with the number of terms used.
/// The boundary `s ∈ {0, x}` returns `2 + x` without summation.
pub fn cont_binom_series(x: f64, s: f64, cfg: &SeriesConfig) -> Result<SeriesSum> {
    check_args(x, s)?;
    if s == 0.0 || s == x {
        return Ok(SeriesSum {
            value: 2.0 + x,
            terms: 0,
        });
    }
    let q = product(x, s);
    let mut r = 1.0;
    cfg.sum("cont_binom", |n| {
        let nf = n as f64;
        if n > 0 {
            r *= q / (nf * (nf + 1.0));
        }
        (x + 2.0 * nf + 2.0) * r
    })
}

pub fn cont_binom(x: f64, s: f64, cfg: &SeriesConfig) -> Result<f64> {
    cont_binom_series(x, s, cfg).map(|r| r.value)
}

/// `2 I₀(2r) + (x/r) I₁(2r)` with `r = √(s(x−s))`.
pub fn cont_binom_bessel(x: f64, s: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_args(x, s)?;
    let q = product(x, s);
    if q == 0.0 {
        return Ok(2.0 + x);
    }
    let r = q.sqrt();
    Ok(2.0 * bessel_i0(2.0 * r, cfg)? + x / r * bessel_i1(2.0 * r, cfg)?)
}

/// `(∂²ₓₓ + ∂²ₓₛ){x<s>} − {x<s>}` by central differences with step `h`.
///
/// `∂²ₓₛ` uses the four-corner stencil; the error is O(h²).
pub fn pde_residual(x: f64, s: f64, h: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_args(x, s)?;
    if !(h.is_finite() && h > 0.0) {
        return domain(format!("step must be positive, got {h}"));
    }
    if s < 2.0 * h || x - s < 2.0 * h {
        return domain(format!("({x}, {s}) is closer than 2h = {} to the boundary", 2.0 * h));
    }
    let f = |a: f64, b: f64| cont_binom(a, b, cfg);
    let c = f(x, s)?;
    let fxx = (f(x + h, s)? - 2.0 * c + f(x - h, s)?) / (h * h);
    let fxs = (f(x + h, s + h)? - f(x + h, s - h)? - f(x - h, s + h)? + f(x - h, s - h)?) / (4.0 * h * h);
    Ok(fxx + fxs - c)
}

/// Integer coefficient of `tⁿ s^j/(n! j!)` in the expansion of `{(t+1)s<s>}`.
pub fn expansion_coefficient(n: u64, j: u64) -> BigUint {
    match (n, j) {
        (0, 0) => BigUint::from(2u32),
        (0, 1) => BigUint::from(1u32),
        (0, _) => BigUint::from(0u32),
        _ if j == 2 * n => falling_factorial(2 * n, n) * 2u32,
        _ if j == 2 * n + 1 => falling_factorial(2 * n + 1, n),
        _ if j == 2 * n - 1 => falling_factorial(2 * n - 1, n),
        _ => BigUint::from(0u32),
    }
}

/// `{(t+1)s<s>}` from its expansion in `t` and `s`, truncated after `tᵒʳᵈᵉʳ`.
///
/// The order-n group is `tⁿ/n! · (2s²ⁿ/n! + s²ⁿ⁺¹/(n+1)! + s²ⁿ⁻¹/(n−1)!)`,
/// accumulated as `bₙ (1 + 2s/n + s²/(n(n+1)))` with `bₙ = tⁿ s²ⁿ⁻¹/(n!(n−1)!)`.
pub fn expansion_ts(t: f64, s: f64, order: usize) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0 && s.is_finite() && s >= 0.0) {
        return domain(format!("need finite t, s >= 0, got t = {t}, s = {s}"));
    }
    let mut total = 2.0 + s;
    let mut b = t * s;
    for n in 1..=order {
        let nf = n as f64;
        if n > 1 {
            b *= t * s * s / (nf * (nf - 1.0));
        }
        total += b * (1.0 + 2.0 * s / nf + s * s / (nf * (nf + 1.0)));
    }
    Ok(total)
}

/// `{2s<s>} = 2 Σ C(n, ⌊n/2⌋) sⁿ/n!`.
pub fn midpoint_series(s: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !s.is_finite() {
        return domain(format!("argument must be finite, got {s}"));
    }
    // C(n, ⌊n/2⌋)/n! = 1/(⌊n/2⌋! ⌈n/2⌉!)
    let mut t = 1.0;
    let sum = cfg.sum("midpoint_series", |n| {
        if n > 0 {
            t *= s / n.div_ceil(2) as f64;
        }
        t
    })?;
    Ok(2.0 * sum.value)
}

/// A finite family of disjoint closed intervals in `[0, x]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalFamily {
    x: f64,
    intervals: Vec<(f64, f64)>,
}

impl IntervalFamily {
    /// Sorts the intervals and checks they are closed, inside `[0, x]` and
    /// separated by gaps of positive length. Touching intervals are rejected.
    pub fn new(x: f64, mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if !(x.is_finite() && x >= 0.0) {
            return domain(format!("x must be finite and nonnegative, got {x}"));
        }
        for &(a, b) in &intervals {
            if !(a.is_finite() && b.is_finite() && 0.0 <= a && a <= b && b <= x) {
                return domain(format!("[{a}, {b}] is not a closed subinterval of [0, {x}]"));
            }
        }
        intervals.sort_by(|p, q| p.0.total_cmp(&q.0));
        if let Some(w) = intervals.windows(2).find(|w| w[0].1 >= w[1].0) {
            return domain(format!(
                "intervals [{}, {}] and [{}, {}] are not disjoint",
                w[0].0, w[0].1, w[1].0, w[1].1
            ));
        }
        Ok(Self { x, intervals })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }
}

/// A pattern with a time distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedPath {
    pattern: Pattern,
    times: Vec<f64>,
}

impl DirectedPath {
    pub fn new(pattern: Pattern, times: Vec<f64>) -> Result<Self> {
        if pattern.len() != times.len() {
            return domain(format!(
                "pattern has {} runs but {} times were given",
                pattern.len(),
                times.len()
            ));
        }
        if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            return domain(format!("run times must be finite and nonnegative, got {t}"));
        }
        Ok(Self { pattern, times })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn total_time(&self) -> f64 {
        self.times.iter().sum()
    }

    /// Peaks `p₀ = start, p_{i+1} = p_i + s_i v_{c_i}`.
    pub fn peaks(&self, steps: &StepSet, start: &[f64]) -> Result<Vec<Vec<f64>>> {
        self.pattern.check_against(steps)?;
        if start.len() != steps.dim() {
            return domain("start point does not match the step dimension");
        }
        let mut out = vec![start.to_vec()];
        for (&c, &t) in self.pattern.entries().iter().zip(&self.times) {
            let v = steps.step(c).expect("checked labels");
            let last = out.last().expect("non-empty");
            out.push(last.iter().zip(v).map(|(p, d)| p + t * *d as f64).collect());
        }
        Ok(out)
    }
}

/// The directed path in Γ(s, x−s) attached to a family of intervals:
/// marked time runs horizontally (label 1), unmarked time vertically (label 2).
pub fn interval_family_to_path(family: &IntervalFamily) -> DirectedPath {
    let x = family.x;
    let iv = &family.intervals;
    let (Some(&(a1, _)), Some(&(_, bn))) = (iv.first(), iv.last()) else {
        return DirectedPath {
            pattern: Pattern::alternating(2, 1),
            times: vec![x],
        };
    };

    // Leading gap present iff a₁ > 0, trailing gap iff bₙ < x; the four
    // combinations give formats (1,…,1), (1,…,2), (2,…,1), (2,…,2).
    let mut times = Vec::with_capacity(2 * iv.len() + 1);
    if a1 > 0.0 {
        times.push(a1);
    }
    for (i, &(a, b)) in iv.iter().enumerate() {
        if i > 0 {
            times.push(a - iv[i - 1].1);
        }
        times.push(b - a);
    }
    if bn < x {
        times.push(x - bn);
    }
    let first = if a1 > 0.0 { 2 } else { 1 };
    DirectedPath {
        pattern: Pattern::alternating(first, times.len()),
        times,
    }
}
