//! Series kernels and the modified Bessel functions used by the closed forms.
//!
//! Every infinite sum in the crate goes through [`SeriesConfig::sum`], which
//! stops once two consecutive terms fall below `rel_tol * |partial| + abs_tol`.
//! All series here have factorial-squared denominators, so their terms are
//! eventually monotone and the two-term guard is sound.

use std::f64::consts::PI;

use num_bigint::BigUint;

use crate::error::{domain, Error, Result};

/// Truncation policy shared by all series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            abs_tol: 0.0,
            max_terms: 500,
        }
    }
}

/// Result of a truncated summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    /// Number of terms actually added.
    pub terms: usize,
}

impl SeriesConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return domain(format!("rel_tol must be positive, got {rel_tol}"));
        }
        if !(abs_tol >= 0.0 && abs_tol.is_finite()) {
            return domain(format!("abs_tol must be nonnegative, got {abs_tol}"));
        }
        if max_terms == 0 {
            return domain("max_terms must be at least 1");
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_terms,
        })
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, self.abs_tol, self.max_terms)
    }

    /// `|term| < rel_tol * |partial| + abs_tol`
    pub fn is_negligible(&self, term: f64, partial: f64) -> bool {
        term.abs() <= self.rel_tol * partial.abs() + self.abs_tol
    }

    /// Sums `term(0) + term(1) + ...` with Neumaier compensation.
    ///
    /// `term` is called with increasing indices exactly once each, so it may
    /// carry a running ratio in its captured state.
    pub fn sum(&self, what: &'static str, mut term: impl FnMut(usize) -> f64) -> Result<SeriesSum> {
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        let mut small_run = 0;
        for k in 0..self.max_terms {
            let t = term(k);
            if !t.is_finite() {
                return Err(Error::NotConverged { what, terms: k });
            }
            let s = sum + t;
            if sum.abs() >= t.abs() {
                comp += (sum - s) + t;
            } else {
                comp += (t - s) + sum;
            }
            sum = s;
            if self.is_negligible(t, sum + comp) {
                small_run += 1;
                if small_run == 2 {
                    return Ok(SeriesSum {
                        value: sum + comp,
                        terms: k + 1,
                    });
                }
            } else {
                small_run = 0;
            }
        }
        Err(Error::NotConverged {
            what,
            terms: self.max_terms,
        })
    }
}

fn check_arg(z: f64) -> Result<()> {
    if !z.is_finite() {
        return domain(format!("argument must be finite, got {z}"));
    }
    if z < 0.0 {
        return domain(format!("argument must be nonnegative, got {z}"));
    }
    Ok(())
}

/// Modified Bessel function I₀(z) = Σ (z²/4)ᵏ/(k!k!).
pub fn bessel_i0(z: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_arg(z)?;
    let q = 0.25 * z * z;
    let mut t = 1.0;
    Ok(cfg
        .sum("bessel_i0", |k| {
            if k > 0 {
                let k = k as f64;
                t *= q / (k * k);
            }
            t
        })?
        .value)
}

/// Modified Bessel function I₁(z) = (z/2) Σ (z²/4)ᵏ/(k!(k+1)!).
pub fn bessel_i1(z: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_arg(z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    let q = 0.25 * z * z;
    let mut t = 1.0;
    let s = cfg.sum("bessel_i1", |k| {
        if k > 0 {
            let k = k as f64;
            t *= q / (k * (k + 1.0));
        }
        t
    })?;
    Ok(0.5 * z * s.value)
}

/// I_{n+1/2}(z) for z > 0.
///
/// Uses the closed forms for I_{±1/2} and the upward three-term recurrence
/// while `n <= z/4`; outside that range the recurrence loses all accuracy
/// (I is its minimal solution) and the positive-term power series is used.
pub fn bessel_i_half(n: u32, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(z.is_finite() && z > 0.0) {
        return domain(format!("half-integer Bessel needs finite z > 0, got {z}"));
    }
    if f64::from(n) <= 0.25 * z {
        Ok(bessel_i_half_recurrence(n, z))
    } else {
        bessel_i_half_series(n, z, cfg)
    }
}

/// Upward recurrence I_{v+1} = I_{v-1} - (2v/z) I_v from v = 1/2.
///
/// Only well conditioned for `n` small relative to `z`; see [`bessel_i_half`].
pub fn bessel_i_half_recurrence(n: u32, z: f64) -> f64 {
    let c = (2.0 / (PI * z)).sqrt();
    let mut prev = c * z.cosh();
    let mut cur = c * z.sinh();
    let mut v = 0.5;
    for _ in 0..n {
        let next = prev - (2.0 * v / z) * cur;
        prev = cur;
        cur = next;
        v += 1.0;
    }
    cur
}

/// Σₖ (z/2)^{2k+v} / (k! Γ(k+v+1)) with v = n + 1/2.
pub fn bessel_i_half_series(n: u32, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(z.is_finite() && z > 0.0) {
        return domain(format!("half-integer Bessel needs finite z > 0, got {z}"));
    }
    let h = 0.5 * z;
    let v = f64::from(n) + 0.5;
    // (z/2)^{1/2} / Γ(3/2), then one factor (z/2)/(j+1/2) per order step.
    let mut lead = h.sqrt() * 2.0 / PI.sqrt();
    for j in 1..=n {
        lead *= h / (f64::from(j) + 0.5);
    }
    let q = h * h;
    let mut t = lead;
    Ok(cfg
        .sum("bessel_i_half", |k| {
            if k > 0 {
                let k = k as f64;
                t *= q / (k * (k + v));
            }
            t
        })?
        .value)
}

/// z^{-v} I_v(z) with v = n + 1/2, an even entire function of z, for z ≥ 0.
///
/// Equal to `2^{-v} Σₖ (z²/4)ᵏ/(k! Γ(k+v+1))`; at z = 0 this is `√(2/π)/(2n+1)!!`.
pub fn bessel_i_half_scaled(n: u32, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_arg(z)?;
    let v = f64::from(n) + 0.5;
    if z > 0.0 && f64::from(n) <= 0.25 * z {
        return Ok(bessel_i_half_recurrence(n, z) / z.powf(v));
    }
    let mut lead = (2.0 / PI).sqrt();
    for j in 1..=n {
        lead /= f64::from(2 * j + 1);
    }
    let q = 0.25 * z * z;
    let mut t = lead;
    Ok(cfg
        .sum("bessel_i_half_scaled", |k| {
            if k > 0 {
                let k = k as f64;
                t *= q / (k * (k + v));
            }
            t
        })?
        .value)
}

impl SeriesConfig {
    /// Sums a double series by anti-diagonals `m = 0, 1, …`.
    ///
    /// `diagonal(m)` returns the sum of the terms on diagonal `m` and the sum
    /// of their absolute values; the stop rule is applied to the latter so
    /// that cancellation inside a diagonal cannot end the sweep early.
    pub fn sum_diagonals(
        &self,
        what: &'static str,
        mut diagonal: impl FnMut(usize) -> (f64, f64),
    ) -> Result<SeriesSum> {
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        let mut small_run = 0;
        for m in 0..self.max_terms {
            let (t, mag) = diagonal(m);
            if !(t.is_finite() && mag.is_finite()) {
                return Err(Error::NotConverged { what, terms: m });
            }
            let s = sum + t;
            if sum.abs() >= t.abs() {
                comp += (sum - s) + t;
            } else {
                comp += (t - s) + sum;
            }
            sum = s;
            if self.is_negligible(mag, sum + comp) {
                small_run += 1;
                if small_run == 2 {
                    return Ok(SeriesSum {
                        value: sum + comp,
                        terms: m + 1,
                    });
                }
            } else {
                small_run = 0;
            }
        }
        Err(Error::NotConverged {
            what,
            terms: self.max_terms,
        })
    }
}

/// Falling factorial (a)ₙ = a(a-1)…(a-n+1); zero when a < n.
pub fn falling_factorial(a: u64, n: u64) -> BigUint {
    if a < n {
        return BigUint::from(0u32);
    }
    ((a - n + 1)..=a).fold(BigUint::from(1u32), |acc, f| acc * f)
}

/// Floating-point falling factorial, same conventions as [`falling_factorial`].
pub(crate) fn falling_factorial_f64(a: u64, n: u64) -> f64 {
    if a < n {
        return 0.0;
    }
    ((a - n + 1)..=a).fold(1.0, |acc, f| acc * f as f64)
}
