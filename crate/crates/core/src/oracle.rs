//! Component polytopes of directed-path spaces and their volumes.
//!
//! Volumes use the coordinate-projection measure: a simplex
//! `{s ≥ 0 : s₀ + … + s_n = t}` has volume `tⁿ/n!`. Under this convention
//! the component of a binomial pattern with `a` horizontal and `b` vertical
//! runs is a product of two simplices.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::lattice::{HalfspaceRegion, Pattern, Point, PolytopeSystem, StepSet};
use crate::specfn::SeriesConfig;

/// Number of independent random streams a Monte Carlo run is split into.
/// Fixed so results do not depend on the thread count.
pub const MC_SHARDS: u64 = 64;

#[derive(Debug, Clone, PartialEq)]
pub enum PolytopeSpec {
    /// Time distributions of directed paths with steps (1,0), (0,1), the
    /// given pattern, total horizontal time `horizontal` and vertical time `vertical`.
    BinomialComponent {
        pattern: Pattern,
        horizontal: f64,
        vertical: f64,
    },
    /// Λⁿ(x, y): Dyck-type paths with n+1 up-runs from the origin to (x, y)
    /// staying in the upper half-plane.
    CatalanComponent { index: usize, x: f64, y: f64 },
    /// Γᶜ_{p,q}(t) for an arbitrary step set, restricted to a region.
    PathComponent {
        steps: StepSet,
        pattern: Pattern,
        start: Point,
        end: Point,
        time: usize,
        region: HalfspaceRegion,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeMethod {
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub method: VolumeMethod,
}

impl VolumeEstimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            std_error: 0.0,
            samples: 0,
            method: VolumeMethod::Exact,
        }
    }
}

fn check_time(v: f64, what: &str) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return domain(format!("{what} must be finite and nonnegative, got {v}"));
    }
    Ok(())
}

fn as_integer(v: f64, what: &str) -> Result<i64> {
    if v.fract() != 0.0 || v.abs() > 1e15 {
        return domain(format!("{what} must be an integer for lattice enumeration, got {v}"));
    }
    Ok(v as i64)
}

fn check_binomial_pattern(c: &Pattern) -> Result<()> {
    if c.entries().iter().any(|&e| e > 2) {
        return domain(format!("binomial patterns use labels 1 and 2 only, got {c}"));
    }
    Ok(())
}

impl PolytopeSpec {
    pub fn binomial_component(pattern: Pattern, horizontal: f64, vertical: f64) -> Result<Self> {
        let spec = Self::BinomialComponent {
            pattern,
            horizontal,
            vertical,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn catalan_component(index: usize, x: f64, y: f64) -> Result<Self> {
        let spec = Self::CatalanComponent { index, x, y };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::BinomialComponent {
                pattern,
                horizontal,
                vertical,
            } => {
                check_binomial_pattern(pattern)?;
                check_time(*horizontal, "horizontal time")?;
                check_time(*vertical, "vertical time")
            }
            Self::CatalanComponent { x, y, .. } => {
                check_time(*y, "y")?;
                check_time(*x, "x")?;
                if y > x {
                    return domain(format!("need 0 <= y <= x, got x = {x}, y = {y}"));
                }
                Ok(())
            }
            Self::PathComponent {
                steps,
                pattern,
                start,
                end,
                region,
                ..
            } => {
                pattern.check_against(steps)?;
                if start.len() != steps.dim() || end.len() != steps.dim() {
                    return domain("endpoints must match the step dimension");
                }
                if region.constraints().iter().any(|(n, _)| n.len() != steps.dim()) {
                    return domain("region normals must match the step dimension");
                }
                Ok(())
            }
        }
    }

    /// Description in time coordinates (one coordinate per run of the pattern).
    pub fn simplicial_system(&self) -> Result<PolytopeSystem> {
        self.validate()?;
        match self {
            Self::BinomialComponent {
                pattern,
                horizontal,
                vertical,
            } => {
                let s = as_integer(*horizontal, "horizontal time")?;
                let u = as_integer(*vertical, "vertical time")?;
                let row = |label: usize| pattern.entries().iter().map(|&c| i64::from(c == label)).collect();
                Ok(PolytopeSystem {
                    dim: pattern.len(),
                    equalities: vec![(row(1), s), (row(2), u)],
                    inequalities: Vec::new(),
                })
            }
            Self::CatalanComponent { index, x, y } => {
                let x = as_integer(*x, "x")?;
                let y = as_integer(*y, "y")?;
                if (x + y) % 2 != 0 {
                    return domain("x + y must be even for lattice enumeration");
                }
                let runs = index + 1;
                let dim = 2 * runs;
                // Coordinates interleave up and down times: s₀, t₀, s₁, t₁, …
                let up: Point = (0..dim).map(|j| i64::from(j % 2 == 0)).collect();
                let down: Point = (0..dim).map(|j| i64::from(j % 2 == 1)).collect();
                let valleys = (0..*index)
                    .map(|i| {
                        let row = (0..dim)
                            .map(|j| match (j <= 2 * i + 1, j % 2) {
                                (true, 0) => 1,
                                (true, _) => -1,
                                _ => 0,
                            })
                            .collect();
                        (row, 0)
                    })
                    .collect();
                Ok(PolytopeSystem {
                    dim,
                    equalities: vec![(up, (x + y) / 2), (down, (x - y) / 2)],
                    inequalities: valleys,
                })
            }
            Self::PathComponent {
                steps,
                pattern,
                start,
                end,
                time,
                region,
            } => {
                let dim = pattern.len();
                let vec_of = |c: usize| steps.step(c).expect("validated pattern");
                let mut equalities: Vec<(Point, i64)> = (0..steps.dim())
                    .map(|r| {
                        let row = pattern.entries().iter().map(|&c| vec_of(c)[r]).collect();
                        (row, end[r] - start[r])
                    })
                    .collect();
                equalities.push((vec![1; dim], *time as i64));
                let mut inequalities = Vec::new();
                for (normal, offset) in region.constraints() {
                    let base: i64 = normal.iter().zip(start).map(|(a, b)| a * b).sum();
                    inequalities.push((vec![0; dim], offset - base));
                    for i in 0..dim {
                        let row = (0..dim)
                            .map(|j| {
                                if j <= i {
                                    normal
                                        .iter()
                                        .zip(vec_of(pattern.entries()[j]))
                                        .map(|(a, b)| a * b)
                                        .sum()
                                } else {
                                    0
                                }
                            })
                            .collect();
                        inequalities.push((row, offset - base));
                    }
                }
                Ok(PolytopeSystem {
                    dim,
                    equalities,
                    inequalities,
                })
            }
        }
    }

    /// Dimension of the Cartesian sampling box, or `None` when the volume is
    /// determined without sampling.
    fn cartesian_dim(&self) -> Result<Option<usize>> {
        match self {
            Self::BinomialComponent { pattern, .. } => {
                let a = pattern.count_of(1);
                let b = pattern.count_of(2);
                if a == 0 || b == 0 {
                    return Ok(None);
                }
                let d = (a - 1) + (b - 1);
                Ok((d > 0).then_some(d))
            }
            Self::CatalanComponent { index, .. } => Ok((*index > 0).then_some(2 * index)),
            Self::PathComponent { .. } => domain("general path components have no Cartesian sampling box"),
        }
    }

    /// Side lengths of the box `∏ [0, side_i]` containing the polytope.
    pub fn cartesian_box(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let Some(d) = self.cartesian_dim()? else {
            return Ok(Vec::new());
        };
        match self {
            Self::BinomialComponent {
                pattern,
                horizontal,
                vertical,
            } => {
                let a = pattern.count_of(1) - 1;
                Ok((0..d).map(|i| if i < a { *horizontal } else { *vertical }).collect())
            }
            Self::CatalanComponent { index, x, y } => {
                let p = 0.5 * (x + y);
                let q = 0.5 * (x - y);
                Ok((0..2 * index).map(|i| if i < *index { p } else { q }).collect())
            }
            Self::PathComponent { .. } => unreachable!("rejected by cartesian_dim"),
        }
    }

    /// Membership in Cartesian coordinates.
    ///
    /// Binomial: free run times `(s₁..s_{a-1}, u₁..u_{b-1})` with partial sums
    /// inside the budgets. Catalan: partial sums `x₁ ≤ … ≤ x_n` of up-times and
    /// `y₁ ≤ … ≤ y_n` of down-times with `x_i ≥ y_i`.
    pub fn contains_cartesian(&self, pt: &[f64]) -> bool {
        match self {
            Self::BinomialComponent {
                pattern,
                horizontal,
                vertical,
            } => {
                let a = pattern.count_of(1).saturating_sub(1);
                let (hs, vs) = pt.split_at(a.min(pt.len()));
                hs.iter().all(|&v| v >= 0.0)
                    && vs.iter().all(|&v| v >= 0.0)
                    && hs.iter().sum::<f64>() <= *horizontal
                    && vs.iter().sum::<f64>() <= *vertical
            }
            Self::CatalanComponent { index, x, y } => {
                let n = *index;
                if pt.len() != 2 * n {
                    return false;
                }
                let (xs, ys) = pt.split_at(n);
                let p = 0.5 * (x + y);
                let q = 0.5 * (x - y);
                xs.iter().all(|&v| (0.0..=p).contains(&v))
                    && ys.iter().all(|&v| (0.0..=q).contains(&v))
                    && xs.windows(2).all(|w| w[0] <= w[1])
                    && ys.windows(2).all(|w| w[0] <= w[1])
                    && xs.iter().zip(ys).all(|(a, b)| a >= b)
            }
            Self::PathComponent { .. } => false,
        }
    }

    /// Volume for the cases that need no sampling (0-dimensional or empty).
    fn trivial_volume(&self) -> Option<f64> {
        match self {
            Self::BinomialComponent {
                pattern,
                horizontal,
                vertical,
            } => {
                let a = pattern.count_of(1);
                let b = pattern.count_of(2);
                if a == 0 || b == 0 || a + b == 2 {
                    gamma_component_volume(pattern, *horizontal, *vertical).ok()
                } else {
                    None
                }
            }
            Self::CatalanComponent { index: 0, .. } => Some(1.0),
            _ => None,
        }
    }
}

fn simplex_factor(runs: usize, budget: f64) -> f64 {
    if runs == 0 {
        return if budget == 0.0 { 1.0 } else { 0.0 };
    }
    let k = runs - 1;
    let mut v = 1.0;
    for i in 1..=k {
        v *= budget / i as f64;
    }
    v
}

/// Volume `s^{a-1}/(a-1)! · u^{b-1}/(b-1)!` of the component of a pattern
/// over {1, 2} with `a` ones and `b` twos.
///
/// A direction absent from the pattern contributes 1 if its budget is 0 and
/// 0 otherwise.
pub fn gamma_component_volume(c: &Pattern, s: f64, u: f64) -> Result<f64> {
    check_binomial_pattern(c)?;
    check_time(s, "horizontal time")?;
    check_time(u, "vertical time")?;
    Ok(simplex_factor(c.count_of(1), s) * simplex_factor(c.count_of(2), u))
}

/// Σ over patterns using both directions of [`gamma_component_volume`],
/// summed by pattern length until the stop rule fires.
pub fn pattern_sum_volume(s: f64, u: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_time(s, "horizontal time")?;
    check_time(u, "vertical time")?;
    let mut err = None;
    let total = cfg.sum("pattern_sum_volume", |k| {
        let len = k + 2;
        let mut t = 0.0;
        for first in [1, 2] {
            match gamma_component_volume(&Pattern::alternating(first, len), s, u) {
                Ok(v) => t += v,
                Err(e) => err = Some(e),
            }
        }
        t
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(total.value),
    }
}

/// `2 Σ xⁿyⁿ/(n!n!) + (x+y) Σ xⁿyⁿ/(n!(n+1)!)`.
pub fn pattern_sum_closed(x: f64, y: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_time(x, "x")?;
    check_time(y, "y")?;
    let q = x * y;
    let mut r = 1.0;
    Ok(cfg
        .sum("pattern_sum_closed", |n| {
            if n > 0 {
                r *= q / (n as f64 * n as f64);
            }
            r * (2.0 + (x + y) / (n as f64 + 1.0))
        })?
        .value)
}

/// Hit-or-miss Monte Carlo over the Cartesian box.
///
/// Samples are split over [`MC_SHARDS`] ChaCha8 streams derived from `seed`,
/// so the estimate depends only on `(poly, samples, seed)`.
pub fn mc_volume(poly: &PolytopeSpec, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    poly.validate()?;
    if samples == 0 {
        return domain("Monte Carlo needs at least one sample");
    }
    if let Some(v) = poly.trivial_volume() {
        return Ok(VolumeEstimate::exact(v));
    }
    let sides = poly.cartesian_box()?;
    let box_volume: f64 = sides.iter().product();
    if box_volume == 0.0 {
        return Ok(VolumeEstimate {
            value: 0.0,
            std_error: 0.0,
            samples,
            method: VolumeMethod::MonteCarlo,
        });
    }

    let hits: u64 = (0..MC_SHARDS)
        .into_par_iter()
        .map(|shard| {
            let n = samples / MC_SHARDS + u64::from(shard < samples % MC_SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let mut pt = vec![0.0; sides.len()];
            let mut hits = 0u64;
            for _ in 0..n {
                for (x, side) in pt.iter_mut().zip(&sides) {
                    *x = rng.random::<f64>() * side;
                }
                if poly.contains_cartesian(&pt) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();

    let frac = hits as f64 / samples as f64;
    Ok(VolumeEstimate {
        value: box_volume * frac,
        std_error: box_volume * (frac * (1.0 - frac) / samples as f64).sqrt(),
        samples,
        method: VolumeMethod::MonteCarlo,
    })
}

/// Integer points of a binomial component summed over every pattern with
/// both directions; equals `C(s+u, s)` for positive integer budgets.
pub fn binomial_interior_total(s: u32, u: u32) -> Result<BigUint> {
    let mut total = BigUint::from(0u32);
    for len in 2..=(s + u) as usize {
        for first in [1, 2] {
            let spec = PolytopeSpec::binomial_component(Pattern::alternating(first, len), s.into(), u.into())?;
            total += crate::lattice::interior_lattice_points(&spec)?;
        }
    }
    Ok(total)
}
