//! Reference oracles shared by the integration tests. Nothing here calls
//! into the library's evaluators.

#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Double-double number `hi + lo` with |lo| ≤ ulp(hi)/2, about 32 digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// √(self) by one Newton step from the f64 root.
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let r = Dd::from(self.hi.sqrt());
        r + (self - r * r) / (r * Dd::from(2.0))
    }

    pub fn powi(self, n: u32) -> Self {
        (0..n).fold(Dd::ONE, |acc, _| acc * self)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from(q3)
    }
}

pub fn dd(v: f64) -> Dd {
    Dd::from(v)
}

/// Σ_{k<terms} (z²/4)ᵏ/(k!k!) in double-double.
pub fn i0_ref(z: f64, terms: usize) -> f64 {
    let q = dd(z) * dd(z) / dd(4.0);
    let mut t = Dd::ONE;
    let mut s = Dd::ONE;
    for k in 1..terms {
        t = t * q / dd((k * k) as f64);
        s = s + t;
    }
    s.to_f64()
}

/// (z/2) Σ_{k<terms} (z²/4)ᵏ/(k!(k+1)!) in double-double.
pub fn i1_ref(z: f64, terms: usize) -> f64 {
    let q = dd(z) * dd(z) / dd(4.0);
    let mut t = Dd::ONE;
    let mut s = Dd::ONE;
    for k in 1..terms {
        t = t * q / dd((k * (k + 1)) as f64);
        s = s + t;
    }
    (s * dd(z) / dd(2.0)).to_f64()
}

/// Σₖ (z/2)^{2k+v}/(k! Γ(k+v+1)) with v = n + 1/2, in double-double.
pub fn i_half_ref(n: u32, z: f64, terms: usize) -> f64 {
    let h = dd(z) / dd(2.0);
    // Γ(3/2) = √π/2
    let sqrt_pi = dd(std::f64::consts::PI).sqrt();
    let mut lead = h.sqrt() / (sqrt_pi / dd(2.0));
    for j in 1..=n {
        lead = lead * h / dd(f64::from(j) + 0.5);
    }
    let q = h * h;
    let v = f64::from(n) + 0.5;
    let mut t = lead;
    let mut s = lead;
    for k in 1..terms {
        t = t * q / dd(k as f64 * (k as f64 + v));
        s = s + t;
    }
    s.to_f64()
}

/// Σ_{n<terms} (x+2n+2) sⁿ(x−s)ⁿ/(n!(n+1)!) in double-double.
pub fn cont_binom_ref(x: f64, s: f64, terms: usize) -> f64 {
    let q = dd(s) * (dd(x) - dd(s));
    let mut r = Dd::ONE;
    let mut total = Dd::ZERO;
    for n in 0..terms {
        if n > 0 {
            r = r * q / dd((n * (n + 1)) as f64);
        }
        total = total + dd(x + 2.0 * n as f64 + 2.0) * r;
    }
    total.to_f64()
}

/// The signed double-sum form of `{x<s>}` over powers `xᵃ sᵇ` with `b ≤ b_max`,
/// accumulated in double-double to survive its cancellation.
#[allow(clippy::needless_range_loop)]
pub fn cont_binom_signed(x: f64, s: f64, b_max: usize) -> f64 {
    // binom[b][k] = C(b, k) as double-double
    let mut binom: Vec<Vec<Dd>> = Vec::with_capacity(b_max + 2);
    for b in 0..=b_max + 1 {
        let mut row = vec![Dd::ONE; b + 1];
        for k in 1..b {
            row[k] = binom[b - 1][k - 1] + binom[b - 1][k];
        }
        binom.push(row);
    }
    let c = |b: usize, k: i64| -> Dd {
        if k < 0 || k as usize > b {
            Dd::ZERO
        } else {
            binom[b][k as usize]
        }
    };
    let mut xp = vec![Dd::ONE];
    let mut sp = vec![Dd::ONE];
    for i in 1..=b_max + 2 {
        xp.push(xp[i - 1] * dd(x) / dd(i as f64));
        sp.push(sp[i - 1] * dd(s) / dd(i as f64));
    }
    let sign = |e: i64| if e % 2 == 0 { Dd::ONE } else { -Dd::ONE };

    let mut total = Dd::ZERO;
    for b in 0..=b_max {
        for a in 0..=(b + 1) {
            let (ai, bi) = (a as i64, b as i64);
            let w = xp[a] * sp[b];
            if (a + b) % 2 == 0 {
                if a <= b {
                    let e = (bi - ai) / 2;
                    total = total + dd(2.0) * sign(e) * c(b, (ai + bi) / 2) * w;
                }
            } else {
                if a < b {
                    let e = (bi - ai - 1) / 2;
                    total = total + sign(e) * c(b, (ai + bi + 1) / 2) * w;
                }
                let e = (bi - ai + 1) / 2;
                total = total + sign(e) * c(b, (bi - ai + 1) / 2) * w;
            }
        }
    }
    total.to_f64()
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// ∫_lo^hi f by an m-point Gauss–Legendre rule.
pub fn gl_integrate(rule: &[(f64, f64)], lo: f64, hi: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    rule.iter().map(|&(x, w)| w * f(c + h * x)).sum::<f64>() * h
}

/// vol Λⁿ(x, y) by nesting the recursion
/// `vol Λⁿ(x,y) = ∫₀^Q ∫₀^{P−b} vol Λⁿ⁻¹(a+2b, a) da db` numerically.
/// The integrands are polynomials, so a rule with `m` points per axis is
/// exact once 2m−1 ≥ 2n.
pub fn lambda_nested(n: usize, x: f64, y: f64, rule: &[(f64, f64)]) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let p = 0.5 * (x + y);
    let q = 0.5 * (x - y);
    gl_integrate(rule, 0.0, q, |b| {
        gl_integrate(rule, 0.0, p - b, |a| lambda_nested(n - 1, a + 2.0 * b, a, rule))
    })
}

/// Frozen 40-digit references, computed once with an arbitrary-precision
/// library and rounded here.
#[allow(clippy::excessive_precision)]
pub mod frozen {
    pub const I0_2: f64 = 2.279585302336067267437;
    pub const I1_2: f64 = 1.590636854637329063382;
    pub const I_HALF_1_AT_1: f64 = 0.2935253263474797997886;
    pub const I_HALF_3_AT_2: f64 = 0.1069054882846333671763;
    pub const BINOM_1_HALF: f64 = 3.662449963488986725612;
    pub const MIDPOINT_1: f64 = 7.740444313946792661639;
    pub const NORMALIZER_X2_P03: f64 = 2.962008156969165463750;
    pub const MOMENT_HALF_X2_L2: f64 = 1.279824268220590587604;
    pub const MOMENT_HALF_X1_L3: f64 = 0.2435226047803545647008;
    pub const MOMENT_P_X2_P03_L1: f64 = 0.7706313199764242781070;
    pub const CENTERED_VARIANCE_X10: f64 = 2.373972780211061714606;
    /// ∫ cos · d_x for x = 1, 0.5, 0.1, 0.02.
    pub const COS_AGAINST_DENSITY: [f64; 4] = [
        0.96097208540999049850,
        0.98976829812686295256,
        0.99958365628038933777,
        0.99998333385889081219,
    ];
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}
