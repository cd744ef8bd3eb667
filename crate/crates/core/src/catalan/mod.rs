//! Continuous Catalan functions.
//!
//! Λⁿ(x, y) is the polytope of directed paths with steps (1,1), (1,−1) and
//! n+1 up-runs from the origin to (x, y) that stay in the upper half-plane.
//! Write `P = (x+y)/2` and `Q = (x−y)/2` for the total up and down times.
//! The volumes satisfy `vol Λ⁰ = 1` and
//!
//! ```text
//! vol Λⁿ⁺¹(x, y) = ∫₀^Q ∫₀^{P−b} I_n(a, b) da db,   I_n(a, b) = vol Λⁿ(a+2b, a),
//! ```
//!
//! where `I_n(a, b) = Σ Iⁿ_{k,l} aᵏ/k! bˡ/l!` has integer coefficients given
//! by a closed recursion. Everything up to the final evaluation is exact.

mod poly;

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use poly::{F64Poly2, RatPoly2};

use crate::error::{domain, Result};
use crate::lattice::{interior_lattice_points, narayana_number};
use crate::oracle::PolytopeSpec;
use crate::quad::{try_integrate_2d, QuadConfig};

/// Default table size: enough for the C(2x) coefficients through x²⁶.
pub const DEFAULT_TABLE_SIZE: usize = 24;

fn binom_int(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    BigInt::from(crate::lattice::binomial(n as u64, k as u64))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Exact coefficients `Iⁿ_{k,l}` for `n ≤ n_max`, `k + l ≤ m_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    n_max: usize,
    m_max: usize,
    // entries[n][k][l], l ≤ m_max − k
    entries: Vec<Vec<Vec<BigInt>>>,
}

impl CoeffTable {
    /// Builds the table from `I⁰_{k,l} = δ_{k0}δ_{l0}` and
    ///
    /// ```text
    /// Iⁿ_{k,l} = Σ_{p=0}^{l−1} Σ_{q=0}^{l−p−1} (−1)^q C(l,p) C(l−p−1,q) Iⁿ⁻¹_{k+p+q−1, l−p−q−1},
    /// ```
    ///
    /// reading entries with a negative index as zero. Every source entry
    /// lies on the anti-diagonal `k + l − 2`, so targets whose source
    /// anti-diagonal is identically zero are skipped.
    pub fn new(n_max: usize, m_max: usize) -> Self {
        let blank = || -> Vec<Vec<BigInt>> { (0..=m_max).map(|k| vec![BigInt::zero(); m_max - k + 1]).collect() };
        let mut entries = Vec::with_capacity(n_max + 1);
        let mut first = blank();
        first[0][0] = BigInt::one();
        entries.push(first);

        for n in 1..=n_max {
            let prev: &Vec<Vec<BigInt>> = &entries[n - 1];
            let live: Vec<bool> = (0..=m_max)
                .map(|d| (0..=d).any(|k| !prev[k][d - k].is_zero()))
                .collect();
            let mut cur = blank();
            for (k, row) in cur.iter_mut().enumerate() {
                for (l, slot) in row.iter_mut().enumerate() {
                    if k + l < 2 || !live[k + l - 2] {
                        continue;
                    }
                    let mut acc = BigInt::zero();
                    for p in 0..l {
                        let cp = binom_int(l as i64, p as i64);
                        for q in 0..(l - p) {
                            let (kk, ll) = ((k + p + q) as i64 - 1, (l - p - q) as i64 - 1);
                            if kk < 0 {
                                continue;
                            }
                            let src = &prev[kk as usize][ll as usize];
                            if src.is_zero() {
                                continue;
                            }
                            let term = &cp * binom_int((l - p) as i64 - 1, q as i64) * src;
                            if q % 2 == 0 {
                                acc += term;
                            } else {
                                acc -= term;
                            }
                        }
                    }
                    *slot = acc;
                }
            }
            entries.push(cur);
        }
        Self { n_max, m_max, entries }
    }

    /// Shared table of size [`DEFAULT_TABLE_SIZE`].
    pub fn shared() -> &'static CoeffTable {
        static TABLE: OnceLock<CoeffTable> = OnceLock::new();
        TABLE.get_or_init(|| CoeffTable::new(DEFAULT_TABLE_SIZE, DEFAULT_TABLE_SIZE))
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn get(&self, n: usize, k: usize, l: usize) -> Option<&BigInt> {
        self.entries.get(n)?.get(k)?.get(l)
    }

    /// Iterates `(n, k, l, Iⁿ_{k,l})` over all stored entries.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, &BigInt)> {
        self.entries.iter().enumerate().flat_map(|(n, t)| {
            t.iter()
                .enumerate()
                .flat_map(move |(k, row)| row.iter().enumerate().map(move |(l, v)| (n, k, l, v)))
        })
    }

    /// Checks `I⁰ = δ`, `Iⁿ_{k,l} = 0` for `n > l`, and `Iⁿ_{k,0} = 0` for `n > 0`.
    pub fn check_side_conditions(&self) -> std::result::Result<(), String> {
        for (n, k, l, v) in self.iter() {
            if n == 0 && *v != BigInt::from(u8::from(k == 0 && l == 0)) {
                return Err(format!("I^0_{{{k},{l}}} = {v}"));
            }
            if n > l && !v.is_zero() {
                return Err(format!("I^{n}_{{{k},{l}}} = {v} with n > l"));
            }
        }
        Ok(())
    }

    /// Whether the table holds every coefficient of `I_n`, which is
    /// homogeneous of degree 2n.
    pub fn covers(&self, n: usize) -> bool {
        n <= self.n_max && 2 * n <= self.m_max
    }

    /// `I_n(a, b)` as a polynomial in `(a, b)` with rational coefficients.
    pub fn i_polynomial(&self, n: usize) -> Result<RatPoly2> {
        if !self.covers(n) {
            return domain(format!("coefficient table does not cover I_{n}"));
        }
        let mut out = RatPoly2::zero();
        for (k, row) in self.entries[n].iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    let den = factorial(k as u64) * factorial(l as u64);
                    out.add_term(k as u32, l as u32, BigRational::new(v.clone(), den));
                }
            }
        }
        Ok(out)
    }
}

/// `vol Λⁿ` as an exact polynomial in `P = (x+y)/2`, `Q = (x−y)/2`, from `table`.
///
/// For n ≥ 1, each monomial `aᵏbˡ/(k!l!)` of `I_{n−1}` integrates to
/// `Σ_j C(k+1, j)(−1)ʲ P^{k+1−j} Q^{j+l+1} / ((k+1)! l! (j+l+1))`.
pub fn lambda_polynomial_with(n: usize, table: &CoeffTable) -> Result<RatPoly2> {
    if n == 0 {
        return Ok(RatPoly2::one());
    }
    if !table.covers(n - 1) {
        return domain(format!("coefficient table does not cover Λ^{n}"));
    }
    let mut out = RatPoly2::zero();
    for (k, row) in table.entries[n - 1].iter().enumerate() {
        for (l, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let den = factorial(k as u64 + 1) * factorial(l as u64);
            for j in 0..=(k + 1) {
                let mut num = v * binom_int(k as i64 + 1, j as i64);
                if j % 2 == 1 {
                    num = -num;
                }
                let c = BigRational::new(num, &den * BigInt::from(j + l + 1));
                out.add_term((k + 1 - j) as u32, (j + l + 1) as u32, c);
            }
        }
    }
    Ok(out)
}

fn table_for(n: usize) -> std::borrow::Cow<'static, CoeffTable> {
    let shared = CoeffTable::shared();
    if n == 0 || shared.covers(n - 1) {
        std::borrow::Cow::Borrowed(shared)
    } else {
        std::borrow::Cow::Owned(CoeffTable::new(n - 1, 2 * (n - 1)))
    }
}

/// `vol Λⁿ` in `(P, Q)`, extending the coefficient table when needed.
pub fn lambda_polynomial(n: usize) -> Result<RatPoly2> {
    lambda_polynomial_with(n, &table_for(n))
}

fn check_xy(x: f64, y: f64) -> Result<()> {
    if !(x.is_finite() && y.is_finite() && 0.0 <= y && y <= x) {
        return domain(format!("need finite 0 <= y <= x, got x = {x}, y = {y}"));
    }
    Ok(())
}

/// `vol Λⁿ(x, y)`.
pub fn lambda_volume(n: usize, x: f64, y: f64) -> Result<f64> {
    check_xy(x, y)?;
    Ok(lambda_polynomial(n)?.to_f64().eval(0.5 * (x + y), 0.5 * (x - y)))
}

/// Taylor data of `C(2x) = C(2x, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalanCoeffs {
    /// Coefficient of `xᵐ/m!`.
    pub integers: Vec<BigInt>,
    /// Coefficient of `xᵐ`.
    pub taylor: Vec<BigRational>,
}

impl CatalanCoeffs {
    pub fn eval(&self, x: f64) -> f64 {
        self.taylor
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

/// Taylor coefficients of `C(2x)` through `x^{m_max}`:
///
/// ```text
/// [xᵐ/m!] = Σ_{k+l=m−2} (Σ_{n=1}^{l+1} Iⁿ⁻¹_{k,l}) Σ_{p=0}^{k+1} (−1)^{k+1−p} C(m,p) C(m−p−1, l)
/// ```
///
/// for m ≥ 2, with constant term 1 and no linear term.
pub fn catalan_series_coeffs(m_max: usize) -> CatalanCoeffs {
    let inner = m_max.saturating_sub(2);
    let shared = CoeffTable::shared();
    let owned;
    let table = if shared.n_max() >= inner && shared.m_max() >= inner {
        shared
    } else {
        owned = CoeffTable::new(inner, inner);
        &owned
    };

    let mut integers = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let v = match m {
            0 => BigInt::one(),
            1 => BigInt::zero(),
            _ => {
                let mut acc = BigInt::zero();
                for k in 0..=(m - 2) {
                    let l = m - 2 - k;
                    let mut i_sum = BigInt::zero();
                    for n in 1..=(l + 1) {
                        if let Some(v) = table.get(n - 1, k, l) {
                            i_sum += v;
                        }
                    }
                    if i_sum.is_zero() {
                        continue;
                    }
                    let mut bracket = BigInt::zero();
                    for p in 0..=(k + 1) {
                        let t = binom_int(m as i64, p as i64) * binom_int((m - p) as i64 - 1, l as i64);
                        if (k + 1 - p) % 2 == 1 {
                            bracket -= t;
                        } else {
                            bracket += t;
                        }
                    }
                    acc += i_sum * bracket;
                }
                acc
            }
        };
        integers.push(v);
    }
    let taylor = integers
        .iter()
        .enumerate()
        .map(|(m, v)| BigRational::new(v.clone(), factorial(m as u64)))
        .collect();
    CatalanCoeffs { integers, taylor }
}

/// `Σ_{n>n_max} zⁿ/(n!)²` with `z = (x+y)(x−y)`, a bound on the tail of `Σ vol Λⁿ(x, y)`.
pub fn majorant_tail(x: f64, y: f64, n_max: usize) -> f64 {
    let z = (x + y) * (x - y);
    if z == 0.0 {
        return 0.0;
    }
    let mut term = 1.0;
    for n in 1..=(n_max + 1) {
        term *= z / (n as f64 * n as f64);
    }
    let mut tail = 0.0;
    let mut n = n_max + 1;
    while term > f64::MIN_POSITIVE && term > 1e-18 * tail {
        tail += term;
        n += 1;
        term *= z / (n as f64 * n as f64);
    }
    tail
}

/// Number of terms after which the majorant tail is below `tol`.
pub fn terms_for_tail(x: f64, y: f64, tol: f64) -> usize {
    (0..200).find(|&n| majorant_tail(x, y, n) <= tol).unwrap_or(200)
}

/// Truncations of `C(x, y) = Σₙ vol Λⁿ(x, y)` with fixed `n_max`, evaluated in floating point.
#[derive(Debug, Clone)]
pub struct CatalanSeries {
    polys: Vec<F64Poly2>,
}

impl CatalanSeries {
    pub fn new(n_max: usize) -> Result<Self> {
        let table = table_for(n_max);
        let polys = (0..=n_max)
            .map(|n| lambda_polynomial_with(n, &table).map(|p| p.to_f64()))
            .collect::<Result<_>>()?;
        Ok(Self { polys })
    }

    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    /// `Σ_{n ≤ n_max} vol Λⁿ(x, y)`; arguments are not validated.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let (p, q) = (0.5 * (x + y), 0.5 * (x - y));
        self.polys.iter().map(|poly| poly.eval(p, q)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalanValue {
    pub value: f64,
    /// Majorant bound on the omitted terms.
    pub tail_bound: f64,
    pub n_max: usize,
}

/// `C(x, y)` truncated after `vol Λ^{n_max}`.
pub fn catalan_c(x: f64, y: f64, n_max: usize) -> Result<CatalanValue> {
    check_xy(x, y)?;
    Ok(CatalanValue {
        value: CatalanSeries::new(n_max)?.eval(x, y),
        tail_bound: majorant_tail(x, y, n_max),
        n_max,
    })
}

/// `|C(x,y) − 1 − ∫₀^Q ∫₀^{P−b} C(a+2b, a) da db|`, the double integral by
/// nested adaptive quadrature.
pub fn integral_equation_residual(x: f64, y: f64, qcfg: &QuadConfig) -> Result<f64> {
    check_xy(x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let n_max = terms_for_tail(x, y, 1e-17);
    let series = CatalanSeries::new(n_max)?;
    let (p, q) = (0.5 * (x + y), 0.5 * (x - y));
    let rhs = try_integrate_2d(|b, a| Ok(series.eval(a + 2.0 * b, a)), (0.0, q), |b| (0.0, p - b), qcfg)?;
    Ok((series.eval(x, y) - 1.0 - rhs.value).abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct NarayanaRow {
    pub up_runs: usize,
    /// Integer points of Λ^{up_runs−1}(2n, 0) with positive run times.
    pub lattice_count: BigUint,
    pub narayana: BigUint,
    /// `N(n, up_runs − 1)`, the value under component-index labelling.
    pub narayana_by_index: BigUint,
    pub volume: f64,
}

/// Λ-components of semilength `n` next to Narayana numbers and volumes.
pub fn narayana_anchor(n: usize) -> Result<Vec<NarayanaRow>> {
    if n == 0 {
        return domain("semilength must be at least 1");
    }
    let x = 2.0 * n as f64;
    (1..=n)
        .map(|runs| {
            let index = runs - 1;
            Ok(NarayanaRow {
                up_runs: runs,
                lattice_count: interior_lattice_points(&PolytopeSpec::catalan_component(index, x, 0.0)?)?,
                narayana: narayana_number(n as u64, runs as u64),
                narayana_by_index: narayana_number(n as u64, index as u64),
                volume: lambda_volume(index, x, 0.0)?,
            })
        })
        .collect()
}

/// `vol Λⁿ(x, y)` evaluated exactly at rational `(x, y)`.
pub fn lambda_volume_exact(n: usize, x: &BigRational, y: &BigRational) -> Result<BigRational> {
    let two = BigRational::from_integer(2.into());
    let poly = lambda_polynomial(n)?;
    Ok(poly.eval_exact(&((x + y) / &two), &((x - y) / &two)))
}
