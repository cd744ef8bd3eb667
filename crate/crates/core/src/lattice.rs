//! Lattice paths, their patterns, and exact counting.
//!
//! This is the discrete side of every continuous quantity in the crate: path
//! counts by dynamic programming over time layers, counts refined by pattern
//! via positive time tuples, and integer points of the component polytopes.
//! All counts are arbitrary precision.
//!
//! Step labels are 1-based, so a pattern over two steps reads `(1, 2, 1)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::oracle::PolytopeSpec;

pub type Point = Vec<i64>;

/// An ordered set of distinct integer step vectors of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSet {
    dim: usize,
    steps: Vec<Point>,
}

impl StepSet {
    pub fn new(steps: Vec<Point>) -> Result<Self> {
        let Some(first) = steps.first() else {
            return domain("a step set needs at least one step");
        };
        let dim = first.len();
        if dim == 0 {
            return domain("steps must have positive dimension");
        }
        for (i, v) in steps.iter().enumerate() {
            if v.len() != dim {
                return domain(format!("step {} has dimension {}, expected {dim}", i + 1, v.len()));
            }
            if steps[..i].contains(v) {
                return domain(format!("step {} repeats an earlier step", i + 1));
            }
        }
        Ok(Self { dim, steps })
    }

    /// Steps (1,0) and (0,1): paths counted by binomial coefficients.
    pub fn binomial() -> Self {
        Self {
            dim: 2,
            steps: vec![vec![1, 0], vec![0, 1]],
        }
    }

    /// Steps (1,1) and (1,-1): Dyck paths.
    pub fn dyck() -> Self {
        Self {
            dim: 2,
            steps: vec![vec![1, 1], vec![1, -1]],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Step vector for a 1-based label.
    pub fn step(&self, label: usize) -> Option<&[i64]> {
        label.checked_sub(1).and_then(|i| self.steps.get(i)).map(Vec::as_slice)
    }

    fn check_point(&self, p: &[i64], what: &str) -> Result<()> {
        if p.len() != self.dim {
            return domain(format!("{what} has dimension {}, expected {}", p.len(), self.dim));
        }
        Ok(())
    }
}

/// A direction sequence with no two equal adjacent entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Pattern(Vec<usize>);

impl Pattern {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.contains(&0) {
            return domain("pattern labels are 1-based");
        }
        if let Some(w) = entries.windows(2).find(|w| w[0] == w[1]) {
            return domain(format!("pattern repeats label {} in adjacent positions", w[0]));
        }
        Ok(Self(entries))
    }

    /// The formal length-0 pattern of a zero-time path.
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Alternating pattern of the given length starting with `first`, over labels {1, 2}.
    pub fn alternating(first: usize, len: usize) -> Self {
        debug_assert!(first == 1 || first == 2);
        Self((0..len).map(|i| if i % 2 == 0 { first } else { 3 - first }).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count_of(&self, label: usize) -> usize {
        self.0.iter().filter(|&&c| c == label).count()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn check_against(&self, steps: &StepSet) -> Result<()> {
        match self.0.iter().find(|&&c| c > steps.len()) {
            Some(c) => domain(format!("pattern label {c} exceeds the {} available steps", steps.len())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// All patterns of length `len` over labels `1..=k`, in lexicographic order.
pub fn patterns(k: usize, len: usize) -> Vec<Pattern> {
    if len == 0 {
        return vec![Pattern::empty()];
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(k: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Pattern>) {
        if cur.len() == len {
            out.push(Pattern(cur.clone()));
            return;
        }
        for c in 1..=k {
            if cur.last() != Some(&c) {
                cur.push(c);
                rec(k, len, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, len, &mut cur, &mut out);
    out
}

/// A lattice path given by its start point and the labels of its steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    pub start: Point,
    pub steps: Vec<usize>,
}

impl LatticePath {
    pub fn new(start: Point, steps: Vec<usize>) -> Self {
        Self { start, steps }
    }

    /// Travel time.
    pub fn time(&self) -> usize {
        self.steps.len()
    }

    /// The visited points p₀ = start, p₁, …, p_l.
    pub fn points(&self, set: &StepSet) -> Result<Vec<Point>> {
        set.check_point(&self.start, "start point")?;
        let mut pts = vec![self.start.clone()];
        for &a in &self.steps {
            let v = set
                .step(a)
                .ok_or_else(|| Error::Domain(format!("step label {a} out of range")))?;
            let last = pts.last().expect("non-empty");
            pts.push(last.iter().zip(v).map(|(x, d)| x + d).collect());
        }
        Ok(pts)
    }
}

/// Collapses contiguous runs of equal step labels.
pub fn pattern_of(path: &LatticePath) -> Pattern {
    let mut out: Vec<usize> = Vec::new();
    for &a in &path.steps {
        if out.last() != Some(&a) {
            out.push(a);
        }
    }
    Pattern(out)
}

/// {x : ⟨normal, x⟩ ≥ offset for every constraint}; empty means the whole space.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HalfspaceRegion {
    constraints: Vec<(Point, i64)>,
}

impl HalfspaceRegion {
    pub fn whole_space() -> Self {
        Self::default()
    }

    pub fn new(constraints: Vec<(Point, i64)>) -> Self {
        Self { constraints }
    }

    /// The upper half-plane y ≥ 0.
    pub fn upper_half_plane() -> Self {
        Self::new(vec![(vec![0, 1], 0)])
    }

    pub fn constraints(&self) -> &[(Point, i64)] {
        &self.constraints
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.constraints.iter().all(|(n, off)| dot(n, x) >= *off)
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        match self.constraints.iter().find(|(n, _)| n.len() != dim) {
            Some((n, _)) => domain(format!("halfspace normal has dimension {}, expected {dim}", n.len())),
            None => Ok(()),
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Number of lattice paths from `p` to `q` in exactly `l` steps.
pub fn count_paths(steps: &StepSet, p: &[i64], q: &[i64], l: usize) -> Result<BigUint> {
    count_paths_restricted(steps, p, q, l, &HalfspaceRegion::whole_space())
}

/// Number of lattice paths from `p` to `q` in `l` steps visiting only points of `region`.
pub fn count_paths_restricted(
    steps: &StepSet,
    p: &[i64],
    q: &[i64],
    l: usize,
    region: &HalfspaceRegion,
) -> Result<BigUint> {
    steps.check_point(p, "start point")?;
    steps.check_point(q, "end point")?;
    region.check_dim(steps.dim())?;
    if !region.contains(p) || !region.contains(q) {
        return domain("start and end points must lie in the region");
    }

    let mut frontier: HashMap<Point, BigUint> = HashMap::new();
    frontier.insert(p.to_vec(), BigUint::one());
    for _ in 0..l {
        let mut next: HashMap<Point, BigUint> = HashMap::with_capacity(frontier.len() * 2);
        for (x, n) in &frontier {
            for v in &steps.steps {
                let y: Point = x.iter().zip(v).map(|(a, b)| a + b).collect();
                if region.contains(&y) {
                    *next.entry(y).or_insert_with(BigUint::zero) += n;
                }
            }
        }
        frontier = next;
    }
    Ok(frontier.remove(q).unwrap_or_else(BigUint::zero))
}

/// Number of paths with the given pattern: positive tuples (s₀..sₙ) with
/// Σ sᵢ = l and p + Σ sᵢ v_{cᵢ} = q, found by exhaustive enumeration.
pub fn count_paths_by_pattern(steps: &StepSet, p: &[i64], q: &[i64], l: usize, c: &Pattern) -> Result<BigUint> {
    count_paths_by_pattern_restricted(steps, p, q, l, c, &HalfspaceRegion::whole_space())
}

/// As [`count_paths_by_pattern`], additionally requiring every peak to lie in `region`.
///
/// For a convex region, peaks inside imply the whole path is inside.
pub fn count_paths_by_pattern_restricted(
    steps: &StepSet,
    p: &[i64],
    q: &[i64],
    l: usize,
    c: &Pattern,
    region: &HalfspaceRegion,
) -> Result<BigUint> {
    steps.check_point(p, "start point")?;
    steps.check_point(q, "end point")?;
    region.check_dim(steps.dim())?;
    c.check_against(steps)?;
    if !region.contains(p) || !region.contains(q) {
        return domain("start and end points must lie in the region");
    }
    if c.is_empty() {
        return Ok(if l == 0 && p == q {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }

    fn rec(
        steps: &StepSet,
        labels: &[usize],
        remaining: usize,
        at: &mut Point,
        q: &[i64],
        region: &HalfspaceRegion,
        count: &mut u64,
    ) {
        let v = steps.step(labels[0]).expect("checked labels");
        if labels.len() == 1 {
            let hit = at
                .iter()
                .zip(v)
                .zip(q)
                .all(|((x, d), t)| x + d * remaining as i64 == *t);
            if hit {
                *count += 1;
            }
            return;
        }
        // Leave at least one unit of time for each later segment.
        for s in 1..=(remaining - (labels.len() - 1)) {
            for (x, d) in at.iter_mut().zip(v) {
                *x += d * s as i64;
            }
            if region.contains(at) {
                rec(steps, &labels[1..], remaining - s, at, q, region, count);
            }
            for (x, d) in at.iter_mut().zip(v) {
                *x -= d * s as i64;
            }
        }
    }

    if l < c.len() {
        return Ok(BigUint::zero());
    }
    let mut count = 0u64;
    let mut at = p.to_vec();
    rec(steps, c.entries(), l, &mut at, q, region, &mut count);
    Ok(BigUint::from(count))
}

/// Splits the paths from `p` to `q` in time `l` by pattern, listing only
/// patterns with a nonzero count.
///
/// Patterns longer than `l` cannot carry a positive time tuple, so lengths
/// `1..=l` are scanned (and only the empty pattern when `l = 0`).
pub fn pattern_decomposition(
    steps: &StepSet,
    p: &[i64],
    q: &[i64],
    l: usize,
    region: &HalfspaceRegion,
) -> Result<Vec<(Pattern, BigUint)>> {
    let lengths: Vec<usize> = if l == 0 { vec![0] } else { (1..=l).collect() };
    let mut out = Vec::new();
    for len in lengths {
        for c in patterns(steps.len(), len) {
            let n = count_paths_by_pattern_restricted(steps, p, q, l, &c, region)?;
            if !n.is_zero() {
                out.push((c, n));
            }
        }
    }
    Ok(out)
}

/// Number of Dyck paths of semilength `n`.
pub fn dyck_count(n: usize) -> BigUint {
    count_paths_restricted(
        &StepSet::dyck(),
        &[0, 0],
        &[2 * n as i64, 0],
        2 * n,
        &HalfspaceRegion::upper_half_plane(),
    )
    .expect("Dyck configuration is valid")
}

/// Dyck paths of semilength `n` grouped by number of peaks; entry `k - 1`
/// holds the count with `k` peaks. A pattern of length 2k has k peaks.
pub fn dyck_by_peaks(n: usize) -> Vec<BigUint> {
    let mut by_peaks = vec![BigUint::zero(); n];
    if n == 0 {
        return by_peaks;
    }
    let parts = pattern_decomposition(
        &StepSet::dyck(),
        &[0, 0],
        &[2 * n as i64, 0],
        2 * n,
        &HalfspaceRegion::upper_half_plane(),
    )
    .expect("Dyck configuration is valid");
    for (c, count) in parts {
        debug_assert!(c.len() % 2 == 0 && c.entries()[0] == 1);
        by_peaks[c.len() / 2 - 1] += count;
    }
    by_peaks
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// c_n = C(2n, n)/(n+1).
pub fn catalan_number(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// N(n, k) = C(n, k) C(n, k-1) / n, the Dyck paths of semilength n with k peaks.
pub fn narayana_number(n: u64, k: u64) -> BigUint {
    if n == 0 || k == 0 || k > n {
        return BigUint::zero();
    }
    binomial(n, k) * binomial(n, k - 1) / n
}

/// Integer points in the relative interior of a component polytope.
///
/// "Interior" is taken with respect to the positivity of the time
/// coordinates: every coordinate must be ≥ 1, the equalities must hold, and
/// the region inequalities are kept closed (a Dyck path may touch the axis
/// at a valley). A 0-dimensional polytope counts as its single point.
pub fn interior_lattice_points(poly: &PolytopeSpec) -> Result<BigUint> {
    poly.simplicial_system()?.count_positive_points()
}

/// `{s ∈ ℤ^dim : A_eq s = b_eq, A_ge s ≥ b_ge}` with integer data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeSystem {
    pub dim: usize,
    pub equalities: Vec<(Point, i64)>,
    pub inequalities: Vec<(Point, i64)>,
}

impl PolytopeSystem {
    /// Counts integer solutions with every coordinate ≥ 1.
    ///
    /// Each coordinate must appear with a positive coefficient in some
    /// equality row whose coefficients are all nonnegative; that row bounds
    /// it. Rows are checked as soon as their last nonzero coordinate is fixed.
    pub fn count_positive_points(&self) -> Result<BigUint> {
        let dim = self.dim;
        for (row, _) in self.equalities.iter().chain(&self.inequalities) {
            if row.len() != dim {
                return domain(format!("constraint row has length {}, expected {dim}", row.len()));
            }
        }

        let nonneg_rows: Vec<&(Point, i64)> = self
            .equalities
            .iter()
            .filter(|(row, _)| row.iter().all(|&a| a >= 0))
            .collect();
        let mut upper = vec![i64::MAX; dim];
        for (i, ub) in upper.iter_mut().enumerate() {
            for (row, rhs) in &nonneg_rows {
                if row[i] > 0 {
                    let others: i64 = row.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| a).sum();
                    *ub = (*ub).min((rhs - others).div_euclid(row[i]));
                }
            }
            if *ub == i64::MAX {
                return Err(Error::Unbounded(format!(
                    "coordinate {i} is not bounded by any equality"
                )));
            }
        }
        if upper.iter().any(|&u| u < 1) {
            return Ok(BigUint::zero());
        }

        // Rows grouped by the coordinate at which they become fully determined.
        struct Row<'a> {
            coef: &'a [i64],
            rhs: i64,
            equality: bool,
        }
        let mut due: Vec<Vec<Row>> = (0..dim).map(|_| Vec::new()).collect();
        let rows = self
            .equalities
            .iter()
            .map(|r| (r, true))
            .chain(self.inequalities.iter().map(|r| (r, false)));
        for ((coef, rhs), equality) in rows {
            let row = Row {
                coef,
                rhs: *rhs,
                equality,
            };
            match coef.iter().rposition(|&a| a != 0) {
                Some(last) => due[last].push(row),
                None => {
                    let ok = if equality { 0 == *rhs } else { 0 >= *rhs };
                    if !ok {
                        return Ok(BigUint::zero());
                    }
                }
            }
        }
        if dim == 0 {
            return Ok(BigUint::one());
        }

        // Minimum contribution of coordinates i.. to each nonnegative row.
        let tail_min: Vec<Vec<i64>> = nonneg_rows
            .iter()
            .map(|(row, _)| {
                let mut t = vec![0; dim + 1];
                for i in (0..dim).rev() {
                    t[i] = t[i + 1] + row[i];
                }
                t
            })
            .collect();

        struct Search<'a> {
            dim: usize,
            upper: &'a [i64],
            due: &'a [Vec<Row<'a>>],
            nonneg: &'a [&'a (Point, i64)],
            tail_min: &'a [Vec<i64>],
            point: Vec<i64>,
            count: u64,
        }
        impl Search<'_> {
            fn feasible_prefix(&self, i: usize) -> bool {
                for (r, (row, rhs)) in self.nonneg.iter().enumerate() {
                    let partial: i64 = row[..=i].iter().zip(&self.point).map(|(a, b)| a * b).sum();
                    if partial + self.tail_min[r][i + 1] > *rhs {
                        return false;
                    }
                }
                self.due[i].iter().all(|row| {
                    let v: i64 = row.coef[..=i].iter().zip(&self.point).map(|(a, b)| a * b).sum();
                    if row.equality {
                        v == row.rhs
                    } else {
                        v >= row.rhs
                    }
                })
            }

            fn run(&mut self, i: usize) {
                if i == self.dim {
                    self.count += 1;
                    return;
                }
                for v in 1..=self.upper[i] {
                    self.point.push(v);
                    let ok = self.feasible_prefix(i);
                    let overshoot = !ok && self.nonneg_overshoot(i);
                    if ok {
                        self.run(i + 1);
                    }
                    self.point.pop();
                    if overshoot {
                        // Larger values only increase every nonnegative row.
                        break;
                    }
                }
            }

            fn nonneg_overshoot(&self, i: usize) -> bool {
                self.nonneg.iter().enumerate().any(|(r, (row, rhs))| {
                    let partial: i64 = row[..=i].iter().zip(&self.point).map(|(a, b)| a * b).sum();
                    row[i] > 0 && partial + self.tail_min[r][i + 1] > *rhs
                })
            }
        }

        let mut search = Search {
            dim,
            upper: &upper,
            due: &due,
            nonneg: &nonneg_rows,
            tail_min: &tail_min,
            point: Vec::with_capacity(dim),
            count: 0,
        };
        search.run(0);
        Ok(BigUint::from(search.count))
    }
}
