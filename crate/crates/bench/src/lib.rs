//! Shared inputs for the criterion benchmarks.

/// Interior grid points `(x, s)` with `0 < s < x <= x_max`, `n` values of x.
pub fn interior_grid(x_max: f64, n: usize) -> Vec<(f64, f64)> {
    let mut pts = Vec::with_capacity(n * n);
    for i in 1..=n {
        let x = x_max * i as f64 / n as f64;
        for j in 1..n {
            pts.push((x, x * j as f64 / n as f64));
        }
    }
    pts
}
