//! Bisection for strictly decreasing scalar functions.

/// Find `x` in `[lo, hi]` with `g(x) = target` for a strictly decreasing `g`.
///
/// The endpoints are never evaluated, so `g` may be singular at either end.
/// The caller is responsible for bracketing, i.e. `g(lo+) >= target >= g(hi-)`.
/// Iteration stops when the bracket can no longer be split in `f64`.
pub fn bisect_decreasing<G>(g: G, mut lo: f64, mut hi: f64, target: f64) -> crate::Result<f64>
where
    G: Fn(f64) -> crate::Result<f64>,
{
    for _ in 0..2048 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = g(mid)?;
        if v == target {
            return Ok(mid);
        }
        if v > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
