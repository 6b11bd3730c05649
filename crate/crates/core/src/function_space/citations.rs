use super::{Knot, PiecewiseLinearFn};
use crate::{Error, Result};

/// Outcome of [`from_citations`].
#[derive(Debug, Clone, PartialEq)]
pub struct Continuized {
    pub function: PiecewiseLinearFn,
    /// The input was not already weakly decreasing and had to be sorted.
    pub resorted: bool,
    /// Number of zero counts dropped before building knots.
    pub zeros_dropped: usize,
    /// Number of tied values that were nudged down to force strict decrease.
    pub ties_broken: usize,
}

/// Continuize a citation vector into a strictly decreasing piecewise-linear
/// function.
///
/// Counts are sorted decreasingly and zeros are dropped. The `i`-th positive
/// count `c_{i+1}` becomes knot `(i, c_{i+1})` and a terminal knot `(n, 0)` is
/// appended, so `T = n`. Within each run of equal counts the `j`-th member
/// (`j = 0, 1, ...`) is lowered by `j · ε`, `ε = 1e-9 · c₁`.
pub fn from_citations(counts: &[f64]) -> Result<Continuized> {
    if counts.is_empty() {
        return Err(Error::Input("citation list is empty".into()));
    }
    if let Some(bad) = counts.iter().find(|c| !c.is_finite() || **c < 0.0) {
        return Err(Error::Input(format!("citation count {bad} is not a nonnegative number")));
    }
    let resorted = counts.windows(2).any(|w| w[1] > w[0]);
    let mut sorted: Vec<f64> = counts.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let positive: Vec<f64> = sorted.iter().copied().filter(|&c| c > 0.0).collect();
    let zeros_dropped = sorted.len() - positive.len();
    if positive.is_empty() {
        return Err(Error::Input("all citation counts are zero; the zero function is excluded".into()));
    }

    let eps = 1e-9 * positive[0];
    let mut knots = Vec::with_capacity(positive.len() + 1);
    let mut ties_broken = 0;
    let mut run = 0usize;
    for (i, &c) in positive.iter().enumerate() {
        run = if i > 0 && c == positive[i - 1] { run + 1 } else { 0 };
        if run > 0 {
            ties_broken += 1;
        }
        knots.push(Knot::new(i as f64, c - run as f64 * eps));
    }
    knots.push(Knot::new(positive.len() as f64, 0.0));
    let function = PiecewiseLinearFn::new(knots)?;
    Ok(Continuized { function, resorted, zeros_dropped, ties_broken })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_mapping() {
        let c = from_citations(&[5.0, 3.0, 1.0]).unwrap();
        let k: Vec<(f64, f64)> = c.function.knots().iter().map(|k| (k.x, k.y)).collect();
        assert_eq!(k, vec![(0.0, 5.0), (1.0, 3.0), (2.0, 1.0), (3.0, 0.0)]);
        assert_eq!(c.function.endpoint(), 3.0);
        assert!(!c.resorted);
    }

    #[test]
    fn ties_are_broken() {
        let c = from_citations(&[4.0, 4.0]).unwrap();
        let k = c.function.knots();
        assert_eq!(k[0].y, 4.0);
        assert_eq!(k[1].y, 4.0 - 4e-9);
        assert_eq!((k[2].x, k[2].y), (2.0, 0.0));
        assert_eq!(c.ties_broken, 1);
    }

    #[test]
    fn zero_input_rejected() {
        assert!(from_citations(&[0.0, 0.0]).is_err());
        assert!(from_citations(&[]).is_err());
        assert!(from_citations(&[1.0, -2.0]).is_err());
        assert!(from_citations(&[f64::NAN]).is_err());
    }

    #[test]
    fn unsorted_input_is_sorted() {
        let c = from_citations(&[1.0, 5.0, 0.0, 3.0]).unwrap();
        assert!(c.resorted);
        assert_eq!(c.zeros_dropped, 1);
        assert_eq!(c.function.endpoint(), 3.0);
        assert_eq!(c.function.head(), 5.0);
    }
}
