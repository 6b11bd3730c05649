use crate::{Error, Result};

/// A sample point `(x, y)` of a rank function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Knot {
    pub x: f64,
    pub y: f64,
}

impl Knot {
    pub fn new(x: f64, y: f64) -> Self {
        Knot { x, y }
    }
}

impl From<(f64, f64)> for Knot {
    fn from((x, y): (f64, f64)) -> Self {
        Knot { x, y }
    }
}

/// Continuous, strictly decreasing piecewise-linear function on `[0, T]`.
///
/// Knots start at `x = 0`, end at `x = T`, are strictly increasing in `x` and
/// strictly decreasing in `y`. Strictness is checked exactly on the stored
/// values. The running integral at each knot is cached so that cumulative
/// evaluation is one binary search plus one trapezoid.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFn {
    knots: Vec<Knot>,
    prefix: Vec<f64>,
}

impl PiecewiseLinearFn {
    pub fn new<K: Into<Knot>>(knots: impl IntoIterator<Item = K>) -> Result<Self> {
        let knots: Vec<Knot> = knots.into_iter().map(Into::into).collect();
        if knots.len() < 2 {
            return Err(Error::InvalidFunction("need at least two knots".into()));
        }
        for k in &knots {
            if !k.x.is_finite() || !k.y.is_finite() {
                return Err(Error::InvalidFunction(format!("non-finite knot ({}, {})", k.x, k.y)));
            }
            if k.y < 0.0 {
                return Err(Error::InvalidFunction(format!("negative value {} at x = {}", k.y, k.x)));
            }
        }
        if knots[0].x != 0.0 {
            return Err(Error::InvalidFunction(format!("first knot at x = {}, expected 0", knots[0].x)));
        }
        for (i, w) in knots.windows(2).enumerate() {
            if w[1].x <= w[0].x {
                return Err(Error::InvalidFunction(format!(
                    "knot abscissae not strictly increasing at index {}",
                    i + 1
                )));
            }
            if w[1].y >= w[0].y {
                return Err(Error::InvalidFunction(format!(
                    "not strictly decreasing between x = {} and x = {}",
                    w[0].x, w[1].x
                )));
            }
        }
        let mut prefix = Vec::with_capacity(knots.len());
        let mut acc = 0.0;
        prefix.push(acc);
        for w in knots.windows(2) {
            acc += 0.5 * (w[1].x - w[0].x) * (w[0].y + w[1].y);
            prefix.push(acc);
        }
        Ok(PiecewiseLinearFn { knots, prefix })
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn endpoint(&self) -> f64 {
        self.knots[self.knots.len() - 1].x
    }

    pub fn head(&self) -> f64 {
        self.knots[0].y
    }

    pub fn tail(&self) -> f64 {
        self.knots[self.knots.len() - 1].y
    }

    /// Index `i` of the segment `[x_i, x_{i+1}]` containing `x`.
    fn segment_of(&self, x: f64) -> usize {
        let p = self.knots.partition_point(|k| k.x <= x);
        p.saturating_sub(1).min(self.knots.len() - 2)
    }

    pub(crate) fn eval(&self, x: f64) -> f64 {
        let i = self.segment_of(x);
        let (a, b) = (self.knots[i], self.knots[i + 1]);
        if x == a.x {
            return a.y;
        }
        if x == b.x {
            return b.y;
        }
        a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)
    }

    /// Exact per-segment inverse; `theta` must lie in `[tail, head]`.
    pub(crate) fn inv(&self, theta: f64) -> f64 {
        // y is decreasing, so the knots with y >= theta form a prefix.
        let p = self.knots.partition_point(|k| k.y >= theta);
        if p == 0 {
            return 0.0;
        }
        let a = self.knots[p - 1];
        if a.y == theta || p == self.knots.len() {
            return a.x;
        }
        let b = self.knots[p];
        a.x + (a.y - theta) * (b.x - a.x) / (a.y - b.y)
    }

    pub(crate) fn integral_to(&self, x: f64) -> f64 {
        let i = self.segment_of(x);
        let a = self.knots[i];
        if x == a.x {
            return self.prefix[i];
        }
        if x == self.knots[i + 1].x {
            return self.prefix[i + 1];
        }
        self.prefix[i] + 0.5 * (x - a.x) * (a.y + self.eval(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> PiecewiseLinearFn {
        PiecewiseLinearFn::new([(0.0, 10.0), (10.0, 0.0)]).unwrap()
    }

    #[test]
    fn rejects_bad_knots() {
        assert!(PiecewiseLinearFn::new([(0.0, 1.0)]).is_err());
        assert!(PiecewiseLinearFn::new([(0.5, 1.0), (1.0, 0.0)]).is_err());
        assert!(PiecewiseLinearFn::new([(0.0, 1.0), (1.0, 1.0)]).is_err());
        assert!(PiecewiseLinearFn::new([(0.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(PiecewiseLinearFn::new([(0.0, 1.0), (0.0, 0.5), (1.0, 0.0)]).is_err());
        assert!(PiecewiseLinearFn::new([(0.0, 1.0), (1.0, -0.1)]).is_err());
        assert!(PiecewiseLinearFn::new([(0.0, f64::NAN), (1.0, 0.0)]).is_err());
    }

    #[test]
    fn exact_at_knots() {
        let f = PiecewiseLinearFn::new([(0.0, 3.0), (1.0, 1.0), (2.0, 0.2)]).unwrap();
        assert_eq!(f.eval(1.0), 1.0);
        assert_eq!(f.inv(1.0), 1.0);
        assert_eq!(f.inv(3.0), 0.0);
        assert_eq!(f.inv(0.2), 2.0);
        assert_eq!(f.integral_to(1.0), 2.0);
    }

    #[test]
    fn interpolates() {
        let f = line();
        assert_eq!(f.eval(3.0), 7.0);
        assert_eq!(f.inv(3.0), 7.0);
        assert_eq!(f.integral_to(5.0), 37.5);
        assert_eq!(f.integral_to(10.0), 50.0);
    }
}
