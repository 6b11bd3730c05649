//! Continuous strictly decreasing rank functions `Z: [0, T] -> R+`.

mod citations;
mod dominance;
mod parametric;
mod piecewise;
mod spec_file;

use std::fmt;

pub use citations::{from_citations, Continuized};
pub use dominance::{
    average_strictly_below, compare, cumulative_order, cumulative_order_with_grid, CumulativeOrder, CumulativeVerdict,
    DominanceVerdict, Witness,
};
pub use parametric::ParametricFn;
pub use piecewise::{Knot, PiecewiseLinearFn};
pub use spec_file::{parse_input, FunctionSpec, InputDoc};

use crate::tolerances::INVERSE_REL;
use crate::{Error, Result};

/// Admissible parameter set `[lo, hi]`. `hi` is `+∞` for bodies unbounded at
/// the origin; `+∞` itself is never evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaRange {
    pub lo: f64,
    pub hi: f64,
}

impl ThetaRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::Input(format!("invalid range [{lo}, {hi}]")));
        }
        Ok(ThetaRange { lo, hi })
    }

    pub fn is_unbounded(&self) -> bool {
        self.hi == f64::INFINITY
    }

    pub fn contains(&self, theta: f64) -> bool {
        theta >= self.lo && theta <= self.hi && theta.is_finite()
    }

    pub fn intersect(&self, other: &ThetaRange) -> Option<ThetaRange> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(ThetaRange { lo, hi })
    }
}

impl fmt::Display for ThetaRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unbounded() {
            write!(f, "[{}, inf)", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// `n` evenly spaced points from `lo` to `hi`, both endpoints exact.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect()
        }
    }
}

/// A member of `U_s`: piecewise-linear or a closed-form family.
#[derive(Debug, Clone, PartialEq)]
pub enum RankFunction {
    Piecewise(PiecewiseLinearFn),
    Parametric(ParametricFn),
}

impl From<PiecewiseLinearFn> for RankFunction {
    fn from(f: PiecewiseLinearFn) -> Self {
        RankFunction::Piecewise(f)
    }
}

impl From<ParametricFn> for RankFunction {
    fn from(f: ParametricFn) -> Self {
        RankFunction::Parametric(f)
    }
}

impl RankFunction {
    pub fn piecewise<K: Into<Knot>>(knots: impl IntoIterator<Item = K>) -> Result<Self> {
        PiecewiseLinearFn::new(knots).map(RankFunction::Piecewise)
    }

    pub fn linear(peak: f64, endpoint: f64) -> Result<Self> {
        ParametricFn::linear(peak, endpoint).map(RankFunction::Parametric)
    }

    pub fn zipf(beta: f64, endpoint: f64) -> Result<Self> {
        ParametricFn::zipf(beta, endpoint).map(RankFunction::Parametric)
    }

    pub fn power_complement(n: u32) -> Result<Self> {
        ParametricFn::power_complement(n).map(RankFunction::Parametric)
    }

    pub fn as_piecewise(&self) -> Option<&PiecewiseLinearFn> {
        match self {
            RankFunction::Piecewise(p) => Some(p),
            RankFunction::Parametric(_) => None,
        }
    }

    /// The domain endpoint `T`.
    pub fn endpoint(&self) -> f64 {
        match self {
            RankFunction::Piecewise(p) => p.endpoint(),
            RankFunction::Parametric(p) => p.endpoint(),
        }
    }

    /// `Z(0)`, which is `+∞` for the Zipf family.
    pub fn head(&self) -> f64 {
        match self {
            RankFunction::Piecewise(p) => p.head(),
            RankFunction::Parametric(p) => p.head(),
        }
    }

    /// `Z(T)`.
    pub fn tail(&self) -> f64 {
        match self {
            RankFunction::Piecewise(p) => p.tail(),
            RankFunction::Parametric(p) => p.tail(),
        }
    }

    pub fn is_singular_at_origin(&self) -> bool {
        matches!(self, RankFunction::Parametric(p) if p.is_singular_at_origin())
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        let t = self.endpoint();
        if !(0.0..=t).contains(&x) {
            return Err(Error::Domain { x, t });
        }
        Ok(())
    }

    /// Pointwise value `Z(x)`.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        match self {
            RankFunction::Piecewise(p) => Ok(p.eval(x)),
            RankFunction::Parametric(p) => p.eval(x),
        }
    }

    /// `Z⁻¹(θ)` for `θ` in [`Self::admissible_range`].
    ///
    /// Exact per segment for piecewise-linear bodies, closed form for the
    /// linear and Zipf families, bisection for the power complement.
    pub fn inverse(&self, theta: f64) -> Result<f64> {
        let range = self.admissible_range();
        if !range.contains(theta) {
            return Err(Error::OutOfRange { theta, lo: range.lo, hi: range.hi });
        }
        match self {
            RankFunction::Piecewise(p) => Ok(p.inv(theta)),
            RankFunction::Parametric(p) => {
                let x = p.inv(theta)?;
                Ok(x.clamp(0.0, p.endpoint()))
            }
        }
    }

    /// `I_Z(x) = ∫₀ˣ Z(s) ds`.
    pub fn cumulative(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        if x == 0.0 {
            return Ok(0.0);
        }
        Ok(match self {
            RankFunction::Piecewise(p) => p.integral_to(x),
            RankFunction::Parametric(p) => p.integral_to(x),
        })
    }

    /// `μ_Z(x) = I_Z(x) / x`, with `μ_Z(0) = Z(0)`.
    pub fn average(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        if x == 0.0 {
            return self.evaluate(0.0);
        }
        Ok(self.cumulative(x)? / x)
    }

    /// `Q_Z = [Z(T), Z(0)]`, open above for the Zipf family.
    pub fn admissible_range(&self) -> ThetaRange {
        ThetaRange { lo: self.tail(), hi: self.head() }
    }

    /// Round-trip tolerance `1e-12 · max(1, Z(0))` used for inversion checks.
    /// For unbounded bodies the scale is taken at `θ` itself.
    pub fn inverse_tolerance(&self, theta: f64) -> f64 {
        let scale = if self.head().is_finite() { self.head() } else { theta };
        INVERSE_REL * scale.max(1.0)
    }

    /// First abscissa of an `n`-point uniform grid that can be evaluated.
    /// For bodies singular at the origin this is the second grid point.
    pub(crate) fn grid_floor(&self, hi: f64, n: usize) -> f64 {
        if self.is_singular_at_origin() {
            hi / (n.max(2) - 1) as f64
        } else {
            0.0
        }
    }
}

impl fmt::Display for RankFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankFunction::Piecewise(p) => {
                write!(f, "piecewise-linear ({} knots, T = {})", p.knots().len(), p.endpoint())
            }
            RankFunction::Parametric(ParametricFn::Linear { peak, endpoint }) => {
                write!(f, "linear (S = {peak}, T = {endpoint})")
            }
            RankFunction::Parametric(ParametricFn::Zipf { beta, endpoint }) => {
                write!(f, "zipf (beta = {beta}, T = {endpoint})")
            }
            RankFunction::Parametric(ParametricFn::PowerComplement { n }) => {
                write!(f, "power complement (n = {n})")
            }
        }
    }
}
