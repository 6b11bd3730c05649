//! Pointwise and cumulative ordering between two rank functions.
//!
//! Grid checks are sound for refutation and heuristic for confirmation.
//! When both functions are piecewise-linear the merged knot set is added to
//! the sample points, which makes the pointwise checks exact: the difference
//! of two such functions is linear between merged knots.

use serde::Serialize;

use super::{linspace, RankFunction};
use crate::tolerances::{DEFAULT_GRID, PREFIX_EQUAL_TOL};
use crate::{Error, Result};

/// A location together with the value observed there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub x: f64,
    pub value: f64,
}

/// Result of [`compare`]: relations of `f` against `g`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceVerdict {
    pub prefix: f64,
    /// `f ≥ g` on `[0, T]`.
    pub geq_all: bool,
    /// Minimum of `f − g` over `[0, T]`.
    pub min_gap_all: Witness,
    /// `f > g` on `[0, a]`.
    pub strict_on_prefix: bool,
    /// Minimum of `f − g` over `[0, a]`.
    pub min_gap_prefix: Witness,
    /// `f = g` on `[0, a]` up to [`PREFIX_EQUAL_TOL`].
    pub equal_on_prefix: bool,
    /// Maximum of `|f − g|` over `[0, a]`.
    pub max_deviation_prefix: Witness,
}

fn same_domain(f: &RankFunction, g: &RankFunction) -> Result<f64> {
    let (tf, tg) = (f.endpoint(), g.endpoint());
    if tf != tg {
        return Err(Error::MismatchedDomains(tf, tg));
    }
    Ok(tf)
}

fn merged_knots(f: &RankFunction, g: &RankFunction) -> Vec<f64> {
    let mut xs: Vec<f64> =
        [f, g].iter().filter_map(|h| h.as_piecewise()).flat_map(|p| p.knots().iter().map(|k| k.x)).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// Compare `f` against `g` on a uniform grid of `grid_n` points over `[0, a]`
/// and over `[0, T]`, plus all knots of piecewise-linear operands.
pub fn compare(f: &RankFunction, g: &RankFunction, a: f64, grid_n: usize) -> Result<DominanceVerdict> {
    let t = same_domain(f, g)?;
    if grid_n < 2 {
        return Err(Error::Input("grid_n must be at least 2".into()));
    }
    if !(a > 0.0 && a <= t) {
        return Err(Error::Input(format!("prefix endpoint {a} outside (0, {t}]")));
    }
    let floor = f.grid_floor(t, grid_n).max(g.grid_floor(t, grid_n));
    let mut xs = linspace(floor, t, grid_n);
    xs.extend(linspace(floor, a, grid_n));
    xs.extend(merged_knots(f, g).into_iter().filter(|&x| x >= floor));
    xs.push(a);
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut min_all = Witness { x: f64::NAN, value: f64::INFINITY };
    let mut min_prefix = min_all;
    let mut max_dev = Witness { x: f64::NAN, value: f64::NEG_INFINITY };
    for &x in &xs {
        let d = f.evaluate(x)? - g.evaluate(x)?;
        if d < min_all.value {
            min_all = Witness { x, value: d };
        }
        if x <= a {
            if d < min_prefix.value {
                min_prefix = Witness { x, value: d };
            }
            if d.abs() > max_dev.value {
                max_dev = Witness { x, value: d.abs() };
            }
        }
    }
    Ok(DominanceVerdict {
        prefix: a,
        geq_all: min_all.value >= 0.0,
        min_gap_all: min_all,
        strict_on_prefix: min_prefix.value > 0.0,
        min_gap_prefix: min_prefix,
        equal_on_prefix: max_dev.value <= PREFIX_EQUAL_TOL,
        max_deviation_prefix: max_dev,
    })
}

/// Ordering of `f` relative to `g` under `Z ≺ Y ⟺ I_Z ≤ I_Y on [0, T]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CumulativeOrder {
    Equal,
    /// `f ≺ g`, `f ≠ g` in cumulative terms.
    Precedes,
    /// `g ≺ f`.
    Succeeds,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulativeVerdict {
    pub order: CumulativeOrder,
    /// Minimum of `I_g − I_f`.
    pub min_gap: Witness,
    /// Maximum of `I_g − I_f`.
    pub max_gap: Witness,
    /// True when the verdict came from exact piecewise analysis.
    pub exact: bool,
}

impl CumulativeVerdict {
    pub fn precedes(&self) -> bool {
        self.order == CumulativeOrder::Precedes
    }
}

/// Cumulative ordering of `f` against `g`, exact for piecewise-linear pairs,
/// sampled on [`DEFAULT_GRID`] points otherwise.
pub fn cumulative_order(f: &RankFunction, g: &RankFunction) -> Result<CumulativeVerdict> {
    cumulative_order_with_grid(f, g, DEFAULT_GRID)
}

pub fn cumulative_order_with_grid(f: &RankFunction, g: &RankFunction, grid_n: usize) -> Result<CumulativeVerdict> {
    let t = same_domain(f, g)?;
    let candidates = match (f.as_piecewise(), g.as_piecewise()) {
        (Some(_), Some(_)) => piecewise_candidates(f, g)?,
        _ => linspace(0.0, t, grid_n.max(2))
            .into_iter()
            .map(|x| Ok(Witness { x, value: g.cumulative(x)? - f.cumulative(x)? }))
            .collect::<Result<Vec<_>>>()?,
    };
    let exact = f.as_piecewise().is_some() && g.as_piecewise().is_some();

    let mut min_gap = Witness { x: 0.0, value: f64::INFINITY };
    let mut max_gap = Witness { x: 0.0, value: f64::NEG_INFINITY };
    for w in candidates {
        if w.value < min_gap.value {
            min_gap = w;
        }
        if w.value > max_gap.value {
            max_gap = w;
        }
    }
    let scale = 1f64.max(f.cumulative(t)?.abs()).max(g.cumulative(t)?.abs());
    let tol = 1e-12 * scale;
    let order = if min_gap.value >= -tol && max_gap.value <= tol {
        CumulativeOrder::Equal
    } else if min_gap.value >= -tol {
        CumulativeOrder::Precedes
    } else if max_gap.value <= tol {
        CumulativeOrder::Succeeds
    } else {
        CumulativeOrder::Incomparable
    };
    Ok(CumulativeVerdict { order, min_gap, max_gap, exact })
}

/// Whether `μ_lower < μ_upper` on `[0, T)`.
///
/// At `x = 0` this compares `Z(0)`; on `(0, T)` it is equivalent to
/// `I_lower < I_upper`. Exact for piecewise-linear pairs (the cumulative gap
/// is checked at every knot and interior vertex), sampled on `grid_n` points
/// otherwise.
pub fn average_strictly_below(lower: &RankFunction, upper: &RankFunction, grid_n: usize) -> Result<bool> {
    let t = same_domain(lower, upper)?;
    if !lower.is_singular_at_origin() && !upper.is_singular_at_origin() && upper.head() <= lower.head() {
        return Ok(false);
    }
    let candidates = match (lower.as_piecewise(), upper.as_piecewise()) {
        (Some(_), Some(_)) => piecewise_candidates(lower, upper)?,
        _ => linspace(0.0, t, grid_n.max(3))
            .into_iter()
            .map(|x| Ok(Witness { x, value: upper.cumulative(x)? - lower.cumulative(x)? }))
            .collect::<Result<Vec<_>>>()?,
    };
    for w in candidates {
        if w.x > 0.0 && w.x < t && w.value <= 0.0 {
            return Ok(false);
        }
        if w.x == t && w.value < 0.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extremal candidates of `D = I_g − I_f` for two piecewise-linear functions.
/// On each merged segment `D` is quadratic; its extremes sit at the segment
/// ends or at the interior vertex where `g − f` changes sign.
fn piecewise_candidates(f: &RankFunction, g: &RankFunction) -> Result<Vec<Witness>> {
    let xs = merged_knots(f, g);
    let mut out = Vec::with_capacity(2 * xs.len());
    let mut prev: Option<(f64, f64, f64)> = None;
    for &x in &xs {
        let big_d = g.cumulative(x)? - f.cumulative(x)?;
        let d = g.evaluate(x)? - f.evaluate(x)?;
        if let Some((u, big_du, du)) = prev {
            if (du > 0.0 && d < 0.0) || (du < 0.0 && d > 0.0) {
                let t_star = du * (x - u) / (du - d);
                out.push(Witness { x: u + t_star, value: big_du + 0.5 * du * t_star });
            }
        }
        out.push(Witness { x, value: big_d });
        prev = Some((x, big_d, d));
    }
    Ok(out)
}
