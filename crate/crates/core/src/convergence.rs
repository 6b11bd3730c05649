//! Uniform-convergence studies for sequences of rank functions.
//!
//! Sup norms are taken over uniform grids and are therefore lower bounds of
//! the true suprema. For bodies singular at the origin the grid starts at its
//! second point, and unbounded `θ` ranges are capped at the value of each
//! function there.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bundles::e_theta;
use crate::function_space::{linspace, RankFunction, ThetaRange};
use crate::tolerances::DEFAULT_GRID;
use crate::{Error, Result};

/// Threshold below which a column's final value counts as converged.
pub const CONVERGED_BELOW: f64 = 1e-3;

/// Maximum relative change allowed when the grids are doubled.
pub const REFINEMENT_REL: f64 = 0.1;

fn same_domain(f: &RankFunction, g: &RankFunction, grid_n: usize) -> Result<f64> {
    let (tf, tg) = (f.endpoint(), g.endpoint());
    if tf != tg {
        return Err(Error::MismatchedDomains(tf, tg));
    }
    if grid_n < 2 {
        return Err(Error::Input(format!("grid needs at least 2 points, got {grid_n}")));
    }
    Ok(tf)
}

fn abscissa_grid(f: &RankFunction, g: &RankFunction, t: f64, n: usize) -> Vec<f64> {
    let floor = f.grid_floor(t, n).max(g.grid_floor(t, n));
    linspace(floor, t, n)
}

/// `max |f − g|` over a uniform grid of `grid_n` points on `[0, T]`.
pub fn sup_distance(f: &RankFunction, g: &RankFunction, grid_n: usize) -> Result<f64> {
    let t = same_domain(f, g, grid_n)?;
    abscissa_grid(f, g, t, grid_n)
        .into_iter()
        .try_fold(0.0_f64, |acc, x| Ok(acc.max((f.evaluate(x)? - g.evaluate(x)?).abs())))
}

/// `θ` grid over `Q_f ∩ Q_g`, with unbounded ranges capped at the functions'
/// values on the first evaluable abscissa.
fn theta_grid(f: &RankFunction, g: &RankFunction, grid_n: usize) -> Result<Vec<f64>> {
    let t = same_domain(f, g, grid_n)?;
    let cap = |h: &RankFunction| -> Result<ThetaRange> {
        let r = h.admissible_range();
        if r.is_unbounded() {
            let hi = h.evaluate(h.grid_floor(t, grid_n))?;
            Ok(ThetaRange { lo: r.lo, hi })
        } else {
            Ok(r)
        }
    };
    let common = cap(f)?.intersect(&cap(g)?).ok_or_else(|| {
        Error::Input(format!("admissible ranges {} and {} do not overlap", f.admissible_range(), g.admissible_range()))
    })?;
    Ok(linspace(common.lo, common.hi, grid_n))
}

/// `max |f⁻¹(θ) − g⁻¹(θ)|` over a `θ` grid on the common admissible range.
pub fn inverse_sup_distance(f: &RankFunction, g: &RankFunction, grid_n: usize) -> Result<f64> {
    theta_grid(f, g, grid_n)?
        .into_iter()
        .try_fold(0.0_f64, |acc, th| Ok(acc.max((f.inverse(th)? - g.inverse(th)?).abs())))
}

/// `max |e_θ(f) − e_θ(g)|` over a `θ` grid on the common admissible range.
pub fn e_sup_distance(f: &RankFunction, g: &RankFunction, theta_grid_n: usize) -> Result<f64> {
    theta_grid(f, g, theta_grid_n)?
        .into_iter()
        .try_fold(0.0_f64, |acc, th| Ok(acc.max((e_theta(f, th)? - e_theta(g, th)?).abs())))
}

/// Example sequence `Z_n(x) = 1 − xⁿ` on `[0, 1]`.
pub fn power_sequence_member(n: u32) -> Result<RankFunction> {
    if n < 1 {
        return Err(Error::Input("power complement needs n >= 1".into()));
    }
    RankFunction::power_complement(n)
}

fn shifted_base() -> Result<RankFunction> {
    RankFunction::piecewise([(0.0, 2.0), (0.5, 0.8), (1.0, 0.0)])
}

/// Built-in sequence families.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `Z_n = (1 + 1/n)(1 − x)` on `[0, 1]`, limit `1 − x`.
    ScaledLinear,
    /// `Z_n = Z + 1/n` for a fixed piecewise-linear `Z` on `[0, 1]`.
    Shifted,
    /// `Z_n(x) = x^(−β_n)` on `(0, 1]` with `β_n = β + (1 − β)/(n + 1)`.
    Zipf { beta: f64 },
    /// `Z_n = 1 − xⁿ`, whose pointwise limit is discontinuous.
    Power,
    /// `Z_n = Z` for every `n`.
    Constant(RankFunction),
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::ScaledLinear => "linear".into(),
            Family::Shifted => "shifted".into(),
            Family::Zipf { beta } => format!("zipf(beta={beta})"),
            Family::Power => "power".into(),
            Family::Constant(_) => "constant".into(),
        }
    }

    pub fn member(&self, n: u32) -> Result<RankFunction> {
        if n < 1 {
            return Err(Error::Input("sequence index must be >= 1".into()));
        }
        let inv = 1.0 / n as f64;
        match self {
            Family::ScaledLinear => RankFunction::linear(1.0 + inv, 1.0),
            Family::Shifted => {
                let base = shifted_base()?;
                let knots = base.as_piecewise().expect("piecewise base").knots().iter();
                RankFunction::piecewise(knots.map(|k| (k.x, k.y + inv)))
            }
            Family::Zipf { beta } => RankFunction::zipf(beta + (1.0 - beta) / (n as f64 + 1.0), 1.0),
            Family::Power => power_sequence_member(n),
            Family::Constant(f) => Ok(f.clone()),
        }
    }

    /// The uniform limit, when it lies in the function space.
    pub fn limit(&self) -> Result<Option<RankFunction>> {
        Ok(match self {
            Family::ScaledLinear => Some(RankFunction::linear(1.0, 1.0)?),
            Family::Shifted => Some(shifted_base()?),
            Family::Zipf { beta } => Some(RankFunction::zipf(*beta, 1.0)?),
            Family::Power => None,
            Family::Constant(f) => Some(f.clone()),
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `linear`, `shifted`, `power`, `zipf` (β = 0.5) and `zipf:β`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" => Ok(Family::ScaledLinear),
            "shifted" => Ok(Family::Shifted),
            "power" => Ok(Family::Power),
            "zipf" => Ok(Family::Zipf { beta: 0.5 }),
            other => match other.strip_prefix("zipf:").map(str::parse::<f64>) {
                Some(Ok(beta)) if beta > 0.0 && beta < 1.0 => Ok(Family::Zipf { beta }),
                _ => Err(Error::Input(format!("unknown family '{s}' (linear, shifted, zipf[:beta], power)"))),
            },
        }
    }
}

/// A family evaluated at strictly increasing indices.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSequence {
    pub family: Family,
    pub n_values: Vec<u32>,
}

impl FunctionSequence {
    pub fn new(family: Family, n_values: Vec<u32>) -> Result<Self> {
        if n_values.is_empty() {
            return Err(Error::Input("empty n list".into()));
        }
        if n_values[0] < 1 || n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input("n values must be >= 1 and strictly increasing".into()));
        }
        Ok(FunctionSequence { family, n_values })
    }
}

/// Grid sizes for a study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StudyGrids {
    pub function: usize,
    pub theta: usize,
}

impl Default for StudyGrids {
    fn default() -> Self {
        StudyGrids { function: DEFAULT_GRID, theta: DEFAULT_GRID }
    }
}

impl StudyGrids {
    fn doubled(&self) -> StudyGrids {
        StudyGrids { function: 2 * self.function - 1, theta: 2 * self.theta - 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u32,
    pub sup_fn: Option<f64>,
    pub sup_inv: Option<f64>,
    pub sup_e: Option<f64>,
}

/// Trend summary of one distance column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColumnVerdict {
    pub final_value: f64,
    /// Weakly decreasing over the last half of the rows.
    pub decreasing: bool,
    /// Final value below [`CONVERGED_BELOW`] and `decreasing`.
    pub converged: bool,
    /// `log(d_i / d_{i+1}) / log(n_{i+1} / n_i)` for the last two rows.
    pub empirical_order: Option<f64>,
    /// Doubling both grids moved the final value by less than 10%.
    pub refinement_stable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub family: String,
    pub grids: StudyGrids,
    pub rows: Vec<ConvergenceRow>,
    /// `sup_n Z_n(0)` over the supplied indices; `None` when unbounded.
    pub m_bound: Option<f64>,
    pub sup_fn: Option<ColumnVerdict>,
    pub sup_inv: Option<ColumnVerdict>,
    pub sup_e: Option<ColumnVerdict>,
    /// Set only for sequences without a limit: whether the pointwise limit
    /// appears discontinuous.
    pub pointwise_discontinuity: Option<bool>,
}

fn row(n: u32, zn: &RankFunction, limit: &RankFunction, grids: StudyGrids) -> Result<ConvergenceRow> {
    Ok(ConvergenceRow {
        n,
        sup_fn: Some(sup_distance(zn, limit, grids.function)?),
        sup_inv: Some(inverse_sup_distance(zn, limit, grids.theta)?),
        sup_e: Some(e_sup_distance(zn, limit, grids.theta)?),
    })
}

fn verdict(
    rows: &[ConvergenceRow],
    refined: &ConvergenceRow,
    pick: fn(&ConvergenceRow) -> Option<f64>,
) -> Option<ColumnVerdict> {
    let values: Vec<(u32, f64)> = rows.iter().map(|r| pick(r).map(|v| (r.n, v))).collect::<Option<_>>()?;
    let &(_, final_value) = values.last()?;
    let tail = &values[values.len() / 2..];
    let decreasing = tail.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-9) + f64::MIN_POSITIVE);
    let empirical_order = match values.as_slice() {
        [.., (n0, d0), (n1, d1)] if *d0 > 0.0 && *d1 > 0.0 => Some((d0 / d1).ln() / (*n1 as f64 / *n0 as f64).ln()),
        _ => None,
    };
    let fine = pick(refined)?;
    let refinement_stable = (fine - final_value).abs() <= REFINEMENT_REL * final_value.abs().max(fine.abs())
        || (fine == 0.0 && final_value == 0.0);
    Some(ColumnVerdict {
        final_value,
        decreasing,
        converged: decreasing && final_value < CONVERGED_BELOW,
        empirical_order,
        refinement_stable,
    })
}

/// Largest jump between adjacent grid values, a discrete modulus of
/// continuity.
fn max_jump(f: &RankFunction, grid_n: usize) -> Result<f64> {
    let t = f.endpoint();
    let xs = linspace(f.grid_floor(t, grid_n), t, grid_n);
    let ys = xs.iter().map(|&x| f.evaluate(x)).collect::<Result<Vec<_>>>()?;
    Ok(ys.windows(2).map(|w| (w[0] - w[1]).abs()).fold(0.0, f64::max))
}

/// Per-`n` sup distances against the family's limit, with trend verdicts.
///
/// Without a limit the distance columns are absent; instead the discrete
/// modulus of continuity of `Z_n` is tracked. If it does not shrink with `n`
/// and ends above a tenth of the range of `Z_n`, the pointwise limit is
/// flagged as discontinuous.
pub fn run_study(seq: &FunctionSequence, grids: StudyGrids) -> Result<ConvergenceReport> {
    let members = seq.n_values.iter().map(|&n| seq.family.member(n)).collect::<Result<Vec<_>>>()?;
    let heads: Vec<f64> = members.iter().map(RankFunction::head).collect();
    let m_bound = heads.iter().all(|h| h.is_finite()).then(|| heads.iter().copied().fold(0.0, f64::max));
    let mut report = ConvergenceReport {
        family: seq.family.name(),
        grids,
        rows: Vec::new(),
        m_bound,
        sup_fn: None,
        sup_inv: None,
        sup_e: None,
        pointwise_discontinuity: None,
    };
    match seq.family.limit()? {
        Some(limit) => {
            for (&n, zn) in seq.n_values.iter().zip(&members) {
                report.rows.push(row(n, zn, &limit, grids)?);
            }
            let last = members.last().expect("non-empty sequence");
            let refined = row(*seq.n_values.last().unwrap(), last, &limit, grids.doubled())?;
            report.sup_fn = verdict(&report.rows, &refined, |r| r.sup_fn);
            report.sup_inv = verdict(&report.rows, &refined, |r| r.sup_inv);
            report.sup_e = verdict(&report.rows, &refined, |r| r.sup_e);
        }
        None => {
            report.rows =
                seq.n_values.iter().map(|&n| ConvergenceRow { n, sup_fn: None, sup_inv: None, sup_e: None }).collect();
            let jumps = members.iter().map(|f| max_jump(f, grids.function)).collect::<Result<Vec<_>>>()?;
            let last = members.last().expect("non-empty sequence");
            let range = last.head() - last.tail();
            let growing = jumps.windows(2).all(|w| w[1] >= w[0]);
            let final_jump = *jumps.last().unwrap();
            report.pointwise_discontinuity = Some(growing && final_jump > 0.1 * range);
        }
    }
    Ok(report)
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

impl ConvergenceReport {
    /// CSV with header `n,sup_fn,sup_inv,sup_e`; absent columns are `NA`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,sup_fn,sup_inv,sup_e\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.n, cell(r.sup_fn), cell(r.sup_inv), cell(r.sup_e)));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// True when every present column converged.
    pub fn converged(&self) -> bool {
        [self.sup_fn, self.sup_inv, self.sup_e].iter().flatten().all(|v| v.converged)
    }
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {} (grids: x {}, theta {})", self.family, self.grids.function, self.grids.theta)?;
        writeln!(f, "{:>10} {:>14} {:>14} {:>14}", "n", "sup_fn", "sup_inv", "sup_e")?;
        let fmt_cell = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| format!("{x:.6e}"));
        for r in &self.rows {
            writeln!(
                f,
                "{:>10} {:>14} {:>14} {:>14}",
                r.n,
                fmt_cell(r.sup_fn),
                fmt_cell(r.sup_inv),
                fmt_cell(r.sup_e)
            )?;
        }
        match self.m_bound {
            Some(m) => writeln!(f, "M = sup Z_n(0) = {m}")?,
            None => writeln!(f, "M = sup Z_n(0) is unbounded")?,
        }
        for (name, v) in [("sup_fn", self.sup_fn), ("sup_inv", self.sup_inv), ("sup_e", self.sup_e)] {
            if let Some(v) = v {
                writeln!(
                    f,
                    "{name}: final {:.6e}, decreasing {}, converged {}, grid-stable {}",
                    v.final_value, v.decreasing, v.converged, v.refinement_stable
                )?;
            }
        }
        if let Some(d) = self.pointwise_discontinuity {
            writeln!(f, "no limit in the function space; pointwise limit discontinuous: {d}")?;
        }
        Ok(())
    }
}
