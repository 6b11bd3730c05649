//! Impact bundles `(m, ψ)` evaluated at admissible `θ`.
//!
//! | bundle | `m_Z(θ)`                          | `ψ_Z(x)`   | `Q_Z`              |
//! |--------|-----------------------------------|------------|--------------------|
//! | E      | `∫₀^{Z⁻¹(θ)} (Z(s) − θ) ds`       | `Z(x)`     | `[Z(T), Z(0)]`     |
//! | H      | `h` with `Z(h) = θ h`             | `Z(x)/x`   | `[Z(T)/T, +∞)`     |
//! | MU     | `(1/θ) ∫₀^θ Z(s) ds`, `Z(0)` at 0 | `x`        | `[0, T]`           |
//! | I      | `∫₀^θ Z(s) ds`                    | `x`        | `[0, T]`           |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::function_space::{RankFunction, ThetaRange};
use crate::roots::bisect_decreasing;
use crate::tolerances::RADICAND_SLACK;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BundleId {
    E,
    H,
    Mu,
    I,
}

impl BundleId {
    pub const ALL: [BundleId; 4] = [BundleId::E, BundleId::H, BundleId::Mu, BundleId::I];
}

impl fmt::Display for BundleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BundleId::E => "e",
            BundleId::H => "h",
            BundleId::Mu => "mu",
            BundleId::I => "i",
        })
    }
}

impl FromStr for BundleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e" => Ok(BundleId::E),
            "h" => Ok(BundleId::H),
            "mu" => Ok(BundleId::Mu),
            "i" => Ok(BundleId::I),
            other => Err(Error::Input(format!("unknown bundle {other:?}; expected e, h, mu or i"))),
        }
    }
}

/// A two-argument measure `m_Z(θ)` with its parameter map `ψ_Z`.
///
/// Implemented by [`BundleId`] and by the rejected alternatives in
/// [`crate::axioms`], so the axiom harness can run on either.
pub trait Bundle {
    fn name(&self) -> String;

    fn admissible(&self, f: &RankFunction) -> ThetaRange;

    /// `ψ_Z(x)`; may be `+∞` (the H-bundle at `x = 0`).
    fn psi(&self, f: &RankFunction, x: f64) -> Result<f64>;

    fn value(&self, f: &RankFunction, theta: f64) -> Result<f64>;

    /// The abscissa `x` with `ψ_Z(x) = θ`: `m_Z(θ)` depends on `Z` only
    /// through its restriction to `[0, x]`.
    fn prefix_of(&self, f: &RankFunction, theta: f64) -> Result<f64>;

    /// `θ` lies on a boundary where strict monotonicity is not claimed.
    fn strict_boundary(&self, _f: &RankFunction, _theta: f64) -> bool {
        false
    }
}

impl Bundle for BundleId {
    fn name(&self) -> String {
        self.to_string()
    }

    fn admissible(&self, f: &RankFunction) -> ThetaRange {
        match self {
            BundleId::E => f.admissible_range(),
            BundleId::H => ThetaRange { lo: f.tail() / f.endpoint(), hi: f64::INFINITY },
            BundleId::Mu | BundleId::I => ThetaRange { lo: 0.0, hi: f.endpoint() },
        }
    }

    fn psi(&self, f: &RankFunction, x: f64) -> Result<f64> {
        match self {
            BundleId::E => f.evaluate(x),
            BundleId::H => {
                if x == 0.0 {
                    return Ok(f64::INFINITY);
                }
                Ok(f.evaluate(x)? / x)
            }
            BundleId::Mu | BundleId::I => {
                f.evaluate(x)?;
                Ok(x)
            }
        }
    }

    fn value(&self, f: &RankFunction, theta: f64) -> Result<f64> {
        match self {
            BundleId::E => e_theta(f, theta),
            BundleId::H => h_theta(f, theta),
            BundleId::Mu => mu_bundle(f, theta),
            BundleId::I => i_bundle(f, theta),
        }
    }

    fn prefix_of(&self, f: &RankFunction, theta: f64) -> Result<f64> {
        match self {
            BundleId::E => f.inverse(theta),
            BundleId::H => h_theta(f, theta),
            BundleId::Mu | BundleId::I => {
                f.evaluate(theta)?;
                Ok(theta)
            }
        }
    }

    fn strict_boundary(&self, f: &RankFunction, theta: f64) -> bool {
        *self == BundleId::E && is_lower_boundary(f, theta)
    }
}

/// `m_Z(θ)` tagged with its bundle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BundleValue {
    pub theta: f64,
    pub value: f64,
    pub bundle: BundleId,
}

pub fn evaluate(bundle: BundleId, f: &RankFunction, theta: f64) -> Result<BundleValue> {
    Ok(BundleValue { theta, value: bundle.value(f, theta)?, bundle })
}

/// The generalized e-index `e_θ(Z) = I_Z(Z⁻¹(θ)) − θ · Z⁻¹(θ)`.
pub fn e_theta(f: &RankFunction, theta: f64) -> Result<f64> {
    let x = f.inverse(theta)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let v = f.cumulative(x)? - theta * x;
    Ok(v.max(0.0))
}

/// True when `θ = Z(T)`, the boundary excluded by the strong-impact result.
pub fn is_lower_boundary(f: &RankFunction, theta: f64) -> bool {
    theta == f.tail()
}

/// Generalized h-index: the unique `h` in `[0, T]` with `Z(h) = θ h`.
pub fn h_theta(f: &RankFunction, theta: f64) -> Result<f64> {
    let t = f.endpoint();
    let lo = f.tail() / t;
    if theta.is_nan() || theta < lo || !theta.is_finite() {
        return Err(Error::OutOfRange { theta, lo, hi: f64::INFINITY });
    }
    if f.tail() - theta * t == 0.0 {
        return Ok(t);
    }
    bisect_decreasing(|x| Ok(f.evaluate(x)? - theta * x), 0.0, t, 0.0)
}

/// `μ_Z(θ)` with `θ` read as an abscissa.
pub fn mu_bundle(f: &RankFunction, theta: f64) -> Result<f64> {
    f.average(theta)
}

/// `I_Z(θ)` with `θ` read as an abscissa.
pub fn i_bundle(f: &RankFunction, theta: f64) -> Result<f64> {
    f.cumulative(theta)
}

/// Classical h-index `h = h_1(Z)`, i.e. `Z(h) = h`.
pub fn classical_h(f: &RankFunction) -> Result<f64> {
    h_theta(f, 1.0)
}

/// `R² = ∫₀^h Z(s) ds`.
pub fn r_index_squared(f: &RankFunction) -> Result<f64> {
    f.cumulative(classical_h(f)?)
}

/// Zhang's excess-citation area `R² − h²` (the square of Zhang's e-index).
pub fn zhang_e_squared(f: &RankFunction) -> Result<f64> {
    let h = classical_h(f)?;
    let r2 = f.cumulative(h)?;
    let radicand = r2 - h * h;
    if radicand < -RADICAND_SLACK * r2.max(1.0) {
        return Err(Error::Consistency(format!("negative Zhang radicand {radicand} (R² = {r2}, h = {h})")));
    }
    Ok(radicand.max(0.0))
}

/// Zhang's e-index `√(R² − h²)`.
pub fn zhang_e(f: &RankFunction) -> Result<f64> {
    zhang_e_squared(f).map(f64::sqrt)
}

/// One row of a [`SweepTable`]; `None` marks an inadmissible cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub theta: f64,
    pub e: Option<f64>,
    pub h: Option<f64>,
    pub mu: Option<f64>,
    pub i: Option<f64>,
}

impl SweepRow {
    fn is_empty(&self) -> bool {
        self.e.is_none() && self.h.is_none() && self.mu.is_none() && self.i.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

const SWEEP_HEADER: [&str; 5] = ["theta", "e", "h", "mu", "i"];

fn cell(bundle: BundleId, f: &RankFunction, theta: f64) -> Option<f64> {
    if !bundle.admissible(f).contains(theta) {
        return None;
    }
    bundle.value(f, theta).ok()
}

/// All four bundles at one `θ`, `None` where inadmissible.
pub fn sweep_row(f: &RankFunction, theta: f64) -> SweepRow {
    SweepRow {
        theta,
        e: cell(BundleId::E, f, theta),
        h: cell(BundleId::H, f, theta),
        mu: cell(BundleId::Mu, f, theta),
        i: cell(BundleId::I, f, theta),
    }
}

/// Evaluate all four bundles on a θ list. The list is sorted and
/// de-duplicated; rows where every bundle is inadmissible are dropped.
pub fn sweep(f: &RankFunction, thetas: &[f64]) -> SweepTable {
    let mut ts: Vec<f64> = thetas.iter().copied().filter(|t| !t.is_nan()).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let rows = ts.into_iter().map(|theta| sweep_row(f, theta)).filter(|r| !r.is_empty()).collect();
    SweepTable { rows }
}

fn fmt_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

fn parse_cell(s: &str, line: usize) -> Result<Option<f64>> {
    if s == "NA" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| Error::Parse { line, message: format!("bad numeric cell {s:?}") })
}

impl SweepTable {
    /// CSV with header `theta,e,h,mu,i` and `NA` for inadmissible cells.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(SWEEP_HEADER).expect("in-memory write");
        for r in &self.rows {
            w.write_record([r.theta.to_string(), fmt_cell(r.e), fmt_cell(r.h), fmt_cell(r.mu), fmt_cell(r.i)])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let header = rdr.headers().map_err(|e| Error::Parse { line: 1, message: e.to_string() })?.clone();
        if header.iter().ne(SWEEP_HEADER) {
            return Err(Error::Parse { line: 1, message: format!("unexpected header {header:?}") });
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| Error::Parse { line, message: e.to_string() })?;
            let theta = parse_cell(&rec[0], line)?
                .ok_or_else(|| Error::Parse { line, message: "theta cannot be NA".into() })?;
            rows.push(SweepRow {
                theta,
                e: parse_cell(&rec[1], line)?,
                h: parse_cell(&rec[2], line)?,
                mu: parse_cell(&rec[3], line)?,
                i: parse_cell(&rec[4], line)?,
            });
        }
        Ok(SweepTable { rows })
    }

    /// JSON mirror of the CSV: an array of row objects with `null` cells.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("sweep rows serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> RankFunction {
        RankFunction::piecewise([(0.0, 10.0), (10.0, 0.0)]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn e_theta_examples() {
        let lin = RankFunction::linear(10.0, 20.0).unwrap();
        close(e_theta(&lin, 4.0).unwrap(), 36.0, 1e-12);
        assert_eq!(e_theta(&lin, 10.0).unwrap(), 0.0);
        assert_eq!(e_theta(&line(), 10.0).unwrap(), 0.0);
        let zipf = RankFunction::zipf(0.5, 1.0).unwrap();
        close(e_theta(&zipf, 2.0).unwrap(), 0.5, 1e-14);
        assert!(matches!(e_theta(&lin, 10.5), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn e_theta_lower_boundary() {
        let f = RankFunction::piecewise([(0.0, 3.0), (1.0, 1.0), (2.0, 0.2)]).unwrap();
        let at_tail = e_theta(&f, 0.2).unwrap();
        close(at_tail, f.cumulative(2.0).unwrap() - 0.2 * 2.0, 1e-15);
        assert!(is_lower_boundary(&f, 0.2));
        assert!(!is_lower_boundary(&f, 0.3));
    }

    #[test]
    fn h_theta_examples() {
        let lin = RankFunction::linear(10.0, 20.0).unwrap();
        close(h_theta(&lin, 1.0).unwrap(), 20.0 / 3.0, 1e-12);
        close(h_theta(&line(), 1.0).unwrap(), 5.0, 1e-12);
        assert!(matches!(h_theta(&RankFunction::zipf(0.5, 1.0).unwrap(), 0.5), Err(Error::OutOfRange { .. })));
        // Z(T) = 0 makes θ = 0 admissible with h = T.
        assert_eq!(h_theta(&line(), 0.0).unwrap(), 10.0);
    }

    #[test]
    fn h_theta_decreases_to_zero() {
        let f = line();
        let hs: Vec<f64> = [0.5, 1.0, 10.0, 1e3, 1e6].iter().map(|&t| h_theta(&f, t).unwrap()).collect();
        assert!(hs.windows(2).all(|w| w[1] < w[0]));
        assert!(hs[4] < 1e-4);
    }

    #[test]
    fn mu_and_i() {
        let lin = RankFunction::linear(10.0, 20.0).unwrap();
        assert_eq!(i_bundle(&lin, 20.0).unwrap(), 100.0);
        assert_eq!(i_bundle(&lin, 0.0).unwrap(), 0.0);
        assert_eq!(mu_bundle(&lin, 0.0).unwrap(), 10.0);
        assert_eq!(mu_bundle(&line(), 0.0).unwrap(), 10.0);
    }

    #[test]
    fn zhang_hand_check() {
        let f = line();
        close(classical_h(&f).unwrap(), 5.0, 1e-12);
        close(r_index_squared(&f).unwrap(), 37.5, 1e-11);
        close(zhang_e(&f).unwrap(), 12.5f64.sqrt(), 1e-11);
        close(e_theta(&f, 5.0).unwrap(), 12.5, 1e-12);
        close(classical_h(&RankFunction::linear(10.0, 10.0).unwrap()).unwrap(), 5.0, 1e-12);
    }

    #[test]
    fn zhang_symmetric_linear() {
        // S = T: h = S/2 and the excess triangle has area T²/8.
        let f = RankFunction::linear(8.0, 8.0).unwrap();
        close(zhang_e_squared(&f).unwrap(), 8.0, 1e-11);
        close(e_theta(&f, 4.0).unwrap(), 8.0, 1e-12);
    }

    #[test]
    fn zhang_zipf() {
        let f = RankFunction::zipf(0.5, 1.0).unwrap();
        close(classical_h(&f).unwrap(), 1.0, 1e-12);
        close(r_index_squared(&f).unwrap(), 2.0, 1e-11);
        close(zhang_e_squared(&f).unwrap(), 1.0, 1e-11);
    }

    #[test]
    fn sweep_linear() {
        let f = RankFunction::linear(10.0, 20.0).unwrap();
        let t = sweep(&f, &[10.0, 0.0, 4.0]);
        let e: Vec<f64> = t.rows.iter().map(|r| r.e.unwrap()).collect();
        close(e[0], 100.0, 1e-12);
        close(e[1], 36.0, 1e-12);
        assert_eq!(e[2], 0.0);
        assert!(sweep(&f, &[]).rows.is_empty());
    }

    #[test]
    fn sweep_missing_markers() {
        let f = RankFunction::linear(10.0, 20.0).unwrap();
        let t = sweep(&f, &[15.0, 25.0, -1.0]);
        // -1 is inadmissible everywhere and dropped
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[0].e, None);
        assert!(t.rows[0].h.is_some() && t.rows[0].mu.is_some());
        assert_eq!(t.rows[1].mu, None);
        assert!(t.rows[1].h.is_some());
        let csv = t.to_csv();
        assert!(csv.starts_with("theta,e,h,mu,i\n15,NA,"));
        assert!(t.to_json().contains("\"e\": null"));
    }

    #[test]
    fn csv_round_trip() {
        let f = RankFunction::piecewise([(0.0, 3.0), (1.0, 1.0), (2.0, 0.2)]).unwrap();
        let t = sweep(&f, &crate::function_space::linspace(0.0, 3.5, 37));
        let csv = t.to_csv();
        let back = SweepTable::from_csv(&csv).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_csv(), csv);
        assert!(SweepTable::from_csv("a,b\n1,2\n").is_err());
    }

    #[test]
    fn bundle_ids_parse() {
        for b in BundleId::ALL {
            assert_eq!(b.to_string().parse::<BundleId>().unwrap(), b);
        }
        assert!("g".parse::<BundleId>().is_err());
    }
}
