//! Two rejected alternatives to the e-bundle. Neither is monotone in `Z`.

use crate::bundles::{e_theta, is_lower_boundary, Bundle};
use crate::function_space::{RankFunction, ThetaRange};
use crate::{Error, Result};

/// Mean excess over the prefix: `n_θ(Z) = e_θ(Z) / Z⁻¹(θ)`.
pub fn n_theta(f: &RankFunction, theta: f64) -> Result<f64> {
    let x = f.inverse(theta)?;
    if x == 0.0 {
        return Err(Error::DivisionByZero(format!("n_theta at theta = {theta} = Z(0) has Z^-1(theta) = 0")));
    }
    Ok(e_theta(f, theta)? / x)
}

/// `η_θ(Z) = ∫₀^θ (Z(s) − Z(θ)) ds`, with `θ` an abscissa in `[0, T]`.
pub fn eta_theta(f: &RankFunction, theta: f64) -> Result<f64> {
    if theta == 0.0 {
        f.cumulative(0.0)?;
        return Ok(0.0);
    }
    Ok(f.cumulative(theta)? - theta * f.evaluate(theta)?)
}

/// [`n_theta`] as a pseudo-bundle with the e-bundle's `ψ_Z(x) = Z(x)`.
/// `θ = Z(0)` is excluded from the admissible set.
#[derive(Debug, Clone, Copy, Default)]
pub struct AltN;

impl Bundle for AltN {
    fn name(&self) -> String {
        "n".into()
    }

    fn admissible(&self, f: &RankFunction) -> ThetaRange {
        let r = f.admissible_range();
        ThetaRange { lo: r.lo, hi: r.hi.next_down() }
    }

    fn psi(&self, f: &RankFunction, x: f64) -> Result<f64> {
        f.evaluate(x)
    }

    fn value(&self, f: &RankFunction, theta: f64) -> Result<f64> {
        n_theta(f, theta)
    }

    fn prefix_of(&self, f: &RankFunction, theta: f64) -> Result<f64> {
        f.inverse(theta)
    }

    fn strict_boundary(&self, f: &RankFunction, theta: f64) -> bool {
        is_lower_boundary(f, theta)
    }
}

/// [`eta_theta`] as a pseudo-bundle with `ψ_Z(x) = x`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AltEta;

impl Bundle for AltEta {
    fn name(&self) -> String {
        "eta".into()
    }

    fn admissible(&self, f: &RankFunction) -> ThetaRange {
        ThetaRange { lo: 0.0, hi: f.endpoint() }
    }

    fn psi(&self, f: &RankFunction, x: f64) -> Result<f64> {
        f.evaluate(x)?;
        Ok(x)
    }

    fn value(&self, f: &RankFunction, theta: f64) -> Result<f64> {
        eta_theta(f, theta)
    }

    fn prefix_of(&self, f: &RankFunction, theta: f64) -> Result<f64> {
        f.evaluate(theta)?;
        Ok(theta)
    }
}
