use crate::roots::bisect_decreasing;
use crate::{Error, Result};

/// Closed-form rank function families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParametricFn {
    /// `Z_S(x) = S (1 − x/T)` on `[0, T]`.
    Linear { peak: f64, endpoint: f64 },
    /// `Z_β(x) = (T/x)^β` on `(0, T]`, `0 < β < 1`. Unbounded at the origin
    /// but with an integrable singularity.
    Zipf { beta: f64, endpoint: f64 },
    /// `Z_n(x) = 1 − xⁿ` on `[0, 1]`.
    PowerComplement { n: u32 },
}

impl ParametricFn {
    pub fn linear(peak: f64, endpoint: f64) -> Result<Self> {
        if !(peak > 0.0 && peak.is_finite()) || !(endpoint > 0.0 && endpoint.is_finite()) {
            return Err(Error::InvalidFunction(format!(
                "linear family needs S > 0 and T > 0, got S = {peak}, T = {endpoint}"
            )));
        }
        Ok(ParametricFn::Linear { peak, endpoint })
    }

    pub fn zipf(beta: f64, endpoint: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) || !(endpoint > 0.0 && endpoint.is_finite()) {
            return Err(Error::InvalidFunction(format!(
                "zipf family needs 0 < beta < 1 and T > 0, got beta = {beta}, T = {endpoint}"
            )));
        }
        Ok(ParametricFn::Zipf { beta, endpoint })
    }

    pub fn power_complement(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidFunction("power complement needs n >= 1".into()));
        }
        Ok(ParametricFn::PowerComplement { n })
    }

    pub fn endpoint(&self) -> f64 {
        match *self {
            ParametricFn::Linear { endpoint, .. } | ParametricFn::Zipf { endpoint, .. } => endpoint,
            ParametricFn::PowerComplement { .. } => 1.0,
        }
    }

    pub fn is_singular_at_origin(&self) -> bool {
        matches!(self, ParametricFn::Zipf { .. })
    }

    /// Caller guarantees `0 <= x <= T`.
    pub(crate) fn eval(&self, x: f64) -> Result<f64> {
        Ok(match *self {
            ParametricFn::Linear { peak, endpoint } => peak * (1.0 - x / endpoint),
            ParametricFn::Zipf { beta, endpoint } => {
                if x == 0.0 {
                    return Err(Error::Singularity);
                }
                (endpoint / x).powf(beta)
            }
            ParametricFn::PowerComplement { n } => 1.0 - pow_n(x, n),
        })
    }

    /// Caller guarantees `theta` is admissible.
    pub(crate) fn inv(&self, theta: f64) -> Result<f64> {
        match *self {
            ParametricFn::Linear { peak, endpoint } => Ok(endpoint * (1.0 - theta / peak)),
            ParametricFn::Zipf { beta, endpoint } => Ok(endpoint * theta.powf(-1.0 / beta)),
            ParametricFn::PowerComplement { .. } => {
                if theta >= 1.0 {
                    return Ok(0.0);
                }
                if theta <= 0.0 {
                    return Ok(1.0);
                }
                bisect_decreasing(|x| self.eval(x), 0.0, 1.0, theta)
            }
        }
    }

    pub(crate) fn integral_to(&self, x: f64) -> f64 {
        match *self {
            ParametricFn::Linear { peak, endpoint } => peak * (x - x * x / (2.0 * endpoint)),
            ParametricFn::Zipf { beta, endpoint } => endpoint.powf(beta) * x.powf(1.0 - beta) / (1.0 - beta),
            ParametricFn::PowerComplement { n } => x - pow_n(x, n) * x / (f64::from(n) + 1.0),
        }
    }

    pub(crate) fn head(&self) -> f64 {
        match *self {
            ParametricFn::Linear { peak, .. } => peak,
            ParametricFn::Zipf { .. } => f64::INFINITY,
            ParametricFn::PowerComplement { .. } => 1.0,
        }
    }

    pub(crate) fn tail(&self) -> f64 {
        match *self {
            ParametricFn::Linear { .. } | ParametricFn::PowerComplement { .. } => 0.0,
            ParametricFn::Zipf { .. } => 1.0,
        }
    }
}

fn pow_n(x: f64, n: u32) -> f64 {
    match i32::try_from(n) {
        Ok(k) => x.powi(k),
        Err(_) => x.powf(f64::from(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate() {
        assert!(ParametricFn::linear(0.0, 1.0).is_err());
        assert!(ParametricFn::linear(1.0, -1.0).is_err());
        assert!(ParametricFn::zipf(1.0, 1.0).is_err());
        assert!(ParametricFn::zipf(0.0, 1.0).is_err());
        assert!(ParametricFn::power_complement(0).is_err());
        assert!(ParametricFn::power_complement(3).is_ok());
    }

    #[test]
    fn zipf_origin_is_singular() {
        let z = ParametricFn::zipf(0.5, 1.0).unwrap();
        assert_eq!(z.eval(0.0), Err(Error::Singularity));
        assert_eq!(z.eval(0.25).unwrap(), 2.0);
        assert_eq!(z.integral_to(1.0), 2.0);
    }

    #[test]
    fn power_complement_inverse_by_bisection() {
        let z = ParametricFn::power_complement(5).unwrap();
        let x = z.inv(0.3).unwrap();
        assert!((x - 0.7f64.powf(0.2)).abs() < 1e-14);
    }
}
