//! Concrete counterexample fixtures.
//!
//! The knot coordinates are chosen by hand so that every claimed property
//! holds exactly in piecewise-linear arithmetic.

use super::{DominancePair, Relation};
use crate::function_space::RankFunction;

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub pair: DominancePair,
    pub theta: f64,
}

fn pl(knots: &[(f64, f64)]) -> RankFunction {
    RankFunction::piecewise(knots.iter().copied()).expect("fixture knots are strictly decreasing")
}

fn build(upper: RankFunction, lower: RankFunction, relation: Relation, theta: f64) -> Fixture {
    let pair = DominancePair::new(upper, lower, relation).expect("fixture members share a domain");
    assert!(pair.verified, "fixture relation must hold");
    Fixture { pair, theta }
}

/// `e_θ` is not a global impact measure.
///
/// `Y`: (0,3) (1,1) (2,0.2); `Z`: (0,2.6) (0.5,2.2) (1,1) (2,0.2); `θ = 1`.
/// The two curves cross twice, the second time at height `θ`, and enclose
/// equal areas above `[0, 1]`, so `Z ≺ Y`, `Z ≠ Y`, `Y = Z` on `[1, 2]` and
/// `e₁(Z) = e₁(Y) = 1`.
pub fn fixture_global() -> Fixture {
    let y = pl(&[(0.0, 3.0), (1.0, 1.0), (2.0, 0.2)]);
    let z = pl(&[(0.0, 2.6), (0.5, 2.2), (1.0, 1.0), (2.0, 0.2)]);
    build(y, z, Relation::CumulativePrec, 1.0)
}

/// `n_θ` is not increasing.
///
/// `Z = 2 − 2x` on `[0, 1]`; `Y`: (0,2.01) (0.5,1.01) (0.9,1.0) (1,0.01);
/// `θ = 1`. `Y > Z` everywhere, `Y⁻¹(1) = 0.9 ≫ Z⁻¹(1) = 0.5`, and
/// `e₁(Y) = 0.257 > e₁(Z) = 0.25` while `n₁(Y) = 0.257/0.9 < n₁(Z) = 0.5`.
pub fn fixture_n_theta() -> Fixture {
    let y = pl(&[(0.0, 2.01), (0.5, 1.01), (0.9, 1.0), (1.0, 0.01)]);
    let z = pl(&[(0.0, 2.0), (1.0, 0.0)]);
    build(y, z, Relation::GeqAll, 1.0)
}

/// `η_θ` is not increasing.
///
/// `T = 1`, `Y = 1 − x`, `Z`: (0,1) (0.5,0.25) (1,0); `θ = T/2`.
/// `Z ≤ Y` with strict inequality on `(0, 1)`, yet
/// `η(Z) = 3T²/16 > η(Y) = T²/8`.
pub fn fixture_eta_theta() -> Fixture {
    let y = pl(&[(0.0, 1.0), (1.0, 0.0)]);
    let z = pl(&[(0.0, 1.0), (0.5, 0.25), (1.0, 0.0)]);
    build(y, z, Relation::GeqAll, 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{eta_theta, n_theta};
    use crate::bundles::e_theta;
    use crate::function_space::{compare, cumulative_order, CumulativeOrder};

    #[test]
    fn global_fixture_claims() {
        let fx = fixture_global();
        let (y, z) = (&fx.pair.upper, &fx.pair.lower);
        assert_eq!(cumulative_order(z, y).unwrap().order, CumulativeOrder::Precedes);
        assert_ne!(y, z);
        assert!(compare(y, z, 2.0, 1000).unwrap().max_deviation_prefix.value > 0.0);
        assert_eq!(y.inverse(1.0).unwrap(), 1.0);
        assert_eq!(z.inverse(1.0).unwrap(), 1.0);
        assert!((e_theta(y, 1.0).unwrap() - 1.0).abs() <= 1e-12);
        assert!((e_theta(z, 1.0).unwrap() - 1.0).abs() <= 1e-12);
        // O₁ = O₂: the enclosed areas cancel on [0, 1].
        assert!((y.cumulative(1.0).unwrap() - z.cumulative(1.0).unwrap()).abs() <= 1e-12);
        for x in [1.0, 1.25, 1.5, 2.0] {
            assert_eq!(y.evaluate(x).unwrap(), z.evaluate(x).unwrap());
        }
    }

    #[test]
    fn n_theta_fixture_claims() {
        let fx = fixture_n_theta();
        let (y, z) = (&fx.pair.upper, &fx.pair.lower);
        assert!(compare(y, z, 1.0, 1000).unwrap().strict_on_prefix);
        assert_eq!(y.inverse(1.0).unwrap(), 0.9);
        assert_eq!(z.inverse(1.0).unwrap(), 0.5);
        assert!((e_theta(y, 1.0).unwrap() - 0.257).abs() <= 1e-12);
        assert!((e_theta(z, 1.0).unwrap() - 0.25).abs() <= 1e-12);
        let (ny, nz) = (n_theta(y, 1.0).unwrap(), n_theta(z, 1.0).unwrap());
        assert!(ny < nz);
        assert!((ny - 0.257 / 0.9).abs() <= 1e-12);
        assert!((nz - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn eta_theta_fixture_claims() {
        let fx = fixture_eta_theta();
        let (y, z) = (&fx.pair.upper, &fx.pair.lower);
        let v = compare(y, z, 1.0, 1000).unwrap();
        assert!(v.geq_all);
        // strict on the open interval: check away from the shared endpoints
        for x in [1e-6, 0.25, 0.5, 0.75, 1.0 - 1e-6] {
            assert!(y.evaluate(x).unwrap() > z.evaluate(x).unwrap());
        }
        assert_eq!(eta_theta(z, 0.5).unwrap(), 0.1875);
        assert_eq!(eta_theta(y, 0.5).unwrap(), 0.125);
    }
}
