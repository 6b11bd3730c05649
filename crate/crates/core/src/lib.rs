//! Generalized e-bundle and companion impact bundles for continuous, strictly
//! decreasing rank-frequency functions `Z: [0, T] -> R+`.
//!
//! The crate is organised in four layers:
//!
//! * [`function_space`]: rank functions (piecewise-linear or parametric) with
//!   evaluation, inversion, cumulative integration, averaging and dominance
//!   checks.
//! * [`bundles`]: the e-bundle `e_θ(Z) = ∫₀^{Z⁻¹(θ)} (Z(s) − θ) ds`, the
//!   generalized h-bundle, the μ- and I-bundles, and Zhang's e-index.
//! * [`axioms`]: numerical verification of the impact-bundle, impact-measure,
//!   strong and global impact axiom systems, plus the counterexample fixtures.
//! * [`convergence`]: sup-norm convergence studies for function sequences,
//!   their inverses and their e-bundles.

pub mod axioms;
pub mod bundles;
pub mod convergence;
mod error;
pub mod function_space;
pub mod roots;
pub mod tolerances;

pub use error::{Error, Result};
pub use function_space::{Knot, ParametricFn, PiecewiseLinearFn, RankFunction, ThetaRange};
