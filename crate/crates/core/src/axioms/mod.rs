//! Numerical verification of the impact axiom systems.
//!
//! Four systems are covered:
//!
//! * impact bundles, AX.1–AX.4 ([`check_impact_bundle`]);
//! * single-argument impact measures, (I)–(III) ([`check_impact_measure`]);
//! * strong impact measures, (ax.1)–(ax.4) ([`check_strong_impact`]);
//! * global impact measures ([`check_global_impact`]).
//!
//! Every check consumes [`DominancePair`]s whose relation has been verified
//! against the functions before use. Strict inequalities are tested with
//! [`STRICT_SLACK`], non-strict ones with [`VIOLATION_SLACK`].

mod alternatives;
mod checks;
mod fixtures;
mod generator;

use std::fmt;

use serde::Serialize;

pub use alternatives::{eta_theta, n_theta, AltEta, AltN};
pub use checks::{check_global_impact, check_impact_bundle, check_impact_measure, check_strong_impact, CheckOptions};
pub use fixtures::{fixture_eta_theta, fixture_global, fixture_n_theta, Fixture};
pub use generator::{generate_mu_ordered_pairs, generate_pairs, shifted_pair, GeneratorConfig};

use crate::bundles::Bundle;
use crate::function_space::{compare, cumulative_order, RankFunction};
use crate::tolerances::{DEFAULT_GRID, STRICT_SLACK, VIOLATION_SLACK};
use crate::Result;

/// Relation claimed between the two members of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Relation {
    /// `upper ≥ lower` on `[0, T]`.
    GeqAll,
    /// `upper > lower` on `[0, a]`.
    StrictOnPrefix(f64),
    /// `upper = lower` on `[0, a]`.
    EqualOnPrefix(f64),
    /// `lower ≺ upper`: `I_lower ≤ I_upper` on `[0, T]`, not identical.
    CumulativePrec,
}

impl Relation {
    pub fn kind(&self) -> RelationKind {
        match self {
            Relation::GeqAll => RelationKind::GeqAll,
            Relation::StrictOnPrefix(_) => RelationKind::StrictOnPrefix,
            Relation::EqualOnPrefix(_) => RelationKind::EqualOnPrefix,
            Relation::CumulativePrec => RelationKind::CumulativePrec,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RelationKind {
    GeqAll,
    StrictOnPrefix,
    EqualOnPrefix,
    CumulativePrec,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] =
        [RelationKind::GeqAll, RelationKind::StrictOnPrefix, RelationKind::EqualOnPrefix, RelationKind::CumulativePrec];
}

/// Two rank functions with a relation, checked against the functions.
#[derive(Debug, Clone, PartialEq)]
pub struct DominancePair {
    pub upper: RankFunction,
    pub lower: RankFunction,
    pub relation: Relation,
    pub verified: bool,
}

impl DominancePair {
    /// Build a pair and re-check its relation on a [`DEFAULT_GRID`] grid
    /// (exactly, for piecewise-linear members).
    pub fn new(upper: RankFunction, lower: RankFunction, relation: Relation) -> Result<Self> {
        let verified = verify_relation(&upper, &lower, relation)?;
        Ok(DominancePair { upper, lower, relation, verified })
    }

    /// A pair whose relation has not been checked; rejected by every check.
    pub fn unverified(upper: RankFunction, lower: RankFunction, relation: Relation) -> Self {
        DominancePair { upper, lower, relation, verified: false }
    }
}

fn verify_relation(upper: &RankFunction, lower: &RankFunction, relation: Relation) -> Result<bool> {
    let t = upper.endpoint();
    Ok(match relation {
        Relation::GeqAll => compare(upper, lower, t, DEFAULT_GRID)?.geq_all,
        Relation::StrictOnPrefix(a) => compare(upper, lower, a, DEFAULT_GRID)?.strict_on_prefix,
        Relation::EqualOnPrefix(a) => compare(upper, lower, a, DEFAULT_GRID)?.equal_on_prefix,
        Relation::CumulativePrec => cumulative_order(lower, upper)?.precedes(),
    })
}

/// A single-argument functional `m: U_s -> R+`.
pub trait Measure {
    fn name(&self) -> String;

    fn value(&self, f: &RankFunction) -> Result<f64>;

    /// The per-function threshold `a_X`: `m(X)` depends only on `X` restricted
    /// to `[0, a_X]`. `None` means "use the pair's prefix endpoint".
    fn threshold(&self, _f: &RankFunction) -> Option<f64> {
        None
    }

    /// Strict monotonicity is not claimed for `f` (e.g. `θ = Z(T)` for `e_θ`).
    fn on_strict_boundary(&self, _f: &RankFunction) -> bool {
        false
    }
}

/// A bundle frozen at one `θ`, seen as a measure.
#[derive(Debug, Clone, Copy)]
pub struct AtTheta<B> {
    pub bundle: B,
    pub theta: f64,
}

impl<B> AtTheta<B> {
    pub fn new(bundle: B, theta: f64) -> Self {
        AtTheta { bundle, theta }
    }
}

impl<B: Bundle> Measure for AtTheta<B> {
    fn name(&self) -> String {
        format!("{}[theta={}]", self.bundle.name(), self.theta)
    }

    fn value(&self, f: &RankFunction) -> Result<f64> {
        self.bundle.value(f, self.theta)
    }

    fn threshold(&self, f: &RankFunction) -> Option<f64> {
        self.bundle.prefix_of(f, self.theta).ok()
    }

    fn on_strict_boundary(&self, f: &RankFunction) -> bool {
        self.bundle.strict_boundary(f, self.theta)
    }
}

/// A measure backed by a closure.
pub struct FnMeasure<F> {
    name: String,
    func: F,
}

impl<F> FnMeasure<F>
where
    F: Fn(&RankFunction) -> Result<f64>,
{
    pub fn new(name: impl Into<String>, func: F) -> Self {
        FnMeasure { name: name.into(), func }
    }
}

impl<F> Measure for FnMeasure<F>
where
    F: Fn(&RankFunction) -> Result<f64>,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn value(&self, f: &RankFunction) -> Result<f64> {
        (self.func)(f)
    }
}

/// One failed instance of an axiom.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// Index of the pair in the input list.
    pub pair: usize,
    pub theta: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// How far the claimed relation misses. For non-strict claims this is
    /// above [`VIOLATION_SLACK`]; a strict claim reported with gap 0 is an
    /// equality witness.
    pub gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub subject: String,
    #[serde(rename = "tested")]
    pub pairs_tested: usize,
    /// Pairs whose hypothesis did not hold or whose values were undefined.
    pub skipped: usize,
    /// Pairs excluded because the claim is not made there (boundary cases).
    pub flagged: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AxiomReport {
    fn new(axiom: &str, subject: &str) -> Self {
        AxiomReport {
            axiom: axiom.to_string(),
            subject: subject.to_string(),
            pairs_tested: 0,
            skipped: 0,
            flagged: 0,
            violations: Vec::new(),
            passed: true,
            notes: Vec::new(),
        }
    }

    fn push(&mut self, v: Violation) {
        self.violations.push(v);
        self.passed = false;
    }

    /// Combine reports of the same axiom produced over different inputs.
    /// Pair indices of `other` are offset by `pair_offset`.
    pub fn merge(&mut self, other: AxiomReport, pair_offset: usize) {
        self.pairs_tested += other.pairs_tested;
        self.skipped += other.skipped;
        self.flagged += other.flagged;
        for mut v in other.violations {
            v.pair += pair_offset;
            self.push(v);
        }
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<8} {:<22} tested={:<5} skipped={:<5} flagged={:<4} violations={:<4} {}",
            self.axiom,
            self.subject,
            self.pairs_tested,
            self.skipped,
            self.flagged,
            self.violations.len(),
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// Non-strict `lhs ≥ rhs`: violated when `rhs − lhs` exceeds the slack.
fn weak_gap(lhs: f64, rhs: f64) -> Option<f64> {
    let gap = rhs - lhs;
    (gap > VIOLATION_SLACK).then_some(gap)
}

/// Strict `lhs > rhs`: violated when `lhs − rhs` does not exceed the slack.
fn strict_gap(lhs: f64, rhs: f64) -> Option<f64> {
    (lhs - rhs <= STRICT_SLACK).then_some(rhs - lhs)
}
