use super::{strict_gap, weak_gap, AxiomReport, DominancePair, Measure, Relation, Violation};
use crate::bundles::Bundle;
use crate::function_space::{average_strictly_below, compare, linspace, RankFunction, ThetaRange};
use crate::tolerances::{DEFAULT_GRID, EQUALITY_TOL};
use crate::{Error, Result};

/// Grid sizes used by the axiom checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// Points used for sampled hypothesis checks on non-piecewise pairs.
    pub grid_n: usize,
    /// Abscissae per pair from which the θ sample is built through `ψ`.
    pub theta_grid: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { grid_n: DEFAULT_GRID, theta_grid: 101 }
    }
}

fn ensure_verified(pairs: &[DominancePair]) -> Result<()> {
    match pairs.iter().position(|p| !p.verified) {
        Some(i) => Err(Error::Input(format!("pair {i} has an unverified relation"))),
        None => Ok(()),
    }
}

/// Uniform abscissae on `[0, hi]` plus every knot of piecewise members.
fn abscissae(pair: &DominancePair, hi: f64, n: usize) -> Vec<f64> {
    let singular = pair.upper.is_singular_at_origin() || pair.lower.is_singular_at_origin();
    let floor = if singular { hi / (n.max(2) - 1) as f64 } else { 0.0 };
    let mut xs = linspace(floor, hi, n);
    for f in [&pair.upper, &pair.lower] {
        if let Some(p) = f.as_piecewise() {
            xs.extend(p.knots().iter().map(|k| k.x).filter(|&x| x >= floor && x <= hi));
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// `ψ` images of `xs` under the selected members, restricted to `range`.
fn psi_thetas(bundle: &dyn Bundle, members: &[&RankFunction], xs: &[f64], range: &ThetaRange) -> Vec<f64> {
    let mut ts: Vec<f64> = members
        .iter()
        .flat_map(|f| xs.iter().filter_map(move |&x| bundle.psi(f, x).ok()))
        .filter(|&t| range.contains(t))
        .collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

fn undefined_note(count: usize) -> Option<String> {
    (count > 0).then(|| format!("{count} evaluations undefined at admissible theta were skipped"))
}

/// Check AX.1–AX.4 for `bundle` over verified pairs.
///
/// AX.2 uses `GeqAll` pairs with θ drawn from `ψ_Y([0, T]) ∪ ψ_Z([0, T])`;
/// AX.3 uses `StrictOnPrefix(a)` pairs with θ in `ψ_Y([0, a]) ∪ ψ_Z([0, a])`;
/// AX.4 uses `EqualOnPrefix(a)` pairs, checking `ψ_Y = ψ_Z` on `[0, a]` and
/// `m_Y = m_Z` on `ψ_Z([0, a])`. θ is always restricted to `Q_Y ∩ Q_Z`.
pub fn check_impact_bundle(
    bundle: &dyn Bundle,
    pairs: &[DominancePair],
    theta_grid: usize,
) -> Result<[AxiomReport; 4]> {
    ensure_verified(pairs)?;
    let name = bundle.name();
    let mut ax1 = AxiomReport::new("AX.1", &name);
    ax1.notes.push("vacuous: the zero function is not strictly decreasing".into());
    let mut ax2 = AxiomReport::new("AX.2", &name);
    let mut ax3 = AxiomReport::new("AX.3", &name);
    let mut ax4 = AxiomReport::new("AX.4", &name);
    let mut undefined = [0usize; 3];

    for (i, pair) in pairs.iter().enumerate() {
        let (y, z) = (&pair.upper, &pair.lower);
        let Some(common) = bundle.admissible(y).intersect(&bundle.admissible(z)) else {
            match pair.relation {
                Relation::GeqAll => ax2.skipped += 1,
                Relation::StrictOnPrefix(_) => ax3.skipped += 1,
                Relation::EqualOnPrefix(_) => ax4.skipped += 1,
                Relation::CumulativePrec => {}
            }
            continue;
        };
        match pair.relation {
            Relation::GeqAll => {
                ax2.pairs_tested += 1;
                let xs = abscissae(pair, y.endpoint(), theta_grid);
                for theta in psi_thetas(bundle, &[y, z], &xs, &common) {
                    let (Ok(lhs), Ok(rhs)) = (bundle.value(y, theta), bundle.value(z, theta)) else {
                        undefined[0] += 1;
                        continue;
                    };
                    if let Some(gap) = weak_gap(lhs, rhs) {
                        ax2.push(Violation { pair: i, theta: Some(theta), lhs, rhs, gap, note: None });
                        break;
                    }
                }
            }
            Relation::StrictOnPrefix(a) => {
                ax3.pairs_tested += 1;
                let xs = abscissae(pair, a, theta_grid);
                for theta in psi_thetas(bundle, &[y, z], &xs, &common) {
                    let (Ok(lhs), Ok(rhs)) = (bundle.value(y, theta), bundle.value(z, theta)) else {
                        undefined[1] += 1;
                        continue;
                    };
                    if let Some(gap) = strict_gap(lhs, rhs) {
                        ax3.push(Violation { pair: i, theta: Some(theta), lhs, rhs, gap, note: None });
                        break;
                    }
                }
            }
            Relation::EqualOnPrefix(a) => {
                ax4.pairs_tested += 1;
                let xs = abscissae(pair, a, theta_grid);
                let mut failed = false;
                for &x in &xs {
                    let (Ok(py), Ok(pz)) = (bundle.psi(y, x), bundle.psi(z, x)) else {
                        continue;
                    };
                    let same = py == pz || (py - pz).abs() <= EQUALITY_TOL;
                    if !same {
                        ax4.push(Violation {
                            pair: i,
                            theta: None,
                            lhs: py,
                            rhs: pz,
                            gap: (py - pz).abs(),
                            note: Some(format!("psi differs at x = {x}")),
                        });
                        failed = true;
                        break;
                    }
                }
                if failed {
                    continue;
                }
                for theta in psi_thetas(bundle, &[z], &xs, &common) {
                    let (Ok(lhs), Ok(rhs)) = (bundle.value(y, theta), bundle.value(z, theta)) else {
                        undefined[2] += 1;
                        continue;
                    };
                    let gap = (lhs - rhs).abs();
                    if gap > EQUALITY_TOL {
                        ax4.push(Violation { pair: i, theta: Some(theta), lhs, rhs, gap, note: None });
                        break;
                    }
                }
            }
            Relation::CumulativePrec => {}
        }
    }
    for (report, n) in [(&mut ax2, undefined[0]), (&mut ax3, undefined[1]), (&mut ax4, undefined[2])] {
        report.notes.extend(undefined_note(n));
    }
    Ok([ax1, ax2, ax3, ax4])
}

/// Positivity of `m` on every pair member: the non-vacuous half of
/// "`m(Z) = 0` iff `Z = 0`" on `U_s`.
fn positivity(label: &str, measure: &dyn Measure, pairs: &[DominancePair]) -> AxiomReport {
    let mut r = AxiomReport::new(label, &measure.name());
    r.notes.push("zero function is not in U_s; positivity checked on every member".into());
    for (i, pair) in pairs.iter().enumerate() {
        let mut counted = false;
        for (role, f) in [("upper", &pair.upper), ("lower", &pair.lower)] {
            match measure.value(f) {
                Ok(v) => {
                    counted = true;
                    if v <= 0.0 {
                        r.push(Violation {
                            pair: i,
                            theta: None,
                            lhs: v,
                            rhs: 0.0,
                            gap: -v,
                            note: Some(format!("{role} member has non-positive measure")),
                        });
                        break;
                    }
                }
                Err(_) => r.skipped += 1,
            }
        }
        if counted {
            r.pairs_tested += 1;
        }
    }
    r
}

/// Monotonicity under `GeqAll`, plus determinism `Y = X ⇒ m(Y) = m(X)`.
fn weak_monotonicity(label: &str, measure: &dyn Measure, pairs: &[DominancePair]) -> AxiomReport {
    let mut r = AxiomReport::new(label, &measure.name());
    for (i, pair) in pairs.iter().enumerate() {
        if pair.relation != Relation::GeqAll {
            continue;
        }
        let (Ok(lhs), Ok(rhs)) = (measure.value(&pair.upper), measure.value(&pair.lower)) else {
            r.skipped += 1;
            continue;
        };
        r.pairs_tested += 1;
        if let Some(gap) = weak_gap(lhs, rhs) {
            r.push(Violation { pair: i, theta: None, lhs, rhs, gap, note: None });
            continue;
        }
        let again = measure.value(&pair.upper.clone()).unwrap_or(f64::NAN);
        if (again - lhs).abs().is_nan() || (again - lhs).abs() > EQUALITY_TOL {
            r.push(Violation {
                pair: i,
                theta: None,
                lhs: again,
                rhs: lhs,
                gap: (again - lhs).abs(),
                note: Some("re-evaluation of an identical function differs".into()),
            });
        }
    }
    r
}

/// `min(a_Y, a_Z)`, defaulting each threshold to the pair's prefix endpoint.
fn threshold(measure: &dyn Measure, pair: &DominancePair, a: f64) -> f64 {
    let ay = measure.threshold(&pair.upper).unwrap_or(a);
    let az = measure.threshold(&pair.lower).unwrap_or(a);
    ay.min(az)
}

/// Whether the prefix hypothesis holds on `[0, min(a_Y, a_Z)]`. Within the
/// verified prefix it holds by construction; beyond it, it is re-checked.
fn prefix_hypothesis(measure: &dyn Measure, pair: &DominancePair, a: f64, grid_n: usize, strict: bool) -> Result<bool> {
    let m = threshold(measure, pair, a);
    if m <= a {
        return Ok(true);
    }
    let v = compare(&pair.upper, &pair.lower, m.min(pair.upper.endpoint()), grid_n)?;
    Ok(if strict { v.strict_on_prefix } else { v.equal_on_prefix })
}

/// Check the impact-measure axioms (I)–(III) for a single-argument measure.
///
/// (III) is tested on `StrictOnPrefix` pairs. The thresholds `a_X` come from
/// [`Measure::threshold`] (the pair's prefix endpoint when absent); pairs
/// that are not strictly ordered on `[0, min(a_Y, a_Z)]` are skipped.
pub fn check_impact_measure(
    measure: &dyn Measure,
    pairs: &[DominancePair],
    opts: &CheckOptions,
) -> Result<[AxiomReport; 3]> {
    ensure_verified(pairs)?;
    let one = positivity("I", measure, pairs);
    let two = weak_monotonicity("II", measure, pairs);
    let mut three = AxiomReport::new("III", &measure.name());
    for (i, pair) in pairs.iter().enumerate() {
        let Relation::StrictOnPrefix(a) = pair.relation else {
            continue;
        };
        if !prefix_hypothesis(measure, pair, a, opts.grid_n, true)? {
            three.skipped += 1;
            continue;
        }
        let (Ok(lhs), Ok(rhs)) = (measure.value(&pair.upper), measure.value(&pair.lower)) else {
            three.skipped += 1;
            continue;
        };
        three.pairs_tested += 1;
        if let Some(gap) = strict_gap(lhs, rhs) {
            three.push(Violation { pair: i, theta: None, lhs, rhs, gap, note: None });
        }
    }
    Ok([one, two, three])
}

/// Check the strong impact axioms (ax.1)–(ax.4).
///
/// (ax.3) is an implication: every pair is first tested for the hypothesis
/// `μ_lower < μ_upper` on `[0, T)`; pairs that fail it are skipped. Pairs on
/// which the measure sits on its strictness boundary (`θ = Z(T)` for `e_θ`)
/// are excluded and counted as flagged.
pub fn check_strong_impact(
    measure: &dyn Measure,
    pairs: &[DominancePair],
    opts: &CheckOptions,
) -> Result<[AxiomReport; 4]> {
    ensure_verified(pairs)?;
    let one = positivity("ax.1", measure, pairs);
    let two = weak_monotonicity("ax.2", measure, pairs);

    let mut three = AxiomReport::new("ax.3", &measure.name());
    for (i, pair) in pairs.iter().enumerate() {
        if !average_strictly_below(&pair.lower, &pair.upper, opts.grid_n)? {
            three.skipped += 1;
            continue;
        }
        if measure.on_strict_boundary(&pair.lower) {
            three.flagged += 1;
            continue;
        }
        let (Ok(lhs), Ok(rhs)) = (measure.value(&pair.upper), measure.value(&pair.lower)) else {
            three.skipped += 1;
            continue;
        };
        three.pairs_tested += 1;
        if let Some(gap) = strict_gap(lhs, rhs) {
            three.push(Violation { pair: i, theta: None, lhs, rhs, gap, note: None });
        }
    }
    if three.flagged > 0 {
        three.notes.push("pairs at the lower boundary theta = Z(T) excluded".into());
    }

    let mut four = AxiomReport::new("ax.4", &measure.name());
    for (i, pair) in pairs.iter().enumerate() {
        let Relation::EqualOnPrefix(a) = pair.relation else {
            continue;
        };
        if !prefix_hypothesis(measure, pair, a, opts.grid_n, false)? {
            four.skipped += 1;
            continue;
        }
        let (Ok(lhs), Ok(rhs)) = (measure.value(&pair.upper), measure.value(&pair.lower)) else {
            four.skipped += 1;
            continue;
        };
        four.pairs_tested += 1;
        let gap = (lhs - rhs).abs();
        if gap > EQUALITY_TOL {
            four.push(Violation { pair: i, theta: None, lhs, rhs, gap, note: None });
        }
    }
    Ok([one, two, three, four])
}

/// Check strict monotonicity under the cumulative order `Z ≺ Y`, `Z ≠ Y`.
pub fn check_global_impact(measure: &dyn Measure, pairs: &[DominancePair]) -> Result<AxiomReport> {
    ensure_verified(pairs)?;
    let mut r = AxiomReport::new("global", &measure.name());
    for (i, pair) in pairs.iter().enumerate() {
        if pair.relation != Relation::CumulativePrec {
            continue;
        }
        let t = pair.upper.endpoint();
        if pair.upper == pair.lower || compare(&pair.upper, &pair.lower, t, DEFAULT_GRID)?.equal_on_prefix {
            r.skipped += 1;
            continue;
        }
        let (Ok(lhs), Ok(rhs)) = (measure.value(&pair.upper), measure.value(&pair.lower)) else {
            r.skipped += 1;
            continue;
        };
        r.pairs_tested += 1;
        if let Some(gap) = strict_gap(lhs, rhs) {
            r.push(Violation {
                pair: i,
                theta: None,
                lhs,
                rhs,
                gap,
                note: (gap.abs() <= EQUALITY_TOL).then(|| "equality witness".to_string()),
            });
        }
    }
    Ok(r)
}
