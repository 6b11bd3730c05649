use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{DominancePair, Relation, RelationKind};
use crate::function_space::{ParametricFn, RankFunction};
use crate::{Error, Result};

const MAX_ATTEMPTS: usize = 100;

/// Parameters of the random pair generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Number of pairs, spread round-robin over `kinds`.
    pub count: usize,
    /// Inclusive bounds on the knot count of the base function.
    pub knot_range: (usize, usize),
    pub endpoint: f64,
    /// Base functions start in `[0.6, 1] · value_scale`.
    pub value_scale: f64,
    pub kinds: Vec<RelationKind>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 42,
            count: 200,
            knot_range: (3, 10),
            endpoint: 10.0,
            value_scale: 10.0,
            kinds: RelationKind::ALL.to_vec(),
        }
    }
}

impl GeneratorConfig {
    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.knot_range;
        if lo < 2 || lo > hi {
            return Err(Error::Input(format!("knot range ({lo}, {hi}) must satisfy 2 <= lo <= hi")));
        }
        if !(self.endpoint > 0.0 && self.endpoint.is_finite()) {
            return Err(Error::Input(format!("endpoint must be positive, got {}", self.endpoint)));
        }
        if !(self.value_scale > 0.0 && self.value_scale.is_finite()) {
            return Err(Error::Input(format!("value scale must be positive, got {}", self.value_scale)));
        }
        Ok(())
    }
}

/// Random verified pairs with piecewise-linear members, deterministic in
/// `seed`. Candidates failing verification are redrawn up to 100 times.
pub fn generate_pairs(cfg: &GeneratorConfig) -> Result<Vec<DominancePair>> {
    cfg.validate()?;
    if cfg.kinds.is_empty() {
        return Err(Error::Input("no relation kinds requested".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.count)
        .map(|i| {
            let kind = cfg.kinds[i % cfg.kinds.len()];
            draw(&mut rng, cfg, |rng, z| candidate(rng, cfg, kind, z))
        })
        .collect()
}

/// Random pairs with `μ_lower < μ_upper` on `[0, T)` whose members cross,
/// so that the ordering holds on averages but not pointwise. `kinds` is
/// ignored.
pub fn generate_mu_ordered_pairs(cfg: &GeneratorConfig) -> Result<Vec<DominancePair>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6d75);
    (0..cfg.count).map(|_| draw(&mut rng, cfg, |rng, z| linear_offset(rng, cfg, z, true))).collect()
}

/// `Y = Z + c` paired with `Z` under [`Relation::GeqAll`].
pub fn shifted_pair(z: &RankFunction, c: f64) -> Result<DominancePair> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Input(format!("shift must be positive, got {c}")));
    }
    let knots: Vec<(f64, f64)> = match z {
        RankFunction::Piecewise(p) => p.knots().iter().map(|k| (k.x, k.y + c)).collect(),
        RankFunction::Parametric(ParametricFn::Linear { peak, endpoint }) => {
            vec![(0.0, peak + c), (*endpoint, c)]
        }
        other => {
            return Err(Error::Input(format!("cannot shift {other}: not piecewise linear")));
        }
    };
    DominancePair::new(RankFunction::piecewise(knots)?, z.clone(), Relation::GeqAll)
}

fn draw<F>(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, mut build: F) -> Result<DominancePair>
where
    F: FnMut(&mut ChaCha8Rng, &Base) -> Result<DominancePair>,
{
    for _ in 0..MAX_ATTEMPTS {
        let Some(base) = Base::random(rng, cfg) else {
            continue;
        };
        if let Ok(pair) = build(rng, &base) {
            if pair.verified {
                return Ok(pair);
            }
        }
    }
    Err(Error::Generation(format!("no valid pair after {MAX_ATTEMPTS} attempts")))
}

/// Knot abscissae and values of a random base function.
struct Base {
    xs: Vec<f64>,
    ys: Vec<f64>,
    function: RankFunction,
}

impl Base {
    fn random(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Option<Base> {
        let t = cfg.endpoint;
        let k = rng.gen_range(cfg.knot_range.0..=cfg.knot_range.1);
        let xs = increasing(rng, 0.0, t, k);
        let y0 = rng.gen_range(0.6..=1.0) * cfg.value_scale;
        let tail = if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.0..0.1) * cfg.value_scale };
        let ys = decreasing(rng, y0, tail, k);
        let function = RankFunction::piecewise(xs.iter().copied().zip(ys.iter().copied())).ok()?;
        Some(Base { xs, ys, function })
    }

    fn endpoint(&self) -> f64 {
        *self.xs.last().expect("base has knots")
    }

    fn tail(&self) -> f64 {
        *self.ys.last().expect("base has knots")
    }

    /// `Z + g` on the knots of `Z` plus `extra`, for decreasing `g`.
    fn plus(&self, extra: &[f64], g: impl Fn(f64) -> f64) -> Result<RankFunction> {
        let mut xs = self.xs.clone();
        xs.extend_from_slice(extra);
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let knots = xs.iter().map(|&x| Ok((x, self.function.evaluate(x)? + g(x)))).collect::<Result<Vec<_>>>()?;
        RankFunction::piecewise(knots)
    }
}

/// `n` strictly increasing points from `lo` to `hi` inclusive.
fn increasing(rng: &mut ChaCha8Rng, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut inner: Vec<f64> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(lo..hi)).collect();
    inner.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(n);
    out.push(lo);
    out.extend(inner.into_iter().filter(|&x| x > lo));
    out.push(hi);
    out.dedup();
    out
}

/// `n` strictly decreasing values from `hi` to `lo` inclusive.
fn decreasing(rng: &mut ChaCha8Rng, hi: f64, lo: f64, n: usize) -> Vec<f64> {
    let mut v = increasing(rng, lo, hi, n);
    v.reverse();
    v
}

fn candidate(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, kind: RelationKind, z: &Base) -> Result<DominancePair> {
    let t = z.endpoint();
    let lower = z.function.clone();
    match kind {
        RelationKind::GeqAll => {
            let c = rng.gen_range(0.01..0.3) * cfg.value_scale;
            let upper = match rng.gen_range(0..3) {
                0 => z.plus(&[], |_| c)?,
                1 => {
                    let c1 = rng.gen_range(0.0..c);
                    z.plus(&[], |x| c + (c1 - c) * x / t)?
                }
                _ => {
                    let s = rng.gen_range(0.1..1.0) * t;
                    z.plus(&[s], |x| if x < s { c * (s - x) / s } else { 0.0 })?
                }
            };
            DominancePair::new(upper, lower, Relation::GeqAll)
        }
        RelationKind::StrictOnPrefix => {
            let b = rng.gen_range(0.2..=1.0) * t;
            let a = rng.gen_range(0.1..0.9) * b;
            let c = rng.gen_range(0.01..0.3) * cfg.value_scale;
            let d = if b < t && rng.gen_bool(0.5) { rng.gen_range(0.0..=1.0) * z.tail() / (t - b) } else { 0.0 };
            let upper = z.plus(&[b], |x| if x <= b { c * (b - x) / b } else { -d * (x - b) })?;
            DominancePair::new(upper, lower, Relation::StrictOnPrefix(a))
        }
        RelationKind::EqualOnPrefix => {
            let a = rng.gen_range(0.2..0.8) * t;
            let za = z.function.evaluate(a)?;
            let k = rng.gen_range(2..=cfg.knot_range.1.max(2));
            let xs = increasing(rng, a, t, k);
            let end = if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.0..0.5) * za };
            let ys = decreasing(rng, za, end, xs.len());
            let knots: Vec<(f64, f64)> =
                z.xs.iter()
                    .zip(&z.ys)
                    .filter(|(&x, _)| x < a)
                    .map(|(&x, &y)| (x, y))
                    .chain(xs.into_iter().zip(ys))
                    .collect();
            DominancePair::new(RankFunction::piecewise(knots)?, lower, Relation::EqualOnPrefix(a))
        }
        RelationKind::CumulativePrec => linear_offset(rng, cfg, z, false),
    }
}

/// `Y = Z + c − s·x` with `∫₀ˣ (c − s·u) du > 0` on `(0, T)` and `Y(T) ≥ 0`.
/// With `crossing`, `s ≥ c / T` so that `Y(T) ≤ Z(T)`.
fn linear_offset(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, z: &Base, crossing: bool) -> Result<DominancePair> {
    let t = z.endpoint();
    let c = rng.gen_range(0.05..0.3) * cfg.value_scale;
    let s_max = (2.0 * c / t).min((c + z.tail()) / t);
    let s_min = if crossing { c / t } else { 0.0 };
    let s = if s_max > s_min { rng.gen_range(s_min..=s_max) } else { s_max };
    let upper = z.plus(&[], |x| c - s * x)?;
    DominancePair::new(upper, z.function.clone(), Relation::CumulativePrec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(kinds: Vec<RelationKind>) -> GeneratorConfig {
        GeneratorConfig { count: 40, kinds, ..GeneratorConfig::default() }
    }

    #[test]
    fn every_pair_is_verified() {
        let pairs = generate_pairs(&GeneratorConfig::default()).unwrap();
        assert_eq!(pairs.len(), 200);
        assert!(pairs.iter().all(|p| p.verified));
        for kind in RelationKind::ALL {
            assert_eq!(pairs.iter().filter(|p| p.relation.kind() == kind).count(), 50);
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let cfg = small(RelationKind::ALL.to_vec());
        assert_eq!(generate_pairs(&cfg).unwrap(), generate_pairs(&cfg).unwrap());
        let other = GeneratorConfig { seed: 7, ..cfg.clone() };
        assert_ne!(generate_pairs(&cfg).unwrap(), generate_pairs(&other).unwrap());
    }

    #[test]
    fn mu_ordered_pairs_cross() {
        let pairs = generate_mu_ordered_pairs(&small(vec![])).unwrap();
        for p in &pairs {
            let t = p.upper.endpoint();
            assert!(p.upper.evaluate(t).unwrap() <= p.lower.evaluate(t).unwrap() + 1e-12);
            assert!(crate::function_space::average_strictly_below(&p.lower, &p.upper, 1000).unwrap());
        }
    }

    #[test]
    fn shift() {
        let z = RankFunction::linear(1.0, 1.0).unwrap();
        let p = shifted_pair(&z, 0.5).unwrap();
        assert!(p.verified);
        assert_eq!(p.upper.evaluate(1.0).unwrap(), 0.5);
        assert!(shifted_pair(&z, 0.0).is_err());
        assert!(shifted_pair(&RankFunction::zipf(0.5, 1.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn rejects_bad_config() {
        assert!(generate_pairs(&GeneratorConfig { knot_range: (1, 3), ..GeneratorConfig::default() }).is_err());
        assert!(generate_pairs(&small(vec![])).is_err());
    }
}
