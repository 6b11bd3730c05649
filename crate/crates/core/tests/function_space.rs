use proptest::prelude::*;

use ebundle::bundles::e_theta;
use ebundle::function_space::from_citations;
use ebundle::RankFunction;

/// Knots of a random strictly decreasing piecewise-linear function.
fn knots() -> impl Strategy<Value = Vec<(f64, f64)>> {
    (prop::collection::vec((0.01f64..2.0, 0.001f64..3.0), 1..9), prop_oneof![Just(0.0), 0.0f64..1.0]).prop_map(
        |(steps, tail)| {
            let mut x = 0.0;
            let mut y = tail + steps.iter().map(|s| s.1).sum::<f64>();
            let mut out = vec![(x, y)];
            for (dx, dy) in steps {
                x += dx;
                y -= dy;
                out.push((x, y.max(tail)));
            }
            out
        },
    )
}

fn pl() -> impl Strategy<Value = RankFunction> {
    knots().prop_filter_map("strictly decreasing", |k| RankFunction::piecewise(k).ok())
}

fn parametric() -> impl Strategy<Value = RankFunction> {
    prop_oneof![
        (0.1f64..100.0, 0.1f64..50.0).prop_map(|(s, t)| RankFunction::linear(s, t).unwrap()),
        (0.05f64..0.95, 0.1f64..10.0).prop_map(|(b, t)| RankFunction::zipf(b, t).unwrap()),
        (1u32..40).prop_map(|n| RankFunction::power_complement(n).unwrap()),
    ]
}

fn any_fn() -> impl Strategy<Value = RankFunction> {
    prop_oneof![pl(), parametric()]
}

/// Map `u ∈ (0, 1)` into the interior of the admissible range; unbounded
/// ranges are mapped onto `[lo, lo + 100)`.
fn interior(f: &RankFunction, u: f64) -> f64 {
    let r = f.admissible_range();
    let hi = if r.is_unbounded() { r.lo + 100.0 } else { r.hi };
    r.lo + u * (hi - r.lo)
}

/// Independent linear interpolation on raw knots.
fn interp(k: &[(f64, f64)], x: f64) -> f64 {
    let i = k.windows(2).position(|w| x <= w[1].0).unwrap_or(k.len() - 2);
    let ((x0, y0), (x1, y1)) = (k[i], k[i + 1]);
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

fn midpoint(n: usize, a: f64, b: f64, g: impl Fn(f64) -> f64) -> f64 {
    let h = (b - a) / n as f64;
    (0..n).map(|i| g(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
}

proptest! {
    #[test]
    fn inverse_round_trip(f in any_fn(), u in 0.001f64..0.999) {
        let theta = interior(&f, u);
        let x = f.inverse(theta).unwrap();
        let back = f.evaluate(x).unwrap();
        prop_assert!((back - theta).abs() <= f.inverse_tolerance(theta), "{f}: {back} vs {theta}");
    }

    #[test]
    fn inverse_strictly_decreasing(f in any_fn(), us in prop::collection::vec((0.001f64..0.999, 0.001f64..0.999), 100)) {
        for (a, b) in us {
            let (t1, t2) = (interior(&f, a.min(b)), interior(&f, a.max(b)));
            if t1 < t2 && t2 - t1 > 1e-6 * t2.abs().max(1.0) {
                prop_assert!(f.inverse(t1).unwrap() > f.inverse(t2).unwrap());
            }
        }
    }

    #[test]
    fn cumulative_increasing_and_average_nonincreasing(f in any_fn()) {
        let t = f.endpoint();
        prop_assert_eq!(f.cumulative(0.0).unwrap(), 0.0);
        let xs: Vec<f64> = (1..=200).map(|i| if i == 200 { t } else { t * i as f64 / 200.0 }).collect();
        let mut prev_i = 0.0;
        let mut prev_mu = f64::INFINITY;
        for &x in &xs {
            let i = f.cumulative(x).unwrap();
            let mu = f.average(x).unwrap();
            prop_assert!(i > prev_i);
            prop_assert!(mu <= prev_mu * (1.0 + 1e-12));
            prev_i = i;
            prev_mu = mu;
        }
    }

    #[test]
    fn e_theta_is_excess_area(k in knots(), u in 0.01f64..0.99) {
        let Ok(f) = RankFunction::piecewise(k.clone()) else { return Ok(()) };
        let theta = interior(&f, u);
        let t = f.endpoint();
        let oracle = midpoint(20_000, 0.0, t, |x| (interp(&k, x) - theta).max(0.0));
        let e = e_theta(&f, theta).unwrap();
        prop_assert!((e - oracle).abs() <= 1e-3 * oracle.max(1.0), "{e} vs {oracle}");
    }

    #[test]
    fn continuized_citations(counts in prop::collection::vec(prop_oneof![Just(0.0), Just(3.0), 0.0f64..50.0], 1..30)) {
        let c = match from_citations(&counts) {
            Ok(c) => c,
            Err(_) => {
                prop_assert!(counts.iter().all(|&x| x == 0.0));
                return Ok(());
            }
        };
        let f = &c.function;
        let k = f.knots();
        prop_assert_eq!(k[0].x, 0.0);
        prop_assert!(k.windows(2).all(|w| w[1].x > w[0].x && w[1].y < w[0].y));
        prop_assert!(k.iter().all(|p| p.y >= 0.0));
        let mut sorted: Vec<f64> = counts.iter().copied().filter(|&x| x > 0.0).collect();
        sorted.sort_by(|a, b| b.total_cmp(a));
        prop_assert_eq!(f.endpoint(), sorted.len() as f64);
        sorted.push(0.0);
        let staircase: f64 = sorted.windows(2).map(|w| (w[0] + w[1]) / 2.0).sum();
        let total = RankFunction::from(f.clone()).cumulative(f.endpoint()).unwrap();
        prop_assert!((total - staircase).abs() <= 1e-6 * staircase);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn cumulative_matches_dense_riemann(k in knots(), u in 0.05f64..1.0) {
        let Ok(f) = RankFunction::piecewise(k.clone()) else { return Ok(()) };
        let x = u * f.endpoint();
        let oracle = midpoint(1_000_000, 0.0, x, |s| interp(&k, s));
        let got = f.cumulative(x).unwrap();
        prop_assert!((got - oracle).abs() <= 1e-6 * oracle.abs().max(f64::MIN_POSITIVE), "{got} vs {oracle}");
    }
}
