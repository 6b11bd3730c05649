use ebundle::axioms::{
    check_global_impact, check_impact_bundle, check_impact_measure, check_strong_impact, fixture_eta_theta,
    fixture_global, fixture_n_theta, generate_mu_ordered_pairs, generate_pairs, n_theta, shifted_pair, AltEta, AltN,
    AtTheta, CheckOptions, DominancePair, FnMeasure, GeneratorConfig, Relation, RelationKind,
};
use ebundle::bundles::{e_theta, BundleId};
use ebundle::{Error, RankFunction};

fn pairs(count: usize) -> Vec<DominancePair> {
    generate_pairs(&GeneratorConfig { count, ..GeneratorConfig::default() }).unwrap()
}

fn opts() -> CheckOptions {
    CheckOptions { grid_n: 2_000, theta_grid: 41 }
}

#[test]
fn e_bundle_is_an_impact_bundle() {
    let reports = check_impact_bundle(&BundleId::E, &pairs(200), 51).unwrap();
    for r in &reports {
        assert!(r.passed, "{r}: {:?}", r.violations.first());
    }
    assert_eq!(reports[0].pairs_tested, 0);
    for r in &reports[1..] {
        assert_eq!(r.pairs_tested, 50, "{r}");
    }
}

#[test]
fn mu_and_h_bundles_pass_monotonicity() {
    let ps = pairs(80);
    for bundle in [BundleId::Mu, BundleId::H] {
        let reports = check_impact_bundle(&bundle, &ps, 31).unwrap();
        assert!(reports[1].passed, "{}", reports[1]);
        assert!(reports[3].passed, "{}", reports[3]);
    }
}

#[test]
fn i_bundle_ties_at_origin() {
    let reports = check_impact_bundle(&BundleId::I, &pairs(40), 21).unwrap();
    assert!(reports[1].passed);
    let ax3 = &reports[2];
    assert!(!ax3.passed);
    assert!(ax3.violations.iter().all(|v| v.theta == Some(0.0) && v.gap == 0.0));
}

#[test]
fn unverified_pair_is_rejected() {
    let z = RankFunction::linear(1.0, 1.0).unwrap();
    let y = RankFunction::linear(2.0, 1.0).unwrap();
    let bad = DominancePair::unverified(z.clone(), y.clone(), Relation::GeqAll);
    assert!(matches!(check_impact_bundle(&BundleId::E, std::slice::from_ref(&bad), 11), Err(Error::Input(_))));
    let m = AtTheta::new(BundleId::E, 0.5);
    assert!(check_impact_measure(&m, std::slice::from_ref(&bad), &opts()).is_err());
    assert!(check_strong_impact(&m, std::slice::from_ref(&bad), &opts()).is_err());
    assert!(check_global_impact(&m, &[bad]).is_err());
    // the claimed relation is actually false
    assert!(!DominancePair::new(z, y, Relation::GeqAll).unwrap().verified);
}

#[test]
fn identical_pair_has_zero_ax4_gap() {
    let z = RankFunction::piecewise([(0.0, 4.0), (1.0, 2.0), (3.0, 0.5)]).unwrap();
    let pair = DominancePair::new(z.clone(), z, Relation::EqualOnPrefix(3.0)).unwrap();
    assert!(pair.verified);
    let reports = check_impact_bundle(&BundleId::E, &[pair], 21).unwrap();
    assert!(reports[3].passed);
    assert_eq!(reports[3].pairs_tested, 1);
}

#[test]
fn alt_n_violates_monotonicity_at_one() {
    let fx = fixture_n_theta();
    let reports = check_impact_bundle(&AltN, std::slice::from_ref(&fx.pair), 101).unwrap();
    assert!(!reports[1].passed);
    let m = FnMeasure::new("n_1", |f: &RankFunction| n_theta(f, 1.0));
    let measure = check_impact_measure(&m, std::slice::from_ref(&fx.pair), &opts()).unwrap();
    assert!(!measure[1].passed);
    let v = &measure[1].violations[0];
    assert!((v.lhs - 0.257 / 0.9).abs() < 1e-12 && (v.rhs - 0.5).abs() < 1e-12);
}

#[test]
fn alt_eta_violates_monotonicity() {
    let fx = fixture_eta_theta();
    let reports = check_impact_bundle(&AltEta, std::slice::from_ref(&fx.pair), 101).unwrap();
    assert!(!reports[1].passed);
    let hit = reports[1].violations[0].clone();
    assert!(hit.rhs > hit.lhs);
}

#[test]
fn e_theta_is_an_impact_measure() {
    let ps = pairs(120);
    for theta in [1.0, 2.0] {
        let reports = check_impact_measure(&AtTheta::new(BundleId::E, theta), &ps, &opts()).unwrap();
        for r in &reports {
            assert!(r.passed, "{r}: {:?}", r.violations.first());
        }
        assert!(reports[2].pairs_tested > 0);
    }
}

#[test]
fn zero_measure_fails_positivity() {
    let m = FnMeasure::new("zero", |_: &RankFunction| Ok(0.0));
    let reports = check_impact_measure(&m, &pairs(4), &opts()).unwrap();
    assert!(!reports[0].passed);
    assert_eq!(reports[0].violations.len(), 4);
}

#[test]
fn e_theta_is_strong_on_mu_ordered_pairs() {
    let cfg = GeneratorConfig { count: 100, ..GeneratorConfig::default() };
    let mut ps = generate_mu_ordered_pairs(&cfg).unwrap();
    ps.extend(pairs(40));
    for theta in [2.0, 4.0] {
        let reports = check_strong_impact(&AtTheta::new(BundleId::E, theta), &ps, &opts()).unwrap();
        for r in &reports {
            assert!(r.passed, "{r}: {:?}", r.violations.first());
        }
        assert!(reports[2].pairs_tested >= 100, "{}", reports[2]);
    }
}

#[test]
fn constant_shift_meets_ax3_hypothesis() {
    let z = RankFunction::piecewise([(0.0, 5.0), (2.0, 3.0), (4.0, 1.0)]).unwrap();
    let ps: Vec<_> = [0.1, 0.5, 1.0].iter().map(|&c| shifted_pair(&z, c).unwrap()).collect();
    let reports = check_strong_impact(&AtTheta::new(BundleId::E, 2.0), &ps, &opts()).unwrap();
    assert_eq!(reports[2].pairs_tested, 3);
    assert!(reports[2].passed);
}

#[test]
fn lower_boundary_is_flagged() {
    let z = RankFunction::piecewise([(0.0, 5.0), (2.0, 3.0), (4.0, 1.0)]).unwrap();
    let pair = shifted_pair(&z, 0.5).unwrap();
    let reports = check_strong_impact(&AtTheta::new(BundleId::E, 1.0), &[pair], &opts()).unwrap();
    assert_eq!(reports[2].flagged, 1);
    assert_eq!(reports[2].pairs_tested, 0);
}

#[test]
fn e_theta_is_not_global() {
    let fx = fixture_global();
    let r = check_global_impact(&AtTheta::new(BundleId::E, fx.theta), std::slice::from_ref(&fx.pair)).unwrap();
    assert_eq!(r.violations.len(), 1);
    let v = &r.violations[0];
    assert_eq!((v.lhs, v.rhs, v.gap), (1.0, 1.0, 0.0));
    assert_eq!(e_theta(&fx.pair.upper, 1.0).unwrap(), 1.0);
}

#[test]
fn i_at_endpoint_is_not_global_either() {
    let fx = fixture_global();
    let r = check_global_impact(&AtTheta::new(BundleId::I, 2.0), &[fx.pair]).unwrap();
    assert!(!r.passed);
}

#[test]
fn global_skips_identical_pairs() {
    let z = RankFunction::linear(3.0, 2.0).unwrap();
    let pair = DominancePair::new(z.clone(), z, Relation::CumulativePrec).unwrap();
    // identical functions are not strictly ordered
    assert!(!pair.verified);
    let cfg = GeneratorConfig { count: 20, kinds: vec![RelationKind::CumulativePrec], ..GeneratorConfig::default() };
    let ps = generate_pairs(&cfg).unwrap();
    let r = check_global_impact(&AtTheta::new(BundleId::I, 10.0), &ps).unwrap();
    assert_eq!(r.pairs_tested, 20);
    assert!(r.passed, "{r}");
}
