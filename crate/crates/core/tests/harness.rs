use approx::assert_abs_diff_eq;
use vikit::harness::{self, Experiment, ProblemInstance, SuiteOptions, Verdict};
use vikit::operators::probe_strong_pseudomonotone;
use vikit::sharpness::{modulus_cone, residual, Modulus};
use vikit::solvers::Flag;
use vikit::{ConvexSet, SolverConfig, Vector};

fn v(xs: &[f64]) -> Vector {
    Vector::from_column_slice(xs)
}

#[test]
fn box_corner_generator() {
    let p = harness::box_corner(2).unwrap();
    let cert = modulus_cone(&p.set, &p.solutions, &p.map, 1000, 1).unwrap();
    assert_abs_diff_eq!(cert.alpha.value().unwrap(), 1.0, epsilon = 1e-9);
    assert_abs_diff_eq!(residual(&p.set, &p.map, &v(&[1.0, 1.0])).unwrap(), 0.0, epsilon = 1e-12);
    let p3 = harness::box_corner(3).unwrap();
    let probe = probe_strong_pseudomonotone(&p3.map, &p3.set, 1000, 1).unwrap();
    assert!(probe.modulus >= 1.0 - 1e-6 && probe.modulus <= 1.01);
}

#[test]
fn lp_generators() {
    let p = harness::lp_unit_square().unwrap();
    assert_eq!(p.alpha, Some(Modulus::Finite(1.0)));
    assert!(p.solutions.contains(&v(&[0.0, 0.4]), 1e-12).unwrap());
    assert!(!p.solutions.contains(&v(&[0.1, 0.4]), 1e-9).unwrap());

    let p = harness::lp_simplex().unwrap();
    let alpha = p.alpha.and_then(|a| a.value()).unwrap();
    // T_X(e1) is spanned by e2 - e1 and e3 - e1; <c, v> / |v| = 1/sqrt(2) on both.
    let c = v(&[0.0, 1.0, 1.0]);
    let sweep = (0..=1000)
        .map(|k| k as f64 / 1000.0)
        .map(|s| v(&[-1.0, s, 1.0 - s]))
        .map(|d| c.dot(&d) / d.norm())
        .fold(f64::INFINITY, f64::min);
    assert_abs_diff_eq!(alpha, sweep, epsilon = 1e-9);
    assert_abs_diff_eq!(alpha, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-12);

    assert!(harness::lp_as_vi("zero", ConvexSet::unit_box(2).unwrap(), v(&[0.0, 0.0])).is_err());
}

#[test]
fn strong_pseudo_step_window() {
    let p = harness::strong_pseudo(2, 0.5).unwrap();
    let (mu, l) = (p.mu.unwrap(), p.lipschitz.unwrap());
    assert_abs_diff_eq!(l * l / (2.0 * mu), 0.25);
    let sigma = harness::checked_gpm_sigma(mu, l);
    assert!((0.25..1.0).contains(&sigma));
    assert!(harness::strong_pseudo(2, 2.0).is_err());
    assert!(harness::strong_pseudo(2, 0.0).is_err());
    // mu = 1 is the box-corner problem.
    let one = harness::strong_pseudo(3, 1.0).unwrap();
    let corner = harness::box_corner(3).unwrap();
    for x in [v(&[0.0, 0.5, 1.0]), v(&[0.2, 0.2, 0.9])] {
        assert_eq!(one.map.evaluate(&x).unwrap(), corner.map.evaluate(&x).unwrap());
    }
    // A step below L^2/(2 mu) is refused before any iteration.
    let cfg = SolverConfig::gpm(0.1).with_sigma(0.5).with_constants(mu, l);
    let (row, trace) = harness::run_experiment(0, &Experiment::new(p, cfg, v(&[0.0, 0.0])), 1);
    assert!(trace.is_none());
    assert_ne!(row.verdict, Verdict::Pass);
}

#[test]
fn verified_problems_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for p in [
        harness::box_corner(3).unwrap(),
        harness::strong_pseudo(3, 1.5).unwrap(),
        harness::lp_unit_square().unwrap(),
        harness::lp_simplex().unwrap(),
        harness::interior(2).unwrap(),
    ] {
        p.verify().unwrap();
        let path = dir.path().join(format!("{}.json", p.name));
        p.save(&path).unwrap();
        let back = ProblemInstance::load(&path).unwrap();
        assert_eq!(back.to_json().unwrap(), p.to_json().unwrap());
    }
}

#[test]
fn wrong_declared_modulus_fails_verification() {
    let mut p = harness::box_corner(2).unwrap();
    p.alpha = Some(Modulus::Finite(0.5));
    assert!(p.verify().is_err());
}

#[test]
fn worked_runs_pass() {
    let corner = harness::box_corner(2).unwrap();
    let cfg = SolverConfig::gpm(0.5).with_sigma(0.5);
    let (row, _) = harness::run_experiment(0, &Experiment::new(corner, cfg, v(&[0.0, 0.0])), 1);
    assert_eq!(row.l_obs, Some(1));
    assert_abs_diff_eq!(
        row.bound.unwrap(),
        1.0 + 2.0 * 9.0 / (0.75 * 0.99 * 0.99),
        epsilon = 1e-9
    );
    assert_eq!(row.verdict, Verdict::Pass);

    let lp = harness::lp_unit_square().unwrap();
    let cfg = SolverConfig::exact_ppa(10.0).with_floor(10.0);
    let (row, _) = harness::run_experiment(1, &Experiment::new(lp, cfg, v(&[1.0, 0.5])), 1);
    assert_eq!(row.l_obs, Some(1));
    assert_abs_diff_eq!(row.bound.unwrap(), 1.0 / (100.0 * 0.99 * 0.99) + 1.0, epsilon = 1e-12);
    assert_eq!(row.verdict, Verdict::Pass);
    assert_eq!(row.fejer.1, 0);
}

#[test]
fn default_suite_rows_are_consistent() {
    let experiments = harness::default_suite(42, SuiteOptions::default()).unwrap();
    let report = harness::run_suite(&experiments, 42);
    assert_eq!(report.count(Verdict::Fail), 0);
    for row in &report.rows {
        // The bound is recomputable from the row alone.
        match (row.bound, row.recompute_bound()) {
            (Some(a), Some(b)) => assert_eq!(a.to_bits(), b.to_bits()),
            (None, None) => {}
            other => panic!("run {}: {other:?}", row.run),
        }
        if row.verdict == Verdict::Pass {
            if let (Some(l), Some(b)) = (row.l_obs, row.bound) {
                assert!(l as f64 <= b);
            }
            for f in [row.telescoping, row.trigger, row.step_decay] {
                assert_ne!(f, Flag::Fail);
            }
            assert_eq!(row.fejer.1 + row.contraction.1 + row.step_bound.1, 0);
        }
    }
    let again = harness::run_suite(&experiments, 42);
    assert_eq!(report.to_csv_string().unwrap(), again.to_csv_string().unwrap());
}
