use approx::assert_abs_diff_eq;
use vikit::harness;
use vikit::sharpness::residual;
use vikit::solvers::{
    self, check_fejer, check_gpm_step, check_telescoping_exact, check_telescoping_gpm, exact_ppa_iteration_bound,
    exact_ppa_step, gpm_iteration_bound, gpm_step, inexact_ppa_step, ErrorSchedule, Flag, Termination,
    DEFAULT_INNER_CAP, DEFAULT_INNER_TOL,
};
use vikit::{ConvexSet, SolverConfig, Vector, VectorMap};

fn v(xs: &[f64]) -> Vector {
    Vector::from_column_slice(xs)
}

fn corner() -> (ConvexSet, VectorMap) {
    (
        ConvexSet::unit_box(2).unwrap(),
        VectorMap::scaled_shift(1.0, v(&[2.0, 2.0])).unwrap(),
    )
}

fn lp_left() -> (ConvexSet, VectorMap, ConvexSet) {
    (
        ConvexSet::unit_box(2).unwrap(),
        VectorMap::constant(v(&[1.0, 0.0])).unwrap(),
        ConvexSet::new_box(v(&[0.0, 0.0]), v(&[0.0, 1.0])).unwrap(),
    )
}

#[test]
fn gpm_step_examples() {
    let (set, map) = corner();
    let next = gpm_step(&set, &map, &v(&[0.0, 0.0]), 0.5).unwrap();
    assert_eq!(next, v(&[1.0, 1.0]));
    assert_abs_diff_eq!(residual(&set, &map, &next).unwrap(), 0.0, epsilon = 1e-12);
    assert_eq!(gpm_step(&set, &map, &v(&[1.0, 1.0]), 0.3).unwrap(), v(&[1.0, 1.0]));
    let line = ConvexSet::unit_box(1).unwrap();
    let f = VectorMap::scaled_shift(1.0, v(&[2.0])).unwrap();
    assert_abs_diff_eq!(gpm_step(&line, &f, &v(&[0.0]), 0.25).unwrap()[0], 0.5, epsilon = 1e-15);
}

#[test]
fn proximal_step_examples() {
    let (set, map, _) = lp_left();
    let z = exact_ppa_step(&set, &map, &v(&[1.0, 0.5]), 10.0, DEFAULT_INNER_TOL, DEFAULT_INNER_CAP).unwrap();
    assert_abs_diff_eq!(z, v(&[0.0, 0.5]), epsilon = 1e-12);
    let xstar = v(&[0.0, 0.3]);
    let z = exact_ppa_step(&set, &map, &xstar, 2.0, DEFAULT_INNER_TOL, DEFAULT_INNER_CAP).unwrap();
    assert_abs_diff_eq!(z, xstar, epsilon = 1e-12);

    let line = ConvexSet::unit_box(1).unwrap();
    let f = VectorMap::scaled_shift(1.0, v(&[2.0])).unwrap();
    let z = exact_ppa_step(&line, &f, &v(&[0.0]), 1.0, DEFAULT_INNER_TOL, DEFAULT_INNER_CAP).unwrap();
    assert_abs_diff_eq!(z[0], 1.0, epsilon = 1e-10);
    // Fixed-point equation z = P(x - gamma F(z)) holds at the answer.
    assert_abs_diff_eq!(
        line.project(&v(&[0.0 - (z[0] - 2.0)])).unwrap()[0],
        z[0],
        epsilon = 1e-10
    );
}

#[test]
fn inexact_step_examples() {
    let (set, map, _) = lp_left();
    let x = v(&[1.0, 0.5]);
    let z = inexact_ppa_step(
        &set,
        &map,
        &x,
        &v(&[0.0, 0.1]),
        10.0,
        DEFAULT_INNER_TOL,
        DEFAULT_INNER_CAP,
    )
    .unwrap();
    assert_abs_diff_eq!(z, v(&[0.0, 0.6]), epsilon = 1e-12);
    let exact = exact_ppa_step(&set, &map, &x, 10.0, DEFAULT_INNER_TOL, DEFAULT_INNER_CAP).unwrap();
    let zero = inexact_ppa_step(
        &set,
        &map,
        &x,
        &v(&[0.0, 0.0]),
        10.0,
        DEFAULT_INNER_TOL,
        DEFAULT_INNER_CAP,
    )
    .unwrap();
    assert_eq!(exact, zero);
}

#[test]
fn run_examples() {
    let (set, map) = corner();
    let t = solvers::run(
        &set,
        &map,
        Some(&ConvexSet::point(v(&[1.0, 1.0])).unwrap()),
        &v(&[0.0, 0.0]),
        &SolverConfig::gpm(0.5),
    )
    .unwrap();
    assert_eq!(t.l_obs(), Some(1));

    let (set, map, sol) = lp_left();
    let t = solvers::run(&set, &map, Some(&sol), &v(&[1.0, 0.5]), &SolverConfig::exact_ppa(10.0)).unwrap();
    assert_eq!(t.l_obs(), Some(1));
    assert_eq!(t.tally(|r| r.fejer).1, 0);
}

#[test]
fn constant_errors_still_produce_a_trace() {
    let (set, map) = corner();
    let cfg = SolverConfig::inexact_ppa(0.5, ErrorSchedule::Constant { e: vec![0.1, 0.0] }).with_max_iter(50);
    let t = solvers::run(
        &set,
        &map,
        Some(&ConvexSet::point(v(&[1.0, 1.0])).unwrap()),
        &v(&[0.0, 0.0]),
        &cfg,
    )
    .unwrap();
    assert!(!t.records.is_empty());
    assert!(t.records.len() <= 50);
    assert!(!matches!(t.termination, Termination::Failed { .. }));
}

#[test]
fn bound_formulas() {
    assert_abs_diff_eq!(exact_ppa_iteration_bound(2.0, 1.0, 1.0).unwrap(), 5.0);
    assert_abs_diff_eq!(exact_ppa_iteration_bound(0.0, 1.0, 1.0).unwrap(), 1.0);
    assert_abs_diff_eq!(exact_ppa_iteration_bound(1.0, 10.0, 1.0).unwrap(), 1.01);
    assert_abs_diff_eq!(
        gpm_iteration_bound(2f64.sqrt(), 1.0, 1.0, 0.5, 1.0).unwrap(),
        25.0,
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(gpm_iteration_bound(0.0, 1.0, 1.0, 0.5, 1.0).unwrap(), 1.0);
    assert!(gpm_iteration_bound(1.0, 1.0, 1.0, 0.4, 1.0).is_err());
}

#[test]
fn step_checks_at_a_solution() {
    let x = v(&[0.3, 0.4]);
    assert_eq!(check_fejer(&x, &x, &x), Flag::Pass);
    let (c, s) = check_gpm_step(&x, &x, &x, 1.0, 1.0, 0.5);
    assert_eq!((c, s), (Flag::Pass, Flag::Pass));
}

#[test]
fn exact_ppa_steps_pass_fejer_on_lp() {
    let (set, map, sol) = lp_left();
    let p = harness::lp_unit_square().unwrap();
    for x1 in harness::starting_points(&p, 10, 3).unwrap() {
        for gamma in [0.1, 1.0] {
            let cfg = SolverConfig::exact_ppa(gamma).with_floor(gamma);
            let t = solvers::run(&set, &map, Some(&sol), &x1, &cfg).unwrap();
            assert_eq!(t.tally(|r| r.fejer).1, 0);
            let d = sol.distance(&x1).unwrap();
            assert_ne!(check_telescoping_exact(&t, d), Flag::Fail);
        }
    }
}

#[test]
fn gpm_steps_pass_on_box_corner() {
    let (set, map) = corner();
    let sol = ConvexSet::point(v(&[1.0, 1.0])).unwrap();
    let cfg = SolverConfig::gpm(0.5).with_sigma(0.5).with_constants(1.0, 1.0);
    let mut r = vikit::rng::seeded(8);
    for x1 in set.sample(30, &mut r).unwrap() {
        let t = solvers::run(&set, &map, Some(&sol), &x1, &cfg).unwrap();
        assert_eq!(t.tally(|r| r.contraction).1, 0);
        assert_eq!(t.tally(|r| r.step_bound).1, 0);
        let d = sol.distance(&x1).unwrap();
        assert_ne!(check_telescoping_gpm(&t, d, 0.5), Flag::Fail);
        let bound = gpm_iteration_bound(d, 1.0, 1.0, 0.5, 1.0).unwrap();
        assert!(t.l_obs().unwrap() as f64 <= bound);
    }
}

#[test]
fn flags_need_their_hypotheses() {
    let (set, map) = corner();
    let sol = ConvexSet::point(v(&[1.0, 1.0])).unwrap();
    // GPM without declared constants: no step inequalities are evaluated.
    let t = solvers::run(&set, &map, Some(&sol), &v(&[0.2, 0.0]), &SolverConfig::gpm(0.1)).unwrap();
    assert!(t
        .records
        .iter()
        .all(|r| r.contraction == Flag::NotApplicable && r.step_bound == Flag::NotApplicable));
    assert!(t.records.iter().all(|r| r.fejer == Flag::NotApplicable));
    // Proximal runs carry the Fejer flag but never the GPM ones.
    let t = solvers::run(&set, &map, Some(&sol), &v(&[0.2, 0.0]), &SolverConfig::exact_ppa(0.5)).unwrap();
    assert!(t.records.iter().all(|r| r.contraction == Flag::NotApplicable));
    assert!(t.records.iter().skip(1).any(|r| r.fejer == Flag::Pass));
}

#[test]
fn finite_termination_both_directions() {
    for p in [
        harness::box_corner(2).unwrap(),
        harness::lp_unit_square().unwrap(),
        harness::box_corner(3).unwrap(),
    ] {
        for x1 in harness::starting_points(&p, 10, 4).unwrap() {
            let cfg = SolverConfig::gpm(0.3).with_max_iter(500);
            let t = solvers::run(&p.set, &p.map, Some(&p.solutions), &x1, &cfg).unwrap();
            let member = t.first_dist_below(1e-8).expect("reaches the solution set");
            let small = t.first_residual_below(1e-8).expect("residual vanishes");
            assert!(small.abs_diff(member) <= 1);
            for r in &t.records {
                if r.dist.is_some_and(|d| d <= 1e-8) {
                    assert!(r.residual <= 1e-8);
                }
            }
        }
    }
}

#[test]
fn runs_respect_the_iteration_cap() {
    let p = harness::interior(2).unwrap();
    let cfg = SolverConfig::gpm(0.5).with_max_iter(7).with_tol(1e-300);
    let t = solvers::run(&p.set, &p.map, Some(&p.solutions), &v(&[0.0, 1.0]), &cfg).unwrap();
    assert!(t.records.len() <= 7);
    assert_eq!(t.termination, Termination::CapExceeded);
}

#[test]
fn runs_are_deterministic() {
    let p = harness::box_corner(3).unwrap();
    let cfg = SolverConfig::inexact_ppa(0.1, ErrorSchedule::decaying(17));
    let x1 = harness::starting_points(&p, 1, 2).unwrap().remove(0);
    let a = solvers::run(&p.set, &p.map, Some(&p.solutions), &x1, &cfg).unwrap();
    let b = solvers::run(&p.set, &p.map, Some(&p.solutions), &x1, &cfg).unwrap();
    assert_eq!(a.to_csv_string().unwrap(), b.to_csv_string().unwrap());
}

#[test]
fn bad_configurations_are_rejected() {
    let (set, map) = corner();
    let x1 = v(&[0.0, 0.0]);
    assert!(solvers::run(&set, &map, None, &x1, &SolverConfig::gpm(-1.0)).is_err());
    assert!(solvers::run(
        &set,
        &map,
        None,
        &x1,
        &SolverConfig::gpm(0.3).with_sigma(0.5).with_constants(1.0, 1.0)
    )
    .is_err());
    assert!(solvers::run(&set, &map, None, &v(&[2.0, 0.0]), &SolverConfig::gpm(0.5)).is_err());
    assert!(solvers::run(&set, &map, None, &v(&[0.0]), &SolverConfig::gpm(0.5)).is_err());
}
