mod common;

use breakage::analysis::{
    check_g0_moment_bound, check_reaction_bounds, check_tail_dissipation, check_tail_monotonicity, compute_bounds,
    default_slack, gronwall_experiment, longtime_report,
};
use breakage::integrator::{integrate, IntegratorConfig, Trajectory};
use breakage::kinetics::{CollisionKernel, FragmentDistribution, WeightFunction, WeightSequence};
use breakage::system::{StateVector, System};
use breakage::Error;

fn run(sys: &System<f64>, t_end: f64) -> Trajectory<f64> {
    integrate(&StateVector::geometric(sys.p()), sys, &IntegratorConfig::new(0.01, t_end), &mut []).unwrap()
}

fn scenarios() -> Vec<System<f64>> {
    [FragmentDistribution::uniform(), FragmentDistribution::monomer(), FragmentDistribution::exponential()]
        .into_iter()
        .map(common::fig5)
        .collect()
}

#[test]
fn tails_never_exceed_initial_values() {
    for sys in scenarios() {
        let traj = run(&sys, 10.0);
        let slack = default_slack(1e-12, traj.initial().state.mass());
        for exponent in [1.0, 2.0] {
            let lambda = WeightSequence::monomial(exponent).unwrap();
            let report = check_tail_monotonicity(&traj, &lambda, &[1, 2, 3, 5, 10, 20], slack);
            assert!(report.certified, "{report}");
        }
        let lambda = WeightSequence::monomial(1.0).unwrap();
        let report = check_tail_dissipation(&traj, &sys, &lambda, &[2]).unwrap();
        assert!(report.certified, "{report}");
    }
}

#[test]
fn first_moment_tail_with_r_one_is_the_mass() {
    let sys = common::fig5(FragmentDistribution::uniform());
    let traj = run(&sys, 2.0);
    let lambda = WeightSequence::monomial(1.0).unwrap();
    let report = check_tail_monotonicity(&traj, &lambda, &[1], 1e-12);
    assert!(report.certified);
    assert!(report.worst_margin <= 1e-12 + 1e-14);
}

#[test]
fn g0_moment_stays_below_initial_value() {
    for g in [WeightFunction::power(2.0).unwrap(), WeightFunction::power(1.5).unwrap(), WeightFunction::log_power(2.0).unwrap()]
    {
        for sys in scenarios() {
            let traj = run(&sys, 10.0);
            let report = check_g0_moment_bound(&traj, &g, 1e-12);
            assert!(report.certified, "{report}");
        }
    }
}

#[test]
fn g0_moment_is_constant_for_monomers_and_frozen_flows() {
    let g = WeightFunction::power(2.0).unwrap();
    let sys = common::system(6, CollisionKernel::constant(0.0).unwrap(), FragmentDistribution::uniform());
    let report = check_g0_moment_bound(&run(&sys, 1.0), &g, 0.0);
    assert!(report.certified);
    assert_eq!(report.worst_margin, 0.0);
}

#[test]
fn reaction_integrals_respect_constants() {
    let g = WeightFunction::power(2.0).unwrap();
    let species: Vec<usize> = (2..=10).collect();
    for sys in scenarios() {
        let traj = run(&sys, 50.0);
        let (report, entries) = check_reaction_bounds(&traj, &sys, &g, &species).unwrap();
        assert!(report.certified, "{report}");
        assert_eq!(entries.len(), 9);
        assert!(entries.iter().all(|e| e.variation_integral <= e.loss_integral + e.gain_integral + 1e-12));
    }
}

#[test]
fn tail_constants_decrease_strictly() {
    let init = StateVector::<f64>::geometric(40);
    for g in [WeightFunction::power(1.5).unwrap(), WeightFunction::power(2.0).unwrap(), WeightFunction::log_power(1.5).unwrap()] {
        let b = compute_bounds(&init, &g, 1.0, 3, 10_000).unwrap();
        assert!(b.c.values().chain(b.eps.values()).chain(b.omega.values()).all(|v| v.is_finite() && *v > 0.0));
        for i in 1..=3 {
            let omega: Vec<f64> = (i + 1..=10_000).map(|m| b.omega[&(m, i)]).collect();
            assert!(omega.windows(2).all(|w| w[1] < w[0]), "{}", g.name());
        }
        let eps: Vec<f64> = (2..=10_000).map(|m| b.eps[&m]).collect();
        assert!(eps.windows(2).all(|w| w[1] < w[0]), "{}", g.name());
    }
}

fn gronwall_setup(kernel: CollisionKernel<f64>) -> (System<f64>, StateVector<f64>, StateVector<f64>) {
    let sys = common::system(10, kernel, FragmentDistribution::uniform());
    let a = StateVector::geometric(10);
    let mut psi = a.clone().into_vec();
    psi[1] += 1e-6;
    (sys, a, StateVector::new(psi).unwrap())
}

#[test]
fn perturbations_grow_at_most_exponentially() {
    let (sys, a, b) = gronwall_setup(CollisionKernel::constant(1.0).unwrap());
    let lambda = WeightSequence::monomial(1.0).unwrap();
    let series = gronwall_experiment(&a, &b, &sys, &IntegratorConfig::new(0.01, 5.0), &lambda).unwrap();
    assert_eq!(series.times.len(), 501);
    assert!((series.distance[0] - 2e-6).abs() < 1e-15);
    assert!(series.contract_holds(1e-6), "worst ratio {}", series.worst_ratio());
    assert!(series.distance.iter().all(|d| *d >= 0.0));
    assert!(series.bound.iter().all(|b| *b >= series.distance[0]));
}

#[test]
fn identical_and_frozen_pairs() {
    let lambda = WeightSequence::monomial(1.0).unwrap();
    let icfg = IntegratorConfig::new(0.01, 1.0);
    let (sys, a, b) = gronwall_setup(CollisionKernel::constant(1.0).unwrap());
    let same = gronwall_experiment(&a, &a, &sys, &icfg, &lambda).unwrap();
    assert!(same.distance.iter().all(|d| *d == 0.0));
    let (frozen, a, _) = gronwall_setup(CollisionKernel::constant(0.0).unwrap());
    let series = gronwall_experiment(&a, &b, &frozen, &icfg, &lambda).unwrap();
    assert!(series.distance.iter().all(|d| *d == series.distance[0]));
}

#[test]
fn gronwall_preconditions() {
    let lambda = WeightSequence::monomial(1.0).unwrap();
    let icfg = IntegratorConfig::new(0.01, 1.0);
    let (sys, a, b) = gronwall_setup(CollisionKernel::product_power(2.0).unwrap());
    assert!(matches!(gronwall_experiment(&a, &b, &sys, &icfg, &lambda), Err(Error::Precondition(_))));
    let unbounded = common::system(10, CollisionKernel::constant(1.0).unwrap(), FragmentDistribution::exponential());
    assert!(matches!(gronwall_experiment(&a, &b, &unbounded, &icfg, &lambda), Err(Error::Precondition(_))));
}

#[test]
fn long_time_limit_is_monodisperse() {
    let sys = common::fig5(FragmentDistribution::monomer());
    let traj = integrate(&StateVector::geometric(40), &sys, &IntegratorConfig::new(0.01, 50.0).without_steady_stop(), &mut [])
        .unwrap();
    let report = longtime_report(&traj, &sys).unwrap();
    assert_eq!(report.t_end, 50.0);
    assert!(report.tail_max < 1e-6);
    assert!(report.monomer_deviation < 1e-4);
    assert!(report.number_deviation < 1e-4);
}

#[test]
fn long_time_report_for_monomer_start_and_bad_kernel() {
    let sys = common::fig5(FragmentDistribution::uniform());
    let init = StateVector::monomers(40, 1.0).unwrap();
    let traj = integrate(&init, &sys, &IntegratorConfig::new(0.01, 5.0), &mut []).unwrap();
    let report = longtime_report(&traj, &sys).unwrap();
    assert_eq!((report.t_end, report.tail_max, report.monomer_deviation, report.number_deviation), (0.0, 0.0, 0.0, 0.0));
    let frozen = common::system(5, CollisionKernel::constant(0.0).unwrap(), FragmentDistribution::uniform());
    let traj = run(&frozen, 0.1);
    assert!(matches!(longtime_report(&traj, &frozen), Err(Error::Precondition(_))));
}
