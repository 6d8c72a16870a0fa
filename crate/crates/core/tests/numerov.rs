use qdot_core::numerov::{bound_states, find_eigenvalues, integrate, SpectrumRequest};
use qdot_core::quadrature::norm_squared;
use qdot_core::{Error, InnerBoundary, PotentialKind, RadialProblem};

fn problem(kind: PotentialKind, omega: f64, l: u32) -> RadialProblem {
    RadialProblem::new(kind, omega, l).unwrap()
}

fn oscillator(k: usize, l: u32, omega: f64) -> f64 {
    2.0 * (2.0 * k as f64 + l as f64 + 1.0) * omega
}

#[test]
fn mismatch_crosses_zero_at_oscillator_ground_state() {
    let p = problem(PotentialKind::None, 1.0, 0);
    let below = integrate(&p, 1.98).unwrap();
    let above = integrate(&p, 2.02).unwrap();
    assert!(below.mismatch.signum() != above.mismatch.signum());
    assert_eq!(below.nodes, 0);
    assert_eq!(above.nodes, 1);
    let at = integrate(&p, 2.0).unwrap();
    assert!(at.mismatch.abs() < 1e-3 * below.mismatch.abs().min(above.mismatch.abs()) * 10.0);
}

#[test]
fn coulomb_at_half_gives_nodeless_state_at_two() {
    let p = problem(PotentialKind::Coulomb, 0.5, 0);
    let states = find_eigenvalues(&SpectrumRequest::new(p, 0.0, 3.0)).unwrap();
    assert!((states[0].eta - 2.0).abs() < 1e-4, "{}", states[0].eta);
    assert_eq!(states[0].nodes, 0);
    assert_eq!(states[0].wave.sign_changes(), 0);
}

#[test]
fn forbidden_everywhere_has_no_nodes() {
    let p = problem(PotentialKind::None, 1.0, 1);
    let signs: Vec<f64> = [-50.0, -10.0, -1.0, 0.0]
        .iter()
        .map(|&eta| {
            let shot = integrate(&p, eta).unwrap();
            assert_eq!(shot.nodes, 0);
            shot.mismatch.signum()
        })
        .collect();
    assert!(signs.iter().all(|s| *s == signs[0]));
}

#[test]
fn deep_sweeps_rescale_instead_of_overflowing() {
    let p = problem(PotentialKind::None, 1.0, 3)
        .with_grid(1e-3, 60.0, 20000)
        .unwrap();
    let shot = integrate(&p, -200.0).unwrap();
    assert!(shot.rescales > 0);
    assert!(shot.samples.iter().all(|v| v.is_finite()));
    assert!(matches!(integrate(&p, f64::NAN), Err(Error::Argument(_))));
}

#[test]
fn oscillator_levels_for_several_frequencies() {
    for omega in [0.01, 0.1, 1.0] {
        for l in 0..3 {
            let top = oscillator(4, l, omega) + 2.0 * omega;
            let states =
                find_eigenvalues(&SpectrumRequest::new(problem(PotentialKind::None, omega, l), 0.0, top)).unwrap();
            assert_eq!(states.len(), 5, "omega={omega} l={l}");
            for (k, s) in states.iter().enumerate() {
                let exact = oscillator(k, l, omega);
                assert!(
                    (s.eta / exact - 1.0).abs() < 1e-4,
                    "omega={omega} l={l} k={k}: {}",
                    s.eta
                );
                assert_eq!(s.nodes, k);
            }
        }
    }
}

#[test]
fn coulomb_spectrum_at_small_frequency() {
    let states = find_eigenvalues(&SpectrumRequest::new(
        problem(PotentialKind::Coulomb, 0.01, 0),
        0.0,
        0.3,
    ))
    .unwrap();
    let expected = [0.1048158, 0.1403798, 0.1766718, 0.2135152, 0.2507854, 0.2883930];
    assert_eq!(states.len(), expected.len());
    for (s, e) in states.iter().zip(expected) {
        assert!((s.eta - e).abs() < 2e-6, "{} vs {e}", s.eta);
    }
}

#[test]
fn wavefunctions_are_normalised_and_positive_near_origin() {
    let states = find_eigenvalues(&SpectrumRequest::new(problem(PotentialKind::Log, 0.01, 0), 0.0, 2.0)).unwrap();
    assert!(!states.is_empty());
    for s in &states {
        assert!((norm_squared(&s.wave) - 1.0).abs() < 1e-6);
        assert!(s.wave.values[1] > 0.0);
    }
}

#[test]
fn halving_the_step_barely_moves_levels() {
    let tol = 1e-6;
    for kind in [PotentialKind::Coulomb, PotentialKind::None] {
        let coarse = problem(kind, 0.1, 1);
        let fine = coarse.with_steps(2 * coarse.steps - 1).unwrap();
        let a = find_eigenvalues(&SpectrumRequest::new(coarse, 0.0, 2.0).with_tol(tol)).unwrap();
        let b = find_eigenvalues(&SpectrumRequest::new(fine, 0.0, 2.0).with_tol(tol)).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x.eta - y.eta).abs() < 10.0 * tol, "{kind}: {} vs {}", x.eta, y.eta);
        }
    }
}

#[test]
fn max_states_truncates_from_below() {
    let p = problem(PotentialKind::None, 0.1, 0);
    let states = find_eigenvalues(&SpectrumRequest::new(p, 0.0, 2.0).with_max_states(2)).unwrap();
    assert_eq!(states.len(), 2);
    assert!((states[1].eta - 0.6).abs() < 1e-4);
}

#[test]
fn empty_window_is_not_an_error() {
    let p = problem(PotentialKind::None, 0.1, 0);
    assert!(find_eigenvalues(&SpectrumRequest::new(p, 0.21, 0.59))
        .unwrap()
        .is_empty());
}

#[test]
fn invalid_requests_are_rejected() {
    let p = problem(PotentialKind::None, 0.1, 0);
    assert!(find_eigenvalues(&SpectrumRequest::new(p, 1.0, 1.0)).is_err());
    assert!(find_eigenvalues(&SpectrumRequest::new(p, 0.0, 1.0).with_max_states(0)).is_err());
    assert!(find_eigenvalues(&SpectrumRequest::new(p, 0.0, 1.0).with_tol(0.0)).is_err());
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let p = problem(PotentialKind::Coulomb, 0.05, 2);
    let parallel = find_eigenvalues(&SpectrumRequest::new(p, 0.0, 1.5)).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| find_eigenvalues(&SpectrumRequest::new(p, 0.0, 1.5)).unwrap());
    assert_eq!(parallel, serial);
}

#[test]
fn bound_states_require_s_waves() {
    for kind in [PotentialKind::Coulomb, PotentialKind::Log] {
        let err = bound_states(&problem(kind, 0.01, 1), -100.0).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }
    let p = problem(PotentialKind::Coulomb, 0.01, 0);
    assert!(matches!(bound_states(&p, 0.0), Err(Error::Argument(_))));
}

#[test]
fn bound_states_move_with_the_cutoff() {
    let energies: Vec<f64> = [1.0e-3, 1.585e-3, 1.995e-3]
        .iter()
        .map(|&r_min| {
            let p = problem(PotentialKind::Coulomb, 0.01, 0).with_r_min(r_min).unwrap();
            let b = bound_states(&p, -5000.0).unwrap();
            assert_eq!(b.r_min, r_min);
            assert!(!b.states.is_empty());
            b.states[0].eta
        })
        .collect();
    assert!(energies[0] < energies[1] && energies[1] < energies[2], "{energies:?}");
    assert!((energies[2] + 53.5).abs() < 1.0, "{energies:?}");
}

#[test]
fn no_negative_levels_above_s_waves() {
    // with the spectrum search itself, on both inner boundaries
    for kind in [PotentialKind::Coulomb, PotentialKind::Log] {
        for l in 1..3 {
            // seeding at 1e-3 would put the centrifugal wall beyond what one step resolves
            for (inner, r_min) in [(InnerBoundary::Regular, 1e-3), (InnerBoundary::CutoffSeed, 3e-2)] {
                let p = problem(kind, 0.01, l).with_inner(inner).with_r_min(r_min).unwrap();
                let states = find_eigenvalues(&SpectrumRequest::new(p, -50.0, 0.0)).unwrap();
                assert!(states.is_empty(), "{kind} l={l} {inner:?}: {:?}", states[0].eta);
            }
        }
    }
}
