use concur_core::fock::{evolve_vacuum, exact_photon_number, exact_variance, FockConfig};
use concur_core::gaussian::{evolve, joint_variance, CouplingMatrix, GaussianState, JointQuadrature};
use proptest::prelude::*;

fn two_mode(kappa: f64) -> CouplingMatrix {
    CouplingMatrix::from_rows(&[vec![0.0, kappa], vec![kappa, 0.0]]).unwrap()
}

#[test]
fn two_mode_photon_number_is_sinh_squared() {
    for kt in [0.1, 0.2, 0.3] {
        let n = exact_photon_number(&two_mode(1.0), 0, kt, &FockConfig::new(2)).unwrap();
        assert!(n.converged);
        assert!((n.value - kt.sinh().powi(2)).abs() < 1e-10, "{kt}: {}", n.value);
    }
    let n = exact_photon_number(&two_mode(1.0), 1, 0.3, &FockConfig::new(2)).unwrap().value;
    assert!((n - 0.0927326).abs() < 1e-6);
}

#[test]
fn truncation_too_coarse_is_flagged() {
    let cfg = FockConfig::new(2).with_cutoff(2);
    let q = JointQuadrature::x_difference(2, 0, 1).unwrap();
    let v = exact_variance(&two_mode(1.0), &q, 0.9, &FockConfig { max_exponent: 1.0, ..cfg }).unwrap();
    assert!(!v.converged);
}

#[test]
fn oversized_requests_are_range_errors() {
    let g = two_mode(1.0);
    assert!(matches!(evolve_vacuum(&g, 2.0, &FockConfig::new(2)), Err(concur_core::Error::Range(_))));
    let four = CouplingMatrix::zeros(4).unwrap();
    assert!(matches!(evolve_vacuum(&four, 0.1, &FockConfig::new(4)), Err(concur_core::Error::Range(_))));
}

fn three_mode() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-0.5f64..0.5, 6)
}

fn from_upper(v: &[f64], perm: [usize; 3]) -> CouplingMatrix {
    let full = [[v[0], v[1], v[2]], [v[1], v[3], v[4]], [v[2], v[4], v[5]]];
    let rows: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| full[perm[i]][perm[j]]).collect()).collect();
    CouplingMatrix::from_rows(&rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn norm_is_preserved_and_matches_gaussian(v in three_mode(), t in 0.05f64..0.3) {
        let g = from_upper(&v, [0, 1, 2]);
        let cfg = FockConfig::new(3).with_cutoff(10);
        let psi = evolve_vacuum(&g, t, &cfg).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() < 1e-10);
        let gs = evolve(&GaussianState::vacuum(3), &g, t).unwrap();
        for q in [JointQuadrature::p_sum(3).unwrap(), JointQuadrature::x_difference(3, 0, 2).unwrap()] {
            prop_assert!((psi.variance(&q).unwrap() - joint_variance(&gs, &q).unwrap()).abs() < 1e-3);
        }
    }

    #[test]
    fn relabelling_modes_permutes_results(v in three_mode(), t in 0.05f64..0.3) {
        let perm = [2, 0, 1];
        let cfg = FockConfig::new(3).with_cutoff(8);
        let a = evolve_vacuum(&from_upper(&v, [0, 1, 2]), t, &cfg).unwrap();
        let b = evolve_vacuum(&from_upper(&v, perm), t, &cfg).unwrap();
        for (i, &p) in perm.iter().enumerate() {
            prop_assert!((b.photon_number(i).unwrap() - a.photon_number(p).unwrap()).abs() < 1e-12);
        }
    }
}
