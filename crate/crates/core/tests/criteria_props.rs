//! Behavioral properties of the verdicts: agreement with the observable-sum
//! route, the pure-state dichotomy, and invariance under local unitaries.

mod common;

use common::{assert_unitary, random_unitary};
use steer_core::criteria::{purity_criterion, Direction};
use steer_core::{loo, states, DensityMatrix, Wing, VALIDATION_TOL};

#[test]
fn margin_agrees_with_the_observable_sums() {
    for (da, db) in [(2usize, 2usize), (2, 3), (3, 3)] {
        for seed in 0..30u64 {
            let rho = states::random_density(da, db, seed).unwrap();
            let margin = purity_criterion(&rho, Direction::AtoB).margin;
            let via_sums = loo::correlation_sum(&rho).unwrap()
                - loo::marginal_sum(&rho, Wing::B).unwrap();
            assert!((margin - via_sums).abs() <= 1e-9);
        }
    }
}

/// Schmidt rank proxy: count of marginal eigenvalues above tolerance.
fn schmidt_rank(rho: &DensityMatrix) -> usize {
    rho.partial_trace(Wing::B)
        .matrix()
        .hermitian_eigenvalues()
        .unwrap()
        .iter()
        .filter(|&&x| x > 1e-9)
        .count()
}

#[test]
fn pure_states_split_cleanly_by_schmidt_rank() {
    let combos = [(2usize, 2usize), (2, 3), (3, 3), (3, 4)];
    for (i, &(da, db)) in combos.iter().cycle().take(100).enumerate() {
        let entangled = states::random_pure(da, db, i as u64, false).unwrap();
        assert!(schmidt_rank(&entangled) > 1);
        for direction in [Direction::AtoB, Direction::BtoA] {
            let v = purity_criterion(&entangled, direction);
            assert!(v.detected, "entangled pure state missed at {da}x{db} seed {i}");
        }

        let product = states::random_pure(da, db, i as u64 + 10_000, true).unwrap();
        assert_eq!(schmidt_rank(&product), 1);
        for direction in [Direction::AtoB, Direction::BtoA] {
            let v = purity_criterion(&product, direction);
            assert!(!v.detected);
            assert!(v.margin.abs() <= 1e-9);
        }
    }
}

#[test]
fn verdicts_are_invariant_under_local_unitaries() {
    for (da, db) in [(2usize, 2usize), (2, 3), (3, 3)] {
        for seed in 0..10u64 {
            let rho = states::random_density(da, db, seed).unwrap();
            let ua = random_unitary(da, 1000 + seed);
            let ub = random_unitary(db, 2000 + seed);
            assert_unitary(&ua);
            assert_unitary(&ub);
            let u = ua.kron(&ub).unwrap();
            let rotated = u.matmul(rho.matrix()).matmul(&u.dagger());
            let rotated = DensityMatrix::new(rotated, da, db).unwrap();
            for direction in [Direction::AtoB, Direction::BtoA] {
                let before = purity_criterion(&rho, direction);
                let after = purity_criterion(&rotated, direction);
                assert!((before.margin - after.margin).abs() <= 1e-9);
                assert_eq!(before.detected, after.detected);
            }
        }
    }
}

#[test]
fn detection_tolerance_is_strict_and_configurable() {
    // margin exactly at the tolerance must not fire
    let rho = states::werner(0.0).unwrap();
    let v = purity_criterion(&rho, Direction::AtoB);
    assert!(!v.detected);
    assert_eq!(v.tolerance, VALIDATION_TOL);

    let wide = steer_core::criteria::purity_criterion_with(
        &states::werner(0.8).unwrap(),
        Direction::AtoB,
        0.5,
    );
    assert!(!wide.detected, "margin 0.23 must not clear a 0.5 tolerance");
}
