//! Family constructors: grid validation, closed-form purities and the
//! Bell-diagonal tetrahedron.

use steer_core::{states, Error, FamilySpec, Wing, IDENTITY_TOL, VALIDATION_TOL};

#[test]
fn every_family_validates_across_the_parameter_grid() {
    for i in 0..=100u32 {
        let p = i as f64 / 100.0;
        for family in [
            FamilySpec::Werner { p },
            FamilySpec::AsymmetricNoisySinglet { p },
            FamilySpec::FreeEntangled { p },
            FamilySpec::Isotropic { p, d: 2 },
            FamilySpec::Isotropic { p, d: 3 },
            FamilySpec::Isotropic { p, d: 4 },
        ] {
            family
                .build()
                .unwrap_or_else(|e| panic!("{} failed at p={p}: {e}", family.name()));
        }
    }
}

#[test]
fn closed_form_purities_hold_to_identity_tolerance() {
    for i in 0..=100u32 {
        let p = i as f64 / 100.0;
        let w = states::werner(p).unwrap();
        assert!((w.purity() - (0.75 * p * p + 0.25)).abs() <= IDENTITY_TOL);

        let asym = states::asymmetric_noisy_singlet(p).unwrap();
        let want = p * p + p * (1.0 - p) / 3.0 + 5.0 * (1.0 - p) * (1.0 - p) / 9.0;
        assert!((asym.purity() - want).abs() <= IDENTITY_TOL);

        let free = states::free_entangled(p).unwrap();
        assert!((free.purity() - (4.0 * p * p - 2.0 * p + 1.0) / 3.0).abs() <= IDENTITY_TOL);

        for d in [2usize, 3, 4] {
            let iso = states::isotropic(p, d).unwrap();
            let dd = (d * d) as f64;
            assert!((iso.purity() - ((dd - 1.0) * p * p / dd + 1.0 / dd)).abs() <= IDENTITY_TOL);
            assert!((iso.partial_trace(Wing::A).purity() - 1.0 / d as f64).abs() <= IDENTITY_TOL);
        }
    }
}

#[test]
fn isotropic_at_d2_is_the_werner_family() {
    for i in 0..=100u32 {
        let p = i as f64 / 100.0;
        let iso = states::isotropic(p, 2).unwrap();
        let w = states::werner(p).unwrap();
        assert!(iso.matrix().max_abs_diff(w.matrix()) <= IDENTITY_TOL);
    }
}

#[test]
fn bell_diagonal_acceptance_matches_the_tetrahedron() {
    // 11^3 grid over the coefficient cube
    for i in 0..=10i32 {
        for j in 0..=10i32 {
            for k in 0..=10i32 {
                let c1 = -1.0 + 0.2 * i as f64;
                let c2 = -1.0 + 0.2 * j as f64;
                let c3 = -1.0 + 0.2 * k as f64;
                let eigs = [
                    (1.0 - c1 - c2 - c3) / 4.0,
                    (1.0 - c1 + c2 + c3) / 4.0,
                    (1.0 + c1 - c2 + c3) / 4.0,
                    (1.0 + c1 + c2 - c3) / 4.0,
                ];
                let physical = eigs.iter().all(|&e| e >= -VALIDATION_TOL);
                match states::bell_diagonal(c1, c2, c3) {
                    Ok(rho) => {
                        assert!(physical, "accepted unphysical triple ({c1},{c2},{c3})");
                        // eigenvalues computed numerically must match the formula
                        let mut want = eigs;
                        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
                        let got = rho.matrix().hermitian_eigenvalues().unwrap();
                        for (g, w) in got.iter().zip(want) {
                            assert!((g - w).abs() <= 1e-12);
                        }
                    }
                    Err(Error::Validation(_)) => {
                        assert!(!physical, "rejected physical triple ({c1},{c2},{c3})")
                    }
                    Err(other) => panic!("unexpected error: {other}"),
                }
            }
        }
    }
}

#[test]
fn random_states_have_interior_purities() {
    for seed in 0..200u64 {
        let rho = states::random_density(2, 2, seed).unwrap();
        let p = rho.purity();
        assert!(p > 0.25 && p < 1.0, "purity {p} escaped the open interval");
    }
}
