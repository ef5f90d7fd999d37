//! Runtime self-test: the observable-basis trace identities on random
//! states, the closed-form family purities, and the equivalence of the
//! Bernoulli sampling probability with the explicit two-copy swap projector.

use crate::estimate;
use crate::loo::{self, LooBasis};
use crate::qmat::Wing;
use crate::states::{self, FamilySpec};
use crate::{IDENTITY_TOL, VALIDATION_TOL};

/// Outcome of one self-test suite.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Serialized worst-case state, present only on failure.
    pub failing_case: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

#[derive(Debug, Clone, Copy)]
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) enum Fault {
    /// Scales one observable of every basis, breaking orthonormality.
    UnnormalizedObservable,
}

/// Runs all suites with the given base seed.
pub fn run(seed: u64) -> SelftestReport {
    run_with_fault(seed, None)
}

pub(crate) fn run_with_fault(seed: u64, fault: Option<Fault>) -> SelftestReport {
    SelftestReport {
        suites: vec![
            loo_identity_suite(seed, fault),
            family_purity_suite(),
            swap_projection_suite(seed),
        ],
    }
}

const STATES_PER_BIPARTITION: u64 = 25;

fn loo_identity_suite(seed: u64, fault: Option<Fault>) -> SuiteResult {
    let mut max_residual = 0.0f64;
    let mut worst: Option<(usize, usize, u64)> = None;
    for da in 2..=4usize {
        for db in 2..=4usize {
            let mut basis_a = LooBasis::build(da).expect("d >= 2");
            let basis_b = LooBasis::build(db).expect("d >= 2");
            if matches!(fault, Some(Fault::UnnormalizedObservable)) {
                basis_a.scale_observable(0, 1.1);
            }
            for k in 0..STATES_PER_BIPARTITION {
                let case_seed = seed
                    .wrapping_mul(1_000_003)
                    .wrapping_add((da * 16 + db) as u64 * 4099)
                    .wrapping_add(k);
                let rho = states::random_density(da, db, case_seed).expect("valid dims");
                let corr = loo::correlation_sum_with_bases(&rho, &basis_a, &basis_b);
                let marg_b = loo::marginal_sum(&rho, Wing::B).expect("valid dims");
                let marg_a = loo::marginal_sum(&rho, Wing::A).expect("valid dims");
                let residual = (corr - rho.purity())
                    .abs()
                    .max((marg_b - rho.partial_trace(Wing::A).purity()).abs())
                    .max((marg_a - rho.partial_trace(Wing::B).purity()).abs());
                if residual > max_residual {
                    max_residual = residual;
                    worst = Some((da, db, case_seed));
                }
            }
        }
    }
    let passed = max_residual <= VALIDATION_TOL;
    SuiteResult {
        name: "loo-identity",
        max_residual,
        tolerance: VALIDATION_TOL,
        passed,
        failing_case: if passed {
            None
        } else {
            worst.map(|(da, db, s)| {
                states::random_density(da, db, s)
                    .expect("valid dims")
                    .to_json_string()
            })
        },
    }
}

fn family_purity_suite() -> SuiteResult {
    let mut max_residual = 0.0f64;
    let mut worst: Option<FamilySpec> = None;
    let mut record = |family: FamilySpec, want: f64| {
        let rho = family.build().expect("parameters in range");
        let residual = (rho.purity() - want).abs();
        if residual > max_residual {
            max_residual = residual;
            worst = Some(family);
        }
    };
    for i in 0..=100u32 {
        let p = i as f64 / 100.0;
        record(FamilySpec::Werner { p }, 0.75 * p * p + 0.25);
        record(
            FamilySpec::AsymmetricNoisySinglet { p },
            p * p + p * (1.0 - p) / 3.0 + 5.0 * (1.0 - p) * (1.0 - p) / 9.0,
        );
        record(
            FamilySpec::FreeEntangled { p },
            (4.0 * p * p - 2.0 * p + 1.0) / 3.0,
        );
        for d in [2usize, 3, 4] {
            let dd = (d * d) as f64;
            record(
                FamilySpec::Isotropic { p, d },
                (dd - 1.0) * p * p / dd + 1.0 / dd,
            );
        }
    }
    let grid = [-0.9, -0.5, 0.0, 0.4, 0.8];
    for &c1 in &grid {
        for &c2 in &grid {
            for &c3 in &grid {
                if states::bell_diagonal(c1, c2, c3).is_ok() {
                    record(
                        FamilySpec::BellDiagonal { c: [c1, c2, c3] },
                        (1.0 + c1 * c1 + c2 * c2 + c3 * c3) / 4.0,
                    );
                }
            }
        }
    }
    let passed = max_residual <= IDENTITY_TOL;
    SuiteResult {
        name: "family-purity",
        max_residual,
        tolerance: IDENTITY_TOL,
        passed,
        failing_case: if passed {
            None
        } else {
            worst.map(|f| f.build().expect("parameters in range").to_json_string())
        },
    }
}

fn swap_projection_suite(seed: u64) -> SuiteResult {
    let mut max_residual = 0.0f64;
    let mut worst: Option<String> = None;
    let mut check = |m: &crate::ComplexMatrix| {
        let fast = estimate::antisymmetric_probability(m).expect("valid state");
        let slow = estimate::antisymmetric_probability_via_swap(m).expect("small dims");
        let residual = (fast - slow).abs();
        if residual > max_residual {
            max_residual = residual;
        }
        residual
    };
    for i in 0..=10u32 {
        let p = i as f64 / 10.0;
        let w = states::werner(p).expect("p in range");
        check(w.matrix());
        let f = states::free_entangled(p).expect("p in range");
        check(f.matrix());
    }
    for k in 0..10u64 {
        let rho = states::random_density(2, 3, seed.wrapping_add(k)).expect("valid dims");
        let residual = check(rho.matrix());
        if residual > IDENTITY_TOL {
            worst = Some(rho.to_json_string());
        }
    }
    let passed = max_residual <= IDENTITY_TOL;
    SuiteResult {
        name: "swap-projection",
        max_residual,
        tolerance: IDENTITY_TOL,
        passed,
        failing_case: if passed { None } else { worst },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_run_passes_with_small_residuals() {
        let report = run(0);
        assert!(report.passed());
        assert_eq!(report.suites.len(), 3);
        assert!(report.suites[0].max_residual < 1e-9);
        assert!(report.suites[1].max_residual < 1e-12);
        assert!(report.suites[2].max_residual < 1e-12);
    }

    #[test]
    fn runs_are_deterministic_in_the_seed() {
        let a = run(7);
        let b = run(7);
        for (x, y) in a.suites.iter().zip(&b.suites) {
            assert_eq!(x.max_residual, y.max_residual);
        }
    }

    #[test]
    fn unnormalized_observable_is_caught() {
        let report = run_with_fault(0, Some(Fault::UnnormalizedObservable));
        assert!(!report.passed());
        let suite = &report.suites[0];
        assert!(!suite.passed);
        assert!(suite.max_residual > VALIDATION_TOL);
        assert!(suite.failing_case.is_some());
    }
}
