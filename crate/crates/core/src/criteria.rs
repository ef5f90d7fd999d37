//! Steering verdicts.
//!
//! The purity comparison detects steering from Alice to Bob whenever
//! `tr(ρ²) > tr(ρ_B²)`; a positive margin certifies steering (and hence
//! entanglement), a non-positive margin decides nothing. For two qubits the
//! Pauli correlation test `Σ_ij ⟨σ_i⊗σ_j⟩² > 1` is reported alongside.

use serde::Serialize;

use crate::qmat::{paulis, ComplexMatrix, DensityMatrix, Wing};
use crate::{Error, Result, VALIDATION_TOL};

/// Steering direction: which party steers which.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    AtoB,
    BtoA,
}

impl Direction {
    /// Wing traced away to obtain the reduced state the criterion compares
    /// against (steering A→B compares with Bob's marginal).
    pub fn traced_wing(self) -> Wing {
        match self {
            Direction::AtoB => Wing::A,
            Direction::BtoA => Wing::B,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Direction::AtoB => "a-to-b",
            Direction::BtoA => "b-to-a",
        }
    }
}

/// Which test produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionKind {
    Purity,
    /// Two-qubit Pauli correlation-square test; direction-symmetric.
    PauliCorrelation,
}

/// Outcome of one criterion evaluation. `detected = false` means "not
/// detected by this criterion", never "proven unsteerable".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringVerdict {
    /// `None` for the direction-symmetric Pauli correlation test.
    pub direction: Option<Direction>,
    pub detected: bool,
    pub margin: f64,
    pub criterion: CriterionKind,
    /// Strict-inequality cutoff used for the decision.
    pub tolerance: f64,
}

impl SteeringVerdict {
    /// True when the margin sits inside the tolerance band around zero.
    pub fn is_boundary(&self) -> bool {
        self.margin.abs() <= self.tolerance
    }
}

/// Purity comparison at the default tolerance.
pub fn purity_criterion(rho: &DensityMatrix, direction: Direction) -> SteeringVerdict {
    purity_criterion_with(rho, direction, VALIDATION_TOL)
}

/// Purity comparison `tr(ρ²) - tr(ρ_reduced²)` with an explicit tolerance.
pub fn purity_criterion_with(
    rho: &DensityMatrix,
    direction: Direction,
    tolerance: f64,
) -> SteeringVerdict {
    let joint = rho.purity();
    let reduced = rho.partial_trace(direction.traced_wing()).purity();
    let margin = joint - reduced;
    SteeringVerdict {
        direction: Some(direction),
        detected: margin > tolerance,
        margin,
        criterion: CriterionKind::Purity,
        tolerance,
    }
}

/// Two-qubit Pauli correlation test `S = Σ_ij ⟨σ_i⊗σ_j⟩²` with margin
/// `S - 1`, at the default tolerance.
pub fn pauli_correlation_criterion(rho: &DensityMatrix) -> Result<SteeringVerdict> {
    pauli_correlation_criterion_with(rho, VALIDATION_TOL)
}

/// [`pauli_correlation_criterion`] with an explicit tolerance.
pub fn pauli_correlation_criterion_with(
    rho: &DensityMatrix,
    tolerance: f64,
) -> Result<SteeringVerdict> {
    if rho.dim_a() != 2 || rho.dim_b() != 2 {
        return Err(Error::NotTwoQubit {
            dim_a: rho.dim_a(),
            dim_b: rho.dim_b(),
        });
    }
    let sigmas = paulis();
    let mut s = 0.0;
    for si in &sigmas {
        for sj in &sigmas {
            let v = real_product_expectation(rho.matrix(), si, sj);
            s += v * v;
        }
    }
    let margin = s - 1.0;
    Ok(SteeringVerdict {
        direction: None,
        detected: margin > tolerance,
        margin,
        criterion: CriterionKind::PauliCorrelation,
        tolerance,
    })
}

/// `Re tr(ρ (A⊗B))` for 2x2 factors on a 4x4 state.
fn real_product_expectation(rho: &ComplexMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let mut acc = crate::qmat::cx(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    acc += rho.get(i * 2 + k, j * 2 + l) * a.get(j, i) * b.get(l, k);
                }
            }
        }
    }
    acc.re
}

/// Joint and reduced purities of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Purities {
    pub joint: f64,
    pub a: f64,
    pub b: f64,
}

/// Bundle of every criterion evaluated on one state.
///
/// `entanglement_certified` is set when any detection fired; steerable states
/// are entangled, so a positive verdict doubles as an entanglement witness.
#[derive(Debug, Clone, PartialEq)]
pub struct FullReport {
    pub a_to_b: Option<SteeringVerdict>,
    pub b_to_a: Option<SteeringVerdict>,
    /// Present only for 2x2 bipartitions.
    pub pauli_correlation: Option<SteeringVerdict>,
    pub purities: Purities,
    pub entanglement_certified: bool,
}

/// Which purity-criterion directions a report should evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionFilter {
    Both,
    One(Direction),
}

impl DirectionFilter {
    fn includes(self, direction: Direction) -> bool {
        match self {
            DirectionFilter::Both => true,
            DirectionFilter::One(d) => d == direction,
        }
    }
}

/// Evaluates both purity directions plus the two-qubit test where it applies.
pub fn full_report(rho: &DensityMatrix) -> FullReport {
    full_report_with(rho, DirectionFilter::Both, VALIDATION_TOL)
}

pub fn full_report_with(
    rho: &DensityMatrix,
    filter: DirectionFilter,
    tolerance: f64,
) -> FullReport {
    let a_to_b = filter
        .includes(Direction::AtoB)
        .then(|| purity_criterion_with(rho, Direction::AtoB, tolerance));
    let b_to_a = filter
        .includes(Direction::BtoA)
        .then(|| purity_criterion_with(rho, Direction::BtoA, tolerance));
    let pauli_correlation = (rho.dim_a() == 2 && rho.dim_b() == 2)
        .then(|| pauli_correlation_criterion_with(rho, tolerance).expect("checked 2x2"));
    let purities = Purities {
        joint: rho.purity(),
        a: rho.partial_trace(Wing::B).purity(),
        b: rho.partial_trace(Wing::A).purity(),
    };
    let entanglement_certified = [&a_to_b, &b_to_a, &pauli_correlation]
        .into_iter()
        .flatten()
        .any(|v| v.detected);
    FullReport {
        a_to_b,
        b_to_a,
        pauli_correlation,
        purities,
        entanglement_certified,
    }
}

#[derive(Serialize)]
struct VerdictDto {
    detected: bool,
    margin: f64,
}

#[derive(Serialize)]
struct ReportDto {
    a_to_b: Option<VerdictDto>,
    b_to_a: Option<VerdictDto>,
    lemma1: Option<VerdictDto>,
    purities: Purities,
    entanglement_certified: bool,
}

impl FullReport {
    /// Wire format:
    /// `{"a_to_b": {"detected", "margin"}, "b_to_a": {...}, "lemma1": {...}|null,
    ///   "purities": {"joint", "a", "b"}, "entanglement_certified": bool}`.
    pub fn to_json(&self) -> serde_json::Value {
        let dto = |v: &Option<SteeringVerdict>| {
            v.map(|v| VerdictDto {
                detected: v.detected,
                margin: v.margin,
            })
        };
        serde_json::to_value(ReportDto {
            a_to_b: dto(&self.a_to_b),
            b_to_a: dto(&self.b_to_a),
            lemma1: dto(&self.pauli_correlation),
            purities: self.purities,
            entanglement_certified: self.entanglement_certified,
        })
        .expect("plain report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::cx;
    use crate::states;

    #[test]
    fn werner_margins_match_the_closed_form() {
        let detected = purity_criterion(&states::werner(0.8).unwrap(), Direction::AtoB);
        assert!(detected.detected);
        assert!((detected.margin - 0.23).abs() < 1e-12);

        let missed = purity_criterion(&states::werner(0.5).unwrap(), Direction::AtoB);
        assert!(!missed.detected);
        assert!((missed.margin + 0.0625).abs() < 1e-12);
    }

    #[test]
    fn pure_product_state_sits_on_the_boundary() {
        let mut m = ComplexMatrix::zeros(4, 4);
        m.set(0, 0, cx(1.0, 0.0));
        let rho = DensityMatrix::new(m, 2, 2).unwrap();
        for direction in [Direction::AtoB, Direction::BtoA] {
            let v = purity_criterion(&rho, direction);
            assert!(!v.detected);
            assert!(v.margin.abs() < 1e-12);
            assert!(v.is_boundary());
        }
    }

    #[test]
    fn pauli_correlation_on_werner_is_three_p_squared() {
        for p in [0.0, 0.2, 0.5773502691896258, 0.7, 1.0] {
            let v = pauli_correlation_criterion(&states::werner(p).unwrap()).unwrap();
            assert!((v.margin - (3.0 * p * p - 1.0)).abs() < 1e-12);
            assert_eq!(v.detected, 3.0 * p * p - 1.0 > VALIDATION_TOL);
        }
        let bell = pauli_correlation_criterion(&states::werner(1.0).unwrap()).unwrap();
        assert!((bell.margin - 2.0).abs() < 1e-12 && bell.detected);
    }

    #[test]
    fn pauli_correlation_requires_two_qubits() {
        let qutrit = states::isotropic(0.9, 3).unwrap();
        assert!(matches!(
            pauli_correlation_criterion(&qutrit),
            Err(Error::NotTwoQubit { .. })
        ));
    }

    #[test]
    fn report_counts_one_way_detections() {
        let both = full_report(&states::asymmetric_noisy_singlet(0.9).unwrap());
        assert!(both.a_to_b.unwrap().detected && both.b_to_a.unwrap().detected);
        assert!(both.entanglement_certified);

        let one_way = full_report(&states::asymmetric_noisy_singlet(0.6).unwrap());
        assert!(one_way.a_to_b.unwrap().detected);
        assert!(!one_way.b_to_a.unwrap().detected);
        assert!(one_way.entanglement_certified);

        let nothing = full_report(&states::werner(0.0).unwrap());
        assert!(!nothing.a_to_b.unwrap().detected);
        assert!(!nothing.b_to_a.unwrap().detected);
        assert!(!nothing.pauli_correlation.unwrap().detected);
        assert!(!nothing.entanglement_certified);
    }

    #[test]
    fn report_serializes_to_the_pinned_schema() {
        let report = full_report(&states::werner(0.8).unwrap());
        let v = report.to_json();
        assert_eq!(v["a_to_b"]["detected"], serde_json::json!(true));
        assert!((v["a_to_b"]["margin"].as_f64().unwrap() - 0.23).abs() < 1e-12);
        assert!(v["lemma1"].is_object());
        assert!((v["purities"]["joint"].as_f64().unwrap() - 0.73).abs() < 1e-12);
        assert_eq!(v["entanglement_certified"], serde_json::json!(true));

        let qutrit = full_report(&states::isotropic(0.2, 3).unwrap());
        assert!(qutrit.to_json()["lemma1"].is_null());
    }

    #[test]
    fn bell_diagonal_margins_share_a_sign() {
        let grid = [-0.9, -0.5, -0.1, 0.2, 0.6, 0.9];
        for &c1 in &grid {
            for &c2 in &grid {
                for &c3 in &grid {
                    let Ok(rho) = states::bell_diagonal(c1, c2, c3) else {
                        continue;
                    };
                    let s = c1 * c1 + c2 * c2 + c3 * c3;
                    let pauli = pauli_correlation_criterion(&rho).unwrap();
                    let purity = purity_criterion(&rho, Direction::AtoB);
                    assert!((pauli.margin - (s - 1.0)).abs() < 1e-12);
                    assert!((purity.margin - (s - 1.0) / 4.0).abs() < 1e-12);
                }
            }
        }
    }
}
