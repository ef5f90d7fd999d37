//! Threshold search and parameter sweeps: bisection on the detection margin,
//! the Bell-diagonal region grid and the isotropic threshold curve.

use crate::criteria::{purity_criterion_with, Direction};
use crate::states::FamilySpec;
use crate::{Error, Result, VALIDATION_TOL};

/// Final bisection bracket width.
pub const BRACKET_WIDTH: f64 = 1e-9;

const DEFAULT_PRESCAN_POINTS: usize = 101;

/// A literal comparison value with its provenance label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnotatedConstant {
    pub value: f64,
    pub label: &'static str,
    pub source: &'static str,
}

/// Reported comparison thresholds carried as data, not recomputed.
pub mod refs {
    use super::AnnotatedConstant;

    pub const WERNER_PURITY: AnnotatedConstant = AnnotatedConstant {
        value: 0.5773502691896258,
        label: "werner detection threshold sqrt(3)/3",
        source: "purity criterion, closed form",
    };
    pub const WERNER_LHS_BOUND: AnnotatedConstant = AnnotatedConstant {
        value: 0.5,
        label: "werner steerability bound",
        source: "optimal LHS-model bound",
    };
    pub const WERNER_SEPARABILITY: AnnotatedConstant = AnnotatedConstant {
        value: 0.3333333333333333,
        label: "werner separability boundary",
        source: "partial-transpose bound",
    };
    pub const ASYM_PURITY_A_TO_B: AnnotatedConstant = AnnotatedConstant {
        value: 0.572,
        label: "asymmetric-singlet threshold, first direction",
        source: "purity criterion, reported to three decimals",
    };
    pub const ASYM_PURITY_B_TO_A: AnnotatedConstant = AnnotatedConstant {
        value: 0.645,
        label: "asymmetric-singlet threshold, second direction",
        source: "purity criterion, reported to three decimals",
    };
    pub const ASYM_LUR: [AnnotatedConstant; 2] = [
        AnnotatedConstant {
            value: 0.536,
            label: "asymmetric-singlet threshold, first direction",
            source: "local uncertainty relations criterion, reported value",
        },
        AnnotatedConstant {
            value: 0.582,
            label: "asymmetric-singlet threshold, second direction",
            source: "local uncertainty relations criterion, reported value",
        },
    ];
    pub const ASYM_ENTROPIC: [AnnotatedConstant; 2] = [
        AnnotatedConstant {
            value: 0.639,
            label: "asymmetric-singlet threshold, first direction",
            source: "entropic criterion with three mutually unbiased bases, reported value",
        },
        AnnotatedConstant {
            value: 0.604,
            label: "asymmetric-singlet threshold, second direction",
            source: "entropic criterion with three mutually unbiased bases, reported value",
        },
    ];
    pub const ASYM_CHSH: AnnotatedConstant = AnnotatedConstant {
        value: 0.748,
        label: "asymmetric-singlet threshold, both directions",
        source: "CHSH-type steering inequality, reported value",
    };
    pub const FREE_ENTANGLED_PURITY: AnnotatedConstant = AnnotatedConstant {
        value: 0.5,
        label: "free-entangled qutrit threshold",
        source: "purity criterion, closed form",
    };

    pub const ISOTROPIC_LHS_SOURCE: &str = "optimal LHS-model bound";

    /// Purity-criterion threshold `1/sqrt(d+1)` for the isotropic family.
    pub fn isotropic_purity_threshold(d: usize) -> f64 {
        1.0 / ((d as f64) + 1.0).sqrt()
    }

    /// Steerability bound `(Σ_{m=1..d} 1/m - 1)/(d - 1)` for the isotropic
    /// family.
    pub fn isotropic_lhs_bound(d: usize) -> f64 {
        let harmonic: f64 = (1..=d).map(|m| 1.0 / m as f64).sum();
        (harmonic - 1.0) / (d as f64 - 1.0)
    }

    /// The reported comparison value for one family/direction, when the
    /// sources carry one.
    pub fn purity_reference(
        family: &crate::states::FamilySpec,
        direction: crate::criteria::Direction,
    ) -> Option<AnnotatedConstant> {
        use crate::criteria::Direction::*;
        use crate::states::FamilySpec::*;
        match (family, direction) {
            (Werner { .. }, _) => Some(WERNER_PURITY),
            (AsymmetricNoisySinglet { .. }, AtoB) => Some(ASYM_PURITY_A_TO_B),
            (AsymmetricNoisySinglet { .. }, BtoA) => Some(ASYM_PURITY_B_TO_A),
            (Isotropic { d, .. }, _) => Some(AnnotatedConstant {
                value: isotropic_purity_threshold(*d),
                label: "isotropic detection threshold 1/sqrt(d+1)",
                source: "purity criterion, closed form",
            }),
            (FreeEntangled { .. }, _) => Some(FREE_ENTANGLED_PURITY),
            (BellDiagonal { .. }, _) => None,
        }
    }
}

/// Result of a bisection threshold search.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    pub family: FamilySpec,
    pub direction: Direction,
    pub critical_p: f64,
    /// Final bracket `(low, high)`, no wider than [`BRACKET_WIDTH`].
    pub bracket: (f64, f64),
    pub reference: Option<AnnotatedConstant>,
}

fn margin_at(family: &FamilySpec, direction: Direction, p: f64) -> Result<f64> {
    let rho = family.with_mixing(p)?.build()?;
    Ok(purity_criterion_with(&rho, direction, VALIDATION_TOL).margin)
}

/// Locates the single detection crossing of `f` on `[lo, hi]`.
///
/// A pre-scan over `points` grid values counts flag transitions; zero or
/// multiple transitions abort. Bisection then narrows the bracket to
/// [`BRACKET_WIDTH`].
fn bisect_detection(
    f: &mut dyn FnMut(f64) -> Result<bool>,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<(f64, f64)> {
    let n = points.max(2);
    let mut flags = Vec::with_capacity(n);
    for i in 0..n {
        let p = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        flags.push(f(p)?);
    }
    let transitions: Vec<usize> = (0..n - 1).filter(|&i| flags[i] != flags[i + 1]).collect();
    match transitions.len() {
        0 => Err(Error::NoCrossing {
            lo,
            hi,
            always_detected: flags[0],
        }),
        1 => {
            let i = transitions[0];
            let step = (hi - lo) / (n - 1) as f64;
            let mut a = lo + step * i as f64;
            let mut b = a + step;
            let flag_a = flags[i];
            while b - a > BRACKET_WIDTH {
                let mid = 0.5 * (a + b);
                if f(mid)? == flag_a {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            Ok((a, b))
        }
        k => Err(Error::MultipleCrossings { count: k, lo, hi }),
    }
}

/// Bisection threshold for a family/direction with the default pre-scan.
pub fn find_threshold(
    family: &FamilySpec,
    direction: Direction,
    p_lo: f64,
    p_hi: f64,
) -> Result<ThresholdResult> {
    find_threshold_with(family, direction, p_lo, p_hi, DEFAULT_PRESCAN_POINTS)
}

/// [`find_threshold`] with an explicit pre-scan resolution.
pub fn find_threshold_with(
    family: &FamilySpec,
    direction: Direction,
    p_lo: f64,
    p_hi: f64,
    prescan_points: usize,
) -> Result<ThresholdResult> {
    if !(0.0..=1.0).contains(&p_lo) || !(0.0..=1.0).contains(&p_hi) || p_lo >= p_hi {
        return Err(Error::ParameterRange {
            name: "p_lo..p_hi",
            value: p_lo,
            range: "0 <= p_lo < p_hi <= 1",
        });
    }
    let mut detect = |p: f64| -> Result<bool> {
        Ok(margin_at(family, direction, p)? > VALIDATION_TOL)
    };
    let bracket = bisect_detection(&mut detect, p_lo, p_hi, prescan_points)?;
    Ok(ThresholdResult {
        family: *family,
        direction,
        critical_p: 0.5 * (bracket.0 + bracket.1),
        bracket,
        reference: refs::purity_reference(family, direction),
    })
}

/// One sweep sample: the mixing parameter with both directional margins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub p: f64,
    pub margin_a_to_b: f64,
    pub margin_b_to_a: f64,
}

/// Margins across a parameter grid, one state build per grid point.
pub fn sweep(family: &FamilySpec, p_grid: &[f64]) -> Result<Vec<SweepPoint>> {
    let mut out = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        let rho = family.with_mixing(p)?.build()?;
        out.push(SweepPoint {
            p,
            margin_a_to_b: purity_criterion_with(&rho, Direction::AtoB, VALIDATION_TOL).margin,
            margin_b_to_a: purity_criterion_with(&rho, Direction::BtoA, VALIDATION_TOL).margin,
        });
    }
    Ok(out)
}

/// Evenly spaced grid including both endpoints.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let n = points.max(2);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// One cell of a region grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub params: Vec<f64>,
    pub margin_a_to_b: f64,
    pub margin_b_to_a: f64,
    /// Whether the cell's parameters describe a physical (PSD) state.
    pub psd_valid: bool,
}

/// Named axis of a region grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub name: &'static str,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Dense rectangular scan; invalid (non-PSD) cells are flagged, not dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid {
    pub axes: Vec<AxisSpec>,
    pub cells: Vec<GridCell>,
}

/// Bell-diagonal (c1, c2) scan at fixed c3.
#[derive(Debug, Clone, PartialEq)]
pub struct BellBoundary {
    pub c3: f64,
    /// Radius of the detection circle `c1² + c2² = 1 - c3²`.
    pub boundary_radius: f64,
    pub grid: RegionGrid,
}

/// Scans (c1, c2) ∈ [-1,1]² at fixed c3. Margins come from the closed form
/// `(Σ c_j² - 1)/4` and are cross-checked against the purity comparison on
/// every physical cell; positivity flags come from state validation.
pub fn bell_diagonal_boundary(c3: f64, grid_n: usize) -> Result<BellBoundary> {
    if !(-1.0..=1.0).contains(&c3) {
        return Err(Error::ParameterRange {
            name: "c3",
            value: c3,
            range: "[-1, 1]",
        });
    }
    let n = grid_n.max(2);
    let axis = linspace(-1.0, 1.0, n);
    let mut cells = Vec::with_capacity(n * n);
    for &c1 in &axis {
        for &c2 in &axis {
            let margin = (c1 * c1 + c2 * c2 + c3 * c3 - 1.0) / 4.0;
            let psd_valid = match crate::states::bell_diagonal(c1, c2, c3) {
                Ok(rho) => {
                    let check =
                        purity_criterion_with(&rho, Direction::AtoB, VALIDATION_TOL).margin;
                    assert!(
                        (check - margin).abs() <= 1e-12,
                        "closed form deviates from the purity route at ({c1}, {c2}, {c3})"
                    );
                    true
                }
                Err(Error::Validation(_)) => false,
                Err(other) => return Err(other),
            };
            cells.push(GridCell {
                params: vec![c1, c2, c3],
                margin_a_to_b: margin,
                margin_b_to_a: margin,
                psd_valid,
            });
        }
    }
    Ok(BellBoundary {
        c3,
        boundary_radius: (1.0 - c3 * c3).max(0.0).sqrt(),
        grid: RegionGrid {
            axes: vec![
                AxisSpec { name: "c1", lo: -1.0, hi: 1.0, count: n },
                AxisSpec { name: "c2", lo: -1.0, hi: 1.0, count: n },
            ],
            cells,
        },
    })
}

/// One row of the isotropic threshold table.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicCurveRow {
    pub d: usize,
    /// Bisection threshold of the purity comparison.
    pub threshold_purity: f64,
    /// Steerability bound carried for comparison.
    pub threshold_theory: f64,
    pub annotation_source: &'static str,
}

/// Purity-criterion thresholds across local dimensions, with the LHS-model
/// bound attached for comparison.
pub fn isotropic_curve(d_values: &[usize]) -> Result<Vec<IsotropicCurveRow>> {
    let mut rows = Vec::with_capacity(d_values.len());
    for &d in d_values {
        let family = FamilySpec::Isotropic { p: 0.0, d };
        let found = find_threshold(&family, Direction::AtoB, 0.0, 1.0)?;
        assert!(
            (found.critical_p - refs::isotropic_purity_threshold(d)).abs() <= 1e-6,
            "bisection strayed from 1/sqrt(d+1) at d={d}"
        );
        rows.push(IsotropicCurveRow {
            d,
            threshold_purity: found.critical_p,
            threshold_theory: refs::isotropic_lhs_bound(d),
            annotation_source: refs::ISOTROPIC_LHS_SOURCE,
        });
    }
    Ok(rows)
}
