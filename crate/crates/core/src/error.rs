use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// A single density-matrix invariant failure with its measured residual.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Hermiticity { residual: f64 },
    Trace { residual: f64 },
    PositiveSemidefinite { min_eigenvalue: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Hermiticity { residual } => {
                write!(f, "hermiticity violated (max |M - M\u{2020}| = {residual:.3e})")
            }
            Violation::Trace { residual } => {
                write!(f, "unit trace violated (|tr M - 1| = {residual:.3e})")
            }
            Violation::PositiveSemidefinite { min_eigenvalue } => {
                write!(f, "positive semidefiniteness violated (min eigenvalue = {min_eigenvalue:.6e})")
            }
        }
    }
}

/// Every invariant a candidate density matrix failed, with residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },

    #[error("matrix entry ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("result size {rows}x{cols} exceeds the dense cap of {max} per side")]
    TooLarge { rows: usize, cols: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("not a valid density matrix: {0}")]
    Validation(#[from] ValidationReport),

    #[error("{name} = {value} outside {range}")]
    ParameterRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("{name} = {value} is below the minimum of {min}")]
    DimensionTooSmall {
        name: &'static str,
        value: usize,
        min: usize,
    },

    #[error("expectation value has imaginary part {imag:.3e}; inputs are not Hermitian")]
    ComplexExpectation { imag: f64 },

    #[error("two-qubit criterion requires a 2x2 bipartition, got {dim_a}x{dim_b}")]
    NotTwoQubit { dim_a: usize, dim_b: usize },

    #[error("margin never crosses the detection threshold on [{lo}, {hi}] (always detected: {always_detected})")]
    NoCrossing {
        lo: f64,
        hi: f64,
        always_detected: bool,
    },

    #[error("margin crosses the detection threshold {count} times on [{lo}, {hi}]")]
    MultipleCrossings { count: usize, lo: f64, hi: f64 },

    #[error("family {family} has no scalar mixing parameter")]
    NoScalarParameter { family: &'static str },

    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    EigenConvergence { sweeps: usize, off_norm: f64 },

    #[error("antisymmetric-projection probability {q:.6e} lies outside [0, 1/2]; input is not a state")]
    ProjectionProbability { q: f64 },

    #[error("shots must be at least {min}, got {got}")]
    ShotCount { min: u64, got: u64 },

    #[error("density-matrix file: {0}")]
    FileFormat(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
