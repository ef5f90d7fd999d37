//! Detects bipartite steering (and hence entanglement) directly from a
//! density matrix by comparing the purity of the joint state against the
//! purity of a reduced state, with no measurement settings to optimize.
//!
//! - [`qmat`]: dense complex matrices, partial traces, purity, validation
//! - [`loo`]: local orthogonal observable bases and the trace identities
//!   the purity comparison rests on
//! - [`criteria`]: steering verdicts (purity comparison, two-qubit Pauli
//!   correlation test)
//! - [`states`]: the built-in state families and seeded random states
//! - [`scan`]: threshold bisection, parameter sweeps and region grids
//! - [`estimate`]: two-copy projection sampling for purity estimation and
//!   statistically qualified verdicts
//!
//! All operations are pure functions over immutable values; everything here
//! is `Send + Sync` and deterministic for a fixed seed.

pub mod criteria;
mod error;
pub mod estimate;
pub mod loo;
pub mod qmat;
pub mod scan;
pub mod selftest;
pub mod states;

pub use error::{Error, Result, ValidationReport, Violation};

/// Tolerance for the Hermiticity / trace / positivity invariants and for
/// strict-inequality detection decisions.
pub const VALIDATION_TOL: f64 = 1e-9;

/// Tolerance for exact arithmetic identities (polynomial relations between
/// entries).
pub const IDENTITY_TOL: f64 = 1e-12;

pub use criteria::{CriterionKind, Direction, FullReport, SteeringVerdict};
pub use qmat::{Complex64, ComplexMatrix, DensityMatrix, ReducedState, Wing};
pub use states::FamilySpec;
