//! Two-copy purity measurement, simulated at the outcome level.
//!
//! Projecting two copies of a state onto the antisymmetric subspace succeeds
//! with probability `q = (1 - tr ρ²)/2`, so counting antisymmetric outcomes
//! estimates the purity. Sampling draws Bernoulli outcomes at the exact `q`
//! rather than building the two-copy swap operator; the identity between the
//! two routes is unit-tested against an explicitly built swap.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::criteria::Direction;
use crate::qmat::{ComplexMatrix, DensityMatrix};
use crate::{Error, Result, VALIDATION_TOL};

/// Which purity a shot record estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PurityTarget {
    Joint,
    ReducedA,
    ReducedB,
}

/// Simulated two-copy projection outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotRecord {
    pub target: PurityTarget,
    pub shots: u64,
    pub antisymmetric_count: u64,
    pub seed: u64,
}

/// Statistically qualified steering verdict from finite shots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimatedVerdict {
    pub margin_estimate: f64,
    pub std_error: f64,
    pub z_score: f64,
    #[serde(rename = "detected_3sigma")]
    pub detected_at_3sigma: bool,
}

/// Exact antisymmetric-projection probability `(1 - tr ρ²)/2`.
///
/// Values outside `[0, 1/2]` (beyond tolerance) mean the input was not a
/// state and are rejected.
pub fn antisymmetric_probability(m: &ComplexMatrix) -> Result<f64> {
    let q = (1.0 - m.purity()?) / 2.0;
    if !(-VALIDATION_TOL..=0.5 + VALIDATION_TOL).contains(&q) {
        return Err(Error::ProjectionProbability { q });
    }
    Ok(q.clamp(0.0, 0.5))
}

/// Draws `shots` Bernoulli outcomes at the exact antisymmetric probability of
/// the given (joint or reduced) state.
pub fn sample_purity(
    m: &ComplexMatrix,
    target: PurityTarget,
    shots: u64,
    seed: u64,
) -> Result<ShotRecord> {
    if shots < 1 {
        return Err(Error::ShotCount { min: 1, got: shots });
    }
    let q = antisymmetric_probability(m)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut count = 0u64;
    for _ in 0..shots {
        if rng.gen::<f64>() < q {
            count += 1;
        }
    }
    Ok(ShotRecord {
        target,
        shots,
        antisymmetric_count: count,
        seed,
    })
}

/// Purity estimate `1 - 2 q̂` with its binomial standard error.
///
/// For the error bar only, the empirical frequency is clamped away from 0
/// and 1 so the bar never collapses at extreme counts.
pub fn estimate_purity(record: &ShotRecord) -> (f64, f64) {
    let shots = record.shots as f64;
    let q_hat = record.antisymmetric_count as f64 / shots;
    let estimate = 1.0 - 2.0 * q_hat;
    let clamp = 1.0 / (4.0 * shots);
    let q_bar = q_hat.clamp(clamp, 1.0 - clamp);
    let std_error = 2.0 * (q_bar * (1.0 - q_bar) / shots).sqrt();
    (estimate, std_error)
}

/// Estimates the directional purity margin from `shots` total shots, split
/// evenly between the joint and the reduced purity, and qualifies the
/// detection at one-sided 3σ.
pub fn estimated_verdict(
    rho: &DensityMatrix,
    direction: Direction,
    shots: u64,
    seed: u64,
) -> Result<EstimatedVerdict> {
    if shots < 2 {
        return Err(Error::ShotCount { min: 2, got: shots });
    }
    let joint_shots = shots / 2;
    let reduced_shots = shots - joint_shots;
    let mut stream = seed;
    let joint_seed = splitmix64(&mut stream);
    let reduced_seed = splitmix64(&mut stream);

    let joint = sample_purity(rho.matrix(), PurityTarget::Joint, joint_shots, joint_seed)?;
    let reduced_state = rho.partial_trace(direction.traced_wing());
    let target = match direction {
        Direction::AtoB => PurityTarget::ReducedB,
        Direction::BtoA => PurityTarget::ReducedA,
    };
    let reduced = sample_purity(reduced_state.matrix(), target, reduced_shots, reduced_seed)?;

    let (joint_est, joint_err) = estimate_purity(&joint);
    let (reduced_est, reduced_err) = estimate_purity(&reduced);
    let margin_estimate = joint_est - reduced_est;
    let std_error = (joint_err * joint_err + reduced_err * reduced_err).sqrt();
    let z_score = margin_estimate / std_error;
    Ok(EstimatedVerdict {
        margin_estimate,
        std_error,
        z_score,
        detected_at_3sigma: z_score > 3.0,
    })
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Swap operator on two copies of a `d`-dimensional system.
pub(crate) fn swap_operator(d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(i * d + j, j * d + i, crate::qmat::cx(1.0, 0.0));
        }
    }
    m
}

/// Antisymmetric probability via the explicit two-copy projector
/// `tr[(ρ⊗ρ)(I - SWAP)/2]`; the reference route for tests and the self-test.
pub(crate) fn antisymmetric_probability_via_swap(m: &ComplexMatrix) -> Result<f64> {
    let two_copy = m.kron(m)?;
    let swap = swap_operator(m.rows());
    let n = two_copy.rows();
    let mut overlap = crate::qmat::cx(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            overlap += two_copy.get(i, j) * swap.get(j, i);
        }
    }
    Ok((1.0 - overlap.re) / 2.0)
}
