//! Complete sets of local orthogonal observables (LOOs): d² Hermitian
//! operators orthonormal under the Hilbert–Schmidt inner product, and the two
//! trace identities the purity criterion rests on,
//!
//! ```text
//! Σ_kl ⟨A_k ⊗ B_l⟩² = tr(ρ²)        Σ_l ⟨B_l⟩² = tr(ρ_B²)
//! ```

use crate::qmat::{cx, ComplexMatrix, DensityMatrix, Wing};
use crate::{Error, Result};

/// Ordered complete LOO set for one subsystem: the symmetric off-diagonal
/// block, the antisymmetric off-diagonal block, then the diagonal
/// projectors, each block ordered lexicographically in (m, n).
#[derive(Debug, Clone)]
pub struct LooBasis {
    dim: usize,
    observables: Vec<ComplexMatrix>,
}

impl LooBasis {
    pub fn build(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall {
                name: "dim",
                value: dim,
                min: 2,
            });
        }
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut observables = Vec::with_capacity(dim * dim);
        for m in 0..dim {
            for n in m + 1..dim {
                let mut obs = ComplexMatrix::zeros(dim, dim);
                obs.set(m, n, cx(r, 0.0));
                obs.set(n, m, cx(r, 0.0));
                observables.push(obs);
            }
        }
        for m in 0..dim {
            for n in m + 1..dim {
                let mut obs = ComplexMatrix::zeros(dim, dim);
                obs.set(m, n, cx(0.0, -r));
                obs.set(n, m, cx(0.0, r));
                observables.push(obs);
            }
        }
        for m in 0..dim {
            let mut obs = ComplexMatrix::zeros(dim, dim);
            obs.set(m, m, cx(1.0, 0.0));
            observables.push(obs);
        }
        Ok(Self { dim, observables })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of observables, always `dim²`.
    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observables.is_empty()
    }

    pub fn observables(&self) -> &[ComplexMatrix] {
        &self.observables
    }

    /// Hilbert–Schmidt Gram matrix `tr(A_k A_l)`; identity for a valid basis.
    pub fn gram(&self) -> ComplexMatrix {
        let n = self.len();
        ComplexMatrix::from_fn(n, n, |k, l| {
            self.observables[k].matmul(&self.observables[l]).trace()
        })
    }

    /// Deliberately breaks orthonormality; the self-test's negative control.
    pub(crate) fn scale_observable(&mut self, index: usize, factor: f64) {
        self.observables[index] = self.observables[index].scale_re(factor);
    }
}

/// `tr(ρ · obs)` for Hermitian inputs; the imaginary residual is checked and
/// discarded.
pub fn expectation(rho: &ComplexMatrix, obs: &ComplexMatrix) -> Result<f64> {
    if rho.rows() != obs.rows() || rho.cols() != obs.cols() || !rho.is_square() {
        return Err(Error::DimensionMismatch {
            expected: rho.rows(),
            got: obs.rows(),
        });
    }
    // tr(ρ·O) = Σ_ij ρ_ij O_ji without materializing the product
    let n = rho.rows();
    let mut acc = cx(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += rho.get(i, j) * obs.get(j, i);
        }
    }
    if acc.im.abs() > 1e-8 {
        return Err(Error::ComplexExpectation { imag: acc.im });
    }
    Ok(acc.re)
}

/// `⟨A ⊗ B⟩` on the joint state without building the Kronecker product.
fn product_expectation(
    rho: &DensityMatrix,
    obs_a: &ComplexMatrix,
    obs_b: &ComplexMatrix,
) -> f64 {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let m = rho.matrix();
    let mut acc = cx(0.0, 0.0);
    for i in 0..da {
        for j in 0..da {
            let a_ji = obs_a.get(j, i);
            if a_ji == cx(0.0, 0.0) {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    let b_lk = obs_b.get(l, k);
                    if b_lk == cx(0.0, 0.0) {
                        continue;
                    }
                    acc += m.get(i * db + k, j * db + l) * a_ji * b_lk;
                }
            }
        }
    }
    acc.re
}

/// Fixed-shape tree reduction; the result does not depend on worker count or
/// evaluation order.
pub(crate) fn pairwise_sum(mut terms: Vec<f64>) -> f64 {
    let mut n = terms.len();
    while n > 1 {
        let mut w = 0;
        let mut i = 0;
        while i < n {
            terms[w] = if i + 1 < n {
                terms[i] + terms[i + 1]
            } else {
                terms[i]
            };
            w += 1;
            i += 2;
        }
        n = w;
    }
    terms.first().copied().unwrap_or(0.0)
}

/// `Σ_kl ⟨A_k ⊗ B_l⟩²` over complete LOO bases for both wings; equals
/// `tr(ρ²)` up to roundoff.
pub fn correlation_sum(rho: &DensityMatrix) -> Result<f64> {
    let basis_a = LooBasis::build(rho.dim_a())?;
    let basis_b = LooBasis::build(rho.dim_b())?;
    Ok(correlation_sum_with_bases(rho, &basis_a, &basis_b))
}

/// [`correlation_sum`] against caller-supplied bases (reusable across many
/// states of the same bipartition).
pub fn correlation_sum_with_bases(
    rho: &DensityMatrix,
    basis_a: &LooBasis,
    basis_b: &LooBasis,
) -> f64 {
    debug_assert_eq!(basis_a.dim(), rho.dim_a());
    debug_assert_eq!(basis_b.dim(), rho.dim_b());
    let mut terms = Vec::with_capacity(basis_a.len() * basis_b.len());
    for obs_a in basis_a.observables() {
        for obs_b in basis_b.observables() {
            let v = product_expectation(rho, obs_a, obs_b);
            terms.push(v * v);
        }
    }
    pairwise_sum(terms)
}

/// `Σ_l ⟨B_l⟩²` evaluated on the reduced state of the kept wing; equals the
/// purity of that marginal up to roundoff.
pub fn marginal_sum(rho: &DensityMatrix, kept: Wing) -> Result<f64> {
    let reduced = rho.partial_trace(kept.other());
    let basis = LooBasis::build(reduced.dim())?;
    Ok(marginal_sum_with_basis(reduced.matrix(), &basis))
}

pub(crate) fn marginal_sum_with_basis(reduced: &ComplexMatrix, basis: &LooBasis) -> f64 {
    let n = reduced.rows();
    let mut terms = Vec::with_capacity(basis.len());
    for obs in basis.observables() {
        let mut acc = cx(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += reduced.get(i, j) * obs.get(j, i);
            }
        }
        terms.push(acc.re * acc.re);
    }
    pairwise_sum(terms)
}
