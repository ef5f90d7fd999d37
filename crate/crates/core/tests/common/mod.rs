//! Shared fixtures for the integration suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use steer_core::{Complex64, ComplexMatrix};

/// Haar-like random unitary from Gram-Schmidt on a Ginibre draw.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim)
            .map(|_| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            })
            .collect();
        for u in &cols {
            let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for z in &mut v {
                *z /= norm;
            }
            cols.push(v);
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

#[allow(dead_code)]
pub fn assert_unitary(u: &ComplexMatrix) {
    let gram = u.dagger().matmul(u);
    assert!(
        gram.max_abs_diff(&ComplexMatrix::identity(u.rows())) < 1e-12,
        "matrix is not unitary"
    );
}
