//! Constructors for the built-in state families and seeded random states.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::qmat::{cx, paulis, Complex64, ComplexMatrix, DensityMatrix};
use crate::{Error, Result};

/// Parameterized description of one of the built-in families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilySpec {
    /// `p |ψ⁺⟩⟨ψ⁺| + (1-p) I/4` with `|ψ⁺⟩ = (|00⟩+|11⟩)/√2`.
    Werner { p: f64 },
    /// `(I + Σ_j c_j σ_j⊗σ_j)/4`.
    BellDiagonal { c: [f64; 3] },
    /// `p |ψ⁻⟩⟨ψ⁻| + (1-p)(⅔|00⟩⟨00| + ⅓|01⟩⟨01|)`.
    AsymmetricNoisySinglet { p: f64 },
    /// `p |φ_d⟩⟨φ_d| + (1-p) I/d²` on a d×d bipartition.
    Isotropic { p: f64, d: usize },
    /// The two-qutrit mixture `p |φ⁺⟩⟨φ⁺| + (1-p) σ⁺`.
    FreeEntangled { p: f64 },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Werner { .. } => "werner",
            FamilySpec::BellDiagonal { .. } => "bell-diagonal",
            FamilySpec::AsymmetricNoisySinglet { .. } => "asymmetric-noisy-singlet",
            FamilySpec::Isotropic { .. } => "isotropic",
            FamilySpec::FreeEntangled { .. } => "free-entangled",
        }
    }

    /// The same family with its mixing parameter replaced.
    pub fn with_mixing(&self, p: f64) -> Result<Self> {
        match self {
            FamilySpec::Werner { .. } => Ok(FamilySpec::Werner { p }),
            FamilySpec::AsymmetricNoisySinglet { .. } => {
                Ok(FamilySpec::AsymmetricNoisySinglet { p })
            }
            FamilySpec::Isotropic { d, .. } => Ok(FamilySpec::Isotropic { p, d: *d }),
            FamilySpec::FreeEntangled { .. } => Ok(FamilySpec::FreeEntangled { p }),
            FamilySpec::BellDiagonal { .. } => Err(Error::NoScalarParameter {
                family: self.name(),
            }),
        }
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        match *self {
            FamilySpec::Werner { p } => werner(p),
            FamilySpec::BellDiagonal { c } => bell_diagonal(c[0], c[1], c[2]),
            FamilySpec::AsymmetricNoisySinglet { p } => asymmetric_noisy_singlet(p),
            FamilySpec::Isotropic { p, d } => isotropic(p, d),
            FamilySpec::FreeEntangled { p } => free_entangled(p),
        }
    }
}

fn check_unit_interval(name: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterRange {
            name,
            value: p,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// Maximally entangled ket `Σ_i |ii⟩ / √d` in A-major ordering.
fn maximally_entangled_ket(d: usize) -> Vec<Complex64> {
    let amp = 1.0 / (d as f64).sqrt();
    let mut v = vec![cx(0.0, 0.0); d * d];
    for i in 0..d {
        v[i * d + i] = cx(amp, 0.0);
    }
    v
}

/// Werner state `p |ψ⁺⟩⟨ψ⁺| + (1-p) I/4`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let proj = ComplexMatrix::projector(&maximally_entangled_ket(2));
    let m = proj
        .scale_re(p)
        .add(&ComplexMatrix::identity(4).scale_re((1.0 - p) / 4.0));
    DensityMatrix::new(m, 2, 2)
}

/// Bell-diagonal state `(I + Σ_j c_j σ_j⊗σ_j)/4`; the positivity check
/// rejects triples outside the physical tetrahedron.
pub fn bell_diagonal(c1: f64, c2: f64, c3: f64) -> Result<DensityMatrix> {
    for (name, c) in [("c1", c1), ("c2", c2), ("c3", c3)] {
        if !(-1.0..=1.0).contains(&c) {
            return Err(Error::ParameterRange {
                name,
                value: c,
                range: "[-1, 1]",
            });
        }
    }
    let mut m = ComplexMatrix::identity(4);
    for (sigma, c) in paulis().iter().zip([c1, c2, c3]) {
        m = m.add(&sigma.kron(sigma)?.scale_re(c));
    }
    DensityMatrix::new(m.scale_re(0.25), 2, 2)
}

/// Asymmetric noisy singlet `p |ψ⁻⟩⟨ψ⁻| + (1-p)(⅔|00⟩⟨00| + ⅓|01⟩⟨01|)`.
pub fn asymmetric_noisy_singlet(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let singlet = ComplexMatrix::projector(&[cx(0.0, 0.0), cx(r, 0.0), cx(-r, 0.0), cx(0.0, 0.0)]);
    let mut noise = ComplexMatrix::zeros(4, 4);
    noise.set(0, 0, cx(2.0 / 3.0, 0.0));
    noise.set(1, 1, cx(1.0 / 3.0, 0.0));
    let m = singlet.scale_re(p).add(&noise.scale_re(1.0 - p));
    DensityMatrix::new(m, 2, 2)
}

/// Isotropic state `p |φ_d⟩⟨φ_d| + (1-p) I/d²` (the noise term is the
/// maximally mixed state of the joint d·d-dimensional space).
pub fn isotropic(p: f64, d: usize) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    if d < 2 {
        return Err(Error::DimensionTooSmall {
            name: "d",
            value: d,
            min: 2,
        });
    }
    let n = d * d;
    let proj = ComplexMatrix::projector(&maximally_entangled_ket(d));
    let m = proj
        .scale_re(p)
        .add(&ComplexMatrix::identity(n).scale_re((1.0 - p) / n as f64));
    DensityMatrix::new(m, d, d)
}

/// Two-qutrit free entangled mixture of `|φ⁺⟩⟨φ⁺|` with the cyclic diagonal
/// state `⅓(|01⟩⟨01| + |12⟩⟨12| + |20⟩⟨20|)`.
pub fn free_entangled(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let proj = ComplexMatrix::projector(&maximally_entangled_ket(3));
    let mut cyclic = ComplexMatrix::zeros(9, 9);
    for (a, b) in [(0usize, 1usize), (1, 2), (2, 0)] {
        let idx = a * 3 + b;
        cyclic.set(idx, idx, cx(1.0 / 3.0, 0.0));
    }
    let m = proj.scale_re(p).add(&cyclic.scale_re(1.0 - p));
    DensityMatrix::new(m, 3, 3)
}

fn check_dims(dim_a: usize, dim_b: usize) -> Result<()> {
    for (name, d) in [("dim_a", dim_a), ("dim_b", dim_b)] {
        if d < 2 {
            return Err(Error::DimensionTooSmall {
                name,
                value: d,
                min: 2,
            });
        }
    }
    Ok(())
}

fn ginibre(n: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix {
    let mut data = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        data.push(cx(re, im));
    }
    ComplexMatrix::new(n, n, data).expect("finite normal samples")
}

/// Seeded random density matrix `G G† / tr(G G†)` with Ginibre `G`.
pub fn random_density(dim_a: usize, dim_b: usize, seed: u64) -> Result<DensityMatrix> {
    check_dims(dim_a, dim_b)?;
    let n = dim_a * dim_b;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let g = ginibre(n, &mut rng);
    let gg = g.matmul(&g.dagger());
    let trace = gg.trace().re;
    DensityMatrix::new(gg.scale_re(1.0 / trace), dim_a, dim_b)
}

/// Seeded random pure state `|ψ⟩⟨ψ|`; with `product` set, each wing is drawn
/// separately and tensored.
pub fn random_pure(dim_a: usize, dim_b: usize, seed: u64, product: bool) -> Result<DensityMatrix> {
    check_dims(dim_a, dim_b)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let ket = if product {
        let a = random_ket(dim_a, &mut rng);
        let b = random_ket(dim_b, &mut rng);
        let mut v = Vec::with_capacity(dim_a * dim_b);
        for za in &a {
            for zb in &b {
                v.push(za * zb);
            }
        }
        v
    } else {
        random_ket(dim_a * dim_b, &mut rng)
    };
    DensityMatrix::new(ComplexMatrix::projector(&ket), dim_a, dim_b)
}

fn random_ket(n: usize, rng: &mut ChaCha12Rng) -> Vec<Complex64> {
    loop {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                cx(re, im)
            })
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for z in &mut v {
                *z /= norm;
            }
            return v;
        }
    }
}
