//! Dense complex-matrix core: construction, Kronecker products, partial
//! traces, purity, Hermitian eigenvalues and density-matrix validation.
//!
//! Bipartite states use A-major basis ordering: the joint index of
//! `|a⟩⊗|b⟩` is `a * dim_b + b`.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::{Error, Result, ValidationReport, Violation, VALIDATION_TOL};

pub type Complex64 = num_complex::Complex<f64>;

/// Largest row/column count a dense product is allowed to have.
pub const MAX_DIM: usize = 4096;

const EIGEN_OFF_NORM_TOL: f64 = 1e-12;
const EIGEN_MAX_SWEEPS: usize = 64;

pub(crate) fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting size mismatches and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows.checked_mul(cols) != Some(data.len()) {
            return Err(Error::EntryCount {
                rows,
                cols,
                got: data.len(),
            });
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    row: idx / cols,
                    col: idx % cols,
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![cx(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = cx(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Rank-1 projector `|v⟩⟨v|`.
    pub fn projector(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(cx(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.data[i * self.cols + k];
                if aik == cx(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product; the (i,k),(j,l) entry is `a[i,j] * b[k,l]`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let rows = self
            .rows
            .checked_mul(other.rows)
            .filter(|&r| r <= MAX_DIM)
            .ok_or(Error::TooLarge {
                rows: self.rows.saturating_mul(other.rows),
                cols: self.cols.saturating_mul(other.cols),
                max: MAX_DIM,
            })?;
        let cols = self
            .cols
            .checked_mul(other.cols)
            .filter(|&c| c <= MAX_DIM)
            .ok_or(Error::TooLarge {
                rows,
                cols: self.cols.saturating_mul(other.cols),
                max: MAX_DIM,
            })?;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * cols + (j * other.cols + l)] =
                            a * other.data[k * other.cols + l];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `M - M†`.
    pub fn hermiticity_residual(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let r = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(r);
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `tr(M²) = Σ_ij |m_ij|²` for a Hermitian matrix.
    pub fn purity(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let residual = self.hermiticity_residual();
        if residual > VALIDATION_TOL {
            return Err(Error::NotHermitian { residual });
        }
        Ok(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// All eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi
    /// rotations. Converges when the off-diagonal Frobenius norm drops below
    /// 1e-12 (relative to the matrix norm for norms above one).
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let residual = self.hermiticity_residual();
        if residual > VALIDATION_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let n = self.rows;
        // Work on the symmetrized copy so the allowed input residual cannot
        // bias the rotations.
        let mut a: Vec<Complex64> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                a.push((self.get(i, j) + self.get(j, i).conj()) * cx(0.5, 0.0));
            }
        }
        let fro: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let stop = EIGEN_OFF_NORM_TOL * fro.max(1.0);

        let mut off_norm = off_diagonal_norm(&a, n);
        for _ in 0..EIGEN_MAX_SWEEPS {
            if off_norm <= stop {
                let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
                eigs.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
                return Ok(eigs);
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    jacobi_rotate(&mut a, n, p, q);
                }
            }
            off_norm = off_diagonal_norm(&a, n);
        }
        Err(Error::EigenConvergence {
            sweeps: EIGEN_MAX_SWEEPS,
            off_norm,
        })
    }
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += a[p * n + q].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One two-sided unitary rotation annihilating the (p,q) entry of the
/// Hermitian matrix `a`.
fn jacobi_rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let g = apq.norm();
    if g < 1e-300 {
        return;
    }
    let phase = apq / cx(g, 0.0);
    let tau = (a[q * n + q].re - a[p * n + p].re) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Column update A <- A U with U = I except the (p,q) plane.
    for i in 0..n {
        let x = a[i * n + p];
        let y = a[i * n + q];
        a[i * n + p] = x * cx(c, 0.0) - y * phase.conj() * cx(s, 0.0);
        a[i * n + q] = x * phase * cx(s, 0.0) + y * cx(c, 0.0);
    }
    // Row update A <- U† A.
    for j in 0..n {
        let x = a[p * n + j];
        let y = a[q * n + j];
        a[p * n + j] = x * cx(c, 0.0) - y * phase * cx(s, 0.0);
        a[q * n + j] = x * phase.conj() * cx(s, 0.0) + y * cx(c, 0.0);
    }
    a[p * n + q] = cx(0.0, 0.0);
    a[q * n + p] = cx(0.0, 0.0);
}

/// Cholesky probe of `m + shift I`; success certifies the smallest eigenvalue
/// is at least `-shift` up to roundoff.
fn cholesky_is_psd(m: &ComplexMatrix, shift: f64) -> bool {
    let n = m.rows();
    let mut l = vec![cx(0.0, 0.0); n * n];
    for j in 0..n {
        let mut d = m.get(j, j).re + shift;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if d <= 0.0 {
            return false;
        }
        let ljj = d.sqrt();
        l[j * n + j] = cx(ljj, 0.0);
        for i in j + 1..n {
            // symmetrize the sampled entry so the allowed hermiticity
            // residual does not leak into the pivots
            let mut v = (m.get(i, j) + m.get(j, i).conj()) * cx(0.5, 0.0);
            for k in 0..j {
                v -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = v / cx(ljj, 0.0);
        }
    }
    true
}

/// Which wing of the bipartition is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wing {
    A,
    B,
}

impl Wing {
    pub fn other(self) -> Self {
        match self {
            Wing::A => Wing::B,
            Wing::B => Wing::A,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Wing::A => "A",
            Wing::B => "B",
        }
    }
}

/// Validated bipartite density matrix with its recorded bipartition.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positive semidefiniteness at the
    /// default tolerance and records the bipartition.
    pub fn new(matrix: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::with_tolerance(matrix, dim_a, dim_b, VALIDATION_TOL)
    }

    /// Same as [`DensityMatrix::new`] with an explicit tolerance.
    ///
    /// Structural problems (wrong size, dimensions below 2) are errors;
    /// invariant failures come back as a [`ValidationReport`] listing each
    /// violated invariant with its measured residual.
    pub fn with_tolerance(
        matrix: ComplexMatrix,
        dim_a: usize,
        dim_b: usize,
        tol: f64,
    ) -> Result<Self> {
        if dim_a < 2 {
            return Err(Error::DimensionTooSmall {
                name: "dim_a",
                value: dim_a,
                min: 2,
            });
        }
        if dim_b < 2 {
            return Err(Error::DimensionTooSmall {
                name: "dim_b",
                value: dim_b,
                min: 2,
            });
        }
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.rows() != dim_a * dim_b {
            return Err(Error::DimensionMismatch {
                expected: dim_a * dim_b,
                got: matrix.rows(),
            });
        }

        let mut violations = Vec::new();
        let herm = matrix.hermiticity_residual();
        if herm > tol {
            violations.push(Violation::Hermiticity { residual: herm });
        }
        let trace_residual = (matrix.trace() - cx(1.0, 0.0)).norm();
        if trace_residual > tol {
            violations.push(Violation::Trace {
                residual: trace_residual,
            });
        }
        // The PSD test only makes sense once the matrix is Hermitian within
        // tolerance. Cholesky settles the common valid case; eigenvalues are
        // computed only to report a residual.
        if herm <= tol && !cholesky_is_psd(&matrix, tol) {
            let eigs = matrix.hermitian_eigenvalues()?;
            if eigs[0] < -tol {
                violations.push(Violation::PositiveSemidefinite {
                    min_eigenvalue: eigs[0],
                });
            }
        }

        if violations.is_empty() {
            Ok(Self {
                dim_a,
                dim_b,
                matrix,
            })
        } else {
            Err(Error::Validation(ValidationReport { violations }))
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total dimension `dim_a * dim_b`.
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix.data().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Traces out the given wing; tracing A leaves Bob's reduced state.
    pub fn partial_trace(&self, traced: Wing) -> ReducedState {
        let (da, db) = (self.dim_a, self.dim_b);
        let m = &self.matrix;
        match traced {
            Wing::A => {
                let reduced = ComplexMatrix::from_fn(db, db, |i, j| {
                    (0..da).map(|a| m.get(a * db + i, a * db + j)).sum()
                });
                ReducedState {
                    dim: db,
                    matrix: reduced,
                    traced_out: Wing::A,
                }
            }
            Wing::B => {
                let reduced = ComplexMatrix::from_fn(da, da, |a, b| {
                    (0..db).map(|i| m.get(a * db + i, b * db + i)).sum()
                });
                ReducedState {
                    dim: da,
                    matrix: reduced,
                    traced_out: Wing::B,
                }
            }
        }
    }

    pub fn to_json_string(&self) -> String {
        let d = self.dim();
        let file = DmFile {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            re: (0..d)
                .map(|i| (0..d).map(|j| self.matrix.get(i, j).re).collect())
                .collect(),
            im: (0..d)
                .map(|i| (0..d).map(|j| self.matrix.get(i, j).im).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain float arrays serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: DmFile = serde_json::from_str(s)?;
        let d = file
            .dim_a
            .checked_mul(file.dim_b)
            .filter(|&d| d <= MAX_DIM)
            .ok_or(Error::FileFormat(format!(
                "dim_a * dim_b exceeds the dense cap of {MAX_DIM}"
            )))?;
        for (name, rows) in [("re", &file.re), ("im", &file.im)] {
            if rows.len() != d {
                return Err(Error::FileFormat(format!(
                    "{name} has {} rows, expected {d}",
                    rows.len()
                )));
            }
            for (i, row) in rows.iter().enumerate() {
                if row.len() != d {
                    return Err(Error::FileFormat(format!(
                        "{name} row {i} has {} entries, expected {d} (ragged array)",
                        row.len()
                    )));
                }
            }
        }
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                data.push(cx(file.re[i][j], file.im[i][j]));
            }
        }
        let matrix = ComplexMatrix::new(d, d, data)?;
        Self::new(matrix, file.dim_a, file.dim_b)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn write_json_file(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_json_string())?)
    }
}

/// On-disk density-matrix format: row-major real and imaginary parts.
#[derive(Serialize, Deserialize)]
struct DmFile {
    dim_a: usize,
    dim_b: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Reduced state left after a partial trace.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState {
    dim: usize,
    matrix: ComplexMatrix,
    traced_out: Wing,
}

impl ReducedState {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn traced_out(&self) -> Wing {
        self.traced_out
    }

    pub fn purity(&self) -> f64 {
        self.matrix.data().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }
}

/// Pauli x.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)],
    )
    .expect("static entries")
}

/// Pauli y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![cx(0.0, 0.0), cx(0.0, -1.0), cx(0.0, 1.0), cx(0.0, 0.0)],
    )
    .expect("static entries")
}

/// Pauli z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(-1.0, 0.0)],
    )
    .expect("static entries")
}

/// The unnormalized Pauli triple (σ₁, σ₂, σ₃).
pub fn paulis() -> [ComplexMatrix; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}
