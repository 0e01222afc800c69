//! Hermitian eigensolves and matrix exponentials, backed by nalgebra.

use nalgebra::DMatrix;
use ndarray::Array2;
use num_complex::Complex64;

fn to_nalgebra(m: &Array2<Complex64>) -> DMatrix<Complex64> {
    let (rows, cols) = m.dim();
    DMatrix::from_fn(rows, cols, |i, j| m[[i, j]])
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &Array2<Complex64>) -> Vec<f64> {
    let eig = to_nalgebra(m).symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &Array2<Complex64>) -> f64 {
    hermitian_eigenvalues(m)[0]
}

/// `exp(factor * h)` for Hermitian `h`, via eigendecomposition
/// `h = V diag(λ) V†`.
pub fn hermitian_exp(h: &Array2<Complex64>, factor: Complex64) -> Array2<Complex64> {
    HermitianEigen::new(h).exp(factor)
}

/// Cached eigendecomposition of a Hermitian matrix, for repeated
/// exponentiation at different scale factors.
pub struct HermitianEigen {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl HermitianEigen {
    pub fn new(h: &Array2<Complex64>) -> Self {
        let eig = to_nalgebra(h).symmetric_eigen();
        Self {
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            eigenvectors: eig.eigenvectors,
        }
    }

    /// `exp(factor * h) = V exp(factor · λ) V†`.
    pub fn exp(&self, factor: Complex64) -> Array2<Complex64> {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = Array2::zeros((n, n));
        for (k, lambda) in self.eigenvalues.iter().enumerate() {
            let phase = (factor * *lambda).exp();
            for i in 0..n {
                for j in 0..n {
                    out[[i, j]] += phase * v[(i, k)] * v[(j, k)].conj();
                }
            }
        }
        out
    }
}
