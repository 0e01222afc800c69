//! Unitary and density matrix value types.

use ndarray::Array2;
use num_complex::Complex64;

use super::linalg::hermitian_eigenvalues;
use super::QcoreError;

const UNITARY_TOL: f64 = 1e-9;
const HERMITIAN_TOL: f64 = 1e-10;
const EIGENVALUE_TOL: f64 = -1e-10;

/// A complex square matrix checked to satisfy `U†U = I` within 1e-9
/// (Frobenius norm) on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    entries: Array2<Complex64>,
}

impl UnitaryMatrix {
    pub fn new(entries: Array2<Complex64>) -> Result<Self, QcoreError> {
        let n = entries.nrows();
        if entries.ncols() != n {
            return Err(QcoreError::DimensionMismatch {
                expected: n,
                actual: entries.ncols(),
            });
        }
        let mut deviation = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += entries[[k, i]].conj() * entries[[k, j]];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                deviation += (acc - expect).norm_sqr();
            }
        }
        let deviation = deviation.sqrt();
        if deviation > UNITARY_TOL {
            return Err(QcoreError::NotUnitary { deviation });
        }
        Ok(Self { entries })
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self {
            entries: Array2::eye(1 << n_qubits),
        }
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self, QcoreError> {
        if self.dim() != other.dim() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(Self {
            entries: self.entries.dot(&other.entries),
        })
    }

    /// Frobenius distance to another unitary of the same dimension.
    pub fn distance(&self, other: &Self) -> f64 {
        (&self.entries - &other.entries)
            .iter()
            .map(|d| d.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// A Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: Array2<Complex64>,
}

impl DensityMatrix {
    pub fn new(entries: Array2<Complex64>) -> Result<Self, QcoreError> {
        let n = entries.nrows();
        if entries.ncols() != n || !n.is_power_of_two() {
            return Err(QcoreError::DimensionMismatch {
                expected: n,
                actual: entries.ncols(),
            });
        }
        let mut herm_dev = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                herm_dev += (entries[[i, j]] - entries[[j, i]].conj()).norm_sqr();
            }
        }
        let herm_dev = herm_dev.sqrt();
        if herm_dev > HERMITIAN_TOL {
            return Err(QcoreError::NotHermitian {
                deviation: herm_dev,
            });
        }
        let trace: Complex64 = (0..n).map(|i| entries[[i, i]]).sum();
        if (trace.re - 1.0).abs() > HERMITIAN_TOL || trace.im.abs() > HERMITIAN_TOL {
            return Err(QcoreError::TraceNotOne { trace: trace.re });
        }
        let min = hermitian_eigenvalues(&entries)[0];
        if min < EIGENVALUE_TOL {
            return Err(QcoreError::NegativeEigenvalue { value: min });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }
}

/// `Tr(ρ²)`, in `[1/dim, 1]` for a valid density matrix.
pub fn purity(rho: &DensityMatrix) -> f64 {
    let m = rho.entries();
    let n = rho.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            // Tr(ρ²) = Σ_ij ρ_ij ρ_ji = Σ_ij |ρ_ij|² for Hermitian ρ
            acc += (m[[i, j]] * m[[j, i]]).re;
        }
    }
    acc
}
