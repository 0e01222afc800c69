//! Statevector type and the operations that act on it.

use ndarray::Array1;
use num_complex::Complex64;

use super::matrix::{DensityMatrix, UnitaryMatrix};
use super::{QcoreError, MAX_QUBITS};

const NORM_TOL: f64 = 1e-10;

/// A normalized pure state on `n_qubits` qubits.
///
/// Qubit 0 is the least-significant bit of the amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Array1<Complex64>,
    n_qubits: usize,
}

impl StateVector {
    /// The all-zeros state `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Result<Self, QcoreError> {
        Self::basis_state(n_qubits, 0)
    }

    /// The computational basis state `|index⟩`.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self, QcoreError> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(QcoreError::TooManyQubits {
                n_qubits,
                max: MAX_QUBITS,
            });
        }
        let dim = 1 << n_qubits;
        if index >= dim {
            return Err(QcoreError::IndexOutOfRange {
                index,
                n_qubits,
            });
        }
        let mut amplitudes = Array1::zeros(dim);
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            amplitudes,
            n_qubits,
        })
    }

    /// Builds a state from raw amplitudes, which must have power-of-two
    /// length and unit norm within 1e-10.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, QcoreError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(QcoreError::NotPowerOfTwo { len });
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(QcoreError::TooManyQubits {
                n_qubits,
                max: MAX_QUBITS,
            });
        }
        let state = Self {
            amplitudes: Array1::from(amplitudes),
            n_qubits,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QcoreError::NotNormalized { norm });
        }
        Ok(state)
    }

    /// Builds a state from raw amplitudes, rescaling to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self, QcoreError> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(QcoreError::NotNormalized { norm });
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64, QcoreError> {
        if self.dim() != other.dim() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub(crate) fn from_parts(amplitudes: Array1<Complex64>, n_qubits: usize) -> Self {
        Self {
            amplitudes,
            n_qubits,
        }
    }
}

/// State fidelity `|⟨a|b⟩|²`, symmetric in its arguments.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64, QcoreError> {
    Ok(a.inner(b)?.norm_sqr())
}

/// Applies a `k`-qubit unitary to the listed target qubits.
///
/// `targets[j]` is matched with bit `j` of the small-space index, so a
/// two-qubit unitary built from the label convention (character `k` acts on
/// qubit `k`) embeds with its qubits listed in label order.
pub fn apply_embedded_unitary(
    state: &StateVector,
    u: &UnitaryMatrix,
    targets: &[usize],
) -> Result<StateVector, QcoreError> {
    let n = state.n_qubits();
    let k = targets.len();
    if u.dim() != 1 << k {
        return Err(QcoreError::DimensionMismatch {
            expected: 1 << k,
            actual: u.dim(),
        });
    }
    for (pos, &t) in targets.iter().enumerate() {
        if t >= n {
            return Err(QcoreError::IndexOutOfRange {
                index: t,
                n_qubits: n,
            });
        }
        if targets[..pos].contains(&t) {
            return Err(QcoreError::DuplicateTarget { index: t });
        }
    }

    let out = apply_embedded_raw(&state.amplitudes, n, u.entries(), targets);
    Ok(StateVector::from_parts(out, n))
}

/// Embedding kernel on raw amplitudes; callers have already validated the
/// targets.
pub(crate) fn apply_embedded_raw(
    amplitudes: &Array1<Complex64>,
    n: usize,
    mat: &ndarray::Array2<Complex64>,
    targets: &[usize],
) -> Array1<Complex64> {
    let k = targets.len();
    let dim_small = 1usize << k;
    let free: Vec<usize> = (0..n).filter(|q| !targets.contains(q)).collect();
    let mut out = Array1::zeros(amplitudes.len());
    let mut indices = vec![0usize; dim_small];
    let mut scratch = vec![Complex64::new(0.0, 0.0); dim_small];

    for rest in 0..(1usize << free.len()) {
        let mut base = 0usize;
        for (j, &q) in free.iter().enumerate() {
            if (rest >> j) & 1 == 1 {
                base |= 1 << q;
            }
        }
        for (s, idx) in indices.iter_mut().enumerate() {
            let mut i = base;
            for (j, &q) in targets.iter().enumerate() {
                if (s >> j) & 1 == 1 {
                    i |= 1 << q;
                }
            }
            *idx = i;
        }
        for (row, slot) in scratch.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for col in 0..dim_small {
                acc += mat[[row, col]] * amplitudes[indices[col]];
            }
            *slot = acc;
        }
        for (s, &idx) in indices.iter().enumerate() {
            out[idx] = scratch[s];
        }
    }
    out
}

/// Reduced density matrix of a single kept qubit.
pub fn partial_trace(state: &StateVector, keep: usize) -> Result<DensityMatrix, QcoreError> {
    let n = state.n_qubits();
    if keep >= n {
        return Err(QcoreError::IndexOutOfRange {
            index: keep,
            n_qubits: n,
        });
    }
    let mask = 1usize << keep;
    let mut rho = ndarray::Array2::zeros((2, 2));
    for i in 0..state.dim() {
        let a = (i >> keep) & 1;
        // pair index with the kept bit flipped covers the off-diagonal
        for b in 0..2 {
            let j = (i & !mask) | (b << keep);
            rho[[a, b]] += state.amplitudes[i] * state.amplitudes[j].conj();
        }
    }
    DensityMatrix::new(rho)
}
