//! Complex statevector/matrix kernel.
//!
//! Dense linear algebra on at most twelve qubits: state manipulation, Pauli
//! operators, fidelity, partial trace, purity, and exact diagonalization.
//! All operations are pure functions of their inputs; every value here is
//! immutable after construction and safe to share across threads.

mod linalg;
mod matrix;
mod pauli;
mod state;

pub use linalg::{hermitian_eigenvalues, hermitian_exp, min_eigenvalue, HermitianEigen};
pub use matrix::{purity, DensityMatrix, UnitaryMatrix};
pub use pauli::{
    apply_pauli_string, dense_hamiltonian, exact_ground_energy, pauli_expectation,
    pauli_operator, Pauli, PauliHamiltonian,
};
pub use state::{apply_embedded_unitary, fidelity, partial_trace, StateVector};
pub(crate) use state::apply_embedded_raw;

use thiserror::Error;

/// Dense diagonalization guard: states and operators are capped at 2^12.
pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QcoreError {
    #[error("empty Pauli label")]
    EmptyLabel,
    #[error("invalid character {found:?} at position {position} in Pauli label {label:?}")]
    InvalidPauliLabel {
        label: String,
        position: usize,
        found: char,
    },
    #[error("label {label:?} has length {actual}, expected {expected}")]
    LabelLengthMismatch {
        label: String,
        expected: usize,
        actual: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    IndexOutOfRange { index: usize, n_qubits: usize },
    #[error("duplicate target qubit {index}")]
    DuplicateTarget { index: usize },
    #[error("{n_qubits} qubits exceeds the dense-kernel cap of {max}")]
    TooManyQubits { n_qubits: usize, max: usize },
    #[error("vector length {len} is not a power of two")]
    NotPowerOfTwo { len: usize },
    #[error("state norm {norm} is not 1 within tolerance")]
    NotNormalized { norm: f64 },
    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("density matrix trace {trace} is not 1 within tolerance")]
    TraceNotOne { trace: f64 },
    #[error("density matrix has eigenvalue {value:.3e} below tolerance")]
    NegativeEigenvalue { value: f64 },
}
