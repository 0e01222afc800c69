//! VQE harness: Hamiltonian ingestion, exact expectation values, classical
//! optimizers, and the quantum-chemistry / portfolio benchmarks.

mod hamiltonian;
mod optimizer;
mod portfolio;
mod vqe;

pub use hamiltonian::{expectation, parse_hamiltonian};
pub use optimizer::{
    optimize, IterationRecord, OptimizerConfig, OptimizerMethod, SpsaGains, VqeTrace,
};
pub use portfolio::{portfolio_to_ising, PortfolioProblem};
pub use vqe::{small_rotation_range, vqe, VqeOutcome};

use thiserror::Error;

use crate::metrics::MetricError;
use crate::qcore::QcoreError;
use crate::templates::TemplateError;

#[derive(Debug, Error)]
pub enum VqaError {
    #[error("line {line}: cannot parse coefficient {token:?}")]
    BadCoefficient { line: usize, token: String },
    #[error("line {line}: expected `<coefficient> <label>`, got {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: label {label:?} has length {actual}, expected {expected}")]
    InconsistentLabel {
        line: usize,
        label: String,
        expected: usize,
        actual: usize,
    },
    #[error("no terms found in Hamiltonian input")]
    EmptyHamiltonian,
    #[error("Hamiltonian acts on {hamiltonian} qubits but the ansatz has {ansatz}")]
    QubitCountMismatch { hamiltonian: usize, ansatz: usize },
    #[error("objective returned a non-finite value at step {step}")]
    NonFiniteObjective { step: usize, trace: Box<VqeTrace> },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("covariance matrix is not symmetric (deviation {0:.3e})")]
    AsymmetricCovariance(f64),
    #[error("invalid optimizer configuration: {0}")]
    InvalidOptimizerConfig(String),
    #[error(transparent)]
    Qcore(#[from] QcoreError),
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}
