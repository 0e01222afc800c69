//! Ansatz profiling metrics: expressivity, entanglement capability, and
//! effective parameter dimension.
//!
//! Sampling loops are embarrassingly parallel. Every sample derives its own
//! RNG stream from `(seed, sample index)` and reductions run in sample
//! order, so results are bit-identical at any worker count.

mod entanglement;
mod expressivity;
mod haar;
mod qfi;
mod report;

pub use entanglement::{entanglement_capability, mw_q, EntanglementStats};
pub use expressivity::{expressivity, fidelity_histogram, FidelityHistogram};
pub use haar::{haar_bin_mass, haar_pdf, kl_divergence};
pub use qfi::{
    epd_median, epd_rank, epd_unitary_median, qfi_matrix, qfi_unitary_matrix, state_epd_bound,
    FdEps, QfiMatrix, DEFAULT_EPD_REL_TOL,
};
pub use report::MetricReport;

use thiserror::Error;

use crate::templates::TemplateError;

pub const DEFAULT_EXPR_SAMPLES: usize = 5000;
pub const DEFAULT_ENT_SAMPLES: usize = 500;
pub const DEFAULT_BINS: usize = 50;

#[derive(Debug, Error)]
pub enum MetricError {
    #[error("fidelity {0} outside [0, 1]")]
    FidelityOutOfRange(f64),
    #[error("Hilbert dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("invalid bin [{a}, {b}]")]
    InvalidBin { a: f64, b: f64 },
    #[error("distributions have different support sizes ({p} vs {q})")]
    SupportSizeMismatch { p: usize, q: usize },
    #[error("q is zero on bin {bin} where p is positive")]
    ZeroSupport { bin: usize },
    #[error("distribution entry {value} at bin {bin} is negative")]
    NegativeMass { bin: usize, value: f64 },
    #[error("Q-measure needs at least 2 qubits")]
    SingleQubit,
    #[error("zero samples requested")]
    NoSamples,
    #[error("zero histogram bins requested")]
    ZeroBins,
    #[error("parameter {index} ({value}) is within {eps} of its bound [{lo}, {hi}]")]
    ProbeTooCloseToBound {
        index: usize,
        value: f64,
        eps: f64,
        lo: f64,
        hi: f64,
    },
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error(transparent)]
    Qcore(#[from] crate::qcore::QcoreError),
}

/// ChaCha stream for sample `index` of a metric run.
pub(crate) fn sample_rng(seed: u64, index: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}
