//! Pulse-level quantum circuit simulation and profiling toolkit.
//!
//! The crate is organized around a small statevector kernel ([`qcore`]), a
//! pulse schedule intermediate representation ([`pulse`]), a two-fidelity
//! schedule simulator ([`sim`]), parameterized pulse/gate templates
//! ([`templates`]), ansatz profiling metrics ([`metrics`]), and a VQE
//! harness with application benchmarks ([`vqa`]).
//!
//! Conventions used throughout:
//!
//! - Qubit 0 is the least-significant bit of a state index, so `|01⟩` on two
//!   qubits means qubit 0 is in `|1⟩` and has state index 1.
//! - Pauli-string labels are addressed the same way: character `k` of a label
//!   acts on qubit `k` (`"ZI"` is Z on qubit 0).
//! - Durations are integer multiples of the AWG sample time `dt`.

pub mod metrics;
pub mod pulse;
pub mod qcore;
pub mod sim;
pub mod templates;
pub mod vqa;
