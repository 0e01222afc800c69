//! Pulse parameter types, envelopes, the schedule intermediate
//! representation, the device model, and parameter constraints.
//!
//! Everything here is a plain value type; the lookup table behind
//! [`constraint_spec_for`] is read-only after startup.

mod constraints;
mod device;
mod envelope;
mod schedule;

pub use constraints::{constraint_spec_for, validate_params, ConstraintSpec, Violation};
pub use device::{CrCoefficients, DeviceModel, Edge};
pub use envelope::{envelope_area, envelope_samples, Envelope, EnvelopeKind};
pub use schedule::{
    deserialize_schedule, schedule_duration, serialize_schedule, Channel, Instruction,
    InstructionKind, PulseParams, Schedule, ScheduleMetadata,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PulseError {
    #[error("gaussian_square flat top is negative: 2·rise_fall = {rise_fall_total} > duration {duration}")]
    NegativeFlatTop { rise_fall_total: f64, duration: u64 },
    #[error("envelope sigma must be positive, got {sigma}")]
    NonPositiveSigma { sigma: f64 },
    #[error("instructions overlap on channel {channel}: [{first_start}, {first_end}) and [{second_start}, {second_end})")]
    ChannelOverlap {
        channel: String,
        first_start: u64,
        first_end: u64,
        second_start: u64,
        second_end: u64,
    },
    #[error("channel references qubit {qubit} but the schedule has {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("no coupling edge ({control}, {target}) in the device model")]
    UnknownEdge { control: usize, target: usize },
    #[error("device model invalid: {0}")]
    InvalidDevice(String),
    #[error("unsupported schedule file version {0}")]
    UnsupportedVersion(u32),
    #[error("schedule parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("parameter validation failed: {0:?}")]
    Validation(Vec<Violation>),
}
