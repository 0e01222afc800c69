//! Schedule simulator: two-level qubits in the rotating frame, on resonance.
//!
//! The drive phase enters as the azimuth of the rotation axis, so amplitude
//! maps to rotations about an equatorial axis and angle to the choice of that
//! axis. Two propagation paths are provided: a closed-form effective-unitary
//! path and a per-tick time-stepped integrator that exists purely as a
//! cross-check oracle (the per-pulse Hamiltonian family commutes across time
//! for fixed angle, so both integrate the same evolution).
//!
//! Everything is stateless given `(Schedule, DeviceModel)`; schedules may be
//! evaluated from many threads at once.

mod unitaries;

pub use unitaries::{cr_unitary, sqp_unitary};

use ndarray::Array1;
use num_complex::Complex64;
use thiserror::Error;

use crate::pulse::{
    Channel, DeviceModel, Instruction, InstructionKind, PulseError, Schedule,
};
use crate::qcore::{QcoreError, StateVector, UnitaryMatrix};

/// Simulation fidelity selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PropagationLevel {
    /// One closed-form unitary per instruction.
    #[default]
    EffectiveUnitary,
    /// One matrix exponential per envelope sample (and per sub-step).
    TimeStepped { steps_per_dt: u32 },
}

impl PropagationLevel {
    pub fn time_stepped() -> Self {
        PropagationLevel::TimeStepped { steps_per_dt: 1 }
    }
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Pulse(#[from] PulseError),
    #[error(transparent)]
    Qcore(#[from] QcoreError),
    #[error("amplitude {amplitude} exceeds the AWG output range [-1, 1]")]
    AmplitudeOutOfRange { amplitude: f64 },
    #[error("steps_per_dt must be at least 1")]
    ZeroSteps,
    #[error("schedule has {actual} qubits, initial state has {expected}")]
    QubitCountMismatch { expected: usize, actual: usize },
    #[error("{n_qubits} qubits exceeds the schedule-unitary cap of {max}")]
    TooManyQubits { n_qubits: usize, max: usize },
    #[error("instruction kind {kind:?} cannot play on channel {channel}")]
    ChannelKindMismatch {
        kind: InstructionKind,
        channel: String,
    },
}

/// Hard physical bound every playable pulse must satisfy: the AWG cannot
/// emit beyond its full-scale output. Grid granularity is a validation
/// concern, not a simulation one (finite-difference probes deliberately
/// evaluate off-grid durations).
pub(crate) fn check_playable(instr: &Instruction) -> Result<(), SimError> {
    if instr.params.amplitude.abs() > 1.0 {
        return Err(SimError::AmplitudeOutOfRange {
            amplitude: instr.params.amplitude,
        });
    }
    Ok(())
}

fn instruction_unitary(
    instr: &Instruction,
    device: &DeviceModel,
    level: PropagationLevel,
) -> Result<Option<(UnitaryMatrix, Vec<usize>)>, SimError> {
    check_playable(instr)?;
    match (instr.kind, instr.channel) {
        (InstructionKind::Delay, _) => Ok(None),
        (InstructionKind::PlaySqp, Channel::Drive { qubit }) => {
            let u = match level {
                PropagationLevel::EffectiveUnitary => {
                    sqp_unitary(&instr.params, &instr.envelope, device)?
                }
                PropagationLevel::TimeStepped { steps_per_dt } => {
                    unitaries::sqp_unitary_stepped(
                        &instr.params,
                        &instr.envelope,
                        device,
                        steps_per_dt,
                    )?
                }
            };
            Ok(Some((u, vec![qubit])))
        }
        (InstructionKind::PlayCr, Channel::Control { control, target }) => {
            let coeffs = device.edge(control, target)?.cr_coefficients;
            let u = match level {
                PropagationLevel::EffectiveUnitary => {
                    cr_unitary(&instr.params, &instr.envelope, &coeffs, device)?
                }
                PropagationLevel::TimeStepped { steps_per_dt } => {
                    unitaries::cr_unitary_stepped(
                        &instr.params,
                        &instr.envelope,
                        &coeffs,
                        steps_per_dt,
                    )?
                }
            };
            Ok(Some((u, vec![control, target])))
        }
        (InstructionKind::PlaySqp, channel @ Channel::Control { .. })
        | (InstructionKind::PlayCr, channel @ Channel::Drive { .. }) => {
            Err(SimError::ChannelKindMismatch {
                kind: instr.kind,
                channel: channel.to_string(),
            })
        }
    }
}

/// Evolves `init` through the schedule, applying instruction unitaries in
/// `(start, channel)` order.
pub fn evolve_schedule(
    schedule: &Schedule,
    device: &DeviceModel,
    init: &StateVector,
    level: PropagationLevel,
) -> Result<StateVector, SimError> {
    if let PropagationLevel::TimeStepped { steps_per_dt: 0 } = level {
        return Err(SimError::ZeroSteps);
    }
    if init.n_qubits() != schedule.n_qubits() {
        return Err(SimError::QubitCountMismatch {
            expected: init.n_qubits(),
            actual: schedule.n_qubits(),
        });
    }
    let mut state = init.clone();
    for instr in schedule.instructions() {
        if let Some((u, targets)) = instruction_unitary(instr, device, level)? {
            state = crate::qcore::apply_embedded_unitary(&state, &u, &targets)?;
        }
    }
    Ok(state)
}

/// Maximum qubit count for dense whole-schedule unitaries.
pub const MAX_UNITARY_QUBITS: usize = 10;

/// Ordered product of the embedded instruction unitaries.
pub fn schedule_unitary(
    schedule: &Schedule,
    device: &DeviceModel,
) -> Result<UnitaryMatrix, SimError> {
    let n = schedule.n_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(SimError::TooManyQubits {
            n_qubits: n,
            max: MAX_UNITARY_QUBITS,
        });
    }
    let dim = 1usize << n;
    let mut columns: Vec<Array1<Complex64>> = (0..dim)
        .map(|j| {
            let mut col = Array1::zeros(dim);
            col[j] = Complex64::new(1.0, 0.0);
            col
        })
        .collect();
    for instr in schedule.instructions() {
        if let Some((u, targets)) =
            instruction_unitary(instr, device, PropagationLevel::EffectiveUnitary)?
        {
            for col in &mut columns {
                *col = crate::qcore::apply_embedded_raw(col, n, u.entries(), &targets);
            }
        }
    }
    let mut out = ndarray::Array2::zeros((dim, dim));
    for (j, col) in columns.iter().enumerate() {
        for i in 0..dim {
            out[[i, j]] = col[i];
        }
    }
    Ok(UnitaryMatrix::new(out)?)
}
