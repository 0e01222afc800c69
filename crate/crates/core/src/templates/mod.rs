//! Parameterized pulse templates and gate-level baselines.
//!
//! The six proposed pulse design spaces are numbered 1–6; even numbers fix
//! the CR amplitude of the odd space before them. Random controls 7–12
//! mirror the parameter and CR budget of the space six below them. Template
//! construction is pure, and random templates derive their structure from an
//! explicit seed so parallel construction stays deterministic.

mod gates;
mod layout;
mod pulse_templates;
mod spec;

pub use gates::GateCircuit;
pub use layout::{ParamField, ParamLayout, ParamSlot};
pub use pulse_templates::PulseTemplate;
pub use spec::{FixedField, TemplateId, TemplateSpec};

use rand::Rng;
use thiserror::Error;

use crate::pulse::{ConstraintSpec, DeviceModel, PulseError, Schedule, Violation};
use crate::qcore::{QcoreError, StateVector, UnitaryMatrix};
use crate::sim::{PropagationLevel, SimError};

#[derive(Debug, Error)]
pub enum TemplateError {
    #[error("unknown template id {0:?}")]
    UnknownId(String),
    #[error("template {id} needs at least {min} qubits, got {n_qubits}")]
    TooFewQubits {
        id: String,
        n_qubits: usize,
        min: usize,
    },
    #[error("template {id} is defined for exactly {expected} qubit(s), got {n_qubits}")]
    WrongQubitCount {
        id: String,
        n_qubits: usize,
        expected: usize,
    },
    #[error("layer count must be at least 1")]
    ZeroLayers,
    #[error("parameter vector has length {actual}, template expects {expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("parameter {index}: {violation}")]
    ConstraintViolation { index: usize, violation: Violation },
    #[error("random template budget cannot be exhausted (remainder {remainder})")]
    InfeasibleBudget { remainder: usize },
    #[error(transparent)]
    Pulse(#[from] PulseError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Qcore(#[from] QcoreError),
}

/// Parameter and CR pulse counts for the numbered design spaces, from the
/// per-layer structure: `(n_params, n_cr, depth)`. Depth is packing
/// metadata, the number of distinct instruction start times at reference
/// parameter values.
pub fn param_count(
    id: TemplateId,
    n_qubits: usize,
    n_layers: usize,
) -> Result<(usize, usize, u32), TemplateError> {
    let spec = TemplateSpec::new(id, n_qubits, n_layers)?;
    let template = Template::build(&spec)?;
    Ok((template.n_params(), template.n_cr(), template.reference_depth()))
}

/// A buildable ansatz: either a pulse template or a gate baseline circuit.
pub enum Template {
    Pulse(PulseTemplate),
    Gate(GateCircuit),
}

impl Template {
    pub fn build(spec: &TemplateSpec) -> Result<Self, TemplateError> {
        if spec.id.is_gate_baseline() {
            Ok(Template::Gate(GateCircuit::build(spec)?))
        } else {
            Ok(Template::Pulse(PulseTemplate::build(spec)?))
        }
    }

    pub fn spec(&self) -> &TemplateSpec {
        match self {
            Template::Pulse(t) => t.spec(),
            Template::Gate(g) => g.spec(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.spec().n_qubits
    }

    pub fn n_params(&self) -> usize {
        match self {
            Template::Pulse(t) => t.n_params(),
            Template::Gate(g) => g.n_params(),
        }
    }

    /// Number of CR pulses (for pulse templates) or two-qubit gates (for
    /// gate baselines).
    pub fn n_cr(&self) -> usize {
        match self {
            Template::Pulse(t) => t.n_cr(),
            Template::Gate(g) => g.n_two_qubit_gates(),
        }
    }

    /// Field kind of every parameter slot, in layout order.
    pub fn field_kinds(&self) -> Vec<ParamField> {
        match self {
            Template::Pulse(t) => t.layout().fields(),
            Template::Gate(g) => vec![ParamField::Angle; g.n_params()],
        }
    }

    /// Full-range rotation sweep per slot, in radians (optimizer
    /// conditioning). Gate parameters are rotation angles already.
    pub fn parameter_scales(&self, device: &DeviceModel, cspec: &ConstraintSpec) -> Vec<f64> {
        match self {
            Template::Pulse(t) => t.slot_rotation_scales(device, cspec),
            Template::Gate(g) => vec![std::f64::consts::TAU; g.n_params()],
        }
    }

    /// Evolves `|0…0⟩` through the bound template.
    pub fn prepare_state(
        &self,
        theta: &[f64],
        device: &DeviceModel,
        cspec: &ConstraintSpec,
        level: PropagationLevel,
    ) -> Result<StateVector, TemplateError> {
        let init = StateVector::zero(self.n_qubits())?;
        match self {
            Template::Pulse(t) => {
                let schedule = t.instantiate(theta, device, cspec)?;
                Ok(crate::sim::evolve_schedule(&schedule, device, &init, level)?)
            }
            Template::Gate(g) => g.prepare_state(theta, &init),
        }
    }

    /// Same evolution on the continuous relaxation: duration snapping and
    /// range validation are suspended (finite-difference probes).
    pub fn prepare_state_relaxed(
        &self,
        theta: &[f64],
        device: &DeviceModel,
    ) -> Result<StateVector, TemplateError> {
        let init = StateVector::zero(self.n_qubits())?;
        match self {
            Template::Pulse(t) => {
                let schedule = t.instantiate_relaxed(theta, device)?;
                Ok(crate::sim::evolve_schedule(
                    &schedule,
                    device,
                    &init,
                    PropagationLevel::EffectiveUnitary,
                )?)
            }
            Template::Gate(g) => g.prepare_state(theta, &init),
        }
    }

    /// Whole-circuit unitary at the given parameters.
    pub fn unitary(
        &self,
        theta: &[f64],
        device: &DeviceModel,
        cspec: &ConstraintSpec,
    ) -> Result<UnitaryMatrix, TemplateError> {
        match self {
            Template::Pulse(t) => {
                let schedule = t.instantiate(theta, device, cspec)?;
                Ok(crate::sim::schedule_unitary(&schedule, device)?)
            }
            Template::Gate(g) => g.unitary(theta),
        }
    }

    /// Sequence duration in dt at the given parameters.
    pub fn duration_dt(
        &self,
        theta: &[f64],
        device: &DeviceModel,
        cspec: &ConstraintSpec,
    ) -> Result<u64, TemplateError> {
        match self {
            Template::Pulse(t) => Ok(t.instantiate(theta, device, cspec)?.duration_dt()),
            Template::Gate(g) => Ok(g.duration_dt(device)),
        }
    }

    /// Worst-case sequence duration over the constraint box: every free
    /// duration at its maximum.
    pub fn max_duration_dt(
        &self,
        device: &DeviceModel,
        cspec: &ConstraintSpec,
    ) -> Result<u64, TemplateError> {
        match self {
            Template::Pulse(t) => {
                let theta = t.reference_theta(cspec, true);
                Ok(t.instantiate(&theta, device, cspec)?.duration_dt())
            }
            Template::Gate(g) => Ok(g.duration_dt(device)),
        }
    }

    /// Packing depth at reference parameter values.
    pub fn reference_depth(&self) -> u32 {
        match self {
            Template::Pulse(t) => t.reference_depth(),
            Template::Gate(g) => g.depth(),
        }
    }

    pub fn instantiate(
        &self,
        theta: &[f64],
        device: &DeviceModel,
        cspec: &ConstraintSpec,
    ) -> Result<Option<Schedule>, TemplateError> {
        match self {
            Template::Pulse(t) => Ok(Some(t.instantiate(theta, device, cspec)?)),
            Template::Gate(_) => Ok(None),
        }
    }
}

/// Random-layout control matching the parameter and CR budget of design
/// space `match_id` (1–6): the returned spec builds deterministically from
/// `seed`.
pub fn random_pulse_template(
    match_id: u8,
    n_qubits: usize,
    n_layers: usize,
    seed: u64,
) -> Result<TemplateSpec, TemplateError> {
    if !(1..=6).contains(&match_id) {
        return Err(TemplateError::UnknownId(format!("match id {match_id}")));
    }
    Ok(TemplateSpec::new(TemplateId::Random(match_id + 6), n_qubits, n_layers)?.with_seed(seed))
}

/// Draws one parameter vector: amplitudes uniform on the constrained range,
/// angles uniform on `[0, 2π)`, free durations uniform over multiples of 16
/// inside the duration range. Fixed fields never appear in the vector.
pub fn sample_parameters<R: Rng>(
    template: &Template,
    cspec: &ConstraintSpec,
    rng: &mut R,
) -> Vec<f64> {
    template
        .field_kinds()
        .iter()
        .map(|field| sample_field(*field, cspec, rng))
        .collect()
}

pub(crate) fn sample_field<R: Rng>(field: ParamField, cspec: &ConstraintSpec, rng: &mut R) -> f64 {
    match field {
        ParamField::Amplitude => {
            let (lo, hi) = cspec.amplitude_range;
            rng.random_range(lo..hi)
        }
        ParamField::Angle => rng.random_range(0.0..std::f64::consts::TAU),
        ParamField::Duration => {
            let (lo, hi) = cspec.duration_range;
            let g = cspec.duration_granularity;
            let steps = (hi - lo) / g;
            (lo + g * rng.random_range(0..=steps)) as f64
        }
    }
}

/// Like [`sample_parameters`] but keeps every coordinate away from its
/// bounds, so finite-difference probes of size `eps` stay inside the box.
pub fn sample_interior_parameters<R: Rng>(
    template: &Template,
    cspec: &ConstraintSpec,
    rng: &mut R,
    eps: f64,
) -> Vec<f64> {
    template
        .field_kinds()
        .iter()
        .map(|field| match field {
            ParamField::Amplitude => {
                let (lo, hi) = cspec.amplitude_range;
                let margin = (hi - lo) * 0.05 + eps;
                rng.random_range(lo + margin..hi - margin)
            }
            ParamField::Angle => rng.random_range(0.1..std::f64::consts::TAU - 0.1),
            ParamField::Duration => {
                let (lo, hi) = cspec.duration_range;
                let g = cspec.duration_granularity;
                let steps = (hi - lo) / g;
                (lo + g * rng.random_range(1..steps)) as f64
            }
        })
        .collect()
}

#[cfg(test)]
mod tests;
