//! The VQE driver: minimize a Hamiltonian expectation over a template's
//! parameter box.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::pulse::{ConstraintSpec, DeviceModel};
use crate::qcore::{PauliHamiltonian, StateVector};
use crate::sim::PropagationLevel;
use crate::templates::{sample_field, ParamField, Template, TemplateSpec};

use super::hamiltonian::expectation;
use super::optimizer::{optimize, OptimizerConfig, VqeTrace};
use super::VqaError;

/// Result of one VQE run: the optimizer trace plus the final state and the
/// duration of the best schedule.
#[derive(Debug, Clone)]
pub struct VqeOutcome {
    pub trace: VqeTrace,
    pub best_state: StateVector,
    /// Sequence duration of the best iterate's schedule; gate baselines
    /// report their fixed circuit duration.
    pub duration_dt: u64,
}

/// Amplitude sub-range used for the small-rotation start: the third of the
/// range closest to zero rotation.
pub fn small_rotation_range(range: (f64, f64)) -> (f64, f64) {
    let (lo, hi) = range;
    let width = (hi - lo) / 3.0;
    if lo >= 0.0 {
        (lo, lo + width)
    } else if hi <= 0.0 {
        (hi - width, hi)
    } else {
        ((-width / 2.0).max(lo), (width / 2.0).min(hi))
    }
}

/// Initial parameter vector: amplitudes from the small-rotation sub-range,
/// everything else as in plain sampling.
fn initial_theta(
    template: &Template,
    cspec: &ConstraintSpec,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    let narrow_amp = small_rotation_range(cspec.amplitude_range);
    template
        .field_kinds()
        .iter()
        .map(|&field| match field {
            ParamField::Amplitude => rng.random_range(narrow_amp.0..narrow_amp.1),
            other => sample_field(other, cspec, rng),
        })
        .collect()
}

/// Minimizes `⟨ψ(θ)|H|ψ(θ)⟩` for the given template.
pub fn vqe(
    h: &PauliHamiltonian,
    spec: &TemplateSpec,
    device: &DeviceModel,
    cspec: &ConstraintSpec,
    config: &OptimizerConfig,
) -> Result<VqeOutcome, VqaError> {
    let template = Template::build(spec)?;
    if template.n_qubits() != h.n_qubits() {
        return Err(VqaError::QubitCountMismatch {
            hamiltonian: h.n_qubits(),
            ansatz: template.n_qubits(),
        });
    }
    let bounds: Vec<(f64, f64)> = template
        .field_kinds()
        .iter()
        .map(|f| f.range(cspec))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let theta0 = initial_theta(&template, cspec, &mut rng);

    // the optimizer works in rotation-scaled coordinates so that slots of
    // very different physical sensitivity (amplitudes vs durations) are
    // comparably conditioned
    let scales = template.parameter_scales(device, cspec);
    let to_theta = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .zip(scales.iter())
            .zip(bounds.iter())
            .map(|((&vi, &s), &(lo, hi))| lo + (vi / s) * (hi - lo))
            .collect()
    };
    let v0: Vec<f64> = theta0
        .iter()
        .zip(scales.iter())
        .zip(bounds.iter())
        .map(|((&t, &s), &(lo, hi))| (t - lo) / (hi - lo) * s)
        .collect();
    let scaled_bounds: Vec<(f64, f64)> = scales.iter().map(|&s| (0.0, s)).collect();

    let objective = |v: &[f64]| -> Result<f64, VqaError> {
        let theta = to_theta(v);
        let state = template.prepare_state(&theta, device, cspec, PropagationLevel::default())?;
        expectation(&state, h)
    };
    let mut trace = optimize(objective, &v0, &scaled_bounds, config)?;
    trace.best_theta = to_theta(&trace.best_theta);

    let best_state =
        template.prepare_state(&trace.best_theta, device, cspec, PropagationLevel::default())?;
    let duration_dt = template.duration_dt(&trace.best_theta, device, cspec)?;
    Ok(VqeOutcome {
        trace,
        best_state,
        duration_dt,
    })
}
