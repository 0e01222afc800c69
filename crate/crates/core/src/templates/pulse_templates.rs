//! Structural builders for the pulse design spaces.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::pulse::{
    Channel, ConstraintSpec, DeviceModel, Envelope, Instruction, InstructionKind, PulseParams,
    Schedule, ScheduleMetadata, Violation,
};

use super::layout::{ParamField, ParamLayout};
use super::spec::{TemplateId, TemplateSpec};
use super::TemplateError;

/// Fixed CR duration used when a template pins it (a mid-range grid point).
pub const FIXED_CR_DURATION: u64 = 512;

/// Fixed amplitude of the angle-only single-qubit probe.
pub const PULSE_1Q_ANGLE_AMPLITUDE: f64 = 0.08;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Binding {
    Free(usize),
    Fixed(f64),
    /// Resolves to `device.cal_duration` at instantiation.
    CalDuration,
    /// Resolves to `device.fixed_cr_amplitude` at instantiation.
    DeviceCrAmplitude,
}

#[derive(Debug, Clone)]
struct ProtoInstruction {
    kind: InstructionKind,
    channel: Channel,
    amplitude: Binding,
    angle: Binding,
    duration: Binding,
}

/// A pulse ansatz: structural instruction list plus the θ layout that binds
/// it.
pub struct PulseTemplate {
    spec: TemplateSpec,
    protos: Vec<ProtoInstruction>,
    layout: ParamLayout,
    n_cr: usize,
    /// Proto indices where a layer boundary aligns all qubit timelines.
    barriers: Vec<usize>,
}

/// Incremental builder so every design space shares the same slot-ordering
/// conventions: SQPs contribute (amplitude, angle[, duration]) and CRs
/// ([amplitude,] angle[, duration]) in structural order.
struct ProtoBuilder {
    spec: TemplateSpec,
    protos: Vec<ProtoInstruction>,
    layout: ParamLayout,
    n_cr: usize,
    barriers: Vec<usize>,
}

impl ProtoBuilder {
    fn new(spec: &TemplateSpec) -> Self {
        Self {
            spec: spec.clone(),
            protos: Vec::new(),
            layout: ParamLayout::default(),
            n_cr: 0,
            barriers: Vec::new(),
        }
    }

    /// Layer boundary: instructions after this point wait for every qubit.
    fn barrier(&mut self) {
        if !self.protos.is_empty() {
            self.barriers.push(self.protos.len());
        }
    }

    fn free(&mut self, field: ParamField) -> Binding {
        let idx = self.layout.push(self.protos.len(), field);
        Binding::Free(idx)
    }

    /// SQP with free amplitude and angle; duration free only when the
    /// template leaves it so.
    fn sqp(&mut self, qubit: usize) {
        let amplitude = self.free(ParamField::Amplitude);
        let angle = self.free(ParamField::Angle);
        let duration = if self.spec.sqp_duration_fixed() {
            Binding::CalDuration
        } else {
            self.free(ParamField::Duration)
        };
        self.protos.push(ProtoInstruction {
            kind: InstructionKind::PlaySqp,
            channel: Channel::Drive { qubit },
            amplitude,
            angle,
            duration,
        });
    }

    /// SQP with an explicit arity: 2 binds (amplitude, angle), 3 also binds
    /// duration. Used by the random layouts.
    fn sqp_with_arity(&mut self, qubit: usize, arity: usize) {
        let amplitude = self.free(ParamField::Amplitude);
        let angle = self.free(ParamField::Angle);
        let duration = if arity == 3 {
            self.free(ParamField::Duration)
        } else {
            Binding::CalDuration
        };
        self.protos.push(ProtoInstruction {
            kind: InstructionKind::PlaySqp,
            channel: Channel::Drive { qubit },
            amplitude,
            angle,
            duration,
        });
    }

    /// Single-qubit probe with explicit bindings.
    fn sqp_probe(&mut self, amplitude_free: bool, angle_free: bool) {
        let amplitude = if amplitude_free {
            self.free(ParamField::Amplitude)
        } else {
            Binding::Fixed(PULSE_1Q_ANGLE_AMPLITUDE)
        };
        let angle = if angle_free {
            self.free(ParamField::Angle)
        } else {
            Binding::Fixed(0.0)
        };
        self.protos.push(ProtoInstruction {
            kind: InstructionKind::PlaySqp,
            channel: Channel::Drive { qubit: 0 },
            amplitude,
            angle,
            duration: Binding::CalDuration,
        });
    }

    fn cr(&mut self, control: usize, target: usize) {
        let amplitude = if self.spec.cr_amplitude_fixed() {
            Binding::DeviceCrAmplitude
        } else {
            self.free(ParamField::Amplitude)
        };
        let angle = if self.spec.cr_angle_fixed() {
            Binding::Fixed(0.0)
        } else {
            self.free(ParamField::Angle)
        };
        let duration = if self.spec.cr_duration_fixed() {
            Binding::Fixed(FIXED_CR_DURATION as f64)
        } else {
            self.free(ParamField::Duration)
        };
        self.protos.push(ProtoInstruction {
            kind: InstructionKind::PlayCr,
            channel: Channel::Control { control, target },
            amplitude,
            angle,
            duration,
        });
        self.n_cr += 1;
    }

    fn finish(self) -> PulseTemplate {
        PulseTemplate {
            spec: self.spec,
            protos: self.protos,
            layout: self.layout,
            n_cr: self.n_cr,
            barriers: self.barriers,
        }
    }
}

impl PulseTemplate {
    pub fn build(spec: &TemplateSpec) -> Result<Self, TemplateError> {
        let n = spec.n_qubits;
        let mut b = ProtoBuilder::new(spec);
        match spec.id {
            TemplateId::HardwareEfficient
            | TemplateId::HardwareEfficientFixCr
            | TemplateId::DecayLayer
            | TemplateId::DecayLayerFixCr => {
                for _ in 0..spec.n_layers {
                    b.barrier();
                    for q in 0..n {
                        b.sqp(q);
                    }
                    for i in 0..n - 1 {
                        b.cr(i, i + 1);
                    }
                }
            }
            TemplateId::BlockDressed | TemplateId::BlockDressedFixCr => {
                for _ in 0..spec.n_layers {
                    // first block carries four dressing SQPs; later blocks
                    // share the trailing SQP on the common qubit
                    b.barrier();
                    b.sqp(0);
                    b.sqp(1);
                    b.cr(0, 1);
                    b.sqp(0);
                    b.sqp(1);
                    for k in 1..n - 1 {
                        b.sqp(k + 1);
                        b.cr(k, k + 1);
                        b.sqp(k);
                        b.sqp(k + 1);
                    }
                }
            }
            TemplateId::Dressed2Q => {
                for _ in 0..spec.n_layers {
                    b.barrier();
                    b.sqp(0);
                    b.sqp(1);
                    b.cr(0, 1);
                    b.sqp(0);
                    b.sqp(1);
                }
            }
            TemplateId::Blockpulse2Q => {
                for _ in 0..spec.n_layers {
                    b.barrier();
                    b.sqp(0);
                    b.sqp(1);
                    b.cr(0, 1);
                    b.sqp(0);
                    b.sqp(1);
                    b.cr(0, 1);
                    b.sqp(0);
                    b.sqp(1);
                }
            }
            TemplateId::Pulse1Q => b.sqp_probe(true, true),
            TemplateId::Pulse1QAmp => b.sqp_probe(true, false),
            TemplateId::Pulse1QAngle => b.sqp_probe(false, true),
            TemplateId::Random(k) => {
                build_random(&mut b, k)?;
            }
            other => return Err(TemplateError::UnknownId(other.name())),
        }
        Ok(b.finish())
    }

    pub fn spec(&self) -> &TemplateSpec {
        &self.spec
    }

    pub fn n_params(&self) -> usize {
        self.layout.len()
    }

    pub fn n_cr(&self) -> usize {
        self.n_cr
    }

    pub fn layout(&self) -> &ParamLayout {
        &self.layout
    }

    /// Number of structural SQP instructions.
    pub fn n_sqp(&self) -> usize {
        self.protos.len() - self.n_cr
    }

    /// Kind of the structural instruction a layout slot points at.
    pub fn instruction_kind(&self, index: usize) -> InstructionKind {
        self.protos[index].kind
    }

    /// Full-range rotation sweep of every slot, in radians: how much
    /// rotation angle the output picks up as the parameter crosses its
    /// whole range. Optimizers use this to put slots of very different
    /// physical sensitivity on one footing.
    pub fn slot_rotation_scales(
        &self,
        device: &DeviceModel,
        cspec: &ConstraintSpec,
    ) -> Vec<f64> {
        use super::layout::ParamField;
        let (alo, ahi) = cspec.amplitude_range;
        let amp_width = ahi - alo;
        let amp_typical = 0.5 * alo.abs().max(ahi.abs());
        let (dlo, dhi) = cspec.duration_range;
        let dur_width = (dhi - dlo) as f64;
        let dur_typical = 0.5 * (dlo + dhi) as f64;
        let cr_strength = |proto: &ProtoInstruction| -> f64 {
            // |b⃗ + a⃗| of the edge, rad/dt per unit amplitude
            if let Channel::Control { control, target } = proto.channel {
                if let Ok(edge) = device.edge(control, target) {
                    let c = edge.cr_coefficients;
                    let x = c.a_x + c.b_x;
                    let y = c.a_y + c.b_y;
                    let z = c.a_z + c.b_z;
                    return (x * x + y * y + z * z).sqrt();
                }
            }
            4.0e-3
        };
        self.layout
            .slots()
            .iter()
            .map(|slot| {
                let proto = &self.protos[slot.instruction];
                match (slot.field, proto.kind) {
                    (ParamField::Angle, _) => std::f64::consts::TAU,
                    (ParamField::Amplitude, InstructionKind::PlayCr) => {
                        amp_width * 2.0 * cr_strength(proto) * dur_typical
                    }
                    (ParamField::Amplitude, _) => {
                        amp_width * std::f64::consts::PI / device.cal_amplitude
                    }
                    (ParamField::Duration, InstructionKind::PlayCr) => {
                        let amp = match proto.amplitude {
                            Binding::DeviceCrAmplitude => device.fixed_cr_amplitude.abs(),
                            Binding::Fixed(v) => v.abs(),
                            _ => amp_typical,
                        };
                        dur_width * 2.0 * amp * cr_strength(proto)
                    }
                    (ParamField::Duration, _) => {
                        dur_width * std::f64::consts::PI
                            * (amp_typical / device.cal_amplitude)
                            / device.cal_duration as f64
                    }
                }
            })
            .collect()
    }

    fn resolve(&self, binding: Binding, theta: &[f64], device: &DeviceModel) -> f64 {
        match binding {
            Binding::Free(idx) => theta[idx],
            Binding::Fixed(v) => v,
            Binding::CalDuration => device.cal_duration as f64,
            Binding::DeviceCrAmplitude => device.fixed_cr_amplitude,
        }
    }

    fn bind(
        &self,
        theta: &[f64],
        device: &DeviceModel,
        cspec: Option<&ConstraintSpec>,
    ) -> Result<Schedule, TemplateError> {
        if theta.len() != self.n_params() {
            return Err(TemplateError::LengthMismatch {
                expected: self.n_params(),
                actual: theta.len(),
            });
        }
        if let Some(c) = cspec {
            self.validate_theta(theta, c)?;
        }
        let mut ready = vec![0u64; self.spec.n_qubits];
        let mut instructions = Vec::with_capacity(self.protos.len());
        for (proto_idx, proto) in self.protos.iter().enumerate() {
            if self.barriers.contains(&proto_idx) {
                let fence = ready.iter().copied().max().unwrap_or(0);
                ready.iter_mut().for_each(|r| *r = fence);
            }
            let amplitude = self.resolve(proto.amplitude, theta, device);
            let angle = self.resolve(proto.angle, theta, device);
            let raw_duration = self.resolve(proto.duration, theta, device);
            let duration = match (proto.duration, cspec) {
                // durations snap to the grid on instantiation, and only there
                (Binding::Free(_), Some(c)) => snap_duration(raw_duration, c),
                _ => raw_duration.round().max(0.0) as u64,
            };
            let envelope = match proto.kind {
                InstructionKind::PlaySqp => Envelope::gaussian_for_duration(duration),
                _ => Envelope::default_cr(),
            };
            let qubits = proto.channel.qubits();
            let start = qubits.iter().map(|&q| ready[q]).max().unwrap_or(0);
            for &q in &qubits {
                ready[q] = start + duration;
            }
            instructions.push(Instruction {
                kind: proto.kind,
                channel: proto.channel,
                start,
                params: PulseParams::new(amplitude, angle, duration),
                envelope,
            });
        }
        let metadata = ScheduleMetadata {
            template: Some(self.spec.id.name()),
            n_layers: Some(self.spec.n_layers as u32),
            depth: None,
            seed: match self.spec.id {
                TemplateId::Random(_) => Some(self.spec.seed),
                _ => None,
            },
        };
        let mut schedule = Schedule::new(self.spec.n_qubits, instructions, metadata)?;
        schedule.metadata.depth = Some(schedule.depth());
        Ok(schedule)
    }

    fn validate_theta(&self, theta: &[f64], cspec: &ConstraintSpec) -> Result<(), TemplateError> {
        for (index, slot) in self.layout.slots().iter().enumerate() {
            let value = theta[index];
            match slot.field {
                ParamField::Amplitude => {
                    let (lo, hi) = cspec.amplitude_range;
                    if !(value >= lo && value <= hi) {
                        return Err(TemplateError::ConstraintViolation {
                            index,
                            violation: Violation::AmplitudeOutOfRange { value, lo, hi },
                        });
                    }
                }
                ParamField::Angle => {}
                ParamField::Duration => {
                    let snapped = snap_duration(value, cspec);
                    let (lo, hi) = cspec.duration_range;
                    if snapped < lo || snapped > hi {
                        return Err(TemplateError::ConstraintViolation {
                            index,
                            violation: Violation::DurationOutOfRange { value: snapped, lo, hi },
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Binds θ into a schedule, validating amplitudes and snapping free
    /// durations to the grid.
    pub fn instantiate(
        &self,
        theta: &[f64],
        device: &DeviceModel,
        cspec: &ConstraintSpec,
    ) -> Result<Schedule, TemplateError> {
        self.bind(theta, device, Some(cspec))
    }

    /// Continuous relaxation: no validation, no grid snapping. Probe
    /// evaluations for finite differences use this path.
    pub fn instantiate_relaxed(
        &self,
        theta: &[f64],
        device: &DeviceModel,
    ) -> Result<Schedule, TemplateError> {
        self.bind(theta, device, None)
    }

    /// Reference θ: amplitudes and angles at range midpoints, durations at
    /// the midpoint grid value (or the maximum when `max_durations` is set).
    pub fn reference_theta(&self, cspec: &ConstraintSpec, max_durations: bool) -> Vec<f64> {
        self.layout
            .slots()
            .iter()
            .map(|slot| match slot.field {
                ParamField::Amplitude => {
                    let (lo, hi) = cspec.amplitude_range;
                    0.5 * (lo + hi)
                }
                ParamField::Angle => 1.0,
                ParamField::Duration => {
                    let (lo, hi) = cspec.duration_range;
                    if max_durations {
                        hi as f64
                    } else {
                        snap_duration(0.5 * (lo + hi) as f64, cspec) as f64
                    }
                }
            })
            .collect()
    }

    /// Packing depth at reference parameters.
    pub fn reference_depth(&self) -> u32 {
        let device = DeviceModel::ideal_line(self.spec.n_qubits.max(2));
        let cspec = ConstraintSpec::unconstrained();
        let theta = self.reference_theta(&cspec, false);
        self.instantiate(&theta, &device, &cspec)
            .map(|s| s.depth())
            .unwrap_or(0)
    }
}

fn snap_duration(value: f64, cspec: &ConstraintSpec) -> u64 {
    let g = cspec.duration_granularity as f64;
    let snapped = (value / g).round() * g;
    let (lo, hi) = cspec.duration_range;
    (snapped.max(0.0) as u64).clamp(lo, hi)
}

/// Random layout with the same parameter and CR budget as design space
/// `k - 6`: CRs land on uniformly random adjacent pairs and the leftover
/// parameter budget is spent on randomly placed 2- or 3-parameter SQPs.
fn build_random(b: &mut ProtoBuilder, k: u8) -> Result<(), TemplateError> {
    let spec = b.spec.clone();
    let matched = TemplateId::from_pulse_number(k - 6)
        .ok_or_else(|| TemplateError::UnknownId(format!("RAND_{k}")))?;
    let matched_spec = TemplateSpec::new(matched, spec.n_qubits, spec.n_layers)?;
    let matched_template = PulseTemplate::build(&matched_spec)?;
    let total = matched_template.n_params();
    let n_cr = matched_template.n_cr();
    let cr_arity = if spec.cr_amplitude_fixed() { 2 } else { 3 };
    let mut budget = total - cr_arity * n_cr;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n_qubits;

    // choose SQP arities that exactly exhaust the budget: 3 is legal when
    // the remainder stays representable as a sum of 2s and 3s
    let mut arities = Vec::new();
    while budget > 0 {
        let can_two = budget == 2 || budget >= 4;
        let can_three = budget == 3 || budget >= 5;
        let arity = match (can_two, can_three) {
            (true, true) => {
                if rng.random_bool(0.5) {
                    2
                } else {
                    3
                }
            }
            (true, false) => 2,
            (false, true) => 3,
            (false, false) => return Err(TemplateError::InfeasibleBudget { remainder: budget }),
        };
        arities.push(arity);
        budget -= arity;
    }

    // random placement, then a deterministic shuffle to interleave
    enum Slot {
        Sqp(usize, usize),
        Cr(usize),
    }
    let mut slots: Vec<Slot> = Vec::new();
    for arity in arities {
        slots.push(Slot::Sqp(rng.random_range(0..n), arity));
    }
    for _ in 0..n_cr {
        slots.push(Slot::Cr(rng.random_range(0..n - 1)));
    }
    slots.shuffle(&mut rng);

    for slot in slots {
        match slot {
            Slot::Sqp(qubit, arity) => b.sqp_with_arity(qubit, arity),
            Slot::Cr(pair) => b.cr(pair, pair + 1),
        }
    }
    Ok(())
}
