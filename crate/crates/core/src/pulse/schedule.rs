//! Timed pulse instructions and the schedule container.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::envelope::Envelope;
use super::PulseError;

/// Free parameters of one pulse instruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseParams {
    /// Dimensionless fraction of the maximum AWG output.
    pub amplitude: f64,
    /// Drive phase in radians, stored normalized to `[0, 2π)`.
    pub angle: f64,
    /// Length in dt ticks.
    pub duration: u64,
    /// Carrier detuning in Hz; carried as metadata, never simulated.
    pub frequency_offset: f64,
}

impl PulseParams {
    pub fn new(amplitude: f64, angle: f64, duration: u64) -> Self {
        Self {
            amplitude,
            angle: normalize_angle(angle),
            duration,
            frequency_offset: 0.0,
        }
    }
}

/// Wraps an angle into `[0, 2π)`.
pub(crate) fn normalize_angle(angle: f64) -> f64 {
    let wrapped = angle.rem_euclid(TAU);
    if wrapped == TAU {
        0.0
    } else {
        wrapped
    }
}

/// Output line an instruction plays on.
///
/// The derived ordering (drive channels by qubit, then control channels by
/// qubit pair) is the tie-break used when two instructions start on the same
/// tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Channel {
    Drive { qubit: usize },
    Control { control: usize, target: usize },
}

impl Channel {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Channel::Drive { qubit } => vec![*qubit],
            Channel::Control { control, target } => vec![*control, *target],
        }
    }
}

impl std::fmt::Display for Channel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Channel::Drive { qubit } => write!(f, "d{qubit}"),
            Channel::Control { control, target } => write!(f, "u{control}_{target}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstructionKind {
    PlaySqp,
    PlayCr,
    Delay,
}

/// One timed pulse on a channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Instruction {
    pub kind: InstructionKind,
    pub channel: Channel,
    /// Start tick, in dt.
    pub start: u64,
    pub params: PulseParams,
    pub envelope: Envelope,
}

impl Instruction {
    pub fn end(&self) -> u64 {
        self.start + self.params.duration
    }
}

/// Optional provenance carried by a schedule.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScheduleMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub template: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_layers: Option<u32>,
    /// Number of distinct instruction start times in the packed schedule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A time-ordered list of non-overlapping per-channel instructions.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    n_qubits: usize,
    instructions: Vec<Instruction>,
    pub metadata: ScheduleMetadata,
}

impl Schedule {
    /// Builds a schedule, sorting instructions by `(start, channel)` and
    /// rejecting out-of-range qubits or same-channel overlap.
    pub fn new(
        n_qubits: usize,
        mut instructions: Vec<Instruction>,
        metadata: ScheduleMetadata,
    ) -> Result<Self, PulseError> {
        for instr in &instructions {
            for q in instr.channel.qubits() {
                if q >= n_qubits {
                    return Err(PulseError::QubitOutOfRange { qubit: q, n_qubits });
                }
            }
        }
        instructions.sort_by_key(|i| (i.start, i.channel));
        let mut by_channel: std::collections::BTreeMap<Channel, (u64, u64)> = Default::default();
        for instr in &instructions {
            if let Some(&(prev_start, prev_end)) = by_channel.get(&instr.channel) {
                if instr.start < prev_end {
                    return Err(PulseError::ChannelOverlap {
                        channel: instr.channel.to_string(),
                        first_start: prev_start,
                        first_end: prev_end,
                        second_start: instr.start,
                        second_end: instr.end(),
                    });
                }
            }
            by_channel.insert(instr.channel, (instr.start, instr.end()));
        }
        Ok(Self {
            n_qubits,
            instructions,
            metadata,
        })
    }

    pub fn empty(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            instructions: Vec::new(),
            metadata: ScheduleMetadata::default(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    /// Total sequence duration in dt: the latest instruction end, 0 when
    /// empty.
    pub fn duration_dt(&self) -> u64 {
        self.instructions.iter().map(|i| i.end()).max().unwrap_or(0)
    }

    /// Number of distinct start times.
    pub fn depth(&self) -> u32 {
        let mut starts: Vec<u64> = self.instructions.iter().map(|i| i.start).collect();
        starts.sort_unstable();
        starts.dedup();
        starts.len() as u32
    }

    /// Appends `other` after this schedule in time.
    pub fn concat(&self, other: &Schedule) -> Result<Schedule, PulseError> {
        let offset = self.duration_dt();
        let mut instructions = self.instructions.clone();
        for instr in other.instructions() {
            let mut shifted = instr.clone();
            shifted.start += offset;
            instructions.push(shifted);
        }
        Schedule::new(
            self.n_qubits.max(other.n_qubits),
            instructions,
            self.metadata.clone(),
        )
    }
}

/// Free-standing form of [`Schedule::duration_dt`].
pub fn schedule_duration(s: &Schedule) -> u64 {
    s.duration_dt()
}

// ---------------------------------------------------------------------------
// JSON wire format
//
// {
//   "version": 1,
//   "n_qubits": 2,
//   "instructions": [
//     {"kind": "play_sqp", "channel": {"type": "drive", "qubits": [0]},
//      "start": 0, "duration": 160, "amplitude": 0.2, "angle": 0.0,
//      "envelope": {"kind": "gaussian", "sigma": 40.0, "rise_fall": 0.0,
//                   "drag_beta": 0.0}}
//   ],
//   "metadata": {}
// }
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ChannelWire {
    #[serde(rename = "type")]
    kind: String,
    qubits: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct InstructionWire {
    kind: InstructionKind,
    channel: ChannelWire,
    start: u64,
    duration: u64,
    amplitude: f64,
    angle: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    frequency_offset: f64,
    envelope: Envelope,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

#[derive(Serialize, Deserialize)]
struct ScheduleWire {
    version: u32,
    n_qubits: usize,
    instructions: Vec<InstructionWire>,
    metadata: ScheduleMetadata,
}

pub const SCHEDULE_FORMAT_VERSION: u32 = 1;

/// Serializes a schedule to the documented JSON schema.
pub fn serialize_schedule(s: &Schedule) -> String {
    let wire = ScheduleWire {
        version: SCHEDULE_FORMAT_VERSION,
        n_qubits: s.n_qubits(),
        instructions: s
            .instructions()
            .iter()
            .map(|i| InstructionWire {
                kind: i.kind,
                channel: match i.channel {
                    Channel::Drive { qubit } => ChannelWire {
                        kind: "drive".into(),
                        qubits: vec![qubit],
                    },
                    Channel::Control { control, target } => ChannelWire {
                        kind: "control".into(),
                        qubits: vec![control, target],
                    },
                },
                start: i.start,
                duration: i.params.duration,
                amplitude: i.params.amplitude,
                angle: i.params.angle,
                frequency_offset: i.params.frequency_offset,
                envelope: i.envelope,
            })
            .collect(),
        metadata: s.metadata.clone(),
    };
    serde_json::to_string_pretty(&wire).expect("schedule serialization cannot fail")
}

/// Parses the documented JSON schema back into a validated schedule.
pub fn deserialize_schedule(text: &str) -> Result<Schedule, PulseError> {
    let wire: ScheduleWire = serde_json::from_str(text)?;
    if wire.version != SCHEDULE_FORMAT_VERSION {
        return Err(PulseError::UnsupportedVersion(wire.version));
    }
    let mut instructions = Vec::with_capacity(wire.instructions.len());
    for iw in wire.instructions {
        let channel = match (iw.channel.kind.as_str(), iw.channel.qubits.as_slice()) {
            ("drive", [qubit]) => Channel::Drive { qubit: *qubit },
            ("control", [control, target]) => Channel::Control {
                control: *control,
                target: *target,
            },
            _ => {
                return Err(PulseError::Parse(serde_json::Error::io(
                    std::io::Error::new(
                        std::io::ErrorKind::InvalidData,
                        format!(
                            "channel type {:?} with {} qubit(s) is not valid",
                            iw.channel.kind,
                            iw.channel.qubits.len()
                        ),
                    ),
                )))
            }
        };
        let mut params = PulseParams::new(iw.amplitude, iw.angle, iw.duration);
        params.frequency_offset = iw.frequency_offset;
        instructions.push(Instruction {
            kind: iw.kind,
            channel,
            start: iw.start,
            params,
            envelope: iw.envelope,
        });
    }
    Schedule::new(wire.n_qubits, instructions, wire.metadata)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulse::envelope::EnvelopeKind;

    fn sqp(qubit: usize, start: u64, duration: u64) -> Instruction {
        Instruction {
            kind: InstructionKind::PlaySqp,
            channel: Channel::Drive { qubit },
            start,
            params: PulseParams::new(0.2, 1.0, duration),
            envelope: Envelope::gaussian_for_duration(duration),
        }
    }

    fn cr(control: usize, target: usize, start: u64, duration: u64) -> Instruction {
        Instruction {
            kind: InstructionKind::PlayCr,
            channel: Channel::Control { control, target },
            start,
            params: PulseParams::new(0.3, 0.5, duration),
            envelope: Envelope::default_cr(),
        }
    }

    #[test]
    fn empty_schedule_has_zero_duration() {
        assert_eq!(Schedule::empty(2).duration_dt(), 0);
    }

    #[test]
    fn parallel_pulses_share_the_critical_path() {
        let s = Schedule::new(
            2,
            vec![sqp(0, 0, 160), sqp(1, 0, 160)],
            ScheduleMetadata::default(),
        )
        .unwrap();
        assert_eq!(s.duration_dt(), 160);
        assert_eq!(s.depth(), 1);
    }

    #[test]
    fn sequential_column_then_cr() {
        // sum of critical path segments: 160 + 256
        let s = Schedule::new(
            2,
            vec![sqp(0, 0, 160), sqp(1, 0, 160), cr(0, 1, 160, 256)],
            ScheduleMetadata::default(),
        )
        .unwrap();
        assert_eq!(s.duration_dt(), 416);
    }

    #[test]
    fn overlap_on_one_channel_is_rejected() {
        let result = Schedule::new(
            1,
            vec![sqp(0, 0, 160), sqp(0, 100, 160)],
            ScheduleMetadata::default(),
        );
        assert!(matches!(result, Err(PulseError::ChannelOverlap { .. })));
    }

    #[test]
    fn out_of_range_qubit_is_rejected() {
        let result = Schedule::new(1, vec![sqp(1, 0, 160)], ScheduleMetadata::default());
        assert!(matches!(result, Err(PulseError::QubitOutOfRange { .. })));
    }

    #[test]
    fn duration_invariant_under_disjoint_channel_permutation() {
        let a = vec![sqp(0, 0, 160), sqp(1, 0, 320), cr(1, 2, 320, 256)];
        let mut b = a.clone();
        b.reverse();
        let sa = Schedule::new(3, a, ScheduleMetadata::default()).unwrap();
        let sb = Schedule::new(3, b, ScheduleMetadata::default()).unwrap();
        assert_eq!(sa.duration_dt(), sb.duration_dt());
        assert_eq!(sa.instructions(), sb.instructions());
    }

    #[test]
    fn round_trip_preserves_structure() {
        let mut meta = ScheduleMetadata::default();
        meta.template = Some("HE".into());
        meta.n_layers = Some(2);
        let s = Schedule::new(
            3,
            vec![sqp(0, 0, 160), sqp(2, 0, 160), cr(0, 1, 160, 512)],
            meta,
        )
        .unwrap();
        let text = serialize_schedule(&s);
        let back = deserialize_schedule(&text).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn missing_channel_field_is_a_parse_error() {
        let text = r#"{"version":1,"n_qubits":1,"instructions":[
            {"kind":"play_sqp","start":0,"duration":160,"amplitude":0.1,
             "angle":0.0,"envelope":{"kind":"gaussian","sigma":40.0}}],
            "metadata":{}}"#;
        assert!(matches!(
            deserialize_schedule(text),
            Err(PulseError::Parse(_))
        ));
    }

    #[test]
    fn non_integer_duration_is_a_parse_error() {
        let text = r#"{"version":1,"n_qubits":1,"instructions":[
            {"kind":"play_sqp","channel":{"type":"drive","qubits":[0]},
             "start":0,"duration":160.5,"amplitude":0.1,"angle":0.0,
             "envelope":{"kind":"gaussian","sigma":40.0}}],
            "metadata":{}}"#;
        assert!(matches!(
            deserialize_schedule(text),
            Err(PulseError::Parse(_))
        ));
    }

    #[test]
    fn wrong_version_is_rejected() {
        let text = r#"{"version":2,"n_qubits":1,"instructions":[],"metadata":{}}"#;
        assert!(matches!(
            deserialize_schedule(text),
            Err(PulseError::UnsupportedVersion(2))
        ));
    }

    #[test]
    fn angle_is_stored_normalized() {
        let p = PulseParams::new(0.1, -std::f64::consts::PI, 160);
        assert!((p.angle - std::f64::consts::PI).abs() < 1e-12);
        let q = PulseParams::new(0.1, 3.0 * std::f64::consts::TAU + 0.25, 160);
        assert!((q.angle - 0.25).abs() < 1e-12);
    }

    #[test]
    fn envelope_kind_serializes_snake_case() {
        let e = Envelope::default_cr();
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.contains("gaussian_square"));
        let back: Envelope = serde_json::from_str(&json).unwrap();
        assert_eq!(back.kind, EnvelopeKind::GaussianSquare);
    }
}
