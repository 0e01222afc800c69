//! Template identifiers and build specifications.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TemplateError;

/// Every buildable ansatz: the six numbered pulse design spaces, their
/// random-generated controls, the fixed two-qubit structures, single-qubit
/// pulse probes, and the gate-level baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemplateId {
    /// Pulse ID 1: SQP column plus adjacent-pair CR cascade.
    HardwareEfficient,
    /// Pulse ID 2: ID 1 with the CR amplitude fixed.
    HardwareEfficientFixCr,
    /// Pulse ID 3: free-duration SQP column plus CR cascade.
    DecayLayer,
    /// Pulse ID 4: ID 3 with the CR amplitude fixed.
    DecayLayerFixCr,
    /// Pulse ID 5: dressed-CR blocks looped over adjacent pairs.
    BlockDressed,
    /// Pulse ID 6: ID 5 with the CR amplitude fixed.
    BlockDressedFixCr,
    /// Pulse IDs 7–12: random layout matching the budget of `id - 6`.
    Random(u8),
    /// Four SQPs dressing one CR on two qubits.
    Dressed2Q,
    /// Three SQP columns sandwiching two CRs on two qubits.
    Blockpulse2Q,
    /// One SQP, amplitude and angle free.
    Pulse1Q,
    /// One SQP, amplitude free, angle fixed at 0.
    Pulse1QAmp,
    /// One SQP, angle free, amplitude fixed at 0.08.
    Pulse1QAngle,
    // gate baselines
    Rz,
    Rx,
    RxRz,
    Zyz,
    RxCx2Q,
    Universal2Q,
    TwoLocal,
    RealAmplitudes,
}

impl TemplateId {
    /// Numeric pulse id 1–12 when the template is one of the numbered
    /// design spaces.
    pub fn pulse_number(&self) -> Option<u8> {
        match self {
            TemplateId::HardwareEfficient => Some(1),
            TemplateId::HardwareEfficientFixCr => Some(2),
            TemplateId::DecayLayer => Some(3),
            TemplateId::DecayLayerFixCr => Some(4),
            TemplateId::BlockDressed => Some(5),
            TemplateId::BlockDressedFixCr => Some(6),
            TemplateId::Random(k) => Some(*k),
            _ => None,
        }
    }

    pub fn from_pulse_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(TemplateId::HardwareEfficient),
            2 => Some(TemplateId::HardwareEfficientFixCr),
            3 => Some(TemplateId::DecayLayer),
            4 => Some(TemplateId::DecayLayerFixCr),
            5 => Some(TemplateId::BlockDressed),
            6 => Some(TemplateId::BlockDressedFixCr),
            7..=12 => Some(TemplateId::Random(k)),
            _ => None,
        }
    }

    pub fn is_gate_baseline(&self) -> bool {
        matches!(
            self,
            TemplateId::Rz
                | TemplateId::Rx
                | TemplateId::RxRz
                | TemplateId::Zyz
                | TemplateId::RxCx2Q
                | TemplateId::Universal2Q
                | TemplateId::TwoLocal
                | TemplateId::RealAmplitudes
        )
    }

    /// Canonical display name, also accepted by [`FromStr`].
    pub fn name(&self) -> String {
        match self {
            TemplateId::HardwareEfficient => "HE".into(),
            TemplateId::HardwareEfficientFixCr => "HE_fixCR".into(),
            TemplateId::DecayLayer => "DECAY".into(),
            TemplateId::DecayLayerFixCr => "DECAY_fixCR".into(),
            TemplateId::BlockDressed => "BLOCK".into(),
            TemplateId::BlockDressedFixCr => "BLOCK_fixCR".into(),
            TemplateId::Random(k) => format!("RAND_{k}"),
            TemplateId::Dressed2Q => "DRESSED_2Q".into(),
            TemplateId::Blockpulse2Q => "BLOCKPULSE_2Q".into(),
            TemplateId::Pulse1Q => "PULSE_1Q".into(),
            TemplateId::Pulse1QAmp => "PULSE_1Q_AMP".into(),
            TemplateId::Pulse1QAngle => "PULSE_1Q_ANGLE".into(),
            TemplateId::Rz => "RZ".into(),
            TemplateId::Rx => "RX".into(),
            TemplateId::RxRz => "RXRZ".into(),
            TemplateId::Zyz => "ZYZ".into(),
            TemplateId::RxCx2Q => "RXCX2Q".into(),
            TemplateId::Universal2Q => "UNIVERSAL2Q".into(),
            TemplateId::TwoLocal => "TWOLOCAL".into(),
            TemplateId::RealAmplitudes => "REALAMP".into(),
        }
    }
}

impl fmt::Display for TemplateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for TemplateId {
    type Err = TemplateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(k) = s.parse::<u8>() {
            return TemplateId::from_pulse_number(k)
                .ok_or_else(|| TemplateError::UnknownId(s.to_string()));
        }
        let lowered = s.to_ascii_lowercase();
        let id = match lowered.as_str() {
            "he" => TemplateId::HardwareEfficient,
            "he_fixcr" => TemplateId::HardwareEfficientFixCr,
            "decay" => TemplateId::DecayLayer,
            "decay_fixcr" => TemplateId::DecayLayerFixCr,
            "block" => TemplateId::BlockDressed,
            "block_fixcr" => TemplateId::BlockDressedFixCr,
            "dressed_2q" => TemplateId::Dressed2Q,
            "blockpulse_2q" => TemplateId::Blockpulse2Q,
            "pulse_1q" => TemplateId::Pulse1Q,
            "pulse_1q_amp" => TemplateId::Pulse1QAmp,
            "pulse_1q_angle" | "pulse_1q_ang" => TemplateId::Pulse1QAngle,
            "rz" => TemplateId::Rz,
            "rx" => TemplateId::Rx,
            "rxrz" => TemplateId::RxRz,
            "zyz" | "u3" => TemplateId::Zyz,
            "rxcx2q" => TemplateId::RxCx2Q,
            "universal2q" => TemplateId::Universal2Q,
            "twolocal" => TemplateId::TwoLocal,
            "realamp" | "realamplitudes" => TemplateId::RealAmplitudes,
            _ => {
                if let Some(rest) = lowered.strip_prefix("rand_") {
                    let k: u8 = rest
                        .parse()
                        .map_err(|_| TemplateError::UnknownId(s.to_string()))?;
                    if (7..=12).contains(&k) {
                        return Ok(TemplateId::Random(k));
                    }
                }
                return Err(TemplateError::UnknownId(s.to_string()));
            }
        };
        Ok(id)
    }
}

/// A pulse parameter that a template pins instead of exposing in θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedField {
    CrAmplitude,
    CrAngle,
    CrDuration,
    SqpDuration,
}

/// Everything needed to build a template deterministically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemplateSpec {
    pub id: TemplateId,
    pub n_qubits: usize,
    pub n_layers: usize,
    /// Fields pinned on top of the id's own conventions (Table-style
    /// `fixamp`/`fixang`/`fixduration` variants).
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub fixed_fields: BTreeSet<FixedField>,
    /// Structure seed; only random templates consume it.
    #[serde(default)]
    pub seed: u64,
}

impl TemplateSpec {
    /// Parses `<id>` with optional `_fixamp`, `_fixang`, `_fixduration`
    /// suffixes that pin the corresponding CR parameter on top of the id's
    /// own conventions (e.g. `DRESSED_2Q_fixamp`).
    pub fn parse(name: &str, n_qubits: usize, n_layers: usize) -> Result<Self, TemplateError> {
        let lowered = name.to_ascii_lowercase();
        let (base, fix) = if let Some(b) = lowered.strip_suffix("_fixamp") {
            (b, Some(FixedField::CrAmplitude))
        } else if let Some(b) = lowered.strip_suffix("_fixang") {
            (b, Some(FixedField::CrAngle))
        } else if let Some(b) = lowered.strip_suffix("_fixduration") {
            (b, Some(FixedField::CrDuration))
        } else {
            (lowered.as_str(), None)
        };
        // "_fixcr" ids end in a suffix-like tail of their own; only strip
        // when the remainder still names a template
        let (id, fix) = match (base.parse::<TemplateId>(), fix) {
            (Ok(id), f) => (id, f),
            (Err(_), Some(_)) => (name.parse::<TemplateId>()?, None),
            (Err(e), None) => return Err(e),
        };
        let mut spec = Self::new(id, n_qubits, n_layers)?;
        if let Some(field) = fix {
            spec = spec.with_fixed(field);
        }
        Ok(spec)
    }

    pub fn new(id: TemplateId, n_qubits: usize, n_layers: usize) -> Result<Self, TemplateError> {
        if n_layers == 0 {
            return Err(TemplateError::ZeroLayers);
        }
        let spec = Self {
            id,
            n_qubits,
            n_layers,
            fixed_fields: BTreeSet::new(),
            seed: 0,
        };
        spec.check_qubit_count()?;
        Ok(spec)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_fixed(mut self, field: FixedField) -> Self {
        self.fixed_fields.insert(field);
        self
    }

    fn check_qubit_count(&self) -> Result<(), TemplateError> {
        let exact = |expected: usize| -> Result<(), TemplateError> {
            if self.n_qubits != expected {
                Err(TemplateError::WrongQubitCount {
                    id: self.id.name(),
                    n_qubits: self.n_qubits,
                    expected,
                })
            } else {
                Ok(())
            }
        };
        match self.id {
            TemplateId::HardwareEfficient
            | TemplateId::HardwareEfficientFixCr
            | TemplateId::DecayLayer
            | TemplateId::DecayLayerFixCr
            | TemplateId::BlockDressed
            | TemplateId::BlockDressedFixCr
            | TemplateId::Random(_)
            | TemplateId::TwoLocal
            | TemplateId::RealAmplitudes => {
                if self.n_qubits < 2 {
                    return Err(TemplateError::TooFewQubits {
                        id: self.id.name(),
                        n_qubits: self.n_qubits,
                        min: 2,
                    });
                }
                Ok(())
            }
            TemplateId::Dressed2Q
            | TemplateId::Blockpulse2Q
            | TemplateId::RxCx2Q
            | TemplateId::Universal2Q => exact(2),
            TemplateId::Pulse1Q
            | TemplateId::Pulse1QAmp
            | TemplateId::Pulse1QAngle
            | TemplateId::Rz
            | TemplateId::Rx
            | TemplateId::RxRz
            | TemplateId::Zyz => exact(1),
        }
    }

    /// Id name plus suffixes for any explicitly pinned fields, matching
    /// what [`TemplateSpec::parse`] accepts.
    pub fn display_name(&self) -> String {
        let mut name = self.id.name();
        for field in &self.fixed_fields {
            name.push_str(match field {
                FixedField::CrAmplitude => "_fixamp",
                FixedField::CrAngle => "_fixang",
                FixedField::CrDuration => "_fixduration",
                FixedField::SqpDuration => "_fixsqpduration",
            });
        }
        name
    }

    /// True when CR amplitudes are pinned, either by the id itself or by an
    /// explicit fix.
    pub fn cr_amplitude_fixed(&self) -> bool {
        matches!(
            self.id,
            TemplateId::HardwareEfficientFixCr
                | TemplateId::DecayLayerFixCr
                | TemplateId::BlockDressedFixCr
                | TemplateId::Random(8)
                | TemplateId::Random(10)
                | TemplateId::Random(12)
        ) || self.fixed_fields.contains(&FixedField::CrAmplitude)
    }

    /// True when SQP durations are pinned to the calibrated duration.
    pub fn sqp_duration_fixed(&self) -> bool {
        !matches!(
            self.id,
            TemplateId::DecayLayer
                | TemplateId::DecayLayerFixCr
                | TemplateId::Random(9)
                | TemplateId::Random(10)
        ) || self.fixed_fields.contains(&FixedField::SqpDuration)
    }

    pub fn cr_angle_fixed(&self) -> bool {
        self.fixed_fields.contains(&FixedField::CrAngle)
    }

    pub fn cr_duration_fixed(&self) -> bool {
        self.fixed_fields.contains(&FixedField::CrDuration)
    }
}
