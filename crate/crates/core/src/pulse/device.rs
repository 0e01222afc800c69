//! Device model: topology, calibration anchors, CR interaction strengths.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::PulseError;

/// Cross-resonance Hamiltonian coefficients for one directed edge, in
/// rad/dt per unit drive amplitude: `a_*` multiply Z⊗{X,Y,Z} on
/// control⊗target and `b_*` multiply I⊗{X,Y,Z}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrCoefficients {
    pub a_x: f64,
    pub a_y: f64,
    pub a_z: f64,
    pub b_x: f64,
    pub b_y: f64,
    pub b_z: f64,
}

impl Default for CrCoefficients {
    fn default() -> Self {
        Self {
            a_x: 3.0e-3,
            a_y: 0.0,
            a_z: 2.0e-4,
            b_x: 1.0e-3,
            b_y: 0.0,
            b_z: 1.0e-4,
        }
    }
}

/// A directed coupling: CR pulses drive `control` at the frequency of
/// `target`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub control: usize,
    pub target: usize,
    #[serde(default)]
    pub cr_coefficients: CrCoefficients,
}

/// Calibration anchors and topology of a (two-level, on-resonance) device.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceModel {
    pub n_qubits: usize,
    pub edges: Vec<Edge>,
    /// AWG sample time in nanoseconds.
    #[serde(default = "default_dt_ns")]
    pub dt_ns: f64,
    /// SQP amplitude that yields a π rotation at `cal_duration`.
    #[serde(default = "default_cal_amplitude")]
    pub cal_amplitude: f64,
    /// Duration of the calibrated π pulse, in dt.
    #[serde(default = "default_cal_duration")]
    pub cal_duration: u64,
    /// CR amplitude used by templates that fix it.
    #[serde(default = "default_fixed_cr_amplitude")]
    pub fixed_cr_amplitude: f64,
    /// Gate-level baseline durations in dt.
    #[serde(default = "default_gate_durations")]
    pub single_gate_durations: BTreeMap<String, u64>,
}

fn default_dt_ns() -> f64 {
    0.222
}

fn default_cal_amplitude() -> f64 {
    0.2
}

fn default_cal_duration() -> u64 {
    160
}

fn default_fixed_cr_amplitude() -> f64 {
    0.3
}

fn default_gate_durations() -> BTreeMap<String, u64> {
    // virtual RZ is free; one-qubit rotations cost two half pulses; two-qubit
    // gates use the calibrated CX figure
    [
        ("rz", 0),
        ("rx", 320),
        ("ry", 320),
        ("u3", 320),
        ("cx", 1056),
        ("cz", 1056),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

impl DeviceModel {
    /// Ideal two-level device on a linear chain, with CRs directed from the
    /// lower qubit index of every edge.
    pub fn ideal_line(n_qubits: usize) -> Self {
        let edges = (0..n_qubits.saturating_sub(1))
            .map(|q| Edge {
                control: q,
                target: q + 1,
                cr_coefficients: CrCoefficients::default(),
            })
            .collect();
        Self {
            n_qubits,
            edges,
            dt_ns: default_dt_ns(),
            cal_amplitude: default_cal_amplitude(),
            cal_duration: default_cal_duration(),
            fixed_cr_amplitude: default_fixed_cr_amplitude(),
            single_gate_durations: default_gate_durations(),
        }
    }

    pub fn validate(&self) -> Result<(), PulseError> {
        for edge in &self.edges {
            if edge.control >= self.n_qubits || edge.target >= self.n_qubits {
                return Err(PulseError::InvalidDevice(format!(
                    "edge ({}, {}) references a qubit outside 0..{}",
                    edge.control, edge.target, self.n_qubits
                )));
            }
            if edge.control == edge.target {
                return Err(PulseError::InvalidDevice(format!(
                    "edge ({0}, {0}) couples a qubit to itself",
                    edge.control
                )));
            }
        }
        if !self.cal_duration.is_multiple_of(16) {
            return Err(PulseError::InvalidDevice(format!(
                "cal_duration {} is not a multiple of 16",
                self.cal_duration
            )));
        }
        if self.dt_ns <= 0.0 {
            return Err(PulseError::InvalidDevice(format!(
                "dt_ns {} must be positive",
                self.dt_ns
            )));
        }
        Ok(())
    }

    /// Directed-edge lookup.
    pub fn edge(&self, control: usize, target: usize) -> Result<&Edge, PulseError> {
        self.edges
            .iter()
            .find(|e| e.control == control && e.target == target)
            .ok_or(PulseError::UnknownEdge { control, target })
    }

    /// Baseline duration of a named gate, in dt. Unknown gates cost 0.
    pub fn gate_duration(&self, name: &str) -> u64 {
        self.single_gate_durations.get(name).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("device serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, PulseError> {
        let device: DeviceModel = serde_json::from_str(text)?;
        device.validate()?;
        Ok(device)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_line_is_valid_and_chained() {
        let d = DeviceModel::ideal_line(4);
        d.validate().unwrap();
        assert_eq!(d.edges.len(), 3);
        assert!(d.edge(1, 2).is_ok());
        assert!(matches!(
            d.edge(2, 1),
            Err(PulseError::UnknownEdge { control: 2, target: 1 })
        ));
    }

    #[test]
    fn gate_duration_table_defaults() {
        let d = DeviceModel::ideal_line(2);
        assert_eq!(d.gate_duration("rz"), 0);
        assert_eq!(d.gate_duration("rx"), 320);
        assert_eq!(d.gate_duration("cx"), 1056);
    }

    #[test]
    fn json_round_trip() {
        let d = DeviceModel::ideal_line(3);
        let text = d.to_json();
        let back = DeviceModel::from_json(&text).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn sparse_json_uses_defaults() {
        let text = r#"{"n_qubits": 2, "edges": [{"control": 0, "target": 1}]}"#;
        let d = DeviceModel::from_json(text).unwrap();
        assert_eq!(d.cal_amplitude, 0.2);
        assert_eq!(d.cal_duration, 160);
        assert_eq!(d.dt_ns, 0.222);
        assert_eq!(d.edges[0].cr_coefficients, CrCoefficients::default());
    }

    #[test]
    fn invalid_devices_are_rejected() {
        let mut d = DeviceModel::ideal_line(2);
        d.cal_duration = 150;
        assert!(d.validate().is_err());

        let text = r#"{"n_qubits": 2, "edges": [{"control": 0, "target": 5}]}"#;
        assert!(DeviceModel::from_json(text).is_err());
    }
}
