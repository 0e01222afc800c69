//! Gate-level baseline circuits, organized as layers of parallel gates.

use ndarray::Array2;
use num_complex::Complex64;

use crate::pulse::DeviceModel;
use crate::qcore::{apply_embedded_unitary, StateVector, UnitaryMatrix};

use super::spec::{TemplateId, TemplateSpec};
use super::TemplateError;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GateKind {
    Rz,
    Rx,
    Ry,
    /// General single-qubit rotation `Rz(φ)·Ry(θ)·Rz(λ)`, three parameters.
    U3,
    Cx,
    Cz,
}

impl GateKind {
    fn n_params(self) -> usize {
        match self {
            GateKind::U3 => 3,
            GateKind::Cx | GateKind::Cz => 0,
            _ => 1,
        }
    }

    fn duration_key(self) -> &'static str {
        match self {
            GateKind::Rz => "rz",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::U3 => "u3",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
        }
    }

    fn is_two_qubit(self) -> bool {
        matches!(self, GateKind::Cx | GateKind::Cz)
    }
}

fn rz_matrix(theta: f64) -> Array2<Complex64> {
    let half = theta / 2.0;
    ndarray::array![
        [c(half.cos(), -half.sin()), c(0.0, 0.0)],
        [c(0.0, 0.0), c(half.cos(), half.sin())]
    ]
}

fn rx_matrix(theta: f64) -> Array2<Complex64> {
    let half = theta / 2.0;
    ndarray::array![
        [c(half.cos(), 0.0), c(0.0, -half.sin())],
        [c(0.0, -half.sin()), c(half.cos(), 0.0)]
    ]
}

fn ry_matrix(theta: f64) -> Array2<Complex64> {
    let half = theta / 2.0;
    ndarray::array![
        [c(half.cos(), 0.0), c(-half.sin(), 0.0)],
        [c(half.sin(), 0.0), c(half.cos(), 0.0)]
    ]
}

/// CX with the control on the low bit (first listed qubit).
fn cx_matrix() -> Array2<Complex64> {
    let mut m = Array2::zeros((4, 4));
    for col in 0..4 {
        let control = col & 1;
        let target = (col >> 1) & 1;
        let row = ((target ^ control) << 1) | control;
        m[[row, col]] = c(1.0, 0.0);
    }
    m
}

fn cz_matrix() -> Array2<Complex64> {
    let mut m: Array2<Complex64> = Array2::eye(4);
    m[[3, 3]] = c(-1.0, 0.0);
    m
}

#[derive(Debug, Clone)]
struct GateOp {
    kind: GateKind,
    qubits: Vec<usize>,
    first_param: usize,
}

impl GateOp {
    fn matrix(&self, theta: &[f64]) -> Array2<Complex64> {
        let p = &theta[self.first_param..self.first_param + self.kind.n_params()];
        match self.kind {
            GateKind::Rz => rz_matrix(p[0]),
            GateKind::Rx => rx_matrix(p[0]),
            GateKind::Ry => ry_matrix(p[0]),
            GateKind::U3 => rz_matrix(p[2])
                .dot(&ry_matrix(p[1]))
                .dot(&rz_matrix(p[0])),
            GateKind::Cx => cx_matrix(),
            GateKind::Cz => cz_matrix(),
        }
    }
}

/// A fixed-structure gate circuit: layers of gates on disjoint qubits.
/// The duration of a layer is its longest gate; virtual RZ layers are free.
pub struct GateCircuit {
    spec: TemplateSpec,
    layers: Vec<Vec<GateOp>>,
    n_params: usize,
}

struct CircuitBuilder {
    layers: Vec<Vec<GateOp>>,
    n_params: usize,
}

impl CircuitBuilder {
    fn new() -> Self {
        Self {
            layers: Vec::new(),
            n_params: 0,
        }
    }

    fn layer(&mut self, gates: Vec<(GateKind, Vec<usize>)>) {
        let ops = gates
            .into_iter()
            .map(|(kind, qubits)| {
                let op = GateOp {
                    kind,
                    qubits,
                    first_param: self.n_params,
                };
                self.n_params += kind.n_params();
                op
            })
            .collect();
        self.layers.push(ops);
    }

    fn rotation_column(&mut self, kind: GateKind, n: usize) {
        self.layer((0..n).map(|q| (kind, vec![q])).collect());
    }
}

impl GateCircuit {
    pub fn build(spec: &TemplateSpec) -> Result<Self, TemplateError> {
        let n = spec.n_qubits;
        let mut b = CircuitBuilder::new();
        match spec.id {
            TemplateId::Rz => b.layer(vec![(GateKind::Rz, vec![0])]),
            TemplateId::Rx => b.layer(vec![(GateKind::Rx, vec![0])]),
            TemplateId::RxRz => {
                b.layer(vec![(GateKind::Rx, vec![0])]);
                b.layer(vec![(GateKind::Rz, vec![0])]);
            }
            TemplateId::Zyz => {
                b.layer(vec![(GateKind::Rz, vec![0])]);
                b.layer(vec![(GateKind::Ry, vec![0])]);
                b.layer(vec![(GateKind::Rz, vec![0])]);
            }
            TemplateId::RxCx2Q => {
                b.layer(vec![(GateKind::Rx, vec![0]), (GateKind::Rx, vec![1])]);
                b.layer(vec![(GateKind::Cx, vec![0, 1])]);
                b.layer(vec![(GateKind::Rx, vec![0]), (GateKind::Rx, vec![1])]);
            }
            TemplateId::Universal2Q => {
                // minimal universal two-qubit circuit: 15 rotations, 3 CNOTs
                b.layer(vec![(GateKind::U3, vec![0]), (GateKind::U3, vec![1])]);
                b.layer(vec![(GateKind::Cx, vec![1, 0])]);
                b.layer(vec![(GateKind::Rz, vec![0]), (GateKind::Ry, vec![1])]);
                b.layer(vec![(GateKind::Cx, vec![0, 1])]);
                b.layer(vec![(GateKind::Ry, vec![1])]);
                b.layer(vec![(GateKind::Cx, vec![1, 0])]);
                b.layer(vec![(GateKind::U3, vec![0]), (GateKind::U3, vec![1])]);
            }
            TemplateId::TwoLocal => {
                // Ry columns with full CZ entanglement between them
                for _ in 0..spec.n_layers {
                    b.rotation_column(GateKind::Ry, n);
                    for i in 0..n {
                        for j in i + 1..n {
                            b.layer(vec![(GateKind::Cz, vec![i, j])]);
                        }
                    }
                }
                b.rotation_column(GateKind::Ry, n);
            }
            TemplateId::RealAmplitudes => {
                // Ry columns with a linear CX chain between them
                for _ in 0..spec.n_layers {
                    b.rotation_column(GateKind::Ry, n);
                    for i in 0..n - 1 {
                        b.layer(vec![(GateKind::Cx, vec![i, i + 1])]);
                    }
                }
                b.rotation_column(GateKind::Ry, n);
            }
            other => return Err(TemplateError::UnknownId(other.name())),
        }
        Ok(Self {
            spec: spec.clone(),
            layers: b.layers,
            n_params: b.n_params,
        })
    }

    pub fn spec(&self) -> &TemplateSpec {
        &self.spec
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn n_two_qubit_gates(&self) -> usize {
        self.layers
            .iter()
            .flatten()
            .filter(|op| op.kind.is_two_qubit())
            .count()
    }

    pub fn depth(&self) -> u32 {
        self.layers.len() as u32
    }

    pub fn prepare_state(
        &self,
        theta: &[f64],
        init: &StateVector,
    ) -> Result<StateVector, TemplateError> {
        if theta.len() != self.n_params {
            return Err(TemplateError::LengthMismatch {
                expected: self.n_params,
                actual: theta.len(),
            });
        }
        let mut state = init.clone();
        for layer in &self.layers {
            for op in layer {
                let u = UnitaryMatrix::new(op.matrix(theta))?;
                state = apply_embedded_unitary(&state, &u, &op.qubits)?;
            }
        }
        Ok(state)
    }

    pub fn unitary(&self, theta: &[f64]) -> Result<UnitaryMatrix, TemplateError> {
        if theta.len() != self.n_params {
            return Err(TemplateError::LengthMismatch {
                expected: self.n_params,
                actual: theta.len(),
            });
        }
        let n = self.spec.n_qubits;
        let dim = 1 << n;
        let mut columns: Vec<ndarray::Array1<Complex64>> = (0..dim)
            .map(|j| {
                let mut col = ndarray::Array1::zeros(dim);
                col[j] = c(1.0, 0.0);
                col
            })
            .collect();
        for layer in &self.layers {
            for op in layer {
                let u = op.matrix(theta);
                for col in &mut columns {
                    *col = crate::qcore::apply_embedded_raw(col, n, &u, &op.qubits);
                }
            }
        }
        let mut out = Array2::zeros((dim, dim));
        for (j, col) in columns.iter().enumerate() {
            for i in 0..dim {
                out[[i, j]] = col[i];
            }
        }
        Ok(UnitaryMatrix::new(out)?)
    }

    /// Sequence duration: sum over layers of the longest gate in the layer.
    pub fn duration_dt(&self, device: &DeviceModel) -> u64 {
        self.layers
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|op| device.gate_duration(op.kind.duration_key()))
                    .max()
                    .unwrap_or(0)
            })
            .sum()
    }
}
