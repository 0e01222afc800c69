//! Quantum Fisher information by central finite differences, and the
//! effective parameter dimension as its numerical rank.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::pulse::{ConstraintSpec, DeviceModel};
use crate::qcore::hermitian_eigenvalues;
use crate::templates::{sample_interior_parameters, ParamField, Template};

use super::{sample_rng, MetricError};

/// Finite-difference step sizes per field kind. Durations differentiate on
/// the continuous relaxation with a coarser step that stays on integer
/// ticks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdEps {
    pub rotation: f64,
    pub duration: f64,
}

impl Default for FdEps {
    fn default() -> Self {
        Self {
            rotation: 1e-3,
            duration: 8.0,
        }
    }
}

impl FdEps {
    fn for_field(&self, field: ParamField) -> f64 {
        match field {
            ParamField::Duration => self.duration,
            _ => self.rotation,
        }
    }
}

/// Real symmetric PSD sensitivity matrix of the output state.
#[derive(Debug, Clone, PartialEq)]
pub struct QfiMatrix {
    entries: Array2<f64>,
    eps: FdEps,
}

impl QfiMatrix {
    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn eps(&self) -> FdEps {
        self.eps
    }
}

/// Rejects coordinates whose probes would leave the constraint box.
/// Angles are periodic, so only amplitudes and durations have real bounds.
fn check_interior(
    fields: &[ParamField],
    theta: &[f64],
    cspec: &ConstraintSpec,
    eps: FdEps,
) -> Result<(), MetricError> {
    for (index, (&field, &value)) in fields.iter().zip(theta.iter()).enumerate() {
        if field == ParamField::Angle {
            continue;
        }
        let (lo, hi) = field.range(cspec);
        let e = eps.for_field(field);
        if value - e < lo || value + e > hi {
            return Err(MetricError::ProbeTooCloseToBound {
                index,
                value,
                eps: e,
                lo,
                hi,
            });
        }
    }
    Ok(())
}

fn gram_qfi(
    center: &Array1<Complex64>,
    derivatives: &[Array1<Complex64>],
    eps: FdEps,
) -> QfiMatrix {
    let p = derivatives.len();
    let overlaps: Vec<Complex64> = derivatives
        .iter()
        .map(|d| center.iter().zip(d.iter()).map(|(a, b)| a.conj() * b).sum())
        .collect();
    let mut entries = Array2::zeros((p, p));
    for i in 0..p {
        for j in i..p {
            let inner: Complex64 = derivatives[i]
                .iter()
                .zip(derivatives[j].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            let value = (inner - overlaps[i].conj() * overlaps[j]).re;
            entries[[i, j]] = value;
            entries[[j, i]] = value;
        }
    }
    QfiMatrix { entries, eps }
}

/// State QFI matrix
/// `F_ij = Re(⟨∂_i ψ|∂_j ψ⟩ − ⟨∂_i ψ|ψ⟩⟨ψ|∂_j ψ⟩)`
/// with central differences `∂_i ψ ≈ [ψ(θ+εe_i) − ψ(θ−εe_i)] / 2ε`.
pub fn qfi_matrix(
    template: &Template,
    device: &DeviceModel,
    cspec: &ConstraintSpec,
    theta: &[f64],
    eps: FdEps,
) -> Result<QfiMatrix, MetricError> {
    let fields = template.field_kinds();
    check_interior(&fields, theta, cspec, eps)?;
    let center = template.prepare_state_relaxed(theta, device)?;
    let derivatives = state_derivatives(template, device, theta, &fields, eps)?;
    Ok(gram_qfi(center.amplitudes(), &derivatives, eps))
}

fn state_derivatives(
    template: &Template,
    device: &DeviceModel,
    theta: &[f64],
    fields: &[ParamField],
    eps: FdEps,
) -> Result<Vec<Array1<Complex64>>, MetricError> {
    let mut derivatives = Vec::with_capacity(theta.len());
    for i in 0..theta.len() {
        let e = eps.for_field(fields[i]);
        let mut plus = theta.to_vec();
        plus[i] += e;
        let mut minus = theta.to_vec();
        minus[i] -= e;
        let psi_plus = template.prepare_state_relaxed(&plus, device)?;
        let psi_minus = template.prepare_state_relaxed(&minus, device)?;
        let d: Array1<Complex64> = psi_plus
            .amplitudes()
            .iter()
            .zip(psi_minus.amplitudes().iter())
            .map(|(a, b)| (a - b) / Complex64::new(2.0 * e, 0.0))
            .collect();
        derivatives.push(d);
    }
    Ok(derivatives)
}

/// Numerical rank: singular values above `rel_tol · σ_max`, or 0 when
/// `σ_max < 1e-12`.
pub fn epd_rank(qfi: &QfiMatrix, rel_tol: f64) -> usize {
    let complex: Array2<Complex64> = qfi.entries.map(|&x| Complex64::new(x, 0.0));
    let singular: Vec<f64> = hermitian_eigenvalues(&complex)
        .into_iter()
        .map(f64::abs)
        .collect();
    let sigma_max = singular.iter().cloned().fold(0.0, f64::max);
    if sigma_max < 1e-12 {
        return 0;
    }
    singular.iter().filter(|&&s| s > rel_tol * sigma_max).count()
}

pub const DEFAULT_EPD_REL_TOL: f64 = 1e-6;
pub const EPD_DRAWS: usize = 5;

/// Reported EPD: the median rank over five random interior parameter draws
/// (generic-point rank).
pub fn epd_median(
    template: &Template,
    device: &DeviceModel,
    cspec: &ConstraintSpec,
    seed: u64,
    rel_tol: f64,
) -> Result<usize, MetricError> {
    median_rank(template, device, cspec, seed, rel_tol, false)
}

/// EPD of the whole-circuit unitary instead of the output state; the rank
/// bound rises from `2^(n+1)-2` to `4^n-1`.
pub fn epd_unitary_median(
    template: &Template,
    device: &DeviceModel,
    cspec: &ConstraintSpec,
    seed: u64,
    rel_tol: f64,
) -> Result<usize, MetricError> {
    median_rank(template, device, cspec, seed, rel_tol, true)
}

fn median_rank(
    template: &Template,
    device: &DeviceModel,
    cspec: &ConstraintSpec,
    seed: u64,
    rel_tol: f64,
    unitary: bool,
) -> Result<usize, MetricError> {
    let eps = FdEps::default();
    let mut ranks = Vec::with_capacity(EPD_DRAWS);
    for draw in 0..EPD_DRAWS {
        let mut rng = sample_rng(seed, draw as u64);
        let theta = sample_interior_parameters(template, cspec, &mut rng, eps.rotation);
        let qfi = if unitary {
            qfi_unitary_matrix(template, device, cspec, &theta, eps)?
        } else {
            qfi_matrix(template, device, cspec, &theta, eps)?
        };
        ranks.push(epd_rank(&qfi, rel_tol));
    }
    ranks.sort_unstable();
    Ok(ranks[EPD_DRAWS / 2])
}

/// Projective Fisher metric of the circuit unitary, treated as a normalized
/// vector in `C^(4^n)` with global phase projected out.
pub fn qfi_unitary_matrix(
    template: &Template,
    device: &DeviceModel,
    cspec: &ConstraintSpec,
    theta: &[f64],
    eps: FdEps,
) -> Result<QfiMatrix, MetricError> {
    let fields = template.field_kinds();
    check_interior(&fields, theta, cspec, eps)?;
    let vec_of = |t: &[f64]| -> Result<Array1<Complex64>, MetricError> {
        let u = unitary_relaxed(template, device, cspec, t)?;
        let dim = u.dim() as f64;
        Ok(u.entries().iter().map(|z| z / dim.sqrt()).collect())
    };
    let center = vec_of(theta)?;
    let mut derivatives = Vec::with_capacity(theta.len());
    for i in 0..theta.len() {
        let e = eps.for_field(fields[i]);
        let mut plus = theta.to_vec();
        plus[i] += e;
        let mut minus = theta.to_vec();
        minus[i] -= e;
        let vp = vec_of(&plus)?;
        let vm = vec_of(&minus)?;
        let d: Array1<Complex64> = vp
            .iter()
            .zip(vm.iter())
            .map(|(a, b)| (a - b) / Complex64::new(2.0 * e, 0.0))
            .collect();
        derivatives.push(d);
    }
    Ok(gram_qfi(&center, &derivatives, eps))
}

fn unitary_relaxed(
    template: &Template,
    device: &DeviceModel,
    cspec: &ConstraintSpec,
    theta: &[f64],
) -> Result<crate::qcore::UnitaryMatrix, MetricError> {
    match template {
        Template::Pulse(t) => {
            let schedule = t.instantiate_relaxed(theta, device)?;
            Ok(crate::sim::schedule_unitary(&schedule, device)
                .map_err(crate::templates::TemplateError::from)?)
        }
        Template::Gate(_) => Ok(template.unitary(theta, device, cspec)?),
    }
}

/// Pure-state rank bound `min(P, 2^(n+1) − 2)`.
pub fn state_epd_bound(n_params: usize, n_qubits: usize) -> usize {
    n_params.min((1 << (n_qubits + 1)) - 2)
}
