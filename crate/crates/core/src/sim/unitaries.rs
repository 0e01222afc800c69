//! Closed-form and time-stepped pulse unitaries.

use ndarray::Array2;
use num_complex::Complex64;

use crate::pulse::{
    envelope_area, envelope_samples, CrCoefficients, DeviceModel, Envelope, PulseParams,
};
use crate::qcore::UnitaryMatrix;

use super::SimError;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Area of the calibrated π pulse, the denominator of the rotation-angle
/// calibration ratio.
fn calibration_area(device: &DeviceModel) -> Result<f64, SimError> {
    let e = Envelope::gaussian_for_duration(device.cal_duration);
    Ok(envelope_area(&e, device.cal_duration)?)
}

/// Rotation angle of an SQP: π, scaled by amplitude and envelope area
/// relative to the calibrated π pulse.
fn sqp_theta(p: &PulseParams, e: &Envelope, device: &DeviceModel) -> Result<f64, SimError> {
    let area = envelope_area(e, p.duration)?;
    Ok(std::f64::consts::PI * (p.amplitude / device.cal_amplitude) * (area / calibration_area(device)?))
}

/// `exp(-i (θ/2) (cosφ·X + sinφ·Y))` as a dense 2×2 matrix.
fn equatorial_rotation(theta: f64, phi: f64) -> Array2<Complex64> {
    let half = theta / 2.0;
    let cos = c(half.cos(), 0.0);
    // -i sin(θ/2) (cosφ X + sinφ Y); X+iY structure gives the e^{∓iφ} phases
    let off_upper = c(0.0, -half.sin()) * c(phi.cos(), -phi.sin());
    let off_lower = c(0.0, -half.sin()) * c(phi.cos(), phi.sin());
    ndarray::array![[cos, off_upper], [off_lower, cos]]
}

/// Single-qubit pulse unitary: a rotation by the calibrated angle about the
/// equatorial axis `(cos angle, sin angle, 0)`.
pub fn sqp_unitary(
    p: &PulseParams,
    e: &Envelope,
    device: &DeviceModel,
) -> Result<UnitaryMatrix, SimError> {
    let theta = sqp_theta(p, e, device)?;
    Ok(UnitaryMatrix::new(equatorial_rotation(theta, p.angle))?)
}

/// SQP via one matrix exponential per envelope sample.
pub(super) fn sqp_unitary_stepped(
    p: &PulseParams,
    e: &Envelope,
    device: &DeviceModel,
    steps_per_dt: u32,
) -> Result<UnitaryMatrix, SimError> {
    if steps_per_dt == 0 {
        return Err(SimError::ZeroSteps);
    }
    let samples = envelope_samples(e, p.duration)?;
    let scale = std::f64::consts::PI * (p.amplitude / device.cal_amplitude)
        / calibration_area(device)?;
    // h = (cosφ X + sinφ Y)/2; per tick the angle is scale · s(t)
    let h = ndarray::array![
        [c(0.0, 0.0), c(p.angle.cos(), -p.angle.sin()) * 0.5],
        [c(p.angle.cos(), p.angle.sin()) * 0.5, c(0.0, 0.0)]
    ];
    let eig = crate::qcore::HermitianEigen::new(&h);
    let mut acc: Array2<Complex64> = Array2::eye(2);
    for s in samples {
        let step = eig.exp(c(0.0, -scale * s / steps_per_dt as f64));
        for _ in 0..steps_per_dt {
            acc = step.dot(&acc);
        }
    }
    Ok(UnitaryMatrix::new(acc)?)
}

/// Angle-rotated CR coefficient vectors `(a⃗', b⃗')`.
fn rotated_coefficients(coeffs: &CrCoefficients, phi: f64) -> ([f64; 3], [f64; 3]) {
    let (sin, cos) = phi.sin_cos();
    let a = [
        coeffs.a_x * cos - coeffs.a_y * sin,
        coeffs.a_x * sin + coeffs.a_y * cos,
        coeffs.a_z,
    ];
    let b = [
        coeffs.b_x * cos - coeffs.b_y * sin,
        coeffs.b_x * sin + coeffs.b_y * cos,
        coeffs.b_z,
    ];
    (a, b)
}

/// `exp(-i v⃗·σ)` for a Bloch vector `v⃗`.
fn axis_exponential(v: [f64; 3]) -> Array2<Complex64> {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if norm == 0.0 {
        return Array2::eye(2);
    }
    let (nx, ny, nz) = (v[0] / norm, v[1] / norm, v[2] / norm);
    let cos = c(norm.cos(), 0.0);
    let msin = c(0.0, -norm.sin());
    ndarray::array![
        [cos + msin * nz, msin * c(nx, -ny)],
        [msin * c(nx, ny), cos - msin * nz]
    ]
}

/// Assembles a two-qubit unitary that is block-diagonal in the control
/// qubit, under the crate's little-endian convention with the control on
/// label position 0 (the low bit).
fn control_blocks(e0: &Array2<Complex64>, e1: &Array2<Complex64>) -> Array2<Complex64> {
    let mut out = Array2::zeros((4, 4));
    for tgt_out in 0..2 {
        for tgt_in in 0..2 {
            out[[tgt_out << 1, tgt_in << 1]] = e0[[tgt_out, tgt_in]];
            out[[(tgt_out << 1) | 1, (tgt_in << 1) | 1]] = e1[[tgt_out, tgt_in]];
        }
    }
    out
}

/// Cross-resonance unitary `exp(-i A H_eff)` with
/// `H_eff = a_x' ZX + a_y' ZY + a_z ZZ + b_x' IX + b_y' IY + b_z IZ`
/// (control ⊗ target) and `A = amplitude · envelope_area`.
///
/// `H_eff` splits into single-qubit blocks per control value: the target
/// sees `b⃗' + a⃗'` under control `|0⟩` and `b⃗' - a⃗'` under control `|1⟩`.
pub fn cr_unitary(
    p: &PulseParams,
    e: &Envelope,
    coeffs: &CrCoefficients,
    _device: &DeviceModel,
) -> Result<UnitaryMatrix, SimError> {
    let area = p.amplitude * envelope_area(e, p.duration)?;
    let (a, b) = rotated_coefficients(coeffs, p.angle);
    let plus = [
        area * (b[0] + a[0]),
        area * (b[1] + a[1]),
        area * (b[2] + a[2]),
    ];
    let minus = [
        area * (b[0] - a[0]),
        area * (b[1] - a[1]),
        area * (b[2] - a[2]),
    ];
    let u = control_blocks(&axis_exponential(plus), &axis_exponential(minus));
    Ok(UnitaryMatrix::new(u)?)
}

/// CR via one matrix exponential per envelope sample, exponentiating the
/// dense 4×4 effective Hamiltonian built from Pauli labels.
pub(super) fn cr_unitary_stepped(
    p: &PulseParams,
    e: &Envelope,
    coeffs: &CrCoefficients,
    steps_per_dt: u32,
) -> Result<UnitaryMatrix, SimError> {
    if steps_per_dt == 0 {
        return Err(SimError::ZeroSteps);
    }
    let samples = envelope_samples(e, p.duration)?;
    let (a, b) = rotated_coefficients(coeffs, p.angle);
    let mut h_unit: Array2<Complex64> = Array2::zeros((4, 4));
    for (coeff, label) in [
        (a[0], "ZX"),
        (a[1], "ZY"),
        (a[2], "ZZ"),
        (b[0], "IX"),
        (b[1], "IY"),
        (b[2], "IZ"),
    ] {
        if coeff != 0.0 {
            h_unit.scaled_add(c(coeff, 0.0), &crate::qcore::pauli_operator(label).unwrap());
        }
    }
    let eig = crate::qcore::HermitianEigen::new(&h_unit);
    let mut acc: Array2<Complex64> = Array2::eye(4);
    for s in samples {
        let step = eig.exp(c(0.0, -p.amplitude * s / steps_per_dt as f64));
        for _ in 0..steps_per_dt {
            acc = step.dot(&acc);
        }
    }
    Ok(UnitaryMatrix::new(acc)?)
}
