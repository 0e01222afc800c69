//! Plain-text Hamiltonian files and exact expectation values.

use num_complex::Complex64;

use crate::qcore::{apply_pauli_string, PauliHamiltonian, StateVector};

use super::VqaError;

/// Parses `<coefficient> <label>` lines. `#` starts a comment, blank lines
/// are skipped, duplicate labels are summed.
pub fn parse_hamiltonian(text: &str) -> Result<PauliHamiltonian, VqaError> {
    let mut terms: Vec<(f64, String)> = Vec::new();
    let mut expected_len: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (coeff_token, label) = match (parts.next(), parts.next(), parts.next()) {
            (Some(c), Some(l), None) => (c, l),
            _ => {
                return Err(VqaError::MalformedLine {
                    line: line_no,
                    content: line.to_string(),
                })
            }
        };
        let coefficient: f64 = coeff_token.parse().map_err(|_| VqaError::BadCoefficient {
            line: line_no,
            token: coeff_token.to_string(),
        })?;
        match expected_len {
            None => expected_len = Some(label.len()),
            Some(expected) if expected != label.len() => {
                return Err(VqaError::InconsistentLabel {
                    line: line_no,
                    label: label.to_string(),
                    expected,
                    actual: label.len(),
                });
            }
            _ => {}
        }
        terms.push((coefficient, label.to_string()));
    }
    if terms.is_empty() {
        return Err(VqaError::EmptyHamiltonian);
    }
    Ok(PauliHamiltonian::new(terms)?)
}

/// Exact statevector expectation `Σ c_k ⟨ψ|P_k|ψ⟩`.
pub fn expectation(state: &StateVector, h: &PauliHamiltonian) -> Result<f64, VqaError> {
    if state.n_qubits() != h.n_qubits() {
        return Err(VqaError::QubitCountMismatch {
            hamiltonian: h.n_qubits(),
            ansatz: state.n_qubits(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (coefficient, label) in h.terms() {
        let applied = apply_pauli_string(state, label)?;
        acc += state.inner(&applied)? * *coefficient;
    }
    debug_assert!(acc.im.abs() < 1e-10, "imaginary residue {}", acc.im);
    Ok(acc.re)
}
