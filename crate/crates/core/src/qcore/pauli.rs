//! Pauli strings, dense Pauli operators, and exact diagonalization.

use std::collections::BTreeMap;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use super::linalg::min_eigenvalue;
use super::state::StateVector;
use super::{QcoreError, MAX_QUBITS};

/// A single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn matrix(self) -> Array2<Complex64> {
        let c = Complex64::new;
        match self {
            Pauli::I => ndarray::array![[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
            Pauli::X => ndarray::array![[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
            Pauli::Y => ndarray::array![[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
            Pauli::Z => ndarray::array![[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
        }
    }
}

fn parse_label(label: &str) -> Result<Vec<Pauli>, QcoreError> {
    if label.is_empty() {
        return Err(QcoreError::EmptyLabel);
    }
    label
        .chars()
        .enumerate()
        .map(|(position, ch)| {
            Pauli::from_char(ch).ok_or(QcoreError::InvalidPauliLabel {
                label: label.to_string(),
                position,
                found: ch,
            })
        })
        .collect()
}

/// Dense tensor product of single-qubit Paulis.
///
/// Character `k` of the label acts on qubit `k`; qubit 0 is the
/// least-significant index bit, so `pauli_operator("ZI")` is Z on qubit 0.
pub fn pauli_operator(label: &str) -> Result<Array2<Complex64>, QcoreError> {
    let paulis = parse_label(label)?;
    if paulis.len() > MAX_QUBITS {
        return Err(QcoreError::TooManyQubits {
            n_qubits: paulis.len(),
            max: MAX_QUBITS,
        });
    }
    let mut acc = Array2::eye(1);
    // highest qubit first so that qubit 0 lands on the least-significant bit
    for p in paulis.iter().rev() {
        acc = ndarray::linalg::kron(&acc, &p.matrix());
    }
    Ok(acc)
}

/// Applies a Pauli string to a state without forming the dense operator.
pub fn apply_pauli_string(state: &StateVector, label: &str) -> Result<StateVector, QcoreError> {
    let paulis = parse_label(label)?;
    if paulis.len() != state.n_qubits() {
        return Err(QcoreError::LabelLengthMismatch {
            label: label.to_string(),
            expected: state.n_qubits(),
            actual: paulis.len(),
        });
    }
    let mut flip_mask = 0usize;
    for (q, p) in paulis.iter().enumerate() {
        if matches!(p, Pauli::X | Pauli::Y) {
            flip_mask |= 1 << q;
        }
    }
    let mut out = Array1::zeros(state.dim());
    for i in 0..state.dim() {
        let mut phase = Complex64::new(1.0, 0.0);
        for (q, p) in paulis.iter().enumerate() {
            let bit = (i >> q) & 1;
            match p {
                Pauli::Z if bit == 1 => phase = -phase,
                // Y|0⟩ = i|1⟩, Y|1⟩ = -i|0⟩
                Pauli::Y => {
                    phase *= if bit == 0 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    }
                }
                _ => {}
            }
        }
        out[i ^ flip_mask] += phase * state.amplitudes()[i];
    }
    Ok(StateVector::from_parts(out, state.n_qubits()))
}

/// `⟨ψ|P|ψ⟩` for a single Pauli string; real for Hermitian P.
pub fn pauli_expectation(state: &StateVector, label: &str) -> Result<f64, QcoreError> {
    let applied = apply_pauli_string(state, label)?;
    Ok(state.inner(&applied)?.re)
}

/// A weighted sum of Pauli strings, `H = Σ c_k P_k`.
///
/// Labels are canonicalized on construction: duplicates are summed and terms
/// are kept in sorted label order.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliHamiltonian {
    terms: Vec<(f64, String)>,
    n_qubits: usize,
}

impl PauliHamiltonian {
    pub fn new(terms: Vec<(f64, String)>) -> Result<Self, QcoreError> {
        let mut n_qubits = 0;
        let mut canonical: BTreeMap<String, f64> = BTreeMap::new();
        for (coefficient, label) in terms {
            let paulis = parse_label(&label)?;
            if n_qubits == 0 {
                n_qubits = paulis.len();
            } else if paulis.len() != n_qubits {
                return Err(QcoreError::LabelLengthMismatch {
                    label,
                    expected: n_qubits,
                    actual: paulis.len(),
                });
            }
            *canonical.entry(label).or_insert(0.0) += coefficient;
        }
        if n_qubits == 0 {
            return Err(QcoreError::EmptyLabel);
        }
        Ok(Self {
            terms: canonical.into_iter().map(|(l, c)| (c, l)).collect(),
            n_qubits,
        })
    }

    pub fn terms(&self) -> &[(f64, String)] {
        &self.terms
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Number of non-identity Pauli strings, i.e. terms that require a
    /// measurement rather than a constant energy offset.
    pub fn n_measured_terms(&self) -> usize {
        self.terms
            .iter()
            .filter(|(_, l)| l.chars().any(|ch| ch != 'I'))
            .count()
    }

    /// True when every term is built from I/Z only.
    pub fn is_diagonal(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, l)| l.chars().all(|ch| ch == 'I' || ch == 'Z'))
    }
}

/// Dense Hermitian matrix of the Hamiltonian.
pub fn dense_hamiltonian(h: &PauliHamiltonian) -> Result<Array2<Complex64>, QcoreError> {
    if h.n_qubits() > MAX_QUBITS {
        return Err(QcoreError::TooManyQubits {
            n_qubits: h.n_qubits(),
            max: MAX_QUBITS,
        });
    }
    let dim = 1 << h.n_qubits();
    let mut acc = Array2::zeros((dim, dim));
    for (coefficient, label) in h.terms() {
        let op = pauli_operator(label)?;
        acc.scaled_add(Complex64::new(*coefficient, 0.0), &op);
    }
    Ok(acc)
}

/// Minimum eigenvalue of `Σ c_k P_k` by dense Hermitian diagonalization.
///
/// This is the oracle the VQE harness is judged against, so it favors
/// exactness over scalability and refuses more than [`MAX_QUBITS`] qubits.
pub fn exact_ground_energy(h: &PauliHamiltonian) -> Result<f64, QcoreError> {
    let dense = dense_hamiltonian(h)?;
    Ok(min_eigenvalue(&dense))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn z_is_diag_one_minus_one() {
        let z = pauli_operator("Z").unwrap();
        assert_eq!(z[[0, 0]], c(1.0, 0.0));
        assert_eq!(z[[1, 1]], c(-1.0, 0.0));
        assert_eq!(z[[0, 1]], c(0.0, 0.0));
    }

    #[test]
    fn ii_is_four_by_four_identity() {
        let ii = pauli_operator("II").unwrap();
        assert_eq!(ii, Array2::eye(4));
    }

    #[test]
    fn xx_expectation_on_bell_state() {
        let bell = StateVector::new(vec![
            c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ])
        .unwrap();
        // oracle: dense 4×4 matrix-vector product
        let xx = pauli_operator("XX").unwrap();
        let applied = xx.dot(bell.amplitudes());
        let direct: Complex64 = bell
            .amplitudes()
            .iter()
            .zip(applied.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        assert!((direct.re - 1.0).abs() < 1e-12);
        assert!((pauli_expectation(&bell, "XX").unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_labels_error() {
        assert!(matches!(pauli_operator(""), Err(QcoreError::EmptyLabel)));
        assert!(matches!(
            pauli_operator("XQ"),
            Err(QcoreError::InvalidPauliLabel { position: 1, .. })
        ));
    }

    #[test]
    fn pauli_operators_are_involutions() {
        for label in ["X", "Y", "Z", "XY", "ZZ", "XYZ", "IZXY"] {
            let op = pauli_operator(label).unwrap();
            let sq = op.dot(&op);
            let eye: Array2<Complex64> = Array2::eye(op.nrows());
            let dev: f64 = (&sq - &eye).iter().map(|d| d.norm_sqr()).sum();
            assert!(dev < 1e-20, "label {label}");
        }
    }

    #[test]
    fn sparse_application_matches_dense() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let labels = ["XYZ", "ZIY", "YYX", "IZI", "XXZ"];
        for label in labels {
            let amps: Vec<Complex64> = (0..8)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let state = StateVector::normalized(amps).unwrap();
            let fast = apply_pauli_string(&state, label).unwrap();
            let dense = pauli_operator(label).unwrap().dot(state.amplitudes());
            for i in 0..8 {
                assert!((fast.amplitudes()[i] - dense[i]).norm() < 1e-12, "{label}");
            }
        }
    }

    #[test]
    fn ground_energy_of_zz() {
        let h = PauliHamiltonian::new(vec![(1.0, "ZZ".into())]).unwrap();
        assert!((exact_ground_energy(&h).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn ground_energy_of_weighted_z_difference() {
        // brute force over 4 basis states: energies 0, -1, 1, 0
        let h = PauliHamiltonian::new(vec![(0.5, "ZI".into()), (-0.5, "IZ".into())]).unwrap();
        assert!((exact_ground_energy(&h).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn ground_energy_of_constant() {
        let h = PauliHamiltonian::new(vec![(0.75, "II".into())]).unwrap();
        assert!((exact_ground_energy(&h).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn hamiltonian_canonicalization() {
        let h =
            PauliHamiltonian::new(vec![(0.5, "ZI".into()), (0.5, "ZI".into())]).unwrap();
        assert_eq!(h.n_terms(), 1);
        assert!((h.terms()[0].0 - 1.0).abs() < 1e-15);
        assert!(h.is_diagonal());
        assert_eq!(h.n_measured_terms(), 1);
    }

    #[test]
    fn hamiltonian_rejects_mixed_lengths() {
        assert!(matches!(
            PauliHamiltonian::new(vec![(1.0, "ZXI".into()), (2.0, "ZZ".into())]),
            Err(QcoreError::LabelLengthMismatch { .. })
        ));
    }

    #[test]
    fn diagonal_ground_energy_matches_bitstring_scan() {
        // brute-force equivalence for Z/I-only Hamiltonians
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in 2..=6 {
            let terms: Vec<(f64, String)> = (0..n + 2)
                .map(|_| {
                    let label: String = (0..n)
                        .map(|_| if rng.random_bool(0.5) { 'Z' } else { 'I' })
                        .collect();
                    (rng.random_range(-1.0..1.0), label)
                })
                .collect();
            let h = PauliHamiltonian::new(terms).unwrap();
            let mut best = f64::INFINITY;
            for bits in 0..(1usize << n) {
                let mut energy = 0.0;
                for (coeff, label) in h.terms() {
                    let mut sign = 1.0;
                    for (q, ch) in label.chars().enumerate() {
                        if ch == 'Z' && (bits >> q) & 1 == 1 {
                            sign = -sign;
                        }
                    }
                    energy += coeff * sign;
                }
                best = best.min(energy);
            }
            assert!((exact_ground_energy(&h).unwrap() - best).abs() < 1e-10);
        }
    }

    #[test]
    fn too_many_qubits_rejected() {
        let label: String = std::iter::repeat('Z').take(13).collect();
        let h = PauliHamiltonian::new(vec![(1.0, label)]).unwrap();
        assert!(matches!(
            exact_ground_energy(&h),
            Err(QcoreError::TooManyQubits { .. })
        ));
    }
}
