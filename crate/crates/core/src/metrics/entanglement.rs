//! Meyer-Wallach Q-measure and sampled entanglement capability.

use rayon::prelude::*;

use crate::pulse::{ConstraintSpec, DeviceModel};
use crate::qcore::{partial_trace, purity, StateVector};
use crate::sim::PropagationLevel;
use crate::templates::{sample_parameters, Template};

use super::{sample_rng, MetricError};

/// Meyer-Wallach global entanglement `Q = 2(1 - mean single-qubit purity)`:
/// 0 for product states, 1 for GHZ.
pub fn mw_q(state: &StateVector) -> Result<f64, MetricError> {
    let n = state.n_qubits();
    if n < 2 {
        return Err(MetricError::SingleQubit);
    }
    let mut purity_sum = 0.0;
    for k in 0..n {
        purity_sum += purity(&partial_trace(state, k)?);
    }
    Ok(2.0 * (1.0 - purity_sum / n as f64))
}

/// Mean and maximum Q over an ensemble of sampled parameter vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementStats {
    pub mean_q: f64,
    pub max_q: f64,
    pub n_samples: usize,
}

pub fn entanglement_capability(
    template: &Template,
    device: &DeviceModel,
    cspec: &ConstraintSpec,
    n_samples: usize,
    seed: u64,
) -> Result<EntanglementStats, MetricError> {
    if template.n_qubits() < 2 {
        return Err(MetricError::SingleQubit);
    }
    if n_samples == 0 {
        return Err(MetricError::NoSamples);
    }
    let q_values: Vec<f64> = (0..n_samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = sample_rng(seed, index as u64);
            let theta = sample_parameters(template, cspec, &mut rng);
            let state =
                template.prepare_state(&theta, device, cspec, PropagationLevel::default())?;
            mw_q(&state)
        })
        .collect::<Result<Vec<f64>, MetricError>>()?;

    // ordered reduction keeps the result identical at any worker count
    let mut sum = 0.0;
    let mut max_q = f64::MIN;
    for q in &q_values {
        sum += q;
        max_q = max_q.max(*q);
    }
    Ok(EntanglementStats {
        mean_q: sum / n_samples as f64,
        max_q,
        n_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ghz(n: usize) -> StateVector {
        let dim = 1 << n;
        let mut amps = vec![c(0.0, 0.0); dim];
        amps[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[dim - 1] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        StateVector::new(amps).unwrap()
    }

    #[test]
    fn product_state_has_zero_q() {
        let state = StateVector::basis_state(3, 5).unwrap();
        assert!(mw_q(&state).unwrap().abs() < 1e-12);
    }

    #[test]
    fn ghz_has_unit_q() {
        for n in 2..=4 {
            assert!((mw_q(&ghz(n)).unwrap() - 1.0).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn schmidt_pair_follows_sine_law() {
        // Q(cosθ|00⟩ + sinθ|11⟩) = sin²(2θ)
        for k in 0..20 {
            let theta = 0.07 + k as f64 * 0.07;
            let state = StateVector::normalized(vec![
                c(theta.cos(), 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(theta.sin(), 0.0),
            ])
            .unwrap();
            let expected = (2.0 * theta).sin().powi(2);
            assert!((mw_q(&state).unwrap() - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn single_qubit_q_is_a_domain_error() {
        let state = StateVector::zero(1).unwrap();
        assert!(matches!(mw_q(&state), Err(MetricError::SingleQubit)));
    }

    #[test]
    fn q_invariant_under_local_unitaries() {
        use crate::qcore::{apply_embedded_unitary, hermitian_exp, pauli_operator, UnitaryMatrix};
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let state = ghz(3);
        let q0 = mw_q(&state).unwrap();
        for _ in 0..20 {
            let mut rotated = state.clone();
            for q in 0..3 {
                // random local unitary from a random Hermitian generator
                let h = ["X", "Y", "Z"]
                    .iter()
                    .fold(ndarray::Array2::zeros((2, 2)), |acc, label| {
                        acc + pauli_operator(label).unwrap()
                            * Complex64::new(rng.random_range(-1.0..1.0), 0.0)
                    });
                let u = UnitaryMatrix::new(hermitian_exp(&h, c(0.0, -1.0))).unwrap();
                rotated = apply_embedded_unitary(&rotated, &u, &[q]).unwrap();
            }
            assert!((mw_q(&rotated).unwrap() - q0).abs() < 1e-9);
        }
    }

    #[test]
    fn uncoupled_template_yields_product_states() {
        use crate::templates::{Template, TemplateId, TemplateSpec};
        // a hardware-efficient layer with zero CR amplitude cannot entangle
        let spec = TemplateSpec::new(TemplateId::HardwareEfficient, 2, 1).unwrap();
        let t = Template::build(&spec).unwrap();
        let device = DeviceModel::ideal_line(2);
        let cspec = ConstraintSpec::unconstrained();
        let theta = vec![0.4, 1.0, -0.2, 2.0, 0.0, 1.0, 512.0]; // CR amplitude 0
        let state = t
            .prepare_state(&theta, &device, &cspec, PropagationLevel::default())
            .unwrap();
        assert!(mw_q(&state).unwrap().abs() < 1e-10);
    }
}
