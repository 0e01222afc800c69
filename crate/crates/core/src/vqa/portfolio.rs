//! Portfolio optimization mapped onto an Ising Hamiltonian.
//!
//! The binary quadratic `min q·xᵀΣx − μᵀx (+ λ(1ᵀx − B)²)` over
//! `x ∈ {0,1}ⁿ` becomes a Z-only Pauli sum through `x_i = (1 − Z_i)/2`.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::qcore::PauliHamiltonian;

use super::VqaError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PortfolioProblem {
    /// Expected per-asset returns μ.
    pub mu: Vec<f64>,
    /// Return covariance Σ, symmetric.
    pub sigma: Vec<Vec<f64>>,
    /// Risk factor q.
    #[serde(default = "default_risk")]
    pub q: f64,
    /// Seed the instance was generated from.
    #[serde(default)]
    pub seed: u64,
    /// Optional budget constraint with its penalty weight λ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<Budget>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub assets: usize,
    pub penalty: f64,
}

fn default_risk() -> f64 {
    0.5
}

impl PortfolioProblem {
    pub fn n_assets(&self) -> usize {
        self.mu.len()
    }

    pub fn validate(&self) -> Result<(), VqaError> {
        let n = self.n_assets();
        if self.sigma.len() != n || self.sigma.iter().any(|row| row.len() != n) {
            return Err(VqaError::DimensionMismatch(self.sigma.len(), n));
        }
        let mut dev = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                dev = dev.max((self.sigma[i][j] - self.sigma[j][i]).abs());
            }
        }
        if dev > 1e-12 {
            return Err(VqaError::AsymmetricCovariance(dev));
        }
        Ok(())
    }

    /// Generates an instance from simulated return history: per-asset drift
    /// plus a shared market factor, with μ and Σ the sample statistics.
    pub fn generate(n_assets: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let periods = 64;
        let normal = move |rng: &mut ChaCha8Rng| -> f64 {
            // Box-Muller
            let u1: f64 = rng.random_range(1e-12..1.0);
            let u2: f64 = rng.random_range(0.0..1.0);
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        };
        let drift: Vec<f64> = (0..n_assets)
            .map(|_| rng.random_range(-0.05..0.10))
            .collect();
        let loading: Vec<f64> = (0..n_assets)
            .map(|_| rng.random_range(0.3..0.9))
            .collect();
        let mut history = vec![vec![0.0; n_assets]; periods];
        for row in history.iter_mut() {
            let market = normal(&mut rng);
            for (i, slot) in row.iter_mut().enumerate() {
                *slot = drift[i] + 0.02 * (loading[i] * market + 0.6 * normal(&mut rng));
            }
        }
        let mu: Vec<f64> = (0..n_assets)
            .map(|i| history.iter().map(|r| r[i]).sum::<f64>() / periods as f64)
            .collect();
        let mut sigma = vec![vec![0.0; n_assets]; n_assets];
        for i in 0..n_assets {
            for j in 0..n_assets {
                let cov: f64 = history
                    .iter()
                    .map(|r| (r[i] - mu[i]) * (r[j] - mu[j]))
                    .sum::<f64>()
                    / (periods as f64 - 1.0);
                sigma[i][j] = cov;
            }
        }
        Self {
            mu,
            sigma,
            q: default_risk(),
            seed,
            budget: None,
        }
    }

    /// Classical objective value at a portfolio bitstring.
    pub fn objective(&self, bits: usize) -> f64 {
        let n = self.n_assets();
        let x = |i: usize| ((bits >> i) & 1) as f64;
        let mut value = 0.0;
        for i in 0..n {
            for j in 0..n {
                value += self.q * self.sigma[i][j] * x(i) * x(j);
            }
            value -= self.mu[i] * x(i);
        }
        if let Some(budget) = self.budget {
            let held: f64 = (0..n).map(x).sum();
            value += budget.penalty * (held - budget.assets as f64).powi(2);
        }
        value
    }

    /// Exhaustive scan over all bitstrings: `(best value, best bits)`.
    pub fn brute_force_minimum(&self) -> (f64, usize) {
        let n = self.n_assets();
        (0..1usize << n)
            .map(|bits| (self.objective(bits), bits))
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
            .expect("at least one bitstring")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("portfolio serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Z-only Ising Hamiltonian whose ground energy equals the quadratic's
/// minimum. The identity term carries the constant offset.
pub fn portfolio_to_ising(p: &PortfolioProblem) -> Result<PauliHamiltonian, VqaError> {
    p.validate()?;
    let n = p.n_assets();
    // coefficient per Z-support bitmask; masks have at most two bits set
    let mut coeffs: BTreeMap<usize, f64> = BTreeMap::new();
    let mut add = |mask: usize, c: f64| *coeffs.entry(mask).or_insert(0.0) += c;

    // x_i = (1 - Z_i)/2 ; x_i x_j = (1 - Z_i - Z_j + Z_i Z_j)/4, where the
    // i == j case collapses through Z² = I
    let quad = |i: usize, j: usize, c: f64, add: &mut dyn FnMut(usize, f64)| {
        if i == j {
            add(0, c / 2.0);
            add(1 << i, -c / 2.0);
        } else {
            add(0, c / 4.0);
            add(1 << i, -c / 4.0);
            add(1 << j, -c / 4.0);
            add((1 << i) | (1 << j), c / 4.0);
        }
    };

    for i in 0..n {
        for j in 0..n {
            let c = p.q * p.sigma[i][j];
            if c != 0.0 {
                quad(i, j, c, &mut add);
            }
        }
        // -μᵀx
        add(0, -p.mu[i] / 2.0);
        add(1 << i, p.mu[i] / 2.0);
    }
    if let Some(budget) = p.budget {
        // λ(Σx - B)² = λ(ΣΣ x_i x_j - 2B Σ x_i + B²)
        for i in 0..n {
            for j in 0..n {
                quad(i, j, budget.penalty, &mut add);
            }
            add(0, -budget.penalty * budget.assets as f64);
            add(1 << i, budget.penalty * budget.assets as f64);
        }
        add(0, budget.penalty * (budget.assets as f64).powi(2));
    }

    let terms: Vec<(f64, String)> = coeffs
        .into_iter()
        .filter(|(_, c)| c.abs() > 1e-12)
        .map(|(mask, c)| {
            let label: String = (0..n)
                .map(|q| if (mask >> q) & 1 == 1 { 'Z' } else { 'I' })
                .collect();
            (c, label)
        })
        .collect();
    // a fully vanishing objective still needs a well-formed Hamiltonian
    if terms.is_empty() {
        return Ok(PauliHamiltonian::new(vec![(0.0, "I".repeat(n))])?);
    }
    Ok(PauliHamiltonian::new(terms)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::exact_ground_energy;

    #[test]
    fn zero_instance_maps_to_zero_constant() {
        let p = PortfolioProblem {
            mu: vec![0.0, 0.0],
            sigma: vec![vec![0.0; 2]; 2],
            q: 0.5,
            seed: 0,
            budget: None,
        };
        let h = portfolio_to_ising(&p).unwrap();
        assert_eq!(h.n_terms(), 1);
        assert_eq!(h.terms()[0].1, "II");
        assert_eq!(h.terms()[0].0, 0.0);
    }

    #[test]
    fn hand_expanded_two_asset_case() {
        // μ = (1, 0), Σ = 0, q arbitrary → -x_0 = -0.5·II + 0.5·Z_0
        let p = PortfolioProblem {
            mu: vec![1.0, 0.0],
            sigma: vec![vec![0.0; 2]; 2],
            q: 0.5,
            seed: 0,
            budget: None,
        };
        let h = portfolio_to_ising(&p).unwrap();
        let mut terms = h.terms().to_vec();
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].1, "II");
        assert!((terms[0].0 + 0.5).abs() < 1e-15);
        assert_eq!(terms[1].1, "ZI");
        assert!((terms[1].0 - 0.5).abs() < 1e-15);
        let (best, bits) = p.brute_force_minimum();
        assert_eq!(bits, 0b01);
        assert!((best + 1.0).abs() < 1e-15);
        assert!((exact_ground_energy(&h).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_instances_match_brute_force() {
        for seed in [1, 2, 3] {
            for n in [2, 3, 4] {
                let p = PortfolioProblem::generate(n, seed);
                p.validate().unwrap();
                let h = portfolio_to_ising(&p).unwrap();
                let (classical, _) = p.brute_force_minimum();
                let quantum = exact_ground_energy(&h).unwrap();
                assert!(
                    (classical - quantum).abs() < 1e-12,
                    "n={n} seed={seed}: {classical} vs {quantum}"
                );
            }
        }
    }

    #[test]
    fn ising_energy_matches_objective_on_every_bitstring() {
        use crate::qcore::StateVector;
        use crate::vqa::expectation;
        let p = PortfolioProblem::generate(3, 9);
        let h = portfolio_to_ising(&p).unwrap();
        for bits in 0..8 {
            let state = StateVector::basis_state(3, bits).unwrap();
            let energy = expectation(&state, &h).unwrap();
            assert!((energy - p.objective(bits)).abs() < 1e-12, "bits {bits}");
        }
    }

    #[test]
    fn term_count_bound_holds() {
        for n in [2, 4] {
            let p = PortfolioProblem::generate(n, 5);
            let h = portfolio_to_ising(&p).unwrap();
            assert!(h.n_terms() <= 1 + n + n * (n - 1) / 2);
            assert_eq!(h.n_measured_terms(), n + n * (n - 1) / 2);
            assert!(h.is_diagonal());
        }
    }

    #[test]
    fn budget_penalty_shifts_the_optimum() {
        let mut p = PortfolioProblem::generate(4, 3);
        let (_, unconstrained_bits) = p.brute_force_minimum();
        p.budget = Some(Budget {
            assets: 1,
            penalty: 10.0,
        });
        let h = portfolio_to_ising(&p).unwrap();
        let (classical, bits) = p.brute_force_minimum();
        assert_eq!(bits.count_ones(), 1);
        assert!(
            (exact_ground_energy(&h).unwrap() - classical).abs() < 1e-10,
            "penalized mapping must stay exact"
        );
        let _ = unconstrained_bits;
    }

    #[test]
    fn shipped_instances_match_their_generator_seeds() {
        let two = PortfolioProblem::from_json(include_str!("../../../../data/portfolio2.json"))
            .unwrap();
        assert_eq!(two, PortfolioProblem::generate(2, two.seed));
        let four = PortfolioProblem::from_json(include_str!("../../../../data/portfolio4.json"))
            .unwrap();
        assert_eq!(four, PortfolioProblem::generate(4, four.seed));
        // Table-style characterization: 3 and 10 measured Pauli strings
        assert_eq!(portfolio_to_ising(&two).unwrap().n_measured_terms(), 3);
        assert_eq!(portfolio_to_ising(&four).unwrap().n_measured_terms(), 10);
    }

    #[test]
    fn asymmetric_covariance_is_rejected() {
        let p = PortfolioProblem {
            mu: vec![0.0, 0.0],
            sigma: vec![vec![0.0, 0.1], vec![0.2, 0.0]],
            q: 0.5,
            seed: 0,
            budget: None,
        };
        assert!(matches!(
            portfolio_to_ising(&p),
            Err(VqaError::AsymmetricCovariance(_))
        ));
    }
}
