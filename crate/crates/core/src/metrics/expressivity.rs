//! Fidelity histograms and the KL-divergence expressivity score.

use rayon::prelude::*;

use crate::pulse::{ConstraintSpec, DeviceModel};
use crate::qcore::fidelity;
use crate::sim::PropagationLevel;
use crate::templates::{sample_parameters, Template};

use super::haar::{haar_bin_mass, kl_divergence};
use super::{sample_rng, MetricError};

/// Histogram of pair fidelities over uniform bins on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityHistogram {
    counts: Vec<u64>,
    n_samples: usize,
}

impl FidelityHistogram {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// Per-bin frequencies `count / n_samples`.
    pub fn frequencies(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.n_samples as f64)
            .collect()
    }

    pub fn bin_edges(&self, bin: usize) -> (f64, f64) {
        let w = 1.0 / self.counts.len() as f64;
        (bin as f64 * w, (bin + 1) as f64 * w)
    }
}

/// Samples `n_samples` fidelities between pairs of independently drawn
/// parameter vectors, evolving `|0…0⟩` through each.
///
/// Deterministic per `(seed, n_samples, bins)` and invariant to the rayon
/// worker count: each sample uses its own ChaCha stream and the counts are
/// reduced in sample order.
pub fn fidelity_histogram(
    template: &Template,
    device: &DeviceModel,
    cspec: &ConstraintSpec,
    n_samples: usize,
    bins: usize,
    seed: u64,
) -> Result<FidelityHistogram, MetricError> {
    if n_samples == 0 {
        return Err(MetricError::NoSamples);
    }
    if bins == 0 {
        return Err(MetricError::ZeroBins);
    }
    let bin_of: Vec<usize> = (0..n_samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = sample_rng(seed, index as u64);
            let theta = sample_parameters(template, cspec, &mut rng);
            let phi = sample_parameters(template, cspec, &mut rng);
            let a = template.prepare_state(&theta, device, cspec, PropagationLevel::default())?;
            let b = template.prepare_state(&phi, device, cspec, PropagationLevel::default())?;
            let f = fidelity(&a, &b)?;
            Ok(((f * bins as f64) as usize).min(bins - 1))
        })
        .collect::<Result<Vec<usize>, MetricError>>()?;

    let mut counts = vec![0u64; bins];
    for bin in bin_of {
        counts[bin] += 1;
    }
    Ok(FidelityHistogram { counts, n_samples })
}

/// Expressivity: KL divergence from the sampled fidelity distribution to
/// the Haar fidelity distribution in dimension `2^n`. Lower is more
/// expressive.
pub fn expressivity(
    template: &Template,
    device: &DeviceModel,
    cspec: &ConstraintSpec,
    n_samples: usize,
    bins: usize,
    seed: u64,
) -> Result<f64, MetricError> {
    let hist = fidelity_histogram(template, device, cspec, n_samples, bins, seed)?;
    expressivity_of(&hist, 1 << template.n_qubits())
}

/// KL score of an existing histogram against the Haar reference.
pub fn expressivity_of(hist: &FidelityHistogram, n_dim: usize) -> Result<f64, MetricError> {
    let p = hist.frequencies();
    let q: Vec<f64> = (0..hist.n_bins())
        .map(|b| {
            let (a, c) = hist.bin_edges(b);
            haar_bin_mass(a, c, n_dim)
        })
        .collect::<Result<_, _>>()?;
    kl_divergence(&p, &q)
}
