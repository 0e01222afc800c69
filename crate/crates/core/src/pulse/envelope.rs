//! Dimensionless pulse envelopes sampled on the dt grid.

use serde::{Deserialize, Serialize};

use super::PulseError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeKind {
    Gaussian,
    GaussianSquare,
}

/// Shape of a pulse, independent of its amplitude scale.
///
/// `drag_beta` is carried as calibration metadata only; no derivative
/// correction is simulated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub kind: EnvelopeKind,
    /// Width parameter in dt.
    pub sigma: f64,
    /// Rise/fall length in dt; meaningful for `GaussianSquare` only.
    #[serde(default)]
    pub rise_fall: f64,
    #[serde(default)]
    pub drag_beta: f64,
}

impl Envelope {
    pub fn gaussian(sigma: f64) -> Self {
        Self {
            kind: EnvelopeKind::Gaussian,
            sigma,
            rise_fall: 0.0,
            drag_beta: 0.0,
        }
    }

    /// Gaussian with the default width convention `sigma = duration / 4`.
    pub fn gaussian_for_duration(duration: u64) -> Self {
        Self::gaussian(duration as f64 / 4.0)
    }

    pub fn gaussian_square(sigma: f64, rise_fall: f64) -> Self {
        Self {
            kind: EnvelopeKind::GaussianSquare,
            sigma,
            rise_fall,
            drag_beta: 0.0,
        }
    }

    /// Default cross-resonance shape: flat top with 16 dt gaussian edges.
    pub fn default_cr() -> Self {
        Self::gaussian_square(8.0, 16.0)
    }

    fn check(&self, duration: u64) -> Result<(), PulseError> {
        if self.sigma <= 0.0 {
            return Err(PulseError::NonPositiveSigma { sigma: self.sigma });
        }
        if self.kind == EnvelopeKind::GaussianSquare && 2.0 * self.rise_fall > duration as f64 {
            return Err(PulseError::NegativeFlatTop {
                rise_fall_total: 2.0 * self.rise_fall,
                duration,
            });
        }
        Ok(())
    }

    /// Envelope value at time `t` (dt) for a pulse of the given duration.
    pub fn sample(&self, t: f64, duration: f64) -> f64 {
        match self.kind {
            EnvelopeKind::Gaussian => {
                let mid = duration / 2.0;
                (-(t - mid).powi(2) / (2.0 * self.sigma * self.sigma)).exp()
            }
            EnvelopeKind::GaussianSquare => {
                let r = self.rise_fall;
                if t < r {
                    (-(t - r).powi(2) / (2.0 * self.sigma * self.sigma)).exp()
                } else if t > duration - r {
                    (-(t - (duration - r)).powi(2) / (2.0 * self.sigma * self.sigma)).exp()
                } else {
                    1.0
                }
            }
        }
    }
}

/// Envelope values at integer ticks `0..duration`.
pub fn envelope_samples(e: &Envelope, duration: u64) -> Result<Vec<f64>, PulseError> {
    e.check(duration)?;
    Ok((0..duration)
        .map(|t| e.sample(t as f64, duration as f64))
        .collect())
}

/// Dimensionless dt-weighted area: the sum of envelope samples at integer
/// ticks `0..duration-1`.
pub fn envelope_area(e: &Envelope, duration: u64) -> Result<f64, PulseError> {
    Ok(envelope_samples(e, duration)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_top_with_no_edges_counts_every_tick() {
        let e = Envelope::gaussian_square(8.0, 0.0);
        assert_eq!(envelope_area(&e, 160).unwrap(), 160.0);
    }

    #[test]
    fn gaussian_area_matches_direct_summation() {
        // independent 160-term summation oracle
        let sigma = 40.0_f64;
        let mut expected = 0.0;
        for t in 0..160 {
            let x = t as f64 - 80.0;
            expected += (-x * x / (2.0 * sigma * sigma)).exp();
        }
        let e = Envelope::gaussian(sigma);
        assert!((envelope_area(&e, 160).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn zero_duration_has_zero_area() {
        assert_eq!(envelope_area(&Envelope::gaussian(40.0), 0).unwrap(), 0.0);
    }

    #[test]
    fn negative_flat_top_is_rejected() {
        let e = Envelope::gaussian_square(8.0, 100.0);
        assert!(matches!(
            envelope_area(&e, 160),
            Err(PulseError::NegativeFlatTop { .. })
        ));
    }

    #[test]
    fn non_positive_sigma_is_rejected() {
        assert!(matches!(
            envelope_area(&Envelope::gaussian(0.0), 160),
            Err(PulseError::NonPositiveSigma { .. })
        ));
    }

    #[test]
    fn area_is_linear_in_the_samples() {
        let e = Envelope::gaussian_square(8.0, 16.0);
        let samples = envelope_samples(&e, 320).unwrap();
        let area = envelope_area(&e, 320).unwrap();
        for scale in [0.25, 0.5, 2.0] {
            let scaled: f64 = samples.iter().map(|s| s * scale).sum();
            assert!((scaled - scale * area).abs() < 1e-9);
        }
    }

    #[test]
    fn cr_edges_rise_to_the_flat_top() {
        let e = Envelope::default_cr();
        let samples = envelope_samples(&e, 256).unwrap();
        assert!(samples[0] < 0.2);
        assert!((samples[16] - 1.0).abs() < 1e-12);
        assert!((samples[200] - 1.0).abs() < 1e-12);
        assert!(samples[255] < 0.3);
    }
}
