//! Hardware parameter constraints and the backend lookup table.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::schedule::PulseParams;

/// Allowed parameter ranges for a backend.
///
/// Amplitude is a fraction of the maximum AWG output, so the outermost legal
/// range is `[-1, 1]`. Durations must be multiples of the AWG load
/// granularity and long enough to keep a gaussian-square flat top
/// nonnegative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub backend: String,
    pub amplitude_range: (f64, f64),
    pub duration_range: (u64, u64),
    pub duration_granularity: u64,
}

impl ConstraintSpec {
    fn new(backend: &str, amplitude_range: (f64, f64)) -> Self {
        assert!(
            -1.0 <= amplitude_range.0 && amplitude_range.0 < amplitude_range.1
                && amplitude_range.1 <= 1.0
        );
        Self {
            backend: backend.to_string(),
            amplitude_range,
            duration_range: (256, 1024),
            duration_granularity: 16,
        }
    }

    /// Fallback spec: the full AWG amplitude range.
    pub fn unconstrained() -> Self {
        Self::new("default", (-1.0, 1.0))
    }

    /// Angle range is the fixed interval `[0, 2π)` for every backend.
    pub fn angle_range(&self) -> (f64, f64) {
        (0.0, TAU)
    }
}

/// Backend lookup table for amplitude ranges. Unknown names fall back to the
/// unconstrained spec; that fallback is part of the contract rather than an
/// error.
pub fn constraint_spec_for(backend_name: &str) -> ConstraintSpec {
    match backend_name {
        "ibmq_guadalupe" => ConstraintSpec::new("ibmq_guadalupe", (0.1, 0.4)),
        _ => ConstraintSpec::unconstrained(),
    }
}

/// One violated bound, carrying the bound itself for reporting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    AmplitudeOutOfRange { value: f64, lo: f64, hi: f64 },
    DurationGranularity { value: u64, granularity: u64 },
    DurationOutOfRange { value: u64, lo: u64, hi: u64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::AmplitudeOutOfRange { value, lo, hi } => {
                write!(f, "amplitude-out-of-range: {value} outside [{lo}, {hi}]")
            }
            Violation::DurationGranularity { value, granularity } => {
                write!(f, "duration-granularity: {value} is not a multiple of {granularity}")
            }
            Violation::DurationOutOfRange { value, lo, hi } => {
                write!(f, "duration-out-of-range: {value} outside [{lo}, {hi}]")
            }
        }
    }
}

/// Checks every field of `p` against `c`. The angle is normalized mod 2π
/// before checking, so it can never violate on its own.
pub fn validate_params(p: &PulseParams, c: &ConstraintSpec) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let (lo, hi) = c.amplitude_range;
    if !(p.amplitude >= lo && p.amplitude <= hi) {
        violations.push(Violation::AmplitudeOutOfRange {
            value: p.amplitude,
            lo,
            hi,
        });
    }
    if !p.duration.is_multiple_of(c.duration_granularity) {
        violations.push(Violation::DurationGranularity {
            value: p.duration,
            granularity: c.duration_granularity,
        });
    }
    let (dlo, dhi) = c.duration_range;
    if p.duration < dlo || p.duration > dhi {
        violations.push(Violation::DurationOutOfRange {
            value: p.duration,
            lo: dlo,
            hi: dhi,
        });
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guadalupe_lut_entry() {
        let spec = constraint_spec_for("ibmq_guadalupe");
        assert_eq!(spec.amplitude_range, (0.1, 0.4));
        assert_eq!(spec.duration_range, (256, 1024));
        assert_eq!(spec.duration_granularity, 16);
    }

    #[test]
    fn unknown_backend_falls_back_to_full_range() {
        let spec = constraint_spec_for("no_such_backend");
        assert_eq!(spec.amplitude_range, (-1.0, 1.0));
        assert_eq!(spec.duration_range, (256, 1024));
    }

    #[test]
    fn valid_params_pass() {
        let spec = constraint_spec_for("ibmq_guadalupe");
        let p = PulseParams::new(0.2, std::f64::consts::PI, 256);
        assert!(validate_params(&p, &spec).is_ok());
    }

    #[test]
    fn granularity_violation_reported() {
        let spec = ConstraintSpec::unconstrained();
        let p = PulseParams::new(0.2, 0.0, 270);
        let errs = validate_params(&p, &spec).unwrap_err();
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::DurationGranularity { value: 270, .. })));
    }

    #[test]
    fn range_violation_reported() {
        let spec = ConstraintSpec::unconstrained();
        let p = PulseParams::new(0.2, 0.0, 1040);
        let errs = validate_params(&p, &spec).unwrap_err();
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::DurationOutOfRange { value: 1040, .. })));
        // 1040 is a multiple of 16, so only the range violation fires
        assert_eq!(errs.len(), 1);
    }

    #[test]
    fn amplitude_violation_cites_bounds() {
        let spec = constraint_spec_for("ibmq_guadalupe");
        let p = PulseParams::new(0.05, 0.0, 256);
        let errs = validate_params(&p, &spec).unwrap_err();
        match &errs[0] {
            Violation::AmplitudeOutOfRange { value, lo, hi } => {
                assert_eq!(*value, 0.05);
                assert_eq!((*lo, *hi), (0.1, 0.4));
            }
            other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn validation_is_monotone_under_tightening() {
        // tightening any range never converts an invalid parameter set into
        // a valid one
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let loose = ConstraintSpec::unconstrained();
        for _ in 0..500 {
            let p = PulseParams::new(
                rng.random_range(-1.5..1.5),
                rng.random_range(-10.0..10.0),
                rng.random_range(0..1200),
            );
            let mut tight = loose.clone();
            tight.amplitude_range = (-0.5, 0.5);
            tight.duration_range = (320, 640);
            if validate_params(&p, &loose).is_err() {
                assert!(validate_params(&p, &tight).is_err());
            }
        }
    }
}
