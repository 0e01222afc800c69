//! Haar fidelity distribution and KL divergence.

use super::MetricError;

/// Fidelity density of Haar-random pure states in dimension `n_dim`:
/// `P(F) = (N-1)(1-F)^(N-2)`.
pub fn haar_pdf(fidelity: f64, n_dim: usize) -> Result<f64, MetricError> {
    if n_dim < 2 {
        return Err(MetricError::DimensionTooSmall(n_dim));
    }
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(MetricError::FidelityOutOfRange(fidelity));
    }
    let n = n_dim as f64;
    Ok((n - 1.0) * (1.0 - fidelity).powf(n - 2.0))
}

/// Exact Haar mass of the fidelity bin `[a, b]`:
/// `(1-a)^(N-1) - (1-b)^(N-1)`.
pub fn haar_bin_mass(a: f64, b: f64, n_dim: usize) -> Result<f64, MetricError> {
    if n_dim < 2 {
        return Err(MetricError::DimensionTooSmall(n_dim));
    }
    if !(0.0 <= a && a < b && b <= 1.0) {
        return Err(MetricError::InvalidBin { a, b });
    }
    let n = n_dim as f64;
    Ok((1.0 - a).powf(n - 1.0) - (1.0 - b).powf(n - 1.0))
}

/// `Σ p ln(p/q)` over matching bins, natural log. Bins with `p = 0`
/// contribute nothing; `q = 0` under positive `p` is a support error.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> Result<f64, MetricError> {
    if p.len() != q.len() {
        return Err(MetricError::SupportSizeMismatch {
            p: p.len(),
            q: q.len(),
        });
    }
    let mut acc = 0.0;
    for (bin, (&pb, &qb)) in p.iter().zip(q.iter()).enumerate() {
        if pb < 0.0 {
            return Err(MetricError::NegativeMass { bin, value: pb });
        }
        if qb < 0.0 {
            return Err(MetricError::NegativeMass { bin, value: qb });
        }
        if pb == 0.0 {
            continue;
        }
        if qb == 0.0 {
            return Err(MetricError::ZeroSupport { bin });
        }
        acc += pb * (pb / qb).ln();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pdf_values() {
        assert_eq!(haar_pdf(0.3, 2).unwrap(), 1.0);
        assert_eq!(haar_pdf(0.0, 4).unwrap(), 3.0);
        assert!((haar_pdf(0.5, 4).unwrap() - 0.75).abs() < 1e-15);
        assert!(haar_pdf(1.5, 4).is_err());
        assert!(haar_pdf(0.5, 1).is_err());
    }

    #[test]
    fn bin_mass_values() {
        // N=2 is uniform: any width-0.02 bin carries 0.02
        assert!((haar_bin_mass(0.44, 0.46, 2).unwrap() - 0.02).abs() < 1e-15);
        assert!((haar_bin_mass(0.0, 1.0, 4).unwrap() - 1.0).abs() < 1e-15);
        assert!((haar_bin_mass(0.0, 0.5, 4).unwrap() - 0.875).abs() < 1e-15);
        assert!(haar_bin_mass(0.5, 0.5, 4).is_err());
    }

    #[test]
    fn bin_masses_sum_to_one() {
        for n_dim in [2, 4, 8, 16] {
            let total: f64 = (0..50)
                .map(|b| haar_bin_mass(b as f64 / 50.0, (b + 1) as f64 / 50.0, n_dim).unwrap())
                .sum();
            assert!((total - 1.0).abs() < 1e-12, "N={n_dim}: {total}");
        }
    }

    #[test]
    fn kl_basic_values() {
        assert_eq!(kl_divergence(&[0.5, 0.5], &[0.5, 0.5]).unwrap(), 0.0);
        let d = kl_divergence(&[1.0, 0.0], &[0.5, 0.5]).unwrap();
        assert!((d - 2.0_f64.ln()).abs() < 1e-15);
        // delta in the last of 50 uniform bins
        let mut p = vec![0.0; 50];
        p[49] = 1.0;
        let q = vec![0.02; 50];
        assert!((kl_divergence(&p, &q).unwrap() - 50.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn kl_errors() {
        assert!(matches!(
            kl_divergence(&[1.0], &[0.5, 0.5]),
            Err(MetricError::SupportSizeMismatch { .. })
        ));
        assert!(matches!(
            kl_divergence(&[0.5, 0.5], &[1.0, 0.0]),
            Err(MetricError::ZeroSupport { bin: 1 })
        ));
    }

    #[test]
    fn kl_nonnegative_on_random_pairs() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let mut p: Vec<f64> = (0..20).map(|_| rng.random_range(0.0..1.0)).collect();
            let mut q: Vec<f64> = (0..20).map(|_| rng.random_range(0.01..1.0)).collect();
            let ps: f64 = p.iter().sum();
            let qs: f64 = q.iter().sum();
            p.iter_mut().for_each(|x| *x /= ps);
            q.iter_mut().for_each(|x| *x /= qs);
            assert!(kl_divergence(&p, &q).unwrap() >= -1e-12);
        }
    }
}
