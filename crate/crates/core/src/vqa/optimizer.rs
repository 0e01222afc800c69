//! Gradient-free classical optimizers: SPSA and Nelder-Mead.

use std::hash::{Hash, Hasher};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::VqaError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerMethod {
    Spsa,
    NelderMead,
}

/// SPSA gain schedule `a_k = a/(k+1+A)^α`, `c_k = c/(k+1)^γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpsaGains {
    pub a: f64,
    pub c: f64,
    pub big_a: f64,
    pub alpha: f64,
    pub gamma: f64,
}

impl Default for SpsaGains {
    fn default() -> Self {
        Self {
            a: 0.2,
            c: 0.1,
            big_a: 10.0,
            alpha: 0.602,
            gamma: 0.101,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub method: OptimizerMethod,
    pub max_iterations: usize,
    pub gains: SpsaGains,
    /// Rescale `a` by the measured gradient magnitude at the start point
    /// (Spall's practical rule), so one gain schedule serves objectives of
    /// any curvature scale.
    pub calibrate_gain: bool,
    /// Perturbation pairs averaged into each SPSA gradient estimate.
    pub gradient_averaging: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            method: OptimizerMethod::Spsa,
            max_iterations: 300,
            gains: SpsaGains::default(),
            calibrate_gain: true,
            gradient_averaging: 1,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    fn check(&self) -> Result<(), VqaError> {
        let g = self.gains;
        let positive = g.a > 0.0 && g.c > 0.0 && g.big_a >= 0.0 && g.alpha > 0.0 && g.gamma > 0.0;
        if !positive || self.max_iterations == 0 {
            return Err(VqaError::InvalidOptimizerConfig(format!(
                "gains must be positive and max_iterations at least 1, got {self:?}"
            )));
        }
        Ok(())
    }

    /// SPSA profile tuned for the pulse-ansatz energy landscapes: slower
    /// gain decay, delayed annealing, and 4-pair gradient averaging. This is
    /// what the benchmark harness runs with.
    pub fn tuned_for_vqe(max_iterations: usize, seed: u64) -> Self {
        Self {
            method: OptimizerMethod::Spsa,
            max_iterations,
            gains: SpsaGains {
                a: 1.0,
                c: 0.05,
                big_a: 50.0,
                alpha: 0.4,
                gamma: 0.15,
            },
            calibrate_gain: true,
            gradient_averaging: 4,
            seed,
        }
    }
}

/// One accepted iterate: step index, a hash of θ, and its energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    pub step: usize,
    pub theta_hash: String,
    pub energy: f64,
}

/// Optimization log. `best_energy` is the minimum over the recorded
/// iterations and `best_theta` the iterate that achieved it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VqeTrace {
    pub iterations: Vec<IterationRecord>,
    pub best_energy: f64,
    pub best_theta: Vec<f64>,
    pub evaluations: usize,
    pub seed: u64,
}

fn hash_theta(theta: &[f64]) -> String {
    let mut hasher = std::collections::hash_map::DefaultHasher::new();
    for v in theta {
        v.to_bits().hash(&mut hasher);
    }
    format!("{:016x}", hasher.finish())
}

fn clamp_to_box(theta: &mut [f64], bounds: &[(f64, f64)]) {
    for (v, &(lo, hi)) in theta.iter_mut().zip(bounds.iter()) {
        *v = v.clamp(lo, hi);
    }
}

struct Tracker {
    trace: VqeTrace,
}

impl Tracker {
    fn new(seed: u64) -> Self {
        Self {
            trace: VqeTrace {
                iterations: Vec::new(),
                best_energy: f64::INFINITY,
                best_theta: Vec::new(),
                evaluations: 0,
                seed,
            },
        }
    }

    fn record(
        &mut self,
        step: usize,
        theta: &[f64],
        energy: f64,
    ) -> Result<(), VqaError> {
        if !energy.is_finite() {
            return Err(VqaError::NonFiniteObjective {
                step,
                trace: Box::new(self.trace.clone()),
            });
        }
        self.trace.iterations.push(IterationRecord {
            step,
            theta_hash: hash_theta(theta),
            energy,
        });
        if energy < self.trace.best_energy {
            self.trace.best_energy = energy;
            self.trace.best_theta = theta.to_vec();
        }
        Ok(())
    }
}

/// Minimizes `objective` over the box, starting from `theta0`.
///
/// SPSA perturbs all coordinates simultaneously with ±`c_k` Rademacher
/// steps; iterates stay clamped to the box and each new iterate is
/// evaluated so the trace reflects accepted points. Deterministic per
/// `config.seed`.
pub fn optimize<F>(
    mut objective: F,
    theta0: &[f64],
    bounds: &[(f64, f64)],
    config: &OptimizerConfig,
) -> Result<VqeTrace, VqaError>
where
    F: FnMut(&[f64]) -> Result<f64, VqaError>,
{
    if theta0.len() != bounds.len() {
        return Err(VqaError::DimensionMismatch(theta0.len(), bounds.len()));
    }
    config.check()?;
    match config.method {
        OptimizerMethod::Spsa => spsa(&mut objective, theta0, bounds, config),
        OptimizerMethod::NelderMead => nelder_mead(&mut objective, theta0, bounds, config),
    }
}

fn spsa<F>(
    objective: &mut F,
    theta0: &[f64],
    bounds: &[(f64, f64)],
    config: &OptimizerConfig,
) -> Result<VqeTrace, VqaError>
where
    F: FnMut(&[f64]) -> Result<f64, VqaError>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let g = config.gains;
    let p = theta0.len();
    let mut theta = theta0.to_vec();
    clamp_to_box(&mut theta, bounds);

    let mut tracker = Tracker::new(config.seed);
    let e0 = objective(&theta)?;
    tracker.trace.evaluations += 1;
    tracker.record(0, &theta, e0)?;

    // Spall's rule: rescale a by the measured gradient magnitude at the
    // start so the early steps move about a/(1+A)^α per coordinate
    let mut a_eff = g.a;
    if config.calibrate_gain {
        let mut magnitudes = Vec::with_capacity(5);
        for _ in 0..5 {
            let delta: Vec<f64> = (0..p)
                .map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 })
                .collect();
            let mut plus = theta.clone();
            let mut minus = theta.clone();
            for i in 0..p {
                plus[i] += g.c * delta[i];
                minus[i] -= g.c * delta[i];
            }
            clamp_to_box(&mut plus, bounds);
            clamp_to_box(&mut minus, bounds);
            let f_plus = objective(&plus)?;
            let f_minus = objective(&minus)?;
            tracker.trace.evaluations += 2;
            if !f_plus.is_finite() || !f_minus.is_finite() {
                return Err(VqaError::NonFiniteObjective {
                    step: 0,
                    trace: Box::new(tracker.trace),
                });
            }
            magnitudes.push((f_plus - f_minus).abs() / (2.0 * g.c));
        }
        magnitudes.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let median = magnitudes[2];
        if median > 1e-12 {
            a_eff = g.a / median;
        }
    }

    let pairs = config.gradient_averaging.max(1);
    for k in 0..config.max_iterations {
        let ak = a_eff / ((k as f64) + 1.0 + g.big_a).powf(g.alpha);
        let ck = g.c / ((k as f64) + 1.0).powf(g.gamma);

        let mut gradient = vec![0.0; p];
        for _ in 0..pairs {
            let delta: Vec<f64> = (0..p)
                .map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 })
                .collect();
            let mut plus = theta.clone();
            let mut minus = theta.clone();
            for i in 0..p {
                plus[i] += ck * delta[i];
                minus[i] -= ck * delta[i];
            }
            clamp_to_box(&mut plus, bounds);
            clamp_to_box(&mut minus, bounds);
            let f_plus = objective(&plus)?;
            let f_minus = objective(&minus)?;
            tracker.trace.evaluations += 2;
            if !f_plus.is_finite() || !f_minus.is_finite() {
                return Err(VqaError::NonFiniteObjective {
                    step: k + 1,
                    trace: Box::new(tracker.trace),
                });
            }
            for i in 0..p {
                gradient[i] += (f_plus - f_minus) / (2.0 * ck * delta[i] * pairs as f64);
            }
        }

        for i in 0..p {
            theta[i] -= ak * gradient[i];
        }
        clamp_to_box(&mut theta, bounds);
        let energy = objective(&theta)?;
        tracker.trace.evaluations += 1;
        tracker.record(k + 1, &theta, energy)?;
    }
    Ok(tracker.trace)
}

fn nelder_mead<F>(
    objective: &mut F,
    theta0: &[f64],
    bounds: &[(f64, f64)],
    config: &OptimizerConfig,
) -> Result<VqeTrace, VqaError>
where
    F: FnMut(&[f64]) -> Result<f64, VqaError>,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let p = theta0.len();
    let mut tracker = Tracker::new(config.seed);

    let mut eval = |theta: &[f64], tracker: &mut Tracker| -> Result<f64, VqaError> {
        let value = objective(theta)?;
        tracker.trace.evaluations += 1;
        Ok(value)
    };

    // initial simplex: θ0 plus one vertex per coordinate at 5% of the range
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(p + 1);
    let mut start = theta0.to_vec();
    clamp_to_box(&mut start, bounds);
    simplex.push(start.clone());
    for i in 0..p {
        let (lo, hi) = bounds[i];
        let step = 0.05 * (hi - lo).max(1e-3);
        let mut vertex = start.clone();
        vertex[i] = if vertex[i] + step <= hi {
            vertex[i] + step
        } else {
            vertex[i] - step
        };
        simplex.push(vertex);
    }
    let mut values: Vec<f64> = Vec::with_capacity(p + 1);
    for vertex in &simplex {
        values.push(eval(vertex, &mut tracker)?);
    }

    for step in 0..config.max_iterations {
        let mut order: Vec<usize> = (0..simplex.len()).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        let best = order[0];
        let worst = order[p];
        let second_worst = order[p - 1];
        tracker.record(step + 1, &simplex[best], values[best])?;

        let mut centroid = vec![0.0; p];
        for &idx in order.iter().take(p) {
            for (c, v) in centroid.iter_mut().zip(simplex[idx].iter()) {
                *c += v / p as f64;
            }
        }
        let blend = |alpha: f64, from: &[f64]| -> Vec<f64> {
            let mut out: Vec<f64> = centroid
                .iter()
                .zip(from.iter())
                .map(|(c, w)| c + alpha * (c - w))
                .collect();
            clamp_to_box(&mut out, bounds);
            out
        };

        let reflected = blend(REFLECT, &simplex[worst]);
        let f_reflected = eval(&reflected, &mut tracker)?;
        if f_reflected < values[best] {
            let expanded = blend(EXPAND, &simplex[worst]);
            let f_expanded = eval(&expanded, &mut tracker)?;
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
        } else if f_reflected < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
        } else {
            let contracted = blend(-CONTRACT, &simplex[worst]);
            let f_contracted = eval(&contracted, &mut tracker)?;
            if f_contracted < values[worst] {
                simplex[worst] = contracted;
                values[worst] = f_contracted;
            } else {
                let best_vertex = simplex[best].clone();
                for idx in 0..simplex.len() {
                    if idx == best {
                        continue;
                    }
                    for (v, b) in simplex[idx].iter_mut().zip(best_vertex.iter()) {
                        *v = b + SHRINK * (*v - b);
                    }
                    values[idx] = eval(&simplex[idx].clone(), &mut tracker)?;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..simplex.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    tracker.record(
        config.max_iterations + 1,
        &simplex[order[0]],
        values[order[0]],
    )?;
    Ok(tracker.trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic(center: Vec<f64>) -> impl FnMut(&[f64]) -> Result<f64, VqaError> {
        move |theta: &[f64]| {
            Ok(theta
                .iter()
                .zip(center.iter())
                .map(|(t, c)| (t - c) * (t - c))
                .sum())
        }
    }

    #[test]
    fn spsa_descends_a_quadratic_bowl() {
        let bounds = vec![(-5.0, 5.0); 2];
        let config = OptimizerConfig {
            max_iterations: 200,
            seed: 3,
            gains: SpsaGains {
                a: 1.0,
                ..SpsaGains::default()
            },
            ..OptimizerConfig::default()
        };
        // start at distance 1 from the optimum; 200 iterations bring the
        // iterate within 1e-2 of it
        let target = [0.7, -0.4];
        let trace = optimize(quadratic(target.to_vec()), &[1.4070, 0.3071], &bounds, &config)
            .unwrap();
        let distance = trace
            .best_theta
            .iter()
            .zip(target.iter())
            .map(|(t, c)| (t - c) * (t - c))
            .sum::<f64>()
            .sqrt();
        assert!(distance < 1e-2, "distance {distance}");
        assert_eq!(trace.iterations.len(), 201);
        // initial eval + 5 calibration pairs + 3 per step
        assert_eq!(trace.evaluations, 1 + 10 + 3 * 200);
    }

    #[test]
    fn constant_objective_reports_the_constant() {
        let bounds = vec![(-1.0, 1.0); 3];
        let config = OptimizerConfig {
            max_iterations: 20,
            ..OptimizerConfig::default()
        };
        let trace = optimize(|_| Ok(2.5), &[0.0, 0.0, 0.0], &bounds, &config).unwrap();
        assert_eq!(trace.best_energy, 2.5);
    }

    #[test]
    fn nelder_mead_converges_tightly_on_smooth_convex() {
        let bounds = vec![(-5.0, 5.0); 2];
        let config = OptimizerConfig {
            method: OptimizerMethod::NelderMead,
            max_iterations: 200,
            ..OptimizerConfig::default()
        };
        let trace = optimize(quadratic(vec![0.3, 0.9]), &[1.0, -1.0], &bounds, &config).unwrap();
        assert!(trace.best_energy < 1e-6, "best {}", trace.best_energy);
    }

    #[test]
    fn iterates_respect_the_box() {
        let bounds = vec![(0.0, 1.0); 2];
        let config = OptimizerConfig {
            max_iterations: 50,
            seed: 9,
            ..OptimizerConfig::default()
        };
        // optimum outside the box: iterates must stay clamped
        let mut seen_out_of_box = false;
        let trace = optimize(
            |theta| {
                if theta.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
                    seen_out_of_box = true;
                }
                quadratic(vec![2.0, 2.0])(theta)
            },
            &[0.5, 0.5],
            &bounds,
            &config,
        )
        .unwrap();
        assert!(!seen_out_of_box);
        assert!(trace.best_theta.iter().all(|&t| (0.0..=1.0).contains(&t)));
    }

    #[test]
    fn non_finite_objective_aborts_with_trace() {
        let bounds = vec![(-1.0, 1.0)];
        let config = OptimizerConfig {
            max_iterations: 10,
            ..OptimizerConfig::default()
        };
        let mut calls = 0;
        let err = optimize(
            |_| {
                calls += 1;
                Ok(if calls > 5 { f64::NAN } else { 1.0 })
            },
            &[0.0],
            &bounds,
            &config,
        )
        .unwrap_err();
        match err {
            VqaError::NonFiniteObjective { trace, .. } => {
                assert!(!trace.iterations.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_configs_are_rejected() {
        let bounds = vec![(-1.0, 1.0)];
        let mut config = OptimizerConfig::default();
        config.max_iterations = 0;
        assert!(matches!(
            optimize(|_| Ok(0.0), &[0.0], &bounds, &config),
            Err(VqaError::InvalidOptimizerConfig(_))
        ));
        let mut config = OptimizerConfig::default();
        config.gains.c = 0.0;
        assert!(matches!(
            optimize(|_| Ok(0.0), &[0.0], &bounds, &config),
            Err(VqaError::InvalidOptimizerConfig(_))
        ));
    }

    #[test]
    fn traces_are_deterministic_per_seed() {
        let bounds = vec![(-2.0, 2.0); 3];
        let config = OptimizerConfig {
            max_iterations: 40,
            seed: 17,
            ..OptimizerConfig::default()
        };
        let run = || {
            optimize(quadratic(vec![0.1, 0.2, 0.3]), &[1.0, 1.0, 1.0], &bounds, &config).unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
    }

    #[test]
    fn best_energy_is_min_over_iterations() {
        let bounds = vec![(-5.0, 5.0); 2];
        let config = OptimizerConfig {
            max_iterations: 60,
            seed: 4,
            ..OptimizerConfig::default()
        };
        let trace = optimize(quadratic(vec![0.0, 0.0]), &[2.0, -2.0], &bounds, &config).unwrap();
        let min = trace
            .iterations
            .iter()
            .map(|r| r.energy)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(trace.best_energy, min);
    }
}
