//! One-row metric summary per template configuration.

use serde::Serialize;

use crate::pulse::{ConstraintSpec, DeviceModel};
use crate::templates::{Template, TemplateSpec};

use super::{
    entanglement_capability, epd_median, expressivity, MetricError, DEFAULT_ENT_SAMPLES,
};
use super::qfi::DEFAULT_EPD_REL_TOL;

/// Profiling summary of one template at one `(N, L)` cell.
///
/// `duration_dt` is the worst-case sequence duration over the constraint
/// box (every free duration at its maximum); entanglement fields are absent
/// for single-qubit templates, where Q is undefined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub template: String,
    pub n_qubits: usize,
    pub n_layers: usize,
    pub expr_kl: f64,
    pub ent_mean_q: Option<f64>,
    pub ent_max_q: Option<f64>,
    pub epd: usize,
    pub n_params: usize,
    pub n_cr: usize,
    pub duration_dt: u64,
    pub samples: usize,
    pub seed: u64,
}

impl MetricReport {
    pub fn compute(
        spec: &TemplateSpec,
        device: &DeviceModel,
        cspec: &ConstraintSpec,
        expr_samples: usize,
        ent_samples: usize,
        bins: usize,
        seed: u64,
    ) -> Result<Self, MetricError> {
        let template = Template::build(spec)?;
        let expr_kl = expressivity(&template, device, cspec, expr_samples, bins, seed)?;
        let (ent_mean_q, ent_max_q) = if template.n_qubits() >= 2 {
            let stats = entanglement_capability(&template, device, cspec, ent_samples, seed)?;
            (Some(stats.mean_q), Some(stats.max_q))
        } else {
            (None, None)
        };
        let epd = epd_median(&template, device, cspec, seed, DEFAULT_EPD_REL_TOL)?;
        Ok(Self {
            template: spec.display_name(),
            n_qubits: spec.n_qubits,
            n_layers: spec.n_layers,
            expr_kl,
            ent_mean_q,
            ent_max_q,
            epd,
            n_params: template.n_params(),
            n_cr: template.n_cr(),
            duration_dt: template.max_duration_dt(device, cspec)?,
            samples: expr_samples,
            seed,
        })
    }

    pub fn csv_header() -> &'static str {
        "template,n_qubits,n_layers,expr_kl,ent_mean_q,ent_max_q,epd,n_params,n_cr,duration_dt,samples,seed"
    }

    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.template,
            self.n_qubits,
            self.n_layers,
            self.expr_kl,
            opt(self.ent_mean_q),
            opt(self.ent_max_q),
            self.epd,
            self.n_params,
            self.n_cr,
            self.duration_dt,
            self.samples,
            self.seed
        )
    }

    pub fn default_ent_samples() -> usize {
        DEFAULT_ENT_SAMPLES
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::templates::TemplateId;

    #[test]
    fn report_row_shape() {
        let spec = TemplateSpec::new(TemplateId::HardwareEfficientFixCr, 2, 1).unwrap();
        let device = DeviceModel::ideal_line(2);
        let cspec = ConstraintSpec::unconstrained();
        let report = MetricReport::compute(&spec, &device, &cspec, 200, 50, 50, 7).unwrap();
        assert_eq!(report.n_params, 6);
        assert_eq!(report.n_cr, 1);
        assert!(report.epd <= report.n_params);
        assert!(report.ent_mean_q.is_some());
        // SQP column at the calibrated duration plus one CR at max duration
        assert_eq!(report.duration_dt, 160 + 1024);
        let row = report.to_csv_row();
        assert_eq!(row.split(',').count(), MetricReport::csv_header().split(',').count());
    }

    #[test]
    fn one_qubit_report_leaves_ent_empty() {
        let spec = TemplateSpec::new(TemplateId::Rz, 1, 1).unwrap();
        let device = DeviceModel::ideal_line(2);
        let cspec = ConstraintSpec::unconstrained();
        let report = MetricReport::compute(&spec, &device, &cspec, 100, 50, 50, 7).unwrap();
        assert!(report.ent_mean_q.is_none());
        assert!(report.to_csv_row().contains(",,"));
    }
}
