//! Gaussian naive Bayes for two classes over numeric features.

use std::f64::consts::PI;

use super::BaselineError;

pub const VARIANCE_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassStats {
    pub prior: f64,
    pub means: Vec<f64>,
    pub variances: Vec<f64>,
}

/// Index 0 is the negative class, index 1 the positive class.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveBayesModel {
    pub classes: [ClassStats; 2],
}

fn stats(rows: &[&[f64]], prior: f64) -> ClassStats {
    let dims = rows[0].len();
    let n = rows.len() as f64;
    let means: Vec<f64> = (0..dims).map(|d| rows.iter().map(|r| r[d]).sum::<f64>() / n).collect();
    let variances = (0..dims)
        .map(|d| {
            let var = rows.iter().map(|r| (r[d] - means[d]).powi(2)).sum::<f64>() / n;
            var.max(VARIANCE_FLOOR)
        })
        .collect();
    ClassStats { prior, means, variances }
}

pub fn nb_train<F: AsRef<[f64]>>(examples: &[(F, bool)]) -> Result<NaiveBayesModel, BaselineError> {
    let rows = |label: bool| -> Vec<&[f64]> {
        examples.iter().filter(|(_, l)| *l == label).map(|(f, _)| f.as_ref()).collect()
    };
    let (neg, pos) = (rows(false), rows(true));
    if neg.is_empty() || pos.is_empty() {
        return Err(BaselineError::DegenerateTraining);
    }
    let n = examples.len() as f64;
    Ok(NaiveBayesModel { classes: [stats(&neg, neg.len() as f64 / n), stats(&pos, pos.len() as f64 / n)] })
}

impl NaiveBayesModel {
    /// Log of prior times likelihood for each class.
    pub fn joint_log(&self, features: &[f64]) -> [f64; 2] {
        self.classes.each_ref().map(|c| {
            let mut log = c.prior.ln();
            for ((&x, &mean), &var) in features.iter().zip(&c.means).zip(&c.variances) {
                log += -0.5 * (2.0 * PI * var).ln() - (x - mean).powi(2) / (2.0 * var);
            }
            log
        })
    }

    /// Posterior probability of the positive class.
    pub fn posterior(&self, features: &[f64]) -> f64 {
        let [neg, pos] = self.joint_log(features);
        1.0 / (1.0 + (neg - pos).exp())
    }
}

/// Maximum-posterior decision with the positive-class posterior.
pub fn nb_classify(model: &NaiveBayesModel, features: &[f64]) -> (bool, f64) {
    let p = model.posterior(features);
    (p > 0.5, p)
}
