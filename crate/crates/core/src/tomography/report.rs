use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::sim::{Orientation, SamplingMode};

/// Summary of a simulated tomography run against its closed-form predictions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomographyReport {
    /// SHA-256 of the design file the family was read from.
    pub family_hash: String,
    pub construction: String,
    pub dim: usize,
    pub state: String,
    pub purity: f64,
    pub allocation: Vec<u64>,
    pub total_shots: u64,
    pub trials: usize,
    pub seed: u64,
    pub orientation: Orientation,
    pub mode: SamplingMode,
    pub mean: f64,
    pub std_error: f64,
    /// `((d+1)/N)(d - tr ρ^2)`.
    pub prediction_tight: f64,
    /// `(d - tr σ^2)(Tr F^{-1} - 1)/((d^2 - 1) N)`.
    pub prediction_frame: f64,
    /// Exact error for the fixed input state, when the orientation is fixed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prediction_exact: Option<f64>,
    /// The prediction the mean is tested against.
    pub prediction: f64,
    /// `|mean - prediction| / std_error`.
    pub deviation_in_se: f64,
    pub pass: bool,
}

impl TomographyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Human-readable lines with 6 significant digits.
    pub fn summary(&self) -> String {
        format!(
            "construction: {}\nd: {}  N: {}  trials: {}  seed: {}\nallocation: {:?}\n\
             mean error: {:.6e} +/- {:.6e}\nprediction (tight): {:.6e}\nprediction (Tr F^-1): {:.6e}\n\
             deviation: {:.3} SE\nverdict: {}\n",
            self.construction,
            self.dim,
            self.total_shots,
            self.trials,
            self.seed,
            self.allocation,
            self.mean,
            self.std_error,
            self.prediction_tight,
            self.prediction_frame,
            self.deviation_in_se,
            if self.pass { "pass" } else { "fail" }
        )
    }
}

/// Writes `trial,error` rows.
pub fn write_trials_csv(path: &Path, errors: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.into()))?;
    w.write_record(["trial", "error"]).map_err(|e| Error::Io(e.into()))?;
    for (i, e) in errors.iter().enumerate() {
        w.write_record([i.to_string(), format!("{e:.17e}")]).map_err(|e| Error::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}
