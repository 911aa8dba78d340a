use std::path::Path;

use lrdkit::changepoint::ChangepointConfig;
use lrdkit::wavelet::{MotherWavelet, Regression};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::resample::CleaningSettings;

/// Every tunable of the analysis pipeline. The effective values are copied
/// into each report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub seed: u64,
    /// Resampling rate for RR recordings.
    pub rate_hz: f64,
    pub cleaning: CleaningSettings,
    /// Largest number of segments tried by the change-point scan.
    pub k_max: usize,
    pub changepoint: ChangepointConfig,
    /// Frequency band `[ω₀, ω₁]` of the band-restricted wavelet estimate.
    pub band: [f64; 2],
    pub band_scale_count: usize,
    /// Number of scales of the whole-band stationary estimate.
    pub scale_count: usize,
    /// DFA window lengths; absent means the default geometric grid.
    pub dfa_windows: Option<Vec<usize>>,
    pub gof_level: f64,
    pub regression: Regression,
    pub wavelet: MotherWavelet,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            rate_hz: 1.0,
            cleaning: CleaningSettings::default(),
            k_max: 8,
            changepoint: ChangepointConfig::default(),
            band: [0.2, 4.0],
            band_scale_count: 10,
            scale_count: 12,
            dfa_windows: None,
            gof_level: 0.05,
            regression: Regression::Ols,
            wavelet: MotherWavelet::default(),
        }
    }
}

impl AnalysisConfig {
    /// Reads a JSON file (by extension) or TOML otherwise.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let cfg: Self = if is_json {
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        } else {
            toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let usage = |m: String| Err(CliError::Usage(m));
        if !(self.rate_hz > 0.0 && self.rate_hz.is_finite()) {
            return usage(format!("rate_hz must be positive, got {}", self.rate_hz));
        }
        let c = &self.cleaning;
        if !(c.rr_min_ms > 0.0 && c.rr_max_ms > c.rr_min_ms) {
            return usage(format!("invalid interval filter [{}, {}] ms", c.rr_min_ms, c.rr_max_ms));
        }
        if !(0.0..=1.0).contains(&c.max_drop_fraction) {
            return usage("max_drop_fraction must lie in [0, 1]".into());
        }
        if self.k_max < 2 {
            return usage("k_max must be at least 2".into());
        }
        self.changepoint.validate()?;
        let [lo, hi] = self.band;
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return usage(format!("invalid band [{lo}, {hi}]"));
        }
        if self.band_scale_count < 3 || self.scale_count < 3 {
            return usage("scale counts must be at least 3".into());
        }
        if let Some(w) = &self.dfa_windows {
            if w.len() < 3 || w.windows(2).any(|p| p[1] <= p[0]) {
                return usage("dfa_windows must hold at least 3 increasing lengths".into());
            }
        }
        if !(self.gof_level > 0.0 && self.gof_level < 1.0) {
            return usage(format!("gof_level must lie in (0, 1), got {}", self.gof_level));
        }
        MotherWavelet::new(self.wavelet.alpha, self.wavelet.beta)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_overrides_only_named_fields() {
        let cfg: AnalysisConfig =
            toml::from_str("k_max = 5\nband = [0.1, 2.0]\n[changepoint]\nmin_seg = 30\n").unwrap();
        assert_eq!(cfg.k_max, 5);
        assert_eq!(cfg.band, [0.1, 2.0]);
        assert_eq!(cfg.changepoint.min_seg, 30);
        assert_eq!(cfg.changepoint.elbow_ratio, 5.0);
        assert_eq!(cfg.gof_level, 0.05);
        cfg.validate().unwrap();
    }

    #[test]
    fn unknown_keys_and_bad_values_are_rejected() {
        assert!(toml::from_str::<AnalysisConfig>("kmax = 5\n").is_err());
        let cfg = AnalysisConfig { band: [4.0, 0.2], ..Default::default() };
        assert!(matches!(cfg.validate(), Err(CliError::Usage(_))));
        let cfg = AnalysisConfig { dfa_windows: Some(vec![8, 4, 16]), ..Default::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn json_and_toml_agree() {
        let dir = tempfile::tempdir().unwrap();
        let (j, t) = (dir.path().join("c.json"), dir.path().join("c.toml"));
        std::fs::write(&j, r#"{"gof_level": 0.1, "regression": "gls"}"#).unwrap();
        std::fs::write(&t, "gof_level = 0.1\nregression = \"gls\"\n").unwrap();
        assert_eq!(AnalysisConfig::load(&j).unwrap(), AnalysisConfig::load(&t).unwrap());
    }
}
