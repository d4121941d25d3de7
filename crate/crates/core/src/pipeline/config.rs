use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interview::ExemptionConfig;
use crate::intraview::IntraCheckConfig;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse config {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// Tunables for one analysis. The file form is a flat table:
///
/// ```toml
/// scrollable_classes = ["ScrollView", "RecyclerView"]
/// collapsible_classes = ["DrawerLayout"]
/// area_tolerance = 0.2
/// ssim_threshold = 0.9
/// icon_match_slack = 1
/// ```
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    #[serde(flatten)]
    pub exemptions: ExemptionConfig,
    #[serde(flatten)]
    pub intra: IntraCheckConfig,
}

impl AnalysisConfig {
    /// Loads TOML, or JSON when the file extension is `.json`. Missing keys keep their defaults.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: display.clone(),
            source,
        })?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let cfg: AnalysisConfig = if is_json {
            serde_json::from_str(&text).map_err(|e| ConfigError::Parse {
                path: display.clone(),
                message: e.to_string(),
            })?
        } else {
            toml::from_str(&text).map_err(|e| ConfigError::Parse {
                path: display.clone(),
                message: e.to_string(),
            })?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.intra.validate().map_err(ConfigError::Invalid)?;
        if self
            .exemptions
            .scrollable_classes
            .iter()
            .any(String::is_empty)
            || self
                .exemptions
                .collapsible_classes
                .iter()
                .any(String::is_empty)
        {
            // an empty pattern would match every class name
            return Err(ConfigError::Invalid(
                "class patterns must be non-empty".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_and_json_forms() {
        let dir = tempfile::tempdir().unwrap();
        let toml_path = dir.path().join("cfg.toml");
        std::fs::write(
            &toml_path,
            "ssim_threshold = 0.8\nscrollable_classes = [\"Pager\"]\n",
        )
        .unwrap();
        let cfg = AnalysisConfig::load(&toml_path).unwrap();
        assert_eq!(cfg.intra.ssim_threshold, 0.8);
        assert_eq!(cfg.intra.area_tolerance, 0.2);
        assert_eq!(cfg.exemptions.scrollable_classes, ["Pager"]);
        assert_eq!(cfg.exemptions.collapsible_classes, ["DrawerLayout"]);

        let json_path = dir.path().join("cfg.json");
        std::fs::write(
            &json_path,
            r#"{"icon_match_slack": 3, "collapsible_classes": []}"#,
        )
        .unwrap();
        let cfg = AnalysisConfig::load(&json_path).unwrap();
        assert_eq!(cfg.intra.icon_match_slack, 3);
        assert!(cfg.exemptions.collapsible_classes.is_empty());
    }

    #[test]
    fn out_of_range_values_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.toml");
        std::fs::write(&path, "area_tolerance = 1.5\n").unwrap();
        assert!(matches!(
            AnalysisConfig::load(&path),
            Err(ConfigError::Invalid(_))
        ));
        std::fs::write(&path, "area_tolerance = \"wide\"\n").unwrap();
        assert!(matches!(
            AnalysisConfig::load(&path),
            Err(ConfigError::Parse { .. })
        ));
        std::fs::write(&path, "scrollable_classes = [\"\"]\n").unwrap();
        assert!(matches!(
            AnalysisConfig::load(&path),
            Err(ConfigError::Invalid(_))
        ));
    }

    #[test]
    fn defaults_match_documented_values() {
        let cfg = AnalysisConfig::default();
        assert_eq!(
            cfg.intra,
            IntraCheckConfig {
                area_tolerance: 0.2,
                ssim_threshold: 0.9,
                icon_match_slack: 1
            }
        );
        assert!(cfg
            .exemptions
            .scrollable_classes
            .contains(&"RecyclerView".to_string()));
    }
}
