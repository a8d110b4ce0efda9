//! JSON run configuration. Every key is optional; missing keys fall back to
//! the reference transfer scenario.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dynamics::RhsKind;
use crate::error::{Error, Result};
use crate::integrator::IntegratorConfig;
use crate::params::{ModelKind, SystemParams, ValidParams};

pub const KNOWN_KEYS: [&str; 18] = [
    "G0",
    "delta",
    "g_fiber",
    "t1",
    "t2",
    "s",
    "t_off",
    "t_final",
    "kappa1",
    "kappa2",
    "gamma1",
    "gamma2",
    "omega_m",
    "omega_c",
    "model",
    "dissipative",
    "dt",
    "sample_stride",
];

/// Raw contents of a config file, before defaults and validation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConfigFile {
    #[serde(rename = "G0", skip_serializing_if = "Option::is_none")]
    pub g_peak: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_fiber: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t2: Option<f64>,
    #[serde(rename = "s", skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_off: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_final: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dissipative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_stride: Option<usize>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let Value::Object(map) = &value else {
            return Err(Error::Parse("top level must be a JSON object".into()));
        };
        if let Some(key) = map.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return Err(Error::UnknownKey(key.clone()));
        }
        serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Applies defaults and validates. The dissipative equations are used
    /// when requested explicitly or when any damping rate is nonzero.
    pub fn into_run_config(self) -> Result<RunConfig> {
        let d = SystemParams::default();
        let params = SystemParams {
            g_peak: self.g_peak.unwrap_or(d.g_peak),
            delta: self.delta.unwrap_or(d.delta),
            g_fiber: self.g_fiber.unwrap_or(d.g_fiber),
            t1: self.t1.unwrap_or(d.t1),
            t2: self.t2.unwrap_or(d.t2),
            width: self.width.unwrap_or(d.width),
            t_off: self.t_off.unwrap_or(d.t_off),
            t_final: self.t_final.unwrap_or(d.t_final),
            kappa1: self.kappa1.unwrap_or(d.kappa1),
            kappa2: self.kappa2.unwrap_or(d.kappa2),
            gamma1: self.gamma1.unwrap_or(d.gamma1),
            gamma2: self.gamma2.unwrap_or(d.gamma2),
            omega_m: self.omega_m.unwrap_or(d.omega_m),
            omega_c: self.omega_c.or(d.omega_c),
            model: self.model.unwrap_or(d.model),
        };
        let dissipative = self.dissipative.unwrap_or(false) || params.has_damping();
        let kind = RhsKind::new(params.model, dissipative);
        let di = IntegratorConfig::default();
        let integrator = IntegratorConfig {
            dt: self.dt.unwrap_or(di.dt),
            sample_stride: self.sample_stride.unwrap_or(di.sample_stride),
        };
        let params = params.validate()?;
        integrator.validate()?;
        Ok(RunConfig {
            params,
            integrator,
            kind,
            output_path: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: ValidParams,
    pub integrator: IntegratorConfig,
    pub kind: RhsKind,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    /// Every key written explicitly; `omega_c` only when set.
    pub fn to_config_file(&self) -> ConfigFile {
        let p = &self.params;
        ConfigFile {
            g_peak: Some(p.g_peak),
            delta: Some(p.delta),
            g_fiber: Some(p.g_fiber),
            t1: Some(p.t1),
            t2: Some(p.t2),
            width: Some(p.width),
            t_off: Some(p.t_off),
            t_final: Some(p.t_final),
            kappa1: Some(p.kappa1),
            kappa2: Some(p.kappa2),
            gamma1: Some(p.gamma1),
            gamma2: Some(p.gamma2),
            omega_m: Some(p.omega_m),
            omega_c: p.omega_c,
            model: Some(p.model),
            dissipative: Some(self.kind.is_dissipative()),
            dt: Some(self.integrator.dt),
            sample_stride: Some(self.integrator.sample_stride),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_config_file()).expect("config is always serializable")
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    ConfigFile::parse(text)?.into_run_config()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_is_reference_scenario() {
        let cfg = parse_config("{}").unwrap();
        assert_eq!(cfg.params.params(), &SystemParams::default());
        assert_eq!(cfg.kind, RhsKind::EffectiveLossless);
        assert_eq!(cfg.integrator.dt, 1e-3);
        assert_eq!(cfg.integrator.sample_stride, 10);
    }

    #[test]
    fn negative_width_is_invalid_param() {
        let err = parse_config(r#"{"s": -1}"#).unwrap_err();
        assert_eq!(err.param_name(), Some("s"));
    }

    #[test]
    fn full_model_with_omega_c() {
        let cfg = parse_config(r#"{"model": "full", "omega_c": 1.0}"#).unwrap();
        assert_eq!(cfg.kind, RhsKind::FullLossless);
        assert_eq!(cfg.params.omega_c, Some(1.0));
        assert_eq!(cfg.params.resolved_omega_c(), 1.0);
    }

    #[test]
    fn error_kinds() {
        assert!(matches!(parse_config("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_config("[1, 2]"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_config(r#"{"G0": "big"}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_config(r#"{"model": "tiny"}"#),
            Err(Error::Parse(_))
        ));
        match parse_config(r#"{"G0": 2.0, "Gzero": 1}"#) {
            Err(Error::UnknownKey(k)) => assert_eq!(k, "Gzero"),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_config(r#"{"dt": 0.1}"#).unwrap_err().param_name(),
            Some("dt")
        );
    }

    #[test]
    fn rates_imply_dissipative() {
        let cfg = parse_config(r#"{"kappa1": 0.01}"#).unwrap();
        assert_eq!(cfg.kind, RhsKind::EffectiveDissipative);
        let cfg = parse_config(r#"{"dissipative": true}"#).unwrap();
        assert_eq!(cfg.kind, RhsKind::EffectiveDissipative);
    }

    #[test]
    fn serialized_config_parses_back() {
        let text =
            r#"{"G0": 2.3, "delta": 12.25, "model": "full", "kappa2": 0.02, "sample_stride": 3}"#;
        let cfg = parse_config(text).unwrap();
        let back = parse_config(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);
    }
}
