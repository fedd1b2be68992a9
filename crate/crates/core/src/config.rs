//! TOML run configuration.
//!
//! ```toml
//! [modular]
//! r = 1.0
//! a_plus = 0.9
//! a_minus = 0.52
//!
//! [couplings]
//! gamma = [0.11, 0.17, 0.23, 0.29, 0.31, 0.37, 0.41, 0.43]
//! phi1 = -0.05            # or [re, im]
//!
//! [grid]
//! x_min = 0.05
//! x_max = 1.5
//! n_points = 200
//!
//! [tolerances]
//! constancy = 1e-8
//!
//! [sweep]
//! phi1_min = -0.4
//! phi1_max = 0.4
//! n_points = 33
//! ```
//!
//! Every section is optional; missing values take the defaults above.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::correspondence::{
    CorrespondenceConfig, GridSpec, Tolerances, DEFAULT_A_MINUS, DEFAULT_A_PLUS, DEFAULT_GAMMA, DEFAULT_PHI1,
    DEFAULT_R,
};
use crate::error::Error;
use crate::theta::{ModularParams, TruncationPolicy, C64};
use crate::vandiejen::Couplings;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Parse(#[from] toml::de::Error),

    #[error("{field}: {message}")]
    Field { field: String, message: String },

    #[error(transparent)]
    Invalid(#[from] Error),
}

fn field(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field: field.to_string(),
        message: message.into(),
    }
}

/// A real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexSpec {
    pub fn value(&self) -> C64 {
        match *self {
            ComplexSpec::Real(x) => C64::new(x, 0.0),
            ComplexSpec::Pair([re, im]) => C64::new(re, im),
        }
    }

    fn from_c64(z: C64) -> Self {
        if z.im == 0.0 {
            ComplexSpec::Real(z.re)
        } else {
            ComplexSpec::Pair([z.re, z.im])
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModularSection {
    pub r: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    #[serde(default)]
    pub truncation: TruncationPolicy,
}

impl Default for ModularSection {
    fn default() -> Self {
        Self {
            r: DEFAULT_R,
            a_plus: DEFAULT_A_PLUS,
            a_minus: DEFAULT_A_MINUS,
            truncation: TruncationPolicy::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingsSection {
    pub gamma: [ComplexSpec; 8],
    pub phi1: ComplexSpec,
}

impl Default for CouplingsSection {
    fn default() -> Self {
        Self {
            gamma: DEFAULT_GAMMA.map(ComplexSpec::Real),
            phi1: ComplexSpec::Real(DEFAULT_PHI1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub phi1_min: f64,
    pub phi1_max: f64,
    pub n_points: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            phi1_min: -0.4,
            phi1_max: 0.4,
            n_points: 33,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub modular: ModularSection,
    #[serde(default)]
    pub couplings: CouplingsSection,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub output: OutputSection,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text)?;
        cfg.check_finite()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configuration serializes")
    }

    fn check_finite(&self) -> Result<(), ConfigError> {
        let m = &self.modular;
        let mut reals: Vec<(String, f64)> = vec![
            ("modular.r".into(), m.r),
            ("modular.a_plus".into(), m.a_plus),
            ("modular.a_minus".into(), m.a_minus),
            ("modular.truncation.rel_tol".into(), m.truncation.rel_tol),
            ("grid.x_min".into(), self.grid.x_min),
            ("grid.x_max".into(), self.grid.x_max),
            ("grid.pole_exclusion_radius".into(), self.grid.pole_exclusion_radius),
            ("sweep.phi1_min".into(), self.sweep.phi1_min),
            ("sweep.phi1_max".into(), self.sweep.phi1_max),
        ];
        for (k, g) in self.couplings.gamma.iter().enumerate() {
            let v = g.value();
            reals.push((format!("couplings.gamma[{k}]"), v.re));
            reals.push((format!("couplings.gamma[{k}]"), v.im));
        }
        let phi = self.couplings.phi1.value();
        reals.push(("couplings.phi1".into(), phi.re));
        reals.push(("couplings.phi1".into(), phi.im));
        for (k, v) in &self.tolerances {
            reals.push((format!("tolerances.{k}"), *v));
        }
        match reals.into_iter().find(|(_, v)| !v.is_finite()) {
            Some((name, v)) => Err(field(&name, format!("must be finite, got {v}"))),
            None => Ok(()),
        }
    }

    pub fn modular_params(&self) -> Result<ModularParams, ConfigError> {
        let m = &self.modular;
        ModularParams::with_policy(m.r, m.a_plus, m.a_minus, m.truncation).map_err(|e| field("modular", e.to_string()))
    }

    pub fn tolerance_map(&self) -> Result<Tolerances, ConfigError> {
        let mut t = Tolerances::default();
        for (k, v) in &self.tolerances {
            t.set(k, *v).map_err(|e| field(&format!("tolerances.{k}"), e.to_string()))?;
        }
        Ok(t)
    }

    /// Applies a `NAME=VALUE` override.
    pub fn override_tolerance(&mut self, spec: &str) -> Result<(), ConfigError> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| field("--tolerance", format!("expected NAME=VALUE, got `{spec}`")))?;
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| field(&format!("tolerances.{name}"), format!("`{value}` is not a number")))?;
        Tolerances::default()
            .set(name.trim(), v)
            .map_err(|e| field(&format!("tolerances.{name}"), e.to_string()))?;
        self.tolerances.insert(name.trim().to_string(), v);
        Ok(())
    }

    pub fn correspondence(&self) -> Result<CorrespondenceConfig, ConfigError> {
        let couplings = Couplings::new(self.couplings.gamma.map(|g| g.value()), self.couplings.phi1.value());
        let cfg = CorrespondenceConfig::new(self.modular_params()?, couplings, self.grid, self.tolerance_map()?)
            .map_err(|e| field("grid/couplings", e.to_string()))?;
        Ok(cfg)
    }

    pub fn from_correspondence(cfg: &CorrespondenceConfig) -> Self {
        let mp = &cfg.mp;
        Self {
            modular: ModularSection {
                r: mp.r(),
                a_plus: mp.a_plus(),
                a_minus: mp.a_minus(),
                truncation: mp.policy(),
            },
            couplings: CouplingsSection {
                gamma: cfg.couplings.gamma.map(ComplexSpec::from_c64),
                phi1: ComplexSpec::from_c64(cfg.couplings.phi1),
            },
            grid: cfg.grid,
            tolerances: BTreeMap::new(),
            sweep: SweepSection::default(),
            output: OutputSection::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_default() {
        let c = RunConfig::parse("").unwrap();
        assert_eq!(c, RunConfig::default());
        let cc = c.correspondence().unwrap();
        assert_eq!(cc, CorrespondenceConfig::default());
    }

    #[test]
    fn round_trip_is_idempotent() {
        let text = r#"
            [modular]
            r = 1.0
            a_plus = 0.9
            a_minus = 0.52
            [couplings]
            gamma = [0.0, [0.0, 1.5707963267948966], 0.45, [0.45, 1.5707963267948966], 0.31, 0.37, 0.41, 0.43]
            phi1 = [-0.05, 0.0]
            [tolerances]
            constancy = 1e-7
        "#;
        let a = RunConfig::parse(text).unwrap();
        let once = a.to_toml();
        let b = RunConfig::parse(&once).unwrap();
        assert_eq!(a.correspondence().unwrap(), b.correspondence().unwrap());
        assert_eq!(once, b.to_toml());
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = RunConfig::parse("[grid]\nx_min = 0.1\nx_mx = 1.0\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("x_mx"), "{msg}");
        assert!(msg.contains("line"), "{msg}");
        assert!(RunConfig::parse("bogus = 1\n").is_err());
    }

    #[test]
    fn non_finite_rejected() {
        let err = RunConfig::parse("[modular]\nr = nan\na_plus = 0.9\na_minus = 0.5\n").unwrap_err();
        assert!(err.to_string().contains("modular.r"));
    }

    #[test]
    fn invalid_values_are_field_errors() {
        let c = RunConfig::parse("[modular]\nr = 1.0\na_plus = -0.9\na_minus = 0.5\n").unwrap();
        assert!(matches!(c.modular_params(), Err(ConfigError::Field { .. })));
        let c = RunConfig::parse("[modular]\nr = 1.0\na_plus = 0.5\na_minus = 1.0\n").unwrap();
        let msg = c.modular_params().unwrap_err().to_string();
        assert!(msg.contains("resonant"), "{msg}");
        let c = RunConfig::parse("[tolerances]\nnope = 1.0\n").unwrap();
        assert!(c.correspondence().is_err());
    }

    #[test]
    fn tolerance_override() {
        let mut c = RunConfig::default();
        c.override_tolerance("rde=1e-20").unwrap();
        assert_eq!(c.tolerance_map().unwrap().get("rde"), 1e-20);
        assert!(c.override_tolerance("rde").is_err());
        assert!(c.override_tolerance("nope=1").is_err());
        assert!(c.override_tolerance("rde=abc").is_err());
    }
}
