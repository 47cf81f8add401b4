//! Campaign configuration read from TOML.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const MIN_PRECISION_BITS: usize = 64;

/// Conservative resource guards; raising them takes an explicit flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Guards {
    pub tp_size: usize,
    pub hankel_size: usize,
    pub hankel_minor_order: usize,
    /// Bound on `r * n` for the brute-force enumerations.
    pub oracle_rn: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { tp_size: 20, hankel_size: 5, hankel_minor_order: 5, oracle_rn: 12 }
    }
}

impl Guards {
    pub fn check(&self, what: &str, value: usize, limit: usize) -> Result<(), CliError> {
        if value > limit {
            return Err(CliError::Guard(format!("{what} = {value} exceeds the guard {limit}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Caps {
    pub tp_size: usize,
    /// Leading block whose minors are all enumerated as a second route.
    pub minor_cross_check: usize,
    pub hankel_size: usize,
    pub hankel_minor_order: usize,
    pub root_n_max: usize,
    pub boundary_n_max: usize,
    pub discriminant_n_max: usize,
    /// Size `n` of the brute-force enumerations (second-order families).
    pub oracle_n_max: usize,
    pub log_concavity_n_max: usize,
    pub identity_rows: usize,
    pub series_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            tp_size: 20,
            minor_cross_check: 9,
            hankel_size: 5,
            hankel_minor_order: 5,
            root_n_max: 25,
            boundary_n_max: 20,
            discriminant_n_max: 20,
            oracle_n_max: 6,
            log_concavity_n_max: 200,
            identity_rows: 15,
            series_order: 10,
        }
    }
}

/// A triangle selected for the total-positivity and log-concavity claims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub kind: String,
    pub r: u32,
}

/// Optional root-cloud section; absent by default because it is slow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotSpec {
    pub kind: String,
    pub r: Vec<u32>,
    pub n: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Outputs {
    pub report: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CampaignConfig {
    pub families: Vec<FamilySpec>,
    pub log_concavity_r_max: u32,
    pub caps: Caps,
    pub guards: Guards,
    pub precision_bits: usize,
    pub plot: Option<PlotSpec>,
    pub output: Outputs,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        let families = ["cycle", "subset"]
            .into_iter()
            .flat_map(|kind| (2..=6).map(move |r| FamilySpec { kind: kind.into(), r }))
            .collect();
        CampaignConfig {
            families,
            log_concavity_r_max: 5,
            caps: Caps::default(),
            guards: Guards::default(),
            precision_bits: stirling_core::analysis::DEFAULT_PRECISION_BITS,
            plot: None,
            output: Outputs::default(),
        }
    }
}

impl CampaignConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: CampaignConfig = toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// All caps positive and `precision_bits >= 64`.
    pub fn validate(&self) -> Result<(), CliError> {
        let c = &self.caps;
        let caps = [
            ("tp_size", c.tp_size),
            ("minor_cross_check", c.minor_cross_check),
            ("hankel_size", c.hankel_size),
            ("hankel_minor_order", c.hankel_minor_order),
            ("root_n_max", c.root_n_max),
            ("boundary_n_max", c.boundary_n_max),
            ("discriminant_n_max", c.discriminant_n_max),
            ("oracle_n_max", c.oracle_n_max),
            ("log_concavity_n_max", c.log_concavity_n_max),
            ("identity_rows", c.identity_rows),
            ("series_order", c.series_order),
        ];
        for (name, v) in caps {
            if v == 0 {
                return Err(CliError::Usage(format!("cap {name} must be positive")));
            }
        }
        if self.precision_bits < MIN_PRECISION_BITS {
            return Err(CliError::Usage(format!(
                "precision_bits = {} is below {MIN_PRECISION_BITS}",
                self.precision_bits
            )));
        }
        for f in &self.families {
            crate::triangles::parse_kind(&f.kind)?;
        }
        if let Some(p) = &self.plot {
            crate::triangles::parse_family(&p.kind)?;
        }
        Ok(())
    }

    /// Trips a guard when a cap exceeds it.
    pub fn check_guards(&self) -> Result<(), CliError> {
        let g = &self.guards;
        g.check("tp_size", self.caps.tp_size, g.tp_size)?;
        g.check("hankel_size", self.caps.hankel_size, g.hankel_size)?;
        g.check("hankel_minor_order", self.caps.hankel_minor_order, g.hankel_minor_order)?;
        g.check("2 * oracle_n_max", 2 * self.caps.oracle_n_max, g.oracle_rn)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = CampaignConfig::default();
        cfg.validate().unwrap();
        cfg.check_guards().unwrap();
        assert_eq!(cfg.families.len(), 10);
    }

    #[test]
    fn parses_partial_toml() {
        let cfg = CampaignConfig::from_toml("precision_bits = 128\n[caps]\ntp_size = 2\n").unwrap();
        assert_eq!(cfg.caps.tp_size, 2);
        assert_eq!(cfg.caps.hankel_size, 5);
        assert_eq!(cfg.precision_bits, 128);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(CampaignConfig::from_toml("precision_bits = 32").is_err());
        assert!(CampaignConfig::from_toml("[caps]\ntp_size = 0").is_err());
        assert!(CampaignConfig::from_toml("bogus = 1").is_err());
        let cfg = CampaignConfig::from_toml("[caps]\ntp_size = 30").unwrap();
        assert!(matches!(cfg.check_guards(), Err(CliError::Guard(_))));
    }

    #[test]
    fn readme_example_parses() {
        let readme = include_str!("../../../README.md");
        let block = readme.split("```toml\n").nth(1).unwrap().split("```").next().unwrap();
        let cfg = CampaignConfig::from_toml(block).unwrap();
        cfg.check_guards().unwrap();
        assert_eq!(cfg.caps, Caps::default());
        assert_eq!(cfg.families.len(), 2);
        assert_eq!(cfg.plot.unwrap().n, vec![50, 100]);
        assert_eq!(cfg.output.plot, Some(PathBuf::from("clouds.csv")));
    }
}
