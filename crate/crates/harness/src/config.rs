use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use carlitz_core::Field;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignKind {
    MainTheorem,
    MonomialTheorem,
    CorollaryComplete,
    ExampleF9,
    MuSweep,
    CurveSweep,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 6] = [
        CampaignKind::MainTheorem,
        CampaignKind::MonomialTheorem,
        CampaignKind::CorollaryComplete,
        CampaignKind::ExampleF9,
        CampaignKind::MuSweep,
        CampaignKind::CurveSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CampaignKind::MainTheorem => "main_theorem",
            CampaignKind::MonomialTheorem => "monomial_theorem",
            CampaignKind::CorollaryComplete => "corollary_complete",
            CampaignKind::ExampleF9 => "example_f9",
            CampaignKind::MuSweep => "mu_sweep",
            CampaignKind::CurveSweep => "curve_sweep",
        }
    }
}

impl fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CampaignKind {
    type Err = HarnessError;

    /// Accepts the report names and the short CLI names.
    fn from_str(s: &str) -> Result<Self> {
        let kind = match s {
            "main" | "main_theorem" => CampaignKind::MainTheorem,
            "monomial" | "monomial_theorem" => CampaignKind::MonomialTheorem,
            "corollary" | "corollary_complete" => CampaignKind::CorollaryComplete,
            "example-f9" | "example_f9" => CampaignKind::ExampleF9,
            "mu" | "mu_sweep" => CampaignKind::MuSweep,
            "curve" | "curve_sweep" => CampaignKind::CurveSweep,
            other => return Err(HarnessError::ConfigInvalid(format!("unknown campaign kind `{other}`"))),
        };
        Ok(kind)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub r: u32,
}

impl FieldSpec {
    pub fn new(p: u64, r: u32) -> Self {
        FieldSpec { p, r }
    }

    pub fn build(self) -> Result<Field> {
        Field::new(self.p, self.r)
            .map_err(|e| HarnessError::ConfigInvalid(format!("field ({}, {}): {e}", self.p, self.r)))
    }

    pub fn order(self) -> u64 {
        self.p.pow(self.r)
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(HarnessError::ConfigInvalid(format!("unknown format `{other}`"))),
        }
    }
}

/// Cap on pairs an exhaustive theorem campaign may schedule.
pub const DEFAULT_MAX_PAIRS: u64 = 2_000_000_000;

fn one() -> usize {
    1
}

fn default_max_pairs() -> u64 {
    DEFAULT_MAX_PAIRS
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub kind: CampaignKind,
    #[serde(default)]
    pub fields: Vec<FieldSpec>,
    #[serde(default)]
    pub n_max: usize,
    #[serde(default)]
    pub k_max: u64,
    /// Samples per cell; 0 means exhaustive.
    #[serde(default)]
    pub budget: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub workers: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default = "default_max_pairs")]
    pub max_pairs: u64,
}

/// The part of a config that determines report content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub kind: CampaignKind,
    pub fields: Vec<FieldSpec>,
    pub n_max: usize,
    pub k_max: u64,
    pub budget: u64,
    pub seed: u64,
    pub max_pairs: u64,
}

impl CampaignConfig {
    /// Defaults per campaign: the desk-scale grids.
    pub fn new(kind: CampaignKind) -> Self {
        let (fields, n_max, k_max, budget): (Vec<(u64, u32)>, usize, u64, u64) = match kind {
            CampaignKind::MainTheorem => (vec![(5, 1), (7, 1), (2, 3)], 2, 3, 0),
            CampaignKind::MonomialTheorem => (vec![(5, 1), (7, 1), (2, 3), (3, 2)], 3, 5, 0),
            CampaignKind::CorollaryComplete => (vec![(5, 1), (7, 1), (2, 3), (3, 2)], 3, 1, 0),
            CampaignKind::ExampleF9 => (vec![(3, 2)], 3, 2, 0),
            CampaignKind::MuSweep => (prime_powers(3, 64), 3, 3, 100),
            CampaignKind::CurveSweep => (prime_powers(3, 81), 0, 6, 50),
        };
        CampaignConfig {
            kind,
            fields: fields.into_iter().map(|(p, r)| FieldSpec::new(p, r)).collect(),
            n_max,
            k_max,
            budget,
            seed: 0,
            workers: 1,
            out: None,
            format: OutputFormat::Json,
            max_pairs: DEFAULT_MAX_PAIRS,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| HarnessError::ConfigInvalid(e.to_string()))
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            kind: self.kind,
            fields: self.fields.clone(),
            n_max: self.n_max,
            k_max: self.k_max,
            budget: self.budget,
            seed: self.seed,
            max_pairs: self.max_pairs,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: &str| Err(HarnessError::ConfigInvalid(msg.to_string()));
        if self.fields.is_empty() {
            return invalid("field list is empty");
        }
        if self.workers == 0 {
            return invalid("worker count must be at least 1");
        }
        for spec in &self.fields {
            let q = spec.build()?.order();
            if q < 3 {
                return invalid("fields must have at least 3 elements");
            }
        }
        match self.kind {
            CampaignKind::MainTheorem | CampaignKind::MonomialTheorem => {
                if self.n_max == 0 || self.k_max == 0 {
                    return invalid("n_max and k_max must be at least 1");
                }
            }
            CampaignKind::CorollaryComplete => {
                if self.n_max == 0 {
                    return invalid("n_max must be at least 1");
                }
            }
            CampaignKind::ExampleF9 => {}
            CampaignKind::MuSweep | CampaignKind::CurveSweep => {
                if self.k_max == 0 {
                    return invalid("k_max must be at least 1");
                }
            }
        }
        if self.kind == CampaignKind::MuSweep && self.n_max == 0 {
            return invalid("n_max must be at least 1");
        }
        Ok(())
    }
}

/// Prime powers `lo ≤ p^r ≤ hi` as `(p, r)`, sorted by order.
pub fn prime_powers(lo: u64, hi: u64) -> Vec<(u64, u32)> {
    let is_prime = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
    let mut out = Vec::new();
    for q in lo..=hi {
        let Some(p) = (2..=q).find(|d| q % d == 0) else { continue };
        if !is_prime(p) {
            continue;
        }
        let mut rest = q;
        let mut r = 0;
        while rest % p == 0 {
            rest /= p;
            r += 1;
        }
        if rest == 1 {
            out.push((p, r));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_list() {
        let list = prime_powers(2, 16);
        assert_eq!(list, vec![(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]);
    }

    #[test]
    fn kinds_round_trip() {
        for kind in CampaignKind::ALL {
            assert_eq!(kind.name().parse::<CampaignKind>().unwrap(), kind);
        }
        assert!(matches!("bogus".parse::<CampaignKind>(), Err(HarnessError::ConfigInvalid(_))));
    }

    #[test]
    fn validation() {
        let mut cfg = CampaignConfig::new(CampaignKind::MainTheorem);
        cfg.validate().unwrap();
        cfg.fields.clear();
        assert!(matches!(cfg.validate(), Err(HarnessError::ConfigInvalid(_))));
        let mut cfg = CampaignConfig::new(CampaignKind::MainTheorem);
        cfg.fields = vec![FieldSpec::new(4, 1)];
        assert!(cfg.validate().is_err());
        let json = r#"{"kind": "nonsense", "fields": []}"#;
        assert!(serde_json::from_str::<CampaignConfig>(json).is_err());
    }
}
