//! Exhaustive and sampled verification of the Carlitz-form degree bounds,
//! with JSON and CSV reports.

pub mod campaigns;
pub mod config;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod report;

pub use campaigns::run_campaign;
pub use config::{CampaignConfig, CampaignKind, FieldSpec, OutputFormat};
pub use error::{HarnessError, Result};
pub use report::{CampaignReport, Verdict, Witness};
