use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use carlitz_core::bounds::{BoundReport, CurveCountReport};
use carlitz_core::{CarlitzForm, Elem, FormClass};
use serde::{Deserialize, Serialize};

use crate::config::{CampaignConfig, ConfigEcho, OutputFormat};
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Lists of informational records are truncated to this many entries;
/// totals are always exact.
pub const RECORD_LIMIT: usize = 32;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub forms_scanned: u64,
    pub pairs_tested: u64,
    pub permutation_hits: u64,
    pub out_of_hypothesis: u64,
}

/// One fully specified instance: enough to recompute everything in it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub reason: String,
    pub p: u64,
    pub r: u32,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub form: Option<CarlitzForm>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<FormClass>,
    /// Coefficients of `g`, constant term first.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub g: Vec<Elem>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fiber_profile: Option<BTreeMap<usize, usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub bounds: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub curve: Option<CurveCountReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Witness {
    pub fn new(reason: impl Into<String>, p: u64, r: u32, q: u64) -> Self {
        Witness {
            reason: reason.into(),
            p,
            r,
            q,
            form: None,
            class: None,
            g: Vec::new(),
            n: None,
            k: None,
            nu: None,
            m: None,
            mu: None,
            fiber_profile: None,
            bounds: Vec::new(),
            curve: None,
            detail: None,
        }
    }
}

/// Totals for one `(field, n, k)` cell. Absent coordinates do not apply to
/// the campaign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSummary {
    pub p: u64,
    pub r: u32,
    pub q: u64,
    pub n: Option<u64>,
    pub k: Option<u64>,
    /// Size of the declared space.
    pub space: u64,
    pub tested: u64,
    pub hits: u64,
    pub failures: u64,
    pub exhaustive: bool,
    pub min_k: Option<u64>,
    pub note: Option<String>,
}

impl CellSummary {
    pub fn new(p: u64, r: u32, q: u64) -> Self {
        CellSummary {
            p,
            r,
            q,
            n: None,
            k: None,
            space: 0,
            tested: 0,
            hits: 0,
            failures: 0,
            exhaustive: true,
            min_k: None,
            note: None,
        }
    }
}

/// Capped list with an exact total.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Records {
    pub total: u64,
    pub items: Vec<Witness>,
}

impl Records {
    pub fn push(&mut self, w: Witness) {
        self.total += 1;
        if self.items.len() < RECORD_LIMIT {
            self.items.push(w);
        }
    }

    pub fn extend(&mut self, other: Records) {
        self.total += other.total - other.items.len() as u64;
        for w in other.items {
            self.push(w);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }
}

/// One row of the generator table for the nine-element example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleRow {
    pub zeta: Elem,
    pub form: CarlitzForm,
    pub class: FormClass,
    pub is_permutation: bool,
    pub rank: Option<u64>,
    pub plus_x2_is_permutation: bool,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub config: ConfigEcho,
    pub verdict: Verdict,
    pub counts: Counts,
    pub cells: Vec<CellSummary>,
    pub counterexamples: Vec<Witness>,
    pub notable: Vec<Witness>,
    /// Facts outside the hypotheses, kept for inspection.
    pub informational: Records,
    /// Measured values below the intermediate estimates of the proofs.
    pub discrepancies: Records,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub example_rows: Vec<ExampleRow>,
    /// Excluded from serialization so reports stay byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CampaignReport {
    pub fn new(config: &CampaignConfig) -> Self {
        CampaignReport {
            schema_version: SCHEMA_VERSION,
            config: config.echo(),
            verdict: Verdict::Pass,
            counts: Counts::default(),
            cells: Vec::new(),
            counterexamples: Vec::new(),
            notable: Vec::new(),
            informational: Records::default(),
            discrepancies: Records::default(),
            example_rows: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    /// Sets the verdict from the counterexample list.
    pub fn finish(&mut self) {
        self.verdict = if self.counterexamples.is_empty() { Verdict::Pass } else { Verdict::Fail };
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for cell in &self.cells {
            w.serialize(CsvRow::new(self, cell))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn write_to(&self, path: &Path, format: OutputFormat) -> Result<()> {
        std::fs::write(path, self.render(format)?)?;
        Ok(())
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "{} {}: forms={} pairs={} hits={} counterexamples={} informational={} discrepancies={}",
            match self.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
            },
            self.config.kind,
            self.counts.forms_scanned,
            self.counts.pairs_tested,
            self.counts.permutation_hits,
            self.counterexamples.len(),
            self.informational.total,
            self.discrepancies.total,
        )
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    campaign: &'static str,
    verdict: &'static str,
    p: u64,
    r: u32,
    q: u64,
    n: Option<u64>,
    k: Option<u64>,
    space: u64,
    tested: u64,
    hits: u64,
    failures: u64,
    exhaustive: bool,
    min_k: Option<u64>,
    note: Option<&'a str>,
}

impl<'a> CsvRow<'a> {
    fn new(report: &CampaignReport, cell: &'a CellSummary) -> Self {
        CsvRow {
            campaign: report.config.kind.name(),
            verdict: if report.passed() { "PASS" } else { "FAIL" },
            p: cell.p,
            r: cell.r,
            q: cell.q,
            n: cell.n,
            k: cell.k,
            space: cell.space,
            tested: cell.tested,
            hits: cell.hits,
            failures: cell.failures,
            exhaustive: cell.exhaustive,
            min_k: cell.min_k,
            note: cell.note.as_deref(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::CampaignKind;

    #[test]
    fn records_cap_but_count() {
        let mut r = Records::default();
        for i in 0..40 {
            r.push(Witness::new(format!("w{i}"), 5, 1, 5));
        }
        assert_eq!((r.total, r.items.len()), (40, RECORD_LIMIT));
        let mut s = Records::default();
        s.push(Witness::new("x", 5, 1, 5));
        s.extend(r);
        assert_eq!(s.total, 41);
        assert_eq!(s.items.len(), RECORD_LIMIT);
    }

    #[test]
    fn verdict_follows_counterexamples() {
        let cfg = CampaignConfig::new(CampaignKind::MainTheorem);
        let mut rep = CampaignReport::new(&cfg);
        rep.finish();
        assert!(rep.passed());
        rep.counterexamples.push(Witness::new("x", 5, 1, 5));
        rep.finish();
        assert!(!rep.passed());
        let json = rep.to_json().unwrap();
        assert!(json.contains("\"schema_version\": 1"));
        assert!(json.contains("\"FAIL\""));
        assert!(!json.contains("wall_time"));
    }

    #[test]
    fn csv_has_one_row_per_cell() {
        let cfg = CampaignConfig::new(CampaignKind::CurveSweep);
        let mut rep = CampaignReport::new(&cfg);
        rep.cells.push(CellSummary::new(5, 1, 5));
        rep.cells.push(CellSummary { k: Some(2), note: Some("x".into()), ..CellSummary::new(7, 1, 7) });
        rep.finish();
        let csv = rep.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().next().unwrap().starts_with("campaign,verdict,p,r,q,n,k"));
        assert!(csv.contains("curve_sweep,PASS,7,1,7,,2"));
    }
}
