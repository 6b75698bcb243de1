//! JSON evaluation report. Aggregates are percentages except GED, which stays
//! a normalized distance in `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::metrics::{Aggregates, MetricReport, SampleOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportAggregate {
    #[serde(rename = "SA")]
    pub sa: f64,
    #[serde(rename = "StCA")]
    pub stca: f64,
    #[serde(rename = "SeCA")]
    pub seca: f64,
    #[serde(rename = "GBS")]
    pub gbs: f64,
    #[serde(rename = "GED")]
    pub ged: f64,
    #[serde(rename = "EA")]
    pub ea: f64,
}

impl From<&Aggregates> for ReportAggregate {
    fn from(a: &Aggregates) -> Self {
        Self {
            sa: 100.0 * a.sa,
            stca: 100.0 * a.stca,
            seca: 100.0 * a.seca,
            gbs: 100.0 * a.gbs,
            ged: a.ged,
            ea: 100.0 * a.ea,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub samples: usize,
    pub aggregate: ReportAggregate,
    pub per_sample: Vec<SampleOutcome>,
}

impl ReportFile {
    pub fn new(report: &MetricReport) -> Self {
        Self {
            samples: report.per_sample.len(),
            aggregate: ReportAggregate::from(&report.aggregate),
            per_sample: report.per_sample.clone(),
        }
    }

    /// Aggregates rebuilt from `per_sample` alone.
    pub fn recomputed(&self) -> ReportAggregate {
        ReportAggregate::from(&Aggregates::from_outcomes(&self.per_sample))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
