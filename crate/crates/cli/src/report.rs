//! JSON report document.

use rdqm::casoratian::IndexSets;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Degenerate,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexSetsEcho {
    pub d: Vec<usize>,
    pub caln: usize,
    pub dbar: Vec<usize>,
}

impl From<&IndexSets> for IndexSetsEcho {
    fn from(i: &IndexSets) -> Self {
        IndexSetsEcho { d: i.d.clone(), caln: i.caln, dbar: i.dbar.clone() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub id: String,
    pub kind: String,
    pub family: String,
    pub twist: Option<String>,
    pub index_sets: Option<IndexSetsEcho>,
    pub status: Status,
    pub ratio: Option<String>,
    pub skipped_points: Vec<i64>,
    pub duration_ms: u64,
    /// Inputs needed to rerun the check plus check-specific measurements.
    pub details: Value,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub degenerate: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: Value,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: Value, records: Vec<Record>) -> Report {
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Degenerate => summary.degenerate += 1,
            }
        }
        Report { schema: SCHEMA, tool: "rdqm", version: env!("CARGO_PKG_VERSION"), config, records, summary }
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.failed > 0)
    }
}
