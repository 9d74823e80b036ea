//! Machine-readable reports and trace export.

use isokit_core::refine::RefinementTrace;
use serde::Serialize;
use serde_json::Value;

pub const REPORT_VERSION: u32 = 1;

/// Envelope written to stdout by every subcommand:
/// `{version, command, seed, results}`.
#[derive(Serialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub results: Vec<Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: Option<u64>) -> Self {
        Report { version: REPORT_VERSION, command: command.into(), seed, results: Vec::new() }
    }

    pub fn push(&mut self, value: Value) {
        self.results.push(value);
    }

    pub fn print(&self) {
        println!("{}", serde_json::to_string_pretty(self).expect("reports serialize"));
    }
}

/// Trace export: per-round partitions as sorted lists of classes (domain
/// elements are vertex ids for arity 1 and row-major tuple ranks for
/// higher arities).
#[derive(Serialize, serde::Deserialize, PartialEq, Eq, Debug)]
pub struct TraceJson {
    pub arity: usize,
    pub rounds: Vec<Vec<Vec<usize>>>,
    pub stabilized_at: usize,
}

impl TraceJson {
    pub fn from_trace(trace: &RefinementTrace) -> Self {
        TraceJson {
            arity: trace.rounds[0].arity(),
            rounds: trace.rounds.iter().map(|c| c.partition()).collect(),
            stabilized_at: trace.stabilized_at,
        }
    }
}
