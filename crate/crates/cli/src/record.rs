//! Machine-readable run records, one JSON object per line on stdout.

use serde::Serialize;
use stable_cutset::branching::{EarlyExit, ScsVerdict};
use stable_cutset::Partition;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A stable cutset certificate with 1-indexed vertex ids, matching the
/// file format.
#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub s: Vec<usize>,
}

impl CertificateJson {
    pub fn from_partition(p: &Partition) -> Self {
        let bump = |xs: &Vec<usize>| xs.iter().map(|v| v + 1).collect();
        CertificateJson {
            a: bump(&p.a),
            b: bump(&p.b),
            s: bump(&p.s),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunRecord {
    pub input: String,
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    /// "yes", "no", or "refused" (precondition not met in a bench run).
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    /// 1-indexed colour per vertex for colouring runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colours: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub early_exit: Option<String>,
    pub nodes: u64,
    pub leaf_csps: u64,
    /// Outcome of certificate re-verification when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refusal: Option<String>,
    pub wall_ms: f64,
    pub version: String,
}

impl RunRecord {
    pub fn new(input: &str, algorithm: &str, n: usize, m: usize) -> Self {
        RunRecord {
            input: input.to_string(),
            algorithm: algorithm.to_string(),
            n,
            m,
            verdict: String::new(),
            certificate: None,
            colours: None,
            early_exit: None,
            nodes: 0,
            leaf_csps: 0,
            verified: None,
            refusal: None,
            wall_ms: 0.0,
            version: TOOL_VERSION.to_string(),
        }
    }

    pub fn fill_verdict(&mut self, verdict: &ScsVerdict) {
        self.verdict = if verdict.has_cutset { "yes" } else { "no" }.to_string();
        self.certificate = verdict
            .certificate
            .as_ref()
            .map(CertificateJson::from_partition);
        self.nodes = verdict.stats.nodes;
        self.leaf_csps = verdict.stats.leaf_csps;
        self.early_exit = verdict.stats.early_exit.map(|e| {
            match e {
                EarlyExit::StableNeighbourhood => "stable-neighbourhood",
                EarlyExit::CutVertex => "cut-vertex",
                EarlyExit::SparseEdges => "sparse-edges",
                EarlyExit::DegreeBound => "degree-bound",
            }
            .to_string()
        });
    }
}

#[derive(Debug, Serialize)]
pub struct AnalysisRecord {
    pub delta: usize,
    pub lambda: f64,
    pub mu: f64,
    pub w2: f64,
    pub version: String,
}
