//! Persistent reports: JSON documents and a flat CSV projection.

use bowtie_core::detect::FanWitness;
use bowtie_core::pspectral::PSpectralEstimate;
use bowtie_core::{canonical_key, graph6, Graph};
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::scan::{Bracket, EnumerationReport, RankedGraph, SCHEMA_VERSION};
use crate::search::SearchResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Report {
    #[schemars(regex(pattern = r"^1$"))]
    pub schema_version: String,
    pub command: CommandEcho,
    pub result: Payload,
    pub runtime_ms: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CommandEcho {
    pub verb: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Graphs { graphs: Vec<GraphRecord> },
    Enumeration(EnumerationReport),
    Verification(Verification),
    Search { results: Vec<SearchResult> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct FanRecord {
    pub k: usize,
    /// `None` when the graph is `F_k`-free.
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Witness {
    pub center: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct PSpectralRecord {
    pub p: f64,
    /// A lower bound on the p-spectral radius.
    pub value: f64,
    pub restarts: usize,
    pub converged: usize,
}

impl From<&PSpectralEstimate> for PSpectralRecord {
    fn from(e: &PSpectralEstimate) -> Self {
        PSpectralRecord {
            p: e.p,
            value: e.value,
            restarts: e.restarts,
            converged: e.converged,
        }
    }
}

/// One graph with whatever was computed about it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct GraphRecord {
    pub label: String,
    pub graph6: String,
    pub canonical_key: String,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Bracket>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bowties: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_spectral: Option<PSpectralRecord>,
}

impl GraphRecord {
    pub fn new(label: impl Into<String>, g: &Graph) -> Self {
        GraphRecord {
            label: label.into(),
            graph6: graph6::encode(g),
            canonical_key: canonical_key(g).as_str().to_owned(),
            n: g.vertex_count(),
            m: g.edge_count(),
            lambda: None,
            fan: None,
            bowties: None,
            p_spectral: None,
        }
    }

    pub fn with_lambda(mut self, b: Bracket) -> Self {
        self.lambda = Some(b);
        self
    }

    pub fn with_fan(mut self, k: usize, w: Option<FanWitness>) -> Self {
        self.fan = Some(FanRecord {
            k,
            witness: w.map(|w| Witness {
                center: w.center,
                edges: w.edges,
            }),
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            observed: None,
            reference: None,
            detail: detail.into(),
        }
    }

    pub fn values(mut self, observed: f64, reference: f64) -> Self {
        self.observed = Some(observed);
        self.reference = Some(reference);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Verification {
    pub target: String,
    /// Every check passed.
    pub confirmed: bool,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub graphs: Vec<GraphRecord>,
    #[serde(default)]
    pub scans: Vec<EnumerationReport>,
    #[serde(default)]
    pub searches: Vec<SearchResult>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Verification {
    pub fn new(target: &str) -> Self {
        Verification {
            target: target.into(),
            confirmed: false,
            checks: Vec::new(),
            graphs: Vec::new(),
            scans: Vec::new(),
            searches: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Sets `confirmed` from the checks; an empty check list confirms nothing.
    pub fn finish(mut self) -> Self {
        self.confirmed = !self.checks.is_empty() && self.checks.iter().all(|c| c.passed);
        self
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl Report {
    pub fn new(command: CommandEcho, result: Payload, runtime_ms: u64, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command,
            result,
            runtime_ms,
            seed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }

    /// The JSON Schema every serialized report satisfies.
    pub fn schema_json() -> String {
        serde_json::to_string_pretty(&schemars::schema_for!(Report)).expect("schemas serialize") + "\n"
    }

    /// One row per graph mentioned anywhere in the report.
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        let mut rows = Vec::new();
        match &self.result {
            Payload::Graphs { graphs } => rows.extend(graphs.iter().map(CsvRow::from)),
            Payload::Enumeration(e) => enumeration_rows(e, &mut rows),
            Payload::Verification(v) => {
                rows.extend(v.graphs.iter().map(CsvRow::from));
                for e in &v.scans {
                    enumeration_rows(e, &mut rows);
                }
                rows.extend(v.searches.iter().map(CsvRow::from));
            }
            Payload::Search { results } => rows.extend(results.iter().map(CsvRow::from)),
        }
        rows
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.csv_rows() {
            w.serialize(row).expect("rows serialize");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
    }

    /// The graph6 strings of every row.
    pub fn graph6_lines(&self) -> Vec<String> {
        self.csv_rows().into_iter().map(|r| r.graph6).collect()
    }
}

fn enumeration_rows(e: &EnumerationReport, rows: &mut Vec<CsvRow>) {
    rows.extend(e.argmax.iter().map(|r| CsvRow::ranked("argmax", r)));
    rows.extend(e.runner_up.iter().map(|r| CsvRow::ranked("runner_up", r)));
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct CsvRow {
    pub label: String,
    pub graph6: String,
    pub canonical_key: String,
    pub n: usize,
    pub m: usize,
    pub lambda_lower: Option<f64>,
    pub lambda_upper: Option<f64>,
    pub note: String,
}

impl CsvRow {
    fn ranked(label: &str, r: &RankedGraph) -> Self {
        CsvRow {
            label: label.into(),
            graph6: r.graph6.clone(),
            canonical_key: r.canonical_key.clone(),
            n: r.n,
            m: r.m,
            lambda_lower: Some(r.lambda.lower),
            lambda_upper: Some(r.lambda.upper),
            note: String::new(),
        }
    }
}

impl From<&GraphRecord> for CsvRow {
    fn from(g: &GraphRecord) -> Self {
        let mut notes = Vec::new();
        match &g.fan {
            Some(FanRecord { k, witness: Some(w) }) => notes.push(format!("F{k} at {}", w.center)),
            Some(FanRecord { k, witness: None }) => notes.push(format!("F{k}-free")),
            None => {}
        }
        if let Some(b) = g.bowties {
            notes.push(format!("bowties={b}"));
        }
        if let Some(p) = &g.p_spectral {
            notes.push(format!("p={} value={}", p.p, p.value));
        }
        CsvRow {
            label: g.label.clone(),
            graph6: g.graph6.clone(),
            canonical_key: g.canonical_key.clone(),
            n: g.n,
            m: g.m,
            lambda_lower: g.lambda.map(|b| b.lower),
            lambda_upper: g.lambda.map(|b| b.upper),
            note: notes.join("; "),
        }
    }
}

impl From<&SearchResult> for CsvRow {
    fn from(r: &SearchResult) -> Self {
        let verdict = r.verdict.map(|v| serde_json::to_value(v).expect("verdict").as_str().unwrap_or_default().to_owned());
        CsvRow {
            label: if r.exhaustive { "exhaustive".into() } else { "search".into() },
            graph6: r.graph6.clone(),
            canonical_key: r.canonical_key.clone(),
            n: r.n,
            m: r.m,
            lambda_lower: Some(r.lambda.lower),
            lambda_upper: Some(r.lambda.upper),
            note: verdict.unwrap_or_default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bowtie_core::families;

    #[test]
    fn json_and_csv() {
        let g = families::make_fan(2).unwrap();
        let rec = GraphRecord::new("fan", &g)
            .with_lambda(Bracket::of(&g, 1e-10).unwrap())
            .with_fan(2, bowtie_core::contains_fan(&g, 2));
        let r = Report::new(
            CommandEcho {
                verb: "spectral".into(),
                args: vec!["--family".into(), "fan".into()],
            },
            Payload::Graphs { graphs: vec![rec] },
            3,
            1995,
        );
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let csv = r.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("label,graph6,canonical_key"));
        assert!(lines[1].contains("F2 at 0"));
        assert_eq!(r.graph6_lines(), [graph6::encode(&g)]);
    }

    #[test]
    fn verification_confirms_only_with_checks() {
        assert!(!Verification::new("x").finish().confirmed);
        let mut v = Verification::new("x");
        v.check(Check::new("a", true, ""));
        assert!(v.clone().finish().confirmed);
        v.check(Check::new("b", false, "").values(1.0, 2.0));
        let v = v.finish();
        assert!(!v.confirmed);
        assert_eq!(v.failed().count(), 1);
    }
}
