//! Code files, reports and the layered text renderer.
//!
//! A code file is JSON with a fixed key order and one sorted codeword per
//! line:
//!
//! ```text
//! {
//!   "graph": "C6",
//!   "codewords": [
//!     [0],
//!     [3]
//!   ],
//!   "claim": {"kind":"perfect","e":1}
//! }
//! ```
//!
//! [`CodeFile::to_json`] always produces this canonical form, so parsing a
//! canonical file and writing it back is byte-identical.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::constructions::{ConstructionResult, Provenance};
use crate::error::{Error, Result};
use crate::graph::{ProductGraph, Vertex};
use crate::metrics::{distance_map, Claim, Code, CodeReport, CoverStrategy, Label, MinDistance};
use crate::search::{MinSize, SearchOutcome, SearchStatus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub graph: String,
    pub codewords: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<Claim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl CodeFile {
    pub fn from_code(code: &Code) -> Self {
        CodeFile {
            graph: code.graph().to_string(),
            codewords: code.codewords().to_vec(),
            claim: None,
            provenance: None,
        }
    }

    pub fn from_construction(result: &ConstructionResult) -> Self {
        CodeFile {
            claim: Some(result.claim),
            provenance: Some(result.provenance.clone()),
            ..CodeFile::from_code(&result.code)
        }
    }

    /// Parses and canonicalizes (sorts) a code file. Duplicate codewords are
    /// rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut file: CodeFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.codewords.sort();
        if let Some(w) = file.codewords.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCodeword(w[0].clone()));
        }
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        CodeFile::parse(&text)
    }

    /// The code on the file's own graph.
    pub fn to_code(&self) -> Result<Code> {
        self.code_on(&ProductGraph::parse(&self.graph)?)
    }

    /// The code on `graph`, ignoring the file's own graph string.
    pub fn code_on(&self, graph: &ProductGraph) -> Result<Code> {
        Code::new(graph.clone(), self.codewords.clone())
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"graph\": {},", json(&self.graph));
        out.push_str("  \"codewords\": [");
        for (i, w) in self.codewords.iter().enumerate() {
            out.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
            let coords: Vec<String> = w.coords().iter().map(usize::to_string).collect();
            out.push_str(&coords.join(", "));
            out.push(']');
        }
        out.push_str(if self.codewords.is_empty() {
            "]"
        } else {
            "\n  ]"
        });
        if let Some(claim) = &self.claim {
            let _ = write!(out, ",\n  \"claim\": {}", json(claim));
        }
        if let Some(p) = &self.provenance {
            let _ = write!(out, ",\n  \"provenance\": {}", json(p));
        }
        out.push_str("\n}\n");
        out
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub closest_pair: Option<(Vertex, Vertex)>,
    pub farthest_vertex: Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim: Claim,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

impl From<Duration> for Timing {
    fn from(d: Duration) -> Self {
        Timing {
            elapsed_ms: d.as_secs_f64() * 1e3,
        }
    }
}

/// Classification of one code, as printed by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub graph: String,
    pub size: usize,
    pub min_distance: MinDistance,
    pub covering_radius: u32,
    pub label: Label,
    pub witnesses: Witnesses,
    pub histogram: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<ClaimVerdict>,
    pub timing: Timing,
}

impl Report {
    pub fn new(code: &Code, report: &CodeReport, claim: Option<Claim>, elapsed: Duration) -> Self {
        Report {
            graph: code.graph().to_string(),
            size: code.len(),
            min_distance: report.min_distance,
            covering_radius: report.covering_radius,
            label: report.label,
            witnesses: Witnesses {
                closest_pair: report.closest_pair.clone(),
                farthest_vertex: report.farthest_vertex.clone(),
            },
            histogram: report.histogram.clone(),
            verdict: claim.map(|claim| ClaimVerdict {
                claim,
                holds: report.label == claim.label(),
            }),
            timing: elapsed.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph            {}", self.graph);
        let _ = writeln!(out, "size             {}", self.size);
        let _ = writeln!(out, "min_distance     {}", self.min_distance);
        let _ = writeln!(out, "covering_radius  {}", self.covering_radius);
        let _ = writeln!(out, "label            {}", self.label);
        match &self.witnesses.closest_pair {
            Some((a, b)) => {
                let _ = writeln!(out, "closest_pair     {a} {b}");
            }
            None => out.push_str("closest_pair     -\n"),
        }
        let _ = writeln!(out, "farthest_vertex  {}", self.witnesses.farthest_vertex);
        let hist: Vec<String> = self
            .histogram
            .iter()
            .enumerate()
            .map(|(d, c)| format!("{d}:{c}"))
            .collect();
        let _ = writeln!(out, "histogram        {}", hist.join(" "));
        if let Some(v) = &self.verdict {
            let word = if v.holds { "holds" } else { "refuted" };
            let _ = writeln!(out, "claim            {} {word}", v.claim);
        }
        let _ = writeln!(out, "elapsed_ms       {:.3}", self.timing.elapsed_ms);
        out
    }
}

/// Outcome of a search, with the classification of its witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub graph: String,
    pub claim: Claim,
    pub status: SearchStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_size: Option<MinSize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vertex>>,
    pub nodes_explored: u64,
    pub certificate: crate::search::Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    pub timing: Timing,
}

impl SearchReport {
    pub fn new(
        outcome: &SearchOutcome,
        min_size: Option<MinSize>,
        report: Option<Report>,
        elapsed: Duration,
    ) -> Self {
        SearchReport {
            graph: outcome.certificate.graph.clone(),
            claim: outcome.certificate.claim,
            status: outcome.status,
            min_size,
            witness: outcome.witness.as_ref().map(|w| w.codewords().to_vec()),
            nodes_explored: outcome.nodes_explored,
            certificate: outcome.certificate.clone(),
            report,
            timing: elapsed.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.certificate;
        let _ = writeln!(out, "graph            {}", self.graph);
        let _ = writeln!(out, "claim            {}", self.claim);
        let _ = writeln!(out, "sizes            {}..{}", c.size_min, c.size_max);
        let _ = writeln!(out, "exhaustive       {}", c.exhaustive);
        let _ = writeln!(out, "symmetry_break   {}", c.symmetry_break);
        if let Some(b) = c.node_budget {
            let _ = writeln!(out, "node_budget      {b}");
        }
        let status = match self.status {
            SearchStatus::Found => "found",
            SearchStatus::None => "none",
            SearchStatus::Inconclusive => "inconclusive",
        };
        let _ = writeln!(out, "status           {status}");
        match self.min_size {
            Some(MinSize::Size(s)) => {
                let _ = writeln!(out, "min_size         {s}");
            }
            Some(MinSize::None) => out.push_str("min_size         none\n"),
            Some(MinSize::Inconclusive) => out.push_str("min_size         inconclusive\n"),
            None => {}
        }
        if let Some(w) = &self.witness {
            let words: Vec<String> = w.iter().map(Vertex::to_string).collect();
            let _ = writeln!(out, "witness          {}", words.join(" "));
        }
        let _ = writeln!(out, "nodes_explored   {}", self.nodes_explored);
        let _ = writeln!(out, "elapsed_ms       {:.3}", self.timing.elapsed_ms);
        out
    }
}

/// Draws a code on a graph with at most three factors, one grid block per
/// value of the third coordinate. Rows follow the first coordinate and
/// columns the second. `#` marks a codeword, `+` a vertex at distance
/// exactly `e + 1` from the code, `.` anything else.
pub fn render(code: &Code, e: u32) -> Result<String> {
    let g = code.graph();
    let dim = g.dimension();
    if dim > 3 {
        return Err(Error::Unsupported(format!(
            "rendering needs at most 3 factors, graph has {dim}"
        )));
    }
    let dist = distance_map(code, CoverStrategy::Sweep)?;
    let orders = g.orders();
    let (rows, cols, layers) = match dim {
        1 => (1, orders[0], 1),
        2 => (orders[0], orders[1], 1),
        _ => (orders[0], orders[1], orders[2]),
    };
    let mut out = String::new();
    for z in 0..layers {
        if dim == 3 {
            if z > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "layer {z}");
        }
        for x in 0..rows {
            for y in 0..cols {
                let coords: Vec<usize> = match dim {
                    1 => vec![y],
                    2 => vec![x, y],
                    _ => vec![x, y, z],
                };
                let d = dist[g.index_of_coords(&coords)];
                out.push(match d {
                    0 => '#',
                    d if d == e + 1 => '+',
                    _ => '.',
                });
            }
            out.push('\n');
        }
    }
    Ok(out)
}
