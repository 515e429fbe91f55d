use std::fmt::Write;

use serde::Serialize;

use spswitch::graph::SympGraph;
use spswitch::partition::VertexPartition;
use spswitch::suite::{FamilyEntry, FamilyScanReport, SuiteReport};
use spswitch::triples::ScanMode;
use spswitch::variants::Variant;

use crate::GraphArgs;

/// Every report: tool, version, command, echoed configuration, result.
#[derive(Serialize)]
pub struct Envelope<'a, C, T> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: C,
    pub result: &'a T,
}

impl<'a, C: Serialize, T: Serialize> Envelope<'a, C, T> {
    pub fn new(command: &'static str, config: C, result: &'a T) -> Self {
        Envelope {
            tool: "spswitch",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            result,
        }
    }
}

#[derive(Serialize)]
pub struct BuildConfig {
    #[serde(flatten)]
    pub graph: GraphArgs,
    pub variant: Variant,
}

#[derive(Serialize)]
pub struct VerifyConfig {
    #[serde(flatten)]
    pub graph: GraphArgs,
    pub input: Option<String>,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct ScanConfig {
    #[serde(flatten)]
    pub graph: GraphArgs,
    pub variant: Option<Variant>,
    pub all_variants: bool,
    pub mode: ScanMode,
    pub histogram: bool,
}

#[derive(Serialize)]
pub struct BuildResult {
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    pub toggled_pairs: usize,
    pub flipped_cells: Vec<String>,
    pub warnings: Vec<String>,
    pub files: Vec<String>,
}

#[derive(Serialize)]
pub struct CellFile {
    pub id: usize,
    pub label: String,
    pub size: usize,
    pub members: Vec<u32>,
}

/// Partition with member vertex ids.
#[derive(Serialize)]
pub struct PartitionFile {
    pub cells: Vec<CellFile>,
    pub designated: Option<usize>,
}

impl PartitionFile {
    pub fn new(g: &SympGraph, p: &VertexPartition) -> Self {
        PartitionFile {
            cells: p
                .cells()
                .iter()
                .map(|c| CellFile {
                    id: c.id,
                    label: c.label.clone(),
                    size: c.len(),
                    members: c.members.iter().map(|&v| g.vertex_id(v)).collect(),
                })
                .collect(),
            designated: p.designated(),
        }
    }
}

pub fn build_text(r: &BuildResult) -> String {
    let mut s = format!(
        "{}: {} vertices, {} edges, {} toggled pairs\n",
        r.graph, r.vertices, r.edges, r.toggled_pairs
    );
    if !r.flipped_cells.is_empty() {
        writeln!(s, "flipped cells: {}", r.flipped_cells.join(", ")).unwrap();
    }
    for f in &r.files {
        writeln!(s, "wrote {f}").unwrap();
    }
    s
}

pub fn verify_text(r: &SuiteReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        writeln!(
            s,
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )
        .unwrap();
    }
    writeln!(
        s,
        "{}",
        if r.passed {
            "all checks passed"
        } else {
            "some checks failed"
        }
    )
    .unwrap();
    s
}

fn mode_text(m: &ScanMode) -> String {
    match m {
        ScanMode::Exhaustive => "exhaustive minimum".into(),
        ScanMode::Sampled { count, seed } => {
            format!("sampled minimum ({count} triples, seed {seed})")
        }
    }
}

pub fn entry_text(e: &FamilyEntry) -> String {
    let r = &e.scan;
    let mut s = format!(
        "{}: {} {}",
        r.graph,
        mode_text(&r.mode),
        r.min_nonzero.map_or("none".into(), |m| m.to_string())
    );
    if let Some([x, y, z]) = r.witness {
        write!(s, " at ({x}, {y}, {z})").unwrap();
    }
    match e.matches_expected {
        Some(true) => write!(s, ", matches expected {}", e.expected.value).unwrap(),
        Some(false) => write!(s, ", MISMATCH: expected {}", e.expected.value).unwrap(),
        None => write!(s, ", expected {} not compared", e.expected.value).unwrap(),
    }
    s.push('\n');
    if let Some(h) = &r.histogram {
        for (c, m) in h {
            writeln!(s, "  {c}: {m}").unwrap();
        }
    }
    s
}

pub fn families_text(r: &FamilyScanReport) -> String {
    let mut s: String = r.entries.iter().map(entry_text).collect();
    writeln!(s, "verdict: {}", r.verdict).unwrap();
    for n in &r.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    s
}
