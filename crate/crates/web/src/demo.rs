//! Plain-Rust halves of the browser exports, testable without a browser.

use serde::Serialize;

use spswitch::graph::{build_symplectic, verify_srg, SympGraph};
use spswitch::orbits::{orbit_partition_e, SpecialQuadruple};
use spswitch::suite::scan_families;
use spswitch::switching::{gm_cell_reports, neighbor_count_table};
use spswitch::triples::ScanMode;
use spswitch::variants::{switch_variant, Variant, VariantGraph};

pub const MIN_NU: usize = 3;
pub const MAX_NU: usize = 5;

/// Triples sampled per graph when an exhaustive scan would be slow in the browser.
pub const BROWSER_SAMPLES: u64 = 200_000;

const EDGE: [u8; 4] = [40, 40, 48, 255];
const ADDED: [u8; 4] = [30, 150, 70, 255];
const REMOVED: [u8; 4] = [210, 50, 50, 255];
const NONE: [u8; 4] = [250, 250, 250, 255];
const BORDER: [u8; 4] = [170, 190, 230, 255];

fn check_nu(nu: usize) -> Result<(), String> {
    if (MIN_NU..=MAX_NU).contains(&nu) {
        Ok(())
    } else {
        Err(format!("nu must be between {MIN_NU} and {MAX_NU} here"))
    }
}

fn variant(nu: usize, name: &str) -> Result<(SympGraph, VariantGraph), String> {
    check_nu(nu)?;
    let v: Variant = name.parse()?;
    let base = build_symplectic(nu).map_err(|e| e.to_string())?;
    let q = SpecialQuadruple::canonical(nu).map_err(|e| e.to_string())?;
    let vg = switch_variant(&base, v, &q).map_err(|e| e.to_string())?;
    Ok((base, vg))
}

/// Vertices grouped by cell; the base graph uses the `O(i,j,k)` cells.
fn layout(base: &SympGraph, vg: &VariantGraph) -> Result<(Vec<usize>, Vec<usize>), String> {
    let p = match &vg.partition {
        Some(p) => p.clone(),
        None => orbit_partition_e(base).map_err(|e| e.to_string())?,
    };
    let order: Vec<usize> = p
        .cells()
        .iter()
        .flat_map(|c| c.members.iter().copied())
        .collect();
    let mut starts = Vec::new();
    let mut at = 0;
    for c in p.cells() {
        starts.push(at);
        at += c.len();
    }
    Ok((order, starts))
}

/// RGBA pixels of the `n × n` adjacency matrix with rows grouped by cell.
/// Edges added by the switch are green, removed ones red.
pub fn adjacency_rgba(nu: usize, name: &str) -> Result<Vec<u8>, String> {
    let (base, vg) = variant(nu, name)?;
    let (order, starts) = layout(&base, &vg)?;
    let n = base.n();
    let mut px = vec![0u8; n * n * 4];
    for (r, &u) in order.iter().enumerate() {
        for (c, &v) in order.iter().enumerate() {
            let colour = match (base.adjacent(u, v), vg.graph.adjacent(u, v)) {
                (true, true) => EDGE,
                (false, true) => ADDED,
                (true, false) => REMOVED,
                (false, false) if starts.contains(&r) || starts.contains(&c) => BORDER,
                (false, false) => NONE,
            };
            px[(r * n + c) * 4..][..4].copy_from_slice(&colour);
        }
    }
    Ok(px)
}

#[derive(Serialize)]
struct CellInfo {
    label: String,
    size: usize,
    start: usize,
}

#[derive(Serialize)]
struct Summary {
    graph: String,
    n: usize,
    srg: Option<[usize; 4]>,
    cells: Vec<CellInfo>,
    designated: Option<String>,
    flipped_cells: Vec<String>,
    toggled_pairs: usize,
    warnings: Vec<String>,
}

pub fn summary_json(nu: usize, name: &str) -> Result<String, String> {
    let (base, vg) = variant(nu, name)?;
    let p = match &vg.partition {
        Some(p) => p.clone(),
        None => orbit_partition_e(&base).map_err(|e| e.to_string())?,
    };
    let (_, starts) = layout(&base, &vg)?;
    let s = Summary {
        graph: spswitch::suite::graph_id(vg.variant, nu),
        n: vg.graph.n(),
        srg: verify_srg(&vg.graph)
            .ok()
            .map(|c| [c.n, c.k, c.lambda, c.mu]),
        cells: p
            .cells()
            .iter()
            .zip(starts)
            .map(|(c, start)| CellInfo {
                label: c.label.clone(),
                size: c.len(),
                start,
            })
            .collect(),
        designated: vg.record.designated.clone(),
        flipped_cells: vg.record.flipped_cells.clone(),
        toggled_pairs: vg.record.toggles.len(),
        warnings: vg.warnings.clone(),
    };
    Ok(serde_json::to_string(&s).expect("serialisable"))
}

#[derive(Serialize)]
struct TableOut {
    labels: Vec<String>,
    sizes: Vec<usize>,
    /// `rows[i][j]` is `|N(x) ∩ C_j| / |C_j|` for `x ∈ C_i` in lowest terms.
    rows: Vec<Vec<String>>,
    gm_cells: Vec<String>,
}

/// Neighbour fractions between the cells of a variant's partition, on the
/// base graph.
pub fn neighbour_table_json(nu: usize, name: &str) -> Result<String, String> {
    let (base, vg) = variant(nu, name)?;
    let p = match &vg.partition {
        Some(p) => p.clone(),
        None => orbit_partition_e(&base).map_err(|e| e.to_string())?,
    };
    let t = neighbor_count_table(&base, &p).map_err(|e| e.to_string())?;
    let rows = (0..t.labels.len())
        .map(|i| {
            (0..t.labels.len())
                .map(|j| match t.fraction(i, j) {
                    Some((0, _)) => "0".to_string(),
                    Some((a, 1)) => a.to_string(),
                    Some((a, b)) => format!("{a}/{b}"),
                    None => "mixed".to_string(),
                })
                .collect()
        })
        .collect();
    let gm_cells = gm_cell_reports(&base, &p)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|r| r.qualifies)
        .map(|r| r.label)
        .collect();
    let out = TableOut {
        labels: t.labels,
        sizes: t.sizes,
        rows,
        gm_cells,
    };
    Ok(serde_json::to_string(&out).expect("serialisable"))
}

/// Smallest nonzero triple counts of the five families; exhaustive up to
/// `ν = 4`, sampled above.
pub fn scan_minima_json(nu: usize, seed: u64) -> Result<String, String> {
    check_nu(nu)?;
    let mode = if nu <= 4 {
        ScanMode::Exhaustive
    } else {
        ScanMode::Sampled {
            count: BROWSER_SAMPLES,
            seed,
        }
    };
    let q = SpecialQuadruple::canonical(nu).map_err(|e| e.to_string())?;
    let r = scan_families(nu, &q, mode, false).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&r).expect("serialisable"))
}
