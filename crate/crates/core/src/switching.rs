//! Equitable partitions, Godsil-McKay cell detection and switching.
//!
//! A cell `D` of a partition `{C_1, …, C_t, D}` qualifies when the remaining
//! cells are equitable on `V ∖ D` and every `x ∈ D` has `0`, `|C|/2` or `|C|`
//! neighbours in each other cell `C`. Switching complements the adjacency
//! between `x` and `C` whenever `x` has exactly `|C|/2` neighbours there.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SympGraph;
use crate::partition::VertexPartition;

/// `|N(v) ∩ C|` for every vertex and cell, row-major (`n × t`).
#[derive(Clone, Debug)]
pub struct CellCounts {
    t: usize,
    counts: Vec<u32>,
}

impl CellCounts {
    pub fn compute(g: &SympGraph, p: &VertexPartition) -> Result<Self> {
        if p.n() != g.n() {
            return Err(Error::OrderMismatch {
                left: g.n(),
                right: p.n(),
            });
        }
        let t = p.len();
        let masks: Vec<_> = (0..t).map(|c| p.mask(c)).collect();
        let mut counts = Vec::with_capacity(g.n() * t);
        for v in 0..g.n() {
            let row = g.row(v);
            for m in &masks {
                counts.push(
                    row.iter()
                        .zip(m.words())
                        .map(|(a, b)| (a & b).count_ones())
                        .sum(),
                );
            }
        }
        Ok(CellCounts { t, counts })
    }

    #[inline]
    pub fn get(&self, v: usize, cell: usize) -> u32 {
        self.counts[v * self.t + cell]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquitableWitness {
    pub cell: usize,
    pub target: usize,
    pub x: u32,
    pub x_count: u32,
    pub x_prime: u32,
    pub x_prime_count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquitableReport {
    pub equitable: bool,
    pub counterexample: Option<EquitableWitness>,
}

fn equitable_over(
    g: &SympGraph,
    p: &VertexPartition,
    counts: &CellCounts,
    skip: Option<usize>,
) -> EquitableReport {
    for cell in p.cells() {
        if Some(cell.id) == skip {
            continue;
        }
        let first = cell.members[0];
        for target in 0..p.len() {
            if Some(target) == skip {
                continue;
            }
            let want = counts.get(first, target);
            if let Some(&other) = cell
                .members
                .iter()
                .find(|&&v| counts.get(v, target) != want)
            {
                return EquitableReport {
                    equitable: false,
                    counterexample: Some(EquitableWitness {
                        cell: cell.id,
                        target,
                        x: g.vertex_id(first),
                        x_count: want,
                        x_prime: g.vertex_id(other),
                        x_prime_count: counts.get(other, target),
                    }),
                };
            }
        }
    }
    EquitableReport {
        equitable: true,
        counterexample: None,
    }
}

pub fn is_equitable(g: &SympGraph, p: &VertexPartition) -> Result<EquitableReport> {
    let counts = CellCounts::compute(g, p)?;
    Ok(equitable_over(g, p, &counts, None))
}

/// How the vertices of a candidate cell see another cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AllZero,
    AllHalf,
    AllFull,
    /// Every value is 0, half or full, but not all the same.
    Mixed,
    /// Some vertex sees a value other than 0, half or full.
    Violating,
}

impl Verdict {
    pub fn compliant(self) -> bool {
        self != Verdict::Violating
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellRelation {
    pub cell: usize,
    pub label: String,
    pub size: usize,
    /// Distinct values of `|N(x) ∩ C|` over `x ∈ D`, ascending.
    pub observed: Vec<u32>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmCellReport {
    pub cell: usize,
    pub label: String,
    pub size: usize,
    /// The other cells are equitable on `V ∖ D`.
    pub rest_equitable: bool,
    pub relations: Vec<CellRelation>,
    pub qualifies: bool,
}

impl GmCellReport {
    /// Cells with verdict all-half, i.e. those flipped against `D`.
    pub fn half_cells(&self) -> Vec<usize> {
        self.relations
            .iter()
            .filter(|r| r.verdict == Verdict::AllHalf)
            .map(|r| r.cell)
            .collect()
    }

    /// Every relation is uniform (no `Mixed`), as for orbit partitions.
    pub fn is_uniform(&self) -> bool {
        self.relations.iter().all(|r| {
            matches!(
                r.verdict,
                Verdict::AllZero | Verdict::AllHalf | Verdict::AllFull
            )
        })
    }

    pub fn relation(&self, cell: usize) -> Option<&CellRelation> {
        self.relations.iter().find(|r| r.cell == cell)
    }
}

fn cell_report(g: &SympGraph, p: &VertexPartition, counts: &CellCounts, d: usize) -> GmCellReport {
    let dcell = &p.cells()[d];
    let rest_equitable = equitable_over(g, p, counts, Some(d)).equitable;
    let relations: Vec<CellRelation> = p
        .cells()
        .iter()
        .filter(|c| c.id != d)
        .map(|c| {
            let size = c.len() as u32;
            let mut observed: Vec<u32> =
                dcell.members.iter().map(|&x| counts.get(x, c.id)).collect();
            observed.sort_unstable();
            observed.dedup();
            let is_half = |v: u32| size % 2 == 0 && v == size / 2;
            let verdict = match observed.as_slice() {
                [0] => Verdict::AllZero,
                [v] if *v == size => Verdict::AllFull,
                [v] if is_half(*v) => Verdict::AllHalf,
                vals if vals.iter().all(|&v| v == 0 || v == size || is_half(v)) => Verdict::Mixed,
                _ => Verdict::Violating,
            };
            CellRelation {
                cell: c.id,
                label: c.label.clone(),
                size: c.len(),
                observed,
                verdict,
            }
        })
        .collect();
    let qualifies = rest_equitable && relations.iter().all(|r| r.verdict.compliant());
    GmCellReport {
        cell: d,
        label: dcell.label.clone(),
        size: dcell.len(),
        rest_equitable,
        relations,
        qualifies,
    }
}

/// Condition report for every cell of the partition taken as `D`.
pub fn gm_cell_reports(g: &SympGraph, p: &VertexPartition) -> Result<Vec<GmCellReport>> {
    let counts = CellCounts::compute(g, p)?;
    Ok((0..p.len())
        .map(|d| cell_report(g, p, &counts, d))
        .collect())
}

pub fn gm_cell_report(g: &SympGraph, p: &VertexPartition, d: usize) -> Result<GmCellReport> {
    p.cell(d)?;
    let counts = CellCounts::compute(g, p)?;
    Ok(cell_report(g, p, &counts, d))
}

/// Cells that qualify as Godsil-McKay cells.
pub fn find_gm_cells(g: &SympGraph, p: &VertexPartition) -> Result<Vec<GmCellReport>> {
    Ok(gm_cell_reports(g, p)?
        .into_iter()
        .filter(|r| r.qualifies)
        .collect())
}

/// JSON shape: `{designated, flipped_cells, toggles: [[u, v], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchRecord {
    pub designated: Option<String>,
    pub designated_size: usize,
    pub flipped_cells: Vec<String>,
    /// Report ids, each pair ascending, sorted.
    pub toggles: Vec<[u32; 2]>,
    #[serde(skip)]
    pairs: Vec<(usize, usize)>,
}

impl SwitchRecord {
    /// Record for a switch on an empty designated cell.
    pub fn noop(designated: Option<String>) -> Self {
        SwitchRecord {
            designated,
            designated_size: 0,
            flipped_cells: Vec::new(),
            toggles: Vec::new(),
            pairs: Vec::new(),
        }
    }

    /// Toggled pairs as vertex indices `(u, v)`, `u < v`, sorted.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn is_noop(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Switches `g` with respect to `p` and cell `d`; `g` is left untouched.
pub fn apply_switch(
    g: &SympGraph,
    p: &VertexPartition,
    d: usize,
) -> Result<(SympGraph, SwitchRecord)> {
    p.cell(d)?;
    let counts = CellCounts::compute(g, p)?;
    let report = cell_report(g, p, &counts, d);
    if !report.rest_equitable {
        let why = equitable_over(g, p, &counts, Some(d))
            .counterexample
            .map(|w| {
                format!(
                    "cells {} -> {}: {} vs {}",
                    w.cell, w.target, w.x_count, w.x_prime_count
                )
            })
            .unwrap_or_default();
        return Err(Error::NotGmCellEquitable {
            cell: d,
            reason: why,
        });
    }
    let dcell = &p.cells()[d];
    if let Some(bad) = report.relations.iter().find(|r| !r.verdict.compliant()) {
        let size = bad.size as u32;
        let x = dcell
            .members
            .iter()
            .copied()
            .find(|&x| {
                let c = counts.get(x, bad.cell);
                !(c == 0 || c == size || (size % 2 == 0 && c == size / 2))
            })
            .expect("violating relation has a witness");
        return Err(Error::NotGmCell {
            cell: d,
            vertex: g.vertex_id(x) as usize,
            other: bad.cell,
            count: counts.get(x, bad.cell) as usize,
            size: bad.size,
        });
    }

    let mut pairs = Vec::new();
    let mut flipped = Vec::new();
    for c in p.cells().iter().filter(|c| c.id != d) {
        let size = c.len() as u32;
        if size % 2 != 0 {
            continue;
        }
        let mut any = false;
        for &x in &dcell.members {
            if counts.get(x, c.id) == size / 2 {
                any = true;
                pairs.extend(c.members.iter().map(|&y| (x.min(y), x.max(y))));
            }
        }
        if any {
            flipped.push(c.label.clone());
        }
    }
    pairs.sort_unstable();
    let h = g.with_toggled(&pairs)?;
    let toggles = pairs
        .iter()
        .map(|&(u, v)| [g.vertex_id(u), g.vertex_id(v)])
        .collect();
    Ok((
        h,
        SwitchRecord {
            designated: Some(dcell.label.clone()),
            designated_size: dcell.len(),
            flipped_cells: flipped,
            toggles,
            pairs,
        },
    ))
}

/// Quotient matrix of the partition: `entries[i][j]` is the constant value of
/// `|N(x) ∩ C_j|` over `x ∈ C_i`, or `None` when it is not constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborTable {
    pub labels: Vec<String>,
    pub sizes: Vec<usize>,
    pub entries: Vec<Vec<Option<u32>>>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl NeighborTable {
    pub fn count(&self, from: usize, to: usize) -> Option<u32> {
        self.entries[from][to]
    }

    /// `|N(x) ∩ C_to| / |C_to|` in lowest terms.
    pub fn fraction(&self, from: usize, to: usize) -> Option<(u64, u64)> {
        let c = self.entries[from][to]? as u64;
        let s = self.sizes[to] as u64;
        let g = gcd(c, s).max(1);
        Some((c / g, s / g))
    }
}

pub fn neighbor_count_table(g: &SympGraph, p: &VertexPartition) -> Result<NeighborTable> {
    let counts = CellCounts::compute(g, p)?;
    let entries = p
        .cells()
        .iter()
        .map(|c| {
            (0..p.len())
                .map(|t| {
                    let v = counts.get(c.members[0], t);
                    c.members
                        .iter()
                        .all(|&x| counts.get(x, t) == v)
                        .then_some(v)
                })
                .collect()
        })
        .collect();
    Ok(NeighborTable {
        labels: p.cells().iter().map(|c| c.label.clone()).collect(),
        sizes: p.sizes(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_symplectic;
    use crate::orbits::{orbit_partition_e, orbit_partition_s, SCell, SpecialQuadruple};

    fn path(n: usize) -> SympGraph {
        SympGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn path_partition_not_equitable() {
        let g = path(4);
        let p = VertexPartition::new(4, vec![("a".into(), vec![0, 1]), ("b".into(), vec![2, 3])])
            .unwrap();
        let r = is_equitable(&g, &p).unwrap();
        assert!(!r.equitable);
        let w = r.counterexample.unwrap();
        assert_ne!(w.x_count, w.x_prime_count);
    }

    #[test]
    fn orbit_partitions_are_equitable() {
        let g = build_symplectic(3).unwrap();
        assert!(
            is_equitable(&g, &orbit_partition_e(&g).unwrap())
                .unwrap()
                .equitable
        );
        let g = build_symplectic(4).unwrap();
        let q = SpecialQuadruple::canonical(4).unwrap();
        assert!(
            is_equitable(&g, &orbit_partition_s(&g, &q, None).unwrap())
                .unwrap()
                .equitable
        );
    }

    #[test]
    fn single_cell_qualifies_vacuously() {
        let g = path(3);
        let p = VertexPartition::new(3, vec![("V".into(), vec![0, 1, 2])]).unwrap();
        let cells = find_gm_cells(&g, &p).unwrap();
        assert_eq!(cells.len(), 1);
        assert!(cells[0].relations.is_empty());
    }

    #[test]
    fn s_partition_gm_cells_nu4() {
        let g = build_symplectic(4).unwrap();
        let q = SpecialQuadruple::canonical(4).unwrap();
        let p = orbit_partition_s(&g, &q, None).unwrap();
        let labels: Vec<String> = find_gm_cells(&g, &p)
            .unwrap()
            .into_iter()
            .map(|r| r.label)
            .collect();
        assert_eq!(labels, vec!["S", "S0-minus-ST", "S4"]);
    }

    #[test]
    fn switch_rejects_non_gm_cell() {
        let g = build_symplectic(4).unwrap();
        let q = SpecialQuadruple::canonical(4).unwrap();
        let p = orbit_partition_s(&g, &q, None).unwrap();
        let s2 = p.find(SCell::S2.label()).unwrap();
        match apply_switch(&g, &p, s2) {
            Err(Error::NotGmCell {
                other, count, size, ..
            }) => {
                assert_eq!(p.cell(other).unwrap().label, "T");
                assert_eq!((count, size), (2, 3));
            }
            other => panic!("expected NotGmCell, got {other:?}"),
        }
    }

    #[test]
    fn switching_twice_restores_graph() {
        let g = build_symplectic(3).unwrap();
        let p = orbit_partition_e(&g).unwrap();
        let d = p.designated().unwrap();
        let (h, rec) = apply_switch(&g, &p, d).unwrap();
        assert_ne!(h, g);
        let (back, rec2) = apply_switch(&h, &p, d).unwrap();
        assert_eq!(back, g);
        assert_eq!(rec.pairs(), rec2.pairs());
    }

    #[test]
    fn fractions_reduce() {
        let g = build_symplectic(4).unwrap();
        let q = SpecialQuadruple::canonical(4).unwrap();
        let p = orbit_partition_s(&g, &q, None).unwrap();
        let t = neighbor_count_table(&g, &p).unwrap();
        let (s2, tt) = (p.find("S2").unwrap(), p.find("T").unwrap());
        assert_eq!(t.fraction(s2, tt), Some((2, 3)));
        assert_eq!(t.fraction(tt, s2), Some((2, 3)));
    }
}
