use std::collections::BTreeSet;

use serde::Serialize;

use crate::bitset::Bitset;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    pub label: String,
    pub members: Vec<usize>,
}

impl Cell {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Ordered cells covering `0..n`, with an optional designated cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    n: usize,
    cells: Vec<Cell>,
    membership: Vec<usize>,
    designated: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellSummary {
    pub id: usize,
    pub label: String,
    pub size: usize,
}

/// JSON shape: `{cells: [{id, label, size}], designated}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub cells: Vec<CellSummary>,
    pub designated: Option<usize>,
}

impl VertexPartition {
    /// Builds a partition from labelled cells, in order. Empty cells are
    /// dropped; the rest must be disjoint and cover `0..n`.
    pub fn new(n: usize, cells: Vec<(String, Vec<usize>)>) -> Result<Self> {
        let mut membership = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(cells.len());
        for (label, mut members) in cells {
            if members.is_empty() {
                continue;
            }
            members.sort_unstable();
            let id = out.len();
            for &v in &members {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if membership[v] != usize::MAX {
                    return Err(Error::BadPartition(format!("vertex {v} lies in two cells")));
                }
                membership[v] = id;
            }
            out.push(Cell { id, label, members });
        }
        if let Some(v) = membership.iter().position(|&c| c == usize::MAX) {
            return Err(Error::BadPartition(format!("vertex {v} is in no cell")));
        }
        Ok(VertexPartition {
            n,
            cells: out,
            membership,
            designated: None,
        })
    }

    /// Cells from a cell index per vertex; labels are `"c<index>"`.
    pub fn from_membership(assign: &[usize]) -> Result<Self> {
        let t = assign.iter().copied().max().map_or(0, |m| m + 1);
        let mut cells: Vec<(String, Vec<usize>)> =
            (0..t).map(|i| (format!("c{i}"), Vec::new())).collect();
        for (v, &c) in assign.iter().enumerate() {
            cells[c].1.push(v);
        }
        Self::new(assign.len(), cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> Result<&Cell> {
        self.cells.get(id).ok_or(Error::NoSuchCell(id))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.membership[v]
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.label == label)
    }

    pub fn designated(&self) -> Option<usize> {
        self.designated
    }

    pub fn with_designated(mut self, id: Option<usize>) -> Result<Self> {
        if let Some(id) = id {
            self.cell(id)?;
        }
        self.designated = id;
        Ok(self)
    }

    pub fn mask(&self, id: usize) -> Bitset {
        Bitset::from_indices(self.n, self.cells[id].members.iter().copied())
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Cell::len).collect()
    }

    pub fn report(&self) -> PartitionReport {
        PartitionReport {
            cells: self
                .cells
                .iter()
                .map(|c| CellSummary {
                    id: c.id,
                    label: c.label.clone(),
                    size: c.len(),
                })
                .collect(),
            designated: self.designated,
        }
    }

    /// The cells as a set of vertex sets, ignoring order and labels.
    pub fn as_set(&self) -> BTreeSet<Vec<usize>> {
        self.cells.iter().map(|c| c.members.clone()).collect()
    }

    pub fn same_cells(&self, other: &VertexPartition) -> bool {
        self.n == other.n && self.as_set() == other.as_set()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drops_empty_and_checks_cover() {
        let p = VertexPartition::new(
            4,
            vec![
                ("a".into(), vec![2, 0]),
                ("b".into(), vec![]),
                ("c".into(), vec![1, 3]),
            ],
        )
        .unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.cell(1).unwrap().label, "c");
        assert_eq!(p.cell_of(3), 1);
        assert_eq!(p.cell(0).unwrap().members, vec![0, 2]);

        assert!(VertexPartition::new(3, vec![("a".into(), vec![0, 1])]).is_err());
        assert!(
            VertexPartition::new(2, vec![("a".into(), vec![0, 1]), ("b".into(), vec![1])]).is_err()
        );
    }

    #[test]
    fn membership_round_trip() {
        let p = VertexPartition::from_membership(&[1, 0, 1, 2]).unwrap();
        assert_eq!(p.sizes(), vec![1, 2, 1]);
        let q = VertexPartition::new(
            4,
            vec![
                ("x".into(), vec![3]),
                ("y".into(), vec![0, 2]),
                ("z".into(), vec![1]),
            ],
        )
        .unwrap();
        assert!(p.same_cells(&q));
    }
}
