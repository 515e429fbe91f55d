//! Dense bitset-adjacency graphs and the symplectic graph `Sp(2ν, 2)`.
//!
//! Vertices are indexed `0..n`. For a graph built from vectors, vertex `i`
//! carries the label whose packed bits equal `i + 1`, so vertex ids in reports
//! (`i + 1`) are the vectors themselves.

use serde::Serialize;

use crate::bitset::{popcount, tail_mask, words_for, Bitset};
use crate::error::{Error, Result};
use crate::gf2::{form_bits, BitVector};

pub const MIN_NU: usize = 3;
pub const MAX_NU: usize = 8;

pub fn check_nu(nu: usize) -> Result<()> {
    if !(MIN_NU..=MAX_NU).contains(&nu) {
        return Err(Error::NuOutOfRange {
            nu,
            min: MIN_NU,
            max: MAX_NU,
        });
    }
    Ok(())
}

/// An undirected simple graph with one adjacency bitset per vertex.
///
/// Immutable once built; switching produces a new graph.
#[derive(Clone, PartialEq, Eq)]
pub struct SympGraph {
    n: usize,
    nu: usize,
    words: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for SympGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SympGraph")
            .field("n", &self.n)
            .field("nu", &self.nu)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl SympGraph {
    /// Empty graph on `n` unlabelled vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        SympGraph {
            n,
            nu: 0,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::OverlappingSets(u));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `ν` for vector-labelled graphs, 0 otherwise.
    #[inline]
    pub fn nu(&self) -> usize {
        self.nu
    }

    #[inline]
    pub fn is_labelled(&self) -> bool {
        self.nu != 0
    }

    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        (self.adj[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        popcount(self.row(v)) as usize
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> Bitset {
        Bitset::from_words(self.row(v).to_vec(), self.n)
    }

    pub fn label(&self, v: usize) -> Option<BitVector> {
        if self.nu == 0 || v >= self.n {
            return None;
        }
        BitVector::new(v as u32 + 1, 2 * self.nu).ok()
    }

    /// Vertex index of a nonzero vector.
    pub fn vertex_of(&self, x: BitVector) -> Result<usize> {
        if self.nu == 0 {
            return Err(Error::Unlabelled);
        }
        if x.dim() != 2 * self.nu {
            return Err(Error::DimensionMismatch {
                left: 2 * self.nu,
                right: x.dim(),
            });
        }
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(x.bits() as usize - 1)
    }

    /// Integer id used in reports: the vector bits for labelled graphs, the
    /// index otherwise.
    pub fn vertex_id(&self, v: usize) -> u32 {
        if self.nu == 0 {
            v as u32
        } else {
            v as u32 + 1
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        let (wu, bu) = (u * self.words + v / 64, 1u64 << (v % 64));
        let (wv, bv) = (v * self.words + u / 64, 1u64 << (u % 64));
        if on {
            self.adj[wu] |= bu;
            self.adj[wv] |= bv;
        } else {
            self.adj[wu] &= !bu;
            self.adj[wv] &= !bv;
        }
    }

    /// A copy with the adjacency of every listed pair complemented.
    pub fn with_toggled(&self, pairs: &[(usize, usize)]) -> Result<SympGraph> {
        let mut g = self.clone();
        for &(u, v) in pairs {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::OverlappingSets(u));
            }
            let on = !g.adjacent(u, v);
            g.set_edge(u, v, on);
        }
        Ok(g)
    }

    /// Drops the vector labelling.
    pub fn unlabelled(&self) -> SympGraph {
        SympGraph {
            nu: 0,
            ..self.clone()
        }
    }

    /// Attaches the vector labelling `i -> i + 1` to a graph of the right order.
    pub fn relabelled(&self, nu: usize) -> Result<SympGraph> {
        check_nu(nu)?;
        let want = (1usize << (2 * nu)) - 1;
        if self.n != want {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: want,
            });
        }
        Ok(SympGraph { nu, ..self.clone() })
    }

    /// True when the adjacency is symmetric with an empty diagonal.
    pub fn is_simple(&self) -> bool {
        (0..self.n).all(|u| {
            !self.adjacent(u, u) && (0..self.n).all(|v| self.adjacent(u, v) == self.adjacent(v, u))
        })
    }
}

/// `Sp(2ν, 2)`: nonzero vectors of `F_2^{2ν}`, adjacent when `x^T K y = 1`.
pub fn build_symplectic(nu: usize) -> Result<SympGraph> {
    check_nu(nu)?;
    let n = (1usize << (2 * nu)) - 1;
    let mut g = SympGraph::empty(n);
    g.nu = nu;
    let words = g.words;
    for (u, row) in g.adj.chunks_mut(words).enumerate() {
        let x = u as u32 + 1;
        for v in 0..n {
            if form_bits(x, v as u32 + 1) {
                row[v / 64] |= 1 << (v % 64);
            }
        }
    }
    Ok(g)
}

/// Parameters `(n, k, λ, μ)` of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SrgCertificate {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgCertificate {
    /// Parameters of `Sp(2ν, 2)`.
    pub fn symplectic(nu: usize) -> Self {
        SrgCertificate {
            n: (1 << (2 * nu)) - 1,
            k: 1 << (2 * nu - 1),
            lambda: 1 << (2 * nu - 2),
            mu: 1 << (2 * nu - 2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SrgFailure {
    TooSmall {
        n: usize,
    },
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    Lambda {
        u: usize,
        v: usize,
        common: usize,
        expected: usize,
    },
    Mu {
        u: usize,
        v: usize,
        common: usize,
        expected: usize,
    },
}

impl std::fmt::Display for SrgFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SrgFailure::TooSmall { n } => write!(f, "graph on {n} vertices is too small"),
            SrgFailure::NotRegular {
                vertex,
                degree,
                expected,
            } => write!(
                f,
                "vertex {vertex} has degree {degree}, expected {expected}"
            ),
            SrgFailure::Lambda {
                u,
                v,
                common,
                expected,
            } => write!(
                f,
                "adjacent pair ({u}, {v}) has {common} common neighbours, expected {expected}"
            ),
            SrgFailure::Mu {
                u,
                v,
                common,
                expected,
            } => write!(
                f,
                "non-adjacent pair ({u}, {v}) has {common} common neighbours, expected {expected}"
            ),
        }
    }
}

#[inline]
fn common_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// Exhaustive strong-regularity check. Vertex ids in a failure are the
/// graph's report ids.
pub fn verify_srg(g: &SympGraph) -> std::result::Result<SrgCertificate, SrgFailure> {
    let n = g.n();
    if n < 3 {
        return Err(SrgFailure::TooSmall { n });
    }
    let k = g.degree(0);
    for v in 1..n {
        let d = g.degree(v);
        if d != k {
            return Err(SrgFailure::NotRegular {
                vertex: g.vertex_id(v) as usize,
                degree: d,
                expected: k,
            });
        }
    }
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        let ru = g.row(u);
        for v in u + 1..n {
            let c = common_count(ru, g.row(v));
            let (slot, adjacent) = if g.adjacent(u, v) {
                (&mut lambda, true)
            } else {
                (&mut mu, false)
            };
            match *slot {
                None => *slot = Some(c),
                Some(expected) if expected != c => {
                    let (u, v) = (g.vertex_id(u) as usize, g.vertex_id(v) as usize);
                    return Err(if adjacent {
                        SrgFailure::Lambda {
                            u,
                            v,
                            common: c,
                            expected,
                        }
                    } else {
                        SrgFailure::Mu {
                            u,
                            v,
                            common: c,
                            expected,
                        }
                    });
                }
                _ => {}
            }
        }
    }
    Ok(SrgCertificate {
        n,
        k,
        lambda: lambda.unwrap_or(0),
        mu: mu.unwrap_or(0),
    })
}

/// `N[A|B]`: vertices outside `A ∪ B` adjacent to all of `A` and none of `B`.
pub fn common_neighbors(g: &SympGraph, a: &[usize], b: &[usize]) -> Result<Bitset> {
    for &v in a.iter().chain(b) {
        g.check_vertex(v)?;
    }
    if let Some(&v) = a.iter().find(|v| b.contains(v)) {
        return Err(Error::OverlappingSets(v));
    }
    let mut out = vec![u64::MAX; g.words];
    common_neighbors_into(g, a, b, &mut out);
    Ok(Bitset::from_words(out, g.n))
}

/// Raw kernel behind [`common_neighbors`]; `out` must be `words_per_row` long
/// and all-ones on entry.
#[inline]
pub(crate) fn common_neighbors_into(g: &SympGraph, a: &[usize], b: &[usize], out: &mut [u64]) {
    for &v in a {
        for (o, r) in out.iter_mut().zip(g.row(v)) {
            *o &= r;
        }
    }
    for &v in b {
        for (o, r) in out.iter_mut().zip(g.row(v)) {
            *o &= !r;
        }
    }
    if let Some(last) = out.last_mut() {
        *last &= tail_mask(g.n);
    }
    for &v in a.iter().chain(b) {
        out[v / 64] &= !(1 << (v % 64));
    }
}

/// Symmetric difference of the edge sets, as pairs `(u, v)` with `u < v`.
pub fn edge_difference(g: &SympGraph, h: &SympGraph) -> Result<Vec<(usize, usize)>> {
    if g.n != h.n {
        return Err(Error::OrderMismatch {
            left: g.n,
            right: h.n,
        });
    }
    let mut out = Vec::new();
    for u in 0..g.n {
        for (wi, (a, b)) in g.row(u).iter().zip(h.row(u)).enumerate() {
            let mut d = a ^ b;
            while d != 0 {
                let v = wi * 64 + d.trailing_zeros() as usize;
                d &= d - 1;
                if v > u {
                    out.push((u, v));
                }
            }
        }
    }
    Ok(out)
}
