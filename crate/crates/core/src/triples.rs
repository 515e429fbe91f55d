//! Common neighbours of vertex triples: direct counts, the closed-form
//! prediction for switched graphs from base-graph data, and the scan for the
//! smallest nonzero count.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::{common_neighbors_into, SympGraph};
use crate::partition::VertexPartition;
use crate::switching::gm_cell_report;
use crate::variants::Variant;

/// Largest order accepted by the exhaustive scan.
pub const EXHAUSTIVE_LIMIT: usize = 1100;

fn distinct(x: usize, y: usize, z: usize) -> Result<()> {
    if x == y || y == z || x == z {
        return Err(Error::NonDistinctTriple(x, y, z));
    }
    Ok(())
}

#[inline]
fn and3_count(a: &[u64], b: &[u64], c: &[u64]) -> u32 {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| (x & y & z).count_ones())
        .sum()
}

/// `|N(x) ∩ N(y) ∩ N(z)|`; the triple itself never counts since the graph
/// has no loops.
pub fn triple_count(g: &SympGraph, x: usize, y: usize, z: usize) -> Result<u32> {
    for v in [x, y, z] {
        g.check_vertex(v)?;
    }
    distinct(x, y, z)?;
    Ok(and3_count(g.row(x), g.row(y), g.row(z)))
}

/// Where a triple sits relative to the switch: how many of its vertices lie
/// in `D` and how many of the others lie in half cells. Each case has its own
/// closed form for the switched count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TripleCase {
    /// No vertex in `D`, none in a half cell.
    NoneInD0,
    NoneInD1,
    NoneInD2,
    NoneInD3,
    /// One vertex in `D`; the suffix counts the others in half cells.
    OneInD0,
    OneInD1,
    OneInD2,
    TwoInD0,
    TwoInD1,
    AllInD,
}

impl TripleCase {
    pub const ALL: [TripleCase; 10] = [
        TripleCase::NoneInD0,
        TripleCase::NoneInD1,
        TripleCase::NoneInD2,
        TripleCase::NoneInD3,
        TripleCase::OneInD0,
        TripleCase::OneInD1,
        TripleCase::OneInD2,
        TripleCase::TwoInD0,
        TripleCase::TwoInD1,
        TripleCase::AllInD,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            TripleCase::NoneInD0 => "D0H0",
            TripleCase::NoneInD1 => "D0H1",
            TripleCase::NoneInD2 => "D0H2",
            TripleCase::NoneInD3 => "D0H3",
            TripleCase::OneInD0 => "D1H0",
            TripleCase::OneInD1 => "D1H1",
            TripleCase::OneInD2 => "D1H2",
            TripleCase::TwoInD0 => "D2H0",
            TripleCase::TwoInD1 => "D2H1",
            TripleCase::AllInD => "D3",
        }
    }
}

impl fmt::Display for TripleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for TripleCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

/// A classified triple. `roles` reorders the input so that the case formula
/// applies with `roles = (x, y, z)`: vertices in `D` first, then those in
/// half cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CellTriple {
    pub case: TripleCase,
    pub roles: [usize; 3],
}

/// Cell masks of a Godsil-McKay partition with designated cell `D`.
///
/// `half` is the union of cells with `|N(x) ∩ C| = |C|/2` for `x ∈ D`,
/// `rest` the union of the other cells outside `D`.
#[derive(Clone, Debug)]
pub struct SwitchContext {
    pub d: Bitset,
    pub half: Bitset,
    pub rest: Bitset,
    pub outside_d: Bitset,
    pub rest_and_d: Bitset,
    pub all: Bitset,
}

impl SwitchContext {
    /// Requires `d` to be a Godsil-McKay cell acting uniformly on every other
    /// cell, which holds for orbit partitions.
    pub fn new(base: &SympGraph, p: &VertexPartition, d: usize) -> Result<Self> {
        let report = gm_cell_report(base, p, d)?;
        if !report.qualifies || !report.is_uniform() {
            return Err(Error::NonUniformSwitch(d));
        }
        let n = p.n();
        let mut half = Bitset::new(n);
        for c in report.half_cells() {
            half.union_with(p.mask(c).words());
        }
        let dmask = p.mask(d);
        let mut outside_d = Bitset::full(n);
        outside_d.difference_with(dmask.words());
        let mut rest = outside_d.clone();
        rest.difference_with(half.words());
        let mut rest_and_d = rest.clone();
        rest_and_d.union_with(dmask.words());
        Ok(SwitchContext {
            d: dmask,
            half,
            rest,
            outside_d,
            rest_and_d,
            all: Bitset::full(n),
        })
    }
}

pub fn classify_triple_case(
    ctx: &SwitchContext,
    x: usize,
    y: usize,
    z: usize,
) -> Result<CellTriple> {
    distinct(x, y, z)?;
    let t = [x, y, z];
    let in_d = |v: usize| ctx.d.contains(v);
    let in_half = |v: usize| ctx.half.contains(v);
    let (inside, outside): (Vec<usize>, Vec<usize>) = t.iter().partition(|&&v| in_d(v));
    let (mut out_half, out_rest): (Vec<usize>, Vec<usize>) =
        outside.iter().partition(|&&v| in_half(v));
    let halves = out_half.len();
    let mut order = inside.clone();
    order.append(&mut out_half);
    order.extend(out_rest);
    let case = match (inside.len(), halves) {
        (0, 0) => TripleCase::NoneInD0,
        (0, 1) => TripleCase::NoneInD1,
        (0, 2) => TripleCase::NoneInD2,
        (0, _) => TripleCase::NoneInD3,
        (1, 0) => TripleCase::OneInD0,
        (1, 1) => TripleCase::OneInD1,
        (1, _) => TripleCase::OneInD2,
        (2, 0) => TripleCase::TwoInD0,
        (2, _) => TripleCase::TwoInD1,
        _ => TripleCase::AllInD,
    };
    Ok(CellTriple {
        case,
        roles: [order[0], order[1], order[2]],
    })
}

/// `|mask ∩ N[A|B]|` on the base graph.
fn term(g: &SympGraph, mask: &Bitset, a: &[usize], b: &[usize], buf: &mut [u64]) -> u32 {
    buf.fill(u64::MAX);
    common_neighbors_into(g, a, b, buf);
    buf.iter()
        .zip(mask.words())
        .map(|(x, m)| (x & m).count_ones())
        .sum()
}

/// Common neighbours of `x, y, z` after switching, computed from the base
/// graph alone via the closed form for the triple's case.
pub fn predict_switched_count(
    base: &SympGraph,
    ctx: &SwitchContext,
    x: usize,
    y: usize,
    z: usize,
) -> Result<u32> {
    for v in [x, y, z] {
        base.check_vertex(v)?;
    }
    let ct = classify_triple_case(ctx, x, y, z)?;
    let [x, y, z] = ct.roles;
    let mut buf = vec![0u64; base.words_per_row()];
    let mut t = |mask: &Bitset, a: &[usize], b: &[usize]| term(base, mask, a, b, &mut buf);
    let xyz = [x, y, z];
    Ok(match ct.case {
        TripleCase::NoneInD0 => t(&ctx.all, &xyz, &[]),
        TripleCase::NoneInD1 => t(&ctx.outside_d, &xyz, &[]) + t(&ctx.d, &[y, z], &[x]),
        TripleCase::NoneInD2 => t(&ctx.outside_d, &xyz, &[]) + t(&ctx.d, &[z], &[x, y]),
        TripleCase::NoneInD3 => t(&ctx.outside_d, &xyz, &[]) + t(&ctx.d, &[], &xyz),
        TripleCase::OneInD0 => t(&ctx.rest_and_d, &xyz, &[]) + t(&ctx.half, &[y, z], &[x]),
        TripleCase::OneInD1 => {
            t(&ctx.rest, &xyz, &[]) + t(&ctx.half, &[y, z], &[x]) + t(&ctx.d, &[x, z], &[y])
        }
        TripleCase::OneInD2 => {
            t(&ctx.rest, &xyz, &[]) + t(&ctx.half, &[y, z], &[x]) + t(&ctx.d, &[x], &[y, z])
        }
        TripleCase::TwoInD0 => t(&ctx.rest_and_d, &xyz, &[]) + t(&ctx.half, &[z], &[x, y]),
        TripleCase::TwoInD1 => {
            t(&ctx.rest, &xyz, &[]) + t(&ctx.half, &[z], &[x, y]) + t(&ctx.d, &[x, y], &[z])
        }
        TripleCase::AllInD => t(&ctx.rest_and_d, &xyz, &[]) + t(&ctx.half, &[], &xyz),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleScanReport {
    pub graph: String,
    pub mode: ScanMode,
    pub triples_examined: u64,
    /// Smallest nonzero count seen; in sampled mode an upper bound on the
    /// true minimum.
    pub min_nonzero: Option<u32>,
    pub witness: Option<[u32; 3]>,
    pub zero_triples_seen: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<BTreeMap<u32, u64>>,
}

#[derive(Clone, Debug)]
struct Acc {
    min: u32,
    witness: [usize; 3],
    zero: bool,
    examined: u64,
    hist: Vec<u64>,
}

impl Acc {
    fn new(n: usize) -> Self {
        Acc {
            min: u32::MAX,
            witness: [usize::MAX; 3],
            zero: false,
            examined: 0,
            hist: vec![0; n + 1],
        }
    }

    #[inline]
    fn record(&mut self, c: u32, t: [usize; 3]) {
        self.examined += 1;
        self.hist[c as usize] += 1;
        if c == 0 {
            self.zero = true;
        } else if c < self.min || (c == self.min && t < self.witness) {
            self.min = c;
            self.witness = t;
        }
    }

    fn merge(mut self, o: Acc) -> Acc {
        if o.min < self.min || (o.min == self.min && o.witness < self.witness) {
            self.min = o.min;
            self.witness = o.witness;
        }
        self.zero |= o.zero;
        self.examined += o.examined;
        for (a, b) in self.hist.iter_mut().zip(&o.hist) {
            *a += b;
        }
        self
    }
}

fn scan_outer(g: &SympGraph, x: usize) -> Acc {
    let n = g.n();
    let mut acc = Acc::new(n);
    let rx = g.row(x);
    let mut xy = vec![0u64; g.words_per_row()];
    for y in x + 1..n {
        for ((o, a), b) in xy.iter_mut().zip(rx).zip(g.row(y)) {
            *o = a & b;
        }
        if xy.iter().all(|&w| w == 0) {
            let skipped = (n - y - 1) as u64;
            if skipped > 0 {
                acc.zero = true;
                acc.examined += skipped;
                acc.hist[0] += skipped;
            }
            continue;
        }
        for z in y + 1..n {
            let c: u32 = xy
                .iter()
                .zip(g.row(z))
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            acc.record(c, [x, y, z]);
        }
    }
    acc
}

const SAMPLE_CHUNK: u64 = 4096;

fn scan_chunk(g: &SympGraph, seed: u64, chunk: u64, len: u64) -> Acc {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut acc = Acc::new(n);
    for _ in 0..len {
        let mut t = [0usize; 3];
        for (slot, v) in t.iter_mut().zip(sample(&mut rng, n, 3).iter()) {
            *slot = v;
        }
        t.sort_unstable();
        let c = and3_count(g.row(t[0]), g.row(t[1]), g.row(t[2]));
        acc.record(c, t);
    }
    acc
}

#[cfg(feature = "parallel")]
fn reduce_range<F>(range: std::ops::Range<u64>, n: usize, f: F) -> Acc
where
    F: Fn(u64) -> Acc + Sync + Send,
{
    use rayon::prelude::*;
    range
        .into_par_iter()
        .map(f)
        .reduce(|| Acc::new(n), Acc::merge)
}

#[cfg(not(feature = "parallel"))]
fn reduce_range<F>(range: std::ops::Range<u64>, n: usize, f: F) -> Acc
where
    F: Fn(u64) -> Acc,
{
    range.map(f).fold(Acc::new(n), Acc::merge)
}

/// Scans triples for the smallest nonzero common-neighbour count. The
/// result does not depend on the number of worker threads.
pub fn scan_min_nonzero(
    g: &SympGraph,
    mode: ScanMode,
    histogram: bool,
) -> Result<TripleScanReport> {
    let n = g.n();
    if n < 3 {
        return Err(Error::TooSmall);
    }
    let acc = match mode {
        ScanMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::ExhaustiveTooLarge {
                    n,
                    limit: EXHAUSTIVE_LIMIT,
                });
            }
            reduce_range(0..n as u64, n, |x| scan_outer(g, x as usize))
        }
        ScanMode::Sampled { count, seed } => {
            let chunks = count.div_ceil(SAMPLE_CHUNK);
            reduce_range(0..chunks, n, |c| {
                let len = SAMPLE_CHUNK.min(count - c * SAMPLE_CHUNK);
                scan_chunk(g, seed, c, len)
            })
        }
    };
    let found = acc.min != u32::MAX;
    Ok(TripleScanReport {
        graph: String::new(),
        mode,
        triples_examined: acc.examined,
        min_nonzero: found.then_some(acc.min),
        witness: found.then(|| acc.witness.map(|v| g.vertex_id(v))),
        zero_triples_seen: acc.zero,
        histogram: histogram.then(|| {
            acc.hist
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(c, &m)| (c as u32, m))
                .collect()
        }),
    })
}

/// `count` uniformly random distinct triples, each sorted ascending.
pub fn sample_triples(n: usize, count: usize, seed: u64) -> Result<Vec<[usize; 3]>> {
    if n < 3 {
        return Err(Error::TooSmall);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let v = sample(&mut rng, n, 3);
            let mut t = [v.index(0), v.index(1), v.index(2)];
            t.sort_unstable();
            t
        })
        .collect())
}

/// Closed-form smallest nonzero triple count for each family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedMinimum {
    pub value: i64,
    /// The formula does not describe a nonzero minimum for this `ν`.
    pub degenerate: bool,
}

pub fn expected_min_nonzero(variant: Variant, nu: usize) -> ExpectedMinimum {
    let p = |e: i64| if e >= 0 { 1i64 << e } else { 0 };
    let nu = nu as i64;
    let value = match variant {
        Variant::Base => p(2 * nu - 3),
        Variant::S | Variant::AH2cell => 1,
        Variant::O => p(nu - 2),
        Variant::S4 => p(2 * nu - 5),
        Variant::S0MinusST => p(2 * nu - 5) - 2,
    };
    ExpectedMinimum {
        value,
        degenerate: value <= 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitVector;
    use crate::graph::build_symplectic;
    use crate::orbits::SpecialQuadruple;
    use crate::variants::{build_variant, variant_partition};

    #[test]
    fn base_counts() {
        let g = build_symplectic(4).unwrap();
        let v = |s: &str| g.vertex_of(BitVector::from_coords(s).unwrap()).unwrap();
        let (x, y) = (v("10000000"), v("00100000"));
        let xy = v("10100000");
        assert_eq!(triple_count(&g, x, y, xy).unwrap(), 0);
        assert_eq!(triple_count(&g, x, y, v("00001000")).unwrap(), 32);
        assert!(matches!(
            triple_count(&g, x, x, y),
            Err(Error::NonDistinctTriple(..))
        ));
    }

    #[test]
    fn expected_minimum_values() {
        assert_eq!(expected_min_nonzero(Variant::O, 4).value, 4);
        assert_eq!(expected_min_nonzero(Variant::S, 7).value, 1);
        assert_eq!(expected_min_nonzero(Variant::Base, 4).value, 32);
        assert_eq!(expected_min_nonzero(Variant::S4, 4).value, 8);
        let d = expected_min_nonzero(Variant::S0MinusST, 3);
        assert_eq!((d.value, d.degenerate), (0, true));
        assert!(!expected_min_nonzero(Variant::S0MinusST, 4).degenerate);
    }

    #[test]
    fn case_classification() {
        let q = SpecialQuadruple::canonical(4).unwrap();
        let base = build_symplectic(4).unwrap();
        let p = variant_partition(&base, Variant::S4, &q).unwrap().unwrap();
        let ctx = SwitchContext::new(&base, &p, p.designated().unwrap()).unwrap();
        let cell = |l: &str| p.cell(p.find(l).unwrap()).unwrap().members.clone();
        let (s, t, s2, s4) = (cell("S"), cell("T"), cell("S2"), cell("S4"));
        let c = classify_triple_case(&ctx, s[0], s4[0], t[0]).unwrap();
        assert_eq!((c.case, c.roles[0]), (TripleCase::OneInD0, s4[0]));
        let c = classify_triple_case(&ctx, s4[0], s4[1], s4[2]).unwrap();
        assert_eq!(c.case, TripleCase::AllInD);
        let c = classify_triple_case(&ctx, s2[0], s2[1], s2[2]).unwrap();
        assert_eq!(c.case, TripleCase::NoneInD3);
        let c = classify_triple_case(&ctx, s[0], s2[5], s[1]).unwrap();
        assert_eq!((c.case, c.roles[0]), (TripleCase::NoneInD1, s2[5]));
    }

    #[test]
    fn prediction_matches_switched_graph_sample() {
        let q = SpecialQuadruple::canonical(3).unwrap();
        let base = build_symplectic(3).unwrap();
        for variant in [Variant::S, Variant::O, Variant::S4] {
            let v = build_variant(3, variant, &q).unwrap();
            let p = v.partition.as_ref().unwrap();
            let ctx = SwitchContext::new(&base, p, p.designated().unwrap()).unwrap();
            for (x, y, z) in [(0, 1, 2), (5, 17, 40), (7, 8, 62), (10, 20, 30)] {
                assert_eq!(
                    predict_switched_count(&base, &ctx, x, y, z).unwrap(),
                    triple_count(&v.graph, x, y, z).unwrap()
                );
            }
        }
    }

    #[test]
    fn two_cell_switch_is_not_uniform() {
        let q = SpecialQuadruple::canonical(3).unwrap();
        let base = build_symplectic(3).unwrap();
        let p = variant_partition(&base, Variant::AH2cell, &q)
            .unwrap()
            .unwrap();
        assert!(matches!(
            SwitchContext::new(&base, &p, 1),
            Err(Error::NonUniformSwitch(1))
        ));
    }

    #[test]
    fn scan_base_nu3() {
        let g = build_symplectic(3).unwrap();
        let r = scan_min_nonzero(&g, ScanMode::Exhaustive, true).unwrap();
        assert_eq!(r.min_nonzero, Some(8));
        assert!(r.zero_triples_seen);
        assert_eq!(r.triples_examined, 63 * 62 * 61 / 6);
        let h = r.histogram.unwrap();
        assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![0, 8]);
        let [a, b, c] = r.witness.unwrap().map(|id| id as usize - 1);
        assert_eq!(triple_count(&g, a, b, c).unwrap(), 8);
    }

    #[test]
    fn sampled_scan_is_deterministic() {
        let g = build_symplectic(3).unwrap();
        let mode = ScanMode::Sampled {
            count: 10_000,
            seed: 7,
        };
        let a = scan_min_nonzero(&g, mode, true).unwrap();
        let b = scan_min_nonzero(&g, mode, true).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.triples_examined, 10_000);
        assert_eq!(a.min_nonzero, Some(8));
    }

    #[test]
    fn exhaustive_limit() {
        let g = SympGraph::empty(EXHAUSTIVE_LIMIT + 1);
        assert!(matches!(
            scan_min_nonzero(&g, ScanMode::Exhaustive, false),
            Err(Error::ExhaustiveTooLarge { .. })
        ));
        let r = scan_min_nonzero(&SympGraph::empty(5), ScanMode::Exhaustive, false).unwrap();
        assert_eq!(
            (r.min_nonzero, r.witness, r.zero_triples_seen),
            (None, None, true)
        );
    }
}
