//! Orbit partitions of `Sp(2ν, 2)` under two automorphism subgroups:
//! the stabiliser of the standard basis and the stabiliser of a special
//! 4-subset `S = {v1, v2, v3, v1 + v2 + v3}`.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{rank, symp_form, BitVector, Gf2Matrix};
use crate::graph::{check_nu, SympGraph};
use crate::partition::VertexPartition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Orbit of a vector under the basis stabiliser: `i` blocks of weight 2,
/// `j` of weight 1 and `k` of weight 0. `parity` counts `[10]` blocks and is
/// present only when `j >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitLabelE {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub parity: Option<Parity>,
}

impl OrbitLabelE {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.i, self.j, self.k)
    }
}

pub fn cell_label_e(i: usize, j: usize, k: usize) -> String {
    format!("O({i},{j},{k})")
}

pub fn classify_e(x: BitVector) -> Result<OrbitLabelE> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let (mut i, mut j, mut k, mut tens) = (0, 0, 0, 0);
    for l in 1..=x.nu() {
        match x.block(l) {
            0b00 => k += 1,
            0b11 => i += 1,
            b => {
                j += 1;
                // first coordinate set, second clear
                if b == 0b01 {
                    tens += 1;
                }
            }
        }
    }
    let parity = (j >= 1).then_some(if tens % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    });
    Ok(OrbitLabelE { i, j, k, parity })
}

/// Cells `O(i,j,k)` in lexicographic order of `(i, j, k)`; designated cell
/// `O(0,ν,0)`.
pub fn orbit_partition_e(g: &SympGraph) -> Result<VertexPartition> {
    let nu = g.nu();
    if nu == 0 {
        return Err(Error::Unlabelled);
    }
    let mut cells: std::collections::BTreeMap<(usize, usize, usize), Vec<usize>> =
        Default::default();
    for v in 0..g.n() {
        let lab = classify_e(g.label(v).expect("labelled"))?;
        cells.entry(lab.triple()).or_default().push(v);
    }
    let cells = cells
        .into_iter()
        .map(|((i, j, k), m)| (cell_label_e(i, j, k), m))
        .collect();
    let p = VertexPartition::new(g.n(), cells)?;
    let d = p.find(&cell_label_e(0, nu, 0));
    p.with_designated(d)
}

/// `|O(i,j,k)| = ν! / (i! j! k!) · 2^j`.
pub fn orbit_size_e(i: usize, j: usize, k: usize) -> u64 {
    let f = |m: usize| (1..=m as u64).product::<u64>();
    f(i + j + k) / (f(i) * f(j) * f(k)) << j
}

/// The 4-subset `{v1, v2, v3, v1 + v2 + v3}` with `v1, v2, v3` independent and
/// pairwise orthogonal under the form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialQuadruple {
    pub v: [BitVector; 4],
}

impl SpecialQuadruple {
    pub fn new(v1: BitVector, v2: BitVector, v3: BitVector) -> Result<Self> {
        let dim = v1.dim();
        for w in [v2, v3] {
            if w.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: w.dim(),
                });
            }
        }
        if rank(&Gf2Matrix::new(dim, vec![v1, v2, v3])?) != 3 {
            return Err(Error::InvalidQuadruple(
                "v1, v2, v3 are linearly dependent".into(),
            ));
        }
        for (a, b) in [(v1, v2), (v1, v3), (v2, v3)] {
            if symp_form(a, b)? {
                return Err(Error::InvalidQuadruple(format!(
                    "{a} and {b} are not orthogonal"
                )));
            }
        }
        Ok(SpecialQuadruple {
            v: [v1, v2, v3, v1 + v2 + v3],
        })
    }

    /// Validates a user-supplied 4-subset; `v4` must equal `v1 + v2 + v3`.
    pub fn from_four(v: [BitVector; 4]) -> Result<Self> {
        let q = Self::new(v[0], v[1], v[2])?;
        if q.v[3] != v[3] {
            return Err(Error::InvalidQuadruple(format!(
                "v4 = {} is not v1 + v2 + v3 = {}",
                v[3], q.v[3]
            )));
        }
        Ok(q)
    }

    /// `{e1, e3, e5, e1 + e3 + e5}`.
    pub fn canonical(nu: usize) -> Result<Self> {
        check_nu(nu)?;
        let dim = 2 * nu;
        Self::new(
            BitVector::unit(dim, 1)?,
            BitVector::unit(dim, 3)?,
            BitVector::unit(dim, 5)?,
        )
    }

    pub fn dim(&self) -> usize {
        self.v[0].dim()
    }

    /// `T = {v1 + v2, v2 + v3, v3 + v1}`.
    pub fn t(&self) -> [BitVector; 3] {
        let [a, b, c, _] = self.v;
        [a + b, b + c, c + a]
    }

    /// Which of `v1..v4` are adjacent to `x`, as a 4-bit mask (bit `i-1` for `v_i`).
    pub fn form_mask(&self, x: BitVector) -> Result<u8> {
        let mut m = 0u8;
        for (i, &v) in self.v.iter().enumerate() {
            if symp_form(x, v)? {
                m |= 1 << i;
            }
        }
        Ok(m)
    }
}

/// Orbit of a vertex under the stabiliser of `S`; `S2(i, j)` keeps the pair
/// `i < j` of `v`'s with form value 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrbitLabelS {
    S,
    T,
    S0MinusST,
    S2(u8, u8),
    S4,
}

impl OrbitLabelS {
    pub fn cell(&self) -> SCell {
        match self {
            OrbitLabelS::S => SCell::S,
            OrbitLabelS::T => SCell::T,
            OrbitLabelS::S0MinusST => SCell::S0MinusST,
            OrbitLabelS::S2(..) => SCell::S2,
            OrbitLabelS::S4 => SCell::S4,
        }
    }
}

/// The five cells of the `S`-stabiliser orbit partition, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SCell {
    S,
    T,
    S0MinusST,
    S2,
    S4,
}

impl SCell {
    pub const ALL: [SCell; 5] = [SCell::S, SCell::T, SCell::S0MinusST, SCell::S2, SCell::S4];

    pub fn label(&self) -> &'static str {
        match self {
            SCell::S => "S",
            SCell::T => "T",
            SCell::S0MinusST => "S0-minus-ST",
            SCell::S2 => "S2",
            SCell::S4 => "S4",
        }
    }
}

impl fmt::Display for SCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify_s(x: BitVector, q: &SpecialQuadruple) -> Result<OrbitLabelS> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mask = q.form_mask(x)?;
    Ok(match mask.count_ones() {
        4 => OrbitLabelS::S4,
        2 => {
            let i = mask.trailing_zeros() as u8 + 1;
            let j = 8 - (mask.leading_zeros() as u8);
            OrbitLabelS::S2(i, j)
        }
        0 if q.v.contains(&x) => OrbitLabelS::S,
        0 if q.t().contains(&x) => OrbitLabelS::T,
        0 => OrbitLabelS::S0MinusST,
        // the four form values always sum to zero
        _ => unreachable!("odd number of form values against S"),
    })
}

/// `{S, T, S0 ∖ (S ∪ T), S2, S4}` with empty cells dropped. If `designate`
/// names an empty cell the partition has no designated cell.
pub fn orbit_partition_s(
    g: &SympGraph,
    q: &SpecialQuadruple,
    designate: Option<SCell>,
) -> Result<VertexPartition> {
    if g.nu() == 0 {
        return Err(Error::Unlabelled);
    }
    if q.dim() != 2 * g.nu() {
        return Err(Error::DimensionMismatch {
            left: 2 * g.nu(),
            right: q.dim(),
        });
    }
    let mut cells: Vec<(String, Vec<usize>)> = SCell::ALL
        .iter()
        .map(|c| (c.label().to_string(), Vec::new()))
        .collect();
    for v in 0..g.n() {
        let lab = classify_s(g.label(v).expect("labelled"), q)?;
        cells[lab.cell() as usize].1.push(v);
    }
    let p = VertexPartition::new(g.n(), cells)?;
    let d = designate.and_then(|c| p.find(c.label()));
    p.with_designated(d)
}

/// The two-cell partition `{S, V ∖ S}` with designated cell `V ∖ S`.
pub fn two_cell_partition(g: &SympGraph, q: &SpecialQuadruple) -> Result<VertexPartition> {
    let s =
        q.v.iter()
            .map(|&v| g.vertex_of(v))
            .collect::<Result<Vec<_>>>()?;
    let rest = (0..g.n()).filter(|v| !s.contains(v)).collect();
    let p = VertexPartition::new(g.n(), vec![("S".into(), s), ("V-minus-S".into(), rest)])?;
    p.with_designated(Some(1))
}

/// Largest `ν` for which the basis stabiliser is enumerated (`ν! 2^ν` elements).
pub const MAX_GROUP_NU: usize = 5;

/// Every matrix `P(A_1, …, A_ν)`: a block permutation with each block map
/// `A_i ∈ {I_2, R}`.
pub fn aut_e_matrices(nu: usize) -> Result<Vec<Gf2Matrix>> {
    check_nu(nu)?;
    if nu > MAX_GROUP_NU {
        return Err(Error::GroupTooLarge {
            nu,
            max: MAX_GROUP_NU,
        });
    }
    let dim = 2 * nu;
    let mut out = Vec::new();
    for sigma in (0..nu).permutations(nu) {
        for swaps in 0u32..1 << nu {
            let mut rows = Vec::with_capacity(dim);
            for (i, &target) in sigma.iter().enumerate() {
                let (a, b) = (2 * target + 1, 2 * target + 2);
                let (first, second) = if swaps >> i & 1 == 1 { (b, a) } else { (a, b) };
                rows.push(BitVector::unit(dim, first)?);
                rows.push(BitVector::unit(dim, second)?);
            }
            out.push(Gf2Matrix::new(dim, rows)?);
        }
    }
    Ok(out)
}

/// True when `A^T K A = K` and `A` permutes the standard basis.
pub fn is_basis_preserving_isometry(a: &Gf2Matrix) -> Result<bool> {
    let dim = a.dim();
    let cols = (1..=dim).map(|j| a.column(j)).collect::<Result<Vec<_>>>()?;
    let units = (1..=dim)
        .map(|i| BitVector::unit(dim, i))
        .collect::<Result<Vec<_>>>()?;
    let mut seen = cols.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != dim || !cols.iter().all(|c| c.weight() == 1) {
        return Ok(false);
    }
    for p in 0..dim {
        for q in 0..dim {
            if symp_form(cols[p], cols[q])? != symp_form(units[p], units[q])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The basis stabiliser as vertex permutations of `Sp(2ν, 2)`:
/// `perm[v]` is the image of vertex `v`.
pub fn generate_aut_e_group(nu: usize) -> Result<Vec<Vec<usize>>> {
    let mats = aut_e_matrices(nu)?;
    let n = (1usize << (2 * nu)) - 1;
    let dim = 2 * nu;
    mats.iter()
        .map(|a| {
            if !is_basis_preserving_isometry(a)? {
                return Err(Error::InvalidQuadruple(format!(
                    "generated matrix is not an isometry: {a:?}"
                )));
            }
            (0..n)
                .map(|v| {
                    let x = BitVector::new(v as u32 + 1, dim)?;
                    Ok(a.apply(x)?.bits() as usize - 1)
                })
                .collect()
        })
        .collect()
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Orbits of the group generated by `perms` on `0..n`, by union-find.
/// Cells are ordered by smallest member and labelled `orbit-<min>`.
pub fn orbit_closure(perms: &[Vec<usize>], n: usize) -> Result<VertexPartition> {
    if perms.is_empty() {
        return Err(Error::BadPartition("no permutations supplied".into()));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for p in perms {
        if p.len() != n {
            return Err(Error::OrderMismatch {
                left: p.len(),
                right: n,
            });
        }
        for (v, &w) in p.iter().enumerate() {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let cells = groups
        .into_values()
        .map(|m| (format!("orbit-{}", m[0]), m))
        .collect();
    VertexPartition::new(n, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_symplectic;

    fn bv(s: &str) -> BitVector {
        BitVector::from_coords(s).unwrap()
    }

    #[test]
    fn classify_e_examples() {
        let l = classify_e(bv("11101000")).unwrap();
        assert_eq!(l.triple(), (1, 2, 1));
        let l = classify_e(bv("010101")).unwrap();
        assert_eq!((l.triple(), l.parity), ((0, 3, 0), Some(Parity::Even)));
        let l = classify_e(bv("100000")).unwrap();
        assert_eq!((l.triple(), l.parity), ((0, 1, 2), Some(Parity::Odd)));
        assert_eq!(classify_e(bv("110000")).unwrap().parity, None);
        assert_eq!(classify_e(bv("000000")), Err(Error::ZeroVector));
    }

    #[test]
    fn e_partition_sizes_nu3() {
        let g = build_symplectic(3).unwrap();
        let p = orbit_partition_e(&g).unwrap();
        let d = p.designated().unwrap();
        assert_eq!(p.cell(d).unwrap().label, "O(0,3,0)");
        assert_eq!(p.cell(d).unwrap().len(), 8);
        assert_eq!(p.cell(p.find("O(3,0,0)").unwrap()).unwrap().len(), 1);
        assert_eq!(p.sizes().iter().sum::<usize>(), 63);
        for c in p.cells() {
            let (i, j, k) = classify_e(g.label(c.members[0]).unwrap()).unwrap().triple();
            assert_eq!(c.len() as u64, orbit_size_e(i, j, k));
        }
        let labels: Vec<_> = p.cells().iter().map(|c| c.label.clone()).collect();
        assert_eq!(labels[0], "O(0,1,2)");
        assert_eq!(labels.last().unwrap(), "O(3,0,0)");
    }

    #[test]
    fn canonical_quadruple_is_valid() {
        let q = SpecialQuadruple::canonical(3).unwrap();
        assert_eq!(q.v[3], bv("101010"));
        assert!(!symp_form(q.v[3], q.v[0]).unwrap());
        let e = |i| BitVector::unit(6, i).unwrap();
        assert!(matches!(
            SpecialQuadruple::new(e(1), e(2), e(3)),
            Err(Error::InvalidQuadruple(_))
        ));
        assert!(SpecialQuadruple::new(e(1), e(3), e(1) + e(3)).is_err());
        assert!(SpecialQuadruple::from_four([e(1), e(3), e(5), e(1)]).is_err());
    }

    #[test]
    fn classify_s_examples() {
        let q = SpecialQuadruple::canonical(4).unwrap();
        assert_eq!(classify_s(q.v[0], &q).unwrap(), OrbitLabelS::S);
        assert_eq!(classify_s(q.v[0] + q.v[1], &q).unwrap(), OrbitLabelS::T);
        let x = bv("01010000");
        assert_eq!(classify_s(x, &q).unwrap(), OrbitLabelS::S2(1, 2));
        let g = build_symplectic(4).unwrap();
        let s4 = (0..g.n())
            .filter(|&v| classify_s(g.label(v).unwrap(), &q).unwrap() == OrbitLabelS::S4)
            .count();
        assert_eq!(s4, 32);
    }

    #[test]
    fn s_partition_sizes() {
        let g = build_symplectic(4).unwrap();
        let q = SpecialQuadruple::canonical(4).unwrap();
        let p = orbit_partition_s(&g, &q, Some(SCell::S4)).unwrap();
        assert_eq!(p.sizes(), vec![4, 3, 24, 192, 32]);
        assert_eq!(p.designated(), Some(4));

        let g = build_symplectic(3).unwrap();
        let q = SpecialQuadruple::canonical(3).unwrap();
        let p = orbit_partition_s(&g, &q, Some(SCell::S0MinusST)).unwrap();
        assert_eq!(p.sizes(), vec![4, 3, 48, 8]);
        assert_eq!(p.designated(), None);
    }

    #[test]
    fn group_order_and_identity() {
        let perms = generate_aut_e_group(3).unwrap();
        assert_eq!(perms.len(), 48);
        let id: Vec<usize> = (0..63).collect();
        assert!(perms.contains(&id));
        assert!(matches!(
            generate_aut_e_group(6),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn closure_of_identity_is_discrete() {
        let id: Vec<usize> = (0..10).collect();
        let p = orbit_closure(&[id], 10).unwrap();
        assert_eq!(p.len(), 10);
        assert!(orbit_closure(&[], 10).is_err());
    }

    #[test]
    fn orbit_size_formula() {
        assert_eq!(orbit_size_e(0, 3, 0), 8);
        assert_eq!(orbit_size_e(3, 0, 0), 1);
        assert_eq!(orbit_size_e(1, 2, 1), 48);
    }
}
