//! Bit-packed vectors over GF(2), the standard symplectic form and an exact
//! affine solver.
//!
//! Coordinate `i` of a column vector (1-based) lives in bit `i - 1`. Block `l`
//! of the `ν` two-dimensional blocks occupies bits `2l - 2` and `2l - 1`, so the
//! form matrix `K = I_ν ⊗ R` is a fixed-stride swap of neighbouring bits.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Smallest supported dimension (`ν = 3`).
pub const MIN_DIM: usize = 6;
/// Largest supported dimension (`ν = 8`).
pub const MAX_DIM: usize = 16;

const EVEN_BITS: u32 = 0x5555_5555;

/// A vector in `F_2^{dim}`, `dim` even, `6 <= dim <= 16`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    bits: u32,
    dim: u8,
}

impl BitVector {
    pub fn new(bits: u32, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if bits >> dim != 0 {
            return Err(Error::BitsOutOfRange { bits, dim });
        }
        Ok(BitVector {
            bits,
            dim: dim as u8,
        })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(0, dim)
    }

    /// The standard basis vector `e_i` (1-based, as in column-vector notation).
    pub fn unit(dim: usize, i: usize) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::BitsOutOfRange { bits: 0, dim });
        }
        Self::new(1 << (i - 1), dim)
    }

    /// Parses a string of `0`/`1` characters, first character = coordinate 1.
    /// Whitespace and underscores are ignored.
    pub fn from_coords(s: &str) -> Result<Self> {
        let mut bits = 0u32;
        let mut dim = 0usize;
        for c in s.chars().filter(|c| !c.is_whitespace() && *c != '_') {
            match c {
                '0' => {}
                '1' => {
                    if dim < 32 {
                        bits |= 1 << dim;
                    }
                }
                _ => return Err(Error::Parse(s.to_string())),
            }
            dim += 1;
        }
        Self::new(bits, dim)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn dim(self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn nu(self) -> usize {
        self.dim as usize / 2
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Coordinate `i` (1-based).
    pub fn coord(self, i: usize) -> bool {
        (self.bits >> (i - 1)) & 1 == 1
    }

    /// Block `l` (1-based) as a two-bit value `x_{2l-1} + 2 x_{2l}`.
    #[inline]
    pub fn block(self, l: usize) -> u32 {
        (self.bits >> (2 * (l - 1))) & 0b11
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn checked_add(self, other: BitVector) -> Result<BitVector> {
        same_dim(self, other)?;
        Ok(BitVector {
            bits: self.bits ^ other.bits,
            dim: self.dim,
        })
    }

    /// Coordinates as a `0`/`1` string, coordinate 1 first.
    pub fn to_coords(self) -> String {
        (0..self.dim())
            .map(|i| if (self.bits >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl std::ops::Add for BitVector {
    type Output = BitVector;

    /// Panics on dimension mismatch; use [`BitVector::checked_add`] otherwise.
    fn add(self, rhs: BitVector) -> BitVector {
        self.checked_add(rhs)
            .expect("dimension mismatch in BitVector addition")
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_coords())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_coords())
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.bits)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim % 2 != 0 || !(MIN_DIM..=MAX_DIM).contains(&dim) {
        return Err(Error::BadDimension(dim));
    }
    Ok(())
}

fn same_dim(x: BitVector, y: BitVector) -> Result<()> {
    if x.dim != y.dim {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(())
}

/// Swaps the two bits of every block; this is multiplication by `K`.
#[inline]
pub fn pair_swap_bits(y: u32) -> u32 {
    ((y & EVEN_BITS) << 1) | ((y >> 1) & EVEN_BITS)
}

/// Raw form on packed bits: parity of `x & Ky`.
#[inline]
pub fn form_bits(x: u32, y: u32) -> bool {
    (x & pair_swap_bits(y)).count_ones() & 1 == 1
}

pub fn pair_swap(y: BitVector) -> BitVector {
    BitVector {
        bits: pair_swap_bits(y.bits),
        dim: y.dim,
    }
}

/// `x^T K y` over GF(2).
pub fn symp_form(x: BitVector, y: BitVector) -> Result<bool> {
    same_dim(x, y)?;
    Ok(form_bits(x.bits, y.bits))
}

/// A matrix over GF(2) stored as packed rows of a common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<BitVector>,
    dim: usize,
}

impl Gf2Matrix {
    pub fn new(dim: usize, rows: Vec<BitVector>) -> Result<Self> {
        check_dim(dim)?;
        for r in &rows {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: r.dim(),
                });
            }
        }
        Ok(Gf2Matrix { rows, dim })
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    /// The matrix whose rows are `v^T K` for each `v`.
    pub fn form_rows(dim: usize, vs: &[BitVector]) -> Result<Self> {
        Self::new(dim, vs.iter().map(|&v| pair_swap(v)).collect())
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let rows = (1..=dim)
            .map(|i| BitVector::unit(dim, i))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, rows)
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        same_dim(row, BitVector::zero(self.dim)?)?;
        self.rows.push(row);
        Ok(())
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// `Mx`, returned as packed bits (row `r` in bit `r`).
    pub fn mul_vec_bits(&self, x: BitVector) -> Result<u64> {
        same_dim(x, BitVector::zero(self.dim)?)?;
        Ok(self.rows.iter().enumerate().fold(0u64, |acc, (r, row)| {
            acc | (((row.bits & x.bits).count_ones() as u64 & 1) << r)
        }))
    }

    /// `Ax` for a square matrix.
    pub fn apply(&self, x: BitVector) -> Result<BitVector> {
        if self.rows.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.rows.len(),
                right: self.dim,
            });
        }
        let bits = self.mul_vec_bits(x)? as u32;
        BitVector::new(bits, self.dim)
    }

    /// Column `j` (1-based) of a square matrix.
    pub fn column(&self, j: usize) -> Result<BitVector> {
        let bits = self.rows.iter().enumerate().fold(0u32, |acc, (r, row)| {
            acc | (((row.bits >> (j - 1)) & 1) << r)
        });
        BitVector::new(bits, self.dim)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Row rank over GF(2).
pub fn rank(m: &Gf2Matrix) -> usize {
    let mut rows: Vec<u32> = m.rows.iter().map(|r| r.bits).collect();
    let mut rank = 0;
    for col in 0..m.dim {
        let bit = 1u32 << col;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Solution set of `Mx = b`, described by a particular solution and a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineSolutionSet {
    pub rank: usize,
    pub consistent: bool,
    pub count: u64,
    #[serde(skip)]
    particular: Option<BitVector>,
    #[serde(skip)]
    kernel: Vec<BitVector>,
}

/// Default cap on enumerated solutions.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

impl AffineSolutionSet {
    /// Lists every solution when there are at most `cap` of them.
    pub fn enumerate(&self, cap: u64) -> Option<Vec<BitVector>> {
        if self.count > cap {
            return None;
        }
        let Some(p) = self.particular else {
            return Some(Vec::new());
        };
        let mut out = Vec::with_capacity(self.count as usize);
        let mut cur = p;
        out.push(cur);
        // Gray-code walk over the kernel.
        for i in 1..self.count {
            let flip = i.trailing_zeros() as usize;
            cur = cur + self.kernel[flip];
            out.push(cur);
        }
        Some(out)
    }

    pub fn contains(&self, x: BitVector) -> bool {
        match self.particular {
            None => false,
            Some(p) => {
                let diff = x.bits ^ p.bits;
                let k = Gf2Matrix {
                    rows: self.kernel.clone(),
                    dim: p.dim(),
                };
                let mut with = k.clone();
                with.rows.push(BitVector {
                    bits: diff,
                    dim: p.dim,
                });
                rank(&with) == rank(&k)
            }
        }
    }
}

/// Gaussian elimination on `Mx = b`. The count is exact even when it is
/// too large to enumerate.
pub fn solve_affine(m: &Gf2Matrix, b: &[bool]) -> Result<AffineSolutionSet> {
    if b.len() != m.rows.len() {
        return Err(Error::RhsLength {
            rows: m.rows.len(),
            got: b.len(),
        });
    }
    let mut rows: Vec<(u32, bool)> = m
        .rows
        .iter()
        .map(|r| r.bits)
        .zip(b.iter().copied())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..m.dim {
        let bit = 1u32 << col;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].0 & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0 & bit != 0 {
                row.0 ^= pivot.0;
                row.1 ^= pivot.1;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let consistent = rows[rank..].iter().all(|&(_, rhs)| !rhs);
    if !consistent {
        return Ok(AffineSolutionSet {
            rank,
            consistent,
            count: 0,
            particular: None,
            kernel: Vec::new(),
        });
    }
    let dim8 = m.dim as u8;
    let mut particular = 0u32;
    for (r, &col) in pivots.iter().enumerate() {
        if rows[r].1 {
            particular |= 1 << col;
        }
    }
    let kernel = (0..m.dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = 1u32 << free;
            for (r, &col) in pivots.iter().enumerate() {
                if rows[r].0 & (1 << free) != 0 {
                    v |= 1 << col;
                }
            }
            BitVector { bits: v, dim: dim8 }
        })
        .collect::<Vec<_>>();
    Ok(AffineSolutionSet {
        rank,
        consistent,
        count: 1u64 << (m.dim - rank),
        particular: Some(BitVector {
            bits: particular,
            dim: dim8,
        }),
        kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize) -> BitVector {
        BitVector::unit(6, i).unwrap()
    }

    /// Counts solutions of `Mx = b` by trying every vector.
    fn brute_force_count(m: &Gf2Matrix, b: &[bool]) -> u64 {
        (0u32..1 << m.dim())
            .filter(|&x| {
                m.rows()
                    .iter()
                    .zip(b)
                    .all(|(r, &rhs)| ((r.bits() & x).count_ones() & 1 == 1) == rhs)
            })
            .count() as u64
    }

    #[test]
    fn form_on_basis_vectors() {
        assert!(symp_form(e(1), e(2)).unwrap());
        assert!(!symp_form(e(1), e(3)).unwrap());
        assert!(!symp_form(e(4), e(4)).unwrap());
    }

    #[test]
    fn form_rejects_mixed_dims() {
        let x = BitVector::unit(8, 1).unwrap();
        assert!(matches!(
            symp_form(x, e(1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pair_swap_examples() {
        assert_eq!(
            pair_swap(BitVector::from_coords("100000").unwrap()).to_coords(),
            "010000"
        );
        assert_eq!(
            pair_swap(BitVector::from_coords("111000").unwrap()).to_coords(),
            "110100"
        );
        let y = BitVector::from_coords("101101").unwrap();
        assert_eq!(pair_swap(pair_swap(y)), y);
    }

    #[test]
    fn bad_dimensions_rejected() {
        assert!(BitVector::new(0, 4).is_err());
        assert!(BitVector::new(0, 7).is_err());
        assert!(BitVector::new(0, 18).is_err());
        assert!(BitVector::new(1 << 6, 6).is_err());
    }

    #[test]
    fn rank_examples() {
        let m = Gf2Matrix::new(6, vec![e(1), e(2), e(3)]).unwrap();
        assert_eq!(m.rank(), 3);
        let m = Gf2Matrix::new(6, vec![e(1), e(1)]).unwrap();
        assert_eq!(m.rank(), 1);
        let x = BitVector::from_coords("110100").unwrap();
        let y = BitVector::from_coords("011011").unwrap();
        let m = Gf2Matrix::new(6, vec![x, y, x + y]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn empty_system_is_whole_space() {
        let s = solve_affine(&Gf2Matrix::empty(6).unwrap(), &[]).unwrap();
        assert_eq!((s.rank, s.consistent, s.count), (0, true, 64));
        assert_eq!(s.enumerate(64).unwrap().len(), 64);
    }

    #[test]
    fn quadruple_system_has_2_pow_2nu_minus_3_solutions() {
        for nu in 3..=5 {
            let dim = 2 * nu;
            let v = [1, 3, 5].map(|i| BitVector::unit(dim, i).unwrap());
            let m = Gf2Matrix::form_rows(dim, &v).unwrap();
            let s = solve_affine(&m, &[true; 3]).unwrap();
            assert_eq!(s.count, 1 << (2 * nu - 3));
        }
    }

    #[test]
    fn dependent_triple_is_inconsistent() {
        let x = BitVector::from_coords("110100").unwrap();
        let y = BitVector::from_coords("001011").unwrap();
        let m = Gf2Matrix::form_rows(6, &[x, y, x + y]).unwrap();
        let s = solve_affine(&m, &[true; 3]).unwrap();
        assert!(!s.consistent);
        assert_eq!(s.count, 0);
        assert_eq!(s.enumerate(10), Some(vec![]));
    }

    #[test]
    fn rhs_length_checked() {
        let m = Gf2Matrix::new(6, vec![e(1)]).unwrap();
        assert!(solve_affine(&m, &[]).is_err());
    }

    #[test]
    fn enumeration_respects_cap() {
        let m = Gf2Matrix::new(6, vec![e(1)]).unwrap();
        let s = solve_affine(&m, &[true]).unwrap();
        assert_eq!(s.count, 32);
        assert!(s.enumerate(31).is_none());
        let sols = s.enumerate(32).unwrap();
        assert!(sols.iter().all(|v| v.coord(1)));
        let mut uniq = sols.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 32);
    }

    #[test]
    fn non_degenerate_exhaustive() {
        for nu in 3..=4 {
            let dim = 2 * nu;
            for bits in 1u32..1 << dim {
                let x = BitVector::new(bits, dim).unwrap();
                assert!((1..=dim).any(|i| symp_form(x, BitVector::unit(dim, i).unwrap()).unwrap()));
            }
        }
    }

    #[test]
    fn square_matrix_apply_and_columns() {
        let id = Gf2Matrix::identity(6).unwrap();
        let x = BitVector::from_coords("101100").unwrap();
        assert_eq!(id.apply(x).unwrap(), x);
        assert_eq!(id.column(4).unwrap(), e(4));
    }

    fn vec6() -> impl Strategy<Value = BitVector> {
        (0u32..64).prop_map(|b| BitVector::new(b, 6).unwrap())
    }

    fn system6() -> impl Strategy<Value = (Gf2Matrix, Vec<bool>)> {
        prop::collection::vec((vec6(), any::<bool>()), 0..8).prop_map(|rows| {
            let (r, b): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
            (Gf2Matrix::new(6, r).unwrap(), b)
        })
    }

    proptest! {
        #[test]
        fn form_is_bilinear(x in vec6(), y in vec6(), z in vec6()) {
            let lhs = symp_form(x + y, z).unwrap();
            prop_assert_eq!(lhs, symp_form(x, z).unwrap() ^ symp_form(y, z).unwrap());
        }

        #[test]
        fn form_is_alternating_and_symmetric(x in vec6(), y in vec6()) {
            prop_assert!(!symp_form(x, x).unwrap());
            prop_assert_eq!(symp_form(x, y).unwrap(), symp_form(y, x).unwrap());
            prop_assert_eq!(
                symp_form(x, y).unwrap(),
                (x.bits() & pair_swap(y).bits()).count_ones() % 2 == 1
            );
        }

        #[test]
        fn solver_matches_brute_force((m, b) in system6()) {
            let s = solve_affine(&m, &b).unwrap();
            prop_assert_eq!(s.count, brute_force_count(&m, &b));
            prop_assert_eq!(s.rank, m.rank());
            prop_assert_eq!(s.consistent, s.count > 0);
            let sols = s.enumerate(DEFAULT_ENUM_CAP).unwrap();
            prop_assert_eq!(sols.len() as u64, s.count);
            for v in sols {
                prop_assert!(s.contains(v));
                let image = m.mul_vec_bits(v).unwrap();
                let want = b.iter().enumerate().fold(0u64, |acc, (i, &t)| acc | ((t as u64) << i));
                prop_assert_eq!(image, want);
            }
        }
    }
}
