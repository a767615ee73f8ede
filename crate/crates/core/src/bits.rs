//! Mod-2 reductions of vectors, covectors and symplectic matrices.
//!
//! Everything is packed into a `u64` with bit `2i` holding the `u_i`
//! coordinate and bit `2i + 1` the `v_i` coordinate, so ranks are limited to
//! [`MAX_BIT_RANK`].

use crate::error::{Error, Result};
use crate::symplectic::{check_rank, Rank};

pub const MAX_BIT_RANK: usize = 32;

const U_MASK: u64 = 0x5555_5555_5555_5555;
const V_MASK: u64 = 0xAAAA_AAAA_AAAA_AAAA;

fn full_mask(rank: Rank) -> u64 {
    let n = rank.dim();
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_bit_rank(rank: Rank) -> Result<()> {
    rank.ensure_at_most(MAX_BIT_RANK)
}

fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

/// Exchanges the `u_i` and `v_i` bit of every hyperbolic pair.
pub(crate) fn swap_pairs(x: u64) -> u64 {
    ((x & U_MASK) << 1) | ((x & V_MASK) >> 1)
}

/// `phi-bar(v, w)` on packed words.
pub(crate) fn phi_bar_bits(v: u64, w: u64) -> bool {
    parity(v & swap_pairs(w))
}

/// `sum_i a_i b_i mod 2` where `a`, `b` are the `u`/`v` halves of `x`.
pub(crate) fn pair_products(x: u64) -> bool {
    parity(x & U_MASK & (x >> 1))
}

fn pack<I: IntoIterator<Item = bool>>(rank: Rank, bits: I) -> Result<u64> {
    check_bit_rank(rank)?;
    let mut word = 0u64;
    let mut len = 0;
    for (i, b) in bits.into_iter().enumerate() {
        if i >= rank.dim() {
            return Err(Error::OddLength(i + 1));
        }
        if b {
            word |= 1 << i;
        }
        len = i + 1;
    }
    if len != rank.dim() {
        return Err(Error::RankMismatch { left: rank.get(), right: len / 2 });
    }
    Ok(word)
}

/// An element of `H tensor F_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    rank: Rank,
    bits: u64,
}

impl BitVector {
    pub fn new(rank: Rank, bits: u64) -> Result<Self> {
        check_bit_rank(rank)?;
        Ok(BitVector { rank, bits: bits & full_mask(rank) })
    }

    pub fn from_parities<I: IntoIterator<Item = bool>>(rank: Rank, bits: I) -> Result<Self> {
        Ok(BitVector { rank, bits: pack(rank, bits)? })
    }

    pub fn zero(rank: Rank) -> Result<Self> {
        Self::new(rank, 0)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn add(&self, other: &BitVector) -> Result<BitVector> {
        check_rank(self.rank, other.rank)?;
        Ok(BitVector { rank: self.rank, bits: self.bits ^ other.bits })
    }

    /// Every vector of the given rank, in increasing packed order.
    pub fn all(rank: Rank) -> Result<impl Iterator<Item = BitVector>> {
        rank.ensure_at_most(crate::quadratic::ENUMERATION_LIMIT)?;
        Ok((0..(1u64 << rank.dim())).map(move |bits| BitVector { rank, bits }))
    }
}

/// `phi-bar`, the mod-2 reduction of the intersection form (symmetric).
pub fn phi_bar(v: &BitVector, w: &BitVector) -> Result<bool> {
    check_rank(v.rank, w.rank)?;
    Ok(phi_bar_bits(v.bits, w.bits))
}

/// An element of `H*_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitCovector {
    rank: Rank,
    bits: u64,
}

impl BitCovector {
    pub fn new(rank: Rank, bits: u64) -> Result<Self> {
        check_bit_rank(rank)?;
        Ok(BitCovector { rank, bits: bits & full_mask(rank) })
    }

    pub fn from_parities<I: IntoIterator<Item = bool>>(rank: Rank, bits: I) -> Result<Self> {
        Ok(BitCovector { rank, bits: pack(rank, bits)? })
    }

    pub fn zero(rank: Rank) -> Result<Self> {
        Self::new(rank, 0)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn add(&self, other: &BitCovector) -> Result<BitCovector> {
        check_rank(self.rank, other.rank)?;
        Ok(BitCovector { rank: self.rank, bits: self.bits ^ other.bits })
    }

    pub fn eval(&self, v: &BitVector) -> Result<bool> {
        check_rank(self.rank, v.rank)?;
        Ok(parity(self.bits & v.bits))
    }

    /// `(x . A)(e_j) = x(A e_j)`.
    pub fn act(&self, a: &BitMatrix) -> Result<BitCovector> {
        check_rank(self.rank, a.rank)?;
        let mut out = 0u64;
        for (j, col) in a.cols.iter().enumerate() {
            if parity(self.bits & col) {
                out |= 1 << j;
            }
        }
        Ok(BitCovector { rank: self.rank, bits: out })
    }

    /// `phi-bar(v, .)` as a covector.
    pub fn phi_bar_dual(v: &BitVector) -> BitCovector {
        BitCovector { rank: v.rank, bits: swap_pairs(v.bits) }
    }

    /// `(0,1)` string in basis order `u_1 v_1 ... u_r v_r`.
    pub fn to_bit_string(&self) -> String {
        (0..self.rank.dim()).map(|i| if self.bit(i) { '1' } else { '0' }).collect()
    }
}

/// A `2r x 2r` matrix over `F_2`, stored by columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rank: Rank,
    cols: Vec<u64>,
}

impl BitMatrix {
    pub fn from_columns(rank: Rank, cols: Vec<u64>) -> Result<Self> {
        check_bit_rank(rank)?;
        if cols.len() != rank.dim() {
            return Err(Error::BadShape { rows: rank.dim(), cols: cols.len() });
        }
        let mask = full_mask(rank);
        Ok(BitMatrix { rank, cols: cols.into_iter().map(|c| c & mask).collect() })
    }

    pub fn identity(rank: Rank) -> Result<Self> {
        Self::from_columns(rank, (0..rank.dim()).map(|j| 1u64 << j).collect())
    }

    /// `T_v(w) = w + phi-bar(v, w) v` over `F_2`.
    pub fn transvection(v: &BitVector) -> BitMatrix {
        let cols = (0..v.rank.dim())
            .map(|j| {
                let e = 1u64 << j;
                if phi_bar_bits(v.bits, e) {
                    e ^ v.bits
                } else {
                    e
                }
            })
            .collect();
        BitMatrix { rank: v.rank, cols }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn apply(&self, v: &BitVector) -> Result<BitVector> {
        check_rank(self.rank, v.rank)?;
        let mut out = 0u64;
        for (j, col) in self.cols.iter().enumerate() {
            if (v.bits >> j) & 1 == 1 {
                out ^= col;
            }
        }
        Ok(BitVector { rank: self.rank, bits: out })
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_rank(self.rank, other.rank)?;
        let cols = other.cols.iter().map(|&c| self.apply(&BitVector { rank: self.rank, bits: c }).map(|v| v.bits)).collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix { rank: self.rank, cols })
    }

    /// Mod-2 symplectic condition `phi-bar(A e_i, A e_j) = phi-bar(e_i, e_j)`.
    pub fn is_symplectic(&self) -> bool {
        let n = self.rank.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                if phi_bar_bits(self.cols[i], self.cols[j]) != phi_bar_bits(1 << i, 1 << j) {
                    return false;
                }
            }
        }
        true
    }
}
