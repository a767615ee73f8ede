//! Quadratic refinements of the mod-2 intersection form.
//!
//! A refinement `psi: H tensor F_2 -> F_2` satisfies
//! `psi(v + w) = psi(v) + psi(w) + phi-bar(v, w)` and is therefore fixed by
//! its `2r` basis values. The set of refinements is a torsor over `H*_2`
//! and carries a right action of the symplectic group, `psi . A = psi o A`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::bits::{pair_products, swap_pairs, BitCovector, BitMatrix, BitVector};
use crate::error::{Error, Result};
use crate::symplectic::{check_rank, Rank, SymplecticMatrix};

/// Largest rank for which all `2^{2r}` refinements are enumerated.
pub const ENUMERATION_LIMIT: usize = 12;
/// Largest rank accepted by [`orbit_decomposition`].
pub const ORBIT_REPORT_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticRefinement {
    rank: Rank,
    values: u64,
}

impl QuadraticRefinement {
    /// From packed basis values: bit `2i` is `psi(u_i)`, bit `2i + 1` is `psi(v_i)`.
    pub fn new(rank: Rank, values: u64) -> Result<Self> {
        let bits = BitCovector::new(rank, values)?;
        Ok(QuadraticRefinement { rank, values: bits.bits() })
    }

    pub fn zero(rank: Rank) -> Result<Self> {
        Self::new(rank, 0)
    }

    /// Parses a string of `0`/`1` characters in basis order `u_1 v_1 ... u_r v_r`.
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || !s.len().is_multiple_of(2) {
            return Err(Error::Parse(format!("refinement bit string must have even positive length, got {:?}", s)));
        }
        let rank = Rank::new(s.len() / 2)?;
        let mut values = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => values |= 1 << i,
                other => return Err(Error::Parse(format!("unexpected character {:?} in refinement", other))),
            }
        }
        Self::new(rank, values)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    /// Packed basis values.
    pub fn values(&self) -> u64 {
        self.values
    }

    /// Basis values in order `psi(u_1), psi(v_1), ...`.
    pub fn basis_values(&self) -> Vec<bool> {
        (0..self.rank.dim()).map(|i| (self.values >> i) & 1 == 1).collect()
    }

    pub fn to_bit_string(&self) -> String {
        self.basis_values().iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    fn lex_key(&self) -> u64 {
        lex_key(self.rank, self.values)
    }

    /// `psi(v) = sum_i (a_i psi(u_i) + b_i psi(v_i) + a_i b_i)`.
    pub fn eval(&self, v: &BitVector) -> Result<bool> {
        check_rank(self.rank, v.rank())?;
        Ok(self.eval_bits(v.bits()))
    }

    pub(crate) fn eval_bits(&self, v: u64) -> bool {
        ((self.values & v).count_ones() % 2 == 1) ^ pair_products(v)
    }

    /// `psi . A = psi o A` for a mod-2 symplectic matrix.
    pub fn act(&self, a: &BitMatrix) -> Result<Self> {
        check_rank(self.rank, a.rank())?;
        if !a.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(self.act_unchecked(a))
    }

    /// `psi . A` for an integral symplectic matrix; depends only on `A mod 2`.
    pub fn act_integral(&self, a: &SymplecticMatrix) -> Result<Self> {
        check_rank(self.rank, a.rank())?;
        Ok(self.act_unchecked(&a.reduce_mod2()?))
    }

    fn act_unchecked(&self, a: &BitMatrix) -> Self {
        let mut values = 0u64;
        for (j, &col) in a.columns().iter().enumerate() {
            if self.eval_bits(col) {
                values |= 1 << j;
            }
        }
        QuadraticRefinement { rank: self.rank, values }
    }

    /// `psi . T_v` in closed form.
    ///
    /// `psi(w + phi-bar(v,w) v) = psi(w) + phi-bar(v,w) (psi(v) + 1)`, so the
    /// transvection fixes `psi` when `psi(v) = 1` and otherwise translates it
    /// by the covector `phi-bar(v, .)`.
    pub fn act_transvection(&self, v: &BitVector) -> Result<Self> {
        check_rank(self.rank, v.rank())?;
        Ok(self.act_transvection_bits(v.bits()))
    }

    fn act_transvection_bits(&self, v: u64) -> Self {
        if self.eval_bits(v) {
            *self
        } else {
            QuadraticRefinement { rank: self.rank, values: self.values ^ swap_pairs(v) }
        }
    }

    /// `(psi + x)(v) = psi(v) + x(v)`.
    pub fn translate(&self, x: &BitCovector) -> Result<Self> {
        check_rank(self.rank, x.rank())?;
        Ok(QuadraticRefinement { rank: self.rank, values: self.values ^ x.bits() })
    }

    /// The unique `x` in `H*_2` with `self = other + x`.
    pub fn difference(&self, other: &QuadraticRefinement) -> Result<BitCovector> {
        check_rank(self.rank, other.rank)?;
        BitCovector::new(self.rank, self.values ^ other.values)
    }

    /// Arf invariant `sum_i psi(u_i) psi(v_i) mod 2`.
    pub fn arf(&self) -> bool {
        pair_products(self.values)
    }

    /// Whether every transvection (hence all of `Sp(2r, F_2)`) fixes `psi`.
    pub fn is_fixed_by_all_transvections(&self) -> bool {
        // T_v fixes psi iff psi(v) = 1 or v = 0
        (1..(1u64 << self.rank.dim())).all(|v| self.eval_bits(v))
    }

    /// The orbit of `psi` under `Sp(2r, Z)`, sorted lexicographically.
    pub fn orbit(&self) -> Result<Vec<QuadraticRefinement>> {
        self.rank.ensure_at_most(ENUMERATION_LIMIT)?;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(*self);
        queue.push_back(*self);
        let n = 1u64 << self.rank.dim();
        while let Some(psi) = queue.pop_front() {
            for v in 1..n {
                let next = psi.act_transvection_bits(v);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

fn lex_key(rank: Rank, values: u64) -> u64 {
    values.reverse_bits() >> (64 - rank.dim())
}

impl Ord for QuadraticRefinement {
    /// Lexicographic on `(rank, psi(u_1), psi(v_1), ...)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank.cmp(&other.rank).then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for QuadraticRefinement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadraticRefinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// All `2^{2r}` refinements in lexicographic order of basis values.
pub fn enumerate_refinements(rank: Rank) -> Result<Vec<QuadraticRefinement>> {
    rank.ensure_at_most(ENUMERATION_LIMIT)?;
    let dim = rank.dim();
    Ok((0..(1u64 << dim)).map(|k| QuadraticRefinement { rank, values: k.reverse_bits() >> (64 - dim) }).collect())
}

/// `(2^{2r-1} + 2^{r-1}, 2^{2r-1} - 2^{r-1})`: sizes of the Arf 0 and Arf 1 classes.
pub fn expected_orbit_sizes(rank: Rank) -> (u64, u64) {
    let r = rank.get() as u32;
    let big = 1u64 << (2 * r - 1);
    let small = 1u64 << (r - 1);
    (big + small, big - small)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub arf: bool,
    pub size: u64,
    /// Lexicographically least member.
    pub representative: QuadraticRefinement,
    /// Every member has the same Arf invariant.
    pub arf_constant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub rank: Rank,
    /// Sorted by representative.
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    /// Two orbits, labelled Arf 0 and Arf 1, with the closed-form sizes.
    pub fn matches_closed_form(&self) -> bool {
        let (s0, s1) = expected_orbit_sizes(self.rank);
        match self.orbits.as_slice() {
            [a, b] => {
                let mut labelled = [(a.arf, a.size), (b.arf, b.size)];
                labelled.sort();
                a.arf_constant && b.arf_constant && labelled == [(false, s0), (true, s1)]
            }
            _ => false,
        }
    }

    pub fn total(&self) -> u64 {
        self.orbits.iter().map(|o| o.size).sum()
    }
}

/// Decomposes the set of refinements into `Sp(2r, Z)`-orbits by BFS over all
/// nonzero mod-2 transvections.
pub fn orbit_decomposition(rank: Rank) -> Result<OrbitReport> {
    rank.ensure_at_most(ORBIT_REPORT_LIMIT)?;
    let dim = rank.dim();
    let n = 1u64 << dim;
    let mut visited = vec![false; n as usize];
    let mut orbits = Vec::new();
    let mut queue = VecDeque::new();
    // Walking seeds in lexicographic order makes each seed its orbit's least member.
    for key in 0..n {
        let values = key.reverse_bits() >> (64 - dim);
        if visited[values as usize] {
            continue;
        }
        let seed = QuadraticRefinement { rank, values };
        let arf = seed.arf();
        let mut size = 0u64;
        let mut arf_constant = true;
        visited[values as usize] = true;
        queue.push_back(seed);
        while let Some(psi) = queue.pop_front() {
            size += 1;
            arf_constant &= psi.arf() == arf;
            for v in 1..n {
                let next = psi.act_transvection_bits(v);
                if !visited[next.values as usize] {
                    visited[next.values as usize] = true;
                    queue.push_back(next);
                }
            }
        }
        orbits.push(Orbit { arf, size, representative: seed, arf_constant });
    }
    Ok(OrbitReport { rank, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::phi_bar;
    use crate::symplectic::{random_symplectic, Vector};
    use proptest::prelude::*;

    fn r(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    fn q(s: &str) -> QuadraticRefinement {
        QuadraticRefinement::from_bit_string(s).unwrap()
    }

    fn bv(rank: Rank, bits: u64) -> BitVector {
        BitVector::new(rank, bits).unwrap()
    }

    #[test]
    fn eval_examples() {
        let psi = q("00");
        assert!(!psi.eval(&bv(r(1), 0)).unwrap());
        assert!(psi.eval(&bv(r(1), 0b11)).unwrap());
        let psi = q("1001");
        assert!(psi.eval(&bv(r(2), 0b0001)).unwrap());
        assert!(!psi.eval(&bv(r(2), 0b0100)).unwrap());
        assert!(psi.eval(&bv(r(2), 0b1000)).unwrap());
        assert!(matches!(psi.eval(&bv(r(1), 1)), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn refinement_identity_exhaustive() {
        for rk in 1..=3 {
            let rank = r(rk);
            for psi in enumerate_refinements(rank).unwrap() {
                for v in BitVector::all(rank).unwrap() {
                    for w in BitVector::all(rank).unwrap() {
                        let lhs = psi.eval(&v.add(&w).unwrap()).unwrap();
                        let rhs = psi.eval(&v).unwrap() ^ psi.eval(&w).unwrap() ^ phi_bar(&v, &w).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn act_examples() {
        let rank = r(1);
        let psi = q("00");
        assert_eq!(psi.act(&BitMatrix::identity(rank).unwrap()).unwrap(), psi);
        let t = SymplecticMatrix::transvection(&Vector::from_i64s(&[1, 0]).unwrap());
        assert_eq!(psi.act_integral(&t).unwrap(), q("01"));
        let bad = BitMatrix::from_columns(rank, vec![1, 1]).unwrap();
        assert_eq!(psi.act(&bad), Err(Error::NotSymplectic));
    }

    #[test]
    fn closed_form_transvection_matches_matrix_action() {
        for rk in 1..=3 {
            let rank = r(rk);
            for psi in enumerate_refinements(rank).unwrap() {
                for v in BitVector::all(rank).unwrap() {
                    let via_matrix = psi.act(&BitMatrix::transvection(&v)).unwrap();
                    assert_eq!(psi.act_transvection(&v).unwrap(), via_matrix);
                }
            }
        }
    }

    #[test]
    fn translate_and_difference() {
        let psi = q("0110");
        let x = BitCovector::new(r(2), 0b1011).unwrap();
        assert_eq!(psi.translate(&BitCovector::zero(r(2)).unwrap()).unwrap(), psi);
        assert_eq!(psi.translate(&x).unwrap().translate(&x).unwrap(), psi);
        assert!(psi.difference(&psi).unwrap().is_zero());
        assert_eq!(psi.translate(&x).unwrap().difference(&psi).unwrap(), x);
    }

    #[test]
    fn pointwise_difference_is_linear() {
        for rk in 1..=2 {
            let rank = r(rk);
            let all = enumerate_refinements(rank).unwrap();
            for a in &all {
                for b in &all {
                    let x = a.difference(b).unwrap();
                    for v in BitVector::all(rank).unwrap() {
                        let diff = a.eval(&v).unwrap() ^ b.eval(&v).unwrap();
                        assert_eq!(diff, x.eval(&v).unwrap());
                        for w in BitVector::all(rank).unwrap() {
                            let dw = a.eval(&w).unwrap() ^ b.eval(&w).unwrap();
                            let dvw = a.eval(&v.add(&w).unwrap()).unwrap() ^ b.eval(&v.add(&w).unwrap()).unwrap();
                            assert_eq!(dvw, diff ^ dw);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn arf_examples() {
        assert!(!q("000000").arf());
        assert!(q("11").arf());
        assert!(q("1101").arf());
        assert!(!q("1001").arf());
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_refinements(r(1)).unwrap().len(), 4);
        assert_eq!(enumerate_refinements(r(2)).unwrap().len(), 16);
        let names: Vec<_> = enumerate_refinements(r(1)).unwrap().iter().map(|p| p.to_bit_string()).collect();
        assert_eq!(names, ["00", "01", "10", "11"]);
        let arfs: Vec<bool> = enumerate_refinements(r(1)).unwrap().iter().map(|p| p.arf()).collect();
        assert_eq!(arfs.iter().filter(|&&a| !a).count(), 3);
        assert_eq!(arfs.iter().filter(|&&a| a).count(), 1);
        assert_eq!(enumerate_refinements(r(13)), Err(Error::RankTooLarge { rank: 13, limit: 12 }));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(q("11").orbit().unwrap(), vec![q("11")]);
        assert_eq!(q("00").orbit().unwrap(), vec![q("00"), q("01"), q("10")]);
        for psi in q("0000").orbit().unwrap() {
            for v in BitVector::all(r(2)).unwrap() {
                let moved = psi.act_transvection(&v).unwrap();
                assert!(q("0000").orbit().unwrap().contains(&moved));
            }
        }
    }

    #[test]
    fn orbit_decomposition_small() {
        for (rk, sizes) in [(1, (3, 1)), (2, (10, 6)), (3, (36, 28))] {
            let report = orbit_decomposition(r(rk)).unwrap();
            assert_eq!(report.orbits.len(), 2);
            assert!(!report.orbits[0].arf);
            assert_eq!((report.orbits[0].size, report.orbits[1].size), sizes);
            assert!(report.matches_closed_form());
            assert_eq!(report.total(), 1 << (2 * rk));
        }
        assert_eq!(expected_orbit_sizes(r(4)), (136, 120));
        assert!(orbit_decomposition(r(9)).is_err());
    }

    #[test]
    fn negation_fixes_every_refinement() {
        // psi(-v) = psi(v) over F_2
        for psi in enumerate_refinements(r(3)).unwrap() {
            let neg = SymplecticMatrix::neg_identity(r(3));
            assert_eq!(psi.act_integral(&neg).unwrap(), psi);
        }
    }

    proptest! {
        #[test]
        fn action_is_right_action(values in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
            let rank = r(3);
            let psi = QuadraticRefinement::new(rank, values).unwrap();
            let a = random_symplectic(rank, 12, s1);
            let b = random_symplectic(rank, 12, s2);
            let lhs = psi.act_integral(&a).unwrap().act_integral(&b).unwrap();
            prop_assert_eq!(lhs, psi.act_integral(&a.mul(&b).unwrap()).unwrap());
            // factors through the mod-2 matrix
            prop_assert_eq!(psi.act_integral(&a).unwrap(), psi.act(&a.reduce_mod2().unwrap()).unwrap());
        }

        #[test]
        fn arf_is_orbit_invariant(values in any::<u64>(), rk in 1usize..6, seed in any::<u64>()) {
            let rank = r(rk);
            let psi = QuadraticRefinement::new(rank, values).unwrap();
            let a = random_symplectic(rank, 20, seed);
            prop_assert_eq!(psi.act_integral(&a).unwrap().arf(), psi.arf());
        }

        #[test]
        fn refinement_identity_random(values in any::<u64>(), rk in 4usize..7, v in any::<u64>(), w in any::<u64>()) {
            let rank = r(rk);
            let psi = QuadraticRefinement::new(rank, values).unwrap();
            let (v, w) = (bv(rank, v), bv(rank, w));
            let lhs = psi.eval(&v.add(&w).unwrap()).unwrap();
            prop_assert_eq!(lhs, psi.eval(&v).unwrap() ^ psi.eval(&w).unwrap() ^ phi_bar(&v, &w).unwrap());
        }
    }
}
