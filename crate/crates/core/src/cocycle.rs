//! 1-cocycles on the symplectic group with values in `H*_m`.
//!
//! A cocycle satisfies `s(AB) = s(A) . B + s(B)`. Coboundaries are
//! `s(x)(A) = x . A - x`; the principal cocycle of a refinement is
//! `s(psi)(A) = psi . A - psi` with values in `H*_2`.

use num_bigint::BigInt;

use crate::bits::{BitCovector, BitMatrix};
use crate::error::{Error, Result};
use crate::quadratic::{enumerate_refinements, QuadraticRefinement};
use crate::symplectic::{check_rank, Covector, Modulus, Rank, SymplecticMatrix};

/// Largest rank for the exhaustive coboundary search.
pub const WITNESS_SEARCH_LIMIT: usize = 8;

/// A finite table of values, used only for negative controls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulatedCocycle {
    rank: Rank,
    modulus: Modulus,
    entries: Vec<(SymplecticMatrix, Covector)>,
}

impl TabulatedCocycle {
    pub fn new(rank: Rank, modulus: Modulus) -> Self {
        TabulatedCocycle { rank, modulus, entries: Vec::new() }
    }

    pub fn insert(&mut self, a: SymplecticMatrix, value: Covector) -> Result<()> {
        check_rank(self.rank, a.rank())?;
        check_rank(self.rank, value.rank())?;
        if value.modulus() != self.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus.get(), right: value.modulus().get() });
        }
        match self.entries.iter_mut().find(|(m, _)| *m == a) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((a, value)),
        }
        Ok(())
    }

    fn lookup(&self, a: &SymplecticMatrix) -> Result<Covector> {
        self.entries.iter().find(|(m, _)| m == a).map(|(_, v)| v.clone()).ok_or(Error::NotTabulated)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cocycle {
    Coboundary(Covector),
    Principal(QuadraticRefinement),
    Tabulated(TabulatedCocycle),
}

impl Cocycle {
    pub fn rank(&self) -> Rank {
        match self {
            Cocycle::Coboundary(x) => x.rank(),
            Cocycle::Principal(psi) => psi.rank(),
            Cocycle::Tabulated(t) => t.rank,
        }
    }

    pub fn modulus(&self) -> Modulus {
        match self {
            Cocycle::Coboundary(x) => x.modulus(),
            Cocycle::Principal(_) => Modulus::TWO,
            Cocycle::Tabulated(t) => t.modulus,
        }
    }

    pub fn eval(&self, a: &SymplecticMatrix) -> Result<Covector> {
        match self {
            Cocycle::Coboundary(x) => coboundary_at(x, a),
            Cocycle::Principal(psi) => Ok(Covector::lift_bits(&principal_at(psi, a)?, Modulus::TWO)),
            Cocycle::Tabulated(t) => t.lookup(a),
        }
    }
}

/// `s(x)(A) = x . A - x`.
pub fn coboundary_at(x: &Covector, a: &SymplecticMatrix) -> Result<Covector> {
    x.act(a)?.sub(x)
}

/// `s(x)(A)` for a mod-2 covector and matrix.
pub fn coboundary_at_bits(x: &BitCovector, a: &BitMatrix) -> Result<BitCovector> {
    x.act(a)?.add(x)
}

/// `s(psi)(A) = psi . A - psi`.
pub fn principal_at(psi: &QuadraticRefinement, a: &SymplecticMatrix) -> Result<BitCovector> {
    psi.act_integral(a)?.difference(psi)
}

/// `s(psi)(A)` for a mod-2 symplectic matrix.
pub fn principal_at_bits(psi: &QuadraticRefinement, a: &BitMatrix) -> Result<BitCovector> {
    psi.act(a)?.difference(psi)
}

/// Exact check of `s(AB) = s(A) . B + s(B)` for one pair.
pub fn check_cocycle_law(s: &Cocycle, a: &SymplecticMatrix, b: &SymplecticMatrix) -> Result<bool> {
    let ab = a.mul(b)?;
    let lhs = s.eval(&ab)?;
    let rhs = s.eval(a)?.act(b)?.add(&s.eval(b)?)?;
    Ok(lhs == rhs)
}

/// Certificate that `s(psi)` is the coboundary `s(x)` in `H*_2`: the
/// refinement `psi + x` is fixed by every transvection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoboundaryWitness {
    pub x: BitCovector,
    pub fixed: QuadraticRefinement,
}

impl CoboundaryWitness {
    /// Re-checks fixedness under every nonzero mod-2 transvection.
    pub fn verify(&self, psi: &QuadraticRefinement) -> bool {
        psi.translate(&self.x).map(|f| f == self.fixed).unwrap_or(false) && self.fixed.is_fixed_by_all_transvections()
    }
}

/// Searches all `x` in `H*_2` (in lexicographic order) for one with `psi + x`
/// fixed by the whole group. `None` certifies `[s(psi)] != 0` in
/// `H^1(Sp(2r, Z); H*_2)`.
pub fn principal_coboundary_witness(psi: &QuadraticRefinement) -> Result<Option<CoboundaryWitness>> {
    psi.rank().ensure_at_most(WITNESS_SEARCH_LIMIT)?;
    // enumerate_refinements doubles as the lexicographic walk over H*_2
    for pattern in enumerate_refinements(psi.rank())? {
        let x = BitCovector::new(psi.rank(), pattern.values())?;
        let candidate = psi.translate(&x)?;
        if candidate.is_fixed_by_all_transvections() {
            return Ok(Some(CoboundaryWitness { x, fixed: candidate }));
        }
    }
    Ok(None)
}

/// Checks `2 s(A) = -(s(-Id) . A - s(-Id))`, which every cocycle with values
/// in `H*_m` (m = 0 or even) satisfies.
pub fn minus_id_constraint(s: &Cocycle, a: &SymplecticMatrix) -> Result<bool> {
    let m = s.modulus();
    if !m.is_even_or_integral() {
        return Err(Error::OddModulus(m.get()));
    }
    let s_neg = s.eval(&SymplecticMatrix::neg_identity(s.rank()))?;
    let lhs = s.eval(a)?.scale(&BigInt::from(2));
    let rhs = coboundary_at(&s_neg, a)?.neg();
    Ok(lhs == rhs)
}
