//! Seeded samplers for the property suites.

use num_bigint::BigInt;
use rand::Rng;

use crate::bits::BitCovector;
use crate::error::Result;
use crate::jacobi::{include_fiber, lift, JacobiElement};
use crate::quadratic::QuadraticRefinement;
use crate::symplectic::{random_symplectic_from, Covector, Modulus, Rank, SymplecticMatrix};

/// Words of transvections have length drawn uniformly from `0..=MAX_WORD_LENGTH`.
pub const MAX_WORD_LENGTH: usize = 20;

const INTEGER_RANGE: i64 = 1000;

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rank: Rank) -> SymplecticMatrix {
    let len = rng.gen_range(0..=MAX_WORD_LENGTH);
    random_symplectic_from(rng, rank, len)
}

/// Uniform residues for `m > 0`, integers in `[-1000, 1000]` for `Z`.
pub fn covector<R: Rng + ?Sized>(rng: &mut R, rank: Rank, modulus: Modulus) -> Covector {
    let coords = (0..rank.dim())
        .map(|_| match modulus.get() {
            0 => BigInt::from(rng.gen_range(-INTEGER_RANGE..=INTEGER_RANGE)),
            m => BigInt::from(rng.gen_range(0..m)),
        })
        .collect();
    Covector::new(coords, modulus).expect("even length by construction")
}

/// A uniformly random element of `2H*_m`.
pub fn even_covector<R: Rng + ?Sized>(rng: &mut R, rank: Rank, modulus: Modulus) -> Covector {
    covector(rng, rank, modulus).scale(&BigInt::from(2))
}

pub fn refinement<R: Rng + ?Sized>(rng: &mut R, rank: Rank) -> Result<QuadraticRefinement> {
    QuadraticRefinement::new(rank, rng.gen())
}

pub fn bit_covector<R: Rng + ?Sized>(rng: &mut R, rank: Rank) -> Result<BitCovector> {
    BitCovector::new(rank, rng.gen())
}

/// An arbitrary element of `Gamma(phi, C)`.
pub fn element<R: Rng + ?Sized>(rng: &mut R, rank: Rank, modulus: Modulus) -> JacobiElement {
    let x = covector(rng, rank, modulus);
    JacobiElement::new(x, matrix(rng, rank)).expect("ranks agree by construction")
}

/// A random element of `Gamma(psi, C)`: a lift over a random matrix times a
/// random fiber element.
pub fn member<R: Rng + ?Sized>(rng: &mut R, psi: &QuadraticRefinement, modulus: Modulus) -> Result<JacobiElement> {
    let a = matrix(rng, psi.rank());
    let base = lift(psi, &a, modulus)?;
    base.mul(&include_fiber(&even_covector(rng, psi.rank(), modulus))?)
}
