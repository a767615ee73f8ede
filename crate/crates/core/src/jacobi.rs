//! The Jacobi group `Gamma(phi, C) = H*_c x| Sp(2r, Z)` with product
//! `(x, A)(y, B) = (x . B + y, AB)`, its subgroups `Gamma(psi, C)` cut out by
//! `x mod 2 = s(psi)(A)`, and the splitting question for the extension
//! `0 -> 2H*_c -> Gamma(psi, C) -> Sp(2r, Z) -> 1`.

use crate::bits::BitCovector;
use crate::cocycle::{coboundary_at, principal_at, principal_coboundary_witness, CoboundaryWitness, WITNESS_SEARCH_LIMIT};
use crate::error::{Error, Result};
use crate::quadratic::QuadraticRefinement;
use crate::symplectic::{check_rank, Covector, Modulus, Rank, SymplecticMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JacobiElement {
    x: Covector,
    a: SymplecticMatrix,
}

impl JacobiElement {
    pub fn new(x: Covector, a: SymplecticMatrix) -> Result<Self> {
        check_rank(x.rank(), a.rank())?;
        Ok(JacobiElement { x, a })
    }

    pub fn identity(rank: Rank, modulus: Modulus) -> Self {
        JacobiElement { x: Covector::zero(rank, modulus), a: SymplecticMatrix::identity(rank) }
    }

    pub fn covector(&self) -> &Covector {
        &self.x
    }

    pub fn matrix(&self) -> &SymplecticMatrix {
        &self.a
    }

    pub fn rank(&self) -> Rank {
        self.a.rank()
    }

    pub fn modulus(&self) -> Modulus {
        self.x.modulus()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.a.is_identity()
    }

    /// `(x, A)(y, B) = (x . B + y, AB)`.
    pub fn mul(&self, other: &JacobiElement) -> Result<JacobiElement> {
        let x = self.x.act(&other.a)?.add(&other.x)?;
        Ok(JacobiElement { x, a: self.a.mul(&other.a)? })
    }

    /// `(x, A)^{-1} = (-x . A^{-1}, A^{-1})`.
    pub fn inverse(&self) -> JacobiElement {
        let a_inv = self.a.inverse();
        let x = self.x.act(&a_inv).expect("ranks agree by construction").neg();
        JacobiElement { x, a: a_inv }
    }

    /// Membership in `Gamma(psi, C)`: `x mod 2 = s(psi)(A)`.
    pub fn is_member(&self, psi: &QuadraticRefinement) -> Result<bool> {
        check_rank(self.rank(), psi.rank())?;
        Ok(self.x.reduce_mod2()? == principal_at(psi, &self.a)?)
    }

    /// The projection `pi(x, A) = A`.
    pub fn project(&self) -> &SymplecticMatrix {
        &self.a
    }

    /// Image under `Gamma(phi, C) -> Gamma(phi, C')`.
    pub fn reduce_modulus(&self, target: Modulus) -> Result<JacobiElement> {
        Ok(JacobiElement { x: self.x.reduce(target)?, a: self.a.clone() })
    }

    /// Conjugation `(y, Id) g (y, Id)^{-1} = (y . A + x - y, A)`; carries
    /// `Gamma(psi, C)` onto `Gamma(psi + y mod 2, C)`.
    pub fn reframe(&self, y: &Covector) -> Result<JacobiElement> {
        check_rank(self.rank(), y.rank())?;
        let x = coboundary_at(y, &self.a)?.add(&self.x)?;
        Ok(JacobiElement { x, a: self.a.clone() })
    }
}

/// The inclusion `i: 2H*_m -> Gamma(psi, C)`, `x -> (x, Id)`.
pub fn include_fiber(x: &Covector) -> Result<JacobiElement> {
    if !x.modulus().is_even_or_integral() {
        return Err(Error::OddModulus(x.modulus().get()));
    }
    if let Some(index) = x.first_odd_coordinate() {
        return Err(Error::OddCoordinate { index });
    }
    Ok(JacobiElement { x: x.clone(), a: SymplecticMatrix::identity(x.rank()) })
}

/// Any element of `Gamma(psi, C)` over `A`: the `{0,1}` lift of `s(psi)(A)`.
pub fn lift(psi: &QuadraticRefinement, a: &SymplecticMatrix, modulus: Modulus) -> Result<JacobiElement> {
    if !modulus.is_even_or_integral() {
        return Err(Error::OddModulus(modulus.get()));
    }
    let bits = principal_at(psi, a)?;
    JacobiElement::new(Covector::lift_bits(&bits, modulus), a.clone())
}

/// A homomorphic section `A -> (x . A - x, A)` of `Gamma(psi, C) -> Sp(2r, Z)`,
/// available when `psi + x mod 2` is fixed by the whole group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    base: QuadraticRefinement,
    lift: Covector,
}

impl Section {
    /// Builds the section from a coboundary witness for `s(psi)`.
    pub fn from_witness(base: QuadraticRefinement, witness: &CoboundaryWitness, modulus: Modulus) -> Result<Self> {
        if !witness.verify(&base) {
            return Err(Error::NotMember);
        }
        Ok(Section { base, lift: Covector::lift_bits(&witness.x, modulus) })
    }

    pub fn base(&self) -> &QuadraticRefinement {
        &self.base
    }

    /// The covector `x` in `A -> (x . A - x, A)`.
    pub fn lift(&self) -> &Covector {
        &self.lift
    }

    pub fn apply(&self, a: &SymplecticMatrix) -> Result<JacobiElement> {
        JacobiElement::new(coboundary_at(&self.lift, a)?, a.clone())
    }
}

/// The Arf invariant one refinement `psi(u_1) = psi(v_1) = 1` of rank 1.
pub fn arf_one_rank_one() -> QuadraticRefinement {
    QuadraticRefinement::new(Rank::new(1).expect("nonzero"), 0b11).expect("rank 1 fits")
}

/// The rank-1 section `A -> (0, A)` into `Gamma(psi_1, C)` for the Arf 1 form.
pub fn section_r1(a: &SymplecticMatrix, modulus: Modulus) -> Result<JacobiElement> {
    if a.rank().get() != 1 {
        return Err(Error::RankMismatch { left: 1, right: a.rank().get() });
    }
    JacobiElement::new(Covector::zero(a.rank(), modulus), a.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitVerdict {
    pub rank: Rank,
    pub modulus: Modulus,
    pub base: QuadraticRefinement,
    pub splits: bool,
    /// Present exactly when the extension splits.
    pub witness: Option<CoboundaryWitness>,
    pub section: Option<Section>,
    /// Number of candidate refinements `psi + x` examined; `2^{2r}` when none is fixed.
    pub candidates_checked: u64,
}

/// Default base refinement: all basis values zero.
pub fn default_base(rank: Rank) -> Result<QuadraticRefinement> {
    QuadraticRefinement::zero(rank)
}

fn check_split_modulus(modulus: Modulus) -> Result<()> {
    if !modulus.get().is_multiple_of(4) {
        return Err(Error::SplitModulus(modulus.get()));
    }
    Ok(())
}

/// Decides whether `0 -> 2H*_m -> Gamma(psi, C) -> Sp(2r, Z) -> 1` splits
/// for `m = 0` or `4 | m`, using the default base refinement.
pub fn splits(rank: Rank, modulus: Modulus) -> Result<SplitVerdict> {
    splits_with_base(&default_base(rank)?, modulus)
}

/// As [`splits`] for an explicit base refinement.
///
/// The extension splits iff `[s(psi)] = 0`, iff some `psi + x` is fixed by
/// the whole group. The search is exhaustive over `H*_2`.
pub fn splits_with_base(base: &QuadraticRefinement, modulus: Modulus) -> Result<SplitVerdict> {
    check_split_modulus(modulus)?;
    let rank = base.rank();
    rank.ensure_at_most(WITNESS_SEARCH_LIMIT)?;
    let witness = principal_coboundary_witness(base)?;
    let total = 1u64 << rank.dim();
    let (section, candidates_checked) = match &witness {
        Some(w) => {
            let checked = lex_position(&w.x) + 1;
            (Some(Section::from_witness(*base, w, modulus)?), checked)
        }
        None => (None, total),
    };
    Ok(SplitVerdict { rank, modulus, base: *base, splits: witness.is_some(), witness, section, candidates_checked })
}

fn lex_position(x: &BitCovector) -> u64 {
    let dim = x.rank().dim();
    x.bits().reverse_bits() >> (64 - dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::random_symplectic;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    fn cov(c: &[i64], m: u64) -> Covector {
        Covector::from_i64s(c, Modulus::new(m)).unwrap()
    }

    fn random_element(rng: &mut ChaCha8Rng, rank: Rank, m: u64) -> JacobiElement {
        let x: Vec<i64> = (0..rank.dim()).map(|_| rng.gen_range(-500..500)).collect();
        JacobiElement::new(cov(&x, m), random_symplectic(rank, rng.gen_range(0..=20), rng.gen())).unwrap()
    }

    #[test]
    fn product_examples() {
        let rank = r(1);
        let id = JacobiElement::identity(rank, Modulus::INTEGERS);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_element(&mut rng, rank, 0);
        assert_eq!(g.mul(&id).unwrap(), g);
        assert_eq!(id.mul(&g).unwrap(), g);
        let a = include_fiber(&cov(&[2, 4], 0)).unwrap();
        let b = JacobiElement::new(cov(&[3, -7], 0), SymplecticMatrix::identity(rank)).unwrap();
        assert_eq!(a.mul(&b).unwrap().covector(), &cov(&[5, -3], 0));
        let other = JacobiElement::identity(rank, Modulus::new(4));
        assert!(matches!(g.mul(&other), Err(Error::ModulusMismatch { .. })));
        let bigger = JacobiElement::identity(r(2), Modulus::INTEGERS);
        assert!(matches!(g.mul(&bigger), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn associativity_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (rk, m) in [(1, 0), (2, 24), (3, 4), (2, 240)] {
            let rank = r(rk);
            for _ in 0..50 {
                let (g, h, k) = (random_element(&mut rng, rank, m), random_element(&mut rng, rank, m), random_element(&mut rng, rank, m));
                assert_eq!(g.mul(&h).unwrap().mul(&k).unwrap(), g.mul(&h.mul(&k).unwrap()).unwrap());
                assert!(g.mul(&g.inverse()).unwrap().is_identity());
                assert!(g.inverse().mul(&g).unwrap().is_identity());
            }
        }
        let id = JacobiElement::identity(r(2), Modulus::INTEGERS);
        assert_eq!(id.inverse(), id);
        let g = JacobiElement::new(cov(&[1, 2, 3, 4], 0), SymplecticMatrix::identity(r(2))).unwrap();
        assert_eq!(g.inverse().covector(), &cov(&[-1, -2, -3, -4], 0));
    }

    #[test]
    fn membership_and_fiber() {
        let rank = r(2);
        let psi = QuadraticRefinement::zero(rank).unwrap();
        assert!(JacobiElement::identity(rank, Modulus::new(24)).is_member(&psi).unwrap());
        let f = include_fiber(&cov(&[2, 0, 0, 0], 24)).unwrap();
        assert!(f.is_member(&psi).unwrap());
        assert!(f.project().is_identity());
        assert_eq!(include_fiber(&cov(&[2, 3, 0, 0], 24)), Err(Error::OddCoordinate { index: 1 }));
        assert!(include_fiber(&Covector::zero(rank, Modulus::INTEGERS)).unwrap().is_identity());
        let odd = JacobiElement::identity(rank, Modulus::new(3));
        assert_eq!(odd.is_member(&psi), Err(Error::OddModulus(3)));
        // include is additive
        let x = cov(&[2, 4, 6, 8], 24);
        let y = cov(&[10, 22, 0, 2], 24);
        assert_eq!(include_fiber(&x.add(&y).unwrap()).unwrap(), include_fiber(&x).unwrap().mul(&include_fiber(&y).unwrap()).unwrap());
    }

    #[test]
    fn membership_closed_under_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rank = r(2);
        for _ in 0..100 {
            let psi = QuadraticRefinement::new(rank, rng.gen()).unwrap();
            let m = Modulus::new(24);
            let twist = |rng: &mut ChaCha8Rng| include_fiber(&cov(&(0..4).map(|_| 2 * rng.gen_range(0..12)).collect::<Vec<_>>(), 24)).unwrap();
            let g = lift(&psi, &random_symplectic(rank, 15, rng.gen()), m).unwrap().mul(&twist(&mut rng)).unwrap();
            let h = lift(&psi, &random_symplectic(rank, 15, rng.gen()), m).unwrap().mul(&twist(&mut rng)).unwrap();
            assert!(g.is_member(&psi).unwrap());
            assert!(g.mul(&h).unwrap().is_member(&psi).unwrap());
            assert!(g.inverse().is_member(&psi).unwrap());
        }
    }

    #[test]
    fn reduction_and_reframing() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rank = r(2);
        for _ in 0..100 {
            let g = random_element(&mut rng, rank, 0);
            let h = random_element(&mut rng, rank, 0);
            let m = Modulus::new(24);
            assert_eq!(g.mul(&h).unwrap().reduce_modulus(m).unwrap(), g.reduce_modulus(m).unwrap().mul(&h.reduce_modulus(m).unwrap()).unwrap());

            let psi = QuadraticRefinement::new(rank, rng.gen()).unwrap();
            let member = lift(&psi, g.matrix(), Modulus::INTEGERS).unwrap();
            assert!(member.reduce_modulus(Modulus::new(4)).unwrap().is_member(&psi).unwrap());

            let y = cov(&(0..4).map(|_| rng.gen_range(-50..50)).collect::<Vec<_>>(), 0);
            let shifted = psi.translate(&y.reduce_mod2().unwrap()).unwrap();
            let moved = member.reframe(&y).unwrap();
            assert!(moved.is_member(&shifted).unwrap());
            assert_eq!(moved.reframe(&y.neg()).unwrap(), member);
            assert_eq!(g.mul(&h).unwrap().reframe(&y).unwrap(), g.reframe(&y).unwrap().mul(&h.reframe(&y).unwrap()).unwrap());
        }
        let g = random_element(&mut rng, rank, 24);
        assert_eq!(g.reduce_modulus(Modulus::new(24)).unwrap(), g);
        assert_eq!(g.reframe(&Covector::zero(rank, Modulus::new(24))).unwrap(), g);
        assert!(matches!(g.reduce_modulus(Modulus::new(5)), Err(Error::NonDividingModulus { .. })));
    }

    #[test]
    fn rank_one_section() {
        let psi = arf_one_rank_one();
        let m = Modulus::new(24);
        let id = SymplecticMatrix::identity(r(1));
        assert!(section_r1(&id, m).unwrap().is_identity());
        for seed in 0..100 {
            let a = random_symplectic(r(1), 20, seed);
            let b = random_symplectic(r(1), 20, seed + 500);
            let sa = section_r1(&a, m).unwrap();
            assert!(sa.is_member(&psi).unwrap());
            assert_eq!(sa.project(), &a);
            assert_eq!(sa.mul(&section_r1(&b, m).unwrap()).unwrap(), section_r1(&a.mul(&b).unwrap(), m).unwrap());
        }
        assert!(section_r1(&SymplecticMatrix::identity(r(2)), m).is_err());
    }

    #[test]
    fn splitting_verdicts() {
        let v = splits(r(1), Modulus::INTEGERS).unwrap();
        assert!(v.splits);
        assert_eq!(v.witness.unwrap().x.to_bit_string(), "11");
        assert_eq!(v.section.as_ref().unwrap().lift(), &cov(&[1, 1], 0));
        assert_eq!(v.candidates_checked, 4);

        let v = splits(r(2), Modulus::new(24)).unwrap();
        assert!(!v.splits);
        assert_eq!(v.candidates_checked, 16);
        assert!(!splits(r(3), Modulus::INTEGERS).unwrap().splits);

        let v = splits_with_base(&arf_one_rank_one(), Modulus::new(4)).unwrap();
        assert!(v.splits);
        assert!(v.section.unwrap().lift().is_zero());

        assert_eq!(splits(r(1), Modulus::new(6)).unwrap_err(), Error::SplitModulus(6));
        assert!(matches!(splits(r(9), Modulus::INTEGERS), Err(Error::RankTooLarge { .. })));
    }

    #[test]
    fn section_from_default_base_is_homomorphic() {
        let v = splits(r(1), Modulus::INTEGERS).unwrap();
        let section = v.section.unwrap();
        let psi = *section.base();
        for seed in 0..100 {
            let a = random_symplectic(r(1), 20, seed);
            let b = random_symplectic(r(1), 20, seed ^ 0xabc);
            let sa = section.apply(&a).unwrap();
            assert!(sa.is_member(&psi).unwrap());
            assert_eq!(sa.mul(&section.apply(&b).unwrap()).unwrap(), section.apply(&a.mul(&b).unwrap()).unwrap());
        }
    }
}
