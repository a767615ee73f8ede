//! Batch runner for the invariant suites of every module.
//!
//! Each suite draws from its own ChaCha stream derived from the run seed, so
//! a fixed `(rank, samples, seed)` always yields the same counts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::{BitCovector, BitMatrix};
use crate::cocycle::{
    check_cocycle_law, coboundary_at_bits, minus_id_constraint, principal_at, principal_at_bits, principal_coboundary_witness, Cocycle,
    TabulatedCocycle,
};
use crate::error::Result;
use crate::jacobi::{splits, JacobiElement};
use crate::quadratic::{enumerate_refinements, QuadraticRefinement};
use crate::sample;
use crate::symplectic::{Covector, Modulus, Rank, SymplecticMatrix, Vector};

/// Largest rank accepted by [`run`].
pub const VERIFY_RANK_LIMIT: usize = 6;
/// Largest rank for which the torsor and `-Id` suites run exhaustively.
pub const EXHAUSTIVE_RANK_LIMIT: usize = 3;
/// Coefficient moduli exercised by the group-level suites.
pub const MODULI: [u64; 4] = [0, 4, 24, 240];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub rank: Rank,
    pub samples: usize,
    pub seed: u64,
    /// Adds a suite that feeds a tabulated non-cocycle to the cocycle checker.
    pub inject_negative_control: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: u64,
    pub failures: u64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

struct Tally {
    name: &'static str,
    checks: u64,
    failures: u64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checks: 0, failures: 0 }
    }

    fn check(&mut self, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
    }

    /// Errors count as failures.
    fn check_result(&mut self, ok: Result<bool>) {
        self.check(ok.unwrap_or(false));
    }

    fn finish(self) -> SuiteResult {
        SuiteResult { name: self.name, checks: self.checks, failures: self.failures }
    }
}

fn stream(seed: u64, suite: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite);
    rng
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let rank = config.rank;
    rank.ensure_at_most(VERIFY_RANK_LIMIT)?;
    let n = config.samples;
    let seed = config.seed;
    let mut suites = vec![
        cocycle_law_suite(rank, n, &mut stream(seed, 1))?,
        torsor_suite(rank, n, &mut stream(seed, 2))?,
        additivity_suite(rank, n, &mut stream(seed, 3))?,
        minus_id_suite(rank, n, &mut stream(seed, 4))?,
        group_axiom_suite(rank, n, &mut stream(seed, 5))?,
        reframe_suite(rank, n, &mut stream(seed, 6))?,
        section_suite(rank, n, &mut stream(seed, 7))?,
    ];
    if config.inject_negative_control {
        suites.push(negative_control_suite(rank)?);
    }
    Ok(VerifyReport { config: config.clone(), suites })
}

/// `s(AB) = s(A).B + s(B)` for principal cocycles and coboundaries.
pub fn cocycle_law_suite(rank: Rank, samples: usize, rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let mut t = Tally::new("cocycle-law");
    let id = SymplecticMatrix::identity(rank);
    for i in 0..samples {
        let a = sample::matrix(rng, rank);
        let b = sample::matrix(rng, rank);
        let psi = sample::refinement(rng, rank)?;
        let principal = Cocycle::Principal(psi);
        t.check_result(check_cocycle_law(&principal, &a, &b));
        t.check_result(principal.eval(&id).map(|v| v.is_zero()));
        let m = Modulus::new(MODULI[i % MODULI.len()]);
        let cob = Cocycle::Coboundary(sample::covector(rng, rank, m));
        t.check_result(check_cocycle_law(&cob, &a, &b));
    }
    Ok(t.finish())
}

/// `x -> psi_0 + x` is a bijection `H*_2 -> Psi` and `difference` inverts `translate`.
pub fn torsor_suite(rank: Rank, samples: usize, rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let mut t = Tally::new("torsor");
    if rank.get() <= EXHAUSTIVE_RANK_LIMIT {
        let all = enumerate_refinements(rank)?;
        let base = QuadraticRefinement::zero(rank)?;
        let mut hit = vec![false; all.len()];
        for pattern in &all {
            let x = BitCovector::new(rank, pattern.values())?;
            let image = base.translate(&x)?;
            let slot = &mut hit[image.values() as usize];
            t.check(!*slot);
            *slot = true;
        }
        t.check(hit.iter().all(|&h| h));
        for psi in &all {
            for pattern in &all {
                let x = BitCovector::new(rank, pattern.values())?;
                t.check_result(psi.translate(&x).and_then(|p| p.difference(psi)).map(|d| d == x));
            }
        }
    } else {
        for _ in 0..samples {
            let psi = sample::refinement(rng, rank)?;
            let x = sample::bit_covector(rng, rank)?;
            t.check_result(psi.translate(&x).and_then(|p| p.difference(&psi)).map(|d| d == x));
            let other = sample::refinement(rng, rank)?;
            t.check_result(other.difference(&psi).and_then(|d| psi.translate(&d)).map(|p| p == other));
        }
    }
    Ok(t.finish())
}

/// `s(psi + x) = s(psi) + s(x)` and `s(psi)(-Id) = 0`.
pub fn additivity_suite(rank: Rank, samples: usize, rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let mut t = Tally::new("additivity");
    let neg = SymplecticMatrix::neg_identity(rank);
    if rank.get() <= EXHAUSTIVE_RANK_LIMIT {
        let all = enumerate_refinements(rank)?;
        let mats: Vec<BitMatrix> = (0..samples.clamp(1, 8)).map(|_| sample::matrix(rng, rank).reduce_mod2()).collect::<Result<_>>()?;
        for psi in &all {
            t.check_result(principal_at(psi, &neg).map(|v| v.is_zero()));
            for pattern in &all {
                let x = BitCovector::new(rank, pattern.values())?;
                for a in &mats {
                    t.check_result(additivity_holds(psi, &x, a));
                }
            }
        }
    }
    for _ in 0..samples {
        let psi = sample::refinement(rng, rank)?;
        let x = sample::bit_covector(rng, rank)?;
        let a = sample::matrix(rng, rank).reduce_mod2()?;
        t.check_result(additivity_holds(&psi, &x, &a));
        t.check_result(principal_at(&psi, &neg).map(|v| v.is_zero()));
    }
    Ok(t.finish())
}

pub(crate) fn additivity_holds(psi: &QuadraticRefinement, x: &BitCovector, a: &BitMatrix) -> Result<bool> {
    let lhs = principal_at_bits(&psi.translate(x)?, a)?;
    let rhs = principal_at_bits(psi, a)?.add(&coboundary_at_bits(x, a)?)?;
    Ok(lhs == rhs)
}

/// `2 s(A) = -(s(-Id).A - s(-Id))` for coboundaries at every modulus.
pub fn minus_id_suite(rank: Rank, samples: usize, rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let mut t = Tally::new("minus-id");
    for &m in &MODULI {
        for _ in 0..samples {
            let s = Cocycle::Coboundary(sample::covector(rng, rank, Modulus::new(m)));
            let a = sample::matrix(rng, rank);
            t.check_result(minus_id_constraint(&s, &a));
        }
    }
    Ok(t.finish())
}

/// Associativity, identity, inverses and closure of `Gamma(psi, C)`.
pub fn group_axiom_suite(rank: Rank, samples: usize, rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let mut t = Tally::new("group-axioms");
    for &m in &MODULI {
        let m = Modulus::new(m);
        let id = JacobiElement::identity(rank, m);
        for _ in 0..samples {
            let g = sample::element(rng, rank, m);
            let h = sample::element(rng, rank, m);
            let k = sample::element(rng, rank, m);
            t.check_result(associative(&g, &h, &k));
            t.check_result(g.mul(&id).map(|p| p == g));
            t.check_result(id.mul(&g).map(|p| p == g));
            t.check_result(g.mul(&g.inverse()).map(|p| p.is_identity()));
            t.check_result(g.inverse().mul(&g).map(|p| p.is_identity()));

            let psi = sample::refinement(rng, rank)?;
            let a = sample::member(rng, &psi, m)?;
            let b = sample::member(rng, &psi, m)?;
            t.check_result(a.mul(&b).and_then(|p| p.is_member(&psi)));
            t.check_result(a.inverse().is_member(&psi));
        }
    }
    Ok(t.finish())
}

fn associative(g: &JacobiElement, h: &JacobiElement, k: &JacobiElement) -> Result<bool> {
    Ok(g.mul(h)?.mul(k)? == g.mul(&h.mul(k)?)?)
}

/// Conjugation by `(y, Id)` carries `Gamma(psi, C)` onto `Gamma(psi + y-bar, C)`.
pub fn reframe_suite(rank: Rank, samples: usize, rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let mut t = Tally::new("reframe");
    for &m in &MODULI {
        let m = Modulus::new(m);
        for _ in 0..samples {
            let psi = sample::refinement(rng, rank)?;
            let g = sample::member(rng, &psi, m)?;
            let h = sample::member(rng, &psi, m)?;
            let y = sample::covector(rng, rank, m);
            let shifted = psi.translate(&y.reduce_mod2()?)?;
            t.check_result(g.reframe(&y).and_then(|r| r.is_member(&shifted)));
            t.check_result(reframe_is_homomorphic(&g, &h, &y));
            t.check_result(g.reframe(&y).and_then(|r| r.reframe(&y.neg())).map(|back| back == g));
        }
    }
    Ok(t.finish())
}

fn reframe_is_homomorphic(g: &JacobiElement, h: &JacobiElement, y: &Covector) -> Result<bool> {
    Ok(g.mul(h)?.reframe(y)? == g.reframe(y)?.mul(&h.reframe(y)?)?)
}

/// For `r = 1`, the emitted section is a homomorphic right inverse of the
/// projection; for `r > 1`, no refinement is fixed and nothing splits.
pub fn section_suite(rank: Rank, samples: usize, rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let mut t = Tally::new("section");
    for &m in &MODULI {
        let verdict = splits(rank, Modulus::new(m))?;
        t.check(verdict.splits == (rank.get() == 1));
        let Some(section) = verdict.section else {
            t.check(verdict.candidates_checked == 1u64 << rank.dim());
            continue;
        };
        let psi = *section.base();
        for _ in 0..samples {
            let a = sample::matrix(rng, rank);
            let b = sample::matrix(rng, rank);
            t.check_result(section_homomorphic(&section, &psi, &a, &b));
        }
    }
    if rank.get() > 1 && rank.get() <= 4 {
        for psi in enumerate_refinements(rank)? {
            t.check_result(principal_coboundary_witness(&psi).map(|w| w.is_none()));
        }
    }
    Ok(t.finish())
}

fn section_homomorphic(section: &crate::jacobi::Section, psi: &QuadraticRefinement, a: &SymplecticMatrix, b: &SymplecticMatrix) -> Result<bool> {
    let sa = section.apply(a)?;
    let sb = section.apply(b)?;
    let sab = section.apply(&a.mul(b)?)?;
    Ok(sa.mul(&sb)? == sab && sa.is_member(psi)? && sa.project() == a)
}

/// A table with `s(T) = 0` but `s(T^2) != 0`; the cocycle law must reject it.
pub fn negative_control_suite(rank: Rank) -> Result<SuiteResult> {
    let mut t = Tally::new("negative-control");
    let m = Modulus::new(4);
    let tv = SymplecticMatrix::transvection(&Vector::u(rank, 0)?);
    let mut table = TabulatedCocycle::new(rank, m);
    table.insert(tv.clone(), Covector::zero(rank, m))?;
    let mut bad = Covector::zero(rank, m).coords().to_vec();
    bad[0] = 1.into();
    table.insert(tv.mul(&tv)?, Covector::new(bad, m)?)?;
    t.check_result(check_cocycle_law(&Cocycle::Tabulated(table), &tv, &tv));
    Ok(t.finish())
}
