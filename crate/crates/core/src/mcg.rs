//! Algebraic models of the mapping class groups of `M_r = #_r S^p x S^p`,
//! `p = 3, 7`.
//!
//! The smooth group `Aut(M_r)` is modelled by `Gamma(psi_F)` over `Z`; the
//! homotopy group `E(M_r)` by its image in `Gamma(psi_F, Z_m)`. Composition is
//! the Jacobi product in both cases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jacobi::{default_base, include_fiber, lift, splits_with_base, JacobiElement, SplitVerdict};
use crate::quadratic::QuadraticRefinement;
use crate::symplectic::{Covector, Modulus, Rank, SymplecticMatrix};

/// Sphere dimension and rank of `M_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ManifoldParams {
    p: u32,
    rank: Rank,
}

impl ManifoldParams {
    pub fn new(p: u32, rank: Rank) -> Result<Self> {
        if p != 3 && p != 7 {
            return Err(Error::InvalidSphereDim(p));
        }
        Ok(ManifoldParams { p, rank })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    /// Order of the stable group `S pi_{2p}(S^p)`: 12 for `p = 3`, 120 for `p = 7`.
    pub fn c(&self) -> u64 {
        if self.p == 3 {
            12
        } else {
            120
        }
    }

    /// Default homotopy modulus `2c`, whose reduction kernel on `2H*` is `2cH*`.
    pub fn default_homotopy_modulus(&self) -> Modulus {
        Modulus::new(2 * self.c())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `Aut(M_r)`, coefficients in `Z`.
    Smooth,
    /// `E(M_r)`, coefficients in `Z_m`.
    Homotopy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwistKind {
    /// Twist about the sphere representing `u_i`; sets `x(v_i)`.
    U,
    /// Twist about the sphere representing `v_i`; sets `x(u_i)`.
    V,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCGModel {
    params: ManifoldParams,
    flavor: Flavor,
    modulus: Modulus,
    base: QuadraticRefinement,
}

/// `Aut(M_r) = Gamma(psi_F)` with the all-zero `psi_F`.
pub fn aut_model(p: u32, rank: Rank) -> Result<MCGModel> {
    let params = ManifoldParams::new(p, rank)?;
    Ok(MCGModel { params, flavor: Flavor::Smooth, modulus: Modulus::INTEGERS, base: default_base(rank)? })
}

/// `E(M_r)` as the reduction of [`aut_model`] modulo `2c`.
pub fn homotopy_model(p: u32, rank: Rank) -> Result<MCGModel> {
    let params = ManifoldParams::new(p, rank)?;
    homotopy_model_with_modulus(p, rank, params.default_homotopy_modulus())
}

/// `E(M_r)` with an explicit modulus, e.g. `c` itself.
pub fn homotopy_model_with_modulus(p: u32, rank: Rank, modulus: Modulus) -> Result<MCGModel> {
    let params = ManifoldParams::new(p, rank)?;
    if !modulus.get().is_multiple_of(4) {
        return Err(Error::SplitModulus(modulus.get()));
    }
    Ok(MCGModel { params, flavor: Flavor::Homotopy, modulus, base: default_base(rank)? })
}

impl MCGModel {
    pub fn params(&self) -> &ManifoldParams {
        &self.params
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rank(&self) -> Rank {
        self.params.rank
    }

    pub fn base(&self) -> &QuadraticRefinement {
        &self.base
    }

    /// The same model over a different base refinement (another framing).
    pub fn with_base(&self, base: QuadraticRefinement) -> Result<MCGModel> {
        crate::symplectic::check_rank(self.rank(), base.rank())?;
        Ok(MCGModel { base, ..self.clone() })
    }

    pub fn identity(&self) -> JacobiElement {
        JacobiElement::identity(self.rank(), self.modulus)
    }

    pub fn contains(&self, g: &JacobiElement) -> Result<bool> {
        Ok(g.rank() == self.rank() && g.modulus() == self.modulus && g.is_member(&self.base)?)
    }

    /// Validated constructor for an element of the model.
    pub fn element(&self, x: Covector, a: SymplecticMatrix) -> Result<JacobiElement> {
        let g = JacobiElement::new(x.reduce(self.modulus)?, a)?;
        if !self.contains(&g)? {
            return Err(Error::NotMember);
        }
        Ok(g)
    }

    /// A preimage of `A` under the projection to `Sp(2r, Z)`.
    pub fn lift(&self, a: &SymplecticMatrix) -> Result<JacobiElement> {
        lift(&self.base, a, self.modulus)
    }

    /// The fiber element `(x, Id)` for `x in 2H*_m`.
    pub fn fiber_element(&self, x: &Covector) -> Result<JacobiElement> {
        include_fiber(&x.reduce(self.modulus)?)
    }

    /// Algebraic image of the Dehn twist `f_alpha`, `alpha in 2Z`, about the
    /// sphere representing `u_i` (kind `U`, sets `x(v_i) = alpha`) or `v_i`
    /// (kind `V`, sets `x(u_i) = alpha`). `i` is 1-based.
    pub fn dehn_twist(&self, i: usize, kind: TwistKind, alpha: &BigInt) -> Result<JacobiElement> {
        let r = self.rank().get();
        if i == 0 || i > r {
            return Err(Error::IndexOutOfRange { index: i, rank: r });
        }
        if alpha.is_odd() {
            return Err(Error::OddTwist);
        }
        let mut coords = vec![BigInt::zero(); self.rank().dim()];
        let slot = match kind {
            TwistKind::U => 2 * (i - 1) + 1,
            TwistKind::V => 2 * (i - 1),
        };
        coords[slot] = alpha.clone();
        include_fiber(&Covector::new(coords, self.modulus)?)
    }

    /// Splitting verdict for this model's extension.
    pub fn split_verdict(&self) -> Result<SplitVerdict> {
        splits_with_base(&self.base, self.modulus)
    }
}

/// The quotient `Aut(M_r) -> E(M_r)`: reduction of the covector modulo `m_h`.
pub fn to_homotopy(smooth: &MCGModel, homotopy: &MCGModel, g: &JacobiElement) -> Result<JacobiElement> {
    if smooth.flavor != Flavor::Smooth || homotopy.flavor != Flavor::Homotopy {
        return Err(Error::ModelMismatch("expected a smooth source and a homotopy target"));
    }
    if smooth.params != homotopy.params || smooth.base != homotopy.base {
        return Err(Error::ModelMismatch("source and target describe different manifolds or framings"));
    }
    if !smooth.contains(g)? {
        return Err(Error::NotMember);
    }
    g.reduce_modulus(homotopy.modulus)
}

/// Generator `k` of the kernel of `to_homotopy` on the fiber: the kernel is
/// `k H*` with `k = lcm(2, m_h)` in every coordinate.
pub fn fiber_kernel_exponent(homotopy: &MCGModel) -> BigInt {
    BigInt::from(homotopy.modulus.get()).lcm(&BigInt::from(2))
}

/// Order of the homotopy model's fiber `2H*_m`: `(m/2)^{2r}`.
pub fn fiber_order(homotopy: &MCGModel) -> BigInt {
    BigInt::from(homotopy.modulus.get() / 2).pow(homotopy.rank().dim() as u32)
}

/// A row of the Pontrjagin coefficient table `a_j c_j (2j - 1)!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PontryaginCoefficient {
    pub j: u32,
    /// `(3 - (-1)^j) / 2`
    pub a: u32,
    /// order of the cokernel of `pi_{4j-1}(SO_{4j-1}) -> pi_{4j-1}(SO)`
    pub c: u32,
    pub factorial: BigInt,
    pub value: BigInt,
}

/// `a_j c_j (2j-1)!`, the positive choice of the undetermined sign.
pub fn pontryagin_coefficient(j: u32) -> Result<PontryaginCoefficient> {
    if j < 1 {
        return Err(Error::InvalidCoefficientIndex);
    }
    let a = if j.is_multiple_of(2) { 1 } else { 2 };
    let c = if j <= 2 { 2 } else { 1 };
    let factorial: BigInt = (1..=(2 * j - 1)).fold(BigInt::one(), |acc, k| acc * k);
    let value = &factorial * a * c;
    Ok(PontryaginCoefficient { j, a, c, factorial, value })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub params: ManifoldParams,
    pub smooth: SplitVerdict,
    pub homotopy: SplitVerdict,
}

impl TheoremVerdict {
    /// Both verdicts agree and equal `r = 1`.
    pub fn consistent(&self) -> bool {
        let expected = self.params.rank().get() == 1;
        self.smooth.splits == expected && self.homotopy.splits == expected
    }
}

/// Splitting verdicts for the smooth and homotopy extensions of `M_r`.
pub fn splitting_theorem_verdict(p: u32, rank: Rank) -> Result<TheoremVerdict> {
    splitting_theorem_verdict_with_modulus(p, rank, None)
}

pub fn splitting_theorem_verdict_with_modulus(p: u32, rank: Rank, homotopy_modulus: Option<Modulus>) -> Result<TheoremVerdict> {
    let params = ManifoldParams::new(p, rank)?;
    let smooth = aut_model(p, rank)?;
    let homotopy = match homotopy_modulus {
        Some(m) => homotopy_model_with_modulus(p, rank, m)?,
        None => homotopy_model(p, rank)?,
    };
    Ok(TheoremVerdict { params, smooth: smooth.split_verdict()?, homotopy: homotopy.split_verdict()? })
}
