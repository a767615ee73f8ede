//! Exact linear algebra for the hyperbolic form on `H = Z^{2r}`.
//!
//! Coordinates are always taken in the ordered basis `(u_1, v_1, ..., u_r, v_r)`
//! with `phi(u_i, v_i) = +1`, so the Gram matrix `J` is block diagonal with
//! blocks `[[0, 1], [-1, 0]]`. Matrices act on column vectors from the left
//! (column `j` is the image of basis vector `e_j`); covectors are rows acted
//! on from the right, `x . A = x o A`.
//!
//! All integers are arbitrary precision, so no operation here can overflow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::{BitCovector, BitMatrix, BitVector};
use crate::error::{Error, Result};

/// Number of `S^p x S^p` summands; the lattice has dimension `2r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(usize);

impl Rank {
    pub fn new(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Rank(r))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Dimension `2r` of the underlying lattice.
    pub fn dim(self) -> usize {
        2 * self.0
    }

    /// Fails with [`Error::RankTooLarge`] when `r > limit`.
    pub fn ensure_at_most(self, limit: usize) -> Result<()> {
        if self.0 > limit {
            Err(Error::RankTooLarge { rank: self.0, limit })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn check_rank(left: Rank, right: Rank) -> Result<()> {
    if left != right {
        Err(Error::RankMismatch { left: left.0, right: right.0 })
    } else {
        Ok(())
    }
}

/// Coefficient modulus. `0` stands for the integers themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub const INTEGERS: Modulus = Modulus(0);
    pub const TWO: Modulus = Modulus(2);

    pub fn new(m: u64) -> Self {
        Modulus(m)
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 == 0
    }

    /// True when the mod-2 reduction `H*_m -> H*_2` exists.
    pub fn is_even_or_integral(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Canonical representative: unchanged for `Z`, otherwise in `[0, m)`.
    pub fn reduce(self, value: &BigInt) -> BigInt {
        if self.0 == 0 {
            value.clone()
        } else {
            value.mod_floor(&BigInt::from(self.0))
        }
    }

    /// Whether reduction from `self` to `target` is well defined.
    pub fn reduces_to(self, target: Modulus) -> bool {
        match (self.0, target.0) {
            (0, _) => true,
            (_, 0) => false,
            (m, t) => m % t == 0,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "Z")
        } else {
            write!(f, "Z/{}", self.0)
        }
    }
}

fn check_modulus(left: Modulus, right: Modulus) -> Result<()> {
    if left != right {
        Err(Error::ModulusMismatch { left: left.0, right: right.0 })
    } else {
        Ok(())
    }
}

fn rank_of_len(len: usize) -> Result<Rank> {
    if !len.is_multiple_of(2) {
        return Err(Error::OddLength(len));
    }
    Rank::new(len / 2)
}

/// Sign of the Gram matrix entry `J[i][partner(i)]`.
fn form_sign(i: usize) -> i32 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Index of the hyperbolic partner of basis vector `i` (`u_k <-> v_k`).
fn partner(i: usize) -> usize {
    i ^ 1
}

/// An element of `H = Z^{2r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    coords: Vec<BigInt>,
}

impl Vector {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        rank_of_len(coords.len())?;
        Ok(Vector { coords })
    }

    pub fn from_i64s(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: Rank) -> Self {
        Vector { coords: vec![BigInt::zero(); rank.dim()] }
    }

    /// Basis vector `e_index` in the flat ordering `(u_1, v_1, ...)`.
    pub fn basis(rank: Rank, index: usize) -> Result<Self> {
        if index >= rank.dim() {
            return Err(Error::IndexOutOfRange { index, rank: rank.get() });
        }
        let mut v = Self::zero(rank);
        v.coords[index] = BigInt::one();
        Ok(v)
    }

    /// `u_i`, zero-based.
    pub fn u(rank: Rank, i: usize) -> Result<Self> {
        if i >= rank.get() {
            return Err(Error::IndexOutOfRange { index: i, rank: rank.get() });
        }
        Self::basis(rank, 2 * i)
    }

    /// `v_i`, zero-based.
    pub fn v(rank: Rank, i: usize) -> Result<Self> {
        if i >= rank.get() {
            return Err(Error::IndexOutOfRange { index: i, rank: rank.get() });
        }
        Self::basis(rank, 2 * i + 1)
    }

    pub fn rank(&self) -> Rank {
        Rank(self.coords.len() / 2)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        check_rank(self.rank(), other.rank())?;
        Ok(Vector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn neg(&self) -> Vector {
        Vector { coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Vector {
        Vector { coords: self.coords.iter().map(|a| a * k).collect() }
    }

    pub fn reduce_mod2(&self) -> Result<BitVector> {
        BitVector::from_parities(self.rank(), self.coords.iter().map(BigInt::is_odd))
    }
}

/// The intersection form `phi(v, w) = sum_i (a_i b'_i - b_i a'_i)`.
pub fn phi(v: &Vector, w: &Vector) -> Result<BigInt> {
    check_rank(v.rank(), w.rank())?;
    Ok(phi_slices(&v.coords, &w.coords))
}

fn phi_slices(v: &[BigInt], w: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for k in 0..v.len() / 2 {
        let (a, b) = (&v[2 * k], &v[2 * k + 1]);
        let (a2, b2) = (&w[2 * k], &w[2 * k + 1]);
        if !a.is_zero() && !b2.is_zero() {
            acc += a * b2;
        }
        if !b.is_zero() && !a2.is_zero() {
            acc -= b * a2;
        }
    }
    acc
}

/// An element of `H*_m = Hom(Z^{2r}, Z_m)`, written as a row vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Covector {
    coords: Vec<BigInt>,
    modulus: Modulus,
}

impl Covector {
    /// Builds a covector, reducing every coordinate into `[0, m)` when `m > 0`.
    pub fn new(coords: Vec<BigInt>, modulus: Modulus) -> Result<Self> {
        rank_of_len(coords.len())?;
        let coords = coords.iter().map(|c| modulus.reduce(c)).collect();
        Ok(Covector { coords, modulus })
    }

    pub fn from_i64s(coords: &[i64], modulus: Modulus) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect(), modulus)
    }

    pub fn zero(rank: Rank, modulus: Modulus) -> Self {
        Covector { coords: vec![BigInt::zero(); rank.dim()], modulus }
    }

    /// Lifts a mod-2 covector to coordinates in `{0, 1}` with the given modulus.
    pub fn lift_bits(bits: &BitCovector, modulus: Modulus) -> Self {
        let coords = (0..bits.rank().dim()).map(|i| if bits.bit(i) { BigInt::one() } else { BigInt::zero() }).map(|c| modulus.reduce(&c)).collect();
        Covector { coords, modulus }
    }

    pub fn rank(&self) -> Rank {
        Rank(self.coords.len() / 2)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_compatible(&self, other: &Covector) -> Result<()> {
        check_rank(self.rank(), other.rank())?;
        check_modulus(self.modulus, other.modulus)
    }

    pub fn add(&self, other: &Covector) -> Result<Covector> {
        self.check_compatible(other)?;
        let m = self.modulus;
        Ok(Covector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| m.reduce(&(a + b))).collect(), modulus: m })
    }

    pub fn sub(&self, other: &Covector) -> Result<Covector> {
        self.check_compatible(other)?;
        let m = self.modulus;
        Ok(Covector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| m.reduce(&(a - b))).collect(), modulus: m })
    }

    pub fn neg(&self) -> Covector {
        let m = self.modulus;
        Covector { coords: self.coords.iter().map(|a| m.reduce(&-a)).collect(), modulus: m }
    }

    pub fn scale(&self, k: &BigInt) -> Covector {
        let m = self.modulus;
        Covector { coords: self.coords.iter().map(|a| m.reduce(&(a * k))).collect(), modulus: m }
    }

    /// `x(w)`, reduced in the covector's modulus.
    pub fn eval(&self, w: &Vector) -> Result<BigInt> {
        check_rank(self.rank(), w.rank())?;
        let sum: BigInt = self.coords.iter().zip(&w.coords).map(|(a, b)| a * b).sum();
        Ok(self.modulus.reduce(&sum))
    }

    /// The right action `x . A = x o A`; as rows, `(xA)_j = sum_i x_i A_ij`.
    pub fn act(&self, a: &SymplecticMatrix) -> Result<Covector> {
        check_rank(self.rank(), a.rank())?;
        let n = a.dim();
        let mut out = vec![BigInt::zero(); n];
        for (i, xi) in self.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                let aij = a.entry(i, j);
                if !aij.is_zero() {
                    *slot += xi * aij;
                }
            }
        }
        Ok(Covector { coords: out.iter().map(|c| self.modulus.reduce(c)).collect(), modulus: self.modulus })
    }

    /// Coordinatewise reduction to a coarser modulus.
    pub fn reduce(&self, target: Modulus) -> Result<Covector> {
        if !self.modulus.reduces_to(target) {
            return Err(Error::NonDividingModulus { from: self.modulus.get(), to: target.get() });
        }
        Ok(Covector { coords: self.coords.iter().map(|c| target.reduce(c)).collect(), modulus: target })
    }

    /// The reduction `x -> x-bar` into `H*_2`.
    pub fn reduce_mod2(&self) -> Result<BitCovector> {
        if !self.modulus.is_even_or_integral() {
            return Err(Error::OddModulus(self.modulus.get()));
        }
        BitCovector::from_parities(self.rank(), self.coords.iter().map(BigInt::is_odd))
    }

    /// Whether every coordinate is twice a residue, i.e. `x` lies in `2H*_m`.
    ///
    /// Returns the first offending coordinate when it does not.
    pub fn first_odd_coordinate(&self) -> Option<usize> {
        // For even m, x in Z_m is in 2Z_m iff its representative is even.
        // For odd m every residue is a double, but odd moduli never reach here.
        self.coords.iter().position(BigInt::is_odd)
    }
}

/// Dense integer matrix, row-major. Used for shape-checked input before it is
/// certified as symplectic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::BadShape { rows: n_rows, cols: n_cols });
        }
        Ok(IntMatrix { rows: n_rows, cols: n_cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        IntMatrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).map(<[BigInt]>::to_vec).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::BadShape { rows: other.rows, cols: other.cols });
        }
        let mut data = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(IntMatrix { rows: self.rows, cols: other.cols, data })
    }

    fn is_square_even(&self) -> bool {
        self.rows == self.cols && self.rows > 0 && self.rows.is_multiple_of(2)
    }
}

/// Gram matrix `J` of `phi_r`.
pub fn form_matrix(rank: Rank) -> IntMatrix {
    let n = rank.dim();
    let mut data = vec![BigInt::zero(); n * n];
    for i in 0..n {
        data[i * n + partner(i)] = BigInt::from(form_sign(i));
    }
    IntMatrix { rows: n, cols: n, data }
}

/// Exact test of `A^T J A = J`.
pub fn is_symplectic(a: &IntMatrix) -> Result<bool> {
    if !a.is_square_even() {
        return Err(Error::BadShape { rows: a.rows, cols: a.cols });
    }
    let j = form_matrix(Rank(a.rows / 2));
    Ok(a.transpose().mul(&j)?.mul(a)? == j)
}

/// An element of `Aut(phi_r) = Sp(2r, Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix(IntMatrix);

impl SymplecticMatrix {
    pub fn try_new(m: IntMatrix) -> Result<Self> {
        if !is_symplectic(&m)? {
            return Err(Error::NotSymplectic);
        }
        Ok(SymplecticMatrix(m))
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::try_new(IntMatrix::from_i64_rows(rows)?)
    }

    pub fn identity(rank: Rank) -> Self {
        SymplecticMatrix(IntMatrix::identity(rank.dim()))
    }

    pub fn neg_identity(rank: Rank) -> Self {
        let n = rank.dim();
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            m.data[i * n + i] = -BigInt::one();
        }
        SymplecticMatrix(m)
    }

    /// `T_v(w) = w + phi(v, w) v`.
    pub fn transvection(v: &Vector) -> Self {
        Self::identity(v.rank()).left_transvect(v).expect("ranks agree by construction")
    }

    pub fn rank(&self) -> Rank {
        Rank(self.0.rows / 2)
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.0.get(i, j)
    }

    pub fn as_int_matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0 == IntMatrix::identity(self.dim())
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector { coords: (0..self.dim()).map(|i| self.entry(i, j).clone()).collect() }
    }

    pub fn mul(&self, other: &SymplecticMatrix) -> Result<SymplecticMatrix> {
        check_rank(self.rank(), other.rank())?;
        Ok(SymplecticMatrix(self.0.mul(&other.0)?))
    }

    /// `T_v * self`, computed column by column in `O(n^2)`.
    pub fn left_transvect(&self, v: &Vector) -> Result<SymplecticMatrix> {
        check_rank(self.rank(), v.rank())?;
        let n = self.dim();
        let mut out = self.0.clone();
        let mut col = vec![BigInt::zero(); n];
        for j in 0..n {
            for (i, c) in col.iter_mut().enumerate() {
                *c = self.0.get(i, j).clone();
            }
            let t = phi_slices(&v.coords, &col);
            if t.is_zero() {
                continue;
            }
            for i in 0..n {
                if !v.coords[i].is_zero() {
                    out.data[i * n + j] += &t * &v.coords[i];
                }
            }
        }
        Ok(SymplecticMatrix(out))
    }

    /// Exact inverse `A^{-1} = -J A^T J`, i.e. entry `(i, j)` is
    /// `s(i) s(j) A[partner(j)][partner(i)]`.
    pub fn inverse(&self) -> SymplecticMatrix {
        let n = self.dim();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = self.0.get(partner(j), partner(i));
                data.push(if form_sign(i) * form_sign(j) > 0 { e.clone() } else { -e });
            }
        }
        let inv = SymplecticMatrix(IntMatrix { rows: n, cols: n, data });
        debug_assert!(self.mul(&inv).map(|p| p.is_identity()).unwrap_or(false));
        inv
    }

    pub fn apply(&self, w: &Vector) -> Result<Vector> {
        check_rank(self.rank(), w.rank())?;
        let n = self.dim();
        let coords = (0..n).map(|i| (0..n).map(|j| self.0.get(i, j) * &w.coords[j]).sum()).collect();
        Ok(Vector { coords })
    }

    pub fn reduce_mod2(&self) -> Result<BitMatrix> {
        let rank = self.rank();
        let cols = (0..self.dim())
            .map(|j| BitVector::from_parities(rank, (0..self.dim()).map(|i| self.entry(i, j).is_odd())))
            .collect::<Result<Vec<_>>>()?;
        BitMatrix::from_columns(rank, cols.iter().map(BitVector::bits).collect())
    }

    /// Largest absolute entry; handy for diagnostics on long words.
    pub fn max_abs_entry(&self) -> BigInt {
        self.0.data.iter().map(|e| e.abs()).max().unwrap_or_default()
    }
}

/// Draws a generator `u_i`, `v_i`, `u_i + v_j` or `u_i - v_j`.
pub(crate) fn random_generator_vector<R: Rng + ?Sized>(rng: &mut R, rank: Rank) -> Vector {
    let r = rank.get();
    let mut v = Vector::zero(rank);
    match rng.gen_range(0..4) {
        0 => v.coords[2 * rng.gen_range(0..r)] = BigInt::one(),
        1 => v.coords[2 * rng.gen_range(0..r) + 1] = BigInt::one(),
        kind => {
            let i = rng.gen_range(0..r);
            let j = rng.gen_range(0..r);
            v.coords[2 * i] = BigInt::one();
            v.coords[2 * j + 1] = if kind == 2 { BigInt::one() } else { -BigInt::one() };
        }
    }
    v
}

/// A product of `word_length` transvections drawn from `rng`.
pub fn random_symplectic_from<R: Rng + ?Sized>(rng: &mut R, rank: Rank, word_length: usize) -> SymplecticMatrix {
    let mut a = SymplecticMatrix::identity(rank);
    for _ in 0..word_length {
        let v = random_generator_vector(rng, rank);
        a = a.left_transvect(&v).expect("ranks agree by construction");
    }
    a
}

/// Seeded random element of `Sp(2r, Z)`; identical seeds give identical matrices.
pub fn random_symplectic(rank: Rank, word_length: usize, seed: u64) -> SymplecticMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_symplectic_from(&mut rng, rank, word_length)
}
