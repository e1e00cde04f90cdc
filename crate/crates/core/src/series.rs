//! Truncated formal power series in the deformation parameter `λ`.
//!
//! A [`FormalSeries`] stores exactly `K` coefficients `a_0, …, a_{K-1}` and
//! represents the class of `Σ λʳ aᵣ` modulo `λᴷ`. Real series are ordered
//! by the sign of their lowest nonzero coefficient, which makes `ℝ[[λ]]` an
//! ordered (non-Archimedean) ring.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Truncation order used when nothing else is configured.
pub const DEFAULT_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<T> {
    coeffs: Vec<T>,
}

/// Tri-state ordered-ring sign of a real series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignVerdict {
    Positive,
    Negative,
    /// Every stored coefficient vanishes; a nonzero tail beyond `λᴷ` is
    /// not excluded.
    ZeroUpToK,
}

impl SignVerdict {
    pub fn is_nonnegative(self) -> bool {
        !matches!(self, SignVerdict::Negative)
    }

    /// Product rule for signs of nonzero elements.
    pub fn times(self, other: SignVerdict) -> SignVerdict {
        use SignVerdict::*;
        match (self, other) {
            (ZeroUpToK, _) | (_, ZeroUpToK) => ZeroUpToK,
            (a, b) if a == b => Positive,
            _ => Negative,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SignVerdict::Positive => "positive",
            SignVerdict::Negative => "negative",
            SignVerdict::ZeroUpToK => "zero-up-to-K",
        }
    }
}

impl std::fmt::Display for SignVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exponent accepted by [`FormalSeries::sqrt_binomial`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootExponent {
    Half,
    MinusHalf,
}

impl RootExponent {
    fn value(self) -> Rational {
        match self {
            RootExponent::Half => Rational::new(1.into(), 2.into()),
            RootExponent::MinusHalf => Rational::new((-1).into(), 2.into()),
        }
    }
}

/// The four truncated ring operations of [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Scale `b` by the constant coefficient of `a`.
    ScalarMul,
}

/// Strict binary arithmetic: both operands must carry the same order.
pub fn arith<T: Scalar>(
    op: ArithOp,
    a: &FormalSeries<T>,
    b: &FormalSeries<T>,
) -> Result<FormalSeries<T>> {
    if a.order() != b.order() {
        return Err(Error::TruncationMismatch { left: a.order(), right: b.order() });
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::ScalarMul => b.scale(a.coeff(0)),
    })
}

/// `binom(e, k)` for rational `e`.
pub fn binomial(e: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        let j = Rational::from_integer(j.into());
        acc = acc * (e - &j) / (j + Rational::one());
    }
    acc
}

impl<T: Scalar> FormalSeries<T> {
    /// Builds a series from its coefficients; the truncation order is the
    /// number of coefficients.
    ///
    /// # Panics
    /// Panics if `coeffs` is empty (orders start at 1).
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be positive");
        FormalSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(vec![T::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c λʲ`, which is zero when `j ≥ order`.
    pub fn monomial(c: T, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power < order {
            s.coeffs[power] = c;
        }
        s
    }

    /// The deformation parameter itself.
    pub fn lambda(order: usize) -> Self {
        Self::monomial(T::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, r: usize) -> &T {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_real)
    }

    /// Drops coefficients at and above `order`. Never extends.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order()).max(1);
        Self::from_coeffs(self.coeffs[..order].to_vec())
    }

    /// Re-expresses an exactly known (polynomial) series at another order,
    /// padding with zeros when growing.
    pub fn resized(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(1), T::zero());
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Coefficientwise complex conjugation.
    pub fn conj(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(Scalar::conj).collect())
    }

    /// Multiplies by `λʲ`.
    pub fn shift(&self, j: usize) -> Self {
        let k = self.order();
        let mut out = vec![T::zero(); k];
        if j < k {
            out[j..].clone_from_slice(&self.coeffs[..k - j]);
        }
        Self::from_coeffs(out)
    }

    /// Divides by `λʲ`, dropping the `j` lowest coefficients. The top `j`
    /// coefficients of the result are unknown and returned as zero.
    pub fn unshift(&self, j: usize) -> Self {
        let k = self.order();
        let mut out = vec![T::zero(); k];
        if j < k {
            out[..k - j].clone_from_slice(&self.coeffs[j..]);
        }
        Self::from_coeffs(out)
    }

    /// Value at `λ = 0`.
    pub fn classical_limit(&self) -> T {
        self.coeffs[0].clone()
    }

    /// Ordered-ring sign: decided by the lowest nonzero coefficient.
    pub fn sign(&self) -> Result<SignVerdict> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        Ok(match self.valuation() {
            None => SignVerdict::ZeroUpToK,
            Some(r) => match self.coeffs[r].real_sign() {
                Some(Ordering::Greater) => SignVerdict::Positive,
                _ => SignVerdict::Negative,
            },
        })
    }

    /// Multiplicative inverse in `T[[λ]]/λᴷ`.
    pub fn invert(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0].inverse().ok_or(Error::NotUnit)?;
        let k = self.order();
        let mut out: Vec<T> = Vec::with_capacity(k);
        out.push(a0_inv.clone());
        for r in 1..k {
            let mut acc = T::zero();
            for j in 1..=r {
                acc = acc.add_ref(&self.coeffs[j].mul_ref(&out[r - j]));
            }
            out.push(acc.mul_ref(&a0_inv).neg_ref());
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(1 + x)^{±1/2}` through the binomial series; `x = a - 1` is `O(λ)`,
    /// so `K` terms suffice.
    pub fn sqrt_binomial(&self, exponent: RootExponent) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadLeadingTerm);
        }
        let k = self.order();
        let mut x = self.clone();
        x.coeffs[0] = T::zero();
        let e = exponent.value();
        let mut out = Self::zero(k);
        let mut power = Self::one(k);
        for n in 0..k {
            out = &out + &power.scale(&T::from_rational(binomial(&e, n)));
            power = &power * &x;
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let k = self.order().min(other.order());
        Self::from_coeffs((0..k).map(|r| f(&self.coeffs[r], &other.coeffs[r])).collect())
    }
}

impl<T: Scalar> FormalSeries<T> {
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        arith(ArithOp::Add, self, other)
    }
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        arith(ArithOp::Sub, self, other)
    }
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        arith(ArithOp::Mul, self, other)
    }
}

// Operator impls propagate the smaller truncation order; use `arith` for
// the strict contract.
impl<'a, T: Scalar> Add<&'a FormalSeries<T>> for &'a FormalSeries<T> {
    type Output = FormalSeries<T>;
    fn add(self, rhs: &'a FormalSeries<T>) -> FormalSeries<T> {
        self.zip_with(rhs, T::add_ref)
    }
}

impl<'a, T: Scalar> Sub<&'a FormalSeries<T>> for &'a FormalSeries<T> {
    type Output = FormalSeries<T>;
    fn sub(self, rhs: &'a FormalSeries<T>) -> FormalSeries<T> {
        self.zip_with(rhs, T::sub_ref)
    }
}

impl<'a, T: Scalar> Mul<&'a FormalSeries<T>> for &'a FormalSeries<T> {
    type Output = FormalSeries<T>;
    fn mul(self, rhs: &'a FormalSeries<T>) -> FormalSeries<T> {
        let k = self.order().min(rhs.order());
        let mut out = vec![T::zero(); k];
        for (i, a) in self.coeffs.iter().take(k).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(k - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        FormalSeries::from_coeffs(out)
    }
}

impl<T: Scalar> Neg for &FormalSeries<T> {
    type Output = FormalSeries<T>;
    fn neg(self) -> FormalSeries<T> {
        FormalSeries::from_coeffs(self.coeffs.iter().map(Scalar::neg_ref).collect())
    }
}

impl<T: Scalar> Add for FormalSeries<T> {
    type Output = FormalSeries<T>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for FormalSeries<T> {
    type Output = FormalSeries<T>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for FormalSeries<T> {
    type Output = FormalSeries<T>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for FormalSeries<T> {
    type Output = FormalSeries<T>;
    fn neg(self) -> Self {
        -&self
    }
}
