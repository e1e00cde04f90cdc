//! Exact coefficient fields.
//!
//! Everything above this module is written against [`Scalar`], which is
//! implemented for the rationals and the Gaussian rationals. Both are exact;
//! there is intentionally no floating point implementation because the
//! ordered-ring sign of a series is meaningless under rounding.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational, always stored in lowest terms.
pub type Rational = BigRational;

/// `a + ib` with `a, b` rational.
pub type GaussianRational = Complex<BigRational>;

/// An exact field with an involution, usable as series coefficients.
pub trait Scalar:
    Clone + Debug + PartialEq + Zero + One + Send + Sync + 'static
{
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Complex conjugation (identity on real fields).
    fn conj(&self) -> Self;
    fn from_rational(r: Rational) -> Self;
    fn re(&self) -> Rational;
    fn im(&self) -> Rational;

    fn is_real(&self) -> bool {
        self.im().is_zero()
    }

    /// Sign of a real scalar; `None` if the imaginary part is nonzero.
    fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        Some(self.re().cmp(&Rational::zero()))
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }
}

/// Scalars that contain the imaginary unit.
pub trait ComplexScalar: Scalar {
    fn i() -> Self;
    fn from_parts(re: Rational, im: Rational) -> Self;
}

impl Scalar for Rational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn re(&self) -> Rational {
        self.clone()
    }
    fn im(&self) -> Rational {
        Rational::zero()
    }
}

impl Scalar for GaussianRational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        // Skip the cross terms in the (very common) real case.
        if self.im.is_zero() && other.im.is_zero() {
            return Complex::new(&self.re * &other.re, Rational::zero());
        }
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Complex::new(&self.re / &norm, -(&self.im / &norm)))
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }
    fn re(&self) -> Rational {
        self.re.clone()
    }
    fn im(&self) -> Rational {
        self.im.clone()
    }
}

impl ComplexScalar for GaussianRational {
    fn i() -> Self {
        Complex::new(Rational::zero(), Rational::one())
    }
    fn from_parts(re: Rational, im: Rational) -> Self {
        Complex::new(re, im)
    }
}

/// Integer test used by the class checker and the printer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// `|r|` for rationals.
pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
