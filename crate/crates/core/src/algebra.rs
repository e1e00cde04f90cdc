//! `*`-algebras over `R = ℂ(i)[[λ]]/λᴷ` used as base algebras for GNS
//! representations and pre-Hilbert modules.

use std::fmt::{Debug, Display};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::observables::involution;
use crate::poly::Poly;
use crate::star::{star_multiply, StarProductSpec};
use crate::{Observable, Series};

/// An associative `R`-algebra with an anti-linear involution.
pub trait StarAlgebra: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Display + Send + Sync;

    fn order(&self) -> usize;
    fn describe(&self) -> String;
    fn zero(&self) -> Self::Elem;
    /// Multiplicative unit (not necessarily the identity matrix).
    fn unit(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn star(&self, a: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Series, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `λ⁰` part, as an element of the same algebra.
    fn classical_part(&self, a: &Self::Elem) -> Self::Elem;
    /// Whether `(ab)* = b* a*` holds for this product.
    fn is_star_product_hermitian(&self) -> bool;
    fn inverse(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Checks that `a` belongs to this algebra (shape, variables).
    fn validate(&self, a: &Self::Elem) -> Result<()>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// Algebras that are free of finite rank as `R`-modules.
pub trait FiniteBasis: StarAlgebra {
    fn dim(&self) -> usize;
    fn basis(&self) -> Vec<Self::Elem>;
    fn coordinates(&self, a: &Self::Elem) -> Vec<Series>;
    fn from_coordinates(&self, c: &[Series]) -> Self::Elem;
}

/// `R` itself.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarAlgebra {
    pub order: usize,
}

impl StarAlgebra for ScalarAlgebra {
    type Elem = Series;

    fn order(&self) -> usize {
        self.order
    }
    fn describe(&self) -> String {
        format!("C[[l]]/l^{}", self.order)
    }
    fn zero(&self) -> Series {
        Series::zero(self.order)
    }
    fn unit(&self) -> Series {
        Series::one(self.order)
    }
    fn add(&self, a: &Series, b: &Series) -> Series {
        a + b
    }
    fn neg(&self, a: &Series) -> Series {
        -a
    }
    fn mul(&self, a: &Series, b: &Series) -> Series {
        a * b
    }
    fn star(&self, a: &Series) -> Series {
        a.conj()
    }
    fn scale(&self, c: &Series, a: &Series) -> Series {
        c * a
    }
    fn is_zero(&self, a: &Series) -> bool {
        a.is_zero()
    }
    fn classical_part(&self, a: &Series) -> Series {
        Series::constant(a.classical_limit(), self.order)
    }
    fn is_star_product_hermitian(&self) -> bool {
        true
    }
    fn inverse(&self, a: &Series) -> Result<Series> {
        a.invert()
    }
    fn validate(&self, a: &Series) -> Result<()> {
        if a.order() != self.order {
            return Err(Error::TruncationMismatch { left: self.order, right: a.order() });
        }
        Ok(())
    }
}

impl FiniteBasis for ScalarAlgebra {
    fn dim(&self) -> usize {
        1
    }
    fn basis(&self) -> Vec<Series> {
        vec![Series::one(self.order)]
    }
    fn coordinates(&self, a: &Series) -> Vec<Series> {
        vec![a.clone()]
    }
    fn from_coordinates(&self, c: &[Series]) -> Series {
        c[0].clone()
    }
}

/// `Mₘ(R)` with either the matrix product or the deformed product
/// `a ⋆ b = a (1 + λE) b`.
///
/// The deformed product is associative for every `E`; its unit is
/// `(1 + λE)⁻¹` and it is compatible with `a ↦ a*` iff `E = E*`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixAlgebra {
    m: usize,
    order: usize,
    deformation: Option<Matrix>,
    /// `1 + λE` and its inverse, cached.
    twist: Option<(Matrix, Matrix)>,
}

impl MatrixAlgebra {
    pub fn plain(m: usize, order: usize) -> Self {
        MatrixAlgebra { m, order, deformation: None, twist: None }
    }

    pub fn deformed(e: Matrix) -> Result<Self> {
        if !e.is_square() {
            return Err(Error::ShapeMismatch(format!("deformation matrix is {}x{}", e.rows(), e.cols())));
        }
        let (m, order) = (e.rows(), e.order());
        let t = &Matrix::identity(m, order) + &e.scale(&Series::lambda(order));
        let tinv = t.inverse()?;
        Ok(MatrixAlgebra { m, order, deformation: Some(e), twist: Some((t, tinv)) })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn deformation(&self) -> Option<&Matrix> {
        self.deformation.as_ref()
    }

    /// Same algebra at order 1 (the classical limit).
    pub fn classical(&self) -> MatrixAlgebra {
        MatrixAlgebra::plain(self.m, 1)
    }

    pub fn at_order(&self, order: usize) -> Result<MatrixAlgebra> {
        match &self.deformation {
            None => Ok(MatrixAlgebra::plain(self.m, order)),
            Some(e) => MatrixAlgebra::deformed(e.resized(order)),
        }
    }
}

impl StarAlgebra for MatrixAlgebra {
    type Elem = Matrix;

    fn order(&self) -> usize {
        self.order
    }
    fn describe(&self) -> String {
        match &self.deformation {
            None => format!("M{}(C[[l]]/l^{})", self.m, self.order),
            Some(e) => format!("M{}(C[[l]]/l^{}) with a*b = a(1 + l*E)b, E = {}", self.m, self.order, e),
        }
    }
    fn zero(&self) -> Matrix {
        Matrix::zeros(self.m, self.m, self.order)
    }
    fn unit(&self) -> Matrix {
        match &self.twist {
            None => Matrix::identity(self.m, self.order),
            Some((_, tinv)) => tinv.clone(),
        }
    }
    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a + b
    }
    fn neg(&self, a: &Matrix) -> Matrix {
        -a
    }
    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        match &self.twist {
            None => a * b,
            Some((t, _)) => &(a * t) * b,
        }
    }
    fn star(&self, a: &Matrix) -> Matrix {
        a.adjoint()
    }
    fn scale(&self, c: &Series, a: &Matrix) -> Matrix {
        a.scale(c)
    }
    fn is_zero(&self, a: &Matrix) -> bool {
        a.is_zero()
    }
    fn classical_part(&self, a: &Matrix) -> Matrix {
        a.classical_part()
    }
    fn is_star_product_hermitian(&self) -> bool {
        self.deformation.as_ref().is_none_or(Matrix::is_hermitian)
    }
    /// `⋆`-inverse `(1+λE)⁻¹ a⁻¹ (1+λE)⁻¹`.
    fn inverse(&self, a: &Matrix) -> Result<Matrix> {
        let ainv = a.inverse()?;
        Ok(match &self.twist {
            None => ainv,
            Some((_, tinv)) => &(tinv * &ainv) * tinv,
        })
    }
    fn validate(&self, a: &Matrix) -> Result<()> {
        if a.rows() != self.m || a.cols() != self.m {
            return Err(Error::ShapeMismatch(format!("expected {0}x{0}, got {1}x{2}", self.m, a.rows(), a.cols())));
        }
        if a.order() != self.order {
            return Err(Error::TruncationMismatch { left: self.order, right: a.order() });
        }
        Ok(())
    }
}

impl FiniteBasis for MatrixAlgebra {
    fn dim(&self) -> usize {
        self.m * self.m
    }
    /// Matrix units `E₁₁, E₁₂, …` in row-major order.
    fn basis(&self) -> Vec<Matrix> {
        let m = self.m;
        (0..m * m).map(|k| Matrix::unit(m, m, k / m, k % m, self.order)).collect()
    }
    fn coordinates(&self, a: &Matrix) -> Vec<Series> {
        a.to_rows().into_iter().flatten().collect()
    }
    fn from_coordinates(&self, c: &[Series]) -> Matrix {
        let m = self.m;
        Matrix::from_fn(m, m, self.order, |i, j| c[i * m + j].clone())
    }
}

/// Polynomial observables under a star product. Not finite-dimensional.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyStarAlgebra {
    pub spec: StarProductSpec,
}

impl StarAlgebra for PolyStarAlgebra {
    type Elem = Observable;

    fn order(&self) -> usize {
        self.spec.order()
    }
    fn describe(&self) -> String {
        format!("polynomials on R^{} with the {} product, K = {}", 2 * self.spec.n(), self.spec.kind().name(), self.order())
    }
    fn zero(&self) -> Observable {
        Poly::zero(self.spec.vars(), self.order())
    }
    fn unit(&self) -> Observable {
        Poly::one(self.spec.vars(), self.order())
    }
    fn add(&self, a: &Observable, b: &Observable) -> Observable {
        a + b
    }
    fn neg(&self, a: &Observable) -> Observable {
        -a
    }
    fn mul(&self, a: &Observable, b: &Observable) -> Observable {
        star_multiply(&self.spec, a, b).expect("elements validated against the spec")
    }
    fn star(&self, a: &Observable) -> Observable {
        involution(a)
    }
    fn scale(&self, c: &Series, a: &Observable) -> Observable {
        a.scale_series(c)
    }
    fn is_zero(&self, a: &Observable) -> bool {
        a.is_zero()
    }
    fn classical_part(&self, a: &Observable) -> Observable {
        a.lambda_part(0)
    }
    fn is_star_product_hermitian(&self) -> bool {
        !matches!(self.spec.kind(), crate::star::ProductKind::Std)
    }
    /// Only constants with unit value are invertible among polynomials here.
    fn inverse(&self, a: &Observable) -> Result<Observable> {
        if a.terms().any(|(m, _)| !m.is_one()) {
            return Err(Error::NotUnit);
        }
        Ok(Poly::constant(self.spec.vars(), a.constant_term().invert()?))
    }
    fn validate(&self, a: &Observable) -> Result<()> {
        if a.vars() != self.spec.vars() {
            return Err(Error::SignatureMismatch(format!(
                "expected q/p polynomials with n={}, got {}(n={})",
                self.spec.n(),
                a.vars().chart.name(),
                a.vars().n
            )));
        }
        Ok(())
    }
}

/// Checks `(ab)c = a(bc)` on all triples of basis elements.
pub fn is_associative_on_basis<A: FiniteBasis>(alg: &A) -> bool {
    let b = alg.basis();
    b.iter().all(|x| b.iter().all(|y| b.iter().all(|z| alg.mul(&alg.mul(x, y), z) == alg.mul(x, &alg.mul(y, z)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{GaussianRational as C, Scalar};

    const K: usize = 5;

    fn e12() -> Matrix {
        Matrix::unit(2, 2, 0, 1, K)
    }

    #[test]
    fn deformed_product_is_associative_with_twisted_unit() {
        let alg = MatrixAlgebra::deformed(e12()).unwrap();
        assert!(is_associative_on_basis(&alg));
        let u = alg.unit();
        for b in alg.basis() {
            assert_eq!(alg.mul(&u, &b), b);
            assert_eq!(alg.mul(&b, &u), b);
        }
        assert!(!alg.is_star_product_hermitian());
        let herm = MatrixAlgebra::deformed(&e12() + &e12().transpose()).unwrap();
        assert!(herm.is_star_product_hermitian());
        for a in herm.basis() {
            for b in herm.basis() {
                assert_eq!(herm.star(&herm.mul(&a, &b)), herm.mul(&herm.star(&b), &herm.star(&a)));
            }
        }
    }

    #[test]
    fn star_inverse() {
        let alg = MatrixAlgebra::deformed(e12()).unwrap();
        let a = Matrix::from_scalars(&[vec![C::from_i64(2), C::from_i64(1)], vec![C::from_i64(1), C::from_i64(1)]], K).unwrap();
        let ainv = alg.inverse(&a).unwrap();
        assert_eq!(alg.mul(&a, &ainv), alg.unit());
        assert_eq!(alg.mul(&ainv, &a), alg.unit());
    }

    #[test]
    fn coordinates_round_trip() {
        let alg = MatrixAlgebra::plain(3, K);
        for b in alg.basis() {
            assert_eq!(alg.from_coordinates(&alg.coordinates(&b)), b);
        }
        assert_eq!(alg.dim(), 9);
    }
}
