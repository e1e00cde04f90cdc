use std::fmt;

use crate::error::{Error, Result};
use num_traits::Zero;

use crate::scalar::{is_integer, GaussianRational as C, Scalar};
use crate::Series;

/// Characteristic class of a symplectic star product on a manifold with
/// `dim H² = m`, written in units of `2πi` in an integral basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MoritaClassData {
    pub m: usize,
    /// Coefficients of the `[ω]/iλ` term.
    pub pole: Vec<C>,
    pub class: Vec<Series>,
    /// The class coefficients are known exactly, not only up to `λᴷ`.
    pub exact: bool,
}

impl MoritaClassData {
    pub fn new(pole: Vec<C>, class: Vec<Series>, exact: bool) -> Result<Self> {
        let m = class.len();
        if !pole.is_empty() && pole.len() != m {
            return Err(Error::RankMismatch(format!("pole part has {} entries, class has {}", pole.len(), m)));
        }
        Ok(MoritaClassData { m, pole, class, exact })
    }

    /// `m` zero classes without pole part.
    pub fn zero(m: usize, order: usize) -> Self {
        MoritaClassData { m, pole: Vec::new(), class: vec![Series::zero(order); m], exact: true }
    }

    fn pole_vec(&self) -> Vec<C> {
        if self.pole.is_empty() {
            vec![C::from_i64(0); self.m]
        } else {
            self.pole.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoritaVerdict {
    Equivalent,
    NotEquivalent,
    Indeterminate,
}

impl MoritaVerdict {
    pub fn name(self) -> &'static str {
        match self {
            MoritaVerdict::Equivalent => "equivalent",
            MoritaVerdict::NotEquivalent => "not_equivalent",
            MoritaVerdict::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for MoritaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Compares two classes through the identity diffeomorphism: equivalent iff
/// the pole parts agree and `c₂ − c₁` is a `λ`-independent integral vector.
/// `not_equivalent` therefore means "not via the identity map".
pub fn morita_class_check(c1: &MoritaClassData, c2: &MoritaClassData) -> Result<MoritaVerdict> {
    if c1.m != c2.m || c1.class.len() != c1.m || c2.class.len() != c2.m {
        return Err(Error::RankMismatch(format!("classes live in H² of ranks {} and {}", c1.m, c2.m)));
    }
    if c1.pole_vec() != c2.pole_vec() {
        return Ok(MoritaVerdict::NotEquivalent);
    }
    let mut integral = true;
    for (a, b) in c1.class.iter().zip(&c2.class) {
        let d = b - a;
        if (1..d.order()).any(|r| !d.coeff(r).is_zero()) {
            return Ok(MoritaVerdict::NotEquivalent);
        }
        let c0 = d.coeff(0);
        integral &= c0.is_real() && is_integer(&c0.re());
    }
    Ok(match (integral, c1.exact && c2.exact) {
        (false, _) => MoritaVerdict::NotEquivalent,
        (true, true) => MoritaVerdict::Equivalent,
        (true, false) => MoritaVerdict::Indeterminate,
    })
}

/// Whether the class is imaginary in un-normalized units, i.e. every
/// normalized coordinate is real.
pub fn hermitian_class_check(c: &MoritaClassData) -> bool {
    c.class.iter().all(Series::is_real) && c.pole.iter().all(|p| p.is_real())
}

#[cfg(test)]
mod tests {
    use super::*;

    const K: usize = 4;

    fn class(coeffs: &[C]) -> MoritaClassData {
        let mut v = coeffs.to_vec();
        v.resize(K, C::from_i64(0));
        MoritaClassData::new(Vec::new(), vec![Series::from_coeffs(v)], true).unwrap()
    }

    #[test]
    fn examples() {
        let z = MoritaClassData::zero(1, K);
        assert_eq!(morita_class_check(&z, &class(&[C::from_i64(3)])).unwrap(), MoritaVerdict::Equivalent);
        assert_eq!(morita_class_check(&z, &class(&[C::ratio(1, 2)])).unwrap(), MoritaVerdict::NotEquivalent);
        assert_eq!(morita_class_check(&z, &class(&[C::from_i64(0), C::from_i64(1)])).unwrap(), MoritaVerdict::NotEquivalent);
        assert_eq!(morita_class_check(&z, &class(&[C::i()])).unwrap(), MoritaVerdict::NotEquivalent);
        let mut inexact = class(&[C::from_i64(2)]);
        inexact.exact = false;
        assert_eq!(morita_class_check(&z, &inexact).unwrap(), MoritaVerdict::Indeterminate);
        assert!(matches!(morita_class_check(&z, &MoritaClassData::zero(2, K)), Err(Error::RankMismatch(_))));
        let mut pole = class(&[C::from_i64(0)]);
        pole.pole = vec![C::from_i64(1)];
        assert_eq!(morita_class_check(&z, &pole).unwrap(), MoritaVerdict::NotEquivalent);
    }

    #[test]
    fn hermitian_classes() {
        assert!(hermitian_class_check(&class(&[C::ratio(1, 3), C::from_i64(2)])));
        assert!(!hermitian_class_check(&class(&[C::i()])));
        assert!(hermitian_class_check(&MoritaClassData::zero(3, K)));
    }
}
