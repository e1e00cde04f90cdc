//! Sparse multivariate polynomials with truncated-series coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};


use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::FormalSeries;

/// Exponent vector. Ordered graded-lexicographically: first by total
/// degree, then lexicographically with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `∂ᵢᵏ xᵅ = coefficient · x^{α - k eᵢ}`; `None` when it vanishes.
    pub fn derivative(&self, i: usize, k: u32) -> Option<(u64, Monomial)> {
        let a = self.0[i];
        if a < k {
            return None;
        }
        let factor = falling_factorial(a, k);
        let mut e = self.0.clone();
        e[i] -= k;
        Some((factor, Monomial(e)))
    }

    /// `∂^β xᵅ` for a multi-index `β`.
    pub fn derivative_multi(&self, beta: &Monomial) -> Option<(u64, Monomial)> {
        let mut factor = 1u64;
        let mut e = self.0.clone();
        for (i, &b) in beta.0.iter().enumerate() {
            if e[i] < b {
                return None;
            }
            factor *= falling_factorial(e[i], b);
            e[i] -= b;
        }
        Some((factor, Monomial(e)))
    }

    /// `α!` as a product of factorials.
    pub fn factorial(&self) -> u64 {
        self.0.iter().map(|&a| falling_factorial(a, a)).product()
    }
}

/// `a (a-1) … (a-k+1)`.
pub fn falling_factorial(a: u32, k: u32) -> u64 {
    (0..k).map(|j| (a - j) as u64).product()
}

/// All exponent vectors in `nvars` variables of total degree at most
/// `max_degree`, by increasing degree and, within a degree, with the first
/// variable's exponent decreasing (so `q` before `p`).
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut level = Vec::new();
        compositions(nvars, d, &mut Vec::new(), &mut level);
        level.sort_by(|a: &Vec<u32>, b| b.cmp(a));
        out.extend(level.into_iter().map(Monomial));
    }
    out
}

fn compositions(slots: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if slots == 0 {
        return;
    }
    if slots == 1 {
        prefix.push(remaining);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in 0..=remaining {
        prefix.push(k);
        compositions(slots - 1, remaining - k, prefix, out);
        prefix.pop();
    }
}

/// Coordinate system a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    /// `q¹..qⁿ, p₁..pₙ`
    PhaseSpace,
    /// `z¹..zⁿ, z̄¹..z̄ⁿ`
    Holomorphic,
    /// Fock space variables `ȳ¹..ȳⁿ`.
    Fock,
    /// Configuration space `q¹..qⁿ` (wave functions).
    Configuration,
}

impl Chart {
    pub fn name(self) -> &'static str {
        match self {
            Chart::PhaseSpace => "qp",
            Chart::Holomorphic => "holo",
            Chart::Fock => "fock",
            Chart::Configuration => "config",
        }
    }

    pub fn from_name(s: &str) -> Option<Chart> {
        match s {
            "qp" => Some(Chart::PhaseSpace),
            "holo" => Some(Chart::Holomorphic),
            "fock" => Some(Chart::Fock),
            "config" => Some(Chart::Configuration),
            _ => None,
        }
    }
}

/// Number of degrees of freedom plus the chart; fixes the variable list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vars {
    pub chart: Chart,
    pub n: usize,
}

impl Vars {
    pub fn phase_space(n: usize) -> Self {
        Vars { chart: Chart::PhaseSpace, n }
    }
    pub fn holomorphic(n: usize) -> Self {
        Vars { chart: Chart::Holomorphic, n }
    }
    pub fn fock(n: usize) -> Self {
        Vars { chart: Chart::Fock, n }
    }
    pub fn configuration(n: usize) -> Self {
        Vars { chart: Chart::Configuration, n }
    }

    pub fn count(&self) -> usize {
        match self.chart {
            Chart::PhaseSpace | Chart::Holomorphic => 2 * self.n,
            Chart::Fock | Chart::Configuration => self.n,
        }
    }

    pub fn name(&self, i: usize) -> String {
        let n = self.n;
        match self.chart {
            Chart::PhaseSpace if i < n => format!("q{}", i + 1),
            Chart::PhaseSpace => format!("p{}", i - n + 1),
            Chart::Holomorphic if i < n => format!("z{}", i + 1),
            Chart::Holomorphic => format!("zb{}", i - n + 1),
            Chart::Fock => format!("yb{}", i + 1),
            Chart::Configuration => format!("q{}", i + 1),
        }
    }
}

/// Polynomial in the variables of `vars` with coefficients in `T[[λ]]/λᴷ`.
///
/// No stored coefficient is the zero series, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    vars: Vars,
    order: usize,
    terms: BTreeMap<Monomial, FormalSeries<T>>,
}

impl<T: Scalar> Poly<T> {
    pub fn zero(vars: Vars, order: usize) -> Self {
        Poly { vars, order, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vars, c: FormalSeries<T>) -> Self {
        let order = c.order();
        Self::from_terms(vars, order, [(Monomial::one(vars.count()), c)])
    }

    pub fn one(vars: Vars, order: usize) -> Self {
        Self::constant(vars, FormalSeries::one(order))
    }

    pub fn scalar(vars: Vars, c: T, order: usize) -> Self {
        Self::constant(vars, FormalSeries::constant(c, order))
    }

    /// The `i`-th coordinate function.
    pub fn var(vars: Vars, i: usize, order: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.count(), i), FormalSeries::one(order))
    }

    pub fn monomial(vars: Vars, m: Monomial, c: FormalSeries<T>) -> Self {
        let order = c.order();
        Self::from_terms(vars, order, [(m, c)])
    }

    /// Collects terms, adding duplicates and dropping zero coefficients.
    /// Coefficients are truncated to `order`.
    pub fn from_terms(
        vars: Vars,
        order: usize,
        terms: impl IntoIterator<Item = (Monomial, FormalSeries<T>)>,
    ) -> Self {
        let mut p = Self::zero(vars, order);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.count(), "exponent vector has wrong length");
            p.add_term(m, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &FormalSeries<T>) {
        let c = match c.order().cmp(&self.order) {
            Ordering::Greater => c.truncate(self.order),
            Ordering::Less => c.resized(self.order),
            Ordering::Equal => c.clone(),
        };
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.count()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FormalSeries<T>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&FormalSeries<T>> {
        self.terms.get(m)
    }

    /// Constant term as a series (zero if absent).
    pub fn constant_term(&self) -> FormalSeries<T> {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(|| FormalSeries::zero(self.order))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Same coefficients, reinterpreted in another chart with the same
    /// variable count.
    pub fn relabel(&self, vars: Vars) -> Self {
        assert_eq!(vars.count(), self.vars.count());
        Poly { vars, order: self.order, terms: self.terms.clone() }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order).max(1);
        Self::from_terms(self.vars, order, self.terms.iter().map(|(m, c)| (m.clone(), c.truncate(order))))
    }

    pub fn map_coeffs(&self, f: impl Fn(&FormalSeries<T>) -> FormalSeries<T>) -> Self {
        Self::from_terms(self.vars, self.order, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map_coeffs(|s| s.scale(c))
    }

    pub fn scale_series(&self, c: &FormalSeries<T>) -> Self {
        let order = self.order.min(c.order());
        Self::from_terms(self.vars, order, self.terms.iter().map(|(m, s)| (m.clone(), s * c)))
    }

    /// Coefficientwise conjugation, exponents unchanged.
    pub fn conj_coeffs(&self) -> Self {
        self.map_coeffs(FormalSeries::conj)
    }

    /// The polynomial multiplying `λʳ`, returned with constant coefficients.
    pub fn lambda_part(&self, r: usize) -> Self {
        Self::from_terms(
            self.vars,
            self.order,
            self.terms
                .iter()
                .filter(|_| r < self.order)
                .map(|(m, c)| (m.clone(), FormalSeries::constant(c.coeff(r).clone(), self.order))),
        )
    }

    /// `∂ᵢᵏ`.
    pub fn derivative(&self, i: usize, k: u32) -> Self {
        Self::from_terms(
            self.vars,
            self.order,
            self.terms.iter().filter_map(|(m, c)| {
                m.derivative(i, k).map(|(f, dm)| (dm, c.scale(&T::from_i64(f as i64))))
            }),
        )
    }

    pub fn derivative_multi(&self, beta: &Monomial) -> Self {
        Self::from_terms(
            self.vars,
            self.order,
            self.terms.iter().filter_map(|(m, c)| {
                m.derivative_multi(beta).map(|(f, dm)| (dm, c.scale(&T::from_i64(f as i64))))
            }),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars, self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point (one scalar per variable).
    pub fn eval(&self, point: &[T]) -> Result<FormalSeries<T>> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: point.len() });
        }
        let mut acc = FormalSeries::zero(self.order);
        for (m, c) in &self.terms {
            let mut v = T::one();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    v = v.mul_ref(x);
                }
            }
            if !v.is_zero() {
                acc = &acc + &c.scale(&v);
            }
        }
        Ok(acc)
    }

    /// Substitutes `xᵢ ↦ images[i]`; the result lives in the images' chart.
    pub fn substitute(&self, images: &[Poly<T>]) -> Poly<T> {
        assert_eq!(images.len(), self.nvars());
        let target = images.first().map(|p| p.vars).unwrap_or(self.vars);
        let mut powers: Vec<Vec<Poly<T>>> = images.iter().map(|p| vec![Poly::one(p.vars, self.order)]).collect();
        let mut out = Poly::zero(target, self.order);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            out = &out + &term;
        }
        out
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials live in different charts");
    }
}

impl<'a, T: Scalar> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &'a Poly<T>) -> Poly<T> {
        self.check_vars(rhs);
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a, T: Scalar> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &'a Poly<T>) -> Poly<T> {
        self.check_vars(rhs);
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a, T: Scalar> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        self.check_vars(rhs);
        let order = self.order.min(rhs.order);
        let mut out = Poly::zero(self.vars, order);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        self.map_coeffs(|c| -c)
    }
}

impl<T: Scalar> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Self {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_is_graded_lex() {
        let a = Monomial::new(vec![2, 0]);
        let b = Monomial::new(vec![1, 1]);
        let c = Monomial::new(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn enumeration_puts_q_first() {
        let ms = monomials_up_to(2, 2);
        let exps: Vec<_> = ms.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(exps, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_up_to(4, 3).len(), 35);
    }

    #[test]
    fn derivatives() {
        let m = Monomial::new(vec![3, 1]);
        assert_eq!(m.derivative(0, 2), Some((6, Monomial::new(vec![1, 1]))));
        assert_eq!(m.derivative(1, 2), None);
        assert_eq!(Monomial::new(vec![2, 3]).factorial(), 12);
    }
}
