//! Differential operators `Σ a_α ∂^α` with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::io::print::{join_terms, monomial_text, series_terms_around};
use crate::poly::{Monomial, Poly, Vars};
use crate::scalar::{GaussianRational as C, Scalar};
use crate::Observable;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator {
    vars: Vars,
    order: usize,
    /// Derivative multi-index ↦ coefficient polynomial (never zero).
    terms: BTreeMap<Monomial, Observable>,
}

fn binomial_u64(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

impl DiffOperator {
    pub fn zero(vars: Vars, order: usize) -> Self {
        DiffOperator { vars, order, terms: BTreeMap::new() }
    }

    pub fn identity(vars: Vars, order: usize) -> Self {
        Self::multiplication(&Poly::one(vars, order))
    }

    /// `ψ ↦ a ψ`.
    pub fn multiplication(a: &Observable) -> Self {
        let mut d = Self::zero(a.vars(), a.order());
        d.add_term(Monomial::one(a.vars().count()), a.clone());
        d
    }

    /// `∂^α`.
    pub fn partial(vars: Vars, alpha: Monomial, order: usize) -> Self {
        let mut d = Self::zero(vars, order);
        d.add_term(alpha, Poly::one(vars, order));
        d
    }

    /// `∂/∂xᵢ`.
    pub fn partial_var(vars: Vars, i: usize, order: usize) -> Self {
        Self::partial(vars, Monomial::var(vars.count(), i), order)
    }

    pub fn from_terms(vars: Vars, order: usize, terms: impl IntoIterator<Item = (Monomial, Observable)>) -> Result<Self> {
        let mut d = Self::zero(vars, order);
        for (alpha, a) in terms {
            if a.vars() != vars || alpha.nvars() != vars.count() {
                return Err(Error::SignatureMismatch("operator term over other variables".into()));
            }
            d.add_term(alpha, a);
        }
        Ok(d)
    }

    pub(crate) fn add_term(&mut self, alpha: Monomial, a: Observable) {
        let a = a.truncate(self.order);
        let sum = match self.terms.remove(&alpha) {
            Some(prev) => &prev + &a,
            None => a,
        };
        if !sum.is_zero() {
            self.terms.insert(alpha, sum);
        }
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Observable)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order.
    pub fn differential_order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn check(&self, other_vars: Vars) -> Result<()> {
        if self.vars != other_vars {
            return Err(Error::SignatureMismatch(format!(
                "operator on {}(n={}) applied to {}(n={})",
                self.vars.chart.name(),
                self.vars.n,
                other_vars.chart.name(),
                other_vars.n
            )));
        }
        Ok(())
    }

    pub fn apply(&self, psi: &Observable) -> Result<Observable> {
        self.check(psi.vars())?;
        let mut acc = Poly::zero(self.vars, self.order.min(psi.order()));
        for (alpha, a) in &self.terms {
            let d = psi.derivative_multi(alpha);
            if !d.is_zero() {
                acc = &acc + &(a * &d);
            }
        }
        Ok(acc)
    }

    /// `self ∘ other`, by the Leibniz rule
    /// `(a∂^α)(b∂^β) = Σ_{γ≤α} C(α,γ) a ∂^γ(b) ∂^{α−γ+β}`.
    pub fn compose(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.check(other.vars)?;
        let mut out = Self::zero(self.vars, self.order.min(other.order));
        for (alpha, a) in &self.terms {
            for (beta, b) in &other.terms {
                for gamma in sub_indices(alpha) {
                    let db = b.derivative_multi(&gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let mult: u64 = alpha.exps().iter().zip(gamma.exps()).map(|(&x, &y)| binomial_u64(x, y)).product();
                    let rest: Vec<u32> = alpha.exps().iter().zip(gamma.exps()).zip(beta.exps()).map(|((x, y), z)| x - y + z).collect();
                    out.add_term(Monomial::new(rest), (a * &db).scale(&C::from_i64(mult as i64)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.check(other.vars)?;
        let mut out = Self::zero(self.vars, self.order.min(other.order));
        for (alpha, a) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(alpha.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> DiffOperator {
        DiffOperator { vars: self.vars, order: self.order, terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    pub fn sub(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> DiffOperator {
        let mut out = Self::zero(self.vars, self.order);
        for (alpha, a) in &self.terms {
            out.add_term(alpha.clone(), a.scale(c));
        }
        out
    }

    pub fn scale_series(&self, c: &crate::Series) -> DiffOperator {
        let mut out = Self::zero(self.vars, self.order.min(c.order()));
        for (alpha, a) in &self.terms {
            out.add_term(alpha.clone(), a.scale_series(c));
        }
        out
    }

    pub fn truncate(&self, order: usize) -> DiffOperator {
        let mut out = Self::zero(self.vars, order.min(self.order));
        for (alpha, a) in &self.terms {
            out.add_term(alpha.clone(), a.clone());
        }
        out
    }

    /// `λʳ` part.
    pub fn lambda_part(&self, r: usize) -> DiffOperator {
        let mut out = Self::zero(self.vars, self.order);
        for (alpha, a) in &self.terms {
            out.add_term(alpha.clone(), a.lambda_part(r));
        }
        out
    }
}

fn sub_indices(alpha: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &e in alpha.exps() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=e).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Integration-by-parts adjoint: `a∂^α ↦ (−1)^{|α|} ∂^α ∘ ā`.
pub fn formal_adjoint(d: &DiffOperator) -> DiffOperator {
    let mut out = DiffOperator::zero(d.vars, d.order);
    for (alpha, a) in &d.terms {
        let sign = if alpha.degree() % 2 == 0 { C::from_i64(1) } else { C::from_i64(-1) };
        let term = DiffOperator::partial(d.vars, alpha.clone(), d.order)
            .compose(&DiffOperator::multiplication(&a.conj_coeffs()))
            .expect("same variables");
        for (beta, b) in term.terms {
            out.add_term(beta, b.scale(&sign));
        }
    }
    out
}

fn derivative_text(vars: &Vars, alpha: &Monomial) -> Vec<String> {
    alpha
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("d/d{}", vars.name(i)) } else { format!("d^{e}/d{}^{e}", vars.name(i)) })
        .collect()
}

impl fmt::Display for DiffOperator {
    /// Terms by decreasing derivative multi-index, then as for polynomials,
    /// with the derivatives as the last factors: `(-i)*l*d/dq1 + q1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (alpha, a) in self.terms.iter().rev() {
            let d = derivative_text(&self.vars, alpha);
            for (m, c) in a.terms().rev() {
                series_terms_around(c, &monomial_text(&self.vars, m), &d, &mut terms);
            }
        }
        f.write_str(&join_terms(&terms))
    }
}
