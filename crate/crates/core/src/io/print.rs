//! Canonical text. Terms are joined with `" + "`, monomials descend in
//! graded-lex order and `λ` powers ascend within one monomial. A coefficient
//! is printed bare when it is a positive rational and parenthesized
//! otherwise; a unit coefficient is dropped in front of another factor.

use std::fmt::{self, Display, Write};

use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Poly, Vars};
use crate::scalar::{Rational, Scalar};
use crate::series::FormalSeries;

fn imaginary_part(b: &Rational) -> String {
    if b.is_one() {
        "i".into()
    } else if (-b).is_one() {
        "-i".into()
    } else {
        format!("{}*i", b)
    }
}

/// Canonical text of a scalar, parenthesized unless it is a positive
/// rational.
pub fn scalar_text<T: Scalar>(c: &T) -> String {
    let (a, b) = (c.re(), c.im());
    if b.is_zero() {
        return if a.is_positive() { a.to_string() } else { format!("({})", a) };
    }
    if a.is_zero() {
        return format!("({})", imaginary_part(&b));
    }
    let sign = if b.is_negative() { "-" } else { "+" };
    format!("({} {} {})", a, sign, imaginary_part(&b.abs()))
}

pub(crate) fn monomial_text(vars: &Vars, m: &Monomial) -> Vec<String> {
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { vars.name(i) } else { format!("{}^{}", vars.name(i), e) })
        .collect()
}

fn lambda_text(r: usize) -> Option<String> {
    match r {
        0 => None,
        1 => Some("l".into()),
        _ => Some(format!("l^{}", r)),
    }
}

/// `coefficient * factors`, with the coefficient dropped when it is one.
pub(crate) fn term_text<T: Scalar>(c: &T, factors: &[String]) -> String {
    if factors.is_empty() {
        return scalar_text(c);
    }
    let mut s = String::new();
    if !c.is_one() {
        s.push_str(&scalar_text(c));
        s.push('*');
    }
    s.push_str(&factors.join("*"));
    s
}

/// Terms of `c(λ) * factors`, one per nonzero `λ` power.
pub(crate) fn series_terms<T: Scalar>(c: &FormalSeries<T>, factors: &[String], out: &mut Vec<String>) {
    series_terms_around(c, factors, &[], out)
}

/// As [`series_terms`] with extra factors placed after the `λ` power.
pub(crate) fn series_terms_around<T: Scalar>(c: &FormalSeries<T>, before: &[String], after: &[String], out: &mut Vec<String>) {
    for (r, a) in c.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut f = before.to_vec();
        f.extend(lambda_text(r));
        f.extend(after.iter().cloned());
        out.push(term_text(a, &f));
    }
}

pub(crate) fn join_terms(terms: &[String]) -> String {
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl<T: Scalar> Display for FormalSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        series_terms(self, &[], &mut terms);
        f.write_str(&join_terms(&terms))
    }
}

impl<T: Scalar> Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.vars();
        let mut terms = Vec::new();
        for (m, c) in self.terms().rev() {
            series_terms(c, &monomial_text(&vars, m), &mut terms);
        }
        f.write_str(&join_terms(&terms))
    }
}

/// Writes a matrix of displayable entries as `[[a, b], [c, d]]`.
pub fn matrix_text<E: Display>(rows: &[Vec<E>]) -> String {
    let mut s = String::from("[");
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push('[');
        for (j, e) in row.iter().enumerate() {
            if j > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{}", e);
        }
        s.push(']');
    }
    s.push(']');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ComplexScalar, GaussianRational as C};
    use crate::{Observable, Series};

    #[test]
    fn scalars() {
        assert_eq!(scalar_text(&C::ratio(3, 4)), "3/4");
        assert_eq!(scalar_text(&C::ratio(-1, 4)), "(-1/4)");
        assert_eq!(scalar_text(&C::zero()), "(0)");
        assert_eq!(scalar_text(&C::i()), "(i)");
        assert_eq!(scalar_text(&C::from_parts(Rational::one(), -Rational::new(2.into(), 3.into()))), "(1 - 2/3*i)");
    }

    #[test]
    fn series_and_polys() {
        assert_eq!(Series::zero(3).to_string(), "0");
        assert_eq!(Series::from_coeffs(vec![C::one(), C::ratio(-1, 4), C::i()]).to_string(), "1 + (-1/4)*l + (i)*l^2");
        let v = Vars::phase_space(1);
        let q: Observable = Poly::var(v, 0, 3);
        let p: Observable = Poly::var(v, 1, 3);
        let f = &(&q * &p) + &Poly::constant(v, Series::monomial(C::i().mul_ref(&C::ratio(1, 2)), 1, 3));
        assert_eq!(f.to_string(), "q1*p1 + (1/2*i)*l");
        let h = (&q.pow(2) + &p.pow(2)).scale(&C::ratio(1, 2));
        assert_eq!(h.to_string(), "1/2*q1^2 + 1/2*p1^2");
    }
}
