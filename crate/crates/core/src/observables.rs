//! Classical observables on `ℝ²ⁿ`: involution, canonical Poisson bracket,
//! holomorphic coordinates and point evaluation.

use crate::error::{Error, Result};
use crate::poly::{Chart, Monomial, Poly, Vars};
use crate::scalar::{ComplexScalar, Rational, Scalar};
use crate::series::FormalSeries;

fn require_chart<T: Scalar>(f: &Poly<T>, chart: Chart) -> Result<()> {
    if f.vars().chart != chart {
        return Err(Error::SignatureMismatch(format!(
            "expected a {} polynomial, got {}",
            chart.name(),
            f.vars().chart.name()
        )));
    }
    Ok(())
}

pub(crate) fn require_same_vars<T: Scalar>(f: &Poly<T>, g: &Poly<T>) -> Result<()> {
    if f.vars() != g.vars() {
        return Err(Error::SignatureMismatch(format!(
            "{}(n={}) vs {}(n={})",
            f.vars().chart.name(),
            f.vars().n,
            g.vars().chart.name(),
            g.vars().n
        )));
    }
    Ok(())
}

/// `f ↦ f̄`. In real charts only coefficients are conjugated; in the
/// holomorphic chart `z` and `z̄` are swapped as well.
pub fn involution<T: Scalar>(f: &Poly<T>) -> Poly<T> {
    match f.vars().chart {
        Chart::Holomorphic => {
            let n = f.vars().n;
            Poly::from_terms(
                f.vars(),
                f.order(),
                f.terms().map(|(m, c)| {
                    let e = m.exps();
                    let swapped: Vec<u32> = e[n..].iter().chain(&e[..n]).copied().collect();
                    (Monomial::new(swapped), c.conj())
                }),
            )
        }
        _ => f.conj_coeffs(),
    }
}

/// Canonical bracket `{f, g} = Σₖ ∂f/∂qᵏ ∂g/∂pₖ − ∂f/∂pₖ ∂g/∂qᵏ`.
pub fn poisson_bracket<T: Scalar>(f: &Poly<T>, g: &Poly<T>) -> Result<Poly<T>> {
    require_same_vars(f, g)?;
    require_chart(f, Chart::PhaseSpace)?;
    let n = f.vars().n;
    let order = f.order().min(g.order());
    let mut acc = Poly::zero(f.vars(), order);
    for k in 0..n {
        let a = &f.derivative(k, 1) * &g.derivative(n + k, 1);
        let b = &f.derivative(n + k, 1) * &g.derivative(k, 1);
        acc = &(&acc + &a) - &b;
    }
    Ok(acc)
}

/// Rewrites a phase-space polynomial in `z = q + ip`, `z̄ = q − ip`.
pub fn to_holomorphic<T: ComplexScalar>(f: &Poly<T>) -> Result<Poly<T>> {
    require_chart(f, Chart::PhaseSpace)?;
    let n = f.vars().n;
    let k = f.order();
    let h = Vars::holomorphic(n);
    let half = T::ratio(1, 2);
    let mut images = Vec::with_capacity(2 * n);
    // q = (z + z̄)/2
    for r in 0..n {
        images.push((&Poly::var(h, r, k) + &Poly::var(h, n + r, k)).scale(&half));
    }
    // p = (z − z̄)/(2i) = −(i/2)(z − z̄)
    let minus_half_i = T::i().mul_ref(&half).neg_ref();
    for r in 0..n {
        images.push((&Poly::var(h, r, k) - &Poly::var(h, n + r, k)).scale(&minus_half_i));
    }
    Ok(f.substitute(&images))
}

/// Inverse of [`to_holomorphic`].
pub fn to_phase_space<T: ComplexScalar>(f: &Poly<T>) -> Result<Poly<T>> {
    require_chart(f, Chart::Holomorphic)?;
    let n = f.vars().n;
    let k = f.order();
    let ps = Vars::phase_space(n);
    let i = T::i();
    let mut images = Vec::with_capacity(2 * n);
    for r in 0..n {
        images.push(&Poly::var(ps, r, k) + &Poly::var(ps, n + r, k).scale(&i));
    }
    for r in 0..n {
        images.push(&Poly::var(ps, r, k) - &Poly::var(ps, n + r, k).scale(&i));
    }
    Ok(f.substitute(&images))
}

/// `E_x(f) = f(x)` for a phase-space point `x = (q, p)`.
pub fn eval_at_point<T: ComplexScalar>(f: &Poly<T>, point: &[T]) -> Result<FormalSeries<T>> {
    match f.vars().chart {
        Chart::Holomorphic => eval_at_point(&to_phase_space(f)?, point),
        _ => f.eval(point),
    }
}

/// True when every coefficient of every term is real.
pub fn is_real<T: Scalar>(f: &Poly<T>) -> bool {
    f.terms().all(|(_, c)| c.is_real())
}

/// Phase-space origin as a point vector.
pub fn origin<T: Scalar>(n: usize) -> Vec<T> {
    vec![T::zero(); 2 * n]
}

/// Oscillator `H = ½ Σ (pₖ² + (qᵏ)²)`.
pub fn oscillator<T: ComplexScalar>(n: usize, order: usize) -> Poly<T> {
    let v = Vars::phase_space(n);
    let mut h = Poly::zero(v, order);
    for r in 0..2 * n {
        h = &h + &Poly::var(v, r, order).pow(2);
    }
    h.scale(&T::from_rational(Rational::new(1.into(), 2.into())))
}
