//! The formal Bargmann-Fock representation of the Wick product on
//! `ℂ[ȳ¹,…,ȳⁿ][[λ]]` and the formal Schrödinger representations of the
//! standard-ordered and Weyl products on `ℂ[q¹,…,qⁿ][[λ]]`.

use crate::error::{Error, Result};
use crate::observables::to_holomorphic;
use crate::poly::{Chart, Monomial, Poly, Vars};
use crate::scalar::{GaussianRational as C, Scalar};
use crate::series::FormalSeries;
use crate::star::{apply_equiv, EquivOperatorSpec};
use crate::{Observable, Series};

use super::diffop::DiffOperator;

/// `c z^α z̄^β ↦ c (2λ)^{|α|} ȳ^β ∂_ȳ^α`. Phase-space input is rewritten in
/// `z, z̄` first.
pub fn wickrep(f: &Observable) -> Result<DiffOperator> {
    let f = match f.vars().chart {
        Chart::Holomorphic => f.clone(),
        Chart::PhaseSpace => to_holomorphic(f)?,
        other => return Err(Error::SignatureMismatch(format!("wickrep expects z/zb polynomials, got {}", other.name()))),
    };
    let n = f.vars().n;
    let order = f.order();
    let fock = Vars::fock(n);
    let two_l = Series::monomial(C::from_i64(2), 1, order);
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let (alpha, beta) = m.exps().split_at(n);
        let alpha = Monomial::new(alpha.to_vec());
        let coeff = c * &two_l.pow(alpha.degree() as usize);
        if coeff.is_zero() {
            continue;
        }
        terms.push((alpha, Poly::monomial(fock, Monomial::new(beta.to_vec()), coeff)));
    }
    DiffOperator::from_terms(fock, order, terms)
}

fn require_fock(v: &Observable) -> Result<()> {
    if v.vars().chart != Chart::Fock {
        return Err(Error::SignatureMismatch(format!("expected a Fock vector in yb, got {}", v.vars().chart.name())));
    }
    Ok(())
}

/// `⟨φ, ψ⟩ = Σ_r (2λ)ʳ/r! Σ_{i₁…iᵣ} conj(∂ʳφ(0)) ∂ʳψ(0)`, summed in closed
/// form over monomials: `Σ_α conj(φ_α) ψ_α (2λ)^{|α|} α!`.
pub fn fock_inner(phi: &Observable, psi: &Observable) -> Result<Series> {
    require_fock(phi)?;
    require_fock(psi)?;
    if phi.vars() != psi.vars() {
        return Err(Error::SignatureMismatch(format!("Fock vectors with n={} and n={}", phi.vars().n, psi.vars().n)));
    }
    let order = phi.order().min(psi.order());
    let mut acc = Series::zero(order);
    for (m, a) in phi.terms() {
        if let Some(b) = psi.coeff(m) {
            let scalar = C::from_rational(crate::Rational::from_integer(num_bigint::BigInt::from(m.factorial()) << m.degree()));
            let weight = FormalSeries::monomial(scalar, m.degree() as usize, order);
            acc = &acc + &(&(&a.conj() * b) * &weight);
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordering {
    Std,
    Weyl,
}

impl Ordering {
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "std" => Some(Ordering::Std),
            "weyl" => Some(Ordering::Weyl),
            _ => None,
        }
    }
}

/// `ϱ_Std(q^α p^β) = (−iλ)^{|β|} q^α ∂^β` and `ϱ_Weyl(f) = ϱ_Std(N f)`.
pub fn schroedinger_rep(kind: Ordering, f: &Observable) -> Result<DiffOperator> {
    if f.vars().chart != Chart::PhaseSpace {
        return Err(Error::SignatureMismatch(format!("expected a q/p polynomial, got {}", f.vars().chart.name())));
    }
    let n = f.vars().n;
    let order = f.order();
    let f = match kind {
        Ordering::Std => f.clone(),
        Ordering::Weyl => apply_equiv(&EquivOperatorSpec::n_operator(n, order), f)?,
    };
    let config = Vars::configuration(n);
    let minus_i_l = Series::monomial(-C::i(), 1, order);
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let (alpha, beta) = m.exps().split_at(n);
        let beta = Monomial::new(beta.to_vec());
        let coeff = c * &minus_i_l.pow(beta.degree() as usize);
        if coeff.is_zero() {
            continue;
        }
        terms.push((beta, Poly::monomial(config, Monomial::new(alpha.to_vec()), coeff)));
    }
    DiffOperator::from_terms(config, order, terms)
}

/// `π*ψ`: a wave function as a momentum-independent phase-space function.
pub fn pullback_to_phase_space(psi: &Observable) -> Result<Observable> {
    if psi.vars().chart != Chart::Configuration {
        return Err(Error::SignatureMismatch("expected a wave function in q".into()));
    }
    let n = psi.vars().n;
    Ok(Poly::from_terms(
        Vars::phase_space(n),
        psi.order(),
        psi.terms().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e.resize(2 * n, 0);
            (Monomial::new(e), c.clone())
        }),
    ))
}

/// `ι*f`: restriction to `p = 0`.
pub fn restrict_to_configuration(f: &Observable) -> Result<Observable> {
    if f.vars().chart != Chart::PhaseSpace {
        return Err(Error::SignatureMismatch("expected a q/p polynomial".into()));
    }
    let n = f.vars().n;
    Ok(Poly::from_terms(
        Vars::configuration(n),
        f.order(),
        f.terms().filter(|(m, _)| m.exps()[n..].iter().all(|&e| e == 0)).map(|(m, c)| (Monomial::new(m.exps()[..n].to_vec()), c.clone())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse, Signature};
    use crate::star::{star_multiply, StarProductSpec};

    const K: usize = 4;

    fn obs(s: &str) -> Observable {
        parse(s, Signature::new(1, K)).unwrap()
    }
    fn cfg(s: &str) -> Observable {
        parse(s, Signature::with_chart(1, K, Chart::Configuration)).unwrap()
    }
    fn op(s: &str, d: u32) -> DiffOperator {
        let v = Vars::configuration(1);
        DiffOperator::multiplication(&cfg(s)).compose(&DiffOperator::partial(v, Monomial::new(vec![d]), K)).unwrap()
    }

    #[test]
    fn creation_and_annihilation() {
        let fock = Vars::fock(1);
        let two_l_d = DiffOperator::partial_var(fock, 0, K).scale_series(&Series::monomial(C::from_i64(2), 1, K));
        assert_eq!(wickrep(&obs("z1")).unwrap(), two_l_d);
        let ybar = DiffOperator::multiplication(&Poly::var(fock, 0, K));
        assert_eq!(wickrep(&obs("zb1")).unwrap(), ybar);
        let number = ybar.compose(&two_l_d).unwrap();
        assert_eq!(wickrep(&obs("zb1*z1")).unwrap(), number);
    }

    #[test]
    fn wickrep_is_multiplicative() {
        let wick = StarProductSpec::wick(1, K);
        let samples = ["z1", "zb1", "z1^2*zb1", "z1*zb1 + i*zb1^2", "l*z1^3"];
        for a in samples {
            for b in samples {
                let (f, g) = (obs(a), obs(b));
                let lhs = wickrep(&star_multiply(&wick, &f, &g).unwrap()).unwrap();
                let rhs = wickrep(&f).unwrap().compose(&wickrep(&g).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{} {}", a, b);
            }
        }
    }

    #[test]
    fn fock_inner_products() {
        let y = |s: &str| parse(s, Signature::with_chart(1, K, Chart::Fock)).unwrap();
        assert!(fock_inner(&y("1"), &y("1")).unwrap().is_one());
        assert_eq!(fock_inner(&y("yb1"), &y("yb1")).unwrap(), Series::monomial(C::from_i64(2), 1, K));
        assert_eq!(fock_inner(&y("yb1^2"), &y("yb1^2")).unwrap(), Series::monomial(C::from_i64(8), 2, K));
        assert!(fock_inner(&y("yb1"), &y("1")).unwrap().is_zero());
        assert!(matches!(fock_inner(&obs("q1"), &y("1")), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn schroedinger_examples() {
        let minus_il = Series::monomial(-C::i(), 1, K);
        assert_eq!(schroedinger_rep(Ordering::Weyl, &obs("q1")).unwrap(), op("q1", 0));
        assert_eq!(schroedinger_rep(Ordering::Weyl, &obs("p1")).unwrap(), op("1", 1).scale_series(&minus_il));
        let qp = op("q1", 1).add(&op("1/2", 0)).unwrap().scale_series(&minus_il);
        assert_eq!(schroedinger_rep(Ordering::Weyl, &obs("q1*p1")).unwrap(), qp);
        let p2 = op("1", 2).scale_series(&Series::monomial(C::from_i64(-1), 2, K));
        assert_eq!(schroedinger_rep(Ordering::Std, &obs("p1^2")).unwrap(), p2);
    }

    #[test]
    fn std_rep_matches_star_formula() {
        let std = StarProductSpec::std(1, K);
        for f in ["q1*p1^2", "p1^3 + q1", "i*q1^2*p1"] {
            for psi in ["q1^3", "1 + q1", "l*q1^2"] {
                let (f, psi) = (obs(f), cfg(psi));
                let direct = schroedinger_rep(Ordering::Std, &f).unwrap().apply(&psi).unwrap();
                let oracle = restrict_to_configuration(&star_multiply(&std, &f, &pullback_to_phase_space(&psi).unwrap()).unwrap()).unwrap();
                assert_eq!(direct, oracle);
            }
        }
    }
}
