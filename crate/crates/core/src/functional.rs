//! `λ`-linear functionals of the form `δₓ ∘ exp(D)`, positivity scans in the
//! ordered ring `ℝ[[λ]]`, the Cauchy-Schwarz inequality and positivity
//! certificates.

use std::fmt;

use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::observables::{eval_at_point, involution, origin};
use crate::poly::{monomials_up_to, Chart, Poly, Vars};
use crate::scalar::{GaussianRational as C, Rational, Scalar};
use crate::series::SignVerdict;
use crate::star::{apply_equiv, star_multiply, EquivOperatorSpec, ProductKind, StarProductSpec};
use crate::{Observable, Series};

/// `f ↦ (exp(D) f)(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    point: Vec<C>,
    pre_operator: Option<EquivOperatorSpec>,
}

impl Functional {
    pub fn new(point: Vec<C>, pre_operator: Option<EquivOperatorSpec>) -> Result<Self> {
        if point.is_empty() || !point.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch { expected: 2 * (point.len() / 2).max(1), got: point.len() });
        }
        if let Some(op) = &pre_operator {
            if op.n() != point.len() / 2 {
                return Err(Error::SignatureMismatch(format!(
                    "operator has n={}, point has n={}",
                    op.n(),
                    point.len() / 2
                )));
            }
        }
        Ok(Functional { point, pre_operator })
    }

    /// `δₓ`.
    pub fn delta(point: Vec<C>) -> Result<Self> {
        Self::new(point, None)
    }

    /// `δ₀` on `ℝ²ⁿ`.
    pub fn delta_origin(n: usize) -> Self {
        Functional { point: origin(n), pre_operator: None }
    }

    pub fn n(&self) -> usize {
        self.point.len() / 2
    }

    pub fn point(&self) -> &[C] {
        &self.point
    }

    pub fn pre_operator(&self) -> Option<&EquivOperatorSpec> {
        self.pre_operator.as_ref()
    }

    /// `λ = 0` part: every pre-operator is `id + O(λ)`, so this is `δₓ`.
    pub fn classical_limit(&self) -> Functional {
        Functional { point: self.point.clone(), pre_operator: None }
    }

    pub fn evaluate(&self, f: &Observable) -> Result<Series> {
        if f.vars().n != self.n() {
            return Err(Error::SignatureMismatch(format!(
                "functional has n={}, observable has n={}",
                self.n(),
                f.vars().n
            )));
        }
        match &self.pre_operator {
            Some(op) => eval_at_point(&apply_equiv(op, f)?, &self.point),
            None => eval_at_point(f, &self.point),
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt: Vec<String> = self.point.iter().map(crate::io::scalar_text).collect();
        write!(f, "delta[{}]", pt.join(", "))?;
        if let Some(op) = &self.pre_operator {
            write!(f, " o exp({})", op.name())?;
        }
        Ok(())
    }
}

/// `δₓ ∘ e^{λΔ}`, `Δ = Σ ∂_{zʳ}∂_{z̄ʳ}`.
pub fn deform_delta(point: Vec<C>, order: usize) -> Result<Functional> {
    let n = point.len() / 2;
    Functional::new(point, Some(EquivOperatorSpec::s_operator(n.max(1), order)))
}

/// Sign of `ω(f̄ ⋆ f)`; `None` when the value is not real.
pub type SampleVerdict = Option<SignVerdict>;

#[derive(Clone, Debug, PartialEq)]
pub struct PositivityEntry {
    pub input: Observable,
    pub value: Series,
    pub verdict: SampleVerdict,
}

impl PositivityEntry {
    pub fn refutes(&self) -> bool {
        !matches!(self.verdict, Some(v) if v.is_nonnegative())
    }
}

/// Result of a sampled positivity test. A scan can refute positivity but
/// never prove it.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub product: ProductKind,
    pub functional: String,
    pub samples: String,
    pub entries: Vec<PositivityEntry>,
}

impl PositivityReport {
    /// True iff no sample is negative (or non-real).
    pub fn positive_on_samples(&self) -> bool {
        self.entries.iter().all(|e| !e.refutes())
    }

    pub fn first_witness(&self) -> Option<&PositivityEntry> {
        self.entries.iter().find(|e| e.refutes())
    }
}

/// Monomials of degree `≤ max_degree` in the given chart, followed by all
/// `m₁ + c m₂` with `m₁ < m₂` and `c ∈ {1, −1, i, −i}`.
pub fn positivity_samples(vars: Vars, order: usize, max_degree: u32) -> Vec<Observable> {
    let monos: Vec<Observable> = monomials_up_to(vars.count(), max_degree)
        .into_iter()
        .map(|m| Poly::monomial(vars, m, Series::one(order)))
        .collect();
    let phases = [C::ratio(1, 1), C::ratio(-1, 1), C::i(), -C::i()];
    let mut out = monos.clone();
    for i in 0..monos.len() {
        for j in (i + 1)..monos.len() {
            for c in &phases {
                out.push(&monos[i] + &monos[j].scale(c));
            }
        }
    }
    out
}

/// Evaluates `ω(f̄ ⋆ f)` on [`positivity_samples`] in the `(q, p)` chart.
pub fn positivity_scan(w: &Functional, spec: &StarProductSpec, max_degree: u32) -> PositivityReport {
    positivity_scan_in(w, spec, max_degree, Chart::PhaseSpace)
}

/// As [`positivity_scan`], with samples written in `chart` (phase space or
/// holomorphic).
pub fn positivity_scan_in(w: &Functional, spec: &StarProductSpec, max_degree: u32, chart: Chart) -> PositivityReport {
    let vars = Vars { chart, n: spec.n() };
    let samples = positivity_samples(vars, spec.order(), max_degree);
    let entries: Vec<PositivityEntry> = samples
        .into_par_iter()
        .map(|f| {
            let value = star_multiply(spec, &involution(&f), &f).and_then(|g| w.evaluate(&g)).expect("matching signatures");
            let verdict = value.sign().ok();
            PositivityEntry { input: f, value, verdict }
        })
        .collect();
    PositivityReport {
        product: spec.kind(),
        functional: w.to_string(),
        samples: format!(
            "monomials in {} up to degree {} and two-term combinations with coefficients 1, -1, i, -i",
            chart.name(),
            max_degree
        ),
        entries,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CauchySchwarzReport {
    /// `ω(a*⋆a) ω(b*⋆b) − |ω(a*⋆b)|²`.
    pub defect: Series,
    pub verdict: SignVerdict,
    /// `ω(a*⋆b) = conj(ω(b*⋆a))`.
    pub conjugate_symmetric: bool,
}

pub fn cauchy_schwarz_check(w: &Functional, spec: &StarProductSpec, a: &Observable, b: &Observable) -> Result<CauchySchwarzReport> {
    let form = |x: &Observable, y: &Observable| -> Result<Series> { w.evaluate(&star_multiply(spec, &involution(x), y)?) };
    let aa = form(a, a)?;
    let bb = form(b, b)?;
    let ab = form(a, b)?;
    let ba = form(b, a)?;
    let defect = &(&aa * &bb) - &(&ab * &ab.conj());
    let verdict = defect.sign()?;
    Ok(CauchySchwarzReport { defect, verdict, conjugate_symmetric: ab == ba.conj() })
}

/// `target = Σ βᵢ bᵢ* ⋆ bᵢ` with rational `βᵢ > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityCertificate {
    pub target: Observable,
    pub summands: Vec<(Rational, Observable)>,
}

pub fn verify_certificate(cert: &PositivityCertificate, spec: &StarProductSpec) -> Result<bool> {
    if let Some((beta, _)) = cert.summands.iter().find(|(b, _)| !b.is_positive()) {
        return Err(Error::InvalidWeights(beta.to_string()));
    }
    let order = cert.summands.iter().map(|(_, b)| b.order()).fold(cert.target.order().min(spec.order()), usize::min);
    let mut sum = Poly::zero(cert.target.vars(), order);
    for (beta, b) in &cert.summands {
        let sq = star_multiply(spec, &involution(b), b)?;
        sum = &sum + &sq.scale(&C::from_rational(beta.clone()));
    }
    if sum.vars() != cert.target.vars() {
        return Err(Error::SignatureMismatch("summands and target use different variables".into()));
    }
    Ok(sum == cert.target.truncate(order))
}

/// `ω(f*) = conj(ω(f))` on the given inputs.
pub fn is_hermitian_on(w: &Functional, inputs: &[Observable]) -> Result<bool> {
    for f in inputs {
        if w.evaluate(&involution(f))? != w.evaluate(f)?.conj() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse, Signature};
    use crate::series::FormalSeries;

    const K: usize = 5;

    fn obs(s: &str) -> Observable {
        parse(s, Signature::new(1, K)).unwrap()
    }

    fn lam2(c: i64, d: i64) -> Series {
        FormalSeries::monomial(C::ratio(c, d), 2, K)
    }

    #[test]
    fn delta_on_oscillator_square() {
        let w = StarProductSpec::weyl(1, K);
        let h = obs("1/2*(p1^2 + q1^2)");
        let sq = star_multiply(&w, &involution(&h), &h).unwrap();
        let d = Functional::delta_origin(1);
        assert_eq!(d.evaluate(&sq).unwrap(), lam2(-1, 4));
        assert_eq!(d.evaluate(&sq).unwrap().sign().unwrap(), SignVerdict::Negative);
        assert!(d.evaluate(&Poly::one(Vars::phase_space(1), K)).unwrap().is_one());

        let dd = deform_delta(origin(1), K).unwrap();
        assert_eq!(dd.evaluate(&sq).unwrap(), lam2(1, 4));
    }

    #[test]
    fn deformed_delta_basics() {
        let dd = deform_delta(origin(1), K).unwrap();
        assert!(dd.evaluate(&obs("1")).unwrap().is_one());
        assert_eq!(dd.evaluate(&obs("z1*zb1")).unwrap(), FormalSeries::lambda(K));
        let f = obs("q1^2*p1 + 3*q1 + 2 + l*p1^2");
        assert_eq!(dd.classical_limit().evaluate(&f).unwrap(), obs("2 + l*0").constant_term());
    }

    #[test]
    fn scans() {
        let d = Functional::delta_origin(1);
        let weyl = positivity_scan(&d, &StarProductSpec::weyl(1, K), 2);
        assert!(!weyl.positive_on_samples());
        let h = obs("1/2*(p1^2 + q1^2)");
        let w = StarProductSpec::weyl(1, K);
        assert_eq!(d.evaluate(&star_multiply(&w, &h, &h).unwrap()).unwrap(), lam2(-1, 4));

        let wick = positivity_scan(&d, &StarProductSpec::wick(1, K), 2);
        assert!(wick.positive_on_samples());

        let dd = deform_delta(origin(1), K).unwrap();
        assert!(positivity_scan(&dd, &w, 2).positive_on_samples());
    }

    #[test]
    fn cauchy_schwarz() {
        let d = Functional::delta_origin(1);
        let wick = StarProductSpec::wick(1, K);
        let one = parse("1", Signature::with_chart(1, K, Chart::Holomorphic)).unwrap();
        let r = cauchy_schwarz_check(&d, &wick, &one, &obs("zb1")).unwrap();
        assert_eq!(r.defect, FormalSeries::monomial(C::ratio(2, 1), 1, K));
        assert_eq!(r.verdict, SignVerdict::Positive);
        assert!(r.conjugate_symmetric);
        let r = cauchy_schwarz_check(&d, &wick, &obs("z1"), &obs("zb1")).unwrap();
        assert_eq!(r.verdict, SignVerdict::ZeroUpToK);
        let a = obs("q1 + i*p1^2");
        assert_eq!(cauchy_schwarz_check(&d, &wick, &a, &a).unwrap().verdict, SignVerdict::ZeroUpToK);
    }

    #[test]
    fn certificates() {
        let wick = StarProductSpec::wick(1, K);
        let one = Rational::from_integer(1.into());
        let cert = PositivityCertificate { target: obs("1"), summands: vec![(one.clone(), obs("1"))] };
        assert!(verify_certificate(&cert, &wick).unwrap());
        let cert = PositivityCertificate { target: obs("z1*zb1 + 2*l"), summands: vec![(one.clone(), obs("zb1"))] };
        assert!(verify_certificate(&cert, &wick).unwrap());
        let cert = PositivityCertificate { target: obs("-1"), summands: vec![(one.clone(), obs("1"))] };
        assert!(!verify_certificate(&cert, &wick).unwrap());
        let cert = PositivityCertificate { target: obs("0"), summands: vec![(Rational::from_integer(0.into()), obs("1"))] };
        assert!(matches!(verify_certificate(&cert, &wick), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn signature_checked() {
        let d = Functional::delta_origin(2);
        assert!(matches!(d.evaluate(&obs("q1")), Err(Error::SignatureMismatch(_))));
    }
}
