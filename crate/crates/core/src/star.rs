//! Star products of constant-coefficient exponential type,
//! `f ⋆ g = μ ∘ exp(Σ Λᵃᵇ ∂ₐ ⊗ ∂ᵦ)(f ⊗ g)`, together with equivalence
//! operators `exp(D)` and an exhaustive checker for the star product axioms.
//!
//! On polynomials every exponential terminates: each pairing entry is
//! `O(λ)`, so the `r`-th power only contributes from `λʳ` on and the loop is
//! bounded by the truncation order as well as by the degrees involved.

use std::collections::HashMap;

use log::warn;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::observables::{involution, poisson_bracket, require_same_vars, to_holomorphic, to_phase_space};
use crate::poly::{falling_factorial, monomials_up_to, Chart, Monomial, Poly, Vars};
use crate::scalar::{GaussianRational as C, Scalar};

use crate::{Observable, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Weyl,
    Wick,
    Std,
    Custom,
}

impl ProductKind {
    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Weyl => "weyl",
            ProductKind::Wick => "wick",
            ProductKind::Std => "std",
            ProductKind::Custom => "custom",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "weyl" => Some(ProductKind::Weyl),
            "wick" => Some(ProductKind::Wick),
            "std" => Some(ProductKind::Std),
            "custom" => Some(ProductKind::Custom),
            _ => None,
        }
    }
}

/// Pairing matrix `Λ` (indexed by `q¹..qⁿ, p₁..pₙ`) defining a star product.
#[derive(Clone, Debug, PartialEq)]
pub struct StarProductSpec {
    kind: ProductKind,
    n: usize,
    pairing: Vec<Vec<Series>>,
}

impl StarProductSpec {
    /// Weyl-Moyal: `Λ^{qᵏ pₖ} = iλ/2`, `Λ^{pₖ qᵏ} = −iλ/2`.
    pub fn weyl(n: usize, order: usize) -> Self {
        let mut s = Self::empty(ProductKind::Weyl, n, order);
        let half_i = C::i().mul_ref(&C::ratio(1, 2));
        for k in 0..n {
            s.pairing[k][n + k] = Series::monomial(half_i.clone(), 1, order);
            s.pairing[n + k][k] = Series::monomial(half_i.neg_ref(), 1, order);
        }
        s
    }

    /// Wick: `2λ Σ ∂_{zᵏ} ⊗ ∂_{z̄ᵏ}` rewritten with
    /// `∂_z = ½(∂_q − i∂_p)`, `∂_z̄ = ½(∂_q + i∂_p)`.
    pub fn wick(n: usize, order: usize) -> Self {
        let mut s = Self::empty(ProductKind::Wick, n, order);
        let half = C::ratio(1, 2);
        let half_i = C::i().mul_ref(&half);
        for k in 0..n {
            s.pairing[k][k] = Series::monomial(half.clone(), 1, order);
            s.pairing[n + k][n + k] = Series::monomial(half.clone(), 1, order);
            s.pairing[k][n + k] = Series::monomial(half_i.clone(), 1, order);
            s.pairing[n + k][k] = Series::monomial(half_i.neg_ref(), 1, order);
        }
        s
    }

    /// Standard ordering: `(λ/i) Σ ∂_{pₖ} ⊗ ∂_{qᵏ}`.
    pub fn std(n: usize, order: usize) -> Self {
        let mut s = Self::empty(ProductKind::Std, n, order);
        for k in 0..n {
            s.pairing[n + k][k] = Series::monomial(C::i().neg_ref(), 1, order);
        }
        s
    }

    pub fn builtin(kind: ProductKind, n: usize, order: usize) -> Option<Self> {
        match kind {
            ProductKind::Weyl => Some(Self::weyl(n, order)),
            ProductKind::Wick => Some(Self::wick(n, order)),
            ProductKind::Std => Some(Self::std(n, order)),
            ProductKind::Custom => None,
        }
    }

    /// A user-supplied pairing. Entries must share one order and have no
    /// `λ⁰` part.
    pub fn custom(n: usize, pairing: Vec<Vec<Series>>) -> Result<Self> {
        Self::with_kind(ProductKind::Custom, n, pairing)
    }

    pub(crate) fn with_kind(kind: ProductKind, n: usize, pairing: Vec<Vec<Series>>) -> Result<Self> {
        let dim = 2 * n;
        if n == 0 || pairing.len() != dim || pairing.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: pairing.len() });
        }
        let order = pairing[0][0].order();
        for row in &pairing {
            for e in row {
                if e.order() != order {
                    return Err(Error::TruncationMismatch { left: order, right: e.order() });
                }
                if !e.coeff(0).is_zero() {
                    return Err(Error::SignatureMismatch(
                        "pairing entries must vanish at lambda = 0".into(),
                    ));
                }
            }
        }
        Ok(StarProductSpec { kind, n, pairing })
    }

    fn empty(kind: ProductKind, n: usize, order: usize) -> Self {
        StarProductSpec { kind, n, pairing: vec![vec![Series::zero(order); 2 * n]; 2 * n] }
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.pairing[0][0].order()
    }

    pub fn pairing(&self) -> &[Vec<Series>] {
        &self.pairing
    }

    pub fn vars(&self) -> Vars {
        Vars::phase_space(self.n)
    }

    /// Same pairing at a lower truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        StarProductSpec {
            kind: self.kind,
            n: self.n,
            pairing: self.pairing.iter().map(|r| r.iter().map(|e| e.truncate(order)).collect()).collect(),
        }
    }

    /// The pairing written in the holomorphic chart: with `w = M x`,
    /// `∂_x = Mᵀ ∂_w`, so `Λ' = M Λ Mᵀ`.
    fn holomorphic_pairing(&self) -> Result<Vec<Vec<Series>>> {
        let order = self.order();
        let holo = Vars::holomorphic(self.n);
        let d = 2 * self.n;
        let mut m = vec![vec![Series::zero(order); d]; d];
        for (c, row) in m.iter_mut().enumerate() {
            let x = to_phase_space(&Poly::var(holo, c, order))?;
            for (mono, coeff) in x.terms() {
                if let Some(a) = mono.exps().iter().position(|&e| e == 1) {
                    row[a] = coeff.clone();
                }
            }
        }
        let mut out = vec![vec![Series::zero(order); d]; d];
        for (c, out_row) in out.iter_mut().enumerate() {
            for (dd, entry) in out_row.iter_mut().enumerate() {
                for a in 0..d {
                    if m[c][a].is_zero() {
                        continue;
                    }
                    for b in 0..d {
                        *entry = &*entry + &(&(&m[c][a] * &self.pairing[a][b]) * &m[dd][b]);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Nonzero entries of a pairing with their scaled powers `Λᵏ/k!`, `k < K`.
fn expanded_entries(pairing: &[Vec<Series>], order: usize) -> Vec<(usize, usize, Vec<Series>)> {
    let mut out = Vec::new();
    for (a, row) in pairing.iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            let e = e.truncate(order);
            if e.is_zero() {
                continue;
            }
            let mut powers = vec![Series::one(order)];
            for k in 1..order {
                let next = (&powers[k - 1] * &e).scale(&C::ratio(1, k as i64));
                if next.is_zero() {
                    break;
                }
                powers.push(next);
            }
            out.push((a, b, powers));
        }
    }
    out
}

/// `Λ`-exponential applied to a single pair of monomials.
fn monomial_product(
    entries: &[(usize, usize, Vec<Series>)],
    alpha: &Monomial,
    beta: &Monomial,
    order: usize,
    out: &mut HashMap<Monomial, Series>,
) {
    fn go(
        entries: &[(usize, usize, Vec<Series>)],
        alpha: &mut Vec<u32>,
        beta: &mut Vec<u32>,
        coef: Series,
        out: &mut HashMap<Monomial, Series>,
    ) {
        let Some(((a, b, powers), rest)) = entries.split_first() else {
            let m = Monomial::new(alpha.iter().zip(beta.iter()).map(|(x, y)| x + y).collect());
            match out.get_mut(&m) {
                Some(acc) => *acc = &*acc + &coef,
                None => {
                    out.insert(m, coef);
                }
            }
            return;
        };
        let (a, b) = (*a, *b);
        let max_k = (powers.len() as u32 - 1).min(alpha[a]).min(beta[b]);
        for k in 0..=max_k {
            let factor = falling_factorial(alpha[a], k) * falling_factorial(beta[b], k);
            let c = (&coef * &powers[k as usize]).scale(&C::from_i64(factor as i64));
            if c.is_zero() {
                continue;
            }
            alpha[a] -= k;
            beta[b] -= k;
            go(rest, alpha, beta, c, out);
            alpha[a] += k;
            beta[b] += k;
        }
    }
    go(entries, &mut alpha.exps().to_vec(), &mut beta.exps().to_vec(), Series::one(order), out);
}

fn product_with(pairing: &[Vec<Series>], spec: &StarProductSpec, f: &Observable, g: &Observable) -> Observable {
    let order = f.order().min(g.order()).min(spec.order());
    let entries = expanded_entries(pairing, order);
    let mut out = Poly::zero(f.vars(), order);
    let mut cache: HashMap<Monomial, Series> = HashMap::new();
    for (ma, ca) in f.terms() {
        for (mb, cb) in g.terms() {
            cache.clear();
            monomial_product(&entries, ma, mb, order, &mut cache);
            let c = ca * cb;
            for (m, s) in cache.drain() {
                out.add_term(m, &(&s * &c));
            }
        }
    }
    out
}

fn check_pair(spec: &StarProductSpec, f: &Observable, g: &Observable) -> Result<()> {
    require_same_vars(f, g)?;
    if f.vars().n != spec.n {
        return Err(Error::SignatureMismatch(format!(
            "observable has n={}, star product has n={}",
            f.vars().n,
            spec.n
        )));
    }
    Ok(())
}

/// `f ⋆ g`. Holomorphic inputs use the pairing rewritten in `(z, z̄)`.
pub fn star_multiply(spec: &StarProductSpec, f: &Observable, g: &Observable) -> Result<Observable> {
    check_pair(spec, f, g)?;
    match f.vars().chart {
        Chart::PhaseSpace => Ok(product_with(&spec.pairing, spec, f, g)),
        Chart::Holomorphic => Ok(product_with(&spec.holomorphic_pairing()?, spec, f, g)),
        other => Err(Error::SignatureMismatch(format!("cannot star-multiply {} polynomials", other.name()))),
    }
}

/// `f ⋆ g − g ⋆ f`.
pub fn commutator(spec: &StarProductSpec, f: &Observable, g: &Observable) -> Result<Observable> {
    Ok(&star_multiply(spec, f, g)? - &star_multiply(spec, g, f)?)
}

/// Equivalence transformation `exp(D)` with `D` a constant-coefficient
/// differential operator whose coefficients are `O(λ)`.
///
/// The generator is stored as a polynomial in the phase-space chart whose
/// exponents are read as derivative orders.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivOperatorSpec {
    name: String,
    n: usize,
    generator: Observable,
}

impl EquivOperatorSpec {
    pub fn new(name: impl Into<String>, generator: Observable) -> Result<Self> {
        if generator.vars().chart != Chart::PhaseSpace {
            return Err(Error::SignatureMismatch("generator must use the q/p chart".into()));
        }
        if generator.terms().any(|(_, c)| !c.coeff(0).is_zero()) {
            return Err(Error::SignatureMismatch("generator must vanish at lambda = 0".into()));
        }
        Ok(EquivOperatorSpec { name: name.into(), n: generator.vars().n, generator })
    }

    pub fn identity(n: usize, order: usize) -> Self {
        EquivOperatorSpec { name: "identity".into(), n, generator: Poly::zero(Vars::phase_space(n), order) }
    }

    /// `S = exp(λΔ)`, `Δ = Σ ∂_{zᵏ}∂_{z̄ᵏ} = ¼ Σ (∂²_{qᵏ} + ∂²_{pₖ})`.
    pub fn s_operator(n: usize, order: usize) -> Self {
        let v = Vars::phase_space(n);
        let quarter_l = Series::monomial(C::ratio(1, 4), 1, order);
        let mut g = Poly::zero(v, order);
        for r in 0..2 * n {
            let mut e = vec![0; 2 * n];
            e[r] = 2;
            g = &g + &Poly::monomial(v, Monomial::new(e), quarter_l.clone());
        }
        EquivOperatorSpec { name: "S".into(), n, generator: g }
    }

    /// `N = exp((λ/2i) Σ ∂_{pₖ}∂_{qᵏ})`.
    pub fn n_operator(n: usize, order: usize) -> Self {
        let v = Vars::phase_space(n);
        let c = Series::monomial(C::i().mul_ref(&C::ratio(-1, 2)), 1, order);
        let mut g = Poly::zero(v, order);
        for k in 0..n {
            let mut e = vec![0; 2 * n];
            e[k] = 1;
            e[n + k] = 1;
            g = &g + &Poly::monomial(v, Monomial::new(e), c.clone());
        }
        EquivOperatorSpec { name: "N".into(), n, generator: g }
    }

    /// `exp(−D)`.
    pub fn inverse(&self) -> Self {
        let name = match self.name.strip_suffix("^-1") {
            Some(base) => base.to_string(),
            None => format!("{}^-1", self.name),
        };
        EquivOperatorSpec { name, n: self.n, generator: -&self.generator }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.generator.order()
    }

    pub fn generator(&self) -> &Observable {
        &self.generator
    }

    fn apply_generator(&self, f: &Observable) -> Observable {
        let mut acc = Poly::zero(f.vars(), f.order().min(self.order()));
        for (beta, c) in self.generator.terms() {
            acc = &acc + &f.derivative_multi(beta).scale_series(c);
        }
        acc
    }
}

/// `exp(D) f`.
pub fn apply_equiv(op: &EquivOperatorSpec, f: &Observable) -> Result<Observable> {
    if f.vars().n != op.n {
        return Err(Error::SignatureMismatch(format!("operator has n={}, observable has n={}", op.n, f.vars().n)));
    }
    match f.vars().chart {
        Chart::PhaseSpace => {}
        Chart::Holomorphic => return to_holomorphic(&apply_equiv(op, &to_phase_space(f)?)?),
        other => return Err(Error::SignatureMismatch(format!("cannot apply {} to {} polynomials", op.name, other.name()))),
    }
    let order = f.order().min(op.order());
    let mut term = f.truncate(order);
    let mut acc = term.clone();
    for k in 1.. {
        term = op.apply_generator(&term).scale(&C::ratio(1, k));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The product transported along `op`: `op(op⁻¹f ⋆ op⁻¹g)`.
///
/// With `op = S` and the Weyl product this is the Wick product; with
/// `op = N` it is the standard-ordered product.
pub fn transported_product(
    op: &EquivOperatorSpec,
    spec: &StarProductSpec,
    f: &Observable,
    g: &Observable,
) -> Result<Observable> {
    check_pair(spec, f, g)?;
    let inv = op.inverse();
    let prod = star_multiply(spec, &apply_equiv(&inv, f)?, &apply_equiv(&inv, g)?)?;
    apply_equiv(op, &prod)
}

/// β-coefficients `e₀ … e_m` of `Exp(−βH)`: `e₀ = 1`, `eₖ = −(1/k) H ⋆ eₖ₋₁`.
pub fn star_exponential_beta(spec: &StarProductSpec, h: &Observable, beta_order: usize) -> Result<Vec<Observable>> {
    if involution(h) != *h {
        warn!("star exponential of a non-Hermitian observable");
    }
    let mut out = vec![Poly::one(h.vars(), h.order().min(spec.order()))];
    for k in 1..=beta_order {
        let next = star_multiply(spec, h, &out[k - 1])?.scale(&C::ratio(-1, k as i64));
        out.push(next);
    }
    Ok(out)
}

/// One row of an [`AxiomReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomVerdict {
    pub axiom: &'static str,
    pub cases: usize,
    pub passed: bool,
    /// Canonical text of the first failing pair or triple.
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub kind: ProductKind,
    pub n: usize,
    pub order: usize,
    pub sample_degree: u32,
    pub verdicts: Vec<AxiomVerdict>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, axiom: &str) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }
}

pub const AXIOMS: [&str; 5] = ["unit", "classical-limit", "correspondence", "hermitian", "associativity"];

fn first_failure<I: Send + Sync>(items: Vec<I>, check: impl Fn(&I) -> Option<Vec<String>> + Sync) -> (usize, Option<Vec<String>>) {
    let n = items.len();
    let results: Vec<Option<Vec<String>>> = items.par_iter().map(&check).collect();
    (n, results.into_iter().flatten().next())
}

/// Exhaustive check of the star product axioms on all monomials of degree
/// at most `sample_degree`. By bilinearity this proves the axioms on every
/// polynomial of that degree.
pub fn check_star_axioms(spec: &StarProductSpec, sample_degree: u32) -> AxiomReport {
    let order = spec.order();
    let vars = spec.vars();
    let monos: Vec<Observable> = monomials_up_to(vars.count(), sample_degree)
        .into_iter()
        .map(|m| Poly::monomial(vars, m, Series::one(order)))
        .collect();
    let star = |f: &Observable, g: &Observable| star_multiply(spec, f, g).expect("same signature");
    let one = Poly::one(vars, order);
    let pairs: Vec<(usize, usize)> =
        (0..monos.len()).flat_map(|i| (0..monos.len()).map(move |j| (i, j))).collect();
    let text = |idx: &[usize]| idx.iter().map(|&i| monos[i].to_string()).collect::<Vec<_>>();

    let mut verdicts = Vec::new();

    let (cases, witness) = first_failure((0..monos.len()).collect(), |&i| {
        let f = &monos[i];
        (star(&one, f) != *f || star(f, &one) != *f).then(|| text(&[i]))
    });
    verdicts.push(AxiomVerdict { axiom: AXIOMS[0], cases, passed: witness.is_none(), witness });

    let (cases, witness) = first_failure(pairs.clone(), |&(i, j)| {
        let (f, g) = (&monos[i], &monos[j]);
        (star(f, g).lambda_part(0) != (f * g).lambda_part(0)).then(|| text(&[i, j]))
    });
    verdicts.push(AxiomVerdict { axiom: AXIOMS[1], cases, passed: witness.is_none(), witness });

    let (cases, witness) = first_failure(pairs.clone(), |&(i, j)| {
        let (f, g) = (&monos[i], &monos[j]);
        if order < 2 {
            return None;
        }
        let c1 = (&star(f, g) - &star(g, f)).lambda_part(1);
        let expected = poisson_bracket(f, g).expect("phase space").scale(&C::i()).lambda_part(0);
        (c1 != expected).then(|| text(&[i, j]))
    });
    verdicts.push(AxiomVerdict { axiom: AXIOMS[2], cases, passed: witness.is_none(), witness });

    let (cases, witness) = first_failure(pairs, |&(i, j)| {
        let (f, g) = (&monos[i], &monos[j]);
        (involution(&star(f, g)) != star(&involution(g), &involution(f))).then(|| text(&[i, j]))
    });
    verdicts.push(AxiomVerdict { axiom: AXIOMS[3], cases, passed: witness.is_none(), witness });

    let m = monos.len();
    let triples: Vec<(usize, usize, usize)> =
        (0..m).flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k)))).collect();
    let (cases, witness) = first_failure(triples, |&(i, j, k)| {
        let (f, g, h) = (&monos[i], &monos[j], &monos[k]);
        (star(&star(f, g), h) != star(f, &star(g, h))).then(|| text(&[i, j, k]))
    });
    verdicts.push(AxiomVerdict { axiom: AXIOMS[4], cases, passed: witness.is_none(), witness });

    AxiomReport { kind: spec.kind, n: spec.n, order, sample_degree, verdicts }
}

/// Weyl pairing with the `−iλ/2 ∂_p ⊗ ∂_q` half removed; fails the
/// correspondence principle. Used to exercise the checker.
pub fn corrupted_weyl(n: usize, order: usize) -> StarProductSpec {
    let mut s = StarProductSpec::weyl(n, order);
    for k in 0..n {
        s.pairing[n + k][k] = Series::zero(order);
    }
    s.kind = ProductKind::Custom;
    s
}

/// `Cᵣ(f, g)`: the coefficient of `λʳ` in `f ⋆ g`.
pub fn cochain(spec: &StarProductSpec, f: &Observable, g: &Observable, r: usize) -> Result<Observable> {
    Ok(star_multiply(spec, f, g)?.lambda_part(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::oscillator;
    use crate::series::FormalSeries;

    const K: usize = 4;

    fn v() -> Vars {
        Vars::phase_space(1)
    }
    fn q() -> Observable {
        Poly::var(v(), 0, K)
    }
    fn p() -> Observable {
        Poly::var(v(), 1, K)
    }
    fn lam(c: C, r: usize) -> Observable {
        Poly::constant(v(), FormalSeries::monomial(c, r, K))
    }
    fn z() -> Observable {
        Poly::var(Vars::holomorphic(1), 0, K)
    }
    fn zb() -> Observable {
        Poly::var(Vars::holomorphic(1), 1, K)
    }

    #[test]
    fn weyl_q_p() {
        let w = StarProductSpec::weyl(1, K);
        let expected = &(&q() * &p()) + &lam(C::i().mul_ref(&C::ratio(1, 2)), 1);
        assert_eq!(star_multiply(&w, &q(), &p()).unwrap(), expected);
    }

    #[test]
    fn oscillator_square() {
        let w = StarProductSpec::weyl(1, K);
        let h = oscillator::<C>(1, K);
        let expected = &(&h * &h) + &lam(C::ratio(-1, 4), 2);
        assert_eq!(star_multiply(&w, &h, &h).unwrap(), expected);
    }

    #[test]
    fn wick_z_zbar() {
        let w = StarProductSpec::wick(1, K);
        let expected = &(&z() * &zb()) + &Poly::constant(Vars::holomorphic(1), FormalSeries::monomial(C::ratio(2, 1), 1, K));
        assert_eq!(star_multiply(&w, &z(), &zb()).unwrap(), expected);
        assert_eq!(star_multiply(&w, &zb(), &z()).unwrap(), &z() * &zb());
    }

    #[test]
    fn holomorphic_chart_agrees_with_phase_space() {
        let f = &(&(&z() * &z()) * &zb()) + &zb();
        let g = &(&zb() * &zb()) + &(&z() * &lam_h(C::i(), 1));
        for spec in [StarProductSpec::weyl(1, K), StarProductSpec::wick(1, K), StarProductSpec::std(1, K)] {
            let via_qp = star_multiply(&spec, &to_phase_space(&f).unwrap(), &to_phase_space(&g).unwrap()).unwrap();
            assert_eq!(star_multiply(&spec, &f, &g).unwrap(), to_holomorphic(&via_qp).unwrap());
        }
    }

    fn lam_h(c: C, r: usize) -> Observable {
        Poly::constant(Vars::holomorphic(1), FormalSeries::monomial(c, r, K))
    }

    #[test]
    fn commutators() {
        let w = StarProductSpec::weyl(1, K);
        assert_eq!(commutator(&w, &q(), &p()).unwrap(), lam(C::i(), 1));
        let h = oscillator::<C>(1, K);
        assert!(commutator(&w, &h, &h).unwrap().is_zero());
        let expected = q().scale_series(&FormalSeries::monomial(C::i().mul_ref(&C::ratio(2, 1)), 1, K));
        assert_eq!(commutator(&w, &q().pow(2), &p()).unwrap(), expected);
    }

    #[test]
    fn equivalence_operators() {
        let s = EquivOperatorSpec::s_operator(1, K);
        let zz = &z() * &zb();
        let expected = &zz + &Poly::constant(Vars::holomorphic(1), FormalSeries::lambda(K));
        assert_eq!(apply_equiv(&s, &zz).unwrap(), expected);

        let n = EquivOperatorSpec::n_operator(1, K);
        let expected = &(&q() * &p()) + &lam(C::i().mul_ref(&C::ratio(-1, 2)), 1);
        assert_eq!(apply_equiv(&n, &(&q() * &p())).unwrap(), expected);

        let one = Poly::one(v(), K);
        for op in [&s, &n] {
            assert_eq!(apply_equiv(op, &one).unwrap(), one);
            let f = &q().pow(3) * &p();
            assert_eq!(apply_equiv(&op.inverse(), &apply_equiv(op, &f).unwrap()).unwrap(), f);
        }
    }

    #[test]
    fn transport_weyl_to_wick_and_std() {
        let weyl = StarProductSpec::weyl(1, K);
        let s = EquivOperatorSpec::s_operator(1, K);
        let n = EquivOperatorSpec::n_operator(1, K);
        let id = EquivOperatorSpec::identity(1, K);
        let f = &q().pow(2) * &p();
        let g = &p().pow(2) + &q();
        assert_eq!(transported_product(&s, &weyl, &f, &g).unwrap(), star_multiply(&StarProductSpec::wick(1, K), &f, &g).unwrap());
        assert_eq!(transported_product(&n, &weyl, &f, &g).unwrap(), star_multiply(&StarProductSpec::std(1, K), &f, &g).unwrap());
        assert_eq!(transported_product(&id, &weyl, &f, &g).unwrap(), star_multiply(&weyl, &f, &g).unwrap());
    }

    #[test]
    fn star_exponentials() {
        let w = StarProductSpec::weyl(1, K);
        let e = star_exponential_beta(&w, &q(), 3).unwrap();
        assert_eq!(e[3], q().pow(3).scale(&C::ratio(-1, 6)));
        let h = oscillator::<C>(1, K);
        let e = star_exponential_beta(&w, &h, 2).unwrap();
        let expected = (&(&h * &h) + &lam(C::ratio(-1, 4), 2)).scale(&C::ratio(1, 2));
        assert_eq!(e[2], expected);
        assert_eq!(star_exponential_beta(&w, &h, 0).unwrap(), vec![Poly::one(v(), K)]);
    }

    #[test]
    fn builtin_products_satisfy_axioms() {
        for spec in [StarProductSpec::weyl(1, K), StarProductSpec::wick(1, K)] {
            let report = check_star_axioms(&spec, 2);
            assert!(report.all_passed(), "{:?}", report);
        }
    }

    #[test]
    fn standard_ordering_is_not_hermitian() {
        let report = check_star_axioms(&StarProductSpec::std(1, K), 2);
        for axiom in ["unit", "classical-limit", "correspondence", "associativity"] {
            assert!(report.verdict(axiom).unwrap().passed, "{}", axiom);
        }
        let h = report.verdict("hermitian").unwrap();
        assert!(!h.passed);
        assert_eq!(h.witness.as_deref(), Some(&["q1".to_string(), "p1".to_string()][..]));
    }

    #[test]
    fn corrupted_pairing_is_caught() {
        let report = check_star_axioms(&corrupted_weyl(1, K), 2);
        let v = report.verdict("correspondence").unwrap();
        assert!(!v.passed);
        assert_eq!(v.witness.as_deref(), Some(&["q1".to_string(), "p1".to_string()][..]));
    }

    #[test]
    fn custom_pairing_validation() {
        let bad = vec![vec![Series::one(K); 2]; 2];
        assert!(StarProductSpec::custom(1, bad).is_err());
        let ok = StarProductSpec::weyl(1, K).pairing().to_vec();
        assert!(StarProductSpec::custom(1, ok).is_ok());
    }

    #[test]
    fn cochains_respect_degree_bound() {
        // Cᵣ(f, g) = 0 whenever deg f < r or deg g < r.
        let vars = v();
        let monos: Vec<Observable> = monomials_up_to(2, 3).into_iter().map(|m| Poly::monomial(vars, m, Series::one(K))).collect();
        for spec in [StarProductSpec::weyl(1, K), StarProductSpec::wick(1, K), StarProductSpec::std(1, K)] {
            for f in &monos {
                for g in &monos {
                    let low = f.total_degree().unwrap().min(g.total_degree().unwrap()) as usize;
                    for r in (low + 1)..K {
                        assert!(cochain(&spec, f, g, r).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
