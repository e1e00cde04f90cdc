//! Property suites: batch checks of the library's identities, run with a
//! fixed seed so that reports are byte-for-byte reproducible.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use fdq_core::algebra::{FiniteBasis, MatrixAlgebra, ScalarAlgebra, StarAlgebra};
use fdq_core::functional::{deform_delta, positivity_samples, positivity_scan, Functional};
use fdq_core::io::{parse, parse_series, Signature};
use fdq_core::linalg::Matrix;
use fdq_core::module::{
    fedosov_project, morita_class_check, rieffel_tensor, sample_complete_positivity, Bimodule, MoritaClassData, MoritaVerdict,
    PreHilbertModule,
};
use fdq_core::observables::{involution, origin};
use fdq_core::poly::{monomials_up_to, Chart, Monomial, Poly, Vars};
use fdq_core::rep::gns::{compare_with_classical_gns, gns_build, gns_uniqueness_check, Candidate, MatrixFunctional};
use fdq_core::rep::{fock_inner, formal_adjoint, schroedinger_rep, wickrep, DiffOperator, Ordering};
use fdq_core::star::{check_star_axioms, corrupted_weyl, star_multiply, transported_product, EquivOperatorSpec, StarProductSpec};
use fdq_core::{GaussianRational as C, Observable, Result, Scalar, Series, SignVerdict};

use crate::config::RunConfig;

/// Witness lines kept per suite; counts always cover every case.
const MAX_WITNESSES: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub witnesses: Vec<String>,
    pub elapsed: Option<Duration>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "suite": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "failed": self.failed,
            "witnesses": self.witnesses,
        });
        if timing {
            v["elapsed_ms"] = json!(self.elapsed.map_or(0, |d| d.as_millis() as u64));
        }
        v
    }

    pub fn summary_line(&self, timing: bool) -> String {
        let mut s = format!("{}: {} cases, {} passed, {} failed", self.name, self.cases, self.passed, self.failed);
        if let (true, Some(d)) = (timing, self.elapsed) {
            s.push_str(&format!(" ({:.3} s)", d.as_secs_f64()));
        }
        s
    }
}

struct Recorder {
    name: &'static str,
    cases: usize,
    failed: usize,
    witnesses: Vec<String>,
}

impl Recorder {
    fn new(name: &'static str) -> Self {
        Recorder { name, cases: 0, failed: 0, witnesses: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(label.into());
            }
        }
    }

    fn check_result(&mut self, label: impl Into<String>, r: Result<bool>) {
        match r {
            Ok(ok) => self.check(label, ok),
            Err(e) => self.check(format!("{}: {}", label.into(), e), false),
        }
    }

    /// Runs `f` over `items` in parallel and records results in item order.
    fn check_all<T: Sync>(&mut self, items: &[T], f: impl Fn(&T) -> (String, Result<bool>) + Sync + Send) {
        let results: Vec<(String, Result<bool>)> = items.par_iter().map(f).collect();
        for (label, r) in results {
            self.check_result(label, r);
        }
    }

    fn finish(self, elapsed: Duration) -> SuiteReport {
        SuiteReport {
            name: self.name.to_string(),
            cases: self.cases,
            passed: self.cases - self.failed,
            failed: self.failed,
            witnesses: self.witnesses,
            elapsed: Some(elapsed),
        }
    }
}

type SuiteFn = fn(&RunConfig, &mut Recorder);

/// Every suite in canonical order.
const SUITES: &[(&str, SuiteFn)] = &[
    ("oscillator", oscillator),
    ("ccr", ccr),
    ("wick-positivity", wick_positivity),
    ("equivalence-transport", equivalence_transport),
    ("star-axioms", star_axioms),
    ("deformed-state", deformed_state),
    ("fock-rep", fock_rep),
    ("schroedinger-rep", schroedinger_suite),
    ("gns", gns),
    ("gns-classical-limit", gns_classical_limit),
    ("fedosov", fedosov),
    ("rieffel", rieffel),
    ("morita", morita),
    ("round-trip", round_trip),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs one named suite, or all of them for `"all"`. `None` for unknown names.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Option<Vec<SuiteReport>> {
    let selected: Vec<(usize, &(&str, SuiteFn))> = if name == "all" {
        SUITES.iter().enumerate().collect()
    } else {
        SUITES.iter().enumerate().filter(|(_, (n, _))| *n == name).collect()
    };
    if selected.is_empty() {
        return None;
    }
    Some(
        selected
            .par_iter()
            .map(|(_, (n, f))| {
                let start = Instant::now();
                let mut rec = Recorder::new(n);
                f(cfg, &mut rec);
                rec.finish(start.elapsed())
            })
            .collect(),
    )
}

/// Seeded generator, independent per suite.
fn rng_for(cfg: &RunConfig, suite: &str) -> ChaCha8Rng {
    let salt = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt)
}

fn obs(src: &str, n: usize, k: usize) -> Result<Observable> {
    parse(src, Signature::new(n, k))
}

fn monomial_obs(vars: Vars, m: &Monomial, k: usize) -> Observable {
    Poly::monomial(vars, m.clone(), Series::one(k))
}

fn monomials(vars: Vars, k: usize, deg: u32) -> Vec<Observable> {
    monomials_up_to(vars.count(), deg).iter().map(|m| monomial_obs(vars, m, k)).collect()
}

fn pairs<T: Clone>(xs: &[T]) -> Vec<(T, T)> {
    xs.iter().flat_map(|a| xs.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

fn oscillator(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    rec.check(format!("oscillator identity needs K >= 3, got {}", k), k >= 3);
    let run = || -> Result<(bool, bool, bool)> {
        let weyl = StarProductSpec::weyl(1, k);
        let h = obs("1/2*(p1^2 + q1^2)", 1, k)?;
        let hh = star_multiply(&weyl, &h, &h)?;
        let expected = obs("1/4*(p1^2 + q1^2)^2 - 1/4*l^2", 1, k)?;
        let v = Functional::delta_origin(1).evaluate(&hh)?;
        let sign = v.sign()?;
        Ok((hh == expected, v == parse_series("-1/4*l^2", k)?, sign == SignVerdict::Negative))
    };
    match run() {
        Ok((a, b, c)) => {
            rec.check("H*H = H^2 - 1/4*l^2", a);
            rec.check("delta0(H*H) = (-1/4)*l^2", b);
            rec.check("sign of delta0(H*H) is negative", c);
        }
        Err(e) => rec.check(format!("oscillator: {}", e), false),
    }
}

fn ccr(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    for n in 1..=2 {
        let weyl = StarProductSpec::weyl(n, k);
        let vars = Vars::phase_space(n);
        let il = Poly::constant(vars, Series::monomial(C::i(), 1, k));
        let zero = Poly::zero(vars, k);
        for a in 0..2 * n {
            for b in 0..2 * n {
                let (x, y) = (Poly::var(vars, a, k), Poly::var(vars, b, k));
                let expected = if a < n && b == a + n {
                    il.clone()
                } else if a >= n && b + n == a {
                    -&il
                } else {
                    zero.clone()
                };
                let label = format!("[{}, {}] (n = {})", vars.name(a), vars.name(b), n);
                let r = fdq_core::star::commutator(&weyl, &x, &y)
                    .map(|c| c == expected && (2..k).all(|r| c.lambda_part(r).is_zero()));
                rec.check_result(label, r);
            }
        }
    }
}

/// `Σ_β (2λ)^{|β|}/β! |∂^β_{z̄} f(0)|²`.
fn wick_oracle(f: &Observable, k: usize) -> Result<Series> {
    let n = f.vars().n;
    let deg = f.total_degree().unwrap_or(0);
    let zero = origin::<C>(n);
    let mut acc = Series::zero(k);
    for beta in monomials_up_to(n, deg) {
        let mut exps = vec![0; n];
        exps.extend_from_slice(beta.exps());
        let v = f.derivative_multi(&Monomial::new(exps)).eval(&zero)?;
        let r = beta.degree() as usize;
        let weight = Series::monomial(C::ratio(1 << r, beta.factorial() as i64), r, k);
        acc = &acc + &(&weight * &(&v * &v.conj()));
    }
    Ok(acc)
}

fn wick_positivity(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    for n in 1..=2 {
        let wick = StarProductSpec::wick(n, k);
        let delta = Functional::delta_origin(n);
        let samples = positivity_samples(Vars::holomorphic(n), k, 3);
        rec.check_all(&samples, |f| {
            let r = (|| {
                let v = delta.evaluate(&star_multiply(&wick, &involution(f), f)?)?;
                Ok(v.sign()?.is_nonnegative() && v == wick_oracle(f, k)?)
            })();
            (format!("delta0(conj(f)*f) for f = {} (n = {})", f, n), r)
        });
    }
}

fn equivalence_transport(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    let weyl = StarProductSpec::weyl(1, k);
    let targets = [
        (EquivOperatorSpec::s_operator(1, k), StarProductSpec::wick(1, k)),
        (EquivOperatorSpec::n_operator(1, k), StarProductSpec::std(1, k)),
    ];
    let ms = monomials(Vars::phase_space(1), k, 3);
    for (op, target) in &targets {
        rec.check_all(&pairs(&ms), |(f, g)| {
            let r = (|| Ok(transported_product(op, &weyl, f, g)? == star_multiply(target, f, g)?))();
            (format!("{} transports weyl to {} on ({}, {})", op.name(), target.kind().name(), f, g), r)
        });
    }
}

fn star_axioms(cfg: &RunConfig, rec: &mut Recorder) {
    let (n, k) = (cfg.n, cfg.k);
    let specs = [StarProductSpec::weyl(n, k), StarProductSpec::wick(n, k), StarProductSpec::std(n, k)];
    for spec in &specs {
        let report = check_star_axioms(spec, 3);
        for v in &report.verdicts {
            let label = match &v.witness {
                Some(w) => format!("{} {}: witness {}", spec.kind().name(), v.axiom, w.join(", ")),
                None => format!("{} {}", spec.kind().name(), v.axiom),
            };
            rec.check(label, v.passed);
        }
    }
    let bad = check_star_axioms(&corrupted_weyl(n, k), 3);
    let caught = bad.verdict("correspondence").is_some_and(|v| !v.passed && v.witness.is_some());
    rec.check("corrupted pairing is rejected by the correspondence check with a witness", caught);
}

fn deformed_state(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    let mut run = || -> Result<()> {
        let w = deform_delta(origin(1), k)?;
        let weyl = StarProductSpec::weyl(1, k);
        let report = positivity_scan(&w, &weyl, 3);
        for e in &report.entries {
            rec.check(format!("{}: value {} for f = {}", w, e.value, e.input), !e.refutes());
        }
        let h = obs("1/2*(p1^2 + q1^2)", 1, k)?;
        let v = w.evaluate(&star_multiply(&weyl, &h, &h)?)?;
        rec.check(format!("{} of H*H is {}, expected 1/4*l^2", w, v), v == parse_series("1/4*l^2", k)?);
        Ok(())
    };
    if let Err(e) = run() {
        rec.check(format!("deformed state: {}", e), false);
    }
}

fn fock_rep(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    let holo = Vars::holomorphic(1);
    let fock = Vars::fock(1);
    let wick = StarProductSpec::wick(1, k);
    let two_l = Series::monomial(C::from_i64(2), 1, k);
    let z = Poly::var(holo, 0, k);
    let zb = Poly::var(holo, 1, k);
    rec.check_result(
        "wickrep(z1) = 2*l*d/dyb1",
        wickrep(&z).map(|d| d == DiffOperator::partial_var(fock, 0, k).scale_series(&two_l)),
    );
    rec.check_result(
        "wickrep(zb1) = yb1",
        wickrep(&zb).map(|d| d == DiffOperator::multiplication(&Poly::var(fock, 0, k))),
    );
    let ms = monomials(holo, k, 3);
    rec.check_all(&pairs(&ms), |(f, g)| {
        let r = (|| Ok(wickrep(&star_multiply(&wick, f, g)?)? == wickrep(f)?.compose(&wickrep(g)?)?))();
        (format!("wickrep({} * {})", f, g), r)
    });
    let states = monomials(fock, k, 3);
    let cases: Vec<(Observable, Observable, Observable)> = ms
        .iter()
        .flat_map(|f| pairs(&states).into_iter().map(move |(a, b)| (f.clone(), a, b)))
        .collect();
    rec.check_all(&cases, |(f, phi, psi)| {
        let r = (|| {
            let a = wickrep(f)?;
            let a_dag = wickrep(&involution(f))?;
            Ok(fock_inner(phi, &a.apply(psi)?)? == fock_inner(&a_dag.apply(phi)?, psi)?)
        })();
        (format!("<{}, wickrep({}) {}> adjoint law", phi, f, psi), r)
    });
}

fn schroedinger_suite(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    let config = Vars::configuration(1);
    let minus_il = Series::monomial(-C::i(), 1, k);
    let run = || -> Result<(bool, bool)> {
        let q = schroedinger_rep(Ordering::Weyl, &obs("q1", 1, k)?)? == DiffOperator::multiplication(&Poly::var(config, 0, k));
        let p = schroedinger_rep(Ordering::Weyl, &obs("p1", 1, k)?)? == DiffOperator::partial_var(config, 0, k).scale_series(&minus_il);
        Ok((q, p))
    };
    match run() {
        Ok((q, p)) => {
            rec.check("rho_weyl(q1) = q1", q);
            rec.check("rho_weyl(p1) = (-i)*l*d/dq1", p);
        }
        Err(e) => rec.check(format!("schroedinger basics: {}", e), false),
    }
    let ms = monomials(Vars::phase_space(1), k, 3);
    for (ordering, spec) in [(Ordering::Weyl, StarProductSpec::weyl(1, k)), (Ordering::Std, StarProductSpec::std(1, k))] {
        rec.check_all(&pairs(&ms), |(f, g)| {
            let r = (|| {
                let lhs = schroedinger_rep(ordering, &star_multiply(&spec, f, g)?)?;
                Ok(lhs == schroedinger_rep(ordering, f)?.compose(&schroedinger_rep(ordering, g)?)?)
            })();
            (format!("rho_{}({} * {})", spec.kind().name(), f, g), r)
        });
    }
    rec.check_all(&ms, |f| {
        let r = (|| Ok(formal_adjoint(&schroedinger_rep(Ordering::Weyl, f)?) == schroedinger_rep(Ordering::Weyl, &involution(f))?))();
        (format!("rho_weyl({})^+ = rho_weyl(conj)", f), r)
    });
}

fn diag_weights(w: &[Series], k: usize) -> MatrixFunctional {
    let m = w.len();
    let mut out = Matrix::zeros(m, m, k);
    for (i, x) in w.iter().enumerate() {
        out.set(i, i, x.clone());
    }
    MatrixFunctional::new(out)
}

fn gns(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    let alg = MatrixAlgebra::plain(2, k);
    let omega = diag_weights(&[Series::one(k), Series::zero(k)], k);
    match gns_build(&alg, &omega, &alg.basis()) {
        Ok(r) => {
            rec.check(format!("GNS of A11 has dimension {}, expected 2", r.dim()), r.dim() == 2);
            rec.check(format!("GNS Gram of A11 is {}, expected identity", r.gram), r.gram == Matrix::identity(2, k));
            rec.check("GNS data satisfies the representation identities", r.verify());
            rec.check_result("unitarily equivalent to the defining representation", gns_uniqueness_check(&r, &Candidate::defining(&alg)));
        }
        Err(e) => rec.check(format!("gns_build: {}", e), false),
    }
}

fn gns_classical_limit(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    let mut rng = rng_for(cfg, "gns-classical-limit");
    let mut cases: Vec<Vec<Series>> = vec![vec![Series::one(k), Series::lambda(k)]];
    for _ in 0..10 {
        let m = rng.gen_range(1..=3);
        let w: Vec<Series> = (0..m)
            .map(|_| {
                let a = rng.gen_range(0..=2);
                let b = rng.gen_range(1..=3);
                Series::from_coeffs((0..k).map(|r| C::from_i64(if r == 0 { a } else if r == 1 { b } else { 0 })).collect())
            })
            .collect();
        cases.push(w);
    }
    rec.check_all(&cases, |w| {
        let alg = MatrixAlgebra::plain(w.len(), k);
        let r = (|| Ok(compare_with_classical_gns(&gns_build(&alg, &diag_weights(w, k), &[])?)?.equivalent()))();
        let ws: Vec<String> = w.iter().map(ToString::to_string).collect();
        (format!("cl(GNS(omega)) ~ GNS(cl(omega)) for diagonal weights [{}]", ws.join(", ")), r)
    });
}

fn small_gaussian(rng: &mut ChaCha8Rng, imaginary: bool) -> C {
    let re = rng.gen_range(-2..=2);
    let im = if imaginary { rng.gen_range(-1..=1) } else { 0 };
    C::new(fdq_core::Rational::from_integer(re.into()), fdq_core::Rational::from_integer(im.into()))
}

fn random_idempotent(rng: &mut ChaCha8Rng, m: usize, hermitian: bool) -> Vec<Vec<C>> {
    if hermitian {
        let v: Vec<C> = loop {
            let v: Vec<C> = (0..m).map(|_| small_gaussian(rng, true)).collect();
            if v.iter().any(|x| *x != C::from_i64(0)) {
                break v;
            }
        };
        let norm: C = v.iter().fold(C::from_i64(0), |acc, x| acc + x * x.conj());
        let inv = norm.inverse().expect("nonzero norm");
        let complement = m > 2 && rng.gen_bool(0.5);
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let p = &v[i] * v[j].conj() * &inv;
                        if complement {
                            (if i == j { C::from_i64(1) } else { C::from_i64(0) }) - p
                        } else {
                            p
                        }
                    })
                    .collect()
            })
            .collect()
    } else {
        loop {
            let s: Vec<Vec<C>> = (0..m).map(|_| (0..m).map(|_| small_gaussian(rng, false)).collect()).collect();
            let Ok(sm) = Matrix::from_scalars(&s, 1) else { continue };
            let Ok(sinv) = sm.inverse() else { continue };
            let d: Vec<bool> = (0..m).map(|_| rng.gen_bool(0.5)).collect();
            let dm = Matrix::from_fn(m, m, 1, |i, j| if i == j && d[i] { Series::one(1) } else { Series::zero(1) });
            let p = &(&sm * &dm) * &sinv;
            return (0..m).map(|i| (0..m).map(|j| p.get(i, j).coeff(0).clone()).collect()).collect();
        }
    }
}

fn random_deformation(rng: &mut ChaCha8Rng, m: usize, hermitian: bool) -> Vec<Vec<C>> {
    let mut e: Vec<Vec<C>> = (0..m).map(|_| (0..m).map(|_| small_gaussian(rng, hermitian)).collect()).collect();
    if hermitian {
        for i in 0..m {
            e[i][i] = C::new(e[i][i].re.clone(), fdq_core::Rational::from_integer(0.into()));
            for j in 0..i {
                e[i][j] = e[j][i].conj();
            }
        }
    }
    e
}

fn fedosov(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    let run_example = || -> Result<bool> {
        let alg = MatrixAlgebra::deformed(Matrix::unit(2, 2, 0, 1, k))?;
        let h = C::ratio(1, 2);
        let p0 = Matrix::from_scalars(&[vec![h.clone(), h.clone()], vec![h.clone(), h]], k)?;
        let p = fedosov_project(&alg, &p0)?;
        // 2/(2+λ) = Σ (−λ/2)^r
        let c = Series::from_coeffs((0..k).map(|r| C::ratio(if r % 2 == 0 { 1 } else { -1 }, 1 << r)).collect());
        Ok(p == p0.scale(&c) && alg.mul(&p, &p) == p)
    };
    rec.check_result("P0 = 1/2*[[1, 1], [1, 1]] with E = E12 gives (2/(2+l))*P0", run_example());

    let mut rng = rng_for(cfg, "fedosov");
    let samples: Vec<(usize, bool, Vec<Vec<C>>, Vec<Vec<C>>)> = (0..50)
        .map(|i| {
            let m = if i < 25 { 2 } else { 3 };
            let hermitian = i % 2 == 0;
            let p0 = random_idempotent(&mut rng, m, hermitian);
            let e = random_deformation(&mut rng, m, hermitian);
            (m, hermitian, p0, e)
        })
        .collect();
    rec.check_all(&samples, |(m, hermitian, p0, e)| {
        let r = (|| {
            let alg = MatrixAlgebra::deformed(Matrix::from_scalars(e, k)?)?;
            let p0 = Matrix::from_scalars(p0, k)?;
            let p = fedosov_project(&alg, &p0)?;
            let idempotent = alg.mul(&p, &p) == p;
            let limit = p.classical_part() == p0;
            Ok(idempotent && limit && (!hermitian || p.is_hermitian()))
        })();
        let label = format!(
            "M{} {}P0 = {} with E = {}",
            m,
            if *hermitian { "Hermitian " } else { "" },
            fdq_core::io::print::matrix_text(p0),
            fdq_core::io::print::matrix_text(e)
        );
        (label, r)
    });
}

fn random_series(rng: &mut ChaCha8Rng, k: usize, constant: i64) -> Series {
    Series::from_coeffs((0..k).map(|r| if r == 0 { C::from_i64(constant) } else { small_gaussian(rng, true) }).collect())
}

/// `X* X` for an upper-triangular block matrix `X` with invertible diagonal.
fn random_m2_module(rng: &mut ChaCha8Rng, rank: usize, k: usize) -> Result<PreHilbertModule<MatrixAlgebra>> {
    let alg = MatrixAlgebra::plain(2, k);
    let lam = Series::lambda(k);
    let mut x: Vec<Vec<Matrix>> = vec![vec![alg.zero(); rank]; rank];
    for (i, row) in x.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            if j < i {
                continue;
            }
            let entries: Vec<Series> = (0..4).map(|_| random_series(rng, k, 0)).collect();
            let noise = Matrix::from_fn(2, 2, k, |a, b| entries[2 * a + b].clone());
            *e = if i == j { &alg.unit() + &noise.scale(&lam) } else { noise };
        }
    }
    let gram = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| (0..rank).fold(alg.zero(), |acc, l| &acc + &(&x[l][i].adjoint() * &x[l][j])))
                .collect()
        })
        .collect();
    PreHilbertModule::new(alg, gram)
}

fn trivial_left<A: FiniteBasis>(module: PreHilbertModule<A>) -> Result<Bimodule<ScalarAlgebra, A>> {
    let d = module.rank();
    let a = module.base.clone();
    let id = (0..d).map(|i| (0..d).map(|j| if i == j { a.unit() } else { a.zero() }).collect()).collect();
    Bimodule::new(ScalarAlgebra { order: a.order() }, module, vec![id])
}

fn rieffel(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    let mut rng = rng_for(cfg, "rieffel");
    let scalar = ScalarAlgebra { order: k };

    // Unit bimodule over the scalars: nondegenerate Hermitian Grams.
    for d in 1..=3 {
        let mut g: Vec<Vec<Series>> = vec![vec![Series::zero(k); d]; d];
        for i in 0..d {
            for j in i..d {
                let head = if i == j { rng.gen_range(1..=3) } else { 0 };
                let mut s = random_series(&mut rng, k, head);
                if i == j {
                    s = Series::from_coeffs(s.coeffs().iter().map(|c| C::new(c.re.clone(), fdq_core::Rational::from_integer(0.into()))).collect());
                } else {
                    s = &s * &Series::lambda(k);
                }
                g[j][i] = s.conj();
                g[i][j] = s;
            }
        }
        let r = (|| {
            let f = trivial_left(PreHilbertModule::new(scalar.clone(), g.clone())?)?;
            let out = rieffel_tensor(&f, &Bimodule::regular(scalar.clone()))?;
            Ok(out.module.gram() == &g)
        })();
        rec.check_result(format!("unit bimodule preserves a rank {} scalar Gram", d), r);
    }

    // Unit bimodule over M2, then induction to R² through the column module.
    let mut modules = vec![PreHilbertModule::canonical(MatrixAlgebra::plain(2, k), 1), PreHilbertModule::canonical(MatrixAlgebra::plain(2, k), 2)];
    for rank in [1, 2, 2] {
        match random_m2_module(&mut rng, rank, k) {
            Ok(m) => modules.push(m),
            Err(e) => rec.check(format!("random module: {}", e), false),
        }
    }
    let alg = MatrixAlgebra::plain(2, k);
    let mut degenerate = vec![vec![alg.zero(), alg.zero()], vec![alg.zero(), alg.zero()]];
    degenerate[0][0] = alg.unit();
    match PreHilbertModule::new(alg.clone(), degenerate) {
        Ok(m) => modules.push(m),
        Err(e) => rec.check(format!("degenerate module: {}", e), false),
    }
    let column = Bimodule::column(2, k);
    for (idx, m) in modules.iter().enumerate() {
        let degenerate = idx + 1 == modules.len();
        if !degenerate {
            let r = (|| {
                let out = rieffel_tensor(&trivial_left(m.clone())?, &Bimodule::regular(alg.clone()))?;
                Ok(out.module.gram() == m.gram())
            })();
            rec.check_result(format!("unit bimodule preserves M2-module #{} (rank {})", idx, m.rank()), r);
        }
        let r = (|| {
            let out = rieffel_tensor(&trivial_left(m.clone())?, &column)?;
            let expected_rank = if degenerate { 2 } else { 2 * m.rank() };
            Ok(out.module.rank() == expected_rank && sample_complete_positivity(&out.module, 8)?.passed())
        })();
        rec.check_result(format!("induced Gram of M2-module #{} passes the 2x2/3x3 positivity samples", idx), r);
    }
}

fn class(c: Series) -> MoritaClassData {
    MoritaClassData { m: 1, pole: Vec::new(), class: vec![c], exact: true }
}

fn morita(cfg: &RunConfig, rec: &mut Recorder) {
    let k = cfg.k;
    let zero = MoritaClassData::zero(1, k);
    let examples = [
        (Series::constant(C::from_i64(3), k), MoritaVerdict::Equivalent),
        (Series::constant(C::ratio(1, 2), k), MoritaVerdict::NotEquivalent),
        (Series::lambda(k), MoritaVerdict::NotEquivalent),
    ];
    for (d, expected) in examples {
        let r = morita_class_check(&zero, &class(d.clone())).map(|v| v == expected);
        rec.check_result(format!("difference {} is {}", d, expected), r);
    }
    let mut rng = rng_for(cfg, "morita");
    let bases = [Series::zero(k), Series::constant(C::ratio(1, 2), k), Series::lambda(k), Series::constant(C::i(), k)];
    let draw = |rng: &mut ChaCha8Rng| {
        let b = &bases[rng.gen_range(0..bases.len())];
        class(b + &Series::constant(C::from_i64(rng.gen_range(-2..=2)), k))
    };
    for t in 0..20 {
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let r = (|| {
            let eq = |x: &MoritaClassData, y: &MoritaClassData| morita_class_check(x, y).map(|v| v == MoritaVerdict::Equivalent);
            let reflexive = eq(&a, &a)? && eq(&b, &b)? && eq(&c, &c)?;
            let symmetric = eq(&a, &b)? == eq(&b, &a)? && eq(&b, &c)? == eq(&c, &b)? && eq(&a, &c)? == eq(&c, &a)?;
            let transitive = !(eq(&a, &b)? && eq(&b, &c)?) || eq(&a, &c)?;
            Ok(reflexive && symmetric && transitive)
        })();
        rec.check_result(format!("triple #{}: ({}, {}, {})", t, a.class[0], b.class[0], c.class[0]), r);
    }
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> C {
    let re = fdq_core::Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into());
    let im = if rng.gen_bool(0.3) {
        fdq_core::Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into())
    } else {
        fdq_core::Rational::from_integer(0.into())
    };
    C::new(re, im)
}

fn random_text_series(rng: &mut ChaCha8Rng, k: usize) -> Series {
    Series::from_coeffs((0..k).map(|_| if rng.gen_bool(0.5) { random_coefficient(rng) } else { C::from_i64(0) }).collect())
}

fn round_trip(cfg: &RunConfig, rec: &mut Recorder) {
    let mut rng = rng_for(cfg, "round-trip");
    let charts = [Chart::PhaseSpace, Chart::Holomorphic, Chart::Fock, Chart::Configuration];
    enum Value {
        Obs(Observable, Chart),
        Ser(Series),
    }
    let values: Vec<Value> = (0..1000)
        .map(|i| {
            let k = rng.gen_range(1..=6);
            if i % 10 < 7 {
                let chart = charts[rng.gen_range(0..charts.len())];
                let vars = Vars { chart, n: rng.gen_range(1..=2) };
                let terms: Vec<(Monomial, Series)> = (0..rng.gen_range(0..=4))
                    .map(|_| {
                        let exps = (0..vars.count()).map(|_| rng.gen_range(0..=2)).collect();
                        (Monomial::new(exps), random_text_series(&mut rng, k))
                    })
                    .collect();
                Value::Obs(Poly::from_terms(vars, k, terms), chart)
            } else {
                Value::Ser(random_text_series(&mut rng, k))
            }
        })
        .collect();
    rec.check_all(&values, |v| match v {
        Value::Obs(f, chart) => {
            let text = f.to_string();
            let r = parse(&text, Signature::with_chart(f.vars().n, f.order(), *chart)).map(|g| &g == f);
            (format!("observable '{}'", text), r)
        }
        Value::Ser(s) => {
            let text = s.to_string();
            (format!("series '{}'", text), parse_series(&text, s.order()).map(|t| &t == s))
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wick_oracle_examples() {
        let k = 4;
        let f = parse("zb1", Signature::new(1, k)).unwrap();
        assert_eq!(wick_oracle(&f, k).unwrap(), Series::monomial(C::from_i64(2), 1, k));
        let f = parse("zb1^2", Signature::new(1, k)).unwrap();
        assert_eq!(wick_oracle(&f, k).unwrap(), Series::monomial(C::from_i64(8), 2, k));
    }

    #[test]
    fn suites_are_deterministic_and_named() {
        let cfg = RunConfig { k: 4, ..RunConfig::default() };
        let a = run_suite("morita", &cfg).unwrap();
        let b = run_suite("morita", &cfg).unwrap();
        assert_eq!(a[0].witnesses, b[0].witnesses);
        assert!(a[0].ok(), "{:?}", a);
        assert!(run_suite("nope", &cfg).is_none());
    }
}
