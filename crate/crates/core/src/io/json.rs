//! JSON documents.
//!
//! Every top-level document carries `"schema_version": 1`. Readers report
//! the JSON pointer of the first offending value. Integers that do not fit
//! in 64 bits are written as decimal strings; both forms are accepted.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::algebra::{MatrixAlgebra, ScalarAlgebra, StarAlgebra};
use crate::error::{Error, Result};
use crate::functional::{Functional, PositivityReport};
use crate::linalg::Matrix;
use crate::module::{MoritaClassData, MoritaVerdict, PreHilbertModule, PsdVerdict};
use crate::poly::{Chart, Monomial, Vars};
use crate::rep::gns::{GnsResult, MatrixFunctional};
use crate::rep::DiffOperator;
use crate::scalar::{GaussianRational as C, Rational};
use crate::series::SignVerdict;
use crate::star::{AxiomReport, EquivOperatorSpec, ProductKind, StarProductSpec};
use crate::{Observable, Series};

pub const SCHEMA_VERSION: u64 = 1;

pub trait ToJson {
    fn to_json(&self) -> Value;
}

pub trait FromJson: Sized {
    /// `ptr` is the JSON pointer of `v` inside the document.
    fn from_json(v: &Value, ptr: &str) -> Result<Self>;
}

/// `x` as a versioned document.
pub fn serialize<T: ToJson>(x: &T) -> Value {
    let mut v = x.to_json();
    if let Value::Object(map) = &mut v {
        let mut out = Map::new();
        out.insert("schema_version".into(), json!(SCHEMA_VERSION));
        out.extend(std::mem::take(map));
        Value::Object(out)
    } else {
        json!({ "schema_version": SCHEMA_VERSION, "value": v })
    }
}

pub fn deserialize<T: FromJson>(v: &Value) -> Result<T> {
    match v.get("schema_version").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        Some(other) => return Err(Error::schema("/schema_version", format!("unsupported version {}", other))),
        None => return Err(Error::schema("/schema_version", "missing or not an integer")),
    }
    T::from_json(v, "")
}

pub fn to_string<T: ToJson>(x: &T) -> String {
    serde_json::to_string_pretty(&serialize(x)).expect("JSON values always serialize")
}

pub fn from_str<T: FromJson>(s: &str) -> Result<T> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::schema("", format!("invalid JSON: {}", e)))?;
    deserialize(&v)
}

fn child(ptr: &str, key: impl std::fmt::Display) -> String {
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{}/{}", ptr, key)
}

fn field<'a>(v: &'a Value, ptr: &str, key: &str) -> Result<(&'a Value, String)> {
    let obj = v.as_object().ok_or_else(|| Error::schema(ptr, "expected an object"))?;
    let p = child(ptr, key);
    obj.get(key).map(|x| (x, p.clone())).ok_or_else(|| Error::schema(p, "missing field"))
}

fn opt_field<'a>(v: &'a Value, ptr: &str, key: &str) -> Result<Option<(&'a Value, String)>> {
    let obj = v.as_object().ok_or_else(|| Error::schema(ptr, "expected an object"))?;
    Ok(obj.get(key).filter(|x| !x.is_null()).map(|x| (x, child(ptr, key))))
}

fn array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(ptr, "expected an array"))
}

fn usize_of(v: &Value, ptr: &str) -> Result<usize> {
    v.as_u64().and_then(|x| usize::try_from(x).ok()).ok_or_else(|| Error::schema(ptr, "expected a nonnegative integer"))
}

fn str_of<'a>(v: &'a Value, ptr: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::schema(ptr, "expected a string"))
}

fn bool_of(v: &Value, ptr: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| Error::schema(ptr, "expected a boolean"))
}

fn usize_field(v: &Value, ptr: &str, key: &str) -> Result<usize> {
    let (x, p) = field(v, ptr, key)?;
    usize_of(x, &p)
}

fn list<T>(v: &Value, ptr: &str, f: impl Fn(&Value, &str) -> Result<T>) -> Result<Vec<T>> {
    array(v, ptr)?.iter().enumerate().map(|(i, x)| f(x, &child(ptr, i))).collect()
}

fn list_json<T: FromJson>(v: &Value, ptr: &str) -> Result<Vec<T>> {
    list(v, ptr, T::from_json)
}

fn grid<T>(v: &Value, ptr: &str, f: impl Fn(&Value, &str) -> Result<T> + Copy) -> Result<Vec<Vec<T>>> {
    list(v, ptr, |row, p| list(row, p, f))
}

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

fn int_of(v: &Value, ptr: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| Error::schema(ptr, "expected an integer")),
        Value::String(s) => s.parse().map_err(|_| Error::schema(ptr, "expected a decimal integer")),
        _ => Err(Error::schema(ptr, "expected an integer")),
    }
}

fn rational_of(num: &Value, den: &Value, ptr: &str, idx: usize) -> Result<Rational> {
    let n = int_of(num, &child(ptr, idx))?;
    let d = int_of(den, &child(ptr, idx + 1))?;
    if d.is_zero() {
        return Err(Error::schema(child(ptr, idx + 1), "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

impl ToJson for C {
    /// `[re_num, re_den, im_num, im_den]`
    fn to_json(&self) -> Value {
        json!([int_json(self.re.numer()), int_json(self.re.denom()), int_json(self.im.numer()), int_json(self.im.denom())])
    }
}

impl FromJson for C {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let a = array(v, ptr)?;
        if a.len() != 4 {
            return Err(Error::schema(ptr, "expected [re_num, re_den, im_num, im_den]"));
        }
        Ok(C::new(rational_of(&a[0], &a[1], ptr, 0)?, rational_of(&a[2], &a[3], ptr, 2)?))
    }
}

impl ToJson for Series {
    fn to_json(&self) -> Value {
        json!({ "K": self.order(), "coeffs": self.coeffs().iter().map(ToJson::to_json).collect::<Vec<_>>() })
    }
}

impl FromJson for Series {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let k = usize_field(v, ptr, "K")?;
        if k == 0 {
            return Err(Error::schema(child(ptr, "K"), "truncation order must be at least 1"));
        }
        let (c, p) = field(v, ptr, "coeffs")?;
        let mut coeffs: Vec<C> = list_json(c, &p)?;
        if coeffs.len() > k {
            return Err(Error::schema(p, format!("{} coefficients exceed K = {}", coeffs.len(), k)));
        }
        coeffs.resize(k, C::zero());
        Ok(Series::from_coeffs(coeffs))
    }
}

/// A series that must have truncation order `k`.
fn series_at(v: &Value, ptr: &str, k: usize) -> Result<Series> {
    let s = Series::from_json(v, ptr)?;
    if s.order() != k {
        return Err(Error::schema(child(ptr, "K"), format!("expected K = {}, found {}", k, s.order())));
    }
    Ok(s)
}

fn vars_json(vars: Vars) -> (usize, &'static str) {
    (vars.n, vars.chart.name())
}

fn vars_of(v: &Value, ptr: &str) -> Result<Vars> {
    let n = usize_field(v, ptr, "n")?;
    let chart = match opt_field(v, ptr, "chart")? {
        None => Chart::PhaseSpace,
        Some((c, p)) => Chart::from_name(str_of(c, &p)?).ok_or_else(|| Error::schema(p, "unknown chart"))?,
    };
    Ok(Vars { chart, n })
}

fn exps_of(v: &Value, ptr: &str, vars: Vars) -> Result<Monomial> {
    let e: Vec<u32> = list(v, ptr, |x, p| {
        x.as_u64().and_then(|y| u32::try_from(y).ok()).ok_or_else(|| Error::schema(p, "expected an exponent"))
    })?;
    if e.len() != vars.count() {
        return Err(Error::schema(ptr, format!("expected {} exponents, found {}", vars.count(), e.len())));
    }
    Ok(Monomial::new(e))
}

impl ToJson for Observable {
    fn to_json(&self) -> Value {
        let (n, chart) = vars_json(self.vars());
        let terms: Vec<Value> = self.terms().map(|(m, c)| json!({ "exp": m.exps(), "coeff": c.to_json() })).collect();
        json!({ "n": n, "chart": chart, "K": self.order(), "terms": terms })
    }
}

impl FromJson for Observable {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let vars = vars_of(v, ptr)?;
        let (t, tp) = field(v, ptr, "terms")?;
        let terms = array(t, &tp)?;
        let k = match opt_field(v, ptr, "K")? {
            Some((x, p)) => usize_of(x, &p)?,
            None => match terms.first() {
                Some(first) => usize_field(field(first, &child(&tp, 0), "coeff")?.0, &child(&child(&tp, 0), "coeff"), "K")?,
                None => crate::DEFAULT_ORDER,
            },
        };
        let mut out = Vec::with_capacity(terms.len());
        for (i, term) in terms.iter().enumerate() {
            let p = child(&tp, i);
            let (e, ep) = field(term, &p, "exp")?;
            let (c, cp) = field(term, &p, "coeff")?;
            out.push((exps_of(e, &ep, vars)?, series_at(c, &cp, k)?));
        }
        Ok(Observable::from_terms(vars, k, out))
    }
}

impl ToJson for DiffOperator {
    fn to_json(&self) -> Value {
        let (n, chart) = vars_json(self.vars());
        let terms: Vec<Value> = self.terms().map(|(m, c)| json!({ "deriv": m.exps(), "coeff": c.to_json() })).collect();
        json!({ "n": n, "chart": chart, "K": self.order(), "terms": terms })
    }
}

impl FromJson for DiffOperator {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let vars = vars_of(v, ptr)?;
        let k = usize_field(v, ptr, "K")?;
        let (t, tp) = field(v, ptr, "terms")?;
        let terms = list(t, &tp, |term, p| {
            let (e, ep) = field(term, p, "deriv")?;
            let (c, cp) = field(term, p, "coeff")?;
            let coeff = Observable::from_json(c, &cp)?;
            if coeff.order() != k || coeff.vars() != vars {
                return Err(Error::schema(cp, "coefficient does not match the operator's variables or K"));
            }
            Ok((exps_of(e, &ep, vars)?, coeff))
        })?;
        DiffOperator::from_terms(vars, k, terms).map_err(|e| Error::schema(tp, e.to_string()))
    }
}

impl ToJson for StarProductSpec {
    fn to_json(&self) -> Value {
        json!({
            "kind": self.kind().name(),
            "n": self.n(),
            "K": self.order(),
            "pairing": self.pairing().iter().map(|r| r.iter().map(ToJson::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

impl FromJson for StarProductSpec {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let (kind_v, kp) = field(v, ptr, "kind")?;
        let kind = ProductKind::from_name(str_of(kind_v, &kp)?).ok_or_else(|| Error::schema(kp, "unknown product kind"))?;
        let n = usize_field(v, ptr, "n")?;
        if n == 0 {
            return Err(Error::schema(child(ptr, "n"), "n must be at least 1"));
        }
        let k = match opt_field(v, ptr, "K")? {
            Some((x, p)) => usize_of(x, &p)?,
            None => crate::DEFAULT_ORDER,
        };
        match opt_field(v, ptr, "pairing")? {
            None => StarProductSpec::builtin(kind, n, k).ok_or_else(|| Error::schema(ptr, "custom products need a pairing")),
            Some((p, pp)) => {
                let pairing = grid(p, &pp, |x, q| series_at(x, q, k))?;
                let spec = StarProductSpec::with_kind(kind, n, pairing).map_err(|e| Error::schema(&pp, e.to_string()))?;
                if let Some(b) = StarProductSpec::builtin(kind, n, k) {
                    if b.pairing() != spec.pairing() {
                        return Err(Error::schema(pp, format!("pairing differs from the built-in {} pairing", kind.name())));
                    }
                }
                Ok(spec)
            }
        }
    }
}

impl ToJson for EquivOperatorSpec {
    fn to_json(&self) -> Value {
        json!({ "name": self.name(), "n": self.n(), "generator": self.generator().to_json() })
    }
}

impl FromJson for EquivOperatorSpec {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let (name, np) = field(v, ptr, "name")?;
        let (g, gp) = field(v, ptr, "generator")?;
        let generator = Observable::from_json(g, &gp)?;
        let op = EquivOperatorSpec::new(str_of(name, &np)?, generator).map_err(|e| Error::schema(&gp, e.to_string()))?;
        if let Some((n, p)) = opt_field(v, ptr, "n")? {
            if usize_of(n, &p)? != op.n() {
                return Err(Error::schema(p, "n disagrees with the generator"));
            }
        }
        Ok(op)
    }
}

impl ToJson for Functional {
    fn to_json(&self) -> Value {
        json!({
            "point": self.point().iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "pre_operator": self.pre_operator().map_or(Value::Null, ToJson::to_json),
        })
    }
}

impl FromJson for Functional {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let (p, pp) = field(v, ptr, "point")?;
        let point: Vec<C> = list_json(p, &pp)?;
        let pre = match opt_field(v, ptr, "pre_operator")? {
            None => None,
            Some((x, xp)) => Some(EquivOperatorSpec::from_json(x, &xp)?),
        };
        Functional::new(point, pre).map_err(|e| Error::schema(ptr, e.to_string()))
    }
}

impl ToJson for Matrix {
    fn to_json(&self) -> Value {
        json!({
            "rows": self.rows(),
            "cols": self.cols(),
            "K": self.order(),
            "entries": self.to_rows().iter().map(|r| r.iter().map(ToJson::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

impl FromJson for Matrix {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let rows = usize_field(v, ptr, "rows")?;
        let cols = usize_field(v, ptr, "cols")?;
        let k = usize_field(v, ptr, "K")?;
        let (e, ep) = field(v, ptr, "entries")?;
        let entries = grid(e, &ep, |x, p| series_at(x, p, k))?;
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::schema(ep, format!("expected a {}x{} array", rows, cols)));
        }
        Ok(Matrix::from_fn(rows, cols, k, |i, j| entries[i][j].clone()))
    }
}

impl ToJson for MatrixAlgebra {
    fn to_json(&self) -> Value {
        json!({
            "kind": "matrix",
            "m": self.size(),
            "K": self.order(),
            "deformation": self.deformation().map_or(Value::Null, ToJson::to_json),
        })
    }
}

fn expect_kind(v: &Value, ptr: &str, kind: &str) -> Result<()> {
    let (x, p) = field(v, ptr, "kind")?;
    if str_of(x, &p)? != kind {
        return Err(Error::schema(p, format!("expected kind \"{}\"", kind)));
    }
    Ok(())
}

impl FromJson for MatrixAlgebra {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        expect_kind(v, ptr, "matrix")?;
        let m = usize_field(v, ptr, "m")?;
        let k = usize_field(v, ptr, "K")?;
        match opt_field(v, ptr, "deformation")? {
            None => Ok(MatrixAlgebra::plain(m, k)),
            Some((d, dp)) => {
                let e = Matrix::from_json(d, &dp)?;
                if e.rows() != m || e.cols() != m || e.order() != k {
                    return Err(Error::schema(dp, format!("deformation must be {0}x{0} with K = {1}", m, k)));
                }
                MatrixAlgebra::deformed(e).map_err(|err| Error::schema(dp, err.to_string()))
            }
        }
    }
}

impl ToJson for ScalarAlgebra {
    fn to_json(&self) -> Value {
        json!({ "kind": "scalar", "K": self.order })
    }
}

impl FromJson for ScalarAlgebra {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        expect_kind(v, ptr, "scalar")?;
        Ok(ScalarAlgebra { order: usize_field(v, ptr, "K")? })
    }
}

fn matrices_json(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(ToJson::to_json).collect())
}

impl ToJson for GnsResult {
    fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra.to_json(),
            "omega": self.omega.weights.to_json(),
            "dim": self.dim(),
            "representatives": matrices_json(&self.representatives),
            "gram": self.gram.to_json(),
            "generators": matrices_json(&self.generators),
            "pi_generators": matrices_json(&self.pi_generators),
            "pi_basis": matrices_json(&self.pi_basis),
            "cyclic": self.cyclic.to_json(),
        })
    }
}

impl FromJson for GnsResult {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let get = |key: &str| field(v, ptr, key);
        let matrix = |key: &str| -> Result<Matrix> {
            let (x, p) = get(key)?;
            Matrix::from_json(x, &p)
        };
        let matrices = |key: &str| -> Result<Vec<Matrix>> {
            let (x, p) = get(key)?;
            list_json(x, &p)
        };
        let (a, ap) = get("algebra")?;
        let algebra = MatrixAlgebra::from_json(a, &ap)?;
        let gram = matrix("gram")?;
        let representatives = matrices("representatives")?;
        if gram.rows() != representatives.len() {
            return Err(Error::schema(child(ptr, "gram"), "Gram size differs from the number of representatives"));
        }
        if let Some((d, dp)) = opt_field(v, ptr, "dim")? {
            if usize_of(d, &dp)? != representatives.len() {
                return Err(Error::schema(dp, "dim differs from the number of representatives"));
            }
        }
        Ok(GnsResult {
            algebra,
            omega: MatrixFunctional::new(matrix("omega")?),
            representatives,
            gram,
            generators: matrices("generators")?,
            pi_generators: matrices("pi_generators")?,
            pi_basis: matrices("pi_basis")?,
            cyclic: matrix("cyclic")?,
        })
    }
}

impl<A> ToJson for PreHilbertModule<A>
where
    A: crate::algebra::FiniteBasis + ToJson,
    A::Elem: ToJson,
{
    fn to_json(&self) -> Value {
        json!({
            "base": self.base.to_json(),
            "rank": self.rank(),
            "gram": self.gram().iter().map(|r| r.iter().map(ToJson::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

impl<A> FromJson for PreHilbertModule<A>
where
    A: crate::algebra::FiniteBasis + FromJson,
    A::Elem: FromJson,
{
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let (b, bp) = field(v, ptr, "base")?;
        let base = A::from_json(b, &bp)?;
        let rank = usize_field(v, ptr, "rank")?;
        let (g, gp) = field(v, ptr, "gram")?;
        let gram: Vec<Vec<A::Elem>> = grid(g, &gp, A::Elem::from_json)?;
        if gram.len() != rank || gram.iter().any(|r| r.len() != rank) {
            return Err(Error::schema(gp, format!("expected a {0}x{0} Gram matrix", rank)));
        }
        PreHilbertModule::new(base, gram).map_err(|e| Error::schema(child(ptr, "gram"), e.to_string()))
    }
}

impl ToJson for MoritaClassData {
    fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "pole": self.pole.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "class": self.class.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "exact": self.exact,
        })
    }
}

impl FromJson for MoritaClassData {
    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let m = usize_field(v, ptr, "m")?;
        let pole = match opt_field(v, ptr, "pole")? {
            None => Vec::new(),
            Some((p, pp)) => list_json(p, &pp)?,
        };
        let (c, cp) = field(v, ptr, "class")?;
        let class: Vec<Series> = list_json(c, &cp)?;
        if class.len() != m {
            return Err(Error::schema(cp, format!("expected {} class coefficients", m)));
        }
        let exact = match opt_field(v, ptr, "exact")? {
            None => true,
            Some((e, ep)) => bool_of(e, &ep)?,
        };
        MoritaClassData::new(pole, class, exact).map_err(|e| Error::schema(child(ptr, "pole"), e.to_string()))
    }
}

impl ToJson for SignVerdict {
    fn to_json(&self) -> Value {
        json!(self.as_str())
    }
}

impl ToJson for AxiomReport {
    fn to_json(&self) -> Value {
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| json!({ "axiom": v.axiom, "cases": v.cases, "passed": v.passed, "witness": v.witness }))
            .collect();
        json!({
            "kind": self.kind.name(),
            "n": self.n,
            "K": self.order,
            "sample_degree": self.sample_degree,
            "passed": self.all_passed(),
            "verdicts": verdicts,
        })
    }
}

impl ToJson for PositivityReport {
    fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "input": e.input.to_string(),
                    "value": e.value.to_string(),
                    "sign": e.verdict.map_or("not-real", SignVerdict::as_str),
                })
            })
            .collect();
        json!({
            "product": self.product.name(),
            "functional": self.functional,
            "samples": self.samples,
            "positive_on_samples": self.positive_on_samples(),
            "witness": self.first_witness().map(|e| e.input.to_string()),
            "entries": entries,
        })
    }
}

impl ToJson for PsdVerdict {
    fn to_json(&self) -> Value {
        match self {
            PsdVerdict::NotPsd { minor, value } => json!({ "verdict": self.name(), "minor": minor, "value": value.to_string() }),
            _ => json!({ "verdict": self.name() }),
        }
    }
}

impl ToJson for MoritaVerdict {
    fn to_json(&self) -> Value {
        json!({ "verdict": self.name() })
    }
}
