//! Argument parsing and command dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fdq_core::algebra::{MatrixAlgebra, ScalarAlgebra, StarAlgebra};
use fdq_core::functional::{deform_delta, positivity_scan, Functional};
use fdq_core::io::json::{self, serialize, ToJson, SCHEMA_VERSION};
use fdq_core::io::{parse, parse_series, Signature};
use fdq_core::linalg::Matrix;
use fdq_core::module::{
    gram_psd_check, hermitian_class_check, morita_class_check, rieffel_tensor, Bimodule, MoritaClassData, PreHilbertModule,
};
use fdq_core::observables::involution;
use fdq_core::rep::gns::{compare_with_classical_gns, gns_build, gns_uniqueness_check, Candidate, MatrixFunctional};
use fdq_core::rep::{schroedinger_rep, wickrep, Ordering};
use fdq_core::star::{check_star_axioms, commutator, star_exponential_beta, star_multiply, StarProductSpec};
use fdq_core::{Error, GaussianRational as C, Observable, Scalar, Series};

use crate::config::{config_load, OutputFormat, Overrides, RunConfig};
use crate::suites::{run_suite, suite_names, SuiteReport};

/// Exit status plus captured output streams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("{}\n", msg) }
    }

    fn core(e: &Error) -> Self {
        Outcome { code: 3, stdout: String::new(), stderr: format!("error: {}\n", e) }
    }
}

#[derive(Parser, Debug)]
#[command(name = "fdq", version, about = "Exact formal deformation quantization")]
struct Cli {
    /// Truncation order: series are computed modulo l^K.
    #[arg(long = "K", global = true)]
    k: Option<usize>,
    /// Degrees of freedom.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// weyl, wick, std or custom:<file>.
    #[arg(long, global = true)]
    product: Option<String>,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML config file; FDQ_CONFIG is used when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report elapsed time for suites.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f * g
    Star { f: String, g: String },
    /// [f, g] = f*g - g*f
    Commutator { f: String, g: String },
    /// beta-coefficients of the star exponential Exp(-beta H)
    Starexp {
        h: String,
        #[arg(long, default_value_t = 3)]
        beta_order: usize,
    },
    /// Evaluate a delta functional
    Functional(FunctionalArgs),
    /// GNS construction for a functional on a matrix algebra
    Gns(GnsArgs),
    /// Bargmann-Fock operator of a holomorphic observable
    Fock { f: String },
    /// Schroedinger operator
    Schroedinger {
        #[arg(long, default_value = "weyl")]
        ordering: String,
        f: String,
    },
    /// Deform a classical projection into a star-idempotent
    Project {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        deformation: Option<String>,
        #[arg(long)]
        p0: String,
    },
    /// Induce a module over M_m to a Hilbert space through the column representation
    Rieffel {
        #[arg(long, conflicts_with = "m")]
        module: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Compare characteristic classes
    Morita(MoritaArgs),
    /// Check the star-product axioms on monomials
    Axioms {
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Run a property suite, or all of them
    Suite { name: String },
}

#[derive(Args, Debug)]
struct FunctionalArgs {
    /// 0 for the origin, or comma-separated coordinates q1,..,qn,p1,..,pn
    #[arg(long)]
    delta: String,
    /// Use delta composed with S (the Wick-to-Weyl transport)
    #[arg(long)]
    deformed: bool,
    /// Evaluate on conj(F)*F
    #[arg(long)]
    square: bool,
    /// Also print the sign of the value
    #[arg(long)]
    sign: bool,
    /// Scan conj(f)*f over monomials to this degree instead
    #[arg(long)]
    scan: Option<u32>,
    f: Option<String>,
}

#[derive(Args, Debug)]
struct GnsArgs {
    #[arg(long)]
    m: usize,
    /// Weight matrix W, omega(A) = sum W_ij A_ij; rows separated by ';'
    #[arg(long)]
    weights: String,
    #[arg(long)]
    deformation: Option<String>,
    #[arg(long, value_parser = ["defining", "classical-limit"])]
    compare: Option<String>,
}

#[derive(Args, Debug)]
struct MoritaArgs {
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated class difference c2 - c1
    #[arg(long, conflicts_with_all = ["c1", "c2"])]
    diff: Option<String>,
    #[arg(long, requires = "c2")]
    c1: Option<PathBuf>,
    #[arg(long, requires = "c1")]
    c2: Option<PathBuf>,
    /// Treat --diff data as truncated
    #[arg(long)]
    inexact: bool,
    /// Also test whether the class is that of a Hermitian product
    #[arg(long)]
    hermitian: bool,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Out = std::result::Result<Outcome, Failure>;

/// Parses `argv` (including the program name), runs the command and returns
/// what should be printed.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text.trim_end()) } else { Outcome::ok(text) };
        }
    };
    let overrides = Overrides { k: cli.k, n: cli.n, product: cli.product.clone(), seed: cli.seed, json: cli.json, config: cli.config.clone() };
    let cfg = match config_load(&overrides, std::env::var_os("FDQ_CONFIG").map(PathBuf::from)) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    match dispatch(&cli, &cfg) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => Outcome::usage(m),
        Err(Failure::Core(e)) => Outcome::core(&e),
    }
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Out {
    let json_out = cfg.output == OutputFormat::Json;
    let emit = |text: String, value: Value| Ok(Outcome::ok(if json_out { format!("{}\n", value) } else { format!("{}\n", text) }));
    let sig = Signature::new(cfg.n, cfg.k);
    // A custom spec file carries its own number of degrees of freedom.
    let with_spec = || -> std::result::Result<(StarProductSpec, Signature), Failure> {
        let spec = cfg.spec()?;
        let sig = Signature::new(spec.n(), cfg.k);
        Ok((spec, sig))
    };
    match &cli.command {
        Command::Star { f, g } => {
            let (spec, sig) = with_spec()?;
            let r = star_multiply(&spec, &parse(f, sig)?, &parse(g, sig)?)?;
            emit(r.to_string(), serialize(&r))
        }
        Command::Commutator { f, g } => {
            let (spec, sig) = with_spec()?;
            let r = commutator(&spec, &parse(f, sig)?, &parse(g, sig)?)?;
            emit(r.to_string(), serialize(&r))
        }
        Command::Starexp { h, beta_order } => {
            let (spec, sig) = with_spec()?;
            let es = star_exponential_beta(&spec, &parse(h, sig)?, *beta_order)?;
            let text: Vec<String> = es.iter().enumerate().map(|(k, e)| format!("beta^{}: {}", k, e)).collect();
            emit(text.join("\n"), envelope(json!({ "coefficients": es.iter().map(ToJson::to_json).collect::<Vec<_>>() })))
        }
        Command::Functional(a) => functional(a, cfg, json_out),
        Command::Gns(a) => gns(a, cfg, json_out),
        Command::Fock { f } => {
            let d = wickrep(&parse(f, sig)?)?;
            emit(d.to_string(), serialize(&d))
        }
        Command::Schroedinger { ordering, f } => {
            let o = Ordering::from_name(ordering).ok_or_else(|| Failure::Usage(format!("unknown ordering '{}' (weyl or std)", ordering)))?;
            let d = schroedinger_rep(o, &parse(f, sig)?)?;
            emit(d.to_string(), serialize(&d))
        }
        Command::Project { m, deformation, p0 } => {
            let alg = matrix_algebra(*m, deformation.as_deref(), cfg.k)?;
            let p0 = parse_matrix(p0, *m, cfg.k)?;
            let p = fdq_core::module::fedosov_project(&alg, &p0)?;
            emit(p.to_string(), serialize(&p))
        }
        Command::Rieffel { module, m } => rieffel(module.as_ref(), *m, cfg, json_out),
        Command::Morita(a) => morita(a, cfg, json_out),
        Command::Axioms { degree } => {
            let spec = cfg.spec()?;
            let report = check_star_axioms(&spec, *degree);
            let lines: Vec<String> = report
                .verdicts
                .iter()
                .map(|v| match &v.witness {
                    Some(w) => format!("{}: FAIL (witness {})", v.axiom, w.join(", ")),
                    None => format!("{}: {}", v.axiom, if v.passed { "pass" } else { "FAIL" }),
                })
                .collect();
            let mut o = emit(lines.join("\n"), serialize(&report))?;
            o.code = if report.all_passed() { 0 } else { 1 };
            Ok(o)
        }
        Command::Suite { name } => {
            let reports = run_suite(name, cfg).ok_or_else(|| {
                Failure::Usage(format!("UnknownSuite: '{}' (known: {}, all)", name, suite_names().join(", ")))
            })?;
            Ok(render_reports(&reports, json_out, cli.timing))
        }
    }
}

fn envelope(mut v: Value) -> Value {
    v["schema_version"] = json!(SCHEMA_VERSION);
    v
}

fn render_reports(reports: &[SuiteReport], json_out: bool, timing: bool) -> Outcome {
    let failed: usize = reports.iter().map(|r| r.failed).sum();
    let stdout = if json_out {
        let v = envelope(json!({ "reports": reports.iter().map(|r| r.to_json(timing)).collect::<Vec<_>>() }));
        format!("{}\n", v)
    } else {
        let mut s = String::new();
        for r in reports {
            s.push_str(&r.summary_line(timing));
            s.push('\n');
            for w in &r.witnesses {
                s.push_str(&format!("  FAIL {}\n", w));
            }
        }
        if reports.len() > 1 {
            let cases: usize = reports.iter().map(|r| r.cases).sum();
            s.push_str(&format!("total: {} cases, {} passed, {} failed\n", cases, cases - failed, failed));
        }
        s
    };
    Outcome { code: if failed == 0 { 0 } else { 1 }, stdout, stderr: String::new() }
}

fn constant(text: &str, k: usize) -> std::result::Result<C, Failure> {
    let s = parse_series(text.trim(), k)?;
    if (1..k).any(|r| *s.coeff(r) != C::from_i64(0)) {
        return Err(Failure::Usage(format!("coordinate '{}' must be a number", text.trim())));
    }
    Ok(s.coeff(0).clone())
}

fn functional(a: &FunctionalArgs, cfg: &RunConfig, json_out: bool) -> Out {
    let k = cfg.k;
    let point = if a.delta.trim() == "0" {
        vec![C::from_i64(0); 2 * cfg.n]
    } else {
        a.delta.split(',').map(|t| constant(t, k)).collect::<std::result::Result<Vec<_>, _>>()?
    };
    let w = if a.deformed { deform_delta(point, k)? } else { Functional::delta(point)? };
    let spec = cfg.spec()?;
    if let Some(deg) = a.scan {
        let report = positivity_scan(&w, &spec, deg);
        let text = match report.first_witness() {
            Some(e) => format!("refuted: {}(conj(f)*f) = {} for f = {}", w, e.value, e.input),
            None => format!("positive on {} samples", report.entries.len()),
        };
        let mut o = Outcome::ok(if json_out { format!("{}\n", serialize(&report)) } else { format!("{}\n", text) });
        if !report.positive_on_samples() {
            o.code = 1;
        }
        return Ok(o);
    }
    let f_text = a.f.as_deref().ok_or_else(|| Failure::Usage("functional: missing observable F".into()))?;
    let f: Observable = parse(f_text, Signature::new(w.n(), k))?;
    let arg = if a.square { star_multiply(&spec, &involution(&f), &f)? } else { f };
    let v = w.evaluate(&arg)?;
    if json_out {
        let mut out = envelope(json!({ "value": v.to_json() }));
        if a.sign {
            out["sign"] = v.sign()?.to_json();
        }
        return Ok(Outcome::ok(format!("{}\n", out)));
    }
    let mut text = format!("{}\n", v);
    if a.sign {
        text.push_str(&format!("{}\n", v.sign()?));
    }
    Ok(Outcome::ok(text))
}

fn parse_matrix(text: &str, m: usize, k: usize) -> std::result::Result<Matrix, Failure> {
    let rows: Vec<Vec<Series>> = text
        .split(';')
        .map(|row| row.split(',').map(|e| parse_series(e.trim(), k)).collect::<fdq_core::Result<Vec<_>>>())
        .collect::<fdq_core::Result<_>>()?;
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(Failure::Core(Error::ShapeMismatch(format!("expected a {}x{} matrix, got '{}'", m, m, text))));
    }
    Ok(Matrix::from_fn(m, m, k, |i, j| rows[i][j].clone()))
}

fn matrix_algebra(m: usize, deformation: Option<&str>, k: usize) -> std::result::Result<MatrixAlgebra, Failure> {
    Ok(match deformation {
        Some(e) => MatrixAlgebra::deformed(parse_matrix(e, m, k)?)?,
        None => MatrixAlgebra::plain(m, k),
    })
}

fn gns(a: &GnsArgs, cfg: &RunConfig, json_out: bool) -> Out {
    let k = cfg.k;
    let alg = matrix_algebra(a.m, a.deformation.as_deref(), k)?;
    let omega = MatrixFunctional::new(parse_matrix(&a.weights, a.m, k)?);
    let generators = fdq_core::algebra::FiniteBasis::basis(&alg);
    let r = gns_build(&alg, &omega, &generators)?;
    let mut text = format!("dim: {}\ngram: {}\ncyclic: {}", r.dim(), r.gram, r.cyclic);
    let mut value = serialize(&r);
    match a.compare.as_deref() {
        Some("defining") => {
            let eq = gns_uniqueness_check(&r, &Candidate::defining(&alg))?;
            text.push_str(&format!("\nequivalent to defining representation: {}", eq));
            value["equivalent_to_defining"] = json!(eq);
        }
        Some(_) => {
            let c = compare_with_classical_gns(&r)?;
            text.push_str(&format!(
                "\nclassical limit dim: {}\nclassical GNS dim: {}\nequivalent: {}",
                c.limit.dim(),
                c.classical.dim(),
                c.equivalent()
            ));
            value["classical_limit"] = json!({ "dim": c.limit.dim(), "classical_dim": c.classical.dim(), "equivalent": c.equivalent() });
        }
        None => {}
    }
    Ok(Outcome::ok(if json_out { format!("{}\n", value) } else { format!("{}\n", text) }))
}

fn read_file(path: &PathBuf) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))
}

fn rieffel(module: Option<&PathBuf>, m: Option<usize>, cfg: &RunConfig, json_out: bool) -> Out {
    let k = cfg.k;
    let f: PreHilbertModule<MatrixAlgebra> = match (module, m) {
        (Some(p), _) => json::from_str(&read_file(p)?)?,
        (None, Some(m)) => PreHilbertModule::canonical(MatrixAlgebra::plain(m, k), 1),
        (None, None) => return Err(Failure::Usage("rieffel: give --module <file> or --m <size>".into())),
    };
    let m = f.base.size();
    let d = f.rank();
    let id = (0..d).map(|i| (0..d).map(|j| if i == j { f.base.unit() } else { f.base.zero() }).collect()).collect();
    let left = Bimodule::new(ScalarAlgebra { order: f.base.order() }, f, vec![id])?;
    let out = rieffel_tensor(&left, &Bimodule::column(m, k))?;
    let gram = Matrix::from_fn(out.module.rank(), out.module.rank(), k, |i, j| out.module.gram()[i][j].clone());
    let verdict = gram_psd_check(&gram)?;
    let text = format!("rank: {}\ngram: {}\npositivity: {}", out.module.rank(), gram, verdict.name());
    let value = envelope(json!({ "module": out.module.to_json(), "positivity": verdict.to_json() }));
    Ok(Outcome::ok(if json_out { format!("{}\n", value) } else { format!("{}\n", text) }))
}

fn morita(a: &MoritaArgs, cfg: &RunConfig, json_out: bool) -> Out {
    let k = cfg.k;
    let (c1, c2) = match (&a.diff, &a.c1, &a.c2) {
        (Some(d), _, _) => {
            let class: Vec<Series> = d.split(',').map(|t| parse_series(t.trim(), k)).collect::<fdq_core::Result<_>>()?;
            let m = a.m.unwrap_or(class.len());
            if m != class.len() {
                return Err(Failure::Core(Error::ShapeMismatch(format!("--m {} but {} class components", m, class.len()))));
            }
            (MoritaClassData::zero(m, k), MoritaClassData::new(Vec::new(), class, !a.inexact)?)
        }
        (None, Some(p1), Some(p2)) => (json::from_str(&read_file(p1)?)?, json::from_str(&read_file(p2)?)?),
        _ => return Err(Failure::Usage("morita: give --diff or both --c1 and --c2".into())),
    };
    let verdict = morita_class_check(&c1, &c2)?;
    let mut text = verdict.name().to_string();
    let mut value = envelope(json!({ "verdict": verdict.to_json() }));
    if a.hermitian {
        let h = hermitian_class_check(&c2);
        text.push_str(&format!("\nhermitian: {}", h));
        value["hermitian"] = json!(h);
    }
    Ok(Outcome::ok(if json_out { format!("{}\n", value) } else { format!("{}\n", text) }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fdq(args: &[&str]) -> Outcome {
        run(std::iter::once("fdq").chain(args.iter().copied()))
    }

    #[test]
    fn examples() {
        assert_eq!(fdq(&["star", "--product", "weyl", "--n", "1", "q1", "p1"]).stdout, "q1*p1 + (1/2*i)*l\n");
        let o = fdq(&["functional", "--delta", "0", "--product", "weyl", "1/2*(p1^2+q1^2)", "--square"]);
        assert_eq!(o.stdout, "(-1/4)*l^2\n");
        assert_eq!(fdq(&["morita", "--m", "1", "--diff", "3"]).stdout, "equivalent\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(fdq(&["star", "q1"]).code, 2);
        assert_eq!(fdq(&["--K", "0", "star", "q1", "p1"]).code, 2);
        assert_eq!(fdq(&["suite", "nope"]).code, 2);
        let o = fdq(&["star", "q1", "x9"]);
        assert_eq!(o.code, 3);
        assert!(o.stderr.starts_with("error: "), "{}", o.stderr);
    }
}
