//! Acceptance run: one PASS/FAIL line per criterion, driven through the
//! `fdq` binary.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    elapsed: Duration,
}

fn fdq(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fdq")).args(args).env_remove("FDQ_CONFIG").output().expect("spawn fdq");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
        elapsed: start.elapsed(),
    }
}

/// Runs one suite with a JSON report; returns (failed == 0, detail).
fn suite(name: &str, extra: &[&str], limit_s: u64) -> (bool, String) {
    let mut args = vec!["suite", name, "--json"];
    args.extend_from_slice(extra);
    let run = fdq(&args);
    let v: Value = match serde_json::from_str(&run.stdout) {
        Ok(v) => v,
        Err(e) => return (false, format!("unreadable report ({}), exit {}", e, run.code)),
    };
    let r = &v["reports"][0];
    let failed = r["failed"].as_u64().unwrap_or(u64::MAX);
    let in_time = run.elapsed < Duration::from_secs(limit_s);
    let mut detail = format!("{} cases, {} failed, {:.2} s (limit {} s)", r["cases"], failed, run.elapsed.as_secs_f64(), limit_s);
    if let Some(w) = r["witnesses"].as_array().and_then(|w| w.first()) {
        detail.push_str(&format!("; first witness: {}", w.as_str().unwrap_or("")));
    }
    (failed == 0 && run.code == 0 && in_time, detail)
}

fn report(results: &mut Vec<(usize, bool)>, id: usize, title: &str, (ok, detail): (bool, String)) {
    println!("criterion {:>2} {:<28} {}  {}", id, title, if ok { "PASS" } else { "FAIL" }, detail);
    results.push((id, ok));
}

fn main() {
    let mut results = Vec::new();

    let h = "1/2*(p1^2 + q1^2)";
    let star = fdq(&["star", "--product", "weyl", "--n", "1", h, h]);
    let delta = fdq(&["functional", "--delta", "0", "--product", "weyl", h, "--square", "--sign"]);
    let expected_star = fdq(&["star", "--product", "weyl", "--n", "1", "1", "1/4*(p1^2 + q1^2)^2 - 1/4*l^2"]);
    let (s_ok, s_detail) = suite("oscillator", &[], 1);
    let cli_ok = star.code == 0 && star.stdout == expected_star.stdout && delta.stdout == "(-1/4)*l^2\nnegative\n";
    report(
        &mut results,
        1,
        "oscillator identity",
        (s_ok && cli_ok, format!("H*H = {}; delta0 -> {}; {}", star.stdout.trim(), delta.stdout.trim().replace('\n', ", "), s_detail)),
    );

    let ccr = fdq(&["commutator", "--product", "weyl", "q1", "p1"]);
    let (c_ok, c_detail) = suite("ccr", &[], 1);
    report(&mut results, 2, "canonical commutation", (c_ok && ccr.stdout == "(i)*l\n", format!("[q1, p1] = {}; {}", ccr.stdout.trim(), c_detail)));

    report(&mut results, 3, "wick positivity", suite("wick-positivity", &[], 30));
    report(&mut results, 4, "equivalence transport", suite("equivalence-transport", &[], 60));
    let star_axioms = suite("star-axioms", &["--K", "4"], 60);
    let axioms_ok = star_axioms.0;
    report(&mut results, 5, "star axioms", star_axioms);
    report(&mut results, 6, "deformed state", suite("deformed-state", &[], 10));
    report(&mut results, 7, "bargmann-fock", suite("fock-rep", &[], 30));
    report(&mut results, 8, "schroedinger operators", suite("schroedinger-rep", &[], 30));
    report(&mut results, 9, "gns of a matrix state", suite("gns", &[], 5));
    report(&mut results, 10, "classical limit of gns", suite("gns-classical-limit", &[], 5));
    report(&mut results, 11, "fedosov projection", suite("fedosov", &[], 60));
    report(&mut results, 12, "rieffel induction", suite("rieffel", &[], 30));

    let examples = [("3", "equivalent"), ("1/2", "not_equivalent"), ("l", "not_equivalent")];
    let ex_ok = examples.iter().all(|(d, want)| fdq(&["morita", "--m", "1", "--diff", d]).stdout.trim() == *want);
    let (m_ok, m_detail) = suite("morita", &[], 1);
    report(&mut results, 13, "morita decision", (ex_ok && m_ok, m_detail));

    let (rt_ok, rt_detail) = suite("round-trip", &[], 120);
    let a = fdq(&["suite", "all"]);
    let b = fdq(&["suite", "all"]);
    let identical = a.stdout == b.stdout && a.code == b.code && !a.stdout.is_empty();
    let in_time = a.elapsed.max(b.elapsed) < Duration::from_secs(120);
    report(
        &mut results,
        14,
        "round trip and determinism",
        (
            rt_ok && identical && in_time,
            format!("{}; suite all byte-identical: {}, {:.1} s / {:.1} s", rt_detail, identical, a.elapsed.as_secs_f64(), b.elapsed.as_secs_f64()),
        ),
    );

    let passed = results.iter().filter(|(_, ok)| *ok).count();
    println!("acceptance: {}/{} criteria pass", passed, results.len());

    // The standard-ordered product is not Hermitian (conj(f*g) differs from
    // conj(g)*conj(f) already at f = q1, g = p1), so criterion 5 fails as stated.
    if axioms_ok {
        eprintln!("criterion 5 now passes; update the expectation");
        std::process::exit(1);
    }
    let unexpected: Vec<usize> = results.iter().filter(|(id, ok)| !ok && *id != 5).map(|(id, _)| *id).collect();
    if !unexpected.is_empty() {
        eprintln!("failing criteria: {:?}", unexpected);
        std::process::exit(1);
    }
}
