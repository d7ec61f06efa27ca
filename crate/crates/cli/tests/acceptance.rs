//! Acceptance gate: one pass/fail line per criterion, exit status 1 if any
//! criterion fails. All comparisons are exact; the only tolerances are the
//! wall-clock limits below.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wittkit_core::checks::{run_suite, CheckConfig, Property, Suite, SuiteReport};
use wittkit_core::hensel::{eval_poly, hensel_lift, hensel_lift_from};
use wittkit_core::poly::parse_poly;
use wittkit_core::{BaseRing, WittVector};

const SEED: u64 = 0;
const GHOST_TIME_LIMIT: Duration = Duration::from_secs(60);
const HENSEL_TIME_LIMIT: Duration = Duration::from_secs(5);

type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Verdict + 'a>);

struct Verdict {
    ok: bool,
    detail: String,
}

/// Each named property must pass on at least `min_samples` instances.
fn require(report: &SuiteReport, wanted: &[(&str, usize)]) -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for &(name, min_samples) in wanted {
        match report.property(name) {
            Some(p) => {
                ok &= p.ok() && p.total >= min_samples;
                parts.push(describe(p));
            }
            None => {
                ok = false;
                parts.push(format!("{name}: missing"));
            }
        }
    }
    Verdict { ok, detail: parts.join("; ") }
}

fn describe(p: &Property) -> String {
    let mut s = format!("{} {}/{}", p.name, p.passed, p.total);
    if let Some(f) = &p.first_failure {
        s.push_str(&format!(" [first failure: {f}]"));
    }
    s
}

fn suite(s: Suite) -> SuiteReport {
    run_suite(s, &CheckConfig::new(SEED))
}

fn ghost() -> Verdict {
    let start = Instant::now();
    let report = suite(Suite::Ghost);
    let elapsed = start.elapsed();
    let mut v = require(&report, &[("arithmetic matches ghost oracle", 1000)]);
    v.ok &= elapsed < GHOST_TIME_LIMIT;
    v.detail.push_str(&format!("; {:.2}s (limit {}s)", elapsed.as_secs_f64(), GHOST_TIME_LIMIT.as_secs()));
    v
}

fn hensel_example() -> Result<String, String> {
    let start = Instant::now();
    let base = BaseRing::poly(2, 1).map_err(|e| e.to_string())?;
    let poly = |s: &str| parse_poly(s, base.coeff_ring(), 1).expect("literal");
    let len = 4;
    let c = WittVector::teichmuller(&base, &poly("T1^2 + T1"), len).map_err(|e| e.to_string())?;
    let f = vec![c.neg(), WittVector::from_integer(&base, len, -1), WittVector::one(&base, len)];
    let t = poly("T1");
    let alpha = hensel_lift(&f, &t).map_err(|e| e.to_string())?;
    if !eval_poly(&f, &alpha).map_err(|e| e.to_string())?.is_zero() {
        return Err("residue is not 0".into());
    }
    let teich_t = WittVector::teichmuller(&base, &t, len).map_err(|e| e.to_string())?;
    let bumps = [
        WittVector::new(&base, vec![base.zero(), base.one(), base.zero(), t.clone()]),
        WittVector::new(&base, vec![base.zero(), poly("T1^3 + 1"), t.clone(), base.one()]),
    ];
    let mut starts = Vec::new();
    for b in bumps {
        starts.push(teich_t.add(&b.map_err(|e| e.to_string())?).map_err(|e| e.to_string())?);
    }
    if starts[0] == starts[1] {
        return Err("perturbed starts coincide".into());
    }
    for s in &starts {
        if hensel_lift_from(&f, s).map_err(|e| e.to_string())? != alpha {
            return Err(format!("start {} reached a different root", s.to_short_string()));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= HENSEL_TIME_LIMIT {
        return Err(format!("took {:.2}s", elapsed.as_secs_f64()));
    }
    Ok(format!("root {} residue 0, both starts agree, {:.3}s", alpha.to_short_string(), elapsed.as_secs_f64()))
}

fn hensel() -> Verdict {
    let report = suite(Suite::Hensel);
    let mut v = require(
        &report,
        &[("lifted root is exact", 100), ("perturbed starts reach the same root", 100)],
    );
    match hensel_example() {
        Ok(s) => v.detail = format!("{s}; {}", v.detail),
        Err(e) => {
            v.ok = false;
            v.detail = format!("example failed: {e}; {}", v.detail);
        }
    }
    v
}

fn golden() -> Verdict {
    let cases = common::cases();
    let failures: Vec<String> = cases.iter().filter_map(common::mismatch).collect();
    Verdict {
        ok: cases.len() >= 13 && failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} invocations byte-identical", cases.len())
        } else {
            failures.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let norms = suite(Suite::Norms);
    let criteria: Vec<Criterion> = vec![
        ("1 ghost-oracle equivalence", Box::new(ghost)),
        (
            "2 Gauss-norm axioms",
            Box::new(|| {
                require(
                    &suite(Suite::Axioms),
                    &[("pseudovaluation axioms", 3000), ("multiplicativity for weighted degrees", 500)],
                )
            }),
        ),
        ("3 V, F and p identities", Box::new(|| require(&norms, &[("V, F and p identities", 500)]))),
        (
            "4 Teichmuller expansion",
            Box::new(|| {
                require(
                    &suite(Suite::Expand),
                    &[
                        ("expansion round trip", 500),
                        ("expansion norm equals Gauss norm", 500),
                        ("linear forms have weights on the simplex", 1),
                    ],
                )
            }),
        ),
        (
            "5 inversion",
            Box::new(|| {
                require(
                    &norms,
                    &[
                        ("inverses multiply back to 1", 500),
                        ("norm of (1 - V eta)^-1 is non-negative", 200),
                        ("breve norm of (1 - V eta)^-1", 200),
                    ],
                )
            }),
        ),
        (
            "6 localization sandwiches",
            Box::new(|| {
                require(
                    &suite(Suite::Sandwich),
                    &[
                        ("tau sandwich", 200),
                        ("sigma sandwich", 200),
                        ("regular polynomials are localizing", 100),
                        ("regular polynomials are multiplicative", 200),
                    ],
                )
            }),
        ),
        (
            "7 etale expansion",
            Box::new(|| require(&suite(Suite::Etale), &[("etale expansion round trip", 400), ("coordinate estimate", 400)])),
        ),
        ("8 Hensel lifting", Box::new(hensel)),
        ("9 CLI golden files", Box::new(golden)),
    ];
    let mut all = true;
    for (label, run) in criteria {
        let verdict = run();
        all &= verdict.ok;
        println!("{} criterion {label}: {}", if verdict.ok { "PASS" } else { "FAIL" }, verdict.detail);
    }
    println!("acceptance: {}", if all { "all criteria pass" } else { "FAILED" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
