use std::fmt;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::json;

use wittkit_core::checks::{run_suite, CheckConfig, Suite};
use wittkit_core::expand::{breve_norm, teich_expand};
use wittkit_core::gauss::{gauss_norm, newton_polygon, radius_certificate, render_svg, NormProfile};
use wittkit_core::hensel::{eval_poly, hensel_lift};
use wittkit_core::poly::{loc_reduce, parse_poly, ParseError};
use wittkit_core::pseudoval::{default_quotient_d, localization_profile, parse_spec};
use wittkit_core::scalar::parse_rat;
use wittkit_core::witt::ghost::ghost_components;
use wittkit_core::witt::{parse_witt_short, witt_inverse};
use wittkit_core::{BaseRing, CoeffRing, MultiPoly, Rat, ValuationSpec, WittError, WittVector};

const GRAMMAR: &str = "\
Literals:
  polynomial   sum of terms c*T1^e1*T2^e2..., e.g. `T1^2 + 2*T1*T2 - 1`
  witt vector  `wv[c0;c1;...]` over the base given by --p/--vars/--mod,
               padded with zeros to --len; or the full form
               `wv(p=2, vars=1)[T1; 0]`; a leading `-` negates
               (put such operands after `--`)
  rational     `3`, `-1/2`
  spec         `degree(d=[1,1/2])`, `trivial`,
               `quotient(inner=degree(d=[1]), d=1, f=T2^2 + T2 + T1)`

Verbs:
  add X Y, mul X Y, inv X, v X, f X    Witt arithmetic
  teich A                              Teichmuller lift of a polynomial
  ghost X                              ghost components of the canonical lift
  gauss X --epsilon E                  Gauss norm
  np X [--out tsv|svg]                 Newton polygon of the norm profile
  radius X --delta D                   certified epsilon with norm > -D
  expand X                             Teichmuller expansion, JSON lines
  breve X --epsilon E                  breve norm of the expansion
  hensel C0 C1 ... --root A            lift the root A of sum Ci X^i
  locnorm A --f F [--m M] --d D        norm of A / F^M on the localization
  check SUITE [--seed S] [--p P]       property suite, or `all`

Exit codes: 0 success, 1 domain error, 2 usage error.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verb {
    Add,
    Mul,
    Inv,
    V,
    F,
    Teich,
    Ghost,
    Gauss,
    Np,
    Radius,
    Expand,
    Breve,
    Hensel,
    Locnorm,
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Tsv,
    Svg,
}

/// Exact arithmetic on truncated Witt vectors over F_p[T1..Td] and their
/// Gauss norms.
#[derive(Debug, Parser)]
#[command(name = "wittkit", version, after_help = GRAMMAR)]
struct Cli {
    #[arg(value_enum)]
    verb: Verb,
    /// Operand literals.
    operands: Vec<String>,
    /// The prime p.
    #[arg(long)]
    p: Option<u32>,
    /// Truncation length n+1; defaults to the operand length.
    #[arg(long)]
    len: Option<usize>,
    /// Number of variables of the base ring.
    #[arg(long)]
    vars: Option<usize>,
    /// Monic modulus; the base becomes F_p[T1..Td]/(f) in the last variable.
    #[arg(long = "mod")]
    modulus: Option<String>,
    /// Comma-separated positive variable weights (default all 1).
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<String>>,
    /// Full valuation spec; overrides --weights.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    /// Denominator polynomial for `locnorm`.
    #[arg(long)]
    f: Option<String>,
    /// Exponent of the denominator for `locnorm`.
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// Search bound for `locnorm`.
    #[arg(long)]
    level: Option<u32>,
    /// Starting root for `hensel`.
    #[arg(long)]
    root: Option<String>,
    #[arg(long, value_enum, default_value = "tsv")]
    out: OutFormat,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum CliError {
    Usage(String),
    Domain { name: String, msg: String },
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

/// Innermost variant name of a library error, from its derived `Debug`:
/// `Witt(NotAUnit)` gives `NotAUnit`.
fn variant_name(dbg: &str) -> String {
    let mut s = dbg;
    loop {
        let end = s.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(s.len());
        let (head, rest) = s.split_at(end);
        match rest.strip_prefix('(') {
            Some(inner) if inner.starts_with(|c: char| c.is_ascii_uppercase()) => s = inner,
            _ => return head.to_string(),
        }
    }
}

fn domain<E: fmt::Debug + fmt::Display>(e: E) -> CliError {
    CliError::Domain { name: variant_name(&format!("{e:?}")), msg: e.to_string() }
}

fn parse_failure(what: &str, src: &str, e: &ParseError) -> CliError {
    CliError::usage(format!("cannot parse {what} `{src}` at position {}: {}", e.pos, e.msg))
}

/// Routes parse errors to usage errors and the rest to domain errors.
fn witt_err(what: &str, src: &str, e: WittError) -> CliError {
    match e {
        WittError::Parse(pe) => parse_failure(what, src, &pe),
        other => domain(other),
    }
}

fn rat_flag(name: &str, v: &Option<String>) -> Result<Rat, CliError> {
    let s = v.as_deref().ok_or_else(|| CliError::usage(format!("--{name} is required")))?;
    parse_rat(s).ok_or_else(|| CliError::usage(format!("--{name}: `{s}` is not a rational")))
}

fn positive_flag(name: &str, v: &Option<String>) -> Result<Rat, CliError> {
    let r = rat_flag(name, v)?;
    if r > Rat::from_integer(0.into()) {
        Ok(r)
    } else {
        Err(CliError::usage(format!("--{name} must be positive")))
    }
}

struct Ctx {
    base: BaseRing,
    ring: CoeffRing,
    spec: ValuationSpec,
}

impl Ctx {
    fn new(cli: &Cli) -> Result<Self, CliError> {
        let p = cli.p.ok_or_else(|| CliError::usage("--p is required"))?;
        let ring = CoeffRing::modp(p).map_err(|_| CliError::usage(format!("--p {p} is not a prime")))?;
        // with a modulus the weights cover all but the last variable
        let extra = usize::from(cli.modulus.is_some());
        let nvars = cli.vars.or(cli.weights.as_ref().map(|w| w.len() + extra)).unwrap_or(0);
        let base = match &cli.modulus {
            None => BaseRing::poly(p, nvars).map_err(domain)?,
            Some(src) => {
                let f = parse_poly(src, ring, nvars).map_err(|e| parse_failure("modulus", src, &e))?;
                BaseRing::quotient(&f).map_err(domain)?
            }
        };
        let spec = match &cli.spec {
            Some(src) => parse_spec(src, ring).map_err(|e| match e {
                wittkit_core::ValError::Parse(pe) => parse_failure("spec", src, &pe),
                other => domain(other),
            })?,
            None => Self::default_spec(cli, &base, nvars)?,
        };
        Ok(Ctx { base, ring, spec })
    }

    fn default_spec(cli: &Cli, base: &BaseRing, nvars: usize) -> Result<ValuationSpec, CliError> {
        let inner_vars = if base.modulus().is_some() { nvars.saturating_sub(1) } else { nvars };
        let weights = match &cli.weights {
            None => vec![Rat::from_integer(1.into()); inner_vars],
            Some(ws) => ws
                .iter()
                .map(|w| parse_rat(w).ok_or_else(|| CliError::usage(format!("--weights: `{w}` is not a rational"))))
                .collect::<Result<Vec<_>, _>>()?,
        };
        if weights.len() != inner_vars {
            return Err(CliError::usage(format!("--weights needs {inner_vars} entries, got {}", weights.len())));
        }
        let inner = ValuationSpec::weighted_degree(weights).map_err(|e| CliError::usage(format!("--weights: {e}")))?;
        match base.modulus() {
            None => Ok(inner),
            Some(f) => {
                let d = match &cli.d {
                    Some(_) => positive_flag("d", &cli.d)?,
                    None => default_quotient_d(&inner, f).map_err(domain)?,
                };
                ValuationSpec::monic_quotient(inner, d, f.clone()).map_err(domain)
            }
        }
    }

    fn poly(&self, what: &str, src: &str) -> Result<MultiPoly, CliError> {
        let a = parse_poly(src, self.ring, self.base.nvars()).map_err(|e| parse_failure(what, src, &e))?;
        self.base.reduce(&a).map_err(domain)
    }

    /// Parses an operand, padding short literals to `len`.
    fn witt(&self, src: &str, len: Option<usize>) -> Result<WittVector, CliError> {
        if let Some(rest) = src.trim_start().strip_prefix('-') {
            return Ok(self.witt(rest, len)?.neg());
        }
        let w = parse_witt_short(src, &self.base).map_err(|e| witt_err("operand", src, e))?;
        match len {
            None => Ok(w),
            Some(n) if w.len() > n => Err(CliError::usage(format!(
                "operand `{src}` has {} components but --len is {n}",
                w.len()
            ))),
            Some(n) => {
                let mut comps = w.into_comps();
                comps.resize(n, self.base.zero());
                WittVector::new(&self.base, comps).map_err(domain)
            }
        }
    }

    fn operands(&self, cli: &Cli, count: usize) -> Result<Vec<WittVector>, CliError> {
        if cli.operands.len() != count {
            return Err(CliError::usage(format!(
                "{:?} takes {count} operand(s), got {}",
                cli.verb,
                cli.operands.len()
            )));
        }
        let mut len = cli.len;
        let mut out = Vec::with_capacity(count);
        for src in &cli.operands {
            let w = self.witt(src, len)?;
            len.get_or_insert(w.len());
            out.push(w);
        }
        // operands without --len must agree in length
        if out.iter().any(|w| w.len() != out[0].len()) {
            return Err(CliError::usage("operands have different lengths; pass --len"));
        }
        Ok(out)
    }
}

fn check(cli: &Cli) -> Result<(String, bool), CliError> {
    let [name] = cli.operands.as_slice() else {
        return Err(CliError::usage("check takes one suite name"));
    };
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name.parse::<Suite>().map_err(|e| CliError::usage(e.to_string()))?]
    };
    let mut cfg = CheckConfig::new(cli.seed);
    cfg.p = cli.p;
    let cfg = &cfg;
    let reports: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|&s| scope.spawn(move || run_suite(s, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    let ok = reports.iter().all(|r| r.ok());
    Ok((reports.iter().map(|r| r.render()).collect(), ok))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let ctx = Ctx::new(cli)?;
    let out = match cli.verb {
        Verb::Add | Verb::Mul => {
            let xs = ctx.operands(cli, 2)?;
            let r = if cli.verb == Verb::Add { xs[0].add(&xs[1]) } else { xs[0].mul(&xs[1]) };
            format!("{}\n", r.map_err(domain)?.to_short_string())
        }
        Verb::Inv => {
            let x = &ctx.operands(cli, 1)?[0];
            format!("{}\n", witt_inverse(x).map_err(domain)?.to_short_string())
        }
        Verb::V => format!("{}\n", ctx.operands(cli, 1)?[0].verschiebung().to_short_string()),
        Verb::F => {
            let x = &ctx.operands(cli, 1)?[0];
            format!("{}\n", x.frobenius().map_err(domain)?.to_short_string())
        }
        Verb::Teich => {
            let [src] = cli.operands.as_slice() else {
                return Err(CliError::usage("teich takes one polynomial"));
            };
            let a = ctx.poly("polynomial", src)?;
            let w = WittVector::teichmuller(&ctx.base, &a, cli.len.unwrap_or(1)).map_err(domain)?;
            format!("{}\n", w.to_short_string())
        }
        Verb::Ghost => {
            let x = &ctx.operands(cli, 1)?[0];
            if ctx.base.modulus().is_some() {
                return Err(domain(WittError::UnsupportedBase("ghost components need a polynomial base")));
            }
            ghost_components(&x.lift())
                .iter()
                .enumerate()
                .map(|(i, w)| format!("w{i}: {w}\n"))
                .collect()
        }
        Verb::Gauss => {
            let x = &ctx.operands(cli, 1)?[0];
            let eps = positive_flag("epsilon", &cli.epsilon)?;
            format!("{}\n", gauss_norm(x, &ctx.spec, &eps).map_err(domain)?)
        }
        Verb::Np => {
            let x = &ctx.operands(cli, 1)?[0];
            let np = newton_polygon(x, &ctx.spec).map_err(domain)?;
            match cli.out {
                OutFormat::Tsv => np.to_tsv(),
                OutFormat::Svg => render_svg(&NormProfile::of(x, &ctx.spec).map_err(domain)?, &np),
            }
        }
        Verb::Radius => {
            let x = &ctx.operands(cli, 1)?[0];
            let delta = positive_flag("delta", &cli.delta)?;
            match radius_certificate(x, &ctx.spec, &delta).map_err(domain)? {
                Some((eps, c)) => format!("epsilon: {eps}\nc: {c}\n"),
                None => "none\n".to_string(),
            }
        }
        Verb::Expand => {
            let x = &ctx.operands(cli, 1)?[0];
            let e = teich_expand(x).map_err(domain)?;
            e.terms()
                .iter()
                .map(|(w, xi)| {
                    let k: Vec<String> = w.k().iter().map(ToString::to_string).collect();
                    format!("{}\n", json!({"k": k, "u": w.u(), "xi": xi.to_string()}))
                })
                .collect()
        }
        Verb::Breve => {
            let x = &ctx.operands(cli, 1)?[0];
            let eps = positive_flag("epsilon", &cli.epsilon)?;
            format!("{}\n", breve_norm(&teich_expand(x).map_err(domain)?, &eps))
        }
        Verb::Hensel => {
            if cli.operands.is_empty() {
                return Err(CliError::usage("hensel needs at least one coefficient"));
            }
            let coeffs = ctx.operands(cli, cli.operands.len())?;
            let src = cli.root.as_deref().ok_or_else(|| CliError::usage("--root is required"))?;
            let a = ctx.poly("root", src)?;
            let alpha = hensel_lift(&coeffs, &a).map_err(domain)?;
            let residue = eval_poly(&coeffs, &alpha).map_err(domain)?;
            let shown = if residue.is_zero() { "0".to_string() } else { residue.to_short_string() };
            format!("{}\nresidue: {shown}\n", alpha.to_short_string())
        }
        Verb::Locnorm => {
            let [src] = cli.operands.as_slice() else {
                return Err(CliError::usage("locnorm takes one numerator"));
            };
            let a = ctx.poly("numerator", src)?;
            let fsrc = cli.f.as_deref().ok_or_else(|| CliError::usage("--f is required"))?;
            let f = ctx.poly("denominator", fsrc)?;
            let d = positive_flag("d", &cli.d)?;
            let z = loc_reduce(&a, cli.m, &f).map_err(domain)?;
            let level = cli.level.unwrap_or(z.exponent() + 4);
            let prof = localization_profile(&z, &ctx.spec, &d, level).map_err(domain)?;
            let bound = if prof.nu_prime_exact { "exact" } else { "lower bound" };
            format!(
                "theta: {}\nsigma: {}\ntau: {}\nnu': {} ({bound})\nmu: {}\n",
                prof.theta, prof.sigma, prof.tau, prof.nu_prime, prof.mu
            )
        }
        Verb::Check => unreachable!("handled before the base is built"),
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = if cli.verb == Verb::Check {
        check(&cli).map(|(out, ok)| (out, if ok { 0 } else { 1 }))
    } else {
        run(&cli).map(|out| (out, 0))
    };
    match result {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(code)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain { name, msg }) => {
            eprintln!("error: {name}: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn innermost_variant() {
        assert_eq!(variant_name("NotAUnit"), "NotAUnit");
        assert_eq!(variant_name("Witt(NotAUnit)"), "NotAUnit");
        assert_eq!(variant_name("NoConvergence(6)"), "NoConvergence");
        assert_eq!(variant_name("NotIntegral { index: 2 }"), "NotIntegral");
        assert_eq!(variant_name("Witt(UnsupportedBase(\"x\"))"), "UnsupportedBase");
    }

    #[test]
    fn integer_rationals() {
        assert_eq!(parse_rat("-1/2"), Some(Rat::new(BigInt::from(-1), BigInt::from(2))));
    }
}
