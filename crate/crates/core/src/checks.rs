//! Seeded property suites over random inputs, shared by the `check` verb and
//! the acceptance tests.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::etale::{etale_basis_expand, etale_recombine, CoordinateBound, EtaleExt};
use crate::expand::{breve_norm, linear_teich_decompose, norm_from_expansion, reconstruct, teich_expand};
use crate::gauss::gauss_norm;
use crate::hensel::{eval_poly, hensel_lift, hensel_lift_from};
use crate::poly::{loc_reduce, parse_poly, CoeffRing, MultiPoly};
use crate::pseudoval::{default_quotient_d, localization_profile, regular_variable, verify_localizing};
use crate::sample::{Sampler, Shape};
use crate::scalar::Ext;
use crate::witt::ghost::{oracle_add, oracle_mul, oracle_sub};
use crate::witt::{geometric_inverse, witt_inverse, BaseRing, WittVector};
use crate::{ExtRat, Rat, ValuationSpec};

/// Caps component degrees so that `p^(len-1)·deg` stays below this bound;
/// Witt products grow component degrees by that factor.
pub const DEGREE_BUDGET: u64 = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Axioms,
    Ghost,
    Norms,
    Sandwich,
    Expand,
    Etale,
    Hensel,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Axioms, Suite::Ghost, Suite::Norms, Suite::Sandwich, Suite::Expand, Suite::Etale, Suite::Hensel];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Ghost => "ghost",
            Suite::Norms => "norms",
            Suite::Sandwich => "sandwich",
            Suite::Expand => "expand",
            Suite::Etale => "etale",
            Suite::Hensel => "hensel",
        }
    }

    fn salt(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    pub seed: u64,
    /// Restricts suites that range over several primes to this one.
    pub p: Option<u32>,
}

impl CheckConfig {
    pub fn new(seed: u64) -> Self {
        CheckConfig { seed, p: None }
    }

    fn primes(&self, default: &[u32]) -> Vec<u32> {
        match self.p {
            Some(p) => vec![p],
            None => default.to_vec(),
        }
    }

    fn sampler(&self, suite: Suite) -> Sampler {
        Sampler::new(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(suite.salt()))
    }
}

/// Pass count of one property, with the first failing instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Property {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub first_failure: Option<String>,
}

impl Property {
    fn new(name: &'static str) -> Self {
        Property { name, passed: 0, total: 0, first_failure: None }
    }

    fn record(&mut self, outcome: Result<bool, String>, describe: impl FnOnce() -> String) {
        self.total += 1;
        match outcome {
            Ok(true) => self.passed += 1,
            Ok(false) => {
                if self.first_failure.is_none() {
                    self.first_failure = Some(describe());
                }
            }
            Err(e) => {
                if self.first_failure.is_none() {
                    self.first_failure = Some(format!("{} ({e})", describe()));
                }
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub properties: Vec<Property>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.properties.iter().map(|p| p.passed).sum()
    }

    pub fn total(&self) -> usize {
        self.properties.iter().map(|p| p.total).sum()
    }

    pub fn ok(&self) -> bool {
        self.properties.iter().all(Property::ok)
    }

    pub fn property(&self, name: &str) -> Option<&Property> {
        self.properties.iter().find(|p| p.name == name)
    }

    /// `ghost: 1000/1000 ok`, or the failing counts.
    pub fn summary(&self) -> String {
        let verdict = if self.ok() { "ok" } else { "FAILED" };
        format!("{}: {}/{} {verdict}", self.suite, self.passed(), self.total())
    }

    /// Summary line, then one line per failing property.
    pub fn render(&self) -> String {
        let mut out = self.summary();
        out.push('\n');
        for p in self.properties.iter().filter(|p| !p.ok()) {
            let first = p.first_failure.as_deref().unwrap_or("-");
            out.push_str(&format!("  {}: {}/{} first counterexample: {first}\n", p.name, p.passed, p.total));
        }
        out
    }
}

pub fn run_suite(suite: Suite, cfg: &CheckConfig) -> SuiteReport {
    let properties = match suite {
        Suite::Axioms => axioms(cfg),
        Suite::Ghost => ghost(cfg),
        Suite::Norms => norms(cfg),
        Suite::Sandwich => sandwich(cfg),
        Suite::Expand => expand(cfg),
        Suite::Etale => etale(cfg),
        Suite::Hensel => hensel(cfg),
    };
    SuiteReport { suite, properties }
}

type Outcome = Result<bool, String>;

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn budget_deg(p: u32, len: usize, cap: u32) -> u32 {
    let scale = (p as u64).pow(len.saturating_sub(1) as u32);
    (DEGREE_BUDGET / scale).min(cap as u64) as u32
}

fn short(w: &WittVector) -> String {
    w.to_short_string()
}

/// A modulus monic in the last variable over `F_p[S]`.
fn quotient_modulus(p: u32) -> MultiPoly {
    let src = match p {
        2 => "T2^2 + T2 + T1",
        3 => "T2^3 - T2 - T1",
        _ => "T2^2 - T1",
    };
    parse_poly(src, CoeffRing::modp(p).expect("prime"), 2).expect("literal")
}

struct Setting {
    base: BaseRing,
    spec: ValuationSpec,
}

fn random_weights(s: &mut Sampler, n: usize) -> Vec<Rat> {
    (0..n).map(|_| s.positive_rat(4, 3)).collect()
}

fn random_setting(s: &mut Sampler, p: u32) -> Setting {
    match s.below(5) {
        0 => Setting { base: BaseRing::poly(p, s.below(3) as usize).unwrap(), spec: ValuationSpec::Trivial },
        1 => {
            let f = quotient_modulus(p);
            let inner = ValuationSpec::degree(1);
            let d = default_quotient_d(&inner, &f).unwrap();
            let spec = ValuationSpec::monic_quotient(inner, d, f.clone()).unwrap();
            Setting { base: BaseRing::quotient(&f).unwrap(), spec }
        }
        _ => {
            let n = 1 + s.below(2) as usize;
            let spec = ValuationSpec::weighted_degree(random_weights(s, n)).unwrap();
            Setting { base: BaseRing::poly(p, n).unwrap(), spec }
        }
    }
}

fn random_eps(s: &mut Sampler) -> Rat {
    s.positive_rat(8, 4)
}

fn gauss(alpha: &WittVector, spec: &ValuationSpec, eps: &Rat) -> Result<ExtRat, String> {
    gauss_norm(alpha, spec, eps).map_err(err)
}

/// Witt addition, subtraction and multiplication against the exact
/// ghost-map oracle.
fn ghost(cfg: &CheckConfig) -> Vec<Property> {
    let mut s = cfg.sampler(Suite::Ghost);
    let primes = cfg.primes(&[2, 3, 5]);
    let mut prop = Property::new("arithmetic matches ghost oracle");
    for i in 0..1000 {
        let p = *s.pick(&primes);
        let len = 1 + s.below(5) as usize;
        let vars = s.below(3) as usize;
        let deg = s.below(budget_deg(p, len, 6) as u64 + 1) as u32;
        let base = BaseRing::poly(p, vars).unwrap();
        let shape = Shape::new(deg, 3);
        let (a, b) = (s.witt(&base, len, shape), s.witt(&base, len, shape));
        let outcome = (|| -> Outcome {
            Ok(a.add(&b).map_err(err)? == oracle_add(&a, &b).map_err(err)?
                && a.sub(&b).map_err(err)? == oracle_sub(&a, &b).map_err(err)?
                && a.mul(&b).map_err(err)? == oracle_mul(&a, &b).map_err(err)?)
        })();
        prop.record(outcome, || format!("pair {i}: p={p} {} {}", short(&a), short(&b)));
    }
    vec![prop]
}

/// Pseudovaluation axioms of truncated Gauss norms, and multiplicativity
/// for weighted degrees.
fn axioms(cfg: &CheckConfig) -> Vec<Property> {
    let mut s = cfg.sampler(Suite::Axioms);
    let primes = cfg.primes(&[2, 3, 5]);
    let mut ax = Property::new("pseudovaluation axioms");
    for &p in &primes {
        for i in 0..1000 {
            let Setting { base, spec } = random_setting(&mut s, p);
            let len = 1 + s.below(4) as usize;
            let shape = Shape::new(budget_deg(p, len, 4), 3);
            let (x, y) = (s.witt(&base, len, shape), s.witt(&base, len, shape));
            let eps = random_eps(&mut s);
            let outcome = (|| -> Outcome {
                let g = |w: &WittVector| gauss(w, &spec, &eps);
                let (gx, gy) = (g(&x)?, g(&y)?);
                let zero_ok = g(&WittVector::zero(&base, len))? == Ext::PosInf;
                let one_ok = g(&WittVector::one(&base, len))? == Ext::zero();
                let neg_ok = g(&x.neg())? == gx;
                let sum_ok = g(&x.add(&y).map_err(err)?)? >= gx.clone().min(gy.clone());
                let prod_ok = g(&x.mul(&y).map_err(err)?)? >= gx + gy;
                Ok(zero_ok && one_ok && neg_ok && sum_ok && prod_ok)
            })();
            ax.record(outcome, || format!("sample {i}: p={p} spec={spec} eps={eps} {} {}", short(&x), short(&y)));
        }
    }
    // Components vanish above index h with 2h < len, so the index where the
    // product's norm is attained survives truncation.
    let mut mult = Property::new("multiplicativity for weighted degrees");
    for i in 0..500 {
        let p = *s.pick(&primes);
        let n = 1 + s.below(2) as usize;
        let spec = ValuationSpec::weighted_degree(random_weights(&mut s, n)).unwrap();
        let base = BaseRing::poly(p, n).unwrap();
        let len = 1 + s.below(5) as usize;
        let h = (len - 1) / 2;
        let shape = Shape::new(budget_deg(p, len, 5), 3);
        let low = |s: &mut Sampler| {
            let w = s.witt(&base, len, shape);
            let comps = w.comps().iter().enumerate().map(|(j, c)| if j <= h { c.clone() } else { base.zero() });
            WittVector::new(&base, comps.collect()).unwrap()
        };
        let (x, y) = (low(&mut s), low(&mut s));
        let eps = random_eps(&mut s);
        let outcome = (|| -> Outcome {
            let lhs = gauss(&x.mul(&y).map_err(err)?, &spec, &eps)?;
            Ok(lhs == gauss(&x, &spec, &eps)? + gauss(&y, &spec, &eps)?)
        })();
        mult.record(outcome, || format!("pair {i}: p={p} spec={spec} eps={eps} {} {}", short(&x), short(&y)));
    }
    vec![ax, mult]
}

/// Norm identities for `V`, `F` and `p`, inversion, and the norm bounds for
/// `(1 - Vη)^{-1}`.
fn norms(cfg: &CheckConfig) -> Vec<Property> {
    let mut s = cfg.sampler(Suite::Norms);
    let primes = cfg.primes(&[2, 3, 5]);
    let quarter = Rat::new(1.into(), 4.into());
    let epsilons = [quarter.clone(), quarter * rat(2), rat(1), rat(2)];

    let mut vfp = Property::new("V, F and p identities");
    for i in 0..500 {
        let p = *s.pick(&primes);
        let Setting { base, spec } = random_setting(&mut s, p);
        let len = 2 + s.below(4) as usize;
        let alpha = s.witt(&base, len, Shape::new(budget_deg(p, len, 5), 3));
        let pr = rat(p as i64);
        let outcome = (|| -> Outcome {
            let mut ok = true;
            let v = alpha.verschiebung();
            let f = alpha.frobenius().map_err(err)?;
            let p1 = WittVector::from_integer(&base, len, p);
            for eps in &epsilons {
                let lhs = gauss(&v, &spec, eps)?;
                ok &= lhs == gauss(&alpha.truncate(len - 1), &spec, &(eps / &pr))?.add_scalar(&rat(1));
                ok &= gauss(&f, &spec, eps)? >= gauss(&alpha, &spec, &(eps * &pr))?;
                ok &= gauss(&p1, &spec, eps)? == Ext::from_int(1);
            }
            Ok(ok)
        })();
        vfp.record(outcome, || format!("sample {i}: p={p} spec={spec} {}", short(&alpha)));
    }

    let mut inv = Property::new("inverses multiply back to 1");
    for i in 0..500 {
        let p = *s.pick(&primes);
        let base = if s.chance(1, 5) {
            BaseRing::quotient(&quotient_modulus(p)).unwrap()
        } else {
            BaseRing::poly(p, s.below(3) as usize).unwrap()
        };
        let len = 1 + s.below(5) as usize;
        let shape = Shape::new(budget_deg(p, len, 4), 3);
        let eta = s.witt(&base, len, shape);
        let mut alpha = s.witt(&base, len, shape).into_comps();
        alpha[0] = base.constant(1 + s.below(p as u64 - 1));
        let alpha = WittVector::new(&base, alpha).unwrap();
        let outcome = (|| -> Outcome {
            let one = WittVector::one(&base, len);
            let g = geometric_inverse(&eta).mul(&one.sub(&eta.verschiebung()).map_err(err)?).map_err(err)?;
            let w = witt_inverse(&alpha).map_err(err)?.mul(&alpha).map_err(err)?;
            Ok(g == one && w == one)
        })();
        inv.record(outcome, || format!("sample {i}: p={p} eta={} alpha={}", short(&eta), short(&alpha)));
    }

    // shrink ε until γ_ε(Vη) ≥ 0; the limit ε → 0 gives at least 1
    let admissible = |eta: &WittVector, spec: &ValuationSpec, mut eps: Rat| -> Result<Rat, String> {
        let v = eta.verschiebung();
        while gauss(&v, spec, &eps)? < Ext::zero() {
            eps /= rat(2);
        }
        Ok(eps)
    };

    let mut geo = Property::new("norm of (1 - V eta)^-1 is non-negative");
    for i in 0..200 {
        let p = *s.pick(&primes);
        let Setting { base, spec } = random_setting(&mut s, p);
        let len = 2 + s.below(4) as usize;
        let eta = s.witt(&base, len, Shape::new(budget_deg(p, len, 4), 3));
        let eps0 = random_eps(&mut s);
        let outcome = (|| -> Outcome {
            let eps = admissible(&eta, &spec, eps0.clone())?;
            Ok(gauss(&geometric_inverse(&eta), &spec, &eps)? >= Ext::zero())
        })();
        geo.record(outcome, || format!("sample {i}: p={p} spec={spec} {}", short(&eta)));
    }

    let mut breve = Property::new("breve norm of (1 - V eta)^-1");
    for i in 0..200 {
        let p = *s.pick(&primes);
        let n = 1 + s.below(2) as usize;
        let base = BaseRing::poly(p, n).unwrap();
        let spec = ValuationSpec::degree(n);
        let len = 2 + s.below(3) as usize;
        let eta = s.witt(&base, len, Shape::new(budget_deg(p, len, 4), 3));
        let eps0 = random_eps(&mut s);
        let outcome = (|| -> Outcome {
            let eps = admissible(&eta, &spec, eps0.clone())?;
            let alpha = eta.verschiebung();
            let lhs = breve_norm(&teich_expand(&geometric_inverse(&eta)).map_err(err)?, &eps);
            let rhs = breve_norm(&teich_expand(&alpha).map_err(err)?, &eps).min(Ext::zero());
            Ok(lhs >= rhs)
        })();
        breve.record(outcome, || format!("sample {i}: p={p} {}", short(&eta)));
    }
    vec![vfp, inv, geo, breve]
}

/// Teichmüller expansions: round trip, the norm formula, and linear forms.
fn expand(cfg: &CheckConfig) -> Vec<Property> {
    let mut s = cfg.sampler(Suite::Expand);
    let primes = cfg.primes(&[2, 3]);
    let mut trip = Property::new("expansion round trip");
    let mut formula = Property::new("expansion norm equals Gauss norm");
    for i in 0..500 {
        let p = *s.pick(&primes);
        let n = 1 + s.below(3) as usize;
        let base = BaseRing::poly(p, n).unwrap();
        let len = 1 + s.below(5) as usize;
        let alpha = s.witt(&base, len, Shape::new(budget_deg(p, len, 5), 3));
        let deltas: Vec<Vec<Rat>> = (0..20).map(|_| random_weights(&mut s, n)).collect();
        let e = teich_expand(&alpha);
        let rt = match &e {
            Ok(e) => reconstruct(e).map(|r| r == alpha).map_err(err),
            Err(x) => Err(err(x)),
        };
        trip.record(rt, || format!("sample {i}: p={p} {}", short(&alpha)));
        let agree = (|| -> Outcome {
            let e = e.as_ref().map_err(err)?;
            for d in &deltas {
                let spec = ValuationSpec::weighted_degree(d.clone()).map_err(err)?;
                if norm_from_expansion(e, d) != gauss(&alpha, &spec, &rat(1))? {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        formula.record(agree, || format!("sample {i}: p={p} {}", short(&alpha)));
    }

    // every (p, d, length) with p ∈ {2,3}, d ≤ 3, length ≤ 5
    let mut linear = Property::new("linear forms have weights on the simplex");
    for &p in &primes {
        for d in 1..=3usize {
            for len in 1..=5usize {
                let xs: Vec<i64> = (0..d).map(|_| 1 + s.below(p as u64 - 1) as i64).collect();
                let outcome = linear_teich_decompose(p, &xs, len).map_err(err).map(|e| {
                    e.terms().iter().all(|(w, xi)| w.abs().is_one() && xi.ord_v().is_some_and(|o| o >= w.u() as usize))
                });
                linear.record(outcome, || format!("p={p} x={xs:?} len={len}"));
            }
        }
    }
    vec![trip, formula, linear]
}

/// Sandwich inequalities on localizations and multiplicativity for
/// regular polynomials.
fn sandwich(cfg: &CheckConfig) -> Vec<Property> {
    let mut s = cfg.sampler(Suite::Sandwich);
    let f2 = CoeffRing::modp(2).unwrap();
    let mut tau_sw = Property::new("tau sandwich");
    let mut sigma_sw = Property::new("sigma sandwich");
    let mut localizing = Property::new("regular polynomials are localizing");
    for i in 0..200 {
        // half with f = T over F_2[T], half with f regular monic over F_2[S]
        let (inner, f) = if i < 100 {
            (ValuationSpec::degree(1), MultiPoly::var(f2, 1, 0))
        } else {
            let (inner, f) = regular_pair(&mut s);
            (inner, f)
        };
        let n = f.nvars();
        let d = s.pick(&[rat(1), rat(2), Rat::new(1.into(), 2.into()), Rat::new(3.into(), 2.into())]).clone();
        let a = s.nonzero_poly(f2, n, Shape::new(4, 3));
        let m = s.below(4) as u32;
        let outcome = (|| -> Result<(bool, bool), String> {
            let z = loc_reduce(&a, m, &f).map_err(err)?;
            let prof = localization_profile(&z, &inner, &d, z.exponent() + 4).map_err(err)?;
            if !prof.nu_prime_exact {
                return Err("ν' not exact".into());
            }
            let nu_f = inner.eval(&f).map_err(err)?;
            let q = rat(2) + nu_f.finite().cloned().unwrap_or_default() / -d.clone();
            // f is localizing with C = 1, so E = Q/C = Q
            let e = q.clone();
            let tau = prof.nu_prime >= prof.tau && prof.tau >= prof.nu_prime.scale(&q);
            let sigma = prof.nu_prime >= prof.sigma && prof.sigma >= prof.nu_prime.scale(&e);
            Ok((tau, sigma))
        })();
        let describe = || format!("fraction {i}: ({a})/({f})^{m} d={d} inner={inner}");
        tau_sw.record(outcome.clone().map(|x| x.0), describe);
        sigma_sw.record(outcome.map(|x| x.1), describe);
        if i >= 100 {
            let samples: Vec<MultiPoly> = (0..5).map(|_| s.nonzero_poly(f2, n, Shape::new(4, 3))).collect();
            let r = verify_localizing(&f, &inner, &rat(1), &rat(0), 4, &samples).map(|r| r.holds).map_err(err);
            localizing.record(r, || format!("f={f} inner={inner}"));
        }
    }

    let mut mult = Property::new("regular polynomials are multiplicative");
    for i in 0..200 {
        let (inner, f) = regular_pair(&mut s);
        let g = s.poly(f2, 2, Shape::new(5, 4));
        let outcome = (|| -> Outcome {
            let lhs = inner.eval(&(&f * &g)).map_err(err)?;
            Ok(lhs == inner.eval(&f).map_err(err)? + inner.eval(&g).map_err(err)?)
        })();
        mult.record(outcome, || format!("pair {i}: f={f} g={g} inner={inner}"));
    }
    vec![tau_sw, sigma_sw, localizing, mult]
}

/// A monic `f ∈ F_2[S][T]` regular for `degree(d=[1, w])`.
fn regular_pair(s: &mut Sampler) -> (ValuationSpec, MultiPoly) {
    let f2 = CoeffRing::modp(2).unwrap();
    loop {
        let w = s.pick(&[rat(1), rat(2), Rat::new(3.into(), 2.into()), Rat::new(1.into(), 2.into())]).clone();
        let inner = ValuationSpec::weighted_degree(vec![rat(1), w.clone()]).unwrap();
        let m = 1 + s.below(3) as u32;
        let mut f = MultiPoly::monomial(f2, 2, &[0, m], 1);
        for i in 0..m {
            // deg_S(a_i) < (m - i)·w keeps f regular
            let room = (rat((m - i) as i64) * &w).ceil().to_integer();
            let max_deg = u32::try_from(room - 1).unwrap_or(0).min(3);
            let a = s.poly(f2, 1, Shape::new(max_deg, 2)).extend_vars(2);
            f = &f + &(&a * &MultiPoly::monomial(f2, 2, &[0, i], 1));
        }
        if regular_variable(&f, &inner).is_some() {
            return (ValuationSpec::weighted_degree(vec![rat(1), w]).unwrap(), f);
        }
    }
}

/// Étale expansions and the coordinate estimate.
fn etale(cfg: &CheckConfig) -> Vec<Property> {
    let mut s = cfg.sampler(Suite::Etale);
    let mut trip = Property::new("etale expansion round trip");
    let mut bound = Property::new("coordinate estimate");
    for &p in &cfg.primes(&[2, 3]) {
        let f = quotient_modulus(p);
        let ext = match EtaleExt::new(&f) {
            Ok(e) => e,
            Err(e) => {
                trip.record(Err(err(e)), || format!("p={p} f={f}"));
                continue;
            }
        };
        let inner = ValuationSpec::degree(1);
        let cb = CoordinateBound::new(&ext, &inner);
        for i in 0..200 {
            let len = 1 + s.below(5) as usize;
            let eta = s.witt(ext.ext(), len, Shape::new(budget_deg(p, len, 4), 3));
            let outcome = etale_basis_expand(&eta, &ext)
                .and_then(|xi| etale_recombine(&xi, &ext))
                .map(|r| r == eta)
                .map_err(err);
            trip.record(outcome, || format!("sample {i}: f={f} {}", short(&eta)));
            let b = s.element(ext.ext(), Shape::new(4, 4));
            let n = s.below(5) as u32;
            let outcome = cb.as_ref().map_err(err).and_then(|cb| cb.check(&ext, &b, n).map_err(err));
            bound.record(outcome, || format!("sample {i}: f={f} b={b} n={n}"));
        }
    }
    vec![trip, bound]
}

/// Artin–Schreier type lifts: exact roots, uniqueness under perturbation.
fn hensel(cfg: &CheckConfig) -> Vec<Property> {
    let mut s = cfg.sampler(Suite::Hensel);
    let mut root = Property::new("lifted root is exact");
    let mut unique = Property::new("perturbed starts reach the same root");
    for i in 0..100 {
        let p = *s.pick(&cfg.primes(&[2, 3]));
        let base = BaseRing::poly(p, 1).unwrap();
        let len = 1 + s.below(4) as usize;
        let a = s.element(&base, Shape::new(budget_deg(p, len, 3), 3));
        // X^p - X - [a^p - a] has the simple root a mod V
        let c = &base.pow(&a, p as u64) - &a;
        let mut f = vec![WittVector::teichmuller(&base, &c, len).unwrap().neg()];
        f.push(WittVector::from_integer(&base, len, -1));
        for _ in 2..p {
            f.push(WittVector::zero(&base, len));
        }
        f.push(WittVector::one(&base, len));
        let lifted = hensel_lift(&f, &a);
        let outcome = lifted.as_ref().map_err(err).and_then(|alpha| {
            Ok(alpha.component(0) == &a && eval_poly(&f, alpha).map_err(err)?.is_zero())
        });
        root.record(outcome, || format!("sample {i}: p={p} a={a} len={len}"));
        let bump = {
            let w = s.witt(&base, len, Shape::new(2, 2));
            let mut cs = w.into_comps();
            cs[0] = base.zero();
            WittVector::new(&base, cs).unwrap()
        };
        let outcome = lifted.as_ref().map_err(err).and_then(|alpha| {
            let start = WittVector::teichmuller(&base, &a, len).map_err(err)?.add(&bump).map_err(err)?;
            Ok(&hensel_lift_from(&f, &start).map_err(err)? == alpha)
        });
        unique.record(outcome, || format!("sample {i}: p={p} a={a} bump={}", short(&bump)));
    }
    vec![root, unique]
}
