//! Norms on localizations `A_f` and the localizing property.

use num_traits::Signed;

use super::{monic_coeffs, positive, ValError, ValuationSpec};
use crate::poly::{monic_divide, LocElem, MultiPoly};
use crate::scalar::{ext_min, Ext};
use crate::{ExtRat, Rat};

fn rat(n: impl Into<num_bigint::BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Whether the monic `f ∈ B[t]` (last variable `t`) satisfies
/// `min_{0 ≤ i < m} μ(a_i) - i·d > -m·d`.
pub fn is_regular(f: &MultiPoly, inner: &ValuationSpec, d: &Rat) -> Result<bool, ValError> {
    positive(d, "d")?;
    let cs = monic_coeffs(f)?;
    inner.check_arity(f.nvars() - 1)?;
    let m = cs.len() - 1;
    let mut vals = Vec::with_capacity(m);
    for (i, a) in cs[..m].iter().enumerate() {
        vals.push(inner.eval(a)?.add_scalar(&-(d * rat(i))));
    }
    Ok(ext_min(vals) > Ext::Finite(-(d * rat(m))))
}

/// A variable `T_j` in which `f` is monic and regular for the weighted
/// degree `inner`, using the weight of `T_j` as the regularity parameter.
pub fn regular_variable(f: &MultiPoly, inner: &ValuationSpec) -> Option<usize> {
    let w = match inner {
        ValuationSpec::WeightedDegree(w) if w.len() == f.nvars() => w,
        _ => return None,
    };
    (0..f.nvars()).find(|&j| {
        let cs = f.coeffs_in(j);
        if cs.len() < 2 || !cs.last().unwrap().is_one() {
            return false;
        }
        let m = cs.len() - 1;
        let lower = cs[..m]
            .iter()
            .enumerate()
            .map(|(i, a)| inner.eval(a).expect("same arity").add_scalar(&-(&w[j] * rat(i))));
        ext_min(lower) > Ext::Finite(-(&w[j] * rat(m)))
    })
}

/// Invariants of a reduced fraction `z = a / f^θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocProfile {
    /// Reduced exponent: least `n` with `f^n z ∈ A`.
    pub theta: u32,
    /// `ν(a) - θ·d`.
    pub sigma: ExtRat,
    /// Best `ν(a f^r) - (θ + r)·d` over `r ≤ L`.
    pub tau: ExtRat,
    /// `ν'(z)`, or a lower bound for it when `nu_prime_exact` is false.
    pub nu_prime: ExtRat,
    pub nu_prime_exact: bool,
    /// `min(ν'(z), -d·θ)`.
    pub mu: ExtRat,
    /// The search bound `L` used.
    pub level: u32,
}

/// `a = u_0 f^θ + Σ_{k<θ} r_k f^k` with `deg_{T_j} r_k < deg f`; returns
/// the value `min(ν(u_0), min_{l ≥ 1} ν(r_{θ-l}) - l·d)` of the resulting
/// representation `z = u_0 + Σ_l r_{θ-l} / f^l`.
fn expansion_value(
    a: &MultiPoly,
    f: &MultiPoly,
    var: usize,
    theta: u32,
    inner: &ValuationSpec,
    d: &Rat,
) -> Result<ExtRat, ValError> {
    let mut rest = a.clone();
    let mut vals = Vec::with_capacity(theta as usize + 1);
    for k in 0..theta {
        let div = monic_divide(&rest, f, var)?;
        let l = theta - k;
        vals.push(inner.eval(&div.remainder)?.add_scalar(&-(d * rat(l))));
        rest = div.quotient;
    }
    vals.push(inner.eval(&rest)?);
    Ok(ext_min(vals))
}

fn monic_in(f: &MultiPoly, var: usize) -> bool {
    let cs = f.coeffs_in(var);
    cs.len() >= 2 && cs.last().unwrap().is_one()
}

/// Computes `θ, σ, τ, ν', μ` for the reduced fraction `z`.
///
/// `ν'` is exact when `f` is a nonzero constant or is regular in some
/// variable for a weighted-degree `inner`: then the representation by
/// repeated division by `f` is optimal. Otherwise the best value over the
/// representations `a f^r / f^{θ+r}` (`r ≤ L`) and the division
/// representations in each monic variable is returned as a lower bound.
pub fn localization_profile(z: &LocElem, inner: &ValuationSpec, d: &Rat, level: u32) -> Result<LocProfile, ValError> {
    positive(d, "d")?;
    let f = z.f();
    inner.check_arity(f.nvars())?;
    let theta = z.exponent();
    if z.is_zero() {
        return Ok(LocProfile {
            theta: 0,
            sigma: Ext::PosInf,
            tau: Ext::PosInf,
            nu_prime: Ext::PosInf,
            nu_prime_exact: true,
            mu: Ext::PosInf,
            level,
        });
    }
    if level < theta {
        return Err(ValError::BoundTooSmall { needed: theta, given: level });
    }
    let a = z.numerator();
    let nu_a = inner.eval(a)?;
    let sigma = nu_a.add_scalar(&-(d * rat(theta)));

    let mut tau = sigma.clone();
    let mut af = a.clone();
    for r in 1..=level {
        af = &af * f;
        let v = inner.eval(&af)?.add_scalar(&-(d * rat(theta + r)));
        tau = tau.max(v);
    }

    let (nu_prime, exact) = if f.as_constant().is_some() {
        (nu_a.clone(), true)
    } else if let Some(j) = regular_variable(f, inner) {
        (expansion_value(a, f, j, theta, inner, d)?, true)
    } else {
        let mut best = tau.clone();
        for j in (0..f.nvars()).filter(|&j| monic_in(f, j)) {
            best = best.max(expansion_value(a, f, j, theta, inner, d)?);
        }
        (best, false)
    };
    let mu = nu_prime.clone().min(Ext::Finite(-(d * rat(theta))));
    Ok(LocProfile { theta, sigma, tau, nu_prime, nu_prime_exact: exact, mu, level })
}

/// Result of a bounded check of `ν(f^n x) ≤ C·ν(x) + n·D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizingReport {
    pub holds: bool,
    /// Number of `(x, n)` pairs evaluated.
    pub checked: usize,
    /// First failing `(sample index, n)`.
    pub counterexample: Option<(usize, u32)>,
    /// Largest `n` tried; the check says nothing beyond it.
    pub n_max: u32,
}

/// Checks the localizing inequality for every sample and `1 ≤ n ≤ n_max`.
pub fn verify_localizing(
    f: &MultiPoly,
    inner: &ValuationSpec,
    c: &Rat,
    dd: &Rat,
    n_max: u32,
    samples: &[MultiPoly],
) -> Result<LocalizingReport, ValError> {
    positive(c, "C")?;
    if dd.is_negative() {
        return Err(ValError::BadParameter(format!("D must be non-negative, got {dd}")));
    }
    if n_max == 0 {
        return Err(ValError::BadParameter("n_max must be at least 1".into()));
    }
    let mut checked = 0;
    for (idx, x) in samples.iter().enumerate() {
        let bound_base = inner.eval(x)?.scale(c);
        let mut fx = x.clone();
        for n in 1..=n_max {
            fx = &fx * f;
            checked += 1;
            if inner.eval(&fx)? > bound_base.add_scalar(&(dd * rat(n))) {
                return Ok(LocalizingReport { holds: false, checked, counterexample: Some((idx, n)), n_max });
            }
        }
    }
    Ok(LocalizingReport { holds: true, checked, counterexample: None, n_max })
}

/// If `fg` is localizing with `(C, D)`, then `g` is localizing with
/// `(C, D - ν(f))`.
pub fn compose_localizing(c: &Rat, dd: &Rat, nu_f: &ExtRat) -> Option<(Rat, Rat)> {
    nu_f.finite().map(|v| (c.clone(), dd - v))
}

/// Tightest `(Q1, Q2)` with `Q1·μ ≥ ν' ≥ Q2·μ` on the given `(ν', μ)`
/// pairs; pairs with `μ` zero or infinite put no constraint on the ratio.
pub fn comparison_constants(pairs: &[(ExtRat, ExtRat)]) -> Option<(Rat, Rat)> {
    let ratios: Vec<Rat> = pairs
        .iter()
        .filter_map(|(nu, mu)| match (nu.finite(), mu.finite()) {
            (Some(n), Some(m)) if m.is_negative() => Some(n / m),
            _ => None,
        })
        .collect();
    let lo = ratios.iter().min()?.clone();
    let hi = ratios.iter().max()?.clone();
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{loc_reduce, parse_poly, CoeffRing};

    fn f2(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, CoeffRing::modp(2).unwrap(), n).unwrap()
    }

    fn one() -> Rat {
        rat(1)
    }

    #[test]
    fn regularity_examples() {
        let nu = ValuationSpec::degree(1);
        let f = f2("T2^2 + T1*T2", 2);
        assert!(!is_regular(&f, &nu, &rat(1)).unwrap());
        assert!(is_regular(&f, &nu, &rat(3)).unwrap());
        assert!(is_regular(&f2("T2^5", 2), &nu, &rat(1)).unwrap());
        assert!(matches!(is_regular(&f2("T1*T2", 2), &nu, &rat(1)), Err(ValError::NotMonic { .. })));
    }

    #[test]
    fn profile_of_one_over_t() {
        let nu = ValuationSpec::degree(1);
        let t = f2("T1", 1);
        let z = loc_reduce(&f2("1", 1), 1, &t).unwrap();
        let p = localization_profile(&z, &nu, &one(), 3).unwrap();
        assert_eq!(p.theta, 1);
        assert_eq!(p.sigma, Ext::from_int(-1));
        assert_eq!(p.tau, Ext::from_int(-1));
        assert_eq!(p.nu_prime, Ext::from_int(-1));
        assert!(p.nu_prime_exact);
        assert_eq!(p.mu, Ext::from_int(-1));
    }

    #[test]
    fn profile_of_t_plus_one_over_t_squared() {
        let nu = ValuationSpec::degree(1);
        let z = loc_reduce(&f2("T1 + 1", 1), 2, &f2("T1", 1)).unwrap();
        let p = localization_profile(&z, &nu, &one(), 4).unwrap();
        assert_eq!(p.theta, 2);
        assert_eq!(p.sigma, Ext::from_int(-3));
        assert_eq!(p.tau, Ext::from_int(-3));
        // 1/T + 1/T^2
        assert_eq!(p.nu_prime, Ext::from_int(-2));
        assert!(p.nu_prime >= p.tau);
        assert_eq!(localization_profile(&z, &nu, &one(), 1), Err(ValError::BoundTooSmall { needed: 2, given: 1 }));
    }

    #[test]
    fn profile_of_base_element_and_zero() {
        let nu = ValuationSpec::degree(1);
        let t = f2("T1", 1);
        let z = LocElem::from_base(&f2("T1^2 + 1", 1), &(&t + &f2("1", 1))).unwrap();
        let p = localization_profile(&z, &nu, &one(), 0).unwrap();
        assert_eq!(p.theta, 0);
        assert_eq!(p.sigma, Ext::from_int(-2));
        assert!(p.nu_prime >= Ext::from_int(-2));
        let zero = LocElem::from_base(&f2("0", 1), &t).unwrap();
        let p = localization_profile(&zero, &nu, &one(), 0).unwrap();
        assert_eq!((p.theta, p.nu_prime, p.mu), (0, Ext::PosInf, Ext::PosInf));
    }

    #[test]
    fn localizing_checks() {
        let nu = ValuationSpec::degree(1);
        let xs: Vec<MultiPoly> = ["1", "T1 + 1", "T1^4 + T1"].iter().map(|s| f2(s, 1)).collect();
        let rep = verify_localizing(&f2("T1", 1), &nu, &one(), &rat(0), 4, &xs).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.checked, 12);
        assert!(verify_localizing(&f2("1", 1), &nu, &one(), &rat(0), 4, &xs).unwrap().holds);
        assert!(verify_localizing(&f2("T1", 1), &nu, &one(), &rat(-1), 4, &xs).is_err());
        // C = 2: ν(T1) = -1 > 2·ν(T1)
        let rep = verify_localizing(&f2("1", 1), &nu, &rat(2), &rat(0), 1, &[f2("T1", 1)]).unwrap();
        assert_eq!(rep.counterexample, Some((0, 1)));
    }

    #[test]
    fn eval_on_localization_spec() {
        let spec = ValuationSpec::localization(ValuationSpec::degree(1), f2("T1", 1), one()).unwrap();
        let z = loc_reduce(&f2("T1 + 1", 1), 2, &f2("T1", 1)).unwrap();
        assert_eq!(spec.eval_loc(&z).unwrap(), Ext::from_int(-2));
        assert_eq!(spec.eval(&f2("T1^3", 1)).unwrap(), Ext::from_int(-3));
        // S*T + 1 is not monic in either variable: no exact value
        let g = f2("T1*T2 + 1", 2);
        let spec = ValuationSpec::localization(ValuationSpec::degree(2), g.clone(), one()).unwrap();
        let z = loc_reduce(&f2("1", 2), 1, &g).unwrap();
        assert_eq!(spec.eval_loc(&z), Err(ValError::NotExact));
    }

    #[test]
    fn constants_from_samples() {
        let pairs = vec![
            (Ext::from_int(-2), Ext::from_int(-2)),
            (Ext::from_int(-1), Ext::from_int(-4)),
            (Ext::PosInf, Ext::PosInf),
        ];
        let (q1, q2) = comparison_constants(&pairs).unwrap();
        assert_eq!(q1, Rat::new(1.into(), 4.into()));
        assert_eq!(q2, rat(1));
        assert_eq!(compose_localizing(&one(), &rat(0), &Ext::from_int(-2)), Some((one(), rat(2))));
    }
}
