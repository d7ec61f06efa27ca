//! Evaluable pseudovaluations with values in `Q ∪ {±∞}`.
//!
//! A [`ValuationSpec`] describes a concrete order function: the trivial
//! valuation, a weighted-degree valuation `ν(T^k) = -Σ k_i d_i` on a
//! polynomial ring, the quotient norm on `A[t]/(f)` induced by `ν(t) = -d`,
//! or the norm `ν'` on a localization `A_f` induced by `ν(1/f) = -d`.

mod loc;
mod text;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{CoeffRing, MultiPoly, ParseError, PolyError, QuotElem};
use crate::scalar::{ext_min, Ext};
use crate::{ExtRat, Rat};

pub use loc::{
    comparison_constants, compose_localizing, is_regular, localization_profile, regular_variable, verify_localizing,
    LocProfile, LocalizingReport,
};
pub use text::parse_spec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValError {
    #[error("element does not belong to the ring of the valuation")]
    SpecMismatch,
    #[error("empty input")]
    EmptyInput,
    #[error("polynomial is not monic in T{var}")]
    NotMonic { var: usize },
    #[error("search bound {given} is below the reduced exponent {needed}")]
    BoundTooSmall { needed: u32, given: u32 },
    #[error("localization norm is only computable exactly for regular denominators")]
    NotExact,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A concrete pseudovaluation.
///
/// Build through the checked constructors; the variants are public for
/// matching.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValuationSpec {
    /// `ν(a) = 0` for `a ≠ 0`.
    Trivial,
    /// `ν(Σ c_k T^k) = min_{c_k ≠ 0} -Σ k_i d_i` on `F_p[T1..Tm]`.
    WeightedDegree(Vec<Rat>),
    /// `ν(b) = min_{0 ≤ i < m} ν(a_i) - i·d` for `b = Σ a_i t^i` in
    /// `A[t]/(f)`; the last variable is `t`.
    MonicQuotient { inner: Box<ValuationSpec>, d: Rat, f: MultiPoly },
    /// `ν'` on `A_f` with `ν(1/f) = -d`.
    Localization { inner: Box<ValuationSpec>, f: MultiPoly, d: Rat },
}

fn positive(d: &Rat, what: &str) -> Result<(), ValError> {
    if d.is_positive() {
        Ok(())
    } else {
        Err(ValError::BadParameter(format!("{what} must be positive, got {d}")))
    }
}

impl ValuationSpec {
    pub fn weighted_degree(weights: Vec<Rat>) -> Result<Self, ValError> {
        for w in &weights {
            positive(w, "weight")?;
        }
        Ok(ValuationSpec::WeightedDegree(weights))
    }

    /// Standard degree valuation in `nvars` variables.
    pub fn degree(nvars: usize) -> Self {
        ValuationSpec::WeightedDegree(vec![Rat::one(); nvars])
    }

    /// Quotient norm on `A[t]/(f)`.
    ///
    /// Requires `d > 0` and `ν(c_l) + (m - l)d ≥ 0` for every nonzero lower
    /// coefficient `c_l` of `f`, which makes the norm the quotient of the
    /// extension of `ν` to `A[t]`.
    pub fn monic_quotient(inner: ValuationSpec, d: Rat, f: MultiPoly) -> Result<Self, ValError> {
        positive(&d, "d")?;
        let coeffs = monic_coeffs(&f)?;
        inner.check_arity(f.nvars() - 1)?;
        let m = coeffs.len() - 1;
        for (l, c) in coeffs[..m].iter().enumerate() {
            let v = inner.eval(c)?;
            if let Ext::Finite(v) = v {
                if v + &d * Rat::from_integer((m - l).into()) < Rat::zero() {
                    return Err(ValError::BadParameter(format!(
                        "d = {d} too small for the coefficient of t^{l}; need at least {}",
                        quotient_d_bound(&inner, &f)?
                    )));
                }
            } else if v == Ext::NegInf {
                return Err(ValError::BadParameter("coefficient with value -inf".into()));
            }
        }
        Ok(ValuationSpec::MonicQuotient { inner: Box::new(inner), d, f })
    }

    pub fn localization(inner: ValuationSpec, f: MultiPoly, d: Rat) -> Result<Self, ValError> {
        positive(&d, "d")?;
        if f.is_zero() {
            return Err(PolyError::ZeroDenominator.into());
        }
        inner.check_arity(f.nvars())?;
        Ok(ValuationSpec::Localization { inner: Box::new(inner), f, d })
    }

    /// Number of variables of the ring, when the spec fixes it.
    pub fn arity(&self) -> Option<usize> {
        match self {
            ValuationSpec::Trivial => None,
            ValuationSpec::WeightedDegree(w) => Some(w.len()),
            ValuationSpec::MonicQuotient { f, .. } | ValuationSpec::Localization { f, .. } => Some(f.nvars()),
        }
    }

    fn check_arity(&self, nvars: usize) -> Result<(), ValError> {
        match self.arity() {
            Some(k) if k != nvars => Err(ValError::SpecMismatch),
            _ => Ok(()),
        }
    }

    /// `ν(x)`. For a localization spec, `x ∈ A` is read as `x / f^0`.
    pub fn eval(&self, x: &MultiPoly) -> Result<ExtRat, ValError> {
        self.check_arity(x.nvars())?;
        if x.is_zero() {
            return Ok(Ext::PosInf);
        }
        match self {
            ValuationSpec::Trivial => Ok(Ext::zero()),
            ValuationSpec::WeightedDegree(w) => Ok(Ext::Finite(weighted_value(w, x))),
            ValuationSpec::MonicQuotient { inner, d, f } => {
                let coords = QuotElem::new(x, f)?.coords();
                Ok(quotient_value(inner, d, &coords)?)
            }
            ValuationSpec::Localization { f, .. } => self.eval_loc(&crate::poly::LocElem::from_base(x, f)?),
        }
    }

    /// `ν'(z)` on a localization spec; exact for regular denominators.
    pub fn eval_loc(&self, z: &crate::poly::LocElem) -> Result<ExtRat, ValError> {
        match self {
            ValuationSpec::Localization { inner, f, d } => {
                if z.f() != f {
                    return Err(ValError::SpecMismatch);
                }
                let prof = localization_profile(z, inner, d, z.exponent())?;
                if prof.nu_prime_exact {
                    Ok(prof.nu_prime)
                } else {
                    Err(ValError::NotExact)
                }
            }
            _ => Err(ValError::SpecMismatch),
        }
    }
}

/// `min` over the terms of `x` of `-Σ k_i w_i`; `x` must be nonzero.
fn weighted_value(w: &[Rat], x: &MultiPoly) -> Rat {
    x.terms()
        .map(|(m, _)| -m.exps().iter().zip(w).map(|(&e, wi)| wi * Rat::from_integer(e.into())).sum::<Rat>())
        .min()
        .expect("nonzero polynomial")
}

fn quotient_value(inner: &ValuationSpec, d: &Rat, coords: &[MultiPoly]) -> Result<ExtRat, ValError> {
    let mut vals = Vec::with_capacity(coords.len());
    for (i, a) in coords.iter().enumerate() {
        vals.push(inner.eval(a)?.add_scalar(&-(d * Rat::from_integer(i.into()))));
    }
    Ok(ext_min(vals))
}

/// Coefficients of `f` in its last variable; `f` must be monic there, of
/// degree at least 1.
fn monic_coeffs(f: &MultiPoly) -> Result<Vec<MultiPoly>, ValError> {
    let n = f.nvars();
    if n == 0 {
        return Err(ValError::NotMonic { var: 0 });
    }
    let cs = f.coeffs_in(n - 1);
    if cs.len() < 2 || !cs.last().unwrap().is_one() {
        return Err(ValError::NotMonic { var: n });
    }
    Ok(cs.into_iter().map(|c| c.restrict_vars(n - 1).expect("free of t")).collect())
}

/// Least `d ≥ 0` with `ν(c_l) + (m - l)d ≥ 0` for the lower coefficients
/// `c_l` of the monic `f`.
pub fn quotient_d_bound(inner: &ValuationSpec, f: &MultiPoly) -> Result<Rat, ValError> {
    let cs = monic_coeffs(f)?;
    let m = cs.len() - 1;
    let mut bound = Rat::zero();
    for (l, c) in cs[..m].iter().enumerate() {
        if let Ext::Finite(v) = inner.eval(c)? {
            let need = -v / Rat::from_integer((m - l).into());
            bound = bound.max(need);
        }
    }
    Ok(bound)
}

/// A convenient admissible `d` for [`ValuationSpec::monic_quotient`]: the
/// least integer `≥ 1` above [`quotient_d_bound`].
pub fn default_quotient_d(inner: &ValuationSpec, f: &MultiPoly) -> Result<Rat, ValError> {
    let b = quotient_d_bound(inner, f)?;
    let c = b.numer().div_ceil(b.denom());
    Ok(Rat::from_integer(c.max(1.into())))
}

/// Order function of a tuple: the minimum of the entries.
pub fn product_order(values: &[ExtRat]) -> Result<ExtRat, ValError> {
    values.iter().cloned().min().ok_or(ValError::EmptyInput)
}

/// Outcome of checking a linear equivalence
/// `g1 ≥ c2·g2 - d2` and `g2 ≥ c1·g1 - d1` on samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichCertificate {
    pub c1: Rat,
    pub c2: Rat,
    pub d1: Rat,
    pub d2: Rat,
    /// Per sample: (first inequality holds, second inequality holds).
    pub verdicts: Vec<(bool, bool)>,
}

impl SandwichCertificate {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|&(a, b)| a && b)
    }

    /// Indices of failing samples.
    pub fn violations(&self) -> Vec<usize> {
        self.verdicts.iter().enumerate().filter(|(_, &(a, b))| !(a && b)).map(|(i, _)| i).collect()
    }
}

/// Evaluates both inequalities of the linear-equivalence definition exactly.
pub fn verify_sandwich<T>(
    samples: &[T],
    g1: impl Fn(&T) -> ExtRat,
    g2: impl Fn(&T) -> ExtRat,
    c1: Rat,
    c2: Rat,
    d1: Rat,
    d2: Rat,
) -> SandwichCertificate {
    let verdicts = samples
        .iter()
        .map(|s| {
            let (v1, v2) = (g1(s), g2(s));
            let first = v1 >= v2.scale(&c2).add_scalar(&-d2.clone());
            let second = v2 >= v1.scale(&c1).add_scalar(&-d1.clone());
            (first, second)
        })
        .collect();
    SandwichCertificate { c1, c2, d1, d2, verdicts }
}

/// `F_p` context of a spec's polynomials, when one is stored.
pub fn spec_ring(spec: &ValuationSpec) -> Option<CoeffRing> {
    match spec {
        ValuationSpec::MonicQuotient { f, .. } | ValuationSpec::Localization { f, .. } => Some(f.ring()),
        _ => None,
    }
}
