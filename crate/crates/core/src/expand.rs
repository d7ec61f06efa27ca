//! Expansion of Witt vectors over `F_p[T1..Td]` in Teichmüller monomials,
//! `α = Σ_k ξ_k X^k` with `X^k = [T]^k` for fractional `k ∈ Z[1/p]^d_{≥0}`
//! and `ξ_k ∈ V^{u(k)} W(F_p)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{Monomial, MultiPoly};
use crate::scalar::{rat_pow, Ext};
use crate::witt::{BaseRing, WittError, WittVector};
use crate::{ExtRat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpandError {
    #[error("unsupported base: {0}")]
    UnsupportedBase(&'static str),
    #[error("coefficient at weight {weight} has V-order below its denominator exponent")]
    MalformedExpansion { weight: String },
    #[error(transparent)]
    Witt(#[from] WittError),
}

/// A weight `k = m / p^u` with `m ∈ Z^d_{≥0}` and `u` minimal.
///
/// Ordered by graded-lex on `m = p^u·k`, then by `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FracWeight {
    scaled: Monomial,
    u: u32,
    p: u32,
}

impl FracWeight {
    /// `m / p^u`, reduced to the minimal denominator exponent.
    pub fn new(p: u32, exps: &[u32], u: u32) -> Self {
        let mut e = exps.to_vec();
        let mut u = u;
        while u > 0 && e.iter().all(|x| x % p == 0) {
            e.iter_mut().for_each(|x| *x /= p);
            u -= 1;
        }
        FracWeight { scaled: Monomial::new(&e), u, p }
    }

    /// Denominator exponent `u`.
    pub fn u(&self) -> u32 {
        self.u
    }

    /// `p^u·k`.
    pub fn scaled(&self) -> &[u32] {
        self.scaled.exps()
    }

    pub fn k(&self) -> Vec<Rat> {
        let den = rat_pow(self.p, -(self.u as i64));
        self.scaled.exps().iter().map(|&e| Rat::from_integer(e.into()) * &den).collect()
    }

    /// `|k| = Σ k_i`.
    pub fn abs(&self) -> Rat {
        Rat::from_integer(self.scaled.degree().into()) * rat_pow(self.p, -(self.u as i64))
    }

    /// `δ(k) = Σ k_i δ_i`.
    pub fn weigh(&self, deltas: &[Rat]) -> Rat {
        self.k().iter().zip(deltas).map(|(k, d)| k * d).sum()
    }
}

impl std::fmt::Display for FracWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.k().iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Finite term map `k ↦ ξ_k`, with `ξ_k ∈ W_{n+1}(F_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    base: BaseRing,
    len: usize,
    terms: BTreeMap<FracWeight, WittVector>,
}

impl Expansion {
    /// An expansion from explicit terms over the polynomial ring `base`.
    pub fn from_terms(base: &BaseRing, len: usize, terms: BTreeMap<FracWeight, WittVector>) -> Self {
        Expansion { base: base.clone(), len, terms }
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<FracWeight, WittVector> {
        &self.terms
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }
}

fn check_poly_base(base: &BaseRing) -> Result<(), ExpandError> {
    if base.modulus().is_some() || base.is_integral() {
        return Err(ExpandError::UnsupportedBase("expansions need a polynomial ring over F_p"));
    }
    Ok(())
}

/// Sum of Teichmüller lifts `Σ_m [c_m T^m]` of the terms of `c`.
fn teichmuller_sum(base: &BaseRing, c: &MultiPoly, len: usize) -> WittVector {
    let lifts: Vec<WittVector> = c
        .terms()
        .map(|(m, coef)| {
            let mono = MultiPoly::monomial(base.coeff_ring(), base.nvars(), m.exps(), coef.clone());
            WittVector::teichmuller(base, &mono, len).expect("same ring")
        })
        .collect();
    WittVector::sum(base, len, &lifts).expect("same base")
}

/// Peels `α` level by level: the leading component `Σ c_m T^m` of the
/// residual at V-level `s` contributes `V^s[c_m]` at weight `m / p^s`.
pub fn teich_expand(alpha: &WittVector) -> Result<Expansion, ExpandError> {
    let base = alpha.base();
    check_poly_base(base)?;
    let (p, n) = (base.p(), alpha.len());
    let mut levels: BTreeMap<FracWeight, Vec<BigInt>> = BTreeMap::new();
    // residual = V^s(y), y of length n - s
    let mut y = alpha.clone();
    for s in 0..n {
        let lead = y.component(0).clone();
        if !lead.is_zero() {
            for (m, c) in lead.terms() {
                let w = FracWeight::new(p, m.exps(), s as u32);
                levels.entry(w).or_insert_with(|| vec![BigInt::zero(); n])[s] = c.clone();
            }
            y = y.sub(&teichmuller_sum(base, &lead, n - s))?;
            debug_assert!(y.component(0).is_zero());
        }
        if s + 1 < n {
            y = WittVector::from_reduced(base, y.comps()[1..].to_vec());
        }
    }
    let scalars = BaseRing::poly(p, 0)?;
    let terms = levels
        .into_iter()
        .map(|(w, cs)| {
            let comps = cs.into_iter().map(|c| scalars.constant(c)).collect();
            (w, WittVector::from_reduced(&scalars, comps))
        })
        .collect();
    Ok(Expansion { base: base.clone(), len: n, terms })
}

/// `Σ_k V^u(η_k · [T^{p^u k}])` where `ξ_k = V^u η_k`.
pub fn reconstruct(e: &Expansion) -> Result<WittVector, ExpandError> {
    let base = &e.base;
    check_poly_base(base)?;
    let n = e.len;
    let mut parts = Vec::with_capacity(e.terms.len());
    for (w, xi) in &e.terms {
        let u = w.u() as usize;
        if xi.ord_v().is_some_and(|o| o < u) {
            return Err(ExpandError::MalformedExpansion { weight: w.to_string() });
        }
        if xi.is_zero() || u >= n {
            continue;
        }
        // η_k·[X] has components η_j X^{p^j}
        let x = MultiPoly::monomial(base.coeff_ring(), base.nvars(), w.scaled(), 1);
        let mut comps = Vec::with_capacity(n);
        comps.extend(std::iter::repeat_n(base.zero(), u));
        let mut xp = x;
        for j in 0..n - u {
            let eta_j = xi.component(u + j).as_constant().unwrap_or_default();
            comps.push(xp.scale(&eta_j));
            xp = base.frobenius(&xp);
        }
        parts.push(WittVector::new(base, comps)?);
    }
    Ok(WittVector::sum(base, n, &parts)?)
}

/// `min_k ord_V(ξ_k) - δ(k)` over nonzero terms.
pub fn norm_from_expansion(e: &Expansion, deltas: &[Rat]) -> ExtRat {
    e.terms
        .iter()
        .filter_map(|(w, xi)| xi.ord_v().map(|o| Ext::Finite(Rat::from_integer(o.into()) - w.weigh(deltas))))
        .min()
        .unwrap_or(Ext::PosInf)
}

/// `min_k ord_V(ξ_k) - ε|k| - u(k)` over nonzero terms.
pub fn breve_norm(e: &Expansion, eps: &Rat) -> ExtRat {
    e.terms
        .iter()
        .filter_map(|(w, xi)| {
            xi.ord_v().map(|o| {
                Ext::Finite(Rat::from_integer(o.into()) - eps * w.abs() - Rat::from_integer(w.u().into()))
            })
        })
        .min()
        .unwrap_or(Ext::PosInf)
}

/// Expansion of `[x_1 t_1 + … + x_d t_d]` in `W_len(F_p[t_1..t_d])`.
pub fn linear_teich_decompose(p: u32, xs: &[i64], len: usize) -> Result<Expansion, ExpandError> {
    let base = BaseRing::poly(p, xs.len())?;
    let ring = base.coeff_ring();
    let form = xs.iter().enumerate().fold(base.zero(), |acc, (i, &x)| {
        let mut e = vec![0u32; xs.len()];
        e[i] = 1;
        &acc + &MultiPoly::monomial(ring, xs.len(), &e, x)
    });
    let e = teich_expand(&WittVector::teichmuller(&base, &form, len)?)?;
    for (w, xi) in e.terms() {
        debug_assert!(w.abs().is_one(), "weight {w} off the simplex");
        debug_assert!(xi.ord_v().is_none_or(|o| o >= w.u() as usize));
    }
    Ok(e)
}
