//! Sparse multivariate polynomials with arbitrary-precision coefficients over
//! `F_p` or `Z`.
//!
//! Terms are kept sorted ascending in graded-lexicographic order (total degree
//! first, then lexicographic with `T1` most significant); zero coefficients
//! are never stored, so structural equality is polynomial equality.

mod divide;
mod linalg;
mod loc;
mod text;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub use divide::{div_exact, monic_divide, rem_monic, MonicDivision};
pub use linalg::{determinant, solve_unimodular, Matrix};
pub use loc::{loc_reduce, LocElem, QuotElem};
pub use text::{parse_poly, parse_poly_infer, ParseError};

/// Largest supported prime; bounds the memo-free structural computations.
pub const MAX_PRIME: u32 = 97;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("RingMismatch: {0} vs {1}")]
    RingMismatch(CoeffRing, CoeffRing),
    #[error("ArityMismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),
    #[error("NotMonic: leading coefficient in T{var} is not 1")]
    NotMonic { var: usize },
    #[error("ZeroDenominator")]
    ZeroDenominator,
    #[error("UnsupportedRing: {0}")]
    UnsupportedRing(&'static str),
    #[error("NotPrime: {0}")]
    NotPrime(u32),
    #[error("PrimeOutOfRange: {0} (supported 2..={max})", max = MAX_PRIME)]
    PrimeOutOfRange(u32),
    #[error("Singular: determinant {det} is not a unit")]
    Singular { det: String },
    #[error("VariableOutOfRange: T{0}")]
    VariableOutOfRange(usize),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// The coefficient ring of a [`MultiPoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    IntegersMod(u32),
    Integers,
}

impl CoeffRing {
    /// `F_p`, checking primality by trial division.
    pub fn modp(p: u32) -> Result<Self, PolyError> {
        if !(2..=MAX_PRIME).contains(&p) {
            return Err(PolyError::PrimeOutOfRange(p));
        }
        if (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(PolyError::NotPrime(p));
        }
        Ok(CoeffRing::IntegersMod(p))
    }

    pub fn characteristic(&self) -> Option<u32> {
        match self {
            CoeffRing::IntegersMod(p) => Some(*p),
            CoeffRing::Integers => None,
        }
    }

    fn normalize(&self, c: BigInt) -> BigInt {
        match self {
            CoeffRing::IntegersMod(p) => c.mod_floor(&BigInt::from(*p)),
            CoeffRing::Integers => c,
        }
    }

    /// Inverse of a coefficient, when it exists in the ring.
    pub fn inverse(&self, c: &BigInt) -> Option<BigInt> {
        match self {
            CoeffRing::IntegersMod(p) => {
                let p = BigInt::from(*p);
                let c = c.mod_floor(&p);
                if c.is_zero() {
                    return None;
                }
                // Fermat: c^(p-2)
                Some(c.modpow(&(&p - 2), &p))
            }
            CoeffRing::Integers => {
                if c.abs().is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
        }
    }
}

impl std::fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoeffRing::IntegersMod(p) => write!(f, "F_{}", p),
            CoeffRing::Integers => f.write_str("Z"),
        }
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn scale(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Binary ring operation selector for [`ring_op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// A sparse polynomial in `nvars` variables `T1..Td`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    ring: CoeffRing,
    nvars: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl MultiPoly {
    pub fn zero(ring: CoeffRing, nvars: usize) -> Self {
        MultiPoly { ring, nvars, terms: Vec::new() }
    }

    pub fn one(ring: CoeffRing, nvars: usize) -> Self {
        Self::constant(ring, nvars, 1)
    }

    pub fn constant(ring: CoeffRing, nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ring, nvars, &vec![0; nvars], c)
    }

    /// The variable `T{i+1}` (0-based index `i`).
    pub fn var(ring: CoeffRing, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(ring, nvars, &e, 1)
    }

    pub fn monomial(ring: CoeffRing, nvars: usize, exps: &[u32], c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars);
        let c = ring.normalize(c.into());
        let terms = if c.is_zero() { Vec::new() } else { vec![(Monomial::new(exps), c)] };
        MultiPoly { ring, nvars, terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(ring: CoeffRing, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "exponent vector length");
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(ring, nvars, acc)
    }

    fn from_map(ring: CoeffRing, nvars: usize, acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = acc
            .into_iter()
            .filter_map(|(m, c)| {
                let c = ring.normalize(c);
                (!c.is_zero()).then_some((m, c))
            })
            .collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MultiPoly { ring, nvars, terms }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + ExactSizeIterator {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The coefficient if the polynomial is constant (zero counts, as `0`).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.degree() == 0 => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[var]).max()
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch(self.ring, other.ring));
        }
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sgn = |c: &BigInt| if negate { -c } else { c.clone() };
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), self.ring.normalize(sgn(&b[j].1))));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.ring.normalize(&a[i].1 + sgn(&b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { ring: self.ring, nvars: self.nvars, terms: out }
    }

    fn mul_unchecked(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(self.ring, self.nvars);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            // Multiplying by a monomial preserves the term order.
            let terms = large
                .terms
                .iter()
                .filter_map(|(n, d)| {
                    let v = self.ring.normalize(c * d);
                    (!v.is_zero()).then(|| (m.mul(n), v))
                })
                .collect();
            return MultiPoly { ring: self.ring, nvars: self.nvars, terms };
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(small.terms.len() * large.terms.len() / 2 + 1);
        for (m, c) in &small.terms {
            for (n, d) in &large.terms {
                let prod = c * d;
                match acc.entry(m.mul(n)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Self::from_map(self.ring, self.nvars, acc)
    }

    pub fn pow(&self, mut e: u64) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.ring, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, d)| {
                let v = self.ring.normalize(c * d);
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        MultiPoly { ring: self.ring, nvars: self.nvars, terms }
    }

    /// Multiplies by the monomial `c·m`.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> MultiPoly {
        let single = MultiPoly { ring: self.ring, nvars: self.nvars, terms: vec![(m.clone(), c.clone())] };
        if c.is_zero() {
            return MultiPoly::zero(self.ring, self.nvars);
        }
        self.mul_unchecked(&single)
    }

    /// The `p`-th power over `F_p` by the freshman's dream.
    pub fn frobenius(&self) -> Result<MultiPoly, PolyError> {
        let p = self
            .ring
            .characteristic()
            .ok_or(PolyError::UnsupportedRing("frobenius needs F_p coefficients"))?;
        // c^p = c in F_p, and the map on monomials is injective, so the
        // ordering is preserved.
        let terms = self.terms.iter().map(|(m, c)| (m.scale(p), c.clone())).collect();
        Ok(MultiPoly { ring: self.ring, nvars: self.nvars, terms })
    }

    /// Reinterprets coefficients in another ring: `F_p → Z` takes the
    /// representatives in `0..p`, `Z → F_p` reduces.
    pub fn with_ring(&self, ring: CoeffRing) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let v = ring.normalize(c.clone());
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        MultiPoly { ring, nvars: self.nvars, terms }
    }

    /// Coefficients reduced into `0..modulus` (integer polynomials only).
    pub fn reduce_mod(&self, modulus: &BigInt) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let v = c.mod_floor(modulus);
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        MultiPoly { ring: self.ring, nvars: self.nvars, terms }
    }

    /// Divides every coefficient by `d`; `None` if some division is inexact.
    pub fn div_coeffs(&self, d: &BigInt) -> Option<MultiPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.push((m.clone(), self.ring.normalize(q)));
        }
        terms.retain(|(_, c)| !c.is_zero());
        Some(MultiPoly { ring: self.ring, nvars: self.nvars, terms })
    }

    /// Coefficients with respect to `T{var+1}`: `self = Σ_k c_k T^k`, where
    /// each `c_k` has the same variable count with exponent 0 in `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.clone();
            e.0[var] = 0;
            buckets[k].push((e, c.clone()));
        }
        buckets
            .into_iter()
            .map(|ts| MultiPoly::from_terms(self.ring, self.nvars, ts))
            .collect()
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(ring: CoeffRing, nvars: usize, var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let terms = coeffs.iter().enumerate().flat_map(|(k, c)| {
            c.terms.iter().map(move |(m, v)| {
                let mut e = m.clone();
                e.0[var] += k as u32;
                (e, v.clone())
            })
        });
        MultiPoly::from_terms(ring, nvars, terms)
    }

    /// Embeds into a ring with more variables (appended at the end).
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(nvars, 0);
                (Monomial(e), c.clone())
            })
            .collect::<Vec<_>>();
        // Appending zero exponents keeps the order.
        MultiPoly { ring: self.ring, nvars, terms }
    }

    /// Drops trailing variables, which must not occur.
    pub fn restrict_vars(&self, nvars: usize) -> Option<MultiPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.0[nvars..].iter().any(|&e| e != 0) {
                return None;
            }
            terms.push((Monomial(SmallVec::from_slice(&m.0[..nvars])), c.clone()));
        }
        Some(MultiPoly { ring: self.ring, nvars, terms })
    }

    /// Formal partial derivative in `var`.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.clone();
            let k = e.0[var];
            e.0[var] -= 1;
            (e, c * BigInt::from(k))
        });
        MultiPoly::from_terms(self.ring, self.nvars, terms)
    }
}

/// `x op y` with ring and arity checks.
pub fn ring_op(x: &MultiPoly, y: &MultiPoly, op: RingOp) -> Result<MultiPoly, PolyError> {
    match op {
        RingOp::Add => x.try_add(y),
        RingOp::Sub => x.try_sub(y),
        RingOp::Mul => x.try_mul(y),
    }
}

// Operator forms panic on mismatched rings; library internals only combine
// polynomials from one context.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> CoeffRing {
        CoeffRing::modp(2).unwrap()
    }

    fn p(s: &str, ring: CoeffRing, n: usize) -> MultiPoly {
        parse_poly(s, ring, n).unwrap()
    }

    #[test]
    fn prime_checks() {
        assert!(CoeffRing::modp(97).is_ok());
        assert_eq!(CoeffRing::modp(91), Err(PolyError::NotPrime(91)));
        assert_eq!(CoeffRing::modp(101), Err(PolyError::PrimeOutOfRange(101)));
        assert_eq!(CoeffRing::modp(1), Err(PolyError::PrimeOutOfRange(1)));
    }

    #[test]
    fn characteristic_two_cancels() {
        let t = p("T1", f2(), 1);
        assert!((&t + &t).is_zero());
        let u = p("T1 + 1", f2(), 1);
        assert_eq!(&u * &u, p("T1^2 + 1", f2(), 1));
    }

    #[test]
    fn binomial_cube_over_integers() {
        let z = CoeffRing::Integers;
        let s = p("T1 + T2", z, 2);
        let expected = p("T1^3 + 3*T1^2*T2 + 3*T1*T2^2 + T2^3", z, 2);
        assert_eq!(s.pow(3), expected);
        // oracle: repeated multiplication
        assert_eq!(s.pow(3), &(&s * &s) * &s);
    }

    #[test]
    fn mismatches_are_reported() {
        let a = p("T1", f2(), 1);
        let b = p("T1", CoeffRing::Integers, 1);
        let c = p("T1", f2(), 2);
        assert!(matches!(ring_op(&a, &b, RingOp::Add), Err(PolyError::RingMismatch(..))));
        assert!(matches!(ring_op(&a, &c, RingOp::Mul), Err(PolyError::ArityMismatch(1, 2))));
    }

    #[test]
    fn frobenius_examples() {
        let f3 = CoeffRing::modp(3).unwrap();
        assert_eq!(p("T1 + T2", f2(), 2).frobenius().unwrap(), p("T1^2 + T2^2", f2(), 2));
        assert_eq!(p("2*T1", f3, 1).frobenius().unwrap(), p("2*T1^3", f3, 1));
        let a = p("T1 + 1", f3, 1).pow(2);
        assert_eq!(a.frobenius().unwrap(), a.pow(3));
        assert_eq!(a.frobenius().unwrap(), p("T1^3 + 1", f3, 1).pow(2));
        assert!(matches!(
            p("T1", CoeffRing::Integers, 1).frobenius(),
            Err(PolyError::UnsupportedRing(_))
        ));
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(&[0, 2]);
        let b = Monomial::new(&[1, 1]);
        let c = Monomial::new(&[3, 0]);
        assert!(a < b && b < c);
        assert!(Monomial::new(&[0, 0]) < Monomial::new(&[0, 1]));
    }

    #[test]
    fn coefficient_split_round_trips() {
        let z = CoeffRing::Integers;
        let g = p("3*T1^2*T2 + T2^2 - T1 + 5", z, 2);
        let cs = g.coeffs_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(MultiPoly::from_coeffs_in(z, 2, 1, &cs), g);
    }

    #[test]
    fn derivative_is_formal() {
        let z = CoeffRing::Integers;
        assert_eq!(p("T1^3 + 2*T1*T2", z, 2).derivative(0), p("3*T1^2 + 2*T2", z, 2));
        assert!(p("T1^2", f2(), 1).derivative(0).is_zero());
    }
}
