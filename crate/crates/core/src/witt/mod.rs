//! Truncated `p`-typical Witt vectors `W_{n+1}(B)` over `B = F_p[T1..Td]` or a
//! monic quotient of it.
//!
//! Arithmetic runs through ghost components modulo `p^{n+1}` ([`fast`]); the
//! exact integer ghost map in [`ghost`] is kept as an independent reference.

mod base;
pub mod fast;
pub mod ghost;
mod inverse;
mod text;

use num_bigint::BigInt;

use crate::poly::{MultiPoly, ParseError, PolyError};

pub use base::BaseRing;
pub use inverse::{geometric_inverse, witt_inverse};
pub use text::{parse_witt, parse_witt_short};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WittError {
    #[error("Witt vectors live over different bases or have different lengths")]
    Mismatch,
    #[error("operation needs length at least 2")]
    LengthUnderflow,
    #[error("ghost vector is not integral at index {index}")]
    NotIntegral { index: usize },
    #[error("not a unit")]
    NotAUnit,
    #[error("unsupported base: {0}")]
    UnsupportedBase(&'static str),
    #[error("Witt vectors need length at least 1")]
    EmptyVector,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// An element `(x_0, …, x_n)` of `W_{n+1}(B)`, components in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittVector {
    base: BaseRing,
    comps: Vec<MultiPoly>,
}

impl WittVector {
    /// Builds a vector from components, reducing each into canonical form.
    pub fn new(base: &BaseRing, comps: Vec<MultiPoly>) -> Result<Self, WittError> {
        if comps.is_empty() {
            return Err(WittError::EmptyVector);
        }
        let comps = comps.iter().map(|c| base.reduce(c)).collect::<Result<_, _>>()?;
        Ok(WittVector { base: base.clone(), comps })
    }

    pub(crate) fn from_reduced(base: &BaseRing, comps: Vec<MultiPoly>) -> Self {
        debug_assert!(!comps.is_empty());
        WittVector { base: base.clone(), comps }
    }

    pub fn zero(base: &BaseRing, len: usize) -> Self {
        WittVector::from_reduced(base, vec![base.zero(); len.max(1)])
    }

    pub fn one(base: &BaseRing, len: usize) -> Self {
        WittVector::teichmuller_reduced(base, base.one(), len)
    }

    /// The Teichmüller lift `[a] = (a, 0, …, 0)`.
    pub fn teichmuller(base: &BaseRing, a: &MultiPoly, len: usize) -> Result<Self, WittError> {
        Ok(WittVector::teichmuller_reduced(base, base.reduce(a)?, len))
    }

    fn teichmuller_reduced(base: &BaseRing, a: MultiPoly, len: usize) -> Self {
        let mut comps = vec![base.zero(); len.max(1)];
        comps[0] = a;
        WittVector::from_reduced(base, comps)
    }

    /// The image of the integer `k` under `Z → W_{len}(B)`.
    pub fn from_integer(base: &BaseRing, len: usize, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let z = base.integral();
        let ghost = vec![z.constant(k); len.max(1)];
        let lifted = ghost::from_ghost(&z, &ghost).expect("integers have integral ghost vectors");
        lifted.reduce_to(&base.modp())
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    /// Number of components, `n + 1`.
    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn comps(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &MultiPoly {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<MultiPoly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MultiPoly::is_zero)
    }

    /// Largest `k` with `x ∈ V^k W`, or `None` for the zero vector.
    pub fn ord_v(&self) -> Option<usize> {
        self.comps.iter().position(|c| !c.is_zero())
    }

    fn check_same(&self, other: &WittVector) -> Result<(), WittError> {
        if self.base != other.base || self.len() != other.len() {
            return Err(WittError::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &WittVector) -> Result<WittVector, WittError> {
        self.check_same(other)?;
        Ok(fast::add(self, other))
    }

    /// `[a]·x = (a x_0, a^p x_1, a^{p^2} x_2, …)`.
    pub fn mul_teichmuller(&self, a: &MultiPoly) -> Result<WittVector, WittError> {
        let mut ap = self.base.reduce(a)?;
        let mut comps = Vec::with_capacity(self.len());
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                ap = self.base.frobenius(&ap);
            }
            comps.push(self.base.mul(&ap, c));
        }
        Ok(WittVector::from_reduced(&self.base, comps))
    }

    /// Sum of many vectors of length `len` over `base`; cheaper than
    /// repeated [`WittVector::add`].
    pub fn sum(base: &BaseRing, len: usize, xs: &[WittVector]) -> Result<WittVector, WittError> {
        if xs.iter().any(|x| x.base() != base || x.len() != len) {
            return Err(WittError::Mismatch);
        }
        Ok(fast::sum(base, len, xs))
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector, WittError> {
        self.check_same(other)?;
        Ok(fast::sub(self, other))
    }

    pub fn mul(&self, other: &WittVector) -> Result<WittVector, WittError> {
        self.check_same(other)?;
        Ok(fast::mul(self, other))
    }

    pub fn neg(&self) -> WittVector {
        fast::neg(self)
    }

    /// `x^e` by square-and-multiply.
    pub fn pow(&self, mut e: u64) -> WittVector {
        let mut acc = WittVector::one(&self.base, self.len());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = fast::mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = fast::mul(&b, &b);
            }
        }
        acc
    }

    /// Verschiebung `V(x_0, …, x_n) = (0, x_0, …, x_{n-1})`.
    pub fn verschiebung(&self) -> WittVector {
        let mut comps = Vec::with_capacity(self.len());
        comps.push(self.base.zero());
        comps.extend(self.comps[..self.len() - 1].iter().cloned());
        WittVector::from_reduced(&self.base, comps)
    }

    /// `V^k`.
    pub fn verschiebung_pow(&self, k: usize) -> WittVector {
        let n = self.len();
        let mut comps = vec![self.base.zero(); k.min(n)];
        comps.extend(self.comps.iter().take(n.saturating_sub(k)).cloned());
        WittVector::from_reduced(&self.base, comps)
    }

    /// Frobenius `F(x) = (x_0^p, …, x_n^p)`; length 1 is rejected.
    pub fn frobenius(&self) -> Result<WittVector, WittError> {
        if self.len() < 2 {
            return Err(WittError::LengthUnderflow);
        }
        Ok(self.frobenius_unchecked())
    }

    pub(crate) fn frobenius_unchecked(&self) -> WittVector {
        let comps = self.comps.iter().map(|c| self.base.frobenius(c)).collect();
        WittVector::from_reduced(&self.base, comps)
    }

    /// Multiplication by `p`, computed as `V F`.
    pub fn mul_p(&self) -> WittVector {
        self.frobenius_unchecked().verschiebung()
    }

    /// Multiplication by `p^k`.
    pub fn mul_p_pow(&self, k: usize) -> WittVector {
        if k >= self.len() {
            return WittVector::zero(&self.base, self.len());
        }
        (0..k).fold(self.clone(), |x, _| x.mul_p())
    }

    /// Multiplication by the integer `k`.
    pub fn mul_int(&self, k: impl Into<BigInt>) -> WittVector {
        let kw = WittVector::from_integer(&self.base, self.len(), k);
        fast::mul(self, &kw)
    }

    /// First `len` components (the projection `W_{n+1} → W_len`).
    pub fn truncate(&self, len: usize) -> WittVector {
        let len = len.clamp(1, self.len());
        WittVector::from_reduced(&self.base, self.comps[..len].to_vec())
    }

    /// `(x_1, …, x_n, 0)`, so that `x = [x_0] + V(shift_down(x))`.
    pub fn shift_down(&self) -> WittVector {
        let mut comps: Vec<MultiPoly> = self.comps[1..].to_vec();
        comps.push(self.base.zero());
        WittVector::from_reduced(&self.base, comps)
    }

    /// Lifts components to `Z` (representatives in `0..p`).
    pub fn lift(&self) -> WittVector {
        let z = self.base.integral();
        let comps = self.comps.iter().map(|c| c.with_ring(z.coeff_ring())).collect();
        WittVector::from_reduced(&z, comps)
    }

    /// Reduces each component into `base` (typically the `F_p` context).
    pub fn reduce_to(&self, base: &BaseRing) -> WittVector {
        let comps = self.comps.iter().map(|c| base.reduce(c).expect("same arity")).collect();
        WittVector::from_reduced(base, comps)
    }

    /// Applies a ring map on components; valid for ring homomorphisms of
    /// the base since Witt vectors are functorial.
    pub fn map_components<F>(&self, base: &BaseRing, f: F) -> Result<WittVector, WittError>
    where
        F: Fn(&MultiPoly) -> MultiPoly,
    {
        WittVector::new(base, self.comps.iter().map(f).collect())
    }
}
