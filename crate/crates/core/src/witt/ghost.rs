//! Exact ghost map over the torsion-free lift `Z[T…](/f̃)`.
//!
//! This is the reference implementation: lift to `Z`, take ghost components
//! `w_i = Σ_{j≤i} p^j x_j^{p^{i-j}}`, combine pointwise, invert the ghost map
//! with exact divisions by `p^i`, and reduce mod `p`. It is slow (degrees grow
//! like `p^n`) and exists to cross-check [`super::fast`].

use num_bigint::BigInt;
use num_traits::Pow;

use super::{BaseRing, WittError, WittVector};
use crate::poly::{MultiPoly, RingOp};

/// Ghost components of a vector whose base is integral.
pub fn ghost_components(x: &WittVector) -> Vec<MultiPoly> {
    let z = x.base();
    assert!(z.is_integral(), "ghost components need an integral base");
    let p = z.p() as u64;
    let pb = BigInt::from(p);
    let n = x.len();
    // pows[j] = x_j^{p^k} for the current k = i - j
    let mut pows: Vec<MultiPoly> = Vec::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        for pw in pows.iter_mut() {
            *pw = z.pow(pw, p);
        }
        pows.push(x.component(i).clone());
        let mut w = z.zero();
        for (j, pw) in pows.iter().enumerate() {
            w = &w + &pw.scale(&Pow::pow(&pb, j as u32));
        }
        out.push(w);
    }
    out
}

/// Inverts the ghost map over the integral base `z`.
///
/// Fails with `NotIntegral { index }` when `w_i - Σ_{j<i} p^j x_j^{p^{i-j}}`
/// is not divisible by `p^i`.
pub fn from_ghost(z: &BaseRing, ghost: &[MultiPoly]) -> Result<WittVector, WittError> {
    assert!(z.is_integral(), "ghost inversion needs an integral base");
    if ghost.is_empty() {
        return Err(WittError::EmptyVector);
    }
    let p = z.p() as u64;
    let pb = BigInt::from(p);
    let mut comps: Vec<MultiPoly> = Vec::with_capacity(ghost.len());
    let mut pows: Vec<MultiPoly> = Vec::with_capacity(ghost.len());
    for (i, w) in ghost.iter().enumerate() {
        for pw in pows.iter_mut() {
            *pw = z.pow(pw, p);
        }
        let mut acc = z.reduce(w)?;
        for (j, pw) in pows.iter().enumerate() {
            acc = &acc - &pw.scale(&Pow::pow(&pb, j as u32));
        }
        let xi = acc.div_coeffs(&Pow::pow(&pb, i as u32)).ok_or(WittError::NotIntegral { index: i })?;
        pows.push(xi.clone());
        comps.push(xi);
    }
    Ok(WittVector::from_reduced(z, comps))
}

/// Reference ring operation: lift, combine ghost components, invert, reduce.
pub fn oracle_op(x: &WittVector, y: &WittVector, op: RingOp) -> Result<WittVector, WittError> {
    if x.base() != y.base() || x.len() != y.len() {
        return Err(WittError::Mismatch);
    }
    let z = x.base().integral();
    let gx = ghost_components(&x.lift());
    let gy = ghost_components(&y.lift());
    let gz: Vec<MultiPoly> = gx
        .iter()
        .zip(&gy)
        .map(|(a, b)| match op {
            RingOp::Add => a + b,
            RingOp::Sub => a - b,
            RingOp::Mul => z.mul(a, b),
        })
        .collect();
    Ok(from_ghost(&z, &gz)?.reduce_to(x.base()))
}

pub fn oracle_add(x: &WittVector, y: &WittVector) -> Result<WittVector, WittError> {
    oracle_op(x, y, RingOp::Add)
}

pub fn oracle_sub(x: &WittVector, y: &WittVector) -> Result<WittVector, WittError> {
    oracle_op(x, y, RingOp::Sub)
}

pub fn oracle_mul(x: &WittVector, y: &WittVector) -> Result<WittVector, WittError> {
    oracle_op(x, y, RingOp::Mul)
}
