//! Lifting simple roots of polynomials over `W_{n+1}(A)` by Newton
//! iteration `α ← α - f(α)·f'(α)^{-1}`.

use crate::poly::MultiPoly;
use crate::witt::{witt_inverse, BaseRing, WittError, WittVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HenselError {
    #[error("the starting value is not a root of f modulo V")]
    NotARoot,
    #[error("f'(a) is not a unit")]
    NotAUnit,
    #[error("polynomial has no coefficients")]
    EmptyPolynomial,
    #[error("Newton iteration did not terminate after {0} steps")]
    NoConvergence(usize),
    #[error(transparent)]
    Witt(#[from] WittError),
}

/// Horner evaluation; coefficients are listed constant term first.
pub fn eval_poly(coeffs: &[WittVector], x: &WittVector) -> Result<WittVector, WittError> {
    let mut acc = WittVector::zero(x.base(), x.len());
    for c in coeffs.iter().rev() {
        acc = acc.mul(x)?.add(c)?;
    }
    Ok(acc)
}

/// Formal derivative of a coefficient list.
pub fn derivative(coeffs: &[WittVector]) -> Vec<WittVector> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_int(i as i64)).collect()
}

fn eval_base(base: &BaseRing, coeffs: &[MultiPoly], a: &MultiPoly) -> MultiPoly {
    coeffs.iter().rev().fold(base.zero(), |acc, c| &base.mul(&acc, a) + c)
}

/// The unique root `α ≡ [a] mod V` of `f`.
pub fn hensel_lift(coeffs: &[WittVector], a: &MultiPoly) -> Result<WittVector, HenselError> {
    let first = coeffs.first().ok_or(HenselError::EmptyPolynomial)?;
    let start = WittVector::teichmuller(first.base(), a, first.len())?;
    hensel_lift_from(coeffs, &start)
}

/// Newton iteration from an arbitrary start whose first component is a
/// simple root of `w_0(f)`.
pub fn hensel_lift_from(coeffs: &[WittVector], start: &WittVector) -> Result<WittVector, HenselError> {
    let first = coeffs.first().ok_or(HenselError::EmptyPolynomial)?;
    let (base, n) = (first.base().clone(), first.len());
    if coeffs.iter().any(|c| c.base() != &base || c.len() != n) || start.base() != &base || start.len() != n {
        return Err(WittError::Mismatch.into());
    }
    let a = start.component(0);
    let w0: Vec<MultiPoly> = coeffs.iter().map(|c| c.component(0).clone()).collect();
    if !eval_base(&base, &w0, a).is_zero() {
        return Err(HenselError::NotARoot);
    }
    let dcoeffs = derivative(coeffs);
    let dw0: Vec<MultiPoly> = dcoeffs.iter().map(|c| c.component(0).clone()).collect();
    match base.inverse(&eval_base(&base, &dw0, a)) {
        Ok(_) => {}
        Err(WittError::NotAUnit) => return Err(HenselError::NotAUnit),
        Err(e) => return Err(e.into()),
    }
    let mut alpha = start.clone();
    // the V-order of f(α) at least doubles per step
    let max_steps = n + 2;
    for _ in 0..max_steps {
        let value = eval_poly(coeffs, &alpha)?;
        if value.is_zero() {
            return Ok(alpha);
        }
        let slope = witt_inverse(&eval_poly(&dcoeffs, &alpha)?)?;
        alpha = alpha.sub(&value.mul(&slope)?)?;
    }
    if eval_poly(coeffs, &alpha)?.is_zero() {
        Ok(alpha)
    } else {
        Err(HenselError::NoConvergence(max_steps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn consts(base: &BaseRing, len: usize, ks: &[i64]) -> Vec<WittVector> {
        ks.iter().map(|&k| WittVector::from_integer(base, len, k)).collect()
    }

    #[test]
    fn idempotent_is_fixed() {
        let base = BaseRing::poly(2, 1).unwrap();
        let f = consts(&base, 4, &[0, -1, 1]);
        let alpha = hensel_lift(&f, &base.one()).unwrap();
        assert_eq!(alpha, WittVector::one(&base, 4));
    }

    #[test]
    fn cube_root_of_unity_lift() {
        let base = BaseRing::poly(3, 0).unwrap();
        let f = consts(&base, 4, &[0, -1, 0, 1]);
        let alpha = hensel_lift(&f, &base.constant(2)).unwrap();
        assert_eq!(alpha, WittVector::teichmuller(&base, &base.constant(2), 4).unwrap());
    }

    #[test]
    fn artin_schreier_root() {
        let base = BaseRing::poly(2, 1).unwrap();
        let c = parse_poly("T1^2 + T1", base.coeff_ring(), 1).unwrap();
        let c0 = WittVector::teichmuller(&base, &c, 4).unwrap().neg();
        let mut f = vec![c0];
        f.extend(consts(&base, 4, &[-1, 1]));
        let t = parse_poly("T1", base.coeff_ring(), 1).unwrap();
        let alpha = hensel_lift(&f, &t).unwrap();
        assert_eq!(alpha.component(0), &t);
        assert!(eval_poly(&f, &alpha).unwrap().is_zero());
        // starting from a V-perturbed lift gives the same root
        let bump = WittVector::new(&base, vec![base.zero(), t.clone(), base.one(), t.clone()]).unwrap();
        let start = WittVector::teichmuller(&base, &t, 4).unwrap().add(&bump).unwrap();
        assert_eq!(hensel_lift_from(&f, &start).unwrap(), alpha);
    }

    #[test]
    fn rejects_bad_starts() {
        let base = BaseRing::poly(2, 1).unwrap();
        let f = consts(&base, 3, &[0, -1, 1]);
        let t = parse_poly("T1", base.coeff_ring(), 1).unwrap();
        assert_eq!(hensel_lift(&f, &t), Err(HenselError::NotARoot));
        // X^2 has the double root 0
        let g = consts(&base, 3, &[0, 0, 1]);
        assert_eq!(hensel_lift(&g, &base.zero()), Err(HenselError::NotAUnit));
    }
}
