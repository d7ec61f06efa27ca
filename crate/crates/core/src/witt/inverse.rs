use super::{WittError, WittVector};

/// `(1 - V(η))^{-1} = 1 + Σ_{i=1}^{n} p^{i-1} V(η^i)` in `W_{n+1}`.
///
/// The sum is finite because `p^{i-1} V(x) = V^i F^{i-1}(x)` lies in
/// `V^i W`, which vanishes in `W_{n+1}` for `i > n`; for the same reason
/// `η^i` is only needed modulo `V^{n+1-i}`.
pub fn geometric_inverse(eta: &WittVector) -> WittVector {
    let (base, len) = (eta.base(), eta.len());
    let mut terms = vec![WittVector::one(base, len)];
    let mut power = eta.truncate(len - 1);
    for i in 1..len {
        if i > 1 {
            power = power.truncate(len - i).mul(&eta.truncate(len - i)).expect("same base");
        }
        if power.is_zero() {
            break;
        }
        let mut comps = vec![base.zero(); i];
        comps.extend(power.comps().iter().map(|c| (0..i - 1).fold(c.clone(), |x, _| base.frobenius(&x))));
        terms.push(WittVector::from_reduced(base, comps));
    }
    WittVector::sum(base, len, &terms).expect("same base")
}

/// Inverse of `α = [a] + V(η)` for a unit `a`:
/// `α^{-1} = [a^{-1}] · (1 - V(-[a^{-p}] η))^{-1}`.
pub fn witt_inverse(alpha: &WittVector) -> Result<WittVector, WittError> {
    let base = alpha.base();
    let a_inv = base.inverse(alpha.component(0))?;
    if alpha.len() == 1 {
        return WittVector::teichmuller(base, &a_inv, 1);
    }
    let zeta = alpha.shift_down().mul_teichmuller(&base.pow(&a_inv, base.p() as u64))?.neg();
    geometric_inverse(&zeta).mul_teichmuller(&a_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, CoeffRing};
    use crate::witt::BaseRing;

    fn wv(base: &BaseRing, comps: &[&str]) -> WittVector {
        let cs = comps.iter().map(|s| parse_poly(s, base.coeff_ring(), base.nvars()).unwrap()).collect();
        WittVector::new(base, cs).unwrap()
    }

    #[test]
    fn inverse_of_one_plus_v() {
        for p in [2u32, 3, 5] {
            let b = BaseRing::poly(p, 1).unwrap();
            let x = wv(&b, &["1", "T1", "T1^2 + 1"]);
            let y = witt_inverse(&x).unwrap();
            assert_eq!(x.mul(&y).unwrap(), WittVector::one(&b, 3), "p={p}");
        }
    }

    #[test]
    fn inverse_of_non_trivial_unit_in_quotient() {
        let f3 = CoeffRing::modp(3).unwrap();
        let b = BaseRing::quotient(&parse_poly("T1^2 + 1", f3, 1).unwrap()).unwrap();
        let x = wv(&b, &["T1 + 1", "T1", "2"]);
        let y = witt_inverse(&x).unwrap();
        assert_eq!(x.mul(&y).unwrap(), WittVector::one(&b, 3));
    }

    #[test]
    fn non_units_are_rejected() {
        let b = BaseRing::poly(2, 1).unwrap();
        assert_eq!(witt_inverse(&wv(&b, &["T1", "1"])), Err(WittError::NotAUnit));
        assert_eq!(witt_inverse(&wv(&b, &["0", "1"])), Err(WittError::NotAUnit));
    }
}
