use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{CoeffRing, MultiPoly, PolyError};

/// Result of [`monic_divide`]: `g = quotient·f + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicDivision {
    pub quotient: MultiPoly,
    pub remainder: MultiPoly,
}

fn check_monic(f: &MultiPoly, var: usize) -> Result<Vec<MultiPoly>, PolyError> {
    let fc = f.coeffs_in(var);
    match fc.last() {
        Some(lc) if lc.is_one() => Ok(fc),
        _ => Err(PolyError::NotMonic { var: var + 1 }),
    }
}

/// Euclidean division by a polynomial monic in `T{var+1}`.
pub fn monic_divide(g: &MultiPoly, f: &MultiPoly, var: usize) -> Result<MonicDivision, PolyError> {
    g.check_compatible(f)?;
    let fc = check_monic(f, var)?;
    let (ring, n) = (g.ring(), g.nvars());
    let m = fc.len() - 1;
    let mut gc = g.coeffs_in(var);
    if gc.len() <= m {
        return Ok(MonicDivision { quotient: MultiPoly::zero(ring, n), remainder: g.clone() });
    }
    let mut qc = vec![MultiPoly::zero(ring, n); gc.len() - m];
    for k in (m..gc.len()).rev() {
        let c = std::mem::replace(&mut gc[k], MultiPoly::zero(ring, n));
        if c.is_zero() {
            continue;
        }
        for (j, fj) in fc[..m].iter().enumerate() {
            if !fj.is_zero() {
                gc[k - m + j] = &gc[k - m + j] - &(&c * fj);
            }
        }
        qc[k - m] = c;
    }
    gc.truncate(m);
    Ok(MonicDivision {
        quotient: MultiPoly::from_coeffs_in(ring, n, var, &qc),
        remainder: MultiPoly::from_coeffs_in(ring, n, var, &gc),
    })
}

/// Remainder of division by a polynomial monic in `T{var+1}`.
pub fn rem_monic(g: &MultiPoly, f: &MultiPoly, var: usize) -> Result<MultiPoly, PolyError> {
    Ok(monic_divide(g, f, var)?.remainder)
}

/// Exact quotient `a / f`, or `None` when `f` does not divide `a`.
///
/// Uses leading-term reduction in graded-lex order. A single polynomial is a
/// Gröbner basis of the principal ideal it generates, so over a field (and
/// over `Z`, an integral domain where leading terms multiply) the reduction
/// leaves a zero remainder exactly when `f | a`.
pub fn div_exact(a: &MultiPoly, f: &MultiPoly) -> Result<Option<MultiPoly>, PolyError> {
    a.check_compatible(f)?;
    let (fm, fc) = match f.leading_term() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return Err(PolyError::ZeroDenominator),
    };
    let ring = a.ring();
    let inv = match ring {
        CoeffRing::IntegersMod(_) => ring.inverse(&fc),
        CoeffRing::Integers => None,
    };
    let mut r = a.clone();
    let mut q_terms = Vec::new();
    while let Some((rm, rc)) = r.leading_term() {
        let m = match rm.div(&fm) {
            Some(m) => m,
            None => return Ok(None),
        };
        let c = match (&inv, ring) {
            (Some(i), _) => (rc * i).mod_floor(&BigInt::from(ring.characteristic().unwrap())),
            (None, _) => {
                let (q, rem) = rc.div_rem(&fc);
                if !rem.is_zero() {
                    return Ok(None);
                }
                q
            }
        };
        r = &r - &f.mul_term(&m, &c);
        q_terms.push((m, c));
    }
    Ok(Some(MultiPoly::from_terms(ring, a.nvars(), q_terms)))
}
