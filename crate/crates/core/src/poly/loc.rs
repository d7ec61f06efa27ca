use super::{div_exact, monic_divide, MultiPoly, PolyError};

/// An element of `A[T]/(f)` for `f` monic in the last variable `T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotElem {
    modulus: MultiPoly,
    rep: MultiPoly,
}

impl QuotElem {
    /// Reduces `g` modulo the monic `modulus`.
    pub fn new(g: &MultiPoly, modulus: &MultiPoly) -> Result<Self, PolyError> {
        let var = modulus.nvars().checked_sub(1).ok_or(PolyError::NotMonic { var: 0 })?;
        let rep = monic_divide(g, modulus, var)?.remainder;
        Ok(QuotElem { modulus: modulus.clone(), rep })
    }

    pub fn rep(&self) -> &MultiPoly {
        &self.rep
    }

    pub fn modulus(&self) -> &MultiPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree_in(self.modulus.nvars() - 1).unwrap_or(0) as usize
    }

    /// Coordinates `a_0..a_{m-1}` in the power basis `1, t, …, t^{m-1}`,
    /// as polynomials over the base ring (one fewer variable).
    pub fn coords(&self) -> Vec<MultiPoly> {
        let n = self.rep.nvars();
        let mut cs: Vec<MultiPoly> = self
            .rep
            .coeffs_in(n - 1)
            .into_iter()
            .map(|c| c.restrict_vars(n - 1).expect("coefficient free of T"))
            .collect();
        cs.resize(self.degree(), MultiPoly::zero(self.rep.ring(), n - 1));
        cs
    }

    pub fn mul(&self, other: &QuotElem) -> Result<QuotElem, PolyError> {
        QuotElem::new(&self.rep.try_mul(&other.rep)?, &self.modulus)
    }

    pub fn add(&self, other: &QuotElem) -> Result<QuotElem, PolyError> {
        Ok(QuotElem { modulus: self.modulus.clone(), rep: self.rep.try_add(&other.rep)? })
    }
}

/// A reduced fraction `a / f^m` in the localization `A_f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocElem {
    f: MultiPoly,
    num: MultiPoly,
    exp: u32,
}

impl LocElem {
    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    /// The reduced exponent `m`, i.e. the least `n` with `f^n z ∈ A`.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Embeds `a ∈ A` as `a / f^0`.
    pub fn from_base(a: &MultiPoly, f: &MultiPoly) -> Result<LocElem, PolyError> {
        loc_reduce(a, 0, f)
    }
}

/// Cancels powers of `f` from `a / f^m` until `f ∤ a` or `m = 0`.
pub fn loc_reduce(a: &MultiPoly, m: u32, f: &MultiPoly) -> Result<LocElem, PolyError> {
    a.check_compatible(f)?;
    if f.is_zero() {
        return Err(PolyError::ZeroDenominator);
    }
    let mut num = a.clone();
    let mut exp = m;
    if num.is_zero() {
        exp = 0;
    }
    while exp > 0 {
        match div_exact(&num, f)? {
            Some(q) => {
                num = q;
                exp -= 1;
            }
            None => break,
        }
    }
    Ok(LocElem { f: f.clone(), num, exp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, CoeffRing};

    fn f2(s: &str) -> MultiPoly {
        parse_poly(s, CoeffRing::modp(2).unwrap(), 1).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let t = f2("T1");
        let z = loc_reduce(&f2("T1^2"), 1, &t).unwrap();
        assert_eq!((z.numerator().clone(), z.exponent()), (f2("T1"), 0));
        let z = loc_reduce(&f2("T1 + 1"), 2, &t).unwrap();
        assert_eq!((z.numerator().clone(), z.exponent()), (f2("T1 + 1"), 2));
        let z = loc_reduce(&f2("T1^3 + T1^2"), 3, &t).unwrap();
        assert_eq!((z.numerator().clone(), z.exponent()), (f2("T1 + 1"), 1));
    }

    #[test]
    fn reduction_is_idempotent() {
        let f = f2("T1^2 + T1 + 1");
        let a = &f2("T1^5 + T1") * &f;
        let z = loc_reduce(&a, 4, &f).unwrap();
        let again = loc_reduce(z.numerator(), z.exponent(), &f).unwrap();
        assert_eq!(z, again);
    }

    #[test]
    fn zero_denominator_and_zero_numerator() {
        let zero = f2("0");
        assert_eq!(loc_reduce(&f2("T1"), 1, &zero), Err(PolyError::ZeroDenominator));
        let z = loc_reduce(&zero, 3, &f2("T1")).unwrap();
        assert_eq!(z.exponent(), 0);
    }

    #[test]
    fn quotient_coordinates() {
        let ring = CoeffRing::modp(2).unwrap();
        let f = parse_poly("T2^2 + T2 + T1", ring, 2).unwrap();
        let b = QuotElem::new(&parse_poly("T2^3", ring, 2).unwrap(), &f).unwrap();
        let cs = b.coords();
        assert_eq!(cs[0], parse_poly("T1", ring, 1).unwrap());
        assert_eq!(cs[1], parse_poly("T1 + 1", ring, 1).unwrap());
    }
}
