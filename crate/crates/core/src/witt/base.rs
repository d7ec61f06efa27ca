use std::sync::Arc;

use num_bigint::BigInt;

use super::WittError;
use crate::poly::{monic_divide, solve_unimodular, CoeffRing, MultiPoly, PolyError};

#[derive(Debug, PartialEq, Eq, Hash)]
struct Modulus {
    poly: MultiPoly,
    lift: MultiPoly,
}

/// The coefficient ring of a Witt vector: `F_p[T1..Td]`, or a quotient
/// `F_p[T1..T(d-1)][t]/(f)` with `f` monic in the last variable `t = Td`.
///
/// The same context over `Z` (see [`BaseRing::integral`]) is the torsion-free
/// lift used by ghost components; the lifted modulus keeps its
/// representatives in `0..p`, so it stays monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseRing {
    coeffs: CoeffRing,
    p: u32,
    nvars: usize,
    modulus: Option<Arc<Modulus>>,
}

impl BaseRing {
    /// `F_p[T1..T{nvars}]`.
    pub fn poly(p: u32, nvars: usize) -> Result<Self, WittError> {
        let coeffs = CoeffRing::modp(p)?;
        Ok(BaseRing { coeffs, p, nvars, modulus: None })
    }

    /// `F_p[T1..]/(f)`, where `f` is monic in its last variable.
    pub fn quotient(f: &MultiPoly) -> Result<Self, WittError> {
        let p = f
            .ring()
            .characteristic()
            .ok_or(WittError::UnsupportedBase("quotient modulus must have F_p coefficients"))?;
        let nvars = f.nvars();
        if nvars == 0 {
            return Err(PolyError::NotMonic { var: 0 }.into());
        }
        let fc = f.coeffs_in(nvars - 1);
        if fc.len() < 2 || !fc.last().unwrap().is_one() {
            return Err(PolyError::NotMonic { var: nvars }.into());
        }
        let lift = f.with_ring(CoeffRing::Integers);
        Ok(BaseRing {
            coeffs: f.ring(),
            p,
            nvars,
            modulus: Some(Arc::new(Modulus { poly: f.clone(), lift })),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeff_ring(&self) -> CoeffRing {
        self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs == CoeffRing::Integers
    }

    /// The monic modulus (over this context's coefficients), if any.
    pub fn modulus(&self) -> Option<&MultiPoly> {
        self.modulus.as_ref().map(|m| if self.is_integral() { &m.lift } else { &m.poly })
    }

    /// Degree of the modulus in `t`, or `None` for a polynomial ring.
    pub fn extension_degree(&self) -> Option<usize> {
        self.modulus().and_then(|m| m.degree_in(self.nvars - 1)).map(|d| d as usize)
    }

    /// The same ring with coefficients lifted to `Z`.
    pub fn integral(&self) -> BaseRing {
        BaseRing { coeffs: CoeffRing::Integers, ..self.clone() }
    }

    /// The same ring with coefficients reduced to `F_p`.
    pub fn modp(&self) -> BaseRing {
        BaseRing { coeffs: CoeffRing::IntegersMod(self.p), ..self.clone() }
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.coeffs, self.nvars)
    }

    pub fn one(&self) -> MultiPoly {
        MultiPoly::one(self.coeffs, self.nvars)
    }

    pub fn constant(&self, c: impl Into<BigInt>) -> MultiPoly {
        MultiPoly::constant(self.coeffs, self.nvars, c)
    }

    /// Canonical representative: coefficients in this ring, reduced modulo
    /// the modulus.
    pub fn reduce(&self, a: &MultiPoly) -> Result<MultiPoly, WittError> {
        if a.nvars() != self.nvars {
            return Err(PolyError::ArityMismatch(self.nvars, a.nvars()).into());
        }
        let a = if a.ring() == self.coeffs { a.clone() } else { a.with_ring(self.coeffs) };
        match self.modulus() {
            Some(f) => Ok(monic_divide(&a, f, self.nvars - 1)?.remainder),
            None => Ok(a),
        }
    }

    pub(crate) fn reduce_unchecked(&self, a: MultiPoly) -> MultiPoly {
        match self.modulus() {
            Some(f) if a.degree_in(self.nvars - 1).unwrap_or(0) as usize >= self.extension_degree().unwrap() => {
                monic_divide(&a, f, self.nvars - 1).expect("monic modulus").remainder
            }
            _ => a,
        }
    }

    pub fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        self.reduce_unchecked(a * b)
    }

    /// `a^e` with reduction after every product.
    pub fn pow(&self, a: &MultiPoly, mut e: u64) -> MultiPoly {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^p`; uses the freshman's dream over `F_p`.
    pub fn frobenius(&self, a: &MultiPoly) -> MultiPoly {
        if self.is_integral() {
            return self.pow(a, self.p as u64);
        }
        self.reduce_unchecked(a.frobenius().expect("F_p coefficients"))
    }

    /// Multiplicative inverse, when `a` is a unit.
    ///
    /// In a polynomial ring the units are the nonzero constants. In a
    /// quotient with at most one base variable, `a` is inverted by solving
    /// the multiplication-by-`a` system over the base; bases with more
    /// variables are rejected.
    pub fn inverse(&self, a: &MultiPoly) -> Result<MultiPoly, WittError> {
        if self.is_integral() {
            return Err(WittError::UnsupportedBase("unit inversion needs F_p coefficients"));
        }
        let a = self.reduce(a)?;
        let modulus = match self.modulus() {
            None => {
                return a
                    .as_constant()
                    .and_then(|c| self.coeffs.inverse(&c))
                    .map(|c| self.constant(c))
                    .ok_or(WittError::NotAUnit);
            }
            Some(f) => f.clone(),
        };
        if self.nvars > 2 {
            return Err(WittError::UnsupportedBase(
                "unit inversion in quotients is limited to at most one base variable",
            ));
        }
        let m = self.extension_degree().unwrap();
        let t = MultiPoly::var(self.coeffs, self.nvars, self.nvars - 1);
        let coords = |g: &MultiPoly| -> Vec<MultiPoly> {
            let q = crate::poly::QuotElem::new(g, &modulus).expect("monic modulus");
            q.coords()
        };
        // column i = coordinates of a·t^i
        let mut cols = Vec::with_capacity(m);
        let mut cur = a.clone();
        for _ in 0..m {
            cols.push(coords(&cur));
            cur = self.mul(&cur, &t);
        }
        let matrix: Vec<Vec<MultiPoly>> = (0..m).map(|r| (0..m).map(|c| cols[c][r].clone()).collect()).collect();
        let one = coords(&self.one());
        let x = match solve_unimodular(&matrix, &one) {
            Ok(x) => x,
            Err(PolyError::Singular { .. }) => return Err(WittError::NotAUnit),
            Err(e) => return Err(e.into()),
        };
        let coeffs: Vec<MultiPoly> = x.iter().map(|c| c.extend_vars(self.nvars)).collect();
        Ok(MultiPoly::from_coeffs_in(self.coeffs, self.nvars, self.nvars - 1, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn inverse_in_polynomial_ring() {
        let b = BaseRing::poly(5, 1).unwrap();
        assert_eq!(b.inverse(&b.constant(2)).unwrap(), b.constant(3));
        assert_eq!(b.inverse(&MultiPoly::var(b.coeff_ring(), 1, 0)), Err(WittError::NotAUnit));
    }

    #[test]
    fn inverse_in_quotient() {
        let f3 = CoeffRing::modp(3).unwrap();
        // F_3[t]/(t^2 + 1) is F_9; t^{-1} = -t
        let b = BaseRing::quotient(&parse_poly("T1^2 + 1", f3, 1).unwrap()).unwrap();
        let t = parse_poly("T1", f3, 1).unwrap();
        let inv = b.inverse(&t).unwrap();
        assert_eq!(inv, parse_poly("2*T1", f3, 1).unwrap());
        assert!(b.mul(&t, &inv).is_one());
        // F_3[S][t]/(t^3 - t - S): derivative -1 is a unit; t itself is not
        let e = BaseRing::quotient(&parse_poly("T2^3 + 2*T2 + 2*T1", f3, 2).unwrap()).unwrap();
        let s = parse_poly("T1", f3, 2).unwrap();
        assert_eq!(e.inverse(&s), Err(WittError::NotAUnit));
        let u = parse_poly("2", f3, 2).unwrap();
        assert_eq!(e.inverse(&u).unwrap(), u);
    }
}
