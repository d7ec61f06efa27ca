//! Witt vector arithmetic through ghost components modulo `p^N`, `N = n + 1`.
//!
//! For `x ∈ W_N(B)` with lifts `x̃_j` to the integral base, the `i`-th ghost
//! component `Σ_{j≤i} p^j x̃_j^{p^{i-j}}` only matters mod `p^N`, and
//! `x̃_j^{p^k}` only mod `p^{N-j}`. Inverting, the recovered lift `s̃_i` is
//! determined mod `p^{N-i}`: an error `p^{N-j}` in `s̃_j` changes
//! `p^j s̃_j^{p^k}` by a multiple of `p^N`, because `a ≡ b (p^e)` implies
//! `a^p ≡ b^p (p^{e+1})`. Reducing `s̃_i` mod `p` gives the result.

use num_bigint::BigInt;
use num_traits::Pow;

use super::{BaseRing, WittVector};
use crate::poly::{MultiPoly, RingOp};

fn mul_mod(z: &BaseRing, a: &MultiPoly, b: &MultiPoly, m: &BigInt) -> MultiPoly {
    z.reduce_unchecked((a * b).reduce_mod(m)).reduce_mod(m)
}

fn pow_mod(z: &BaseRing, a: &MultiPoly, mut e: u64, m: &BigInt) -> MultiPoly {
    let mut acc = z.one();
    let mut b = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(z, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(z, &b, &b, m);
        }
    }
    acc
}

struct Moduli {
    p: u64,
    /// `pk[k] = p^k` for `k = 0..=N`.
    pk: Vec<BigInt>,
}

impl Moduli {
    fn new(p: u32, n: usize) -> Self {
        let pb = BigInt::from(p);
        Moduli { p: p as u64, pk: (0..=n).map(|k| Pow::pow(&pb, k as u32)).collect() }
    }
}

/// Ghost components of the lift of `x`, each reduced mod `p^N`.
pub fn ghost_mod(x: &WittVector) -> Vec<MultiPoly> {
    let z = x.base().integral();
    let n = x.len();
    let md = Moduli::new(x.p(), n);
    let mut w = vec![z.zero(); n];
    for j in 0..n {
        let prec = &md.pk[n - j];
        let mut cur = x.component(j).with_ring(z.coeff_ring());
        for (i, wi) in w.iter_mut().enumerate().skip(j) {
            if !cur.is_zero() {
                *wi = &*wi + &cur.scale(&md.pk[j]);
            }
            if i + 1 < n && !cur.is_zero() {
                cur = pow_mod(&z, &cur, md.p, prec);
            }
        }
    }
    w.iter().map(|wi| wi.reduce_mod(&md.pk[n])).collect()
}

/// Inverts [`ghost_mod`]: the unique `s ∈ W_N(B)` whose lift has the given
/// ghost components mod `p^N`. The input must come from a genuine Witt
/// vector (sums and products of such do).
pub fn from_ghost_mod(base: &BaseRing, w: &[MultiPoly]) -> WittVector {
    let z = base.integral();
    let n = w.len();
    let md = Moduli::new(base.p(), n);
    let mut pows: Vec<MultiPoly> = Vec::with_capacity(n);
    let mut comps = Vec::with_capacity(n);
    for (i, wi) in w.iter().enumerate() {
        for (j, pw) in pows.iter_mut().enumerate() {
            if !pw.is_zero() {
                *pw = pow_mod(&z, pw, md.p, &md.pk[n - j]);
            }
        }
        let mut acc = wi.clone();
        for (j, pw) in pows.iter().enumerate() {
            if !pw.is_zero() {
                acc = &acc - &pw.scale(&md.pk[j]);
            }
        }
        let acc = acc.reduce_mod(&md.pk[n]);
        let s = acc
            .div_coeffs(&md.pk[i])
            .expect("ghost components of a Witt vector are integral")
            .reduce_mod(&md.pk[n - i]);
        comps.push(s.with_ring(base.coeff_ring()));
        pows.push(s);
    }
    WittVector::from_reduced(base, comps)
}

fn combine(x: &WittVector, y: &WittVector, op: RingOp) -> WittVector {
    let z = x.base().integral();
    let m = BigInt::from(x.p()).pow(x.len() as u32);
    let gx = ghost_mod(x);
    let gy = ghost_mod(y);
    let gz: Vec<MultiPoly> = gx
        .iter()
        .zip(&gy)
        .map(|(a, b)| match op {
            RingOp::Add => (a + b).reduce_mod(&m),
            RingOp::Sub => (a - b).reduce_mod(&m),
            RingOp::Mul => mul_mod(&z, a, b, &m),
        })
        .collect();
    from_ghost_mod(x.base(), &gz)
}

pub(crate) fn add(x: &WittVector, y: &WittVector) -> WittVector {
    if x.is_zero() {
        return y.clone();
    }
    if y.is_zero() {
        return x.clone();
    }
    combine(x, y, RingOp::Add)
}

pub(crate) fn sub(x: &WittVector, y: &WittVector) -> WittVector {
    if y.is_zero() {
        return x.clone();
    }
    combine(x, y, RingOp::Sub)
}

pub(crate) fn mul(x: &WittVector, y: &WittVector) -> WittVector {
    if x.is_zero() || y.is_zero() {
        return WittVector::zero(x.base(), x.len());
    }
    combine(x, y, RingOp::Mul)
}

pub(crate) fn neg(x: &WittVector) -> WittVector {
    if x.is_zero() {
        return x.clone();
    }
    combine(&WittVector::zero(x.base(), x.len()), x, RingOp::Sub)
}

/// `Σ xs` with a single recovery from summed ghost components.
pub(crate) fn sum(base: &BaseRing, len: usize, xs: &[WittVector]) -> WittVector {
    let nonzero: Vec<&WittVector> = xs.iter().filter(|x| !x.is_zero()).collect();
    match nonzero.as_slice() {
        [] => return WittVector::zero(base, len),
        [x] => return (*x).clone(),
        _ => {}
    }
    let m = BigInt::from(base.p()).pow(len as u32);
    let mut acc = vec![base.integral().zero(); len];
    for x in nonzero {
        for (a, g) in acc.iter_mut().zip(ghost_mod(x)) {
            *a = &*a + &g;
        }
    }
    let acc: Vec<MultiPoly> = acc.iter().map(|a| a.reduce_mod(&m)).collect();
    from_ghost_mod(base, &acc)
}

#[cfg(test)]
mod tests {
    use super::super::ghost;
    use super::*;
    use crate::poly::parse_poly;

    fn wv(base: &BaseRing, comps: &[&str]) -> WittVector {
        let cs = comps.iter().map(|s| parse_poly(s, base.coeff_ring(), base.nvars()).unwrap()).collect();
        WittVector::new(base, cs).unwrap()
    }

    #[test]
    fn agrees_with_exact_ghost_map() {
        for p in [2u32, 3, 5] {
            let b = BaseRing::poly(p, 2).unwrap();
            let x = wv(&b, &["T1 + 1", "T2", "T1*T2 + 2"]);
            let y = wv(&b, &["T2^2 + T1", "1", "T1"]);
            assert_eq!(x.add(&y).unwrap(), ghost::oracle_add(&x, &y).unwrap(), "add p={p}");
            assert_eq!(x.sub(&y).unwrap(), ghost::oracle_sub(&x, &y).unwrap(), "sub p={p}");
            assert_eq!(x.mul(&y).unwrap(), ghost::oracle_mul(&x, &y).unwrap(), "mul p={p}");
        }
    }

    #[test]
    fn agrees_over_quotient() {
        let f2 = crate::poly::CoeffRing::modp(2).unwrap();
        let f = parse_poly("T2^2 + T2 + T1", f2, 2).unwrap();
        let b = BaseRing::quotient(&f).unwrap();
        let x = wv(&b, &["T2", "T1*T2 + 1", "T2 + T1"]);
        let y = wv(&b, &["T2 + 1", "T1", "T2"]);
        assert_eq!(x.add(&y).unwrap(), ghost::oracle_add(&x, &y).unwrap());
        assert_eq!(x.mul(&y).unwrap(), ghost::oracle_mul(&x, &y).unwrap());
    }

    #[test]
    fn negation() {
        let b = BaseRing::poly(3, 1).unwrap();
        let x = wv(&b, &["T1", "T1^2 + 1", "2"]);
        assert!(x.add(&x.neg()).unwrap().is_zero());
    }
}
