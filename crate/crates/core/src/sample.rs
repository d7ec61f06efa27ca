//! Seeded random generators for property checks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{CoeffRing, Monomial, MultiPoly};
use crate::witt::{BaseRing, WittVector};
use crate::Rat;

/// Size limits for random polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub max_deg: u32,
    pub max_terms: usize,
}

impl Shape {
    pub const fn new(max_deg: u32, max_terms: usize) -> Self {
        Shape { max_deg, max_terms }
    }
}

/// Deterministic sampler; equal seeds give equal streams.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        self.rng.gen_ratio(num, den)
    }

    fn exponents(&mut self, nvars: usize, max_deg: u32) -> Vec<u32> {
        let total = self.rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; nvars];
        if nvars > 0 {
            for _ in 0..total {
                e[self.rng.gen_range(0..nvars)] += 1;
            }
        }
        e
    }

    /// Up to `max_terms` random terms of total degree at most `max_deg`;
    /// may be zero.
    pub fn poly(&mut self, ring: CoeffRing, nvars: usize, shape: Shape) -> MultiPoly {
        let p = ring.characteristic().expect("sampling needs F_p");
        let n = self.rng.gen_range(0..=shape.max_terms);
        let terms = (0..n)
            .map(|_| {
                let e = self.exponents(nvars, shape.max_deg);
                (Monomial::new(&e), BigInt::from(self.rng.gen_range(1..p)))
            })
            .collect::<Vec<_>>();
        MultiPoly::from_terms(ring, nvars, terms)
    }

    pub fn nonzero_poly(&mut self, ring: CoeffRing, nvars: usize, shape: Shape) -> MultiPoly {
        loop {
            let x = self.poly(ring, nvars, Shape { max_terms: shape.max_terms.max(1), ..shape });
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A reduced element of `base`.
    pub fn element(&mut self, base: &BaseRing, shape: Shape) -> MultiPoly {
        let x = self.poly(base.coeff_ring(), base.nvars(), shape);
        base.reduce(&x).expect("matching arity")
    }

    pub fn nonzero_element(&mut self, base: &BaseRing, shape: Shape) -> MultiPoly {
        loop {
            let x = self.element(base, shape);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Each component is zero with probability 1/4, else random.
    pub fn witt(&mut self, base: &BaseRing, len: usize, shape: Shape) -> WittVector {
        let comps = (0..len)
            .map(|_| if self.chance(1, 4) { base.zero() } else { self.element(base, shape) })
            .collect();
        WittVector::new(base, comps).expect("reduced components")
    }

    pub fn nonzero_witt(&mut self, base: &BaseRing, len: usize, shape: Shape) -> WittVector {
        loop {
            let w = self.witt(base, len, shape);
            if !w.is_zero() {
                return w;
            }
        }
    }

    /// `num/den` with `|num| ≤ max_num` and `1 ≤ den ≤ max_den`.
    pub fn rat(&mut self, max_num: i64, max_den: i64) -> Rat {
        let num = self.rng.gen_range(-max_num..=max_num);
        let den = self.rng.gen_range(1..=max_den);
        Rat::new(num.into(), den.into())
    }

    pub fn positive_rat(&mut self, max_num: i64, max_den: i64) -> Rat {
        let num = self.rng.gen_range(1..=max_num);
        let den = self.rng.gen_range(1..=max_den);
        Rat::new(num.into(), den.into())
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.rng.gen_range(0..xs.len())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_within_shape() {
        let base = BaseRing::poly(3, 2).unwrap();
        let shape = Shape::new(4, 3);
        let (mut a, mut b) = (Sampler::new(9), Sampler::new(9));
        for _ in 0..50 {
            let x = a.witt(&base, 3, shape);
            assert_eq!(x, b.witt(&base, 3, shape));
            for c in x.comps() {
                assert!(c.num_terms() <= 3);
                assert!(c.total_degree().unwrap_or(0) <= 4);
            }
        }
    }
}
