use proptest::prelude::*;
use wittkit_core::sample::{Sampler, Shape};
use wittkit_core::witt::{parse_witt, parse_witt_short};
use wittkit_core::{BaseRing, WittVector};

/// Base ring and a few vectors of a common length, drawn from a seed.
fn setup(seed: u64, count: usize) -> (BaseRing, Vec<WittVector>) {
    let mut s = Sampler::new(seed);
    let p = *s.pick(&[2u32, 3, 5]);
    let len = 2 + s.below(3) as usize;
    let base = BaseRing::poly(p, 1 + s.below(2) as usize).unwrap();
    let deg = (64 / (p as u64).pow(len as u32 - 1)).min(4) as u32;
    let xs = (0..count).map(|_| s.witt(&base, len, Shape::new(deg, 3))).collect();
    (base, xs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn verschiebung_is_additive(seed in any::<u64>()) {
        let (_, v) = setup(seed, 2);
        let lhs = v[0].add(&v[1]).unwrap().verschiebung();
        prop_assert_eq!(lhs, v[0].verschiebung().add(&v[1].verschiebung()).unwrap());
    }

    #[test]
    fn frobenius_is_a_ring_map(seed in any::<u64>()) {
        let (_, v) = setup(seed, 2);
        let f = |x: &WittVector| x.frobenius().unwrap();
        prop_assert_eq!(f(&v[0].mul(&v[1]).unwrap()), f(&v[0]).mul(&f(&v[1])).unwrap());
        prop_assert_eq!(f(&v[0].add(&v[1]).unwrap()), f(&v[0]).add(&f(&v[1])).unwrap());
    }

    #[test]
    fn v_and_f_compose_to_p(seed in any::<u64>()) {
        let (base, v) = setup(seed, 1);
        let x = &v[0];
        let px = x.mul(&WittVector::from_integer(&base, x.len(), base.p())).unwrap();
        prop_assert_eq!(x.verschiebung().frobenius().unwrap(), px.clone());
        prop_assert_eq!(x.frobenius().unwrap().verschiebung(), px.clone());
        prop_assert_eq!(x.mul_p(), px);
    }

    #[test]
    fn projection_formula(seed in any::<u64>()) {
        let (_, v) = setup(seed, 2);
        let lhs = v[0].verschiebung().mul(&v[1]).unwrap();
        let rhs = v[0].mul(&v[1].frobenius().unwrap()).unwrap().verschiebung();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (base, v) = setup(seed, 3);
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(c).unwrap()).unwrap(), a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap());
        prop_assert_eq!(a.add(b).unwrap().add(c).unwrap(), a.add(&b.add(c).unwrap()).unwrap());
        prop_assert_eq!(a.sub(b).unwrap().add(b).unwrap(), a.clone());
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
        prop_assert_eq!(a.mul(&WittVector::one(&base, a.len())).unwrap(), a.clone());
    }

    #[test]
    fn literals_reparse(seed in any::<u64>()) {
        let (base, v) = setup(seed, 1);
        prop_assert_eq!(&parse_witt_short(&v[0].to_short_string(), &base).unwrap(), &v[0]);
        prop_assert_eq!(&parse_witt(&v[0].to_string()).unwrap(), &v[0]);
    }
}

#[test]
fn integers_and_teichmuller() {
    let b = BaseRing::poly(3, 0).unwrap();
    let two = WittVector::teichmuller(&b, &b.constant(2), 4).unwrap();
    assert_eq!(two.pow(3), two);
    assert_eq!(WittVector::from_integer(&b, 3, -1).to_short_string(), "wv[2;0;0]");
}
