use proptest::prelude::*;
use wittkit_core::expand::{reconstruct, teich_expand};
use wittkit_core::gauss::{gauss_norm, newton_polygon, radius_certificate, NormProfile};
use wittkit_core::pseudoval::parse_spec;
use wittkit_core::sample::{Sampler, Shape};
use wittkit_core::scalar::Ext;
use wittkit_core::{BaseRing, Rat, ValuationSpec};

fn weights(s: &mut Sampler, n: usize) -> Vec<Rat> {
    (0..n).map(|_| s.positive_rat(4, 3)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weighted_degree_is_a_valuation(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let p = *s.pick(&[2u32, 3, 5]);
        let n = 1 + s.below(3) as usize;
        let spec = ValuationSpec::weighted_degree(weights(&mut s, n)).unwrap();
        let ring = BaseRing::poly(p, n).unwrap();
        let (a, b) = (s.element(&ring, Shape::new(5, 4)), s.element(&ring, Shape::new(5, 4)));
        let v = |x: &wittkit_core::MultiPoly| spec.eval(x).unwrap();
        prop_assert_eq!(v(&ring.one()), Ext::zero());
        prop_assert_eq!(v(&ring.zero()), Ext::PosInf);
        prop_assert!(v(&(&a + &b)) >= v(&a).min(v(&b)));
        prop_assert_eq!(v(&(&a * &b)), v(&a) + v(&b));
    }

    #[test]
    fn quotient_norm_is_a_pseudovaluation(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let ring = wittkit_core::CoeffRing::modp(3).unwrap();
        let f = wittkit_core::poly::parse_poly("T2^3 - T2 - T1", ring, 2).unwrap();
        let spec = parse_spec("quotient(inner=degree(d=[1]), d=1, f=T2^3 - T2 - T1)", ring).unwrap();
        let b = BaseRing::quotient(&f).unwrap();
        let (x, y) = (s.element(&b, Shape::new(5, 4)), s.element(&b, Shape::new(5, 4)));
        let v = |z: &wittkit_core::MultiPoly| spec.eval(z).unwrap();
        prop_assert_eq!(v(&b.one()), Ext::zero());
        prop_assert!(v(&(&x + &y)) >= v(&x).min(v(&y)));
        prop_assert!(v(&b.mul(&x, &y)) >= v(&x) + v(&y));
    }

    #[test]
    fn newton_polygon_supports_the_gauss_norm(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let p = *s.pick(&[2u32, 3]);
        let base = BaseRing::poly(p, 1).unwrap();
        let len = 1 + s.below(4) as usize;
        let alpha = s.nonzero_witt(&base, len, Shape::new(6, 3));
        let spec = ValuationSpec::degree(1);
        let np = newton_polygon(&alpha, &spec).unwrap();
        for w in np.vertices.windows(2) {
            prop_assert!(w[0].0 < w[1].0 && w[0].1 > w[1].1, "slopes negative");
        }
        let profile = NormProfile::of(&alpha, &spec).unwrap();
        for k in 0..6 {
            let eps = Rat::new(1.into(), (1i64 << k).into());
            prop_assert_eq!(profile.gauss(&eps), Ext::Finite(np.support(&eps)));
            prop_assert_eq!(gauss_norm(&alpha, &spec, &eps).unwrap(), Ext::Finite(np.support(&eps)));
        }
    }

    #[test]
    fn radius_certificate_is_sound(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let base = BaseRing::poly(2, 1).unwrap();
        let len = 1 + s.below(4) as usize;
        let alpha = s.witt(&base, len, Shape::new(6, 3));
        let spec = ValuationSpec::degree(1);
        let delta = s.positive_rat(3, 2);
        if let Some((eps, _)) = radius_certificate(&alpha, &spec, &delta).unwrap() {
            prop_assert!(gauss_norm(&alpha, &spec, &eps).unwrap() > Ext::Finite(-delta));
        }
    }

    #[test]
    fn expansion_round_trips(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let p = *s.pick(&[2u32, 3, 5]);
        let base = BaseRing::poly(p, 1 + s.below(2) as usize).unwrap();
        let len = 1 + s.below(3) as usize;
        let alpha = s.witt(&base, len, Shape::new(4, 3));
        prop_assert_eq!(reconstruct(&teich_expand(&alpha).unwrap()).unwrap(), alpha);
    }

    #[test]
    fn spec_text_reparses(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let ring = wittkit_core::CoeffRing::modp(2).unwrap();
        let n = 1 + s.below(3) as usize;
        let spec = ValuationSpec::weighted_degree(weights(&mut s, n)).unwrap();
        prop_assert_eq!(parse_spec(&spec.to_string(), ring).unwrap(), spec);
    }
}
