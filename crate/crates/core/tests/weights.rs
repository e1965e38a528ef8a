use hecke_core::weights::{is_dominant, is_strictly_dominant, GLWeight, TwistVariant, UnitaryWeight};
use proptest::prelude::*;

fn dominant(n: usize, strict: bool) -> impl Strategy<Value = Vec<i64>> {
    (-6i64..=6, prop::collection::vec(0i64..=3, n - 1)).prop_map(move |(top, gaps)| {
        let mut v = vec![top];
        for g in gaps {
            let last = *v.last().unwrap();
            v.push(last - g - i64::from(strict));
        }
        v
    })
}

fn gl_weight(strict: bool) -> impl Strategy<Value = GLWeight> {
    (1usize..=4, 1usize..=3).prop_flat_map(move |(n, d)| {
        prop::collection::vec((dominant(n, strict), dominant(n, strict)), d)
            .prop_map(|c| GLWeight::new(c).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn plain_twist_is_the_dominance_threshold(l in gl_weight(false), dw in -3i64..=3) {
        let w0 = l.minimal_dominant_twist(TwistVariant::Plain);
        let w = w0 + dw;
        let a = l.twist(w).to_unitary();
        prop_assert_eq!(a.is_ok(), w <= w0);
        if let Ok(a) = a {
            prop_assert!(a.components.iter().all(|c| is_dominant(c)));
        }
    }

    #[test]
    fn regular_twist_gives_strict_weights(l in gl_weight(true)) {
        let a = l.twist(l.minimal_dominant_twist(TwistVariant::Regular)).to_unitary().unwrap();
        prop_assert!(a.components.iter().all(|c| is_strictly_dominant(c)));
        prop_assert!(a.is_strict());
    }

    #[test]
    fn twists_compose(l in gl_weight(false), a in -5i64..=5, b in -5i64..=5) {
        prop_assert_eq!(l.twist(a).twist(b), l.twist(a + b));
        prop_assert_eq!(l.twist(0), l.clone());
    }

    #[test]
    fn dictionary_reads_back(l in gl_weight(false)) {
        let w = l.minimal_dominant_twist(TwistVariant::Plain);
        let t = l.twist(w);
        let a = t.to_unitary().unwrap();
        let n = t.rank();
        for ((lam, lamc), comp) in t.components.iter().zip(&a.components) {
            prop_assert_eq!(&comp[n..], lam.as_slice());
            let back: Vec<i64> = comp[..n].iter().rev().map(|x| -x).collect();
            prop_assert_eq!(&back, lamc);
        }
    }

    #[test]
    fn lan_suh_norm_ignores_even_translation(l in gl_weight(true), c in -4i64..=4) {
        let a = l.twist(l.minimal_dominant_twist(TwistVariant::Regular)).to_unitary().unwrap();
        let moved = UnitaryWeight::new(a.components.iter().map(|v| v.iter().map(|x| x + 2 * c).collect()).collect()).unwrap();
        prop_assert_eq!(a.lan_suh_norm(), moved.lan_suh_norm());
        let r = a.lan_suh_check(2);
        prop_assert!(r.min_prime as i64 > r.bound);
        prop_assert_eq!(a.lan_suh_check(r.min_prime).ok, true);
    }
}
