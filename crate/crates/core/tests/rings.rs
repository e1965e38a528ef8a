use hecke_core::{MultiLaurent, QHalf, Ring, Substitution};
use num_bigint::BigInt;
use proptest::prelude::*;

fn qhalf() -> impl Strategy<Value = QHalf> {
    prop::collection::vec((-4i64..=4, -6i64..=6), 0..4)
        .prop_map(|ts| QHalf::from_terms(ts.into_iter().map(|(h, c)| (h, BigInt::from(c)))))
}

fn vars() -> Vec<String> {
    vec!["Y1".into(), "Y2".into(), "Y3".into()]
}

fn laurent() -> impl Strategy<Value = MultiLaurent> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, 3), qhalf()), 0..4)
        .prop_map(|ts| MultiLaurent::from_terms(&vars(), QHalf::zero(), ts).unwrap())
}

/// Each variable goes to `+-q^{h/2}` times a target variable or its inverse.
fn substitution() -> impl Strategy<Value = Substitution<QHalf>> {
    prop::collection::vec((0usize..2, prop::bool::ANY, -3i64..=3, prop::bool::ANY), 3).prop_map(|imgs| {
        let targets = ["Z1", "Z2"];
        let mut s = Substitution::new(&targets);
        for (k, (t, inv, h, neg)) in imgs.into_iter().enumerate() {
            let c = QHalf::q_half_power(h);
            let c = if neg { c.neg() } else { c };
            s.set(&format!("Y{}", k + 1), c, targets[t], if inv { -1 } else { 1 }).unwrap();
        }
        s
    })
}

proptest! {
    #[test]
    fn qhalf_ring_laws(a in qhalf(), b in qhalf(), c in qhalf()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&QHalf::one()), a.clone());
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn qhalf_units_are_signed_monomials(h in -6i64..=6, neg in prop::bool::ANY, a in qhalf()) {
        let u = QHalf::q_half_power(h);
        let u = if neg { u.neg() } else { u };
        prop_assert_eq!(u.mul(&u.inverse().unwrap()), QHalf::one());
        if a.len() > 1 {
            prop_assert!(a.inverse().is_none());
        }
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&a.one_like()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(a in laurent(), b in laurent(), s in substitution()) {
        let sa = a.substitute(&s).unwrap();
        let sb = b.substitute(&s).unwrap();
        prop_assert_eq!(a.mul(&b).substitute(&s).unwrap(), sa.mul(&sb));
        prop_assert_eq!(a.add(&b).substitute(&s).unwrap(), sa.add(&sb));
        prop_assert_eq!(a.one_like().substitute(&s).unwrap(), sa.one_like());
    }

    #[test]
    fn normalizing_is_idempotent(a in laurent()) {
        let again = MultiLaurent::from_terms(a.vars(), QHalf::zero(), a.terms().map(|(e, c)| (e.clone(), c.clone()))).unwrap();
        prop_assert_eq!(&again, &a);
        let q = QHalf::from_terms(QHalf::from_int(3).terms().map(|(h, c)| (h, c.clone())));
        prop_assert_eq!(q, QHalf::from_int(3));
    }
}
