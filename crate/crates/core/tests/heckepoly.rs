use hecke_core::heckepoly::{char_poly, dual_twist_values, eisenstein_consistency, verify_factorization, HeckePoly};
use hecke_core::satake::UnitaryCase;
use hecke_core::{Ring, ZMod};
use proptest::prelude::*;

const ELL: u64 = 101;

fn unit() -> impl Strategy<Value = ZMod> {
    (1u64..ELL).prop_map(|v| ZMod::from_u64(v, ELL))
}

fn values() -> impl Strategy<Value = Vec<ZMod>> {
    prop::collection::vec(unit(), 1..=4)
}

fn poly(v: &[ZMod], q: &ZMod) -> HeckePoly<ZMod> {
    char_poly(v, q)
}

proptest! {
    #[test]
    fn dual_is_an_involution(v in values(), q in unit()) {
        let p = poly(&v, &q);
        prop_assert_eq!(p.dual().unwrap().dual().unwrap(), p);
    }

    #[test]
    fn dual_twist_is_an_involution(v in values()) {
        prop_assert_eq!(dual_twist_values(&dual_twist_values(&v).unwrap()).unwrap(), v);
    }

    #[test]
    fn cyclotomic_twists_add(v in values(), q in unit(), k in -4i64..=4, l in -4i64..=4) {
        let p = poly(&v, &q);
        let two = p.cyclotomic_twist(k, &q).unwrap().cyclotomic_twist(l, &q).unwrap();
        prop_assert_eq!(two, p.cyclotomic_twist(k + l, &q).unwrap());
    }

    #[test]
    fn character_twists_multiply(v in values(), q in unit(), c in unit(), d in unit()) {
        let p = poly(&v, &q);
        let two = p.character_twist(&c).unwrap().character_twist(&d).unwrap();
        prop_assert_eq!(two, p.character_twist(&c.mul(&d)).unwrap());
    }

    #[test]
    fn twisted_values_match_char_poly(v in values(), q in unit(), k in -3i64..=3) {
        let p = poly(&v, &q).cyclotomic_twist(k, &q).unwrap();
        let expect: Vec<ZMod> = v.iter().enumerate().map(|(j, a)| a.mul(&q.pow(k * (j as i64 + 1)).unwrap())).collect();
        prop_assert_eq!(p.hecke_values(&q).unwrap(), expect);
    }

    #[test]
    fn eisenstein_matches_parabolic_pullback(
        z in prop::collection::vec(unit(), 3),
        s in unit(),
        part in prop::sample::select(vec![vec![1usize], vec![2], vec![1, 1], vec![3], vec![2, 1], vec![1, 2], vec![1, 1, 1]]),
    ) {
        let n: usize = part.iter().sum();
        prop_assert!(eisenstein_consistency(&part, &z[..n], &s).unwrap().agree());
    }
}

#[test]
fn factorization_holds_up_to_rank_three() {
    for case in [UnitaryCase::Split, UnitaryCase::Inert] {
        for n in 1..=3 {
            assert!(verify_factorization(n, case).unwrap().ok, "{case:?} n={n}");
        }
    }
}
