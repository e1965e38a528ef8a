use std::collections::BTreeSet;

use hecke_core::derived::*;
use hecke_core::modpk::{ModMatrix, PrimePower};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type M = Vec<Vec<u64>>;

fn mat(m: &ModMatrix) -> M {
    m.row_vecs()
}

fn mul(a: &M, b: &M, rows: usize, cols: usize, inner: usize, q: u64) -> M {
    (0..rows).map(|i| (0..cols).map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum::<u64>() % q).collect()).collect()
}

/// Every vector of `(Z/q)^n`.
fn vectors(n: usize, q: u64) -> Vec<Vec<u64>> {
    (0..q.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = k % q;
                    k /= q;
                    d
                })
                .collect()
        })
        .collect()
}

fn apply(m: &M, v: &[u64], q: u64) -> Vec<u64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % q).collect()
}

/// `log_p |H^i|` by counting kernel and image elements.
fn cohomology_length(c: &FiniteComplex, i: i64) -> u32 {
    let ring = c.ring();
    let q = ring.modulus();
    let d = mat(&c.d(i));
    let kernel = vectors(c.rank(i), q).into_iter().filter(|v| apply(&d, v, q).iter().all(|x| *x == 0)).count();
    let prev = mat(&c.d(i - 1));
    let image: BTreeSet<Vec<u64>> = vectors(c.rank(i - 1), q).iter().map(|v| apply(&prev, v, q)).collect();
    let ratio = kernel / image.len();
    assert_eq!(ratio * image.len(), kernel);
    ratio.ilog(ring.p() as usize)
}

/// All maps `d h + h d` for `h` of degree `-1`, enumerated entry by entry.
fn all_boundaries(c: &FiniteComplex) -> BTreeSet<Vec<u64>> {
    let q = c.ring().modulus();
    let degrees: Vec<i64> = c.degrees().collect();
    let shapes: Vec<(usize, usize)> = degrees.iter().map(|&i| (c.rank(i - 1), c.rank(i))).collect();
    let total: usize = shapes.iter().map(|(r, s)| r * s).sum();
    let mut out = BTreeSet::new();
    for flat in vectors(total, q) {
        let mut hs = Vec::new();
        let mut pos = 0;
        for &(r, s) in &shapes {
            hs.push((0..r).map(|a| (0..s).map(|b| flat[pos + a * s + b]).collect::<Vec<_>>()).collect::<M>());
            pos += r * s;
        }
        let mut f = Vec::new();
        for (k, &i) in degrees.iter().enumerate() {
            let n = c.rank(i);
            let mut x = mul(&mat(&c.d(i - 1)), &hs[k], n, n, c.rank(i - 1), q);
            if k + 1 < degrees.len() {
                let y = mul(&hs[k + 1], &mat(&c.d(i)), n, n, c.rank(i + 1), q);
                for a in 0..n {
                    for b in 0..n {
                        x[a][b] = (x[a][b] + y[a][b]) % q;
                    }
                }
            }
            f.extend(x.into_iter().flatten());
        }
        out.insert(f);
    }
    out
}

fn small_complex(seed: u64) -> FiniteComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = [PrimePower::new(2, 1), PrimePower::new(2, 2), PrimePower::new(3, 1)][(seed % 3) as usize].clone().unwrap();
    random_complex(ring, 0, 3, 2, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cohomology_has_the_counted_length(seed in any::<u64>()) {
        let c = small_complex(seed);
        for (i, factors) in cohomology(&c) {
            prop_assert_eq!(factors.iter().sum::<u32>(), cohomology_length(&c, i));
        }
    }

    #[test]
    fn homotopy_solver_matches_enumeration(seed in any::<u64>()) {
        let c = small_complex(seed);
        let hom: usize = c.degrees().map(|i| c.rank(i - 1) * c.rank(i)).sum();
        prop_assume!((c.ring().modulus() as f64).powi(hom as i32) <= 4096.0);
        let boundaries = all_boundaries(&c);
        let solver = HomotopySolver::new(&c, &c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        for _ in 0..4 {
            let f = random_chain_map(&c, &c, &mut rng).unwrap();
            prop_assert_eq!(solver.is_nullhomotopic(&f), boundaries.contains(&f.flatten()));
        }
        prop_assert_eq!(solver.is_nullhomotopic(&c.identity()), boundaries.contains(&c.identity().flatten()));
    }

    #[test]
    fn square_zero_and_nilpotency(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = PrimePower::new([2, 3][(seed % 2) as usize], 1 + (seed / 2 % 2) as u32).unwrap();
        let x = random_square_zero_input(ring, 3, 3, &mut rng).unwrap();
        prop_assert!(square_zero_check(&x.a, &x.b, &x.u, &x.s, &x.t).unwrap());
        let t = hecke_quotient(&x.b, &[x.s.clone(), x.t.clone()]).unwrap();
        let report = nilpotent_kernel_exponent(&t).unwrap();
        prop_assert!(report.within_amplitude(), "{:?}", report);
    }

    #[test]
    fn idempotents_lift_and_split(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = PrimePower::new([2, 3][(seed % 2) as usize], 1 + (seed / 2 % 2) as u32).unwrap();
        let c = random_complex(ring, 0, 3, 3, &mut rng);
        let op = random_chain_map(&c, &c, &mut rng).unwrap();
        let t = hecke_quotient(&c, &[op]).unwrap();
        let split = idempotent_split(&t).unwrap();
        prop_assert!(split.max_iterations() <= ring.exponent() as usize);
        prop_assert!(split.is_complete());
        prop_assert!(split.cohomology_matches(&c));
        for s in &split.summands {
            let sq = t.multiply(&s.idempotent, &s.idempotent);
            let diff: Vec<u64> = sq.iter().zip(&s.idempotent).map(|(a, b)| ring.sub(*a, *b)).collect();
            prop_assert!(t.is_zero(&diff));
        }
    }

    #[test]
    fn towers_glue(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = PrimePower::new([2, 3][(seed % 2) as usize], 2 + (seed / 2 % 2) as u32).unwrap();
        let c = random_complex(ring, 0, 3, 3, &mut rng);
        let tower = random_tower(&c, &mut rng).unwrap();
        let g = glue_inverse_limit(&c, &tower).unwrap();
        prop_assert!(tower_round_trip(&c, &g, &tower).unwrap());
    }
}
