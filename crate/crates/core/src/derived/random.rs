use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::complex::{chain_map_generators, ChainMap, FiniteComplex, Homotopy};
use super::lemmas::square_zero_generators;
use crate::error::Result;
use crate::modpk::{ModMatrix, PrimePower};

pub fn random_unit<R: Rng + ?Sized>(ring: PrimePower, rng: &mut R) -> u64 {
    loop {
        let x = rng.gen_range(0..ring.modulus());
        if x % ring.p() != 0 {
            return x;
        }
    }
}

pub fn random_matrix<R: Rng + ?Sized>(ring: PrimePower, rows: usize, cols: usize, rng: &mut R) -> ModMatrix {
    let mut m = ModMatrix::zeros(ring, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_range(0..ring.modulus()));
        }
    }
    m
}

/// A random element of `GL_n(Z/p^N)` as permutation times `L U`.
pub fn random_invertible<R: Rng + ?Sized>(ring: PrimePower, n: usize, rng: &mut R) -> ModMatrix {
    let mut l = ModMatrix::identity(ring, n);
    let mut u = ModMatrix::zeros(ring, n, n);
    for i in 0..n {
        u.set(i, i, random_unit(ring, rng));
        for j in 0..i {
            l.set(i, j, rng.gen_range(0..ring.modulus()));
            u.set(j, i, rng.gen_range(0..ring.modulus()));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let all: Vec<usize> = (0..n).collect();
    l.mul(&u).expect("square").select(&perm, &all)
}

/// A sum of rank-one pieces `Z/p^N` and `Z/p^N -p^e-> Z/p^N` over degrees
/// `lo..lo+len`, at most `max_rank` per degree, in a random basis.
pub fn random_complex<R: Rng + ?Sized>(ring: PrimePower, lo: i64, len: usize, max_rank: usize, rng: &mut R) -> FiniteComplex {
    let mut ranks = vec![0usize; len];
    let mut edges = Vec::new();
    for _ in 0..rng.gen_range(0..=2 * len * max_rank) {
        let k = rng.gen_range(0..len);
        if k + 1 < len && rng.gen_bool(0.5) {
            if ranks[k] < max_rank && ranks[k + 1] < max_rank {
                let e = rng.gen_range(0..=ring.exponent());
                let v = ring.mul(ring.pow_p(e), random_unit(ring, rng));
                edges.push((k, ranks[k + 1], ranks[k], v));
                ranks[k] += 1;
                ranks[k + 1] += 1;
            }
        } else if ranks[k] < max_rank {
            ranks[k] += 1;
        }
    }
    let mut diffs: Vec<ModMatrix> = (0..len.saturating_sub(1)).map(|k| ModMatrix::zeros(ring, ranks[k + 1], ranks[k])).collect();
    for (k, r, c, v) in edges {
        diffs[k].set(r, c, v);
    }
    let c = FiniteComplex::new(ring, lo, ranks.clone(), diffs).expect("pieces square to zero");
    let g: Vec<ModMatrix> = ranks.iter().map(|n| random_invertible(ring, *n, rng)).collect();
    c.conjugate(&g).expect("invertible change of basis")
}

/// `sum_k c_k gens[k]` with random coefficients, or `zero` if there are none.
pub fn random_combination<R: Rng + ?Sized>(zero: ChainMap, gens: &[ChainMap], ring: PrimePower, rng: &mut R) -> ChainMap {
    gens.iter()
        .fold(zero, |acc, g| acc.add(&g.scale(rng.gen_range(0..ring.modulus()))).expect("same shape"))
}

pub fn random_chain_map<R: Rng + ?Sized>(source: &FiniteComplex, target: &FiniteComplex, rng: &mut R) -> Result<ChainMap> {
    let gens = chain_map_generators(source, target)?;
    Ok(random_combination(source.zero_map_to(target), &gens, source.ring(), rng))
}

/// A triangle `A -u-> B -> Cone(u)` with two endomorphisms of `B` meeting
/// the hypotheses of the square-zero lemma.
#[derive(Clone, Debug)]
pub struct SquareZeroInput {
    pub a: FiniteComplex,
    pub b: FiniteComplex,
    pub u: ChainMap,
    pub s: ChainMap,
    pub t: ChainMap,
}

pub fn random_square_zero_input<R: Rng + ?Sized>(ring: PrimePower, len: usize, max_rank: usize, rng: &mut R) -> Result<SquareZeroInput> {
    let a = random_complex(ring, 0, len, max_rank, rng);
    let b = random_complex(ring, 0, len, max_rank, rng);
    let u = random_chain_map(&a, &b, rng)?;
    let gens = square_zero_generators(&a, &b, &u)?;
    let s = random_combination(b.scalar(0), &gens, ring, rng);
    let t = random_combination(b.scalar(0), &gens, ring, rng);
    Ok(SquareZeroInput { a, b, u, s, t })
}

/// Levels `F mod p^k + (d h_k + h_k d)` of a random chain map `F` on `c`.
pub fn random_tower<R: Rng + ?Sized>(c: &FiniteComplex, rng: &mut R) -> Result<Vec<ChainMap>> {
    let f = random_chain_map(c, c, rng)?;
    (1..=c.ring().exponent())
        .map(|k| {
            let ck = c.reduce_to(k)?;
            let ring = ck.ring();
            let h = Homotopy::new(ck.lo(), ck.degrees().map(|i| random_matrix(ring, ck.rank(i - 1), ck.rank(i), rng)).collect());
            f.reduce_to(k)?.add(&h.boundary(&ck, &ck)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::{
        glue_inverse_limit, hecke_quotient, idempotent_split, nilpotent_kernel_exponent, square_zero_check, tower_round_trip,
        HomotopySolver,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_invertibles_invert() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ring = PrimePower::new(2, 3).unwrap();
        for n in 0..5 {
            assert!(random_invertible(ring, n, &mut rng).inverse().is_some());
        }
    }

    #[test]
    fn small_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..40 {
            let ring = PrimePower::new([2, 3][trial % 2], 1 + (trial / 2 % 2) as u32).unwrap();
            let x = random_square_zero_input(ring, 3, 2, &mut rng).unwrap();
            assert!(square_zero_check(&x.a, &x.b, &x.u, &x.s, &x.t).unwrap());
            let t = hecke_quotient(&x.b, &[x.s.clone(), x.t.clone()]).unwrap();
            assert!(nilpotent_kernel_exponent(&t).unwrap().within_amplitude());
            let op = random_chain_map(&x.b, &x.b, &mut rng).unwrap();
            let split = idempotent_split(&hecke_quotient(&x.b, &[op]).unwrap()).unwrap();
            assert!(split.max_iterations() <= ring.exponent() as usize);
            assert!(split.is_complete() && split.cohomology_matches(&x.b));
            let tower = random_tower(&x.b, &mut rng).unwrap();
            let g = glue_inverse_limit(&x.b, &tower).unwrap();
            assert!(tower_round_trip(&x.b, &g, &tower).unwrap());
            assert!(HomotopySolver::new(&x.b, &x.b).unwrap().is_nullhomotopic(&g.sub(&tower[tower.len() - 1]).unwrap()));
        }
    }
}
