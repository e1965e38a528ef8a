use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::algebra::HeckeQuotientAlgebra;
use super::complex::{cohomology, mapping_cone, BlockId, ChainMap, FiniteComplex, HomotopySolver, LinearSystem, Term};
use crate::error::{Error, Result};
use crate::modpk::{ModMatrix, PrimePower, Smith};

/// `f` over the degree range of `source`, zero outside its own range.
fn extend(f: &ChainMap, source: &FiniteComplex, target: &FiniteComplex) -> ChainMap {
    let range = f.lo()..f.lo() + f.maps().len() as i64;
    let maps = source
        .degrees()
        .map(|i| {
            if range.contains(&i) {
                f.at(i).clone()
            } else {
                ModMatrix::zeros(source.ring(), target.rank(i), source.rank(i))
            }
        })
        .collect();
    ChainMap::new(source.lo(), maps)
}

fn restrict(f: &ChainMap, c: &FiniteComplex) -> ChainMap {
    ChainMap::new(c.lo(), c.degrees().map(|i| f.at(i).clone()).collect())
}

/// Generators of the endomorphisms `s` of `B` with `s u ~ 0` and `v s ~ 0`,
/// where `B -> Cone(u)` is the inclusion `v`.
pub fn square_zero_generators(a: &FiniteComplex, b: &FiniteComplex, u: &ChainMap) -> Result<Vec<ChainMap>> {
    u.verify(a, b)?;
    let (b2, cone, v) = mapping_cone(a, b, u)?;
    let a2 = a.aligned(b2.lo(), b2.len())?;
    let u2 = extend(u, &a2, &b2);
    let ring = a.ring();
    let minus = ring.neg(1);
    let degs: Vec<i64> = b2.degrees().collect();
    let mut sys = LinearSystem::new(ring);
    let s: Vec<BlockId> = degs.iter().map(|&i| sys.add_block(b2.rank(i), b2.rank(i))).collect();
    let h1: Vec<BlockId> = degs.iter().map(|&i| sys.add_block(b2.rank(i - 1), a2.rank(i))).collect();
    let h2: Vec<BlockId> = degs.iter().map(|&i| sys.add_block(cone.rank(i - 1), b2.rank(i))).collect();
    for (k, &i) in degs.iter().enumerate() {
        let (db, db_prev, da, dc_prev) = (b2.d(i), b2.d(i - 1), a2.d(i), cone.d(i - 1));
        let last = k + 1 == degs.len();
        if !last {
            sys.add_equation(
                &[
                    Term { coeff: 1, left: Some(&db), block: s[k], right: None },
                    Term { coeff: minus, left: None, block: s[k + 1], right: Some(&db) },
                ],
                &ModMatrix::zeros(ring, b2.rank(i + 1), b2.rank(i)),
            )?;
        }
        let mut t1 = vec![
            Term { coeff: 1, left: None, block: s[k], right: Some(u2.at(i)) },
            Term { coeff: minus, left: Some(&db_prev), block: h1[k], right: None },
        ];
        if !last {
            t1.push(Term { coeff: minus, left: None, block: h1[k + 1], right: Some(&da) });
        }
        sys.add_equation(&t1, &ModMatrix::zeros(ring, b2.rank(i), a2.rank(i)))?;
        let mut t2 = vec![
            Term { coeff: 1, left: Some(v.at(i)), block: s[k], right: None },
            Term { coeff: minus, left: Some(&dc_prev), block: h2[k], right: None },
        ];
        if !last {
            t2.push(Term { coeff: minus, left: None, block: h2[k + 1], right: Some(&db) });
        }
        sys.add_equation(&t2, &ModMatrix::zeros(ring, cone.rank(i), b2.rank(i)))?;
    }
    Ok(sys
        .kernel()
        .into_iter()
        .map(|blocks| restrict(&ChainMap::new(b2.lo(), blocks[..degs.len()].to_vec()), b))
        .collect())
}

/// For the triangle `A -u-> B -v-> Cone(u)` and endomorphisms `s, t` of `B`
/// vanishing on `A` and on the cone, whether `st` and `ts` are nullhomotopic.
pub fn square_zero_check(a: &FiniteComplex, b: &FiniteComplex, u: &ChainMap, s: &ChainMap, t: &ChainMap) -> Result<bool> {
    u.verify(a, b)?;
    s.verify(b, b)?;
    t.verify(b, b)?;
    let (b2, cone, v) = mapping_cone(a, b, u)?;
    let on_a = HomotopySolver::new(a, b)?;
    let on_cone = HomotopySolver::new(&b2, &cone)?;
    for (name, x) in [("s", s), ("t", t)] {
        if !on_a.is_nullhomotopic(&x.compose(u)?) {
            return Err(Error::Precondition(format!("{name} u is not nullhomotopic")));
        }
        if !on_cone.is_nullhomotopic(&v.compose(&extend(x, &b2, &b2))?) {
            return Err(Error::Precondition(format!("v {name} is not nullhomotopic")));
        }
    }
    let on_b = HomotopySolver::new(b, b)?;
    Ok(on_b.is_nullhomotopic(&s.compose(t)?) && on_b.is_nullhomotopic(&t.compose(s)?))
}

/// A homotopy equivalent complex whose differentials vanish mod `p`, with
/// `to_model from_model = 1` and `from_model to_model ~ 1`.
#[derive(Clone, Debug)]
pub struct MinimalModel {
    pub complex: FiniteComplex,
    pub to_model: ChainMap,
    pub from_model: ChainMap,
}

impl MinimalModel {
    /// `f` carried to the model.
    pub fn transport(&self, f: &ChainMap) -> Result<ChainMap> {
        self.to_model.compose(f)?.compose(&self.from_model)
    }

    /// A map on the model carried back.
    pub fn pull_back(&self, f: &ChainMap) -> Result<ChainMap> {
        self.from_model.compose(f)?.compose(&self.to_model)
    }
}

fn unit_entry(m: &FiniteComplex) -> Option<(i64, usize, usize)> {
    let ring = m.ring();
    for i in m.lo()..m.hi() - 1 {
        let d = m.d(i);
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if ring.valuation(d.get(r, c)) == 0 {
                    return Some((i, r, c));
                }
            }
        }
    }
    None
}

/// Cancels the unit entry `(r, c)` of `d^i` by Gaussian elimination.
fn eliminate(m: &FiniteComplex, i: i64, r: usize, c: usize) -> Result<(FiniteComplex, ChainMap, ChainMap)> {
    let ring = m.ring();
    let d = m.d(i);
    let phi_inv = ring.inverse(d.get(r, c)).expect("pivot is a unit");
    let (n0, n1) = (m.rank(i), m.rank(i + 1));
    let rest0: Vec<usize> = (0..n0).filter(|j| *j != c).collect();
    let rest1: Vec<usize> = (0..n1).filter(|j| *j != r).collect();
    let delta = d.select(&[r], &rest0);
    let gamma = d.select(&rest1, &[c]);
    let eps = d.select(&rest1, &rest0);
    let new_d = eps.sub(&gamma.mul(&delta)?.scale(phi_inv))?;
    let all = |n: usize| (0..n).collect::<Vec<_>>();
    let ranks = m
        .degrees()
        .map(|j| match j - i {
            0 => n0 - 1,
            1 => n1 - 1,
            _ => m.rank(j),
        })
        .collect();
    let diffs = (m.lo()..m.hi() - 1)
        .map(|j| {
            let dj = m.d(j);
            match j - i {
                -1 => dj.select(&rest0, &all(dj.cols())),
                0 => new_d.clone(),
                1 => dj.select(&all(dj.rows()), &rest1),
                _ => dj,
            }
        })
        .collect();
    let model = FiniteComplex::new(ring, m.lo(), ranks, diffs)?;
    let neg_inv = ring.neg(phi_inv);
    let (mut fm, mut gm) = (Vec::new(), Vec::new());
    for j in m.degrees() {
        let n = m.rank(j);
        let id = ModMatrix::identity(ring, n);
        match j - i {
            0 => {
                fm.push(id.select(&rest0, &all(n)));
                let mut g = id.select(&all(n), &rest0);
                for k in 0..rest0.len() {
                    g.set(c, k, ring.mul(neg_inv, delta.get(0, k)));
                }
                gm.push(g);
            }
            1 => {
                let mut f = id.select(&rest1, &all(n));
                for k in 0..rest1.len() {
                    f.set(k, r, ring.mul(neg_inv, gamma.get(k, 0)));
                }
                fm.push(f);
                gm.push(id.select(&all(n), &rest1));
            }
            _ => {
                fm.push(id.clone());
                gm.push(id);
            }
        }
    }
    let f = ChainMap::checked(m, &model, fm)?;
    let g = ChainMap::checked(&model, m, gm)?;
    Ok((model, f, g))
}

/// Repeatedly cancels unit entries of the differentials.
pub fn minimal_model(c: &FiniteComplex) -> Result<MinimalModel> {
    let mut complex = c.clone();
    let mut to_model = c.identity();
    let mut from_model = c.identity();
    while let Some((i, r, col)) = unit_entry(&complex) {
        let (next, f, g) = eliminate(&complex, i, r, col)?;
        to_model = f.compose(&to_model)?;
        from_model = from_model.compose(&g)?;
        complex = next;
    }
    Ok(MinimalModel { complex, to_model, from_model })
}

/// Arithmetic in `T / pT` on coordinate vectors.
struct Residue<'a> {
    t: &'a HeckeQuotientAlgebra,
    p: u64,
    relations: ModMatrix,
    smith: Smith,
}

impl<'a> Residue<'a> {
    fn new(t: &'a HeckeQuotientAlgebra) -> Result<Self> {
        let p = t.complex.ring().p();
        let ring = PrimePower::new(p, 1)?;
        // The zero column keeps the relation matrix non-empty.
        let relations = t.relations.reduce_to(1)?.hstack(&ModMatrix::zeros(ring, t.rank(), 1))?;
        let smith = relations.smith();
        Ok(Residue { t, p, relations, smith })
    }

    fn reduce(&self, x: Vec<u64>) -> Vec<u64> {
        x.into_iter().map(|v| v % self.p).collect()
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.reduce(self.t.multiply(x, y))
    }

    fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.reduce(self.t.one());
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + self.p - b) % self.p).collect()
    }

    fn is_zero(&self, x: &[u64]) -> bool {
        self.relations.solve_with(&self.smith, x).is_some()
    }

    /// Elements with `x^p = x`, spanning a copy of `F_p^r` modulo relations.
    fn frobenius_fixed(&self) -> Result<Vec<Vec<u64>>> {
        let m = self.t.rank();
        let ring = self.relations.ring();
        let cols: Vec<Vec<u64>> = (0..m)
            .map(|j| {
                let mut e = vec![0; m];
                e[j] = 1;
                self.sub(&self.pow(&e, self.p), &e)
            })
            .collect();
        let a = ModMatrix::from_columns(ring, m, &cols).hstack(&self.relations)?;
        let k = a.kernel();
        Ok((0..k.cols()).map(|j| k.column(j)[..m].to_vec()).collect())
    }

    /// Primitive idempotents of `T / pT`.
    fn primitive_idempotents(&self) -> Result<Vec<Vec<u64>>> {
        let one = self.reduce(self.t.one());
        if self.is_zero(&one) {
            return Ok(Vec::new());
        }
        let mut idems = vec![one.clone()];
        for b in self.frobenius_fixed()? {
            let mut next = Vec::new();
            for e in &idems {
                for c in 0..self.p {
                    let mut shifted = b.clone();
                    shifted[0] = (shifted[0] + self.p - c) % self.p;
                    let indicator = self.sub(&one, &self.pow(&shifted, self.p - 1));
                    let ec = self.mul(e, &indicator);
                    if !self.is_zero(&ec) {
                        next.push(ec);
                    }
                }
            }
            idems = next;
        }
        Ok(idems)
    }
}

/// One block of an idempotent decomposition.
#[derive(Clone, Debug)]
pub struct Summand {
    /// Coordinates of the idempotent in the basis of `T`.
    pub idempotent: Vec<u64>,
    /// The idempotent as a strict chain endomorphism of the minimal model.
    pub projector: ChainMap,
    pub complex: FiniteComplex,
    /// `complex -> model` and `model -> complex`, composing to the identity.
    pub inclusion: ChainMap,
    pub projection: ChainMap,
    /// Steps of `e -> 3e^2 - 2e^3` used.
    pub iterations: usize,
}

#[derive(Clone, Debug)]
pub struct IdempotentSplit {
    pub model: MinimalModel,
    pub summands: Vec<Summand>,
}

impl IdempotentSplit {
    /// Projectors are idempotent, pairwise orthogonal and sum to the identity.
    pub fn is_complete(&self) -> bool {
        let m = &self.model.complex;
        let mut sum = m.scalar(0);
        for (i, a) in self.summands.iter().enumerate() {
            let e = &a.projector;
            if e.compose(e).ok().as_ref() != Some(e) {
                return false;
            }
            for b in &self.summands[i + 1..] {
                let (x, y) = (e.compose(&b.projector), b.projector.compose(e));
                if !(x.is_ok_and(|x| x.is_zero()) && y.is_ok_and(|y| y.is_zero())) {
                    return false;
                }
            }
            sum = sum.add(e).expect("same shape");
        }
        self.summands.is_empty() && m.amplitude() == 0 || sum == m.identity()
    }

    /// Whether the cohomology of the summands adds up to that of `c`.
    pub fn cohomology_matches(&self, c: &FiniteComplex) -> bool {
        let pieces: Vec<_> = self.summands.iter().map(|s| cohomology(&s.complex)).collect();
        cohomology(c).into_iter().all(|(i, mut whole)| {
            let mut parts: Vec<u32> = pieces
                .iter()
                .flat_map(|h| h.iter().filter(|(j, _)| *j == i).flat_map(|(_, f)| f.iter().copied()))
                .collect();
            whole.sort_unstable();
            parts.sort_unstable();
            whole == parts
        })
    }

    pub fn max_iterations(&self) -> usize {
        self.summands.iter().map(|s| s.iterations).max().unwrap_or(0)
    }
}

fn newton_idempotent(mut x: ChainMap) -> Result<(ChainMap, usize)> {
    for it in 0..64 {
        let x2 = x.compose(&x)?;
        if x2 == x {
            return Ok((x, it));
        }
        x = x2.scale(3).sub(&x2.compose(&x)?.scale(2))?;
    }
    Err(Error::Precondition("idempotent lifting did not converge".into()))
}

/// The image of a strict idempotent chain map, with inclusion and projection.
fn image_complex(m: &FiniteComplex, e: &ChainMap) -> Result<(FiniteComplex, ChainMap, ChainMap)> {
    let ring = m.ring();
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    for i in m.degrees() {
        let ei = e.at(i);
        let s = ei.smith();
        let n = m.rank(i);
        let keep: Vec<usize> = (0..n).filter(|j| s.exponents.get(*j).copied().unwrap_or(ring.exponent()) == 0).collect();
        let basis = s.p_inv.select(&(0..n).collect::<Vec<_>>(), &keep);
        let rows = s.p.select(&keep, &(0..n).collect::<Vec<_>>());
        proj.push(rows.mul(ei)?);
        incl.push(basis);
    }
    let ranks: Vec<usize> = incl.iter().map(ModMatrix::cols).collect();
    let diffs = (m.lo()..m.hi() - 1)
        .map(|i| proj[(i + 1 - m.lo()) as usize].mul(&m.d(i))?.mul(&incl[(i - m.lo()) as usize]))
        .collect::<Result<_>>()?;
    let image = FiniteComplex::new(ring, m.lo(), ranks, diffs)?;
    let inclusion = ChainMap::checked(&image, m, incl)?;
    let projection = ChainMap::checked(m, &image, proj)?;
    Ok((image, inclusion, projection))
}

/// Splits the minimal model of `T.complex` along the primitive idempotents
/// of `T`, lifted from `T / pT` to strict idempotents.
pub fn idempotent_split(t: &HeckeQuotientAlgebra) -> Result<IdempotentSplit> {
    let model = minimal_model(&t.complex)?;
    let m = &model.complex;
    let residue = Residue::new(t)?;
    let idems = residue.primitive_idempotents()?;
    let id = m.identity();
    let mut taken = m.scalar(0);
    let mut summands = Vec::with_capacity(idems.len());
    for (k, e) in idems.iter().enumerate() {
        let rest = id.sub(&taken)?;
        let (projector, iterations) = if k + 1 == idems.len() {
            (rest, 0)
        } else {
            let x = model.transport(&t.element(e))?;
            newton_idempotent(rest.compose(&x)?.compose(&rest)?)?
        };
        taken = taken.add(&projector)?;
        let idempotent = t
            .coordinates(&model.pull_back(&projector)?)?
            .ok_or_else(|| Error::Precondition("lifted idempotent is outside the algebra".into()))?;
        let (complex, inclusion, projection) = image_complex(m, &projector)?;
        summands.push(Summand { idempotent, projector, complex, inclusion, projection, iterations });
    }
    Ok(IdempotentSplit { model, summands })
}

/// Glues maps `f_k` on `C (x) Z/p^k`, `k = 1..N`, whose reductions agree up
/// to homotopy, into one map on `C` reducing to a map homotopic to each `f_k`.
pub fn glue_inverse_limit(c: &FiniteComplex, tower: &[ChainMap]) -> Result<ChainMap> {
    let n = c.ring().exponent() as usize;
    if tower.len() != n {
        return Err(Error::Dimension(format!("expected {n} levels, got {}", tower.len())));
    }
    let levels = (1..=n as u32).map(|k| c.reduce_to(k)).collect::<Result<Vec<_>>>()?;
    for (f, ck) in tower.iter().zip(&levels) {
        f.verify(ck, ck)?;
    }
    let mut g = tower[0].clone();
    for k in 1..n {
        let (below, here) = (&levels[k - 1], &levels[k]);
        let diff = tower[k].reduce_to(k as u32)?.sub(&g)?;
        let h = HomotopySolver::new(below, below)?.solve(&diff).ok_or(Error::IncompatibleTower(k + 1))?;
        g = tower[k].sub(&h.lift_to(here.ring()).boundary(here, here)?)?;
    }
    Ok(g)
}

/// Whether each reduction of `glued` is homotopic to the matching level.
pub fn tower_round_trip(c: &FiniteComplex, glued: &ChainMap, tower: &[ChainMap]) -> Result<bool> {
    for (k, f) in tower.iter().enumerate() {
        let ck = c.reduce_to(k as u32 + 1)?;
        let diff = glued.reduce_to(k as u32 + 1)?.sub(f)?;
        if !HomotopySolver::new(&ck, &ck)?.is_nullhomotopic(&diff) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::hecke_quotient;

    fn ring(p: u64, n: u32) -> PrimePower {
        PrimePower::new(p, n).unwrap()
    }

    fn mat(r: PrimePower, rows: &[Vec<i64>]) -> ModMatrix {
        ModMatrix::from_rows(r, rows).unwrap()
    }

    #[test]
    fn square_zero_examples() {
        let r = ring(3, 2);
        let a = FiniteComplex::zero_differentials(r, 0, vec![1]);
        let b = FiniteComplex::zero_differentials(r, 0, vec![2]);
        let u = ChainMap::new(0, vec![mat(r, &[vec![1], vec![0]])]);
        let zero = b.scalar(0);
        assert!(square_zero_check(&a, &b, &u, &zero, &zero).unwrap());
        let s = ChainMap::new(0, vec![mat(r, &[vec![0, 1], vec![0, 0]])]);
        let t = ChainMap::new(0, vec![mat(r, &[vec![0, 2], vec![0, 0]])]);
        assert!(square_zero_check(&a, &b, &u, &s, &t).unwrap());
        assert!(matches!(square_zero_check(&a, &b, &u, &b.identity(), &zero), Err(Error::Precondition(_))));
        let gens = square_zero_generators(&a, &b, &u).unwrap();
        for g in &gens {
            assert!(square_zero_check(&a, &b, &u, g, &s).unwrap());
        }
    }

    #[test]
    fn minimal_model_of_two_term_complexes() {
        let r = ring(2, 2);
        let d = mat(r, &[vec![1, 2], vec![0, 2]]);
        let c = FiniteComplex::new(r, 0, vec![2, 2], vec![d]).unwrap();
        let m = minimal_model(&c).unwrap();
        assert_eq!(m.complex.ranks(), &[1, 1]);
        assert_eq!(m.complex.d(0), mat(r, &[vec![2]]));
        assert_eq!(m.to_model.compose(&m.from_model).unwrap(), m.complex.identity());
        let back = m.from_model.compose(&m.to_model).unwrap().sub(&c.identity()).unwrap();
        assert!(HomotopySolver::new(&c, &c).unwrap().is_nullhomotopic(&back));
    }

    #[test]
    fn local_algebra_has_one_idempotent() {
        let r = ring(3, 2);
        let c = FiniteComplex::zero_differentials(r, 0, vec![2]);
        let t = hecke_quotient(&c, &[c.scalar(3)]).unwrap();
        let split = idempotent_split(&t).unwrap();
        assert_eq!(split.summands.len(), 1);
        assert_eq!(split.summands[0].projector, c.identity());
        assert!(split.is_complete());
    }

    #[test]
    fn diagonal_idempotents() {
        for p in [2, 3, 5] {
            let r = ring(p, 2);
            let c = FiniteComplex::zero_differentials(r, 0, vec![2]);
            let op = ChainMap::new(0, vec![mat(r, &[vec![1, 0], vec![0, 0]])]);
            let t = hecke_quotient(&c, &[op]).unwrap();
            let split = idempotent_split(&t).unwrap();
            assert_eq!(split.summands.len(), 2);
            assert!(split.summands.iter().all(|s| s.complex.ranks() == [1]));
            assert!(split.is_complete());
            assert!(split.cohomology_matches(&c));
        }
    }

    #[test]
    fn lifting_needs_newton_steps() {
        // An op congruent to an idempotent only mod p.
        let r = ring(2, 3);
        let c = FiniteComplex::zero_differentials(r, 0, vec![2]);
        let op = ChainMap::new(0, vec![mat(r, &[vec![1, 2], vec![2, 2]])]);
        let t = hecke_quotient(&c, &[op]).unwrap();
        let split = idempotent_split(&t).unwrap();
        assert_eq!(split.summands.len(), 2);
        assert!(split.is_complete());
        assert!(split.max_iterations() >= 1 && split.max_iterations() <= 3);
    }

    #[test]
    fn glue_examples() {
        let r = ring(3, 2);
        let d = mat(r, &[vec![3]]);
        let c = FiniteComplex::new(r, 0, vec![1, 1], vec![d]).unwrap();
        let tower: Vec<ChainMap> = (1..=2).map(|k| c.identity().reduce_to(k).unwrap()).collect();
        assert_eq!(glue_inverse_limit(&c, &tower).unwrap(), c.identity());
        let tower: Vec<ChainMap> = (1..=2).map(|k| c.scalar(3).reduce_to(k).unwrap()).collect();
        let g = glue_inverse_limit(&c, &tower).unwrap();
        assert_eq!(g, c.scalar(3));
        assert!(tower_round_trip(&c, &g, &tower).unwrap());
        let bad = vec![c.scalar(1).reduce_to(1).unwrap(), c.scalar(2)];
        assert!(matches!(glue_inverse_limit(&c, &bad), Err(Error::IncompatibleTower(2))));
    }
}
