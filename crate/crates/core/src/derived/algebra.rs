use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::complex::{ChainMap, FiniteComplex, HomotopySolver, InvariantFactors};
use crate::error::{Error, Result};
use crate::modpk::ModMatrix;

/// Invariant factors of `(Z/p^N)^m / span(columns of rel)`.
pub fn cokernel_factors(rel: &ModMatrix) -> InvariantFactors {
    let ring = rel.ring();
    let s = rel.smith();
    (0..rel.rows())
        .map(|i| s.exponents.get(i).copied().unwrap_or(ring.exponent()))
        .filter(|e| *e > 0)
        .collect()
}

/// Span of chain maps modulo nullhomotopic ones, with membership tests.
pub(crate) struct Span<'a> {
    solver: &'a HomotopySolver,
    elements: Vec<ChainMap>,
    matrix: ModMatrix,
    smith: crate::modpk::Smith,
}

impl<'a> Span<'a> {
    pub(crate) fn new(solver: &'a HomotopySolver) -> Self {
        let matrix = solver.boundary_matrix().clone();
        let smith = matrix.smith();
        Span { solver, elements: Vec::new(), matrix, smith }
    }

    pub(crate) fn with_elements(solver: &'a HomotopySolver, elements: Vec<ChainMap>) -> Self {
        let mut span = Span::new(solver);
        span.elements = elements;
        span.rebuild();
        span
    }

    fn rebuild(&mut self) {
        let ring = self.solver.source().ring();
        let rows = self.solver.boundary_matrix().rows();
        let cols: Vec<Vec<u64>> = self.elements.iter().map(ChainMap::flatten).collect();
        let b = ModMatrix::from_columns(ring, rows, &cols);
        self.matrix = b.hstack(self.solver.boundary_matrix()).expect("same row count");
        self.smith = self.matrix.smith();
    }

    /// Coordinates of `f` in the elements, up to homotopy.
    pub(crate) fn coordinates(&self, f: &ChainMap) -> Option<Vec<u64>> {
        let x = self.matrix.solve_with(&self.smith, &f.flatten())?;
        Some(x[..self.elements.len()].to_vec())
    }

    /// Adds `f` unless it already lies in the span; reports whether it was added.
    pub(crate) fn insert(&mut self, f: ChainMap) -> bool {
        if self.coordinates(&f).is_some() {
            return false;
        }
        self.elements.push(f);
        self.rebuild();
        true
    }

    pub(crate) fn elements(&self) -> &[ChainMap] {
        &self.elements
    }

    /// Coefficient vectors of the elements that are nullhomotopic, as columns.
    fn relations(&self) -> ModMatrix {
        let ring = self.solver.source().ring();
        let k = self.matrix.kernel();
        let m = self.elements.len();
        let cols: Vec<Vec<u64>> = (0..k.cols()).map(|j| k.column(j)[..m].to_vec()).collect();
        if cols.is_empty() {
            return ModMatrix::zeros(ring, m, 0);
        }
        ModMatrix::from_columns(ring, m, &cols)
    }
}

/// The commutative algebra generated by the homotopy classes of the ops.
#[derive(Clone, Debug)]
pub struct HeckeQuotientAlgebra {
    pub complex: FiniteComplex,
    pub ops: Vec<ChainMap>,
    /// Chain-map representatives of a generating set of monomials.
    pub basis: Vec<ChainMap>,
    /// `words[k]` lists the ops multiplied to form `basis[k]`.
    pub words: Vec<Vec<usize>>,
    /// Coefficient vectors that vanish in the algebra, as columns.
    pub relations: ModMatrix,
    /// `structure[i][j]` are coordinates of `basis[i] basis[j]`.
    pub structure: Vec<Vec<Vec<u64>>>,
    pub invariant_factors: InvariantFactors,
}

impl HeckeQuotientAlgebra {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The chain map `sum_k x_k basis[k]`.
    pub fn element(&self, x: &[u64]) -> ChainMap {
        let mut acc = self.complex.scalar(0);
        for (c, b) in x.iter().zip(&self.basis) {
            acc = acc.add(&b.scale(*c)).expect("same shape");
        }
        acc
    }

    /// Product of coordinate vectors through the structure constants.
    pub fn multiply(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let ring = self.complex.ring();
        let mut out = vec![0; self.rank()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
                let ab = ring.mul(*a, *b);
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    out[k] = ring.add(out[k], ring.mul(ab, *c));
                }
            }
        }
        out
    }

    /// Whether `x` is zero in the algebra.
    pub fn is_zero(&self, x: &[u64]) -> bool {
        self.relations.solve(x).is_some()
    }

    /// Coordinates of a chain map in the basis, if it lies in the algebra.
    pub fn coordinates(&self, f: &ChainMap) -> Result<Option<Vec<u64>>> {
        f.verify(&self.complex, &self.complex)?;
        let solver = HomotopySolver::new(&self.complex, &self.complex)?;
        Ok(Span::with_elements(&solver, self.basis.clone()).coordinates(f))
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        v[0] = 1 % self.complex.ring().modulus();
        v
    }
}

/// `T(C)`: the span of all monomials in `ops` modulo nullhomotopic maps.
pub fn hecke_quotient(c: &FiniteComplex, ops: &[ChainMap]) -> Result<HeckeQuotientAlgebra> {
    for f in ops {
        f.verify(c, c)?;
    }
    let solver = HomotopySolver::new(c, c)?;
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            if !solver.is_nullhomotopic(&a.compose(b)?.sub(&b.compose(a)?)?) {
                return Err(Error::NonCommuting(format!("ops {i} and another op do not commute up to homotopy")));
            }
        }
    }
    let mut span = Span::new(&solver);
    let mut words: Vec<Vec<usize>> = Vec::new();
    // The unit is always the first element, even when it is nullhomotopic.
    span.elements.push(c.identity());
    span.rebuild();
    words.push(Vec::new());
    let mut next = 0;
    while next < span.elements().len() {
        let s = span.elements()[next].clone();
        let w = words[next].clone();
        for (k, op) in ops.iter().enumerate() {
            if span.insert(op.compose(&s)?) {
                let mut w2 = w.clone();
                w2.push(k);
                words.push(w2);
            }
        }
        next += 1;
    }
    let basis = span.elements().to_vec();
    let mut structure = Vec::with_capacity(basis.len());
    for a in &basis {
        let row = basis
            .iter()
            .map(|b| {
                span.coordinates(&a.compose(b)?)
                    .ok_or_else(|| Error::Precondition("monomials are not closed under multiplication".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        structure.push(row);
    }
    let relations = span.relations();
    let invariant_factors = cokernel_factors(&relations);
    Ok(HeckeQuotientAlgebra {
        complex: c.clone(),
        ops: ops.to_vec(),
        basis,
        words,
        relations,
        structure,
        invariant_factors,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    /// Least `e` with `K^e = 0`, `K = ker(T(C) -> T(H^*(C)))`.
    pub exponent: usize,
    pub amplitude: usize,
    /// Number of generators found for `K` modulo homotopy.
    pub kernel_generators: usize,
}

impl NilpotencyReport {
    pub fn within_amplitude(&self) -> bool {
        self.exponent <= self.amplitude
    }
}

/// Coefficient vectors of the elements of `T` acting as zero on `H^*`.
fn cohomology_kernel(t: &HeckeQuotientAlgebra) -> Result<Vec<Vec<u64>>> {
    let c = &t.complex;
    let ring = c.ring();
    let m = t.rank();
    // Unknowns: x (m) then, per degree and kernel generator, a preimage y.
    let mut blocks = Vec::new();
    let mut extra = 0usize;
    for i in c.degrees() {
        let k = c.d(i).kernel();
        for j in 0..k.cols() {
            blocks.push((i, k.column(j), extra));
            extra += c.rank(i - 1);
        }
    }
    let rows: usize = blocks.iter().map(|(i, _, _)| c.rank(*i)).sum();
    let mut a = ModMatrix::zeros(ring, rows, m + extra);
    let mut r0 = 0;
    for (i, kappa, off) in &blocks {
        let n = c.rank(*i);
        for (s, b) in t.basis.iter().enumerate() {
            let v = b.at(*i).apply(kappa);
            for (r, x) in v.into_iter().enumerate() {
                a.set(r0 + r, s, x);
            }
        }
        let prev = c.d(i - 1).neg();
        a.set_block(r0, m + off, &prev);
        r0 += n;
    }
    let k = a.kernel();
    Ok((0..k.cols()).map(|j| k.column(j)[..m].to_vec()).collect())
}

/// The nilpotency exponent of `ker(T(C) -> T(H^*(C)))`.
pub fn nilpotent_kernel_exponent(t: &HeckeQuotientAlgebra) -> Result<NilpotencyReport> {
    let c = &t.complex;
    let amplitude = c.amplitude();
    let solver = HomotopySolver::new(c, c)?;
    if solver.is_nullhomotopic(&c.identity()) {
        return Ok(NilpotencyReport { exponent: 0, amplitude, kernel_generators: 0 });
    }
    let reduce = |maps: Vec<ChainMap>| -> Vec<ChainMap> {
        let mut span = Span::new(&solver);
        for f in maps {
            span.insert(f);
        }
        span.elements().to_vec()
    };
    let gens = reduce(cohomology_kernel(t)?.iter().map(|x| t.element(x)).collect());
    let kernel_generators = gens.len();
    let mut power = gens.clone();
    let mut exponent = 1;
    while !power.is_empty() {
        let mut products = Vec::with_capacity(power.len() * gens.len());
        for a in &power {
            for g in &gens {
                products.push(a.compose(g)?);
            }
        }
        power = reduce(products);
        exponent += 1;
        if exponent > 64 {
            return Err(Error::Precondition("kernel is not nilpotent within 64 steps".into()));
        }
    }
    Ok(NilpotencyReport { exponent, amplitude, kernel_generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modpk::PrimePower;

    fn ring(p: u64, n: u32) -> PrimePower {
        PrimePower::new(p, n).unwrap()
    }

    #[test]
    fn unit_algebra() {
        let r = ring(3, 2);
        let c = FiniteComplex::zero_differentials(r, 0, vec![2, 1]);
        let t = hecke_quotient(&c, &[]).unwrap();
        assert_eq!(t.invariant_factors, vec![2]);
        let t = hecke_quotient(&c, &[c.identity()]).unwrap();
        assert_eq!(t.invariant_factors, vec![2]);
        assert_eq!(t.rank(), 1);
    }

    #[test]
    fn dual_numbers() {
        let r = ring(2, 2);
        let c = FiniteComplex::zero_differentials(r, 0, vec![2]);
        let f = ChainMap::new(0, vec![ModMatrix::from_rows(r, &[vec![0, 1], vec![0, 0]]).unwrap()]);
        let t = hecke_quotient(&c, &[f]).unwrap();
        assert_eq!(t.invariant_factors, vec![2, 2]);
        let x = vec![0, 1];
        assert!(t.is_zero(&t.multiply(&x, &x)));
        assert!(!t.is_zero(&x));
    }

    #[test]
    fn non_commuting_ops_are_rejected() {
        let r = ring(2, 1);
        let c = FiniteComplex::zero_differentials(r, 0, vec![2]);
        let a = ChainMap::new(0, vec![ModMatrix::from_rows(r, &[vec![0, 1], vec![0, 0]]).unwrap()]);
        let b = ChainMap::new(0, vec![ModMatrix::from_rows(r, &[vec![0, 0], vec![1, 0]]).unwrap()]);
        assert!(matches!(hecke_quotient(&c, &[a, b]), Err(Error::NonCommuting(_))));
    }

    #[test]
    fn nilpotency_examples() {
        let r = ring(3, 2);
        let z = FiniteComplex::zero_differentials(r, 0, vec![1, 2]);
        let t = hecke_quotient(&z, &[z.scalar(3)]).unwrap();
        assert_eq!(nilpotent_kernel_exponent(&t).unwrap().exponent, 1);

        let d = ModMatrix::from_rows(r, &[vec![3]]).unwrap();
        let c = FiniteComplex::new(r, 0, vec![1, 1], vec![d]).unwrap();
        let t = hecke_quotient(&c, &[c.scalar(3)]).unwrap();
        assert_eq!(nilpotent_kernel_exponent(&t).unwrap().exponent, 1);
        let f = ChainMap::new(0, vec![ModMatrix::scalar(r, 1, 0), ModMatrix::scalar(r, 1, 3)]);
        let t = hecke_quotient(&c, &[f]).unwrap();
        let rep = nilpotent_kernel_exponent(&t).unwrap();
        assert_eq!((rep.exponent, rep.amplitude), (2, 2));
        assert!(rep.within_amplitude());
    }
}
