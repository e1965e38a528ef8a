use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::modpk::{ModMatrix, PrimePower};

/// A bounded cochain complex of free `Z/p^N`-modules, `d^i : C^i -> C^{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    ring: PrimePower,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d^{lo+k}`; there is one fewer than there are degrees.
    diffs: Vec<ModMatrix>,
}

impl FiniteComplex {
    /// `ranks[k]` is the rank in degree `lo + k`; checks shapes and `d d = 0`.
    pub fn new(ring: PrimePower, lo: i64, ranks: Vec<usize>, diffs: Vec<ModMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidComplex("no degrees".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ring() != ring || d.rows() != ranks[k + 1] || d.cols() != ranks[k] {
                return Err(Error::InvalidComplex(format!("differential in degree {} has the wrong shape", lo + k as i64)));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].mul(&diffs[k - 1])?.is_zero() {
                return Err(Error::InvalidComplex(format!("d^2 != 0 in degree {}", lo + k as i64 - 1)));
            }
        }
        Ok(FiniteComplex { ring, lo, ranks, diffs })
    }

    pub fn zero_differentials(ring: PrimePower, lo: i64, ranks: Vec<usize>) -> Self {
        let diffs = ranks.windows(2).map(|w| ModMatrix::zeros(ring, w[1], w[0])).collect();
        FiniteComplex { ring, lo, ranks, diffs }
    }

    pub fn ring(&self) -> PrimePower {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// One past the top degree.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64
    }

    pub fn degrees(&self) -> core::ops::Range<i64> {
        self.lo..self.hi()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|r| *r == 0)
    }

    pub fn rank(&self, i: i64) -> usize {
        if self.degrees().contains(&i) {
            self.ranks[(i - self.lo) as usize]
        } else {
            0
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d^i`, a `rank(i+1) x rank(i)` matrix (zero outside the stored range).
    pub fn d(&self, i: i64) -> ModMatrix {
        if i >= self.lo && i + 1 < self.hi() {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            ModMatrix::zeros(self.ring, self.rank(i + 1), self.rank(i))
        }
    }

    /// Number of degrees from the first to the last nonzero term.
    pub fn amplitude(&self) -> usize {
        let first = self.ranks.iter().position(|r| *r > 0);
        let last = self.ranks.iter().rposition(|r| *r > 0);
        match (first, last) {
            (Some(a), Some(b)) => b - a + 1,
            _ => 0,
        }
    }

    /// The same complex over the degree range `lo..lo+len`, which must
    /// contain every nonzero term.
    pub fn aligned(&self, lo: i64, len: usize) -> Result<Self> {
        let hi = lo + len as i64;
        if self.degrees().any(|i| self.rank(i) > 0 && !(lo..hi).contains(&i)) {
            return Err(Error::Dimension("alignment would drop a nonzero term".into()));
        }
        let ranks: Vec<usize> = (lo..hi).map(|i| self.rank(i)).collect();
        let diffs = (lo..hi - 1).map(|i| self.d(i)).collect();
        Ok(FiniteComplex { ring: self.ring, lo, ranks, diffs })
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.ring == other.ring && self.lo == other.lo && self.ranks.len() == other.ranks.len()
    }

    /// `C (x) Z/p^k`.
    pub fn reduce_to(&self, k: u32) -> Result<Self> {
        let ring = self.ring.with_exponent(k)?;
        let diffs = self.diffs.iter().map(|d| d.reduce_to(k)).collect::<Result<_>>()?;
        Ok(FiniteComplex { ring, lo: self.lo, ranks: self.ranks.clone(), diffs })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !self.same_shape(other) {
            return Err(Error::Dimension("direct sum of misaligned complexes".into()));
        }
        let ranks = self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect();
        let diffs = self.diffs.iter().zip(&other.diffs).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(FiniteComplex { ring: self.ring, lo: self.lo, ranks, diffs })
    }

    /// Replaces `d^i` by `g^{i+1} d^i (g^i)^{-1}` for invertible `g^i`.
    pub fn conjugate(&self, g: &[ModMatrix]) -> Result<Self> {
        if g.len() != self.len() {
            return Err(Error::Dimension("one matrix per degree expected".into()));
        }
        let inv = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::NotInvertible("change of basis".into())))
            .collect::<Result<Vec<_>>>()?;
        let diffs = (0..self.diffs.len())
            .map(|k| g[k + 1].mul(&self.diffs[k])?.mul(&inv[k]))
            .collect::<Result<_>>()?;
        FiniteComplex::new(self.ring, self.lo, self.ranks.clone(), diffs)
    }

    pub fn identity(&self) -> ChainMap {
        ChainMap {
            lo: self.lo,
            maps: self.ranks.iter().map(|r| ModMatrix::identity(self.ring, *r)).collect(),
        }
    }

    pub fn scalar(&self, c: i64) -> ChainMap {
        ChainMap {
            lo: self.lo,
            maps: self.ranks.iter().map(|r| ModMatrix::scalar(self.ring, *r, c)).collect(),
        }
    }

    pub fn zero_map_to(&self, target: &Self) -> ChainMap {
        ChainMap {
            lo: self.lo,
            maps: self.degrees().map(|i| ModMatrix::zeros(self.ring, target.rank(i), self.rank(i))).collect(),
        }
    }
}

/// A degree-preserving family of matrices `f^i : C^i -> D^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    lo: i64,
    maps: Vec<ModMatrix>,
}

impl ChainMap {
    pub fn new(lo: i64, maps: Vec<ModMatrix>) -> Self {
        ChainMap { lo, maps }
    }

    /// Checks shapes against `source -> target` and `d f = f d`.
    pub fn checked(source: &FiniteComplex, target: &FiniteComplex, maps: Vec<ModMatrix>) -> Result<Self> {
        let f = ChainMap { lo: source.lo, maps };
        f.verify(source, target)?;
        Ok(f)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn maps(&self) -> &[ModMatrix] {
        &self.maps
    }

    pub fn at(&self, i: i64) -> &ModMatrix {
        &self.maps[(i - self.lo) as usize]
    }

    pub fn verify(&self, source: &FiniteComplex, target: &FiniteComplex) -> Result<()> {
        if source.lo != target.lo || source.len() != target.len() || self.lo != source.lo || self.maps.len() != source.len() {
            return Err(Error::Dimension("chain map and complexes are misaligned".into()));
        }
        for i in source.degrees() {
            let f = self.at(i);
            if f.rows() != target.rank(i) || f.cols() != source.rank(i) {
                return Err(Error::Dimension(format!("component in degree {i} has the wrong shape")));
            }
        }
        for i in source.degrees() {
            if i + 1 < source.hi() {
                let lhs = target.d(i).mul(self.at(i))?;
                let rhs = self.at(i + 1).mul(&source.d(i))?;
                if lhs != rhs {
                    return Err(Error::NotChainMap(format!("d f != f d in degree {i}")));
                }
            }
        }
        Ok(())
    }

    /// `self o other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.mul(b)).collect::<Result<_>>()?;
        Ok(ChainMap { lo: self.lo, maps })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(ChainMap { lo: self.lo, maps })
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(ChainMap { lo: self.lo, maps })
    }

    pub fn scale(&self, c: u64) -> ChainMap {
        ChainMap { lo: self.lo, maps: self.maps.iter().map(|m| m.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(ModMatrix::is_zero)
    }

    pub fn reduce_to(&self, k: u32) -> Result<ChainMap> {
        let maps = self.maps.iter().map(|m| m.reduce_to(k)).collect::<Result<_>>()?;
        Ok(ChainMap { lo: self.lo, maps })
    }

    pub fn lift_to(&self, ring: PrimePower) -> ChainMap {
        ChainMap { lo: self.lo, maps: self.maps.iter().map(|m| m.lift_to(ring)).collect() }
    }

    /// Concatenation of all entries, degree by degree.
    pub fn flatten(&self) -> Vec<u64> {
        self.maps.iter().flat_map(|m| m.row_vecs().into_iter().flatten()).collect()
    }

    /// Inverse of [`flatten`](Self::flatten) for the shape of `template`.
    pub fn unflatten(template: &ChainMap, v: &[u64]) -> ChainMap {
        let mut k = 0;
        let maps = template
            .maps
            .iter()
            .map(|m| {
                let mut out = ModMatrix::zeros(m.ring(), m.rows(), m.cols());
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        out.set(i, j, v[k]);
                        k += 1;
                    }
                }
                out
            })
            .collect();
        ChainMap { lo: template.lo, maps }
    }
}

/// `h^i : C^i -> D^{i-1}` for every degree `i` of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    lo: i64,
    maps: Vec<ModMatrix>,
}

impl Homotopy {
    pub fn new(lo: i64, maps: Vec<ModMatrix>) -> Self {
        Homotopy { lo, maps }
    }

    pub fn maps(&self) -> &[ModMatrix] {
        &self.maps
    }

    pub fn at(&self, i: i64) -> &ModMatrix {
        &self.maps[(i - self.lo) as usize]
    }

    /// `d h + h d : C -> D`.
    pub fn boundary(&self, source: &FiniteComplex, target: &FiniteComplex) -> Result<ChainMap> {
        let maps = source
            .degrees()
            .map(|i| {
                let a = target.d(i - 1).mul(self.at(i))?;
                let b = if i + 1 < source.hi() {
                    self.at(i + 1).mul(&source.d(i))?
                } else {
                    ModMatrix::zeros(source.ring(), target.rank(i), source.rank(i))
                };
                a.add(&b)
            })
            .collect::<Result<_>>()?;
        Ok(ChainMap::new(source.lo(), maps))
    }

    pub fn lift_to(&self, ring: PrimePower) -> Homotopy {
        Homotopy { lo: self.lo, maps: self.maps.iter().map(|m| m.lift_to(ring)).collect() }
    }

    pub fn zero(source: &FiniteComplex, target: &FiniteComplex) -> Homotopy {
        Homotopy {
            lo: source.lo(),
            maps: source.degrees().map(|i| ModMatrix::zeros(source.ring(), target.rank(i - 1), source.rank(i))).collect(),
        }
    }
}

/// A block of unknowns in a [`LinearSystem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockId(usize);

/// A term `c L X R`; `None` stands for an identity factor.
pub struct Term<'a> {
    pub coeff: u64,
    pub left: Option<&'a ModMatrix>,
    pub block: BlockId,
    pub right: Option<&'a ModMatrix>,
}

/// Linear equations in matrix-shaped unknowns over `Z/p^N`.
pub struct LinearSystem {
    ring: PrimePower,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    unknowns: usize,
    rows: Vec<Vec<(usize, u64)>>,
    rhs: Vec<u64>,
}

impl LinearSystem {
    pub fn new(ring: PrimePower) -> Self {
        LinearSystem { ring, shapes: Vec::new(), offsets: Vec::new(), unknowns: 0, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn add_block(&mut self, rows: usize, cols: usize) -> BlockId {
        self.shapes.push((rows, cols));
        self.offsets.push(self.unknowns);
        self.unknowns += rows * cols;
        BlockId(self.shapes.len() - 1)
    }

    /// Adds the matrix equation `sum_k c_k L_k X_k R_k = target`.
    pub fn add_equation(&mut self, terms: &[Term], target: &ModMatrix) -> Result<()> {
        let ring = self.ring;
        let (r, c) = (target.rows(), target.cols());
        let mut eqs = vec![Vec::<(usize, u64)>::new(); r * c];
        for t in terms {
            let (br, bc) = self.shapes[t.block.0];
            let off = self.offsets[t.block.0];
            let lrows = t.left.map_or(br, ModMatrix::rows);
            let rcols = t.right.map_or(bc, ModMatrix::cols);
            if lrows != r || rcols != c || t.left.is_some_and(|l| l.cols() != br) || t.right.is_some_and(|m| m.rows() != bc) {
                return Err(Error::Dimension("term shape does not match the equation".into()));
            }
            for i in 0..r {
                for a in 0..br {
                    let la = match t.left {
                        Some(l) => l.get(i, a),
                        None => u64::from(i == a),
                    };
                    if la == 0 {
                        continue;
                    }
                    for b in 0..bc {
                        for j in 0..c {
                            let rb = match t.right {
                                Some(m) => m.get(b, j),
                                None => u64::from(b == j),
                            };
                            if rb != 0 {
                                let v = ring.mul(t.coeff, ring.mul(la, rb));
                                eqs[i * c + j].push((off + a * bc + b, v));
                            }
                        }
                    }
                }
            }
        }
        for (k, e) in eqs.into_iter().enumerate() {
            self.rows.push(e);
            self.rhs.push(target.get(k / c.max(1), k % c.max(1)));
        }
        Ok(())
    }

    pub fn matrix(&self) -> ModMatrix {
        let mut m = ModMatrix::zeros(self.ring, self.rows.len(), self.unknowns);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                let cur = m.get(i, *j);
                m.set(i, *j, self.ring.add(cur, *v));
            }
        }
        m
    }

    pub fn rhs(&self) -> &[u64] {
        &self.rhs
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn unpack(&self, x: &[u64]) -> Vec<ModMatrix> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &off)| {
                let mut m = ModMatrix::zeros(self.ring, r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, x[off + i * c + j]);
                    }
                }
                m
            })
            .collect()
    }

    pub fn solve(&self) -> Option<Vec<ModMatrix>> {
        let x = self.matrix().solve(&self.rhs)?;
        Some(self.unpack(&x))
    }

    /// Generators of the solutions of the homogeneous system.
    pub fn kernel(&self) -> Vec<Vec<ModMatrix>> {
        let k = self.matrix().kernel();
        (0..k.cols()).map(|j| self.unpack(&k.column(j))).collect()
    }
}

/// The homotopy equation `d h + h d = f` for maps `source -> target`, with
/// its coefficient matrix factored once.
pub struct HomotopySolver {
    source: FiniteComplex,
    target: FiniteComplex,
    system: LinearSystem,
    matrix: ModMatrix,
    smith: crate::modpk::Smith,
}

impl HomotopySolver {
    pub fn new(source: &FiniteComplex, target: &FiniteComplex) -> Result<Self> {
        if !source.same_shape(target) {
            return Err(Error::Dimension("source and target are misaligned".into()));
        }
        let ring = source.ring();
        let mut system = LinearSystem::new(ring);
        let blocks: Vec<BlockId> = source.degrees().map(|i| system.add_block(target.rank(i - 1), source.rank(i))).collect();
        for (k, i) in source.degrees().enumerate() {
            let dt = target.d(i - 1);
            let ds = source.d(i);
            let mut terms = vec![Term { coeff: 1, left: Some(&dt), block: blocks[k], right: None }];
            if k + 1 < blocks.len() {
                terms.push(Term { coeff: 1, left: None, block: blocks[k + 1], right: Some(&ds) });
            }
            system.add_equation(&terms, &ModMatrix::zeros(ring, target.rank(i), source.rank(i)))?;
        }
        let matrix = system.matrix();
        let smith = matrix.smith();
        Ok(HomotopySolver { source: source.clone(), target: target.clone(), system, matrix, smith })
    }

    pub fn source(&self) -> &FiniteComplex {
        &self.source
    }

    pub fn target(&self) -> &FiniteComplex {
        &self.target
    }

    /// Some `h` with `d h + h d = f`, verified by substitution.
    pub fn solve(&self, f: &ChainMap) -> Option<Homotopy> {
        let x = self.matrix.solve_with(&self.smith, &f.flatten())?;
        let h = Homotopy { lo: self.source.lo(), maps: self.system.unpack(&x) };
        let back = h.boundary(&self.source, &self.target).ok()?;
        assert_eq!(&back, f, "homotopy failed verification");
        Some(h)
    }

    pub fn is_nullhomotopic(&self, f: &ChainMap) -> bool {
        self.solve(f).is_some()
    }

    /// The columns spanning the nullhomotopic maps, flattened.
    pub fn boundary_matrix(&self) -> &ModMatrix {
        &self.matrix
    }
}

/// Some `h` with `d h + h d = f`, for `f : source -> target`.
pub fn nullhomotopy(source: &FiniteComplex, target: &FiniteComplex, f: &ChainMap) -> Result<Option<Homotopy>> {
    f.verify(source, target)?;
    Ok(HomotopySolver::new(source, target)?.solve(f))
}

/// Invariant-factor exponents of a finitely generated `Z/p^N`-module: the
/// entry `e` stands for a summand `Z/p^e`.
pub type InvariantFactors = Vec<u32>;

/// `H^i(C)` for every degree of `C`.
pub fn cohomology(c: &FiniteComplex) -> Vec<(i64, InvariantFactors)> {
    let ring = c.ring();
    c.degrees()
        .map(|i| {
            let d = c.d(i);
            let s = d.smith();
            let n = c.rank(i);
            // ker d^i = (+)_j p^{N - e_j} Q e_j, coordinates in Z/p^{e_j}.
            let exps: Vec<u32> = (0..n).map(|j| s.exponents.get(j).copied().unwrap_or(ring.exponent())).collect();
            let prev = c.d(i - 1);
            let mut rel = ModMatrix::zeros(ring, n, prev.cols() + n);
            for col in 0..prev.cols() {
                let y = s.q_inv.apply(&prev.column(col));
                for j in 0..n {
                    let shift = ring.pow_p(ring.exponent() - exps[j]);
                    let coord = if exps[j] == 0 { 0 } else { y[j] / shift };
                    rel.set(j, col, coord);
                }
            }
            for j in 0..n {
                rel.set(j, prev.cols() + j, ring.pow_p(exps[j]));
            }
            let factors = rel.smith().exponents.into_iter().filter(|e| *e > 0).collect();
            (i, factors)
        })
        .collect()
}

/// Whether `f` induces zero on `H^*`: `f(ker d^i)` lies in `im d^{i-1}`.
pub fn acts_as_zero_on_cohomology(c: &FiniteComplex, f: &ChainMap) -> bool {
    c.degrees().all(|i| {
        let k = c.d(i).kernel();
        let prev = c.d(i - 1);
        (0..k.cols()).all(|j| prev.solve(&f.at(i).apply(&k.column(j))).is_some())
    })
}

/// Generators of the chain maps `source -> target`.
pub fn chain_map_generators(source: &FiniteComplex, target: &FiniteComplex) -> Result<Vec<ChainMap>> {
    if !source.same_shape(target) {
        return Err(Error::Dimension("source and target are misaligned".into()));
    }
    let ring = source.ring();
    let mut system = LinearSystem::new(ring);
    let blocks: Vec<BlockId> = source.degrees().map(|i| system.add_block(target.rank(i), source.rank(i))).collect();
    let minus_one = ring.neg(1);
    for (k, i) in source.degrees().enumerate().take(source.len() - 1) {
        let dt = target.d(i);
        let ds = source.d(i);
        system.add_equation(
            &[
                Term { coeff: 1, left: Some(&dt), block: blocks[k], right: None },
                Term { coeff: minus_one, left: None, block: blocks[k + 1], right: Some(&ds) },
            ],
            &ModMatrix::zeros(ring, target.rank(i + 1), source.rank(i)),
        )?;
    }
    Ok(system.kernel().into_iter().map(|maps| ChainMap::new(source.lo(), maps)).collect())
}

/// The mapping cone of `u : A -> B`, `C^i = A^{i+1} (+) B^i`, over the
/// degree range of `A` extended one step down, together with the inclusion
/// `B -> C` (both `B` and `C` are returned aligned to that range).
pub fn mapping_cone(a: &FiniteComplex, b: &FiniteComplex, u: &ChainMap) -> Result<(FiniteComplex, FiniteComplex, ChainMap)> {
    u.verify(a, b)?;
    let ring = a.ring();
    let lo = a.lo() - 1;
    let len = a.len() + 1;
    let b2 = b.aligned(lo, len)?;
    let a2 = a.aligned(lo, len)?;
    let rank = |i: i64| a2.rank(i + 1) + b2.rank(i);
    let ranks: Vec<usize> = (lo..lo + len as i64).map(rank).collect();
    let u_at = |i: i64| -> ModMatrix {
        if a.degrees().contains(&i) {
            u.at(i).clone()
        } else {
            ModMatrix::zeros(ring, b2.rank(i), a2.rank(i))
        }
    };
    let diffs = (lo..lo + len as i64 - 1)
        .map(|i| {
            let mut m = ModMatrix::zeros(ring, rank(i + 1), rank(i));
            let (ai1, ai2) = (a2.rank(i + 1), a2.rank(i + 2));
            m.set_block(0, 0, &a2.d(i + 1).neg());
            m.set_block(ai2, 0, &u_at(i + 1));
            m.set_block(ai2, ai1, &b2.d(i));
            m
        })
        .collect();
    let cone = FiniteComplex::new(ring, lo, ranks, diffs)?;
    let incl = (lo..lo + len as i64)
        .map(|i| {
            let mut m = ModMatrix::zeros(ring, rank(i), b2.rank(i));
            m.set_block(a2.rank(i + 1), 0, &ModMatrix::identity(ring, b2.rank(i)));
            m
        })
        .collect();
    let v = ChainMap::checked(&b2, &cone, incl)?;
    Ok((b2, cone, v))
}
