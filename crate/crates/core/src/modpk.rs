//! Dense matrices over `Z/p^N` with a Smith normal form, linear solving and
//! kernels.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::inverse_mod;

/// The coefficient ring `Z/p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    exponent: u32,
    modulus: u64,
}

impl PrimePower {
    pub fn new(p: u64, exponent: u32) -> Result<Self> {
        if p < 2 || exponent == 0 {
            return Err(Error::Precondition("need p >= 2 and N >= 1".into()));
        }
        let modulus = p
            .checked_pow(exponent)
            .filter(|m| *m < (1 << 62))
            .ok_or(Error::Overflow("p^N"))?;
        Ok(PrimePower { p, exponent, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `Z/p^k` for `1 <= k <= N`.
    pub fn with_exponent(&self, k: u32) -> Result<Self> {
        Self::new(self.p, k)
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.modulus < 1 << 32 {
            a * b % self.modulus
        } else {
            ((a as u128 * b as u128) % self.modulus as u128) as u64
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.modulus - a) % self.modulus
    }

    pub fn pow_p(&self, e: u32) -> u64 {
        if e >= self.exponent {
            0
        } else {
            self.p.pow(e)
        }
    }

    /// `p`-adic valuation, `N` for zero.
    pub fn valuation(&self, mut a: u64) -> u32 {
        if a == 0 {
            return self.exponent;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// Writes `a = p^v u` with `u` a unit and returns `(v, u^{-1})`.
    pub fn split_unit(&self, a: u64) -> Option<(u32, u64)> {
        if a == 0 {
            return None;
        }
        let v = self.valuation(a);
        let u = a / self.p.pow(v);
        Some((v, inverse_mod(u, self.modulus)?))
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            inverse_mod(a, self.modulus)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    ring: PrimePower,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(ring: PrimePower, rows: usize, cols: usize) -> Self {
        ModMatrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: PrimePower, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ring.modulus;
        }
        m
    }

    pub fn scalar(ring: PrimePower, n: usize, c: i64) -> Self {
        Self::identity(ring, n).scale(ring.reduce(c))
    }

    pub fn from_rows(ring: PrimePower, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|x| ring.reduce(*x)).collect();
        Ok(ModMatrix { ring, rows: rows.len(), cols, data })
    }

    /// Builds a `rows x cols` matrix; an empty `rows` list is allowed when
    /// the shape has a zero side.
    pub fn from_rows_shaped(ring: PrimePower, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Result<Self> {
        if rows == 0 || cols == 0 {
            if entries.iter().any(|r| !r.is_empty()) || (rows == 0 && !entries.is_empty()) {
                return Err(Error::Dimension("expected an empty matrix".into()));
            }
            return Ok(Self::zeros(ring, rows, cols));
        }
        let m = Self::from_rows(ring, entries)?;
        if m.rows != rows || m.cols != cols {
            return Err(Error::Dimension(alloc::format!(
                "expected {rows}x{cols}, got {}x{}",
                m.rows,
                m.cols
            )));
        }
        Ok(m)
    }

    pub fn ring(&self) -> PrimePower {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.ring.modulus;
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u64]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(alloc::format!(
                "{}x{} vs {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.add(*a, *b)).collect();
        Ok(self.with_data(data))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.sub(*a, *b)).collect();
        Ok(self.with_data(data))
    }

    fn with_data(&self, data: Vec<u64>) -> Self {
        ModMatrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.ring.neg(1 % self.ring.modulus))
    }

    pub fn scale(&self, c: u64) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(*a, c)).collect();
        self.with_data(data)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        let ring = self.ring;
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ring.add(out.data[idx], ring.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Reduction to `Z/p^k`.
    pub fn reduce_to(&self, k: u32) -> Result<Self> {
        let ring = self.ring.with_exponent(k)?;
        let data = self.data.iter().map(|a| a % ring.modulus).collect();
        Ok(ModMatrix { ring, rows: self.rows, cols: self.cols, data })
    }

    /// Reinterprets the integer representatives over another `Z/p^M`.
    pub fn lift_to(&self, ring: PrimePower) -> Self {
        let data = self.data.iter().map(|a| a % ring.modulus).collect();
        ModMatrix { ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: core::ops::Range<usize>, cols: core::ops::Range<usize>) -> Self {
        let mut out = Self::zeros(self.ring, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.data[oi * out.cols + oj] = self.get(i, j);
            }
        }
        out
    }

    /// The matrix formed by the listed rows and columns, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.ring, rows.len(), cols.len());
        for (oi, i) in rows.iter().enumerate() {
            for (oj, j) in cols.iter().enumerate() {
                out.data[oi * out.cols + oj] = self.get(*i, *j);
            }
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j);
            }
        }
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let mut out = Self::zeros(self.ring, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        Ok(out)
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut out = Self::zeros(self.ring, self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        Ok(out)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.ring, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(ring: PrimePower, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut out = Self::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                out.set(i, j, *v);
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| self.ring.add(acc, self.ring.mul(self.get(i, j), v[j]))))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`.
    fn row_axpy(&mut self, dst: usize, src: usize, c: u64) {
        if c == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self.ring.add(self.get(dst, j), self.ring.mul(c, self.get(src, j)));
            self.data[dst * self.cols + j] = v;
        }
    }

    /// `col[dst] += c * col[src]`.
    fn col_axpy(&mut self, dst: usize, src: usize, c: u64) {
        if c == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self.ring.add(self.get(i, dst), self.ring.mul(c, self.get(i, src)));
            self.data[i * self.cols + dst] = v;
        }
    }

    fn scale_row(&mut self, r: usize, c: u64) {
        for j in 0..self.cols {
            self.data[r * self.cols + j] = self.ring.mul(self.data[r * self.cols + j], c);
        }
    }

    fn scale_col(&mut self, col: usize, c: u64) {
        for i in 0..self.rows {
            self.data[i * self.cols + col] = self.ring.mul(self.data[i * self.cols + col], c);
        }
    }

    /// `P self Q = D` with `D` diagonal, entries `p^{e_0} | p^{e_1} | ..`.
    pub fn smith(&self) -> Smith {
        let ring = self.ring;
        let mut a = self.clone();
        let mut p = Self::identity(ring, self.rows);
        let mut p_inv = p.clone();
        let mut q = Self::identity(ring, self.cols);
        let mut q_inv = q.clone();
        let r = self.rows.min(self.cols);
        let mut exps = Vec::with_capacity(r);
        for t in 0..r {
            let mut best: Option<(u32, usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    let x = a.get(i, j);
                    if x != 0 {
                        let v = ring.valuation(x);
                        if best.is_none_or(|b| v < b.0) {
                            best = Some((v, i, j));
                        }
                    }
                }
            }
            let Some((e, bi, bj)) = best else {
                exps.extend(core::iter::repeat_n(ring.exponent, r - t));
                break;
            };
            a.swap_rows(t, bi);
            p.swap_rows(t, bi);
            p_inv.swap_cols(t, bi);
            a.swap_cols(t, bj);
            q.swap_cols(t, bj);
            q_inv.swap_rows(t, bj);
            let (_, uinv) = ring.split_unit(a.get(t, t)).expect("nonzero pivot");
            let u = ring.inverse(uinv).expect("unit");
            a.scale_row(t, uinv);
            p.scale_row(t, uinv);
            p_inv.scale_col(t, u);
            let pe = ring.pow_p(e);
            for i in 0..a.rows {
                if i != t && a.get(i, t) != 0 {
                    let f = a.get(i, t) / pe;
                    a.row_axpy(i, t, ring.neg(f));
                    p.row_axpy(i, t, ring.neg(f));
                    p_inv.col_axpy(t, i, f);
                }
            }
            for j in 0..a.cols {
                if j != t && a.get(t, j) != 0 {
                    let g = a.get(t, j) / pe;
                    a.col_axpy(j, t, ring.neg(g));
                    q.col_axpy(j, t, ring.neg(g));
                    q_inv.row_axpy(t, j, g);
                }
            }
            exps.push(e);
        }
        Smith { exponents: exps, p, p_inv, q, q_inv }
    }

    /// Inverse of a square matrix whose reduction mod `p` is invertible.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let s = self.smith();
        if s.exponents.iter().any(|e| *e != 0) {
            return None;
        }
        Some(s.q.mul(&s.p).expect("square"))
    }

    /// Some `x` with `self x = b`, or `None`.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        self.solve_with(&self.smith(), b)
    }

    pub fn solve_with(&self, s: &Smith, b: &[u64]) -> Option<Vec<u64>> {
        let ring = self.ring;
        let c = s.p.apply(b);
        let mut y = vec![0u64; self.cols];
        for (i, ci) in c.iter().enumerate() {
            let e = s.exponents.get(i).copied().unwrap_or(ring.exponent);
            if *ci == 0 {
                continue;
            }
            if ring.valuation(*ci) < e {
                return None;
            }
            y[i] = ci / ring.pow_p(e);
        }
        Some(s.q.apply(&y))
    }

    /// Generators of `{x : self x = 0}` as columns.
    pub fn kernel(&self) -> Self {
        let s = self.smith();
        let ring = self.ring;
        let mut gens = Vec::new();
        for j in 0..self.cols {
            let e = s.exponents.get(j).copied().unwrap_or(ring.exponent);
            if e == 0 {
                continue;
            }
            let scale = ring.pow_p(ring.exponent - e);
            let col = s.q.column(j).into_iter().map(|x| ring.mul(x, scale)).collect();
            gens.push(col);
        }
        Self::from_columns(ring, self.cols, &gens)
    }
}

/// `P A Q = diag(p^{e_i})`; an exponent equal to `N` marks a zero pivot.
#[derive(Clone, Debug)]
pub struct Smith {
    pub exponents: Vec<u32>,
    pub p: ModMatrix,
    pub p_inv: ModMatrix,
    pub q: ModMatrix,
    pub q_inv: ModMatrix,
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.row_vecs().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "] mod {}", self.ring.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, n: u32) -> PrimePower {
        PrimePower::new(p, n).unwrap()
    }

    fn diag_of(s: &Smith, a: &ModMatrix) -> ModMatrix {
        s.p.mul(a).unwrap().mul(&s.q).unwrap()
    }

    #[test]
    fn smith_is_a_factorization() {
        let r = ring(3, 3);
        let a = ModMatrix::from_rows(r, &[vec![3, 6, 9], vec![1, 2, 12], vec![0, 9, 18]]).unwrap();
        let s = a.smith();
        let d = diag_of(&s, &a);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { r.pow_p(s.exponents[i]) } else { 0 };
                assert_eq!(d.get(i, j), want);
            }
        }
        assert_eq!(s.p.mul(&s.p_inv).unwrap(), ModMatrix::identity(r, 3));
        assert_eq!(s.q.mul(&s.q_inv).unwrap(), ModMatrix::identity(r, 3));
        assert!(s.exponents.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn solve_and_kernel() {
        let r = ring(2, 2);
        let a = ModMatrix::from_rows(r, &[vec![2]]).unwrap();
        assert!(a.solve(&[1]).is_none());
        let x = a.solve(&[2]).unwrap();
        assert_eq!(a.apply(&x), vec![2]);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0), 2);
        let b = ModMatrix::from_rows(r, &[vec![1, 1]]).unwrap();
        let kb = b.kernel();
        assert_eq!(kb.cols(), 1);
        assert!(b.mul(&kb).unwrap().is_zero());
    }

    #[test]
    fn wide_and_tall() {
        let r = ring(5, 2);
        let a = ModMatrix::from_rows(r, &[vec![5, 10, 1], vec![0, 25, 5]]).unwrap();
        let s = a.smith();
        let d = diag_of(&s, &a);
        assert_eq!(d.get(0, 2), 0);
        let t = a.transpose();
        assert!(t.mul(&t.kernel()).unwrap().is_zero());
    }
}
