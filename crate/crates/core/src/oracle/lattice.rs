//! Hermite normal forms of right cosets `alpha GL_n(Z_p)` and elementary
//! divisors via minors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::inverse_mod;

/// Upper-triangular Hermite form with diagonal `p^{d_i}` and entry `(i, j)`
/// reduced into `[0, p^{d_i})`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeCoset {
    diag: Vec<u32>,
    entries: Vec<i64>,
    n: usize,
    p: u64,
}

impl LatticeCoset {
    pub fn identity(n: usize, p: u64) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        LatticeCoset { diag: vec![0; n], entries, n, p }
    }

    /// Checks the canonical-form conditions.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix must be square".into()));
        }
        let mut diag = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            let d = exact_power(row[i], p).ok_or_else(|| Error::InvalidLabel("diagonal entry is not a power of p".into()))?;
            diag.push(d);
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let ok = match j.cmp(&i) {
                    core::cmp::Ordering::Less => x == 0,
                    core::cmp::Ordering::Equal => true,
                    core::cmp::Ordering::Greater => (0..p.pow(diag[i]) as i64).contains(&x),
                };
                if !ok {
                    return Err(Error::InvalidLabel("matrix is not in Hermite form".into()));
                }
            }
        }
        Ok(LatticeCoset { diag, entries: rows.iter().flatten().copied().collect(), n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    /// The `d_i` with diagonal `p^{d_i}`.
    pub fn diagonal_exponents(&self) -> &[u32] {
        &self.diag
    }

    pub fn det_valuation(&self) -> u32 {
        self.diag.iter().sum()
    }

    /// The diagonal block on rows and columns `start..start + len`.
    pub fn block(&self, start: usize, len: usize) -> LatticeCoset {
        let mut entries = Vec::with_capacity(len * len);
        for i in start..start + len {
            for j in start..start + len {
                entries.push(self.entry(i, j));
            }
        }
        LatticeCoset { diag: self.diag[start..start + len].to_vec(), entries, n: len, p: self.p }
    }

    /// Hermite form of the coset `self * other * GL_n(Z_p)`.
    pub fn product(&self, other: &LatticeCoset) -> Result<LatticeCoset> {
        let d = self.det_valuation() + other.det_valuation();
        let m = modulus(self.p, d)?;
        let n = self.n;
        let mut cols = vec![vec![0i64; n]; n];
        for (j, col) in cols.iter_mut().enumerate() {
            for (i, c) in col.iter_mut().enumerate() {
                let mut acc = 0i64;
                for k in i..=j {
                    acc = (acc + self.entry(i, k) * other.entry(k, j)) % m;
                }
                *c = acc;
            }
        }
        hermite_from_columns(cols, self.p, d)
    }
}

impl fmt::Debug for LatticeCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.entries.chunks(self.n).enumerate() {
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
        write!(f, "]")
    }
}

fn exact_power(x: i64, p: u64) -> Option<u32> {
    if x <= 0 {
        return None;
    }
    let (mut x, p) = (x as u64, p);
    let mut d = 0;
    while x % p == 0 {
        x /= p;
        d += 1;
    }
    (x == 1).then_some(d)
}

/// `p^d`, kept below `2^31` so that products of residues fit in `i64`.
fn modulus(p: u64, d: u32) -> Result<i64> {
    p.checked_pow(d)
        .filter(|m| *m < (1 << 31))
        .map(|m| m as i64)
        .ok_or(Error::Overflow("p-power modulus of a coset"))
}

fn valuation(mut x: i64, p: i64) -> u32 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Hermite form of the `Z_p`-lattice spanned by `cols`, given the valuation
/// `d` of its index in `Z_p^n`.
pub fn hermite_from_columns(cols: Vec<Vec<i64>>, p: u64, d: u32) -> Result<LatticeCoset> {
    let n = cols.first().map(Vec::len).unwrap_or(0);
    if d == 0 {
        return Ok(LatticeCoset::identity(n, p));
    }
    let m = modulus(p, d)?;
    let pi = p as i64;
    let mut gens: Vec<Vec<i64>> = cols
        .into_iter()
        .map(|c| c.into_iter().map(|x| x.rem_euclid(m)).collect::<Vec<_>>())
        .filter(|c| c.iter().any(|x| *x != 0))
        .collect();
    let mut pivots = vec![Vec::new(); n];
    let mut diag = vec![0u32; n];
    for i in (0..n).rev() {
        let best = gens
            .iter()
            .enumerate()
            .filter(|(_, g)| g[i] != 0)
            .min_by_key(|(_, g)| valuation(g[i], pi))
            .map(|(k, _)| k);
        let Some(k) = best else {
            let mut e = vec![0; n];
            e[i] = m;
            pivots[i] = e;
            diag[i] = d;
            continue;
        };
        let mut g = gens.swap_remove(k);
        let v = valuation(g[i], pi);
        let pv = pi.pow(v);
        let uinv = inverse_mod((g[i] / pv) as u64, m as u64).expect("unit") as i64;
        for x in g.iter_mut() {
            *x = *x * uinv % m;
        }
        for h in gens.iter_mut() {
            if h[i] != 0 {
                let f = h[i] / pv;
                for (x, y) in h.iter_mut().zip(&g) {
                    *x = (*x - f * y).rem_euclid(m);
                }
            }
        }
        let scale = pi.pow(d - v);
        let extra: Vec<i64> = g.iter().map(|x| x * scale % m).collect();
        gens.push(extra);
        gens.retain(|h| h.iter().any(|x| *x != 0));
        pivots[i] = g;
        diag[i] = v;
    }
    if diag.iter().sum::<u32>() != d {
        return Err(Error::Precondition("stated index valuation does not match the lattice".into()));
    }
    let mut h = vec![0i64; n * n];
    for (j, col) in pivots.iter().enumerate() {
        for i in 0..=j {
            h[i * n + j] = col[i];
        }
        h[j * n + j] = pi.pow(diag[j]);
    }
    for j in 0..n {
        for i in (0..j).rev() {
            let q = h[i * n + j].div_euclid(pi.pow(diag[i]));
            if q != 0 {
                for r in 0..=i {
                    h[r * n + j] = (h[r * n + j] - q * h[r * n + i]).rem_euclid(m);
                }
                h[i * n + j] = h[i * n + j].rem_euclid(pi.pow(diag[i]));
            }
        }
    }
    Ok(LatticeCoset { diag, entries: h, n, p })
}

/// Hermite form of the right coset of an arbitrary nonsingular integer matrix.
pub fn hermite_form(rows: &[Vec<i64>], p: u64) -> Result<LatticeCoset> {
    let det = determinant(rows)?;
    if det == 0 {
        return Err(Error::Singular);
    }
    let d = valuation_i128(det, p);
    let n = rows.len();
    let m = modulus(p, d)? as i128;
    let cols = (0..n).map(|j| (0..n).map(|i| (rows[i][j] as i128).rem_euclid(m) as i64).collect()).collect();
    hermite_from_columns(cols, p, d)
}

fn valuation_i128(mut x: i128, p: u64) -> u32 {
    let p = p as i128;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(rows: &[Vec<i64>]) -> Result<i128> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix must be square".into()));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|x| *x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Ok(0);
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])
                    .zip(a[i][k].checked_mul(a[k][j]))
                    .and_then(|(x, y)| x.checked_sub(y))
                    .ok_or(Error::Overflow("determinant"))?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Elementary-divisor exponents, ascending: `a_k = v(g_k) - v(g_{k-1})` where
/// `g_k` is the gcd of the `k x k` minors.
pub fn classify(rows: &[Vec<i64>], p: u64) -> Result<Vec<i64>> {
    let n = rows.len();
    let det = determinant(rows)?;
    if det == 0 {
        return Err(Error::Singular);
    }
    let mut prev = 0i64;
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut best: Option<u32> = None;
        let sets = subsets(n, k);
        for r in &sets {
            for c in &sets {
                let minor: Vec<Vec<i64>> = r.iter().map(|&i| c.iter().map(|&j| rows[i][j]).collect()).collect();
                let m = determinant(&minor)?;
                if m != 0 {
                    let v = valuation_i128(m, p);
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
        }
        let e = best.expect("nonsingular matrix has a nonzero k-minor") as i64;
        out.push(e - prev);
        prev = e;
    }
    Ok(out)
}
