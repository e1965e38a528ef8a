//! Elementary symmetric polynomials and Weyl group invariance.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylKind {
    /// `S_n` permuting the variables.
    Symmetric,
    /// `S_n x| (Z/2)^n` permuting and inverting the variables.
    Hyperoctahedral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroupAction {
    pub kind: WeylKind,
    pub vars: Vec<String>,
}

impl WeylGroupAction {
    pub fn symmetric<S: AsRef<str>>(vars: &[S]) -> Self {
        WeylGroupAction { kind: WeylKind::Symmetric, vars: vars.iter().map(|s| s.as_ref().to_string()).collect() }
    }

    pub fn hyperoctahedral<S: AsRef<str>>(vars: &[S]) -> Self {
        WeylGroupAction {
            kind: WeylKind::Hyperoctahedral,
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }
}

/// `e_i` in `vars` with coefficients `one`-typed; `e_0 = 1`.
pub fn elementary_symmetric_in<R: Ring, S: AsRef<str>>(i: usize, vars: &[S], one: &R) -> Result<Laurent<R>> {
    let n = vars.len();
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let mut p = Laurent::zero_in(vars, one.zero_like());
    // Walk all i-subsets in lexicographic order.
    let mut idx: Vec<usize> = (0..i).collect();
    loop {
        let mut e = vec![0i64; n];
        for &k in &idx {
            e[k] = 1;
        }
        p.add_term(e, one.clone());
        let mut k = i;
        loop {
            if k == 0 {
                return Ok(p);
            }
            k -= 1;
            if idx[k] < n - i + k {
                idx[k] += 1;
                for j in k + 1..i {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn elementary_symmetric<S: AsRef<str>>(i: usize, vars: &[S]) -> Result<crate::MultiLaurent> {
    elementary_symmetric_in(i, vars, &crate::QHalf::one())
}

/// Whether `p` is fixed by the generators of the action: adjacent
/// transpositions, plus inversion of the first variable in the
/// hyperoctahedral case. Action variables absent from `p` are adjoined.
pub fn is_invariant<R: Ring>(p: &Laurent<R>, action: &WeylGroupAction) -> bool {
    if action.vars.is_empty() {
        return true;
    }
    let mut all: Vec<String> = p.vars().to_vec();
    for v in &action.vars {
        if !all.contains(v) {
            all.push(v.clone());
        }
    }
    let q = match p.embed(&all) {
        Ok(q) => q,
        Err(_) => return false,
    };
    let pos: Vec<usize> = action.vars.iter().map(|v| all.iter().position(|w| w == v).unwrap()).collect();
    for w in pos.windows(2) {
        let (a, b) = (w[0], w[1]);
        let swapped = q.map_exponents(|e| {
            let mut e = e.to_vec();
            e.swap(a, b);
            e
        });
        if swapped != q {
            return false;
        }
    }
    if action.kind == WeylKind::Hyperoctahedral {
        let a = pos[0];
        let inverted = q.map_exponents(|e| {
            let mut e = e.to_vec();
            e[a] = -e[a];
            e
        });
        if inverted != q {
            return false;
        }
    }
    true
}

/// Expansion of a symmetric polynomial in products of elementary symmetric
/// polynomials, one block of variables at a time.
///
/// `p` equals `sum_m c_m prod_b prod_k e_k(block_b)^{m_{b,k}}` divided by
/// `prod_b e_{n_b}(block_b)^{denominators[b]}`; the multidegree `m` lists
/// the blocks one after the other.
#[derive(Clone, Debug, PartialEq)]
pub struct EBasisExpansion<R: Ring> {
    pub blocks: Vec<Vec<String>>,
    pub terms: BTreeMap<Vec<u32>, R>,
    pub denominators: Vec<u32>,
}

impl<R: Ring> EBasisExpansion<R> {
    /// Rebuilds the polynomial in the variables `vars`.
    pub fn expand<S: AsRef<str>>(&self, vars: &[S], one: &R) -> Result<Laurent<R>> {
        let all: Vec<String> = self.blocks.iter().flatten().cloned().collect();
        let e_polys = block_e_polys(&self.blocks, &all, one)?;
        let mut acc = Laurent::zero_in(&all, one.zero_like());
        for (m, c) in &self.terms {
            acc = acc.add(&e_product(&e_polys, m, &all, one).scale(c));
        }
        let mut shift = Vec::with_capacity(all.len());
        for (b, block) in self.blocks.iter().enumerate() {
            for _ in block {
                shift.push(-(self.denominators[b] as i64));
            }
        }
        acc.shift(&shift).embed(vars)
    }
}

fn block_e_polys<R: Ring>(blocks: &[Vec<String>], all: &[String], one: &R) -> Result<Vec<Vec<Laurent<R>>>> {
    blocks
        .iter()
        .map(|block| (1..=block.len()).map(|k| elementary_symmetric_in(k, block, one)?.embed(all)).collect())
        .collect()
}

fn e_product<R: Ring>(e_polys: &[Vec<Laurent<R>>], m: &[u32], all: &[String], one: &R) -> Laurent<R> {
    let mut acc = Laurent::constant(all, one.clone());
    let mut idx = 0;
    for block in e_polys {
        for e in block {
            if m[idx] > 0 {
                acc = acc.mul(&e.powi(m[idx]));
            }
            idx += 1;
        }
    }
    acc
}

/// Single-block e-basis expansion.
pub fn express_in_e_basis<R: Ring, S: AsRef<str>>(p: &Laurent<R>, vars: &[S]) -> Result<EBasisExpansion<R>> {
    let block: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
    express_in_e_blocks(p, &[block])
}

/// Expansion of a polynomial symmetric in each block separately, by
/// leading-term subtraction in lexicographic order. Every variable of `p`
/// with a nonzero exponent must belong to a block.
pub fn express_in_e_blocks<R: Ring>(p: &Laurent<R>, blocks: &[Vec<String>]) -> Result<EBasisExpansion<R>> {
    let all: Vec<String> = blocks.iter().flatten().cloned().collect();
    let mut q = p.embed(&all)?;
    for block in blocks {
        if !is_invariant(&q, &WeylGroupAction::symmetric(block)) {
            return Err(Error::NotInvariant(format!("not symmetric in {:?}", block)));
        }
    }
    let one = q.coeff_zero().one_like();
    // Clear denominators block by block.
    let mins = q.min_exponents();
    let mut denominators = Vec::with_capacity(blocks.len());
    let mut shift = Vec::with_capacity(all.len());
    let mut offset = 0;
    for block in blocks {
        let k = (offset..offset + block.len()).map(|i| -mins[i]).max().unwrap_or(0).max(0);
        denominators.push(k as u32);
        shift.extend(core::iter::repeat_n(k, block.len()));
        offset += block.len();
    }
    q = q.shift(&shift);

    let e_polys = block_e_polys(blocks, &all, &one)?;
    let mut terms = BTreeMap::new();
    while let Some((lead, c)) = q.leading_term() {
        let (lead, c) = (lead.clone(), c.clone());
        let mut m = Vec::with_capacity(all.len());
        let mut offset = 0;
        for block in blocks {
            let lam = &lead[offset..offset + block.len()];
            for k in 0..block.len() {
                let next = if k + 1 < block.len() { lam[k + 1] } else { 0 };
                if lam[k] < next {
                    return Err(Error::NotInvariant(format!("non-dominant leading exponent {:?}", lead)));
                }
                m.push((lam[k] - next) as u32);
            }
            offset += block.len();
        }
        let prod = e_product(&e_polys, &m, &all, &one);
        q = q.sub(&prod.scale(&c));
        terms.insert(m, c);
    }
    Ok(EBasisExpansion { blocks: blocks.to_vec(), terms, denominators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{var_names, MultiLaurent};
    use crate::scalar::QHalf;

    fn y(vars: &[String], i: usize) -> MultiLaurent {
        MultiLaurent::var_q(vars, &format!("Y{i}")).unwrap()
    }

    #[test]
    fn elementary_examples() {
        let v2 = var_names("Y", 2);
        assert_eq!(elementary_symmetric(1, &v2).unwrap(), y(&v2, 1).add(&y(&v2, 2)));
        assert_eq!(elementary_symmetric(2, &v2).unwrap(), y(&v2, 1).mul(&y(&v2, 2)));
        assert_eq!(elementary_symmetric(0, &v2).unwrap(), MultiLaurent::one_q(&v2));
        let v3 = var_names("Y", 3);
        let e2 = elementary_symmetric(2, &v3).unwrap();
        let expected = y(&v3, 1).mul(&y(&v3, 2)).add(&y(&v3, 1).mul(&y(&v3, 3))).add(&y(&v3, 2).mul(&y(&v3, 3)));
        assert_eq!(e2, expected);
        assert!(matches!(elementary_symmetric(3, &v2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn invariance_examples() {
        let v2 = var_names("Y", 2);
        assert!(is_invariant(&y(&v2, 1).add(&y(&v2, 2)), &WeylGroupAction::symmetric(&v2)));
        assert!(!is_invariant(&y(&v2, 1), &WeylGroupAction::symmetric(&v2)));
        let x = var_names("X", 2);
        let mut p = MultiLaurent::zero_q(&x);
        for v in &x {
            let t = MultiLaurent::var_q(&x, v).unwrap();
            p = p.add(&t).add(&t.inverse().unwrap());
        }
        assert!(is_invariant(&p, &WeylGroupAction::hyperoctahedral(&x)));
        assert!(is_invariant(&p, &WeylGroupAction::symmetric(&x)));
        let s = MultiLaurent::var_q(&x, "X1").unwrap().add(&MultiLaurent::var_q(&x, "X2").unwrap());
        assert!(!is_invariant(&s, &WeylGroupAction::hyperoctahedral(&x)));
    }

    #[test]
    fn e_basis_examples() {
        let v2 = var_names("Y", 2);
        let s = y(&v2, 1).add(&y(&v2, 2));
        let ex = express_in_e_basis(&s, &v2).unwrap();
        assert_eq!(ex.denominators, vec![0]);
        assert_eq!(ex.terms.len(), 1);
        assert_eq!(ex.terms[&vec![1, 0]], QHalf::one());

        // Newton: p_2 = e_1^2 - 2 e_2.
        let p2 = y(&v2, 1).powi(2).add(&y(&v2, 2).powi(2));
        let ex = express_in_e_basis(&p2, &v2).unwrap();
        assert_eq!(ex.terms[&vec![2, 0]], QHalf::one());
        assert_eq!(ex.terms[&vec![0, 1]], QHalf::from_int(-2));
        assert_eq!(ex.expand(&v2, &QHalf::one()).unwrap(), p2);

        // Y1^-1 + Y2^-1 = e_1 / e_2.
        let inv = y(&v2, 1).inverse().unwrap().add(&y(&v2, 2).inverse().unwrap());
        let ex = express_in_e_basis(&inv, &v2).unwrap();
        assert_eq!(ex.denominators, vec![1]);
        assert_eq!(ex.terms.len(), 1);
        assert_eq!(ex.terms[&vec![1, 0]], QHalf::one());
        assert_eq!(ex.expand(&v2, &QHalf::one()).unwrap(), inv);
    }

    #[test]
    fn non_invariant_rejected() {
        let v2 = var_names("Y", 2);
        let p = y(&v2, 1).powi(2).add(&y(&v2, 1).mul(&y(&v2, 2)));
        assert!(matches!(express_in_e_basis(&p, &v2), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn block_expansion_round_trip() {
        let blocks = vec![var_names("A", 2), var_names("B", 1)];
        let all: Vec<String> = blocks.iter().flatten().cloned().collect();
        let a1 = MultiLaurent::var_q(&all, "A1").unwrap();
        let a2 = MultiLaurent::var_q(&all, "A2").unwrap();
        let b1 = MultiLaurent::var_q(&all, "B1").unwrap();
        let p = a1.add(&a2).mul(&b1.inverse().unwrap()).add(&a1.mul(&a2).scale(&QHalf::q_half_power(3)));
        let ex = express_in_e_blocks(&p, &blocks).unwrap();
        assert_eq!(ex.expand(&all, &QHalf::one()).unwrap(), p);
    }
}
