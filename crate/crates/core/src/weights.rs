//! Dominant weights for `GL_n x GL_n` and `U(2n)`, determinant twists and the
//! Lan-Suh inequalities.
//!
//! Embeddings are the abstract indices `0..d`; each carries the pair
//! `(lambda_tau, lambda_tau_c)` of the chosen CM type.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GLWeight {
    /// One `(lambda_tau, lambda_tau_c)` pair per embedding.
    pub components: Vec<(Vec<i64>, Vec<i64>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitaryWeight {
    pub components: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistVariant {
    Plain,
    Regular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanSuhReport {
    pub ok: bool,
    pub norm: i64,
    pub bound: i64,
    pub min_prime: u64,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviLanSuhReport {
    pub ok: bool,
    pub bound: i64,
}

pub fn is_dominant(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

pub fn is_strictly_dominant(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

impl GLWeight {
    pub fn new(components: Vec<(Vec<i64>, Vec<i64>)>) -> Result<Self> {
        let n = components.first().map(|c| c.0.len()).unwrap_or(0);
        for (l, lc) in &components {
            if l.len() != n || lc.len() != n || n == 0 {
                return Err(Error::InvalidWeight("components must all have the same positive length".into()));
            }
            if !is_dominant(l) || !is_dominant(lc) {
                return Err(Error::NotDominant(format!("{l:?} / {lc:?}")));
            }
        }
        Ok(GLWeight { components })
    }

    pub fn rank(&self) -> usize {
        self.components.first().map(|c| c.0.len()).unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.components.len()
    }

    pub fn twist(&self, w: i64) -> Self {
        let shift = |v: &Vec<i64>| v.iter().map(|x| x + w).collect::<Vec<_>>();
        GLWeight { components: self.components.iter().map(|(l, lc)| (shift(l), shift(lc))).collect() }
    }

    pub fn is_strict(&self) -> bool {
        self.components.iter().all(|(l, lc)| is_strictly_dominant(l) && is_strictly_dominant(lc))
    }

    /// `sup_tau (lambda_{tau,1} + lambda_{tau c,1})`.
    fn sup_top_sum(&self) -> i64 {
        self.components.iter().map(|(l, lc)| l[0] + lc[0]).max().unwrap_or(0)
    }

    /// `a_tau = (-lambda_c reversed, lambda)`.
    pub fn to_unitary(&self) -> Result<UnitaryWeight> {
        let mut out = Vec::with_capacity(self.components.len());
        for (l, lc) in &self.components {
            if -lc[0] < l[0] {
                return Err(Error::NotDominant(format!("-{} >= {} fails", lc[0], l[0])));
            }
            let mut a: Vec<i64> = lc.iter().rev().map(|x| -x).collect();
            a.extend_from_slice(l);
            out.push(a);
        }
        Ok(UnitaryWeight { components: out })
    }

    pub fn minimal_dominant_twist(&self, variant: TwistVariant) -> i64 {
        let s = self.sup_top_sum();
        match variant {
            TwistVariant::Plain => (-s).div_euclid(2),
            TwistVariant::Regular => -s.div_euclid(2) - 1,
        }
    }

    /// `d n (n + 6 + sup(lambda_1 + lambda_c_1)) + sum (lambda_i - lambda_c_i - 2 lambda_n)`.
    pub fn levi_lan_suh_check(&self, p: u64) -> Result<LeviLanSuhReport> {
        if !self.is_strict() {
            return Err(Error::NotDominant("weight is not strictly dominant".into()));
        }
        let (d, n) = (self.degree() as i64, self.rank() as i64);
        let tail: i64 = self
            .components
            .iter()
            .map(|(l, lc)| l.iter().zip(lc).map(|(x, y)| x - y - 2 * l[l.len() - 1]).sum::<i64>())
            .sum();
        let bound = d * n * (n + 6 + self.sup_top_sum()) + tail;
        Ok(LeviLanSuhReport { ok: bound < p as i64, bound })
    }
}

impl UnitaryWeight {
    pub fn new(components: Vec<Vec<i64>>) -> Result<Self> {
        let len = components.first().map(Vec::len).unwrap_or(0);
        if len == 0 || !len.is_multiple_of(2) || components.iter().any(|a| a.len() != len) {
            return Err(Error::InvalidWeight("components must all have the same positive even length".into()));
        }
        if let Some(a) = components.iter().find(|a| !is_dominant(a)) {
            return Err(Error::NotDominant(format!("{a:?}")));
        }
        Ok(UnitaryWeight { components })
    }

    /// `n`, half the length of each component.
    pub fn half_rank(&self) -> usize {
        self.components.first().map(|a| a.len() / 2).unwrap_or(0)
    }

    pub fn is_strict(&self) -> bool {
        self.components.iter().all(|a| is_strictly_dominant(a))
    }

    /// `|a|_L = sum_tau sum_i (a_{tau,i} - 2 floor(a_{tau,2n} / 2))`.
    pub fn lan_suh_norm(&self) -> i64 {
        self.components
            .iter()
            .map(|a| {
                let base = 2 * a[a.len() - 1].div_euclid(2);
                a.iter().map(|x| x - base).sum::<i64>()
            })
            .sum()
    }

    pub fn lan_suh_check(&self, p: u64) -> LanSuhReport {
        let (d, n) = (self.components.len() as i64, self.half_rank() as i64);
        let norm = self.lan_suh_norm();
        let bound = d * n * (n + 1) + norm;
        let min_prime = next_prime_above(bound);
        let strict = self.is_strict();
        LanSuhReport {
            ok: strict && bound < p as i64,
            norm,
            bound,
            min_prime,
            reason: if strict { None } else { Some("weight is not strictly dominant".into()) },
        }
    }
}

/// Smallest prime strictly greater than `bound`.
pub fn next_prime_above(bound: i64) -> u64 {
    let mut c = if bound < 2 { 2 } else { bound as u64 + 1 };
    while !is_prime(c) {
        c += 1;
    }
    c
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gl(l: &[i64], lc: &[i64]) -> GLWeight {
        GLWeight::new(vec![(l.to_vec(), lc.to_vec())]).unwrap()
    }

    #[test]
    fn dictionary() {
        let a = gl(&[0, -2], &[-1, -3]).to_unitary().unwrap();
        assert_eq!(a.components, vec![vec![3, 1, 0, -2]]);
        assert_eq!(gl(&[0, 0], &[0, 0]).to_unitary().unwrap().components, vec![vec![0; 4]]);
        assert!(matches!(gl(&[3, 1], &[2, 0]).to_unitary(), Err(Error::NotDominant(_))));
    }

    #[test]
    fn twists() {
        let l = gl(&[3, 1], &[2, 0]);
        assert_eq!(l.twist(0), l);
        assert_eq!(l.twist(-3).components[0].0, vec![0, -2]);
        assert_eq!(l.twist(2).twist(-5), l.twist(-3));
        assert_eq!(l.minimal_dominant_twist(TwistVariant::Plain), -3);
        assert_eq!(l.minimal_dominant_twist(TwistVariant::Regular), -3);
        assert_eq!(gl(&[0, 0], &[0, 0]).minimal_dominant_twist(TwistVariant::Plain), 0);
        let m = gl(&[1, 0], &[0, -1]);
        assert_eq!(m.minimal_dominant_twist(TwistVariant::Plain), -1);
        assert!(m.twist(-1).to_unitary().is_ok());
        assert!(m.twist(0).to_unitary().is_err());
    }

    #[test]
    fn lan_suh_examples() {
        let r = UnitaryWeight::new(vec![vec![3, 2, 1, 0]]).unwrap().lan_suh_check(13);
        assert_eq!((r.ok, r.norm, r.bound, r.min_prime), (true, 6, 12, 13));
        let r = UnitaryWeight::new(vec![vec![1, 0]]).unwrap().lan_suh_check(5);
        assert_eq!((r.ok, r.norm, r.bound, r.min_prime), (true, 1, 3, 5));
        let r = UnitaryWeight::new(vec![vec![2, 2, 1, 0]]).unwrap().lan_suh_check(1000);
        assert!(!r.ok && r.reason.is_some());
    }

    #[test]
    fn levi_examples() {
        let r = gl(&[0], &[0]).levi_lan_suh_check(11).unwrap();
        assert_eq!((r.ok, r.bound), (true, 7));
        assert!(!gl(&[0], &[0]).levi_lan_suh_check(7).unwrap().ok);
        assert_eq!(gl(&[1, 0], &[0, -1]).levi_lan_suh_check(23).unwrap().bound, 20);
        assert!(gl(&[1, 1], &[0, -1]).levi_lan_suh_check(23).is_err());
    }

    #[test]
    fn validation() {
        assert!(GLWeight::new(vec![(vec![0, 1], vec![0, 0])]).is_err());
        assert!(UnitaryWeight::new(vec![vec![1, 0, 0]]).is_err());
    }
}
