//! Multivariate Laurent polynomials over a coefficient [`Ring`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::{Ring, ZMod};
use crate::scalar::QHalf;

/// Laurent polynomial in an ordered list of named variables.
///
/// Exponent vectors always have one entry per variable and no zero
/// coefficient is stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq)]
pub struct Laurent<R: Ring> {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<i64>, R>,
    zero: R,
}

/// Laurent polynomials over `Z[q^{1/2}, q^{-1/2}]`, the home of Satake images.
pub type MultiLaurent = Laurent<QHalf>;

pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl<R: Ring> Laurent<R> {
    pub fn zero_in<S: AsRef<str>>(vars: &[S], zero: R) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        Laurent { vars: vars.into(), terms: BTreeMap::new(), zero: zero.zero_like() }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: R) -> Self {
        let mut p = Self::zero_in(vars, c.zero_like());
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: Vec<i64>, c: R) -> Result<Self> {
        let mut p = Self::zero_in(vars, c.zero_like());
        if exps.len() != p.vars.len() {
            return Err(Error::Dimension(format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                p.vars.len()
            )));
        }
        p.add_term(exps, c);
        Ok(p)
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn variable<S: AsRef<str>>(vars: &[S], name: &str, one: R) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v.as_ref() == name)
            .ok_or_else(|| Error::UnmappedVariable(name.to_string()))?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::monomial(vars, e, one)
    }

    pub fn from_terms<S: AsRef<str>, I>(vars: &[S], zero: R, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, R)>,
    {
        let mut p = Self::zero_in(vars, zero);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    p.vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, exps: Vec<i64>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[i64]) -> R {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn coeff_zero(&self) -> &R {
        &self.zero
    }

    /// Lexicographically largest exponent vector with its coefficient.
    pub fn leading_term(&self) -> Option<(&Vec<i64>, &R)> {
        self.terms.iter().next_back()
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(format!("{:?} vs {:?}", self.vars, other.vars)))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&Ring::neg(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new(), zero: self.zero.clone() };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new(), zero: self.zero.clone() };
        for (e, d) in &self.terms {
            out.add_term(e.clone(), d.mul(c));
        }
        out
    }

    /// Multiplies by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        Self { vars: self.vars.clone(), terms, zero: self.zero.clone() }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Re-expresses the polynomial over `new_vars`, which must contain every
    /// variable that occurs with a nonzero exponent.
    pub fn embed<S: AsRef<str>>(&self, new_vars: &[S]) -> Result<Self> {
        let positions: Vec<Option<usize>> =
            self.vars.iter().map(|v| new_vars.iter().position(|w| w.as_ref() == v)).collect();
        let mut out = Self::zero_in(new_vars, self.zero.clone());
        let n = out.vars.len();
        for (e, c) in &self.terms {
            let mut ne = vec![0; n];
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match positions[i] {
                    Some(j) => ne[j] = x,
                    None => return Err(Error::VariableMismatch(format!("`{}` is not in the target", self.vars[i]))),
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Applies a ring homomorphism sending each variable to `c V^{+-1}`.
    pub fn substitute(&self, map: &Substitution<R>) -> Result<Self> {
        let mut images = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            let img = map.images.get(v).ok_or_else(|| Error::UnmappedVariable(v.clone()))?;
            let idx = map
                .targets
                .iter()
                .position(|t| *t == img.target)
                .ok_or_else(|| Error::InvalidSubstitution(format!("target `{}` not among targets", img.target)))?;
            images.push((img, idx));
        }
        let mut out = Self::zero_in(&map.targets, self.zero.clone());
        let n = map.targets.len();
        for (e, c) in &self.terms {
            let mut ne = vec![0; n];
            let mut coeff = c.clone();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let (img, idx) = images[i];
                ne[idx] += x * img.exponent;
                let factor = img
                    .coeff
                    .pow(x)
                    .ok_or_else(|| Error::NotInvertible(format!("image coefficient of `{}`", self.vars[i])))?;
                coeff = coeff.mul(&factor);
            }
            out.add_term(ne, coeff);
        }
        Ok(out)
    }

    pub fn map_coeffs<S: Ring, F: Fn(&R) -> S>(&self, zero: S, f: F) -> Laurent<S> {
        let mut out = Laurent { vars: self.vars.clone(), terms: BTreeMap::new(), zero: zero.zero_like() };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Evaluates at `values` (one per variable) after mapping coefficients.
    pub fn evaluate<S: Ring, F: Fn(&R) -> Option<S>>(&self, values: &[S], zero: S, f: F) -> Option<S> {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = zero.zero_like();
        for (e, c) in &self.terms {
            let mut t = f(c)?;
            for (v, &x) in values.iter().zip(e) {
                if x != 0 {
                    t = t.mul(&v.pow(x)?);
                }
            }
            acc = acc.add(&t);
        }
        Some(acc)
    }

    /// Smallest exponent of each variable (0 for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m = vec![0i64; self.vars.len()];
        for e in self.terms.keys() {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).min(b);
            }
        }
        m
    }

    /// Applies `f` to every exponent vector (must be injective).
    pub(crate) fn map_exponents<F: Fn(&[i64]) -> Vec<i64>>(&self, f: F) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new(), zero: self.zero.clone() };
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }
}

impl<R: Ring> Ring for Laurent<R> {
    fn zero_like(&self) -> Self {
        Self { vars: self.vars.clone(), terms: BTreeMap::new(), zero: self.zero.clone() }
    }
    fn one_like(&self) -> Self {
        Self::constant(&self.vars, self.zero.one_like())
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("Laurent::add on different variable sets")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("Laurent::mul on different variable sets")
    }
    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        Self { vars: self.vars.clone(), terms, zero: self.zero.clone() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Units are monomials with unit coefficients.
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let inv = c.inverse()?;
        let mut out = self.zero_like();
        out.add_term(e.iter().map(|x| -x).collect(), inv);
        Some(out)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", c)?;
            for (v, &x) in self.vars.iter().zip(e) {
                match x {
                    0 => {}
                    1 => write!(f, "*{}", v)?,
                    _ => write!(f, "*{}^{}", v, x)?,
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Laurent").field("vars", &self.vars).field("terms", &self.terms).finish()
    }
}

/// Image `coeff * target^{exponent}` of one variable, with `exponent = +-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct VariableImage<R> {
    pub coeff: R,
    pub target: String,
    pub exponent: i64,
}

/// A variable substitution `V -> c W^{+-1}` inducing a ring homomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution<R> {
    targets: Vec<String>,
    images: BTreeMap<String, VariableImage<R>>,
}

impl<R: Ring> Substitution<R> {
    pub fn new<S: AsRef<str>>(targets: &[S]) -> Self {
        Substitution { targets: targets.iter().map(|s| s.as_ref().to_string()).collect(), images: BTreeMap::new() }
    }

    pub fn identity<S: AsRef<str>>(vars: &[S], one: R) -> Self {
        let mut s = Self::new(vars);
        for v in vars {
            s.images.insert(
                v.as_ref().to_string(),
                VariableImage { coeff: one.clone(), target: v.as_ref().to_string(), exponent: 1 },
            );
        }
        s
    }

    pub fn set(&mut self, var: &str, coeff: R, target: &str, exponent: i64) -> Result<&mut Self> {
        if exponent != 1 && exponent != -1 {
            return Err(Error::InvalidSubstitution(format!("exponent {exponent} is not +-1")));
        }
        if !self.targets.iter().any(|t| t == target) {
            return Err(Error::InvalidSubstitution(format!("target `{target}` not among targets")));
        }
        self.images.insert(var.to_string(), VariableImage { coeff, target: target.to_string(), exponent });
        Ok(self)
    }

    pub fn targets(&self) -> &[String] {
        &self.targets
    }

    pub fn image(&self, var: &str) -> Option<&VariableImage<R>> {
        self.images.get(var)
    }

    pub fn images(&self) -> impl Iterator<Item = (&String, &VariableImage<R>)> {
        self.images.iter()
    }

    pub fn map_coeffs<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> Substitution<S> {
        Substitution {
            targets: self.targets.clone(),
            images: self
                .images
                .iter()
                .map(|(k, v)| {
                    (k.clone(), VariableImage { coeff: f(&v.coeff), target: v.target.clone(), exponent: v.exponent })
                })
                .collect(),
        }
    }
}

impl MultiLaurent {
    pub fn zero_q<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::zero_in(vars, QHalf::zero())
    }

    pub fn one_q<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, QHalf::one())
    }

    pub fn var_q<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        Self::variable(vars, name, QHalf::one())
    }

    /// Value in `Z/m` at the named point, with `q^{1/2} = sqrt_q`.
    pub fn eval_zmod(&self, point: &BTreeMap<String, ZMod>, sqrt_q: &ZMod) -> Result<ZMod> {
        let values = self
            .vars
            .iter()
            .map(|v| point.get(v).cloned().ok_or_else(|| Error::UnmappedVariable(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.evaluate(&values, sqrt_q.zero_like(), |c| c.eval_zmod(sqrt_q))
            .ok_or_else(|| Error::NotInvertible("evaluation point".into()))
    }
}

/// Coefficientwise sum of two polynomials in the same variables.
pub fn ml_add(a: &MultiLaurent, b: &MultiLaurent) -> Result<MultiLaurent> {
    a.try_add(b)
}

pub fn ml_mul(a: &MultiLaurent, b: &MultiLaurent) -> Result<MultiLaurent> {
    a.try_mul(b)
}

pub fn ml_substitute(p: &MultiLaurent, map: &Substitution<QHalf>) -> Result<MultiLaurent> {
    p.substitute(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn vars2() -> Vec<String> {
        var_names("Y", 2)
    }

    fn y(i: usize) -> MultiLaurent {
        MultiLaurent::var_q(&vars2(), &format!("Y{i}")).unwrap()
    }

    #[test]
    fn add_examples() {
        let s = ml_add(&y(1), &y(2)).unwrap();
        assert_eq!(s.num_terms(), 2);
        let t = ml_add(&s, &y(2).neg()).unwrap();
        assert_eq!(t, y(1));
        let h = y(1).scale(&QHalf::q_half_power(1));
        let d = ml_add(&h, &h).unwrap();
        assert_eq!(d, y(1).scale(&QHalf::monomial(BigInt::from(2), 1)));
    }

    #[test]
    fn mul_examples() {
        let inv = y(1).inverse().unwrap();
        assert_eq!(ml_mul(&y(1), &inv).unwrap(), MultiLaurent::one_q(&vars2()));
        let s = y(1).add(&y(2));
        let sq = ml_mul(&s, &s).unwrap();
        let expected = y(1).mul(&y(1)).add(&y(1).mul(&y(2)).scale(&QHalf::from_int(2))).add(&y(2).mul(&y(2)));
        assert_eq!(sq, expected);
        let a = y(1).scale(&QHalf::q_half_power(1));
        let b = y(2).scale(&QHalf::q_half_power(1));
        assert_eq!(ml_mul(&a, &b).unwrap(), y(1).mul(&y(2)).scale(&QHalf::q_power(1)));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let other = MultiLaurent::var_q(&["X1"], "X1").unwrap();
        assert!(matches!(ml_add(&y(1), &other), Err(Error::VariableMismatch(_))));
        assert!(matches!(ml_mul(&y(1), &other), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn substitution_examples() {
        let targets = ["W1", "Z1"];
        let mut s = Substitution::new(&targets);
        s.set("Y1", QHalf::q_half_power(1), "Z1", 1).unwrap();
        s.set("Y2", QHalf::q_half_power(-1), "W1", 1).unwrap();
        let img = ml_substitute(&y(1).add(&y(2)), &s).unwrap();
        let expected = MultiLaurent::var_q(&targets, "Z1")
            .unwrap()
            .scale(&QHalf::q_half_power(1))
            .add(&MultiLaurent::var_q(&targets, "W1").unwrap().scale(&QHalf::q_half_power(-1)));
        assert_eq!(img, expected);

        let mut b = Substitution::new(&["X1"]);
        b.set("Y1", QHalf::one(), "X1", 1).unwrap();
        b.set("Y2", QHalf::one(), "X1", -1).unwrap();
        assert_eq!(ml_substitute(&y(1).mul(&y(2)), &b).unwrap(), MultiLaurent::one_q(&["X1"]));

        let p = y(1).mul(&y(2).inverse().unwrap()).add(&y(2).scale(&QHalf::q_power(3)));
        let id = Substitution::identity(&vars2(), QHalf::one());
        assert_eq!(ml_substitute(&p, &id).unwrap(), p);
    }

    #[test]
    fn substitution_errors() {
        let mut s = Substitution::new(&["W1"]);
        s.set("Y1", QHalf::one(), "W1", 1).unwrap();
        assert!(matches!(ml_substitute(&y(1), &s), Err(Error::UnmappedVariable(_))));
        assert!(s.set("Y2", QHalf::one(), "Q", 1).is_err());
        assert!(s.set("Y2", QHalf::one(), "W1", 2).is_err());
    }

    #[test]
    fn embed_reorders() {
        let p = y(2).scale(&QHalf::from_int(3));
        let e = p.embed(&["Y2", "Y3", "Y1"]).unwrap();
        assert_eq!(e.coefficient(&[1, 0, 0]), QHalf::from_int(3));
        assert!(y(1).embed(&["Y2"]).is_err());
    }
}
