//! The scalar ring `Z[q^{1/2}, q^{-1/2}]`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ring::{QSqrt, Ring, ZMod};

/// A Laurent polynomial in `q^{1/2}` with integer coefficients.
///
/// Keys are doubled exponents: the key `h` stands for `q^{h/2}`. No zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QHalf {
    terms: BTreeMap<i64, BigInt>,
}

impl QHalf {
    pub fn zero() -> Self {
        QHalf { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    /// `c q^{h/2}`.
    pub fn monomial(c: BigInt, h: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(h, c);
        }
        QHalf { terms }
    }

    /// `q^{h/2}`.
    pub fn q_half_power(h: i64) -> Self {
        Self::monomial(BigInt::one(), h)
    }

    /// `q^k`.
    pub fn q_power(k: i64) -> Self {
        Self::q_half_power(2 * k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut out = QHalf::zero();
        for (h, c) in terms {
            out.add_term(h, &c);
        }
        out
    }

    fn add_term(&mut self, h: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(h).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&h);
        }
    }

    /// Iterates `(doubled exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(h, c)| (*h, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return QHalf::zero();
        }
        QHalf { terms: self.terms.iter().map(|(h, c)| (*h, c * k)).collect() }
    }

    /// Multiplies by `q^{h/2}`.
    pub fn shift(&self, h: i64) -> Self {
        QHalf { terms: self.terms.iter().map(|(e, c)| (e + h, c.clone())).collect() }
    }

    /// Whether every exponent is an integer power of `q`.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|h| h % 2 == 0)
    }

    /// Evaluates at `q^{1/2} = sqrt_q`. Negative powers need `sqrt_q` invertible.
    pub fn eval_zmod(&self, sqrt_q: &ZMod) -> Option<ZMod> {
        let mut acc = sqrt_q.zero_like();
        for (h, c) in &self.terms {
            let m = sqrt_q.modulus() as i64;
            let cm = ZMod::new((c % BigInt::from(m)).try_into().ok()?, sqrt_q.modulus());
            acc = acc.add(&cm.mul(&sqrt_q.pow(*h)?));
        }
        Some(acc)
    }

    /// Evaluates at `q = p`, keeping `p^{1/2}` exact.
    pub fn eval_at_prime(&self, p: u64) -> QSqrt {
        let mut acc = QSqrt::from_int(p, 0);
        for (h, c) in &self.terms {
            acc = acc.add(&QSqrt::from_bigint(p, c.clone()).mul(&QSqrt::half_power(p, *h)));
        }
        acc
    }
}

impl Ring for QHalf {
    fn zero_like(&self) -> Self {
        QHalf::zero()
    }
    fn one_like(&self) -> Self {
        QHalf::one()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(*h, c);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = QHalf::zero();
        for (h1, c1) in &self.terms {
            for (h2, c2) in &other.terms {
                out.add_term(h1 + h2, &(c1 * c2));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        QHalf { terms: self.terms.iter().map(|(h, c)| (*h, -c)).collect() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Units are exactly `+-q^{h/2}`.
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (h, c) = self.terms.iter().next()?;
        if c.abs().is_one() {
            Some(QHalf::monomial(c.clone(), -h))
        } else {
            None
        }
    }
}

fn fmt_exponent(h: i64) -> String {
    let mut s = String::new();
    if h % 2 == 0 {
        let _ = write!(s, "{}", h / 2);
    } else {
        let _ = write!(s, "{}/2", h);
    }
    s
}

impl fmt::Display for QHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (h, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (*h, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (2, true) => write!(f, "q")?,
                (2, false) => write!(f, "{}q", mag)?,
                (_, true) => write!(f, "q^{}", fmt_exponent(*h))?,
                (_, false) => write!(f, "{}q^{}", mag, fmt_exponent(*h))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
