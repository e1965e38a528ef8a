//! Commutative coefficient rings.
//!
//! Several values here carry context (the modulus of [`ZMod`], the radicand
//! of [`QSqrt`], the variable list of a Laurent polynomial), so the ring
//! constants are produced from an existing element rather than from a type.

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Ring: Clone + PartialEq + fmt::Debug {
    /// The zero of the ring `self` lives in.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, when it exists.
    fn inverse(&self) -> Option<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn from_i64_like(&self, k: i64) -> Self {
        let mut acc = self.zero_like();
        let mut base = if k < 0 { self.one_like().neg() } else { self.one_like() };
        let mut m = k.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.add(&base);
            }
            base = base.add(&base);
            m >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents need an inverse.
    fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = self.one_like();
        let mut sq = base;
        let mut m = k.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&sq);
            }
            m >>= 1;
            if m > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }
}

/// Residue class modulo `modulus` (any modulus below `2^63`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZMod {
    value: u64,
    modulus: u64,
}

impl ZMod {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!((1..(1 << 63)).contains(&modulus), "modulus out of range");
        let v = value.rem_euclid(modulus as i64) as u64;
        ZMod { value: v, modulus }
    }

    pub fn from_u64(value: u64, modulus: u64) -> Self {
        assert!((1..(1 << 63)).contains(&modulus), "modulus out of range");
        ZMod { value: value % modulus, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }
}

impl fmt::Debug for ZMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl fmt::Display for ZMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Inverse of `a` modulo `m` by extended Euclid.
pub(crate) fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

impl Ring for ZMod {
    fn zero_like(&self) -> Self {
        ZMod { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        ZMod::from_u64(1, self.modulus)
    }
    fn add(&self, other: &Self) -> Self {
        self.check(other);
        let s = (self.value as u128 + other.value as u128) % self.modulus as u128;
        ZMod { value: s as u64, modulus: self.modulus }
    }
    fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let s = (self.value as u128 * other.value as u128) % self.modulus as u128;
        ZMod { value: s as u64, modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        ZMod { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn inverse(&self) -> Option<Self> {
        inverse_mod(self.value, self.modulus).map(|v| ZMod { value: v, modulus: self.modulus })
    }
}

/// Element `a + b sqrt(r)` of the quadratic field `Q(sqrt r)`, `r` a prime.
///
/// Normalized Satake images evaluated at `q = p` land here.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSqrt {
    radicand: u64,
    a: BigRational,
    b: BigRational,
}

impl QSqrt {
    pub fn new(radicand: u64, a: BigRational, b: BigRational) -> Self {
        QSqrt { radicand, a, b }
    }

    pub fn from_int(radicand: u64, k: i64) -> Self {
        QSqrt::new(radicand, BigRational::from_integer(k.into()), BigRational::zero())
    }

    pub fn from_bigint(radicand: u64, k: BigInt) -> Self {
        QSqrt::new(radicand, BigRational::from_integer(k), BigRational::zero())
    }

    /// `p^{h/2}` for an integer `h`.
    pub fn half_power(radicand: u64, h: i64) -> Self {
        let p = BigInt::from(radicand);
        let k = h.div_euclid(2);
        let odd = h.rem_euclid(2) == 1;
        let mag = num_traits::pow::pow(p, k.unsigned_abs() as usize);
        let r = if k < 0 {
            BigRational::new(BigInt::one(), mag)
        } else {
            BigRational::from_integer(mag)
        };
        if odd {
            QSqrt::new(radicand, BigRational::zero(), r)
        } else {
            QSqrt::new(radicand, r, BigRational::zero())
        }
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.b.is_zero() && self.a.is_integer() {
            Some(self.a.to_integer())
        } else {
            None
        }
    }
}

impl fmt::Debug for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt({})", self.b, self.radicand),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}*sqrt({})", self.a, sign, self.b.abs(), self.radicand)
            }
        }
    }
}

impl Ring for QSqrt {
    fn zero_like(&self) -> Self {
        QSqrt::from_int(self.radicand, 0)
    }
    fn one_like(&self) -> Self {
        QSqrt::from_int(self.radicand, 1)
    }
    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.radicand, other.radicand, "mixed radicands");
        QSqrt::new(self.radicand, &self.a + &other.a, &self.b + &other.b)
    }
    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.radicand, other.radicand, "mixed radicands");
        let r = BigRational::from_integer(self.radicand.into());
        let a = &self.a * &other.a + &self.b * &other.b * r;
        let b = &self.a * &other.b + &self.b * &other.a;
        QSqrt::new(self.radicand, a, b)
    }
    fn neg(&self) -> Self {
        QSqrt::new(self.radicand, -self.a.clone(), -self.b.clone())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let r = BigRational::from_integer(self.radicand.into());
        // r is prime, so a^2 - r b^2 vanishes only at zero.
        let norm = &self.a * &self.a - &self.b * &self.b * r;
        Some(QSqrt::new(self.radicand, &self.a / &norm, -(&self.b / &norm)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_inverse_and_pow() {
        let x = ZMod::new(3, 101);
        let inv = x.inverse().unwrap();
        assert_eq!(x.mul(&inv), x.one_like());
        assert_eq!(x.pow(-2).unwrap().mul(&x.pow(2).unwrap()), x.one_like());
        assert!(ZMod::new(2, 4).inverse().is_none());
        assert_eq!(ZMod::new(-1, 7).value(), 6);
    }

    #[test]
    fn from_i64_matches_repeated_addition() {
        let x = ZMod::new(0, 13);
        assert_eq!(x.from_i64_like(-5), ZMod::new(8, 13));
        assert_eq!(x.from_i64_like(40), ZMod::new(1, 13));
    }

    #[test]
    fn qsqrt_half_powers() {
        let s = QSqrt::half_power(3, 1);
        assert_eq!(s.mul(&s), QSqrt::from_int(3, 3));
        let t = QSqrt::half_power(3, -3);
        assert_eq!(t.mul(&QSqrt::half_power(3, 3)), QSqrt::from_int(3, 1));
        let u = QSqrt::from_int(5, 2).add(&QSqrt::half_power(5, 1));
        assert_eq!(u.mul(&u.inverse().unwrap()), u.one_like());
    }
}
