//! Hecke polynomials `X^m - a_1 X^{m-1} + .. + (-1)^j q^{j(j-1)/2} a_j X^{m-j} + ..`
//! over any commutative coefficient ring, and the operations relating them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::laurent::MultiLaurent;
use crate::ring::{Ring, ZMod};
use crate::satake::{
    levi_block_vars, levi_t_basis, parabolic_satake_gl, satake_gl_basis, unitary_basis, unitary_satake, validate_partition,
    GroupDescriptor, Side, UnitaryCase,
};
use crate::scalar::QHalf;

/// A monic polynomial; `coeffs[k]` is the coefficient of `X^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckePoly<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> HeckePoly<R> {
    /// Builds from low-to-high coefficients; the top one must be 1.
    pub fn from_coeffs(coeffs: Vec<R>) -> Result<Self> {
        match coeffs.last() {
            Some(top) if *top == top.one_like() => Ok(HeckePoly { coeffs }),
            _ => Err(Error::Precondition("polynomial is not monic".into())),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `X^k`.
    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut out = alloc::vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        HeckePoly { coeffs: out }
    }

    /// Multiplies the coefficient of `X^{m-j}` by `factor(j)`.
    fn scale_by_codegree<F: Fn(usize) -> Result<R>>(&self, factor: F) -> Result<Self> {
        let m = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| Ok(c.mul(&factor(m - k)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(HeckePoly { coeffs })
    }

    /// The Hecke values `a_1..a_m` with `self = char_poly(a, q)`.
    pub fn hecke_values(&self, q: &R) -> Result<Vec<R>> {
        let m = self.degree();
        (1..=m)
            .map(|j| {
                let sign = if j % 2 == 1 { q.one_like().neg() } else { q.one_like() };
                let qp = q
                    .pow(-((j * (j - 1) / 2) as i64))
                    .ok_or_else(|| Error::NotInvertible("q".into()))?;
                Ok(self.coeffs[m - j].mul(&sign).mul(&qp))
            })
            .collect()
    }

    /// `P^vee(X) = c_0^{-1} X^m P(X^{-1})`, monic of the same degree.
    pub fn dual(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inverse().ok_or_else(|| Error::NotInvertible("constant coefficient".into()))?;
        let coeffs = self.coeffs.iter().rev().map(|c| c.mul(&c0)).collect();
        Ok(HeckePoly { coeffs })
    }

    /// Scales the degree-`j` Hecke value by `q^{kj}` (twist by `eps^{-k}`).
    pub fn cyclotomic_twist(&self, k: i64, q: &R) -> Result<Self> {
        self.scale_by_codegree(|j| q.pow(k * j as i64).ok_or_else(|| Error::NotInvertible("q".into())))
    }

    /// `c^m P(c^{-1} X)`: the degree-`j` Hecke value scales by `c^j`.
    pub fn character_twist(&self, c: &R) -> Result<Self> {
        if c.inverse().is_none() {
            return Err(Error::NotInvertible("character value".into()));
        }
        self.scale_by_codegree(|j| Ok(c.pow(j as i64).expect("nonnegative power")))
    }

    /// `P(c X)` rescaled to be monic again: `c^{-m} P(c X)`.
    pub fn rescale_variable(&self, c: &R) -> Result<Self> {
        let inv = c.inverse().ok_or_else(|| Error::NotInvertible("scaling".into()))?;
        self.character_twist(&inv)
    }

    /// Multiplies every coefficient by `c` (the result is no longer monic
    /// unless `c = 1`, so it is returned as raw coefficients).
    pub fn scaled_coeffs(&self, c: &R) -> Vec<R> {
        self.coeffs.iter().map(|x| x.mul(c)).collect()
    }
}

/// `X^m + sum_{j>=1} (-1)^j q^{j(j-1)/2} a_j X^{m-j}`.
pub fn char_poly<R: Ring>(values: &[R], q: &R) -> HeckePoly<R> {
    let m = values.len();
    let one = q.one_like();
    let mut coeffs = alloc::vec![q.zero_like(); m + 1];
    coeffs[m] = one.clone();
    for (idx, a) in values.iter().enumerate() {
        let j = idx + 1;
        let sign = if j % 2 == 1 { one.neg() } else { one.clone() };
        let qp = q.pow((j * (j - 1) / 2) as i64).expect("nonnegative power");
        coeffs[m - j] = sign.mul(&qp).mul(a);
    }
    HeckePoly { coeffs }
}

/// `char_poly(a_{m-1}/a_m, .., a_1/a_m, 1/a_m)`: the polynomial of the
/// dual twisted by `eps^{1-m}`.
pub fn dual_twist_char_poly<R: Ring>(values: &[R], q: &R) -> Result<HeckePoly<R>> {
    Ok(char_poly(&dual_twist_values(values)?, q))
}

pub fn dual_twist_values<R: Ring>(values: &[R]) -> Result<Vec<R>> {
    let m = values.len();
    let top = values.last().ok_or_else(|| Error::Precondition("empty value list".into()))?;
    let inv = top.inverse().ok_or_else(|| Error::NotInvertible("top Hecke value".into()))?;
    Ok((1..=m)
        .map(|j| if j == m { inv.clone() } else { values[m - j - 1].mul(&inv) })
        .collect())
}

/// Characteristic polynomial of `(+)_i rho_i (x) eps^{-(n_{i+1}+..+n_s)}`.
pub fn eisenstein_char_poly<R: Ring>(blocks: &[HeckePoly<R>], n: usize, q: &R) -> Result<HeckePoly<R>> {
    let total: usize = blocks.iter().map(|b| b.degree()).sum();
    if total != n || blocks.is_empty() {
        return Err(Error::InvalidPartition(format!("block degrees sum to {total}, expected {n}")));
    }
    let mut after = total;
    let mut acc: Option<HeckePoly<R>> = None;
    for b in blocks {
        after -= b.degree();
        let t = b.cyclotomic_twist(after as i64, q)?;
        acc = Some(match acc {
            None => t,
            Some(a) => a.mul(&t),
        });
    }
    Ok(acc.expect("nonempty"))
}

/// The Eisenstein polynomial of the blocks and the polynomial of the
/// parabolic Satake pullback, at one numeric point.
#[derive(Clone, Debug, PartialEq)]
pub struct EisensteinCheck {
    pub eisenstein: HeckePoly<ZMod>,
    pub pullback: HeckePoly<ZMod>,
}

impl EisensteinCheck {
    pub fn agree(&self) -> bool {
        self.eisenstein == self.pullback
    }
}

/// Evaluates both sides at Levi Satake parameters `z` (block by block, in
/// partition order) and `q^{1/2} = sqrt_q`.
pub fn eisenstein_consistency(partition: &[usize], z: &[ZMod], sqrt_q: &ZMod) -> Result<EisensteinCheck> {
    let n: usize = partition.iter().sum();
    validate_partition(n, partition)?;
    if z.len() != n {
        return Err(Error::Dimension(format!("{} Satake parameters for rank {n}", z.len())));
    }
    let q = sqrt_q.mul(sqrt_q);
    let blocks = levi_block_vars(partition);
    let point: BTreeMap<String, ZMod> = blocks.iter().flatten().cloned().zip(z.iter().cloned()).collect();
    let values = (1..=n)
        .map(|i| parabolic_satake_gl(n, partition, &satake_gl_basis(n, i)?)?.poly().eval_zmod(&point, sqrt_q))
        .collect::<Result<Vec<_>>>()?;
    let pullback = char_poly(&values, &q);
    let mut offset = 0;
    let mut block_polys = Vec::with_capacity(partition.len());
    for &k in partition {
        let local: BTreeMap<String, ZMod> = (1..=k).map(|j| (format!("Y{j}"), z[offset + j - 1])).collect();
        let vals = (1..=k)
            .map(|i| satake_gl_basis(k, i)?.poly().eval_zmod(&local, sqrt_q))
            .collect::<Result<Vec<_>>>()?;
        block_polys.push(char_poly(&vals, &q));
        offset += k;
    }
    let eisenstein = eisenstein_char_poly(&block_polys, n, &q)?;
    Ok(EisensteinCheck { eisenstein, pullback })
}

/// `P_{G,w}` with Satake-coordinate coefficients on the unitary group.
pub fn build_p_g(case: UnitaryCase, n: usize) -> Result<HeckePoly<MultiLaurent>> {
    let values = (1..=2 * n)
        .map(|i| Ok(unitary_basis(case, n, i)?.into_poly()))
        .collect::<Result<Vec<_>>>()?;
    let vars = GroupDescriptor::unitary(case, n).variables();
    Ok(char_poly(&values, &MultiLaurent::constant(&vars, QHalf::q_power(1))))
}

/// `P_{M,w}` (side `W`) or `P_{M,w^c}` (side `Wc`) on `Res GL_n`.
pub fn build_p_m(case: UnitaryCase, n: usize, side: Side) -> Result<HeckePoly<MultiLaurent>> {
    let values = (1..=n)
        .map(|i| Ok(levi_t_basis(case, n, i, side)?.into_poly()))
        .collect::<Result<Vec<_>>>()?;
    let vars = GroupDescriptor::res_gl(case, n).variables();
    Ok(char_poly(&values, &MultiLaurent::constant(&vars, QHalf::q_power(1))))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationReport {
    pub ok: bool,
    /// Coefficients of `S_v P_{G,w}`, low to high.
    pub lhs: Vec<MultiLaurent>,
    /// Coefficients of `P_{M,w}(X) q^{n(2n-1)} P^vee_{M,w^c}(q^{1-2n} X)`.
    pub rhs: Vec<MultiLaurent>,
}

/// Checks `S_v P_{G,w}(X) = P_{M,w}(X) q^{n(2n-1)} P^vee_{M,w^c}(q^{1-2n} X)`
/// by exact expansion.
pub fn verify_factorization(n: usize, case: UnitaryCase) -> Result<FactorizationReport> {
    let pg = build_p_g(case, n)?;
    let g = GroupDescriptor::unitary(case, n);
    let lhs = pg
        .coeffs()
        .iter()
        .map(|c| {
            let h = crate::satake::HeckeElement::new(g.clone(), c.clone())?;
            Ok(unitary_satake(case, n, &h)?.into_poly())
        })
        .collect::<Result<Vec<_>>>()?;

    let vars = GroupDescriptor::res_gl(case, n).variables();
    let q = MultiLaurent::constant(&vars, QHalf::q_power(1));
    let pm = build_p_m(case, n, Side::W)?;
    let dual = build_p_m(case, n, Side::Wc)?.dual()?;
    // P^vee(c X) = c^m * (c^{-m} P^vee(c X)), with c = q^{1-2n}, m = n.
    let c = q.pow(1 - 2 * n as i64).ok_or_else(|| Error::NotInvertible("q".into()))?;
    let rescaled = dual.rescale_variable(&c)?;
    let prefactor = q
        .pow((n * (2 * n - 1)) as i64)
        .and_then(|x| c.pow(n as i64).map(|y| x.mul(&y)))
        .ok_or_else(|| Error::NotInvertible("q".into()))?;
    let rhs_poly = pm.mul(&rescaled);
    let rhs = rhs_poly.scaled_coeffs(&prefactor);
    Ok(FactorizationReport { ok: lhs == rhs, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ZMod;
    use alloc::vec;

    fn z(v: i64) -> ZMod {
        ZMod::new(v, 101)
    }

    #[test]
    fn char_poly_examples() {
        let q = z(7);
        let p = char_poly(&[z(3), z(5)], &q);
        assert_eq!(p.coeffs(), &[z(35), z(-3), z(1)]);
        assert_eq!(char_poly(&[z(4)], &q).coeffs(), &[z(-4), z(1)]);
        let p3 = char_poly(&[z(2), z(3), z(4)], &q);
        assert_eq!(p3.coeffs(), &[z(-343 * 4), z(21), z(-2), z(1)]);
        assert_eq!(p3.hecke_values(&q).unwrap(), vec![z(2), z(3), z(4)]);
    }

    #[test]
    fn dual_examples() {
        let t = z(9);
        let p = HeckePoly::from_coeffs(vec![t.neg(), z(1)]).unwrap();
        assert_eq!(p.dual().unwrap().coeffs(), &[t.inverse().unwrap().neg(), z(1)]);
        let (a, b, q) = (z(5), z(6), z(7));
        let p = char_poly(&[a, b], &q);
        let d = p.dual().unwrap();
        let qi = q.inverse().unwrap();
        let bi = b.inverse().unwrap();
        assert_eq!(d.coeffs(), &[qi.mul(&bi), qi.mul(&a).mul(&bi).neg(), z(1)]);
        assert_eq!(d.dual().unwrap(), p);
        let singular = HeckePoly::from_coeffs(vec![z(0), z(1)]).unwrap();
        assert!(matches!(singular.dual(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn dual_twist_examples() {
        let (a1, a2, q) = (z(5), z(6), z(7));
        let p = dual_twist_char_poly(&[a1, a2], &q).unwrap();
        let inv = a2.inverse().unwrap();
        assert_eq!(p, char_poly(&[a1.mul(&inv), inv], &q));
        assert_eq!(dual_twist_char_poly(&[a1], &q).unwrap(), char_poly(&[a1.inverse().unwrap()], &q));
        let twice = dual_twist_values(&dual_twist_values(&[a1, a2]).unwrap()).unwrap();
        assert_eq!(twice, vec![a1, a2]);
        assert!(dual_twist_char_poly(&[a1, z(0)], &q).is_err());
    }

    #[test]
    fn twist_examples() {
        let (a1, a2, q) = (z(5), z(6), z(7));
        let p = char_poly(&[a1, a2], &q);
        assert_eq!(p.cyclotomic_twist(0, &q).unwrap(), p);
        let t = p.cyclotomic_twist(1, &q).unwrap();
        assert_eq!(t, char_poly(&[q.mul(&a1), q.pow(2).unwrap().mul(&a2)], &q));
        assert_eq!(t.cyclotomic_twist(-1, &q).unwrap(), p);
        assert_eq!(p.character_twist(&z(1)).unwrap(), p);
        let lin = char_poly(&[a1], &q).character_twist(&z(3)).unwrap();
        assert_eq!(lin.coeffs(), &[z(-15), z(1)]);
        assert!(p.character_twist(&z(0)).is_err());
    }

    #[test]
    fn eisenstein_examples() {
        let q = z(7);
        let p1 = char_poly(&[z(5), z(6)], &q);
        assert_eq!(eisenstein_char_poly(core::slice::from_ref(&p1), 2, &q).unwrap(), p1);
        let (a, b) = (z(5), z(6));
        let e = eisenstein_char_poly(&[char_poly(&[a], &q), char_poly(&[b], &q)], 2, &q).unwrap();
        assert_eq!(e.coeffs(), &[q.mul(&a).mul(&b), q.mul(&a).add(&b).neg(), z(1)]);
        assert!(eisenstein_char_poly(&[p1], 3, &q).is_err());
    }

    #[test]
    fn eisenstein_matches_pullback() {
        let (a, b, s) = (z(5), z(6), z(10));
        let q = s.mul(&s);
        let c = eisenstein_consistency(&[1, 1], &[a, b], &s).unwrap();
        assert!(c.agree());
        assert_eq!(c.pullback.coeffs(), &[q.mul(&a).mul(&b), q.mul(&a).add(&b).neg(), z(1)]);
        for part in [vec![3], vec![2, 1], vec![1, 2], vec![1, 1, 1]] {
            assert!(eisenstein_consistency(&part, &[z(2), z(3), z(7)], &s).unwrap().agree());
        }
    }

    #[test]
    fn build_examples() {
        let pm = build_p_m(UnitaryCase::Split, 1, Side::W).unwrap();
        let v = GroupDescriptor::res_gl(UnitaryCase::Split, 1).variables();
        assert_eq!(pm.coeff(0), &MultiLaurent::var_q(&v, "W1").unwrap().neg());
        let pg = build_p_g(UnitaryCase::Split, 1).unwrap();
        let y = GroupDescriptor::unitary(UnitaryCase::Split, 1).variables();
        let y1 = MultiLaurent::var_q(&y, "Y1").unwrap();
        let y2 = MultiLaurent::var_q(&y, "Y2").unwrap();
        assert_eq!(pg.coeff(1), &y1.add(&y2).scale(&QHalf::q_half_power(1)).neg());
        assert_eq!(pg.coeff(0), &y1.mul(&y2).scale(&QHalf::q_power(1)));
        let pm2 = build_p_m(UnitaryCase::Split, 2, Side::W).unwrap();
        let v2 = GroupDescriptor::res_gl(UnitaryCase::Split, 2).variables();
        let w1 = MultiLaurent::var_q(&v2, "W1").unwrap();
        let w2 = MultiLaurent::var_q(&v2, "W2").unwrap();
        assert_eq!(pm2.coeff(1), &w1.add(&w2).scale(&QHalf::q_half_power(1)).neg());
        assert_eq!(pm2.coeff(0), &w1.mul(&w2).scale(&QHalf::q_power(1)));
    }

    #[test]
    fn factorization_small_cases() {
        for case in [UnitaryCase::Split, UnitaryCase::Inert] {
            for n in 1..=2 {
                let r = verify_factorization(n, case).unwrap();
                assert!(r.ok, "n={n} {case:?}: {:?} vs {:?}", r.lhs, r.rhs);
            }
        }
    }
}
