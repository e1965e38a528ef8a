//! Hecke operators of `GL_n` and `U(n, n)` in Satake coordinates, and the
//! unnormalized Satake transforms to Levi subgroups.
//!
//! Variable families: `Y1..` for `GL_n` and split unitary groups, `X1..`
//! for inert unitary groups, `W1.. / Z1..` for `Res GL_n`, and `Zb_j` for
//! the `j`-th variable of block `b` of a `GL_n` Levi subgroup. The symbol
//! `q` in scalars is the residue cardinality named by [`Residue`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::laurent::{var_names, MultiLaurent, Substitution};
use crate::scalar::QHalf;
use crate::weyl::{elementary_symmetric, is_invariant, WeylGroupAction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Residue {
    /// `q_v`, the residue field size of `F^+_v`.
    Qv,
    /// `q_w`; equal to `q_v` at split places and to `q_v^2` at inert ones.
    Qw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnitaryCase {
    Split,
    Inert,
}

/// The two Levi factors `T_{M,w,i}` (side `W`) and `T_{M,w^c,i}` (side `Wc`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    W,
    Wc,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupKind {
    GL(usize),
    UnitarySplit(usize),
    UnitaryInert(usize),
    LeviGL(Vec<usize>),
    ResGL { n: usize, case: UnitaryCase },
    Torus(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
    pub residue: Residue,
}

pub fn validate_partition(n: usize, partition: &[usize]) -> Result<()> {
    if partition.contains(&0) {
        return Err(Error::InvalidPartition(format!("{partition:?} has a zero part")));
    }
    let s: usize = partition.iter().sum();
    if s != n {
        return Err(Error::InvalidPartition(format!("{partition:?} does not sum to {n}")));
    }
    Ok(())
}

pub fn levi_block_vars(partition: &[usize]) -> Vec<Vec<String>> {
    partition
        .iter()
        .enumerate()
        .map(|(b, &k)| (1..=k).map(|j| format!("Z{}_{}", b + 1, j)).collect())
        .collect()
}

impl GroupDescriptor {
    pub fn gl(n: usize) -> Self {
        GroupDescriptor { kind: GroupKind::GL(n), residue: Residue::Qv }
    }

    pub fn unitary(case: UnitaryCase, n: usize) -> Self {
        let kind = match case {
            UnitaryCase::Split => GroupKind::UnitarySplit(n),
            UnitaryCase::Inert => GroupKind::UnitaryInert(n),
        };
        GroupDescriptor { kind, residue: Residue::Qw }
    }

    pub fn levi_gl(partition: &[usize]) -> Result<Self> {
        validate_partition(partition.iter().sum(), partition)?;
        Ok(GroupDescriptor { kind: GroupKind::LeviGL(partition.to_vec()), residue: Residue::Qv })
    }

    pub fn res_gl(case: UnitaryCase, n: usize) -> Self {
        GroupDescriptor { kind: GroupKind::ResGL { n, case }, residue: Residue::Qw }
    }

    pub fn torus(rank: usize) -> Self {
        GroupDescriptor { kind: GroupKind::Torus(rank), residue: Residue::Qv }
    }

    /// Satake variables in their fixed order.
    pub fn variables(&self) -> Vec<String> {
        match &self.kind {
            GroupKind::GL(n) | GroupKind::Torus(n) => var_names("Y", *n),
            GroupKind::UnitarySplit(n) => var_names("Y", 2 * n),
            GroupKind::UnitaryInert(n) => var_names("X", *n),
            GroupKind::LeviGL(parts) => levi_block_vars(parts).into_iter().flatten().collect(),
            GroupKind::ResGL { n, case: UnitaryCase::Split } => {
                let mut v = var_names("W", *n);
                v.extend(var_names("Z", *n));
                v
            }
            GroupKind::ResGL { n, case: UnitaryCase::Inert } => var_names("W", *n),
        }
    }

    /// Weyl group actions whose common invariants form the Satake image.
    pub fn weyl_actions(&self) -> Vec<WeylGroupAction> {
        match &self.kind {
            GroupKind::GL(_) | GroupKind::UnitarySplit(_) => {
                alloc::vec![WeylGroupAction::symmetric(&self.variables())]
            }
            GroupKind::UnitaryInert(_) => alloc::vec![WeylGroupAction::hyperoctahedral(&self.variables())],
            GroupKind::LeviGL(parts) => {
                levi_block_vars(parts).iter().map(|b| WeylGroupAction::symmetric(b)).collect()
            }
            GroupKind::ResGL { n, case: UnitaryCase::Split } => alloc::vec![
                WeylGroupAction::symmetric(&var_names("W", *n)),
                WeylGroupAction::symmetric(&var_names("Z", *n)),
            ],
            GroupKind::ResGL { n, case: UnitaryCase::Inert } => {
                alloc::vec![WeylGroupAction::symmetric(&var_names("W", *n))]
            }
            GroupKind::Torus(_) => alloc::vec![],
        }
    }

    /// Number of Satake variables.
    pub fn rank(&self) -> usize {
        self.variables().len()
    }
}

/// A Hecke operator given by its Satake image; invariance is checked on
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement {
    group: GroupDescriptor,
    poly: MultiLaurent,
}

impl HeckeElement {
    pub fn new(group: GroupDescriptor, poly: MultiLaurent) -> Result<Self> {
        let vars = group.variables();
        if poly.vars() != vars.as_slice() {
            return Err(Error::VariableMismatch(format!("{:?} vs {:?}", poly.vars(), vars)));
        }
        for action in group.weyl_actions() {
            if !is_invariant(&poly, &action) {
                return Err(Error::NotInvariant(format!("{:?} under {:?}", group.kind, action.kind)));
            }
        }
        Ok(HeckeElement { group, poly })
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn poly(&self) -> &MultiLaurent {
        &self.poly
    }

    pub fn into_poly(self) -> MultiLaurent {
        self.poly
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::VariableMismatch(format!("{:?} vs {:?}", self.group, other.group)));
        }
        Ok(HeckeElement { group: self.group.clone(), poly: self.poly.try_mul(&other.poly)? })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::VariableMismatch(format!("{:?} vs {:?}", self.group, other.group)));
        }
        Ok(HeckeElement { group: self.group.clone(), poly: self.poly.try_add(&other.poly)? })
    }
}

fn check_index(i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        Err(Error::IndexOutOfRange { index: i, max })
    } else {
        Ok(())
    }
}

/// `q^{i(n-i)/2} e_i(Y_1..Y_n)`, the image of `T^i` for `GL_n`.
pub fn satake_gl_basis(n: usize, i: usize) -> Result<HeckeElement> {
    check_index(i, n)?;
    let g = GroupDescriptor::gl(n);
    let e = elementary_symmetric(i, &g.variables())?;
    HeckeElement::new(g, e.scale(&QHalf::q_half_power((i * (n - i)) as i64)))
}

/// The substitution `{Y_1..Y_2n} -> {X_1^{+-1}..X_n^{+-1}}` dual to base change.
pub fn base_change_substitution(n: usize) -> Substitution<QHalf> {
    let xs = var_names("X", n);
    let mut s = Substitution::new(&xs);
    for (k, x) in xs.iter().enumerate() {
        s.set(&format!("Y{}", 2 * k + 1), QHalf::one(), x, 1).expect("valid target");
        s.set(&format!("Y{}", 2 * k + 2), QHalf::one(), x, -1).expect("valid target");
    }
    s
}

/// `T_{G,w,i}`: `q_w^{i(2n-i)/2} e_i(Y_1..Y_2n)`, pushed through the base
/// change bijection in the inert case.
pub fn unitary_basis(case: UnitaryCase, n: usize, i: usize) -> Result<HeckeElement> {
    check_index(i, 2 * n)?;
    let ys = var_names("Y", 2 * n);
    let e = elementary_symmetric(i, &ys)?.scale(&QHalf::q_half_power((i * (2 * n - i)) as i64));
    match case {
        UnitaryCase::Split => HeckeElement::new(GroupDescriptor::unitary(case, n), e),
        UnitaryCase::Inert => {
            HeckeElement::new(GroupDescriptor::unitary(case, n), e.substitute(&base_change_substitution(n))?)
        }
    }
}

/// Whether the element lies in the `Z[q_v^{-1}]`-span after the
/// renormalization by `|rho_G|^{1/2}`, `rho_G = det^{N-1}` for `N` Satake
/// variables. Coefficients are measured in `q_v`, so at inert places where
/// `q = q_w = q_v^2` every half power of `q` is already integral in `q_v`.
pub fn rationality_check(h: &HeckeElement) -> bool {
    let nvars = match &h.group.kind {
        GroupKind::GL(n) => *n,
        GroupKind::UnitarySplit(n) => 2 * n,
        GroupKind::UnitaryInert(_) => return true,
        _ => return false,
    };
    h.poly.terms().all(|(e, c)| {
        let degree: i64 = e.iter().sum();
        c.shift(-degree * (nvars as i64 - 1)).has_integral_exponents()
    })
}

/// Exponent conventions for the parabolic Satake substitution of `GL_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExponentConvention {
    /// Block `b` is scaled by `q^{((n_{b+1}+..+n_s) - (n_1+..+n_{b-1}))/2}`.
    Halved,
    /// The same exponent without the factor `1/2`.
    Printed,
}

/// Doubled exponent of the scaling `q`-power for each block.
pub fn parabolic_block_exponents(partition: &[usize], convention: ExponentConvention) -> Vec<i64> {
    let total: usize = partition.iter().sum();
    let mut before = 0usize;
    partition
        .iter()
        .map(|&k| {
            let after = total - before - k;
            let diff = after as i64 - before as i64;
            before += k;
            match convention {
                ExponentConvention::Halved => diff,
                ExponentConvention::Printed => 2 * diff,
            }
        })
        .collect()
}

/// `Y_{n_1+..+n_{b-1}+j} -> q^{c_b} Z_{b,j}`.
pub fn parabolic_substitution(partition: &[usize], convention: ExponentConvention) -> Result<Substitution<QHalf>> {
    let n: usize = partition.iter().sum();
    validate_partition(n, partition)?;
    let blocks = levi_block_vars(partition);
    let targets: Vec<String> = blocks.iter().flatten().cloned().collect();
    let exps = parabolic_block_exponents(partition, convention);
    let mut s = Substitution::new(&targets);
    let mut y = 1;
    for (b, block) in blocks.iter().enumerate() {
        for z in block {
            s.set(&format!("Y{y}"), QHalf::q_half_power(exps[b]), z, 1)?;
            y += 1;
        }
    }
    Ok(s)
}

/// The unnormalized Satake transform `GL_n -> prod GL_{n_b}` in Satake
/// coordinates, using the oracle-validated [`ExponentConvention::Halved`].
pub fn parabolic_satake_gl(n: usize, partition: &[usize], h: &HeckeElement) -> Result<HeckeElement> {
    parabolic_satake_gl_with(n, partition, h, ExponentConvention::Halved)
}

pub fn parabolic_satake_gl_with(
    n: usize,
    partition: &[usize],
    h: &HeckeElement,
    convention: ExponentConvention,
) -> Result<HeckeElement> {
    validate_partition(n, partition)?;
    if h.group.kind != GroupKind::GL(n) {
        return Err(Error::VariableMismatch(format!("expected GL({n}), got {:?}", h.group.kind)));
    }
    let s = parabolic_substitution(partition, convention)?;
    HeckeElement::new(GroupDescriptor::levi_gl(partition)?, h.poly.substitute(&s)?)
}

/// The substitution realizing the unitary unnormalized Satake transform.
pub fn unitary_satake_substitution(case: UnitaryCase, n: usize) -> Substitution<QHalf> {
    let target = GroupDescriptor::res_gl(case, n).variables();
    let mut s = Substitution::new(&target);
    let half_n = n as i64;
    match case {
        UnitaryCase::Split => {
            // Y_k -> q^{n/2} Z_{n+1-k}^{-1} for k <= n, Y_{n+k} -> q^{-n/2} W_k.
            for k in 1..=n {
                s.set(&format!("Y{k}"), QHalf::q_half_power(half_n), &format!("Z{}", n + 1 - k), -1)
                    .expect("valid target");
                s.set(&format!("Y{}", n + k), QHalf::q_half_power(-half_n), &format!("W{k}"), 1)
                    .expect("valid target");
            }
        }
        UnitaryCase::Inert => {
            for k in 1..=n {
                s.set(&format!("X{k}"), QHalf::q_half_power(-half_n), &format!("W{k}"), 1).expect("valid target");
            }
        }
    }
    s
}

pub fn unitary_satake(case: UnitaryCase, n: usize, h: &HeckeElement) -> Result<HeckeElement> {
    if h.group != GroupDescriptor::unitary(case, n) {
        return Err(Error::VariableMismatch(format!("expected unitary {case:?} n={n}, got {:?}", h.group.kind)));
    }
    HeckeElement::new(GroupDescriptor::res_gl(case, n), h.poly.substitute(&unitary_satake_substitution(case, n))?)
}

/// `T_{M,w,i}` (side `W`) or `T_{M,w^c,i}` (side `Wc`):
/// `q_w^{i(n-i)/2} e_i` in the `W` resp. `Z` variables. At inert places
/// `w^c = w`, so both sides give the `W` element.
pub fn levi_t_basis(case: UnitaryCase, n: usize, i: usize, side: Side) -> Result<HeckeElement> {
    check_index(i, n)?;
    let g = GroupDescriptor::res_gl(case, n);
    let family = match (case, side) {
        (UnitaryCase::Split, Side::Wc) => "Z",
        _ => "W",
    };
    let e = elementary_symmetric(i, &var_names(family, n))?.embed(&g.variables())?;
    HeckeElement::new(g, e.scale(&QHalf::q_half_power((i * (n - i)) as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn var(vars: &[String], name: &str) -> MultiLaurent {
        MultiLaurent::var_q(vars, name).unwrap()
    }

    #[test]
    fn gl_basis_examples() {
        let t1 = satake_gl_basis(2, 1).unwrap();
        let v = var_names("Y", 2);
        assert_eq!(t1.poly(), &var(&v, "Y1").add(&var(&v, "Y2")).scale(&QHalf::q_half_power(1)));
        assert_eq!(satake_gl_basis(2, 2).unwrap().poly(), &var(&v, "Y1").mul(&var(&v, "Y2")));
        assert_eq!(satake_gl_basis(1, 1).unwrap().poly(), &var(&var_names("Y", 1), "Y1"));
        assert!(satake_gl_basis(2, 0).is_err());
        assert!(satake_gl_basis(2, 3).is_err());
    }

    #[test]
    fn unitary_basis_examples() {
        let v = var_names("Y", 2);
        let s = unitary_basis(UnitaryCase::Split, 1, 1).unwrap();
        assert_eq!(s.poly(), &var(&v, "Y1").add(&var(&v, "Y2")).scale(&QHalf::q_half_power(1)));
        let x = var_names("X", 1);
        let i1 = unitary_basis(UnitaryCase::Inert, 1, 1).unwrap();
        let x1 = var(&x, "X1");
        assert_eq!(i1.poly(), &x1.add(&x1.inverse().unwrap()).scale(&QHalf::q_half_power(1)));
        // e_2(X1, X1^{-1}) = 1 and the exponent i(2n-i)/2 vanishes at i = 2n.
        let i2 = unitary_basis(UnitaryCase::Inert, 1, 2).unwrap();
        assert_eq!(i2.poly(), &MultiLaurent::one_q(&x));
    }

    #[test]
    fn rationality_examples() {
        assert!(rationality_check(&satake_gl_basis(2, 1).unwrap()));
        assert!(rationality_check(&unitary_basis(UnitaryCase::Inert, 1, 1).unwrap()));
        let raw = satake_gl_basis(1, 1).unwrap().poly().scale(&QHalf::q_half_power(1));
        let raw = HeckeElement::new(GroupDescriptor::gl(1), raw).unwrap();
        assert!(!rationality_check(&raw));
        for n in 1..=3 {
            for i in 1..=2 * n {
                assert!(rationality_check(&unitary_basis(UnitaryCase::Split, n, i).unwrap()));
                assert!(rationality_check(&unitary_basis(UnitaryCase::Inert, n, i).unwrap()));
            }
        }
    }

    #[test]
    fn parabolic_examples() {
        let z = GroupDescriptor::levi_gl(&[1, 1]).unwrap().variables();
        let img = parabolic_satake_gl(2, &[1, 1], &satake_gl_basis(2, 1).unwrap()).unwrap();
        assert_eq!(img.poly(), &var(&z, "Z1_1").scale(&QHalf::q_power(1)).add(&var(&z, "Z2_1")));
        let img2 = parabolic_satake_gl(2, &[1, 1], &satake_gl_basis(2, 2).unwrap()).unwrap();
        assert_eq!(img2.poly(), &var(&z, "Z1_1").mul(&var(&z, "Z2_1")));
        let triv = parabolic_satake_gl(1, &[1], &satake_gl_basis(1, 1).unwrap()).unwrap();
        assert_eq!(triv.poly(), &var(&["Z1_1".into()], "Z1_1"));
        assert!(parabolic_satake_gl(2, &[2, 1], &satake_gl_basis(2, 1).unwrap()).is_err());
        assert!(parabolic_satake_gl(3, &[2, 1], &satake_gl_basis(2, 1).unwrap()).is_err());
    }

    #[test]
    fn unitary_satake_examples() {
        let wz = GroupDescriptor::res_gl(UnitaryCase::Split, 1).variables();
        let w1 = var(&wz, "W1");
        let z1inv = var(&wz, "Z1").inverse().unwrap();
        let t1 = unitary_satake(UnitaryCase::Split, 1, &unitary_basis(UnitaryCase::Split, 1, 1).unwrap()).unwrap();
        assert_eq!(t1.poly(), &w1.add(&z1inv.scale(&QHalf::q_power(1))));
        let t2 = unitary_satake(UnitaryCase::Split, 1, &unitary_basis(UnitaryCase::Split, 1, 2).unwrap()).unwrap();
        assert_eq!(t2.poly(), &w1.mul(&z1inv));
        let w = var_names("W", 1);
        let w1 = var(&w, "W1");
        let ti = unitary_satake(UnitaryCase::Inert, 1, &unitary_basis(UnitaryCase::Inert, 1, 1).unwrap()).unwrap();
        assert_eq!(ti.poly(), &w1.add(&w1.inverse().unwrap().scale(&QHalf::q_power(1))));
    }

    #[test]
    fn levi_basis_examples() {
        let wz = GroupDescriptor::res_gl(UnitaryCase::Split, 1).variables();
        assert_eq!(levi_t_basis(UnitaryCase::Split, 1, 1, Side::W).unwrap().poly(), &var(&wz, "W1"));
        let wz2 = GroupDescriptor::res_gl(UnitaryCase::Split, 2).variables();
        let t = levi_t_basis(UnitaryCase::Split, 2, 1, Side::Wc).unwrap();
        assert_eq!(t.poly(), &var(&wz2, "Z1").add(&var(&wz2, "Z2")).scale(&QHalf::q_half_power(1)));
        let t = levi_t_basis(UnitaryCase::Split, 2, 2, Side::W).unwrap();
        assert_eq!(t.poly(), &var(&wz2, "W1").mul(&var(&wz2, "W2")));
    }

    #[test]
    fn inert_images_are_hyperoctahedral_invariant() {
        for n in 1..=3 {
            for i in 1..=2 * n {
                let h = unitary_basis(UnitaryCase::Inert, n, i).unwrap();
                assert!(is_invariant(h.poly(), &WeylGroupAction::hyperoctahedral(&var_names("X", n))));
            }
        }
    }
}
