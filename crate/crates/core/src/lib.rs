//! Exact computations for spherical Hecke algebras of `GL_n` and `U(n, n)`.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * exact scalars in `Z[q^{1/2}, q^{-1/2}]` and multivariate Laurent
//!   polynomials over any [`Ring`](ring::Ring),
//! * elementary symmetric polynomials and Weyl-group invariance checks,
//! * Hecke operators in Satake coordinates together with the unnormalized
//!   Satake transforms to Levi subgroups,
//! * Hecke polynomials and their duality and twisting operations,
//! * a brute-force coset oracle for `GL_n(Q_p)` built on Hermite normal forms,
//! * dominant-weight bookkeeping for `GL_n x GL_n` and `U(2n)`,
//! * a desk-scale model of Hecke algebras acting on perfect complexes over
//!   `Z/p^N`.

#![no_std]

extern crate alloc;

pub mod derived;
pub mod error;
pub mod heckepoly;
pub mod laurent;
pub mod modpk;
pub mod oracle;
pub mod ring;
pub mod satake;
pub mod scalar;
pub mod weights;
pub mod weyl;

pub use error::{Error, Result};
pub use laurent::{Laurent, MultiLaurent, Substitution};
pub use ring::{QSqrt, Ring, ZMod};
pub use scalar::QHalf;
