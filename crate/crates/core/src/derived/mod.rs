//! Bounded complexes of free `Z/p^N`-modules with commuting endomorphisms,
//! their Hecke algebras up to homotopy, and checks of the standard lemmas
//! about them.

mod complex;

pub use complex::*;

mod algebra;

pub use algebra::*;

mod lemmas;

pub use lemmas::*;

mod random;

pub use random::*;
