//! Exact combinatorics around the Steinberg representation of a split
//! p-adic group.
//!
//! The crate covers the affine Weyl group side (growth of the Cayley graph and
//! its closed-form Poincaré series), the Iwahori–Hecke algebra with its special
//! character, the lattice model of the Bruhat–Tits building of `GL(n, Q_p)` for
//! `n ∈ {2, 3}`, harmonic cochains on chambers, the boundary map from
//! compactly supported 1-cochains on the tree to functions on `P¹(Q_p)`, and
//! the linear form `Λ` evaluated on the Iwahori-fixed vector.
//!
//! All arithmetic is exact. Rationals are [`num_rational::BigRational`];
//! lattice entries are integers reduced modulo a fixed power of `p`.

pub mod boundary;
pub mod building;
pub mod coxeter;
mod error;
pub mod exact;
pub mod harmonic;
pub mod hecke;
pub mod par;
pub mod period;
pub mod poincare;

pub use error::{Error, Result};
pub use par::Exec;
