//! Exact algebra of polynomial-coefficient differential operators in n
//! variables, with the machinery needed to evaluate and verify standard
//! skew-symmetric polynomials (N-commutators) on vector fields: product
//! modes, fast evaluation strategies, Wronskian-type closed forms, root
//! gradings with escort extraction/reconstruction, cochain differentials,
//! coproduct primitivity witnesses, and a small Grassmann-coefficient
//! layer for odd-derivation nilpotency.
//!
//! Everything is computed over Q with no rounding anywhere; two values are
//! equal iff their canonical forms are identical.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod rat;
pub mod poly;
pub mod diffop;
pub mod skewsum;
pub mod formulas;
pub mod grading;
pub mod tensor;
pub mod identities;
pub mod superdiff;

pub use diffop::{DiffOp, VField};
pub use poly::{Expo, Poly};
pub use rat::Rat;
