//! Finite fields and Legendre elliptic curves y^2 = x(x-1)(x-lambda).
//!
//! The crate builds F_q for prime powers q = p^k with p > 3, classifies the
//! Legendre curves over F_q up to F_q-isomorphism by exhaustive enumeration,
//! and checks the observed class counts against closed-form formulas in q.
//!
//! * [`gf`] — field construction, arithmetic, quadratic-residue machinery;
//! * [`curves`] — curve types, b-quantities, discriminant, j-invariant,
//!   lambda-orbits;
//! * [`iso`] — the change-of-variables search and the closed-form
//!   isomorphism criteria;
//! * [`census`] — class partition, stratification, and the
//!   observed-vs-expected report.

pub mod census;
pub mod curves;
pub mod error;
pub mod gf;
pub mod iso;

pub use error::Error;
