//! Exact computational algebra over finite fields F_{p^k}.
//!
//! The crate provides:
//!
//! - [`gf`]: construction of prime and extension fields with exact element
//!   arithmetic and a canonical integer code for every element;
//! - [`poly`]: dense univariate polynomials over a field, with division,
//!   gcd, coefficient-reversal (the reciprocal operator), irreducible tables
//!   and deterministic trial-division factorization;
//! - [`recip`]: classification of self-reciprocal (palindrome) factor
//!   structure, including extraction of the maximal self-reciprocal factor
//!   and an independent divisor-enumeration oracle;
//! - [`census`]: closed-form counting of monic polynomials by the degree of
//!   their maximal self-reciprocal factor, together with brute-force
//!   enumeration and exact cross-verification;
//! - [`index2`]: symmetric GF(2) sequences of index 2 — the truncated
//!   linear system attached to a coefficient vector, solvability and
//!   uniqueness, enumeration counts, and periodicity of the one-sided
//!   readouts;
//! - [`cli`]: the `selfrecip` command-line front end.
//!
//! All counts are exact integers; no floating point is used anywhere.

mod error;

pub mod census;
pub mod cli;
pub mod gf;
pub mod index2;
pub mod poly;
pub mod recip;

pub use error::{Error, Result};
pub use gf::{FieldElement, FieldSpec};
pub use poly::{Factorization, Polynomial};
