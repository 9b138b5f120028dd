//! Permutation polynomials of finite fields in Carlitz form.
//!
//! Everything here is pure computation over `GF(p^r)` at desk scale:
//!
//! * [`field`]: canonical construction of `GF(p^r)` with integer element codes.
//! * [`poly`]: polynomials, image tables, permutation and complete-mapping tests.
//! * [`form`]: Carlitz forms `P_n`, their convergents, poles and approximants.
//! * [`rank`]: exact Carlitz rank by breadth-first search.
//! * [`bounds`]: exact evaluation of the degree bounds, collision sets and
//!   Kummer-curve point counts.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
mod error;
pub mod field;
pub mod form;
mod num;
pub mod poly;
pub mod rank;

pub use error::{Error, Result};
pub use field::{Elem, Field, ProjectivePoint};
pub use form::{CarlitzForm, FormClass, FormSpace};
pub use poly::{DiffDegree, PermMap, Poly, ValueSetSummary};
pub use rank::{RankResult, RankTable};
