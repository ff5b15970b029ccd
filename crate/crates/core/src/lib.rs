//! Galois points for plane models of curves.
//!
//! Given a curve `X` with two finite automorphism groups `G1`, `G2` and points
//! `P1`, `P2`, this crate decides whether the plane model built from
//! `X -> X/G1` and `X -> X/G2` has inner Galois points at the images of `P1`
//! and `P2`, and constructs the model when it does. Arithmetic is exact over `Q`, prime fields and simple
//! algebraic extensions.

pub mod error;
pub mod field;
pub mod poly;
pub mod projective;
pub mod criterion;
pub mod embedding;
pub mod elliptic;
pub mod harness;

pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use poly::{BiPoly, Poly, RatFunc};
pub use projective::{Divisor, FiniteMoebiusGroup, Moebius, ProjPoint};
