//! The projective line, its automorphisms and divisors on it.

mod divisor;
mod group;
mod moebius;
mod point;

pub use divisor::{Divisor, DivisorPoint};
pub use group::{FiniteMoebiusGroup, GroupStructure, DEFAULT_CAP};
pub use moebius::{element_order, Moebius};
pub use point::ProjPoint;
