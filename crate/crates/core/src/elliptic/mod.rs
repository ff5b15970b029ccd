//! The Fermat cubic `X^3 + Y^3 + Z^3 = 0` over a prime field `F_p` with
//! `p ≡ 1 (mod 3)`, its automorphisms and the two-Galois-point construction
//! on it.

mod aut;
mod curve;
mod model;

pub use aut::{quotient_genus, EllAut, EllAutGroup, Letter};
pub use curve::{enumerate_curve, CubicPoint, FermatCubic};
pub use model::{
    build_quartic_model, center_fiber_check, outer_delta_check, quartic_monomials, scan_admissible,
    verify_fermat_criterion, CenterCheck, FermatCertificate, FermatScan, QuarticModel,
};

/// Divisors on the Fermat cubic.
pub type EllDivisor = crate::projective::Divisor<CubicPoint>;
