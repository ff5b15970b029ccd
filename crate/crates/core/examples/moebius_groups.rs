//! Finite groups of Möbius transformations: generation, orbits, structure.

use galois_points::projective::DEFAULT_CAP;
use galois_points::{Field, FiniteMoebiusGroup, Moebius, ProjPoint, Result};

fn main() -> Result<()> {
    let q = Field::rationals();
    let sigma = Moebius::parse(&q, ["1", "-1", "1", "1"])?;
    println!("sigma = {sigma}, order {:?}", sigma.order(DEFAULT_CAP));

    let g = FiniteMoebiusGroup::generate(&q, &[sigma], DEFAULT_CAP)?;
    println!("<sigma> is {} with {} elements", g.structure(), g.order());
    let p = ProjPoint::parse(&q, "2", "1")?;
    let orbit: Vec<String> = g.orbit(&p).iter().map(ToString::to_string).collect();
    println!("orbit of {p}: {}", orbit.join(", "));

    let klein = FiniteMoebiusGroup::generate(
        &q,
        &[Moebius::parse(&q, ["0", "1", "2", "0"])?, Moebius::parse(&q, ["1", "-1/2", "1", "-1"])?],
        DEFAULT_CAP,
    )?;
    println!("second group: {} (abelian: {})", klein.structure(), klein.is_abelian());
    println!("intersection order: {}", g.intersect(&klein).order());
    Ok(())
}
