//! Building the plane model and certifying both projections as Galois.

use galois_points::embedding::run_construction;
use galois_points::projective::DEFAULT_CAP;
use galois_points::{Field, FiniteMoebiusGroup, Moebius, ProjPoint, Result};

fn main() -> Result<()> {
    let q = Field::rationals();
    let g1 = FiniteMoebiusGroup::generate(&q, &[Moebius::parse(&q, ["1", "-1", "1", "1"])?], DEFAULT_CAP)?;
    let g2 = FiniteMoebiusGroup::generate(&q, &[Moebius::parse(&q, ["0", "1", "-1/2", "1"])?], DEFAULT_CAP)?;
    let p1 = ProjPoint::parse(&q, "2", "1")?;
    let p2 = ProjPoint::parse(&q, "-1", "1")?;

    let c = run_construction(&g1, &g2, &p1, &p2)?;
    let model = c.model.expect("the criterion holds for these points");
    println!("{}", model.render_text());
    println!("certified: {}", model.certified());
    Ok(())
}
