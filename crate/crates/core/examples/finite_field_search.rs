//! Searching all point pairs over F_7 for two-Galois-point witnesses.

use galois_points::criterion::search_inner;
use galois_points::projective::DEFAULT_CAP;
use galois_points::{Field, FiniteMoebiusGroup, Moebius, ProjPoint, Result};

fn main() -> Result<()> {
    let f7 = Field::prime(7)?;
    let g1 = FiniteMoebiusGroup::generate(&f7, &[Moebius::parse(&f7, ["1", "-1", "1", "1"])?], DEFAULT_CAP)?;
    let g2 = FiniteMoebiusGroup::generate(&f7, &[Moebius::parse(&f7, ["0", "1", "-1/2", "1"])?], DEFAULT_CAP)?;
    let points = ProjPoint::all(&f7)?;
    let hits = search_inner(&g1, &g2, &points);
    println!("{} witnesses among {} points of P^1(F_7)", hits.len(), points.len());
    for w in &hits {
        println!("  P1 = {}, P2 = {}, D = {}", w.p1, w.p2, w.divisor);
    }
    Ok(())
}
