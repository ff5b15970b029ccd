//! Checking conditions (a), (b), (c) for a pair of cyclic groups, with a
//! passing and a failing choice of points.

use galois_points::criterion::check_inner;
use galois_points::projective::DEFAULT_CAP;
use galois_points::{Field, FiniteMoebiusGroup, Moebius, ProjPoint, Result};

fn main() -> Result<()> {
    let q = Field::rationals();
    let g1 = FiniteMoebiusGroup::generate(&q, &[Moebius::parse(&q, ["1", "-1", "1", "1"])?], DEFAULT_CAP)?;
    let g2 = FiniteMoebiusGroup::generate(&q, &[Moebius::parse(&q, ["0", "1", "-1/2", "1"])?], DEFAULT_CAP)?;

    for (x1, x2) in [("2", "-1"), ("2", "0")] {
        let p1 = ProjPoint::parse(&q, x1, "1")?;
        let p2 = ProjPoint::parse(&q, x2, "1")?;
        let r = check_inner(0, &g1, &g2, &p1, &p2)?;
        println!("P1 = {p1}, P2 = {p2}: criterion holds = {}", r.holds());
        println!("  G1 P2 + P1 = {}", r.cond_c.lhs);
        println!("  G2 P1 + P2 = {}", r.cond_c.rhs);
        if !r.holds() {
            println!("  difference = {}", r.cond_c.mismatch());
        }
    }
    Ok(())
}
