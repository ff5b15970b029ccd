//! Implicitizing a parametrized curve with a resultant.

use galois_points::embedding::implicitize;
use galois_points::{Field, Poly, RatFunc, Result};

fn main() -> Result<()> {
    let q = Field::rationals();
    // The unit circle: x = (1 - t^2)/(1 + t^2), y = 2t/(1 + t^2).
    let den = Poly::from_i64s(&q, &[1, 0, 1]);
    let x = RatFunc::reduce(Poly::from_i64s(&q, &[1, 0, -1]), den.clone())?;
    let y = RatFunc::reduce(Poly::from_i64s(&q, &[0, 2]), den)?;
    println!("x = {}, y = {}", x.render("t"), y.render("t"));
    println!("curve: {} = 0", implicitize(&x, &y)?.render());

    // A parametrization of degree 2 that is not birational onto its image.
    let t2 = RatFunc::from_poly(Poly::from_i64s(&q, &[0, 0, 1]));
    let t4 = RatFunc::from_poly(Poly::from_i64s(&q, &[0, 0, 0, 0, 1]));
    match implicitize(&t2, &t4) {
        Ok(c) => println!("unexpected: {}", c.render()),
        Err(e) => println!("(t^2, t^4) is rejected: {e}"),
    }
    Ok(())
}
