//! Arithmetic in the three kinds of exact field.

use galois_points::{Field, Result};

fn main() -> Result<()> {
    let q = Field::rationals();
    let x = q.parse("-3/4")?;
    println!("over {q}: (-3/4)^3 = {}", x.pow(3));

    let f19 = Field::prime(19)?;
    let w = f19.from_i64(7);
    println!("over {f19}: 7^3 = {} and 1/7 = {}", w.pow(3), w.try_inv()?);

    // Q(a) with a^2 + a - 1 = 0, so a = (sqrt 5 - 1)/2.
    let ext = Field::extension(&q, vec![q.from_i64(-1), q.from_i64(1), q.from_i64(1)])?;
    let a = ext.generator()?;
    let b = ext.parse("2*a - 1")?;
    println!("over {ext}: a^2 = {}, (2a-1)^2 = {}", a.pow(2), b.pow(2));
    println!("1/a = {}", a.try_inv()?);
    Ok(())
}
