use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::projective::DivisorPoint;

/// A point `(X:Y:Z)` of the plane, scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicPoint {
    coords: [FieldElem; 3],
}

impl CubicPoint {
    pub fn new(x: FieldElem, y: FieldElem, z: FieldElem) -> Result<CubicPoint> {
        let lead = [&x, &y, &z]
            .into_iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroPoint)?
            .try_inv()?;
        Ok(CubicPoint {
            coords: [&x * &lead, &y * &lead, &z * &lead],
        })
    }

    pub fn from_array(c: [FieldElem; 3]) -> Result<CubicPoint> {
        let [x, y, z] = c;
        CubicPoint::new(x, y, z)
    }

    pub fn parse(field: &Field, x: &str, y: &str, z: &str) -> Result<CubicPoint> {
        CubicPoint::new(field.parse(x)?, field.parse(y)?, field.parse(z)?)
    }

    pub fn coords(&self) -> &[FieldElem; 3] {
        &self.coords
    }

    pub fn x(&self) -> &FieldElem {
        &self.coords[0]
    }

    pub fn y(&self) -> &FieldElem {
        &self.coords[1]
    }

    pub fn z(&self) -> &FieldElem {
        &self.coords[2]
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    /// Value of `X^3 + Y^3 + Z^3`.
    pub fn fermat_value(&self) -> FieldElem {
        self.coords
            .iter()
            .fold(self.field().zero(), |acc, c| &acc + &c.pow(3))
    }

    pub fn to_json(&self) -> Json {
        json!(self.coords.iter().map(ToString::to_string).collect::<Vec<_>>())
    }
}

impl DivisorPoint for CubicPoint {
    fn point_json(&self) -> Json {
        self.to_json()
    }
}

impl fmt::Display for CubicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "({x}:{y}:{z})")
    }
}

impl fmt::Debug for CubicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn dot(a: &[FieldElem; 3], b: &[FieldElem; 3]) -> FieldElem {
    a.iter()
        .zip(b)
        .fold(a[0].field().zero(), |acc, (x, y)| &acc + &(x * y))
}

fn combine(s: &FieldElem, a: &[FieldElem; 3], u: &FieldElem, b: &[FieldElem; 3]) -> [FieldElem; 3] {
    [0, 1, 2].map(|i| &(s * &a[i]) + &(u * &b[i]))
}

pub(crate) fn cross(a: &[FieldElem; 3], b: &[FieldElem; 3]) -> [FieldElem; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Every projective point of `X^3 + Y^3 + Z^3 = 0` over `F_p`, ordered as
/// `(1:y:z)` for `y, z` in `0..p`, then `(0:1:z)`.
///
/// Requires `p ≡ 1 (mod 3)` so that a primitive cube root of unity exists.
pub fn enumerate_curve(p: u64) -> Result<Vec<CubicPoint>> {
    if p % 3 != 1 {
        return Err(Error::BadCharacteristic(p));
    }
    let field = Field::prime(p)?;
    let cubes: Vec<FieldElem> = (0..p).map(|v| field.from_i64(v as i64).pow(3)).collect();
    let elem = |v: u64| field.from_i64(v as i64);
    let one = field.one();
    let mut out = Vec::new();
    for y in 0..p {
        for z in 0..p {
            if (&(&one + &cubes[y as usize]) + &cubes[z as usize]).is_zero() {
                out.push(CubicPoint::new(one.clone(), elem(y), elem(z))?);
            }
        }
    }
    for z in 0..p {
        if (&one + &cubes[z as usize]).is_zero() {
            out.push(CubicPoint::new(field.zero(), one.clone(), elem(z))?);
        }
    }
    Ok(out)
}

struct CurveData {
    p: u64,
    field: Field,
    omega: FieldElem,
    origin: CubicPoint,
    points: Vec<CubicPoint>,
    index: HashMap<CubicPoint, usize>,
}

/// The Fermat cubic over `F_p` with its points, a chosen cube root of unity
/// `ω` (the smallest residue) and the chord-tangent group law with origin
/// the flex `O = (1:-1:0)`.
#[derive(Clone)]
pub struct FermatCubic(Arc<CurveData>);

impl FermatCubic {
    pub fn new(p: u64) -> Result<FermatCubic> {
        let points = enumerate_curve(p)?;
        let field = points[0].field().clone();
        let one = field.one();
        let omega = field
            .solve_quadratic(&one, &one)?
            .into_iter()
            .min()
            .ok_or(Error::BadCharacteristic(p))?;
        let origin = CubicPoint::new(one.clone(), -&one, field.zero())?;
        let index = points.iter().cloned().enumerate().map(|(i, pt)| (pt, i)).collect();
        Ok(FermatCubic(Arc::new(CurveData {
            p,
            field,
            omega,
            origin,
            points,
            index,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn omega(&self) -> &FieldElem {
        &self.0.omega
    }

    pub fn origin(&self) -> &CubicPoint {
        &self.0.origin
    }

    pub fn points(&self) -> &[CubicPoint] {
        &self.0.points
    }

    pub fn len(&self) -> usize {
        self.0.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.points.is_empty()
    }

    pub fn index_of(&self, p: &CubicPoint) -> Result<usize> {
        self.0
            .index
            .get(p)
            .copied()
            .ok_or_else(|| Error::NotOnCurve(p.to_string()))
    }

    pub fn point(&self, i: usize) -> &CubicPoint {
        &self.0.points[i]
    }

    pub fn contains(&self, p: &CubicPoint) -> bool {
        self.0.index.contains_key(p)
    }

    /// Third intersection of the line through `a` and `b` with the curve;
    /// the tangent line when `a = b`.
    pub fn third(&self, a: &CubicPoint, b: &CubicPoint) -> CubicPoint {
        let (pa, pb) = (a.coords(), b.coords());
        let r = if a != b {
            // F(sP + uQ) = 3su(s A + u B) with A = Σ P_i^2 Q_i, B = Σ P_i Q_i^2
            let sq_a = pa.clone().map(|c| &c * &c);
            let sq_b = pb.clone().map(|c| &c * &c);
            let big_a = dot(&sq_a, pb);
            let big_b = dot(pa, &sq_b);
            combine(&big_b, pa, &-&big_a, pb)
        } else {
            let grad = pa.clone().map(|c| &c * &c);
            let v = (0..3)
                .map(|k| {
                    let mut e = [0, 1, 2].map(|_| self.field().zero());
                    e[k] = self.field().one();
                    cross(&grad, &e)
                })
                .find(|v| {
                    v.iter().any(|c| !c.is_zero()) && cross(v, pa).iter().any(|c| !c.is_zero())
                })
                .expect("gradient of a smooth point is nonzero");
            // F(sP + uV) = u^2 (3 s Σ P_i V_i^2 + u Σ V_i^3)
            let sq_v = v.clone().map(|c| &c * &c);
            let three = self.field().from_i64(3);
            let b_prime = &three * &dot(pa, &sq_v);
            let cube = dot(&sq_v, &v);
            combine(&cube, pa, &-&b_prime, &v)
        };
        CubicPoint::from_array(r).expect("a line meets a smooth cubic in a third point")
    }

    pub fn add(&self, a: &CubicPoint, b: &CubicPoint) -> CubicPoint {
        self.third(self.origin(), &self.third(a, b))
    }

    pub fn neg(&self, a: &CubicPoint) -> CubicPoint {
        self.third(self.origin(), a)
    }

    pub fn sub(&self, a: &CubicPoint, b: &CubicPoint) -> CubicPoint {
        self.add(a, &self.neg(b))
    }

    /// `(ω^k X : Y : Z)`.
    pub fn sigma(&self, a: &CubicPoint, power: u32) -> CubicPoint {
        let w = self.omega().pow(u64::from(power % 3));
        let [x, y, z] = a.coords().clone();
        CubicPoint::new(&w * &x, y, z).expect("scaling keeps the point nonzero")
    }

    /// Multiplies coordinate `i` by `ω`.
    pub fn scale(&self, a: &CubicPoint, i: usize) -> CubicPoint {
        let mut c = a.coords().clone();
        c[i] = &c[i] * self.omega();
        CubicPoint::from_array(c).expect("scaling keeps the point nonzero")
    }

    /// The involution `P ↦ (Q ⊞ σQ) ⊟ P`, characterised by
    /// `(P) + (η P) ~ (Q) + (σ Q)`; it swaps `Q` and `σ Q`.
    pub fn eta(&self, a: &CubicPoint, q: &CubicPoint) -> CubicPoint {
        let s = self.add(q, &self.sigma(q, 1));
        self.sub(&s, a)
    }

    /// `table[i][j]` is the index of `P_i ⊞ P_j`.
    pub fn addition_table(&self) -> Vec<Vec<usize>> {
        let pts = self.points();
        pts.iter()
            .map(|a| {
                pts.iter()
                    .map(|b| self.index_of(&self.add(a, b)).expect("group law stays on the curve"))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for FermatCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FermatCubic(F_{}, {} points)", self.p(), self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        assert_eq!(enumerate_curve(19).unwrap().len(), 27);
        let e13 = enumerate_curve(13).unwrap();
        assert_eq!(e13.len(), 9);
        assert!(e13.iter().all(|p| p.coords().iter().any(FieldElem::is_zero)));
        assert_eq!(enumerate_curve(11), Err(Error::BadCharacteristic(11)));
        assert_eq!(enumerate_curve(3), Err(Error::BadCharacteristic(3)));
    }

    #[test]
    fn omega_and_sigma() {
        let e = FermatCubic::new(19).unwrap();
        assert_eq!(e.omega().residue(), Some(7));
        let q = CubicPoint::parse(e.field(), "1", "4", "5").unwrap();
        assert!(e.contains(&q));
        let s = e.sigma(&q, 1);
        assert_eq!(s, CubicPoint::parse(e.field(), "7", "4", "5").unwrap());
        let fixed = CubicPoint::parse(e.field(), "0", "-1", "1").unwrap();
        assert_eq!(e.sigma(&fixed, 1), fixed);
        assert!(e.points().iter().all(|p| &e.sigma(&e.sigma(&e.sigma(p, 1), 1), 1) == p));
    }

    #[test]
    fn identity_inverse_and_eta() {
        let e = FermatCubic::new(19).unwrap();
        let o = e.origin().clone();
        let q = CubicPoint::parse(e.field(), "1", "4", "5").unwrap();
        for p in e.points() {
            assert_eq!(&e.add(&o, p), p);
            assert_eq!(e.add(p, &e.neg(p)), o);
            assert_eq!(&e.eta(&e.eta(p, &q), &q), p);
        }
        assert_eq!(e.eta(&q, &q), e.sigma(&q, 1));
        assert_eq!(e.eta(&e.sigma(&q, 1), &q), q);
    }
}
