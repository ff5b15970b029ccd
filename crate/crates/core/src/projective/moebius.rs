use std::fmt;

use serde_json::{json, Value as Json};

use super::ProjPoint;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{Poly, RatFunc};

/// An invertible 2×2 matrix `[[a, b], [c, d]]` up to scalars, stored with its
/// first nonzero entry scaled to one.
///
/// Acts on column vectors: `(x:y) ↦ (a x + b y : c x + d y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Moebius {
    a: FieldElem,
    b: FieldElem,
    c: FieldElem,
    d: FieldElem,
}

impl Moebius {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<Moebius> {
        let field = a.field().clone();
        if [&b, &c, &d].iter().any(|e| e.field() != &field) {
            return Err(Error::DescriptorMismatch(field.to_string(), "matrix entry".into()));
        }
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let lead = [&a, &b, &c, &d]
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("nonsingular matrix has a nonzero entry")
            .try_inv()?;
        Ok(Moebius {
            a: &a * &lead,
            b: &b * &lead,
            c: &c * &lead,
            d: &d * &lead,
        })
    }

    pub fn identity(field: &Field) -> Moebius {
        Moebius {
            a: field.one(),
            b: field.zero(),
            c: field.zero(),
            d: field.one(),
        }
    }

    /// Parses four row-major entries.
    pub fn parse(field: &Field, entries: [&str; 4]) -> Result<Moebius> {
        let [a, b, c, d] = entries.map(|s| field.parse(s));
        Moebius::new(a?, b?, c?, d?)
    }

    pub fn from_json(field: &Field, v: &Json) -> Result<Moebius> {
        let bad = || Error::Parse {
            input: v.to_string(),
            reason: "expected four row-major matrix entries".into(),
        };
        let items = v.as_array().filter(|a| a.len() == 4).ok_or_else(bad)?;
        let e: Vec<FieldElem> = items
            .iter()
            .map(|x| crate::field::parse_json_elem(field, x))
            .collect::<Result<_>>()?;
        let [a, b, c, d]: [FieldElem; 4] = e.try_into().map_err(|_| bad())?;
        Moebius::new(a, b, c, d)
    }

    pub fn to_json(&self) -> Json {
        json!(self.entries().map(|e| e.to_string()))
    }

    pub fn entries(&self) -> [&FieldElem; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let (x, y) = (p.x(), p.y());
        let nx = &(&self.a * x) + &(&self.b * y);
        let ny = &(&self.c * x) + &(&self.d * y);
        ProjPoint::new(nx, ny).expect("invertible matrix maps nonzero vectors to nonzero vectors")
    }

    /// Matrix product `self · other`: apply `other` first.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        Moebius::new(
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        )
        .expect("product of invertible matrices is invertible")
    }

    pub fn inverse(&self) -> Moebius {
        Moebius::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
            .expect("adjugate of an invertible matrix is invertible")
    }

    pub fn pow(&self, n: u32) -> Moebius {
        (0..n).fold(Moebius::identity(self.field()), |acc, _| acc.compose(self))
    }

    /// Least `n ≥ 1` with `self^n` scalar.
    pub fn order(&self, cap: usize) -> Result<usize> {
        let mut acc = self.clone();
        for n in 1..=cap {
            if acc.is_identity() {
                return Ok(n);
            }
            acc = acc.compose(self);
        }
        Err(Error::CapExceeded(cap))
    }

    /// The function `t ∘ self = (a t + b)/(c t + d)` on the affine coordinate.
    pub fn pullback(&self) -> RatFunc {
        let f = self.field();
        let num = Poly::new(f, vec![self.b.clone(), self.a.clone()]);
        let den = Poly::new(f, vec![self.d.clone(), self.c.clone()]);
        RatFunc::reduce(num, den).expect("second row of an invertible matrix is nonzero")
    }
}

pub fn element_order(m: &Moebius, cap: usize) -> Result<usize> {
    m.order(cap)
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
