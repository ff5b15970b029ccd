use std::fmt;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// A point `(x:y)` of the projective line, stored with its first nonzero
/// coordinate scaled to one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    x: FieldElem,
    y: FieldElem,
}

impl ProjPoint {
    pub fn new(x: FieldElem, y: FieldElem) -> Result<ProjPoint> {
        if x.field() != y.field() {
            return Err(Error::DescriptorMismatch(
                x.field().to_string(),
                y.field().to_string(),
            ));
        }
        if !x.is_zero() {
            let inv = x.try_inv()?;
            let y = &y * &inv;
            let one = x.field().one();
            Ok(ProjPoint { x: one, y })
        } else if !y.is_zero() {
            let field = y.field().clone();
            Ok(ProjPoint {
                x: field.zero(),
                y: field.one(),
            })
        } else {
            Err(Error::ZeroPoint)
        }
    }

    /// The point `(t:1)`.
    pub fn affine(t: FieldElem) -> ProjPoint {
        let one = t.field().one();
        ProjPoint::new(t, one).expect("(t:1) is never zero")
    }

    /// `(1:0)`.
    pub fn infinity(field: &Field) -> ProjPoint {
        ProjPoint {
            x: field.one(),
            y: field.zero(),
        }
    }

    pub fn parse(field: &Field, x: &str, y: &str) -> Result<ProjPoint> {
        ProjPoint::new(field.parse(x)?, field.parse(y)?)
    }

    /// Every point over a finite field: the affine points in field order,
    /// then `(1:0)`.
    pub fn all(field: &Field) -> Result<Vec<ProjPoint>> {
        let mut out: Vec<ProjPoint> = field.enumerate()?.map(ProjPoint::affine).collect();
        out.push(ProjPoint::infinity(field));
        Ok(out)
    }

    pub fn x(&self) -> &FieldElem {
        &self.x
    }

    pub fn y(&self) -> &FieldElem {
        &self.y
    }

    pub fn field(&self) -> &Field {
        self.x.field()
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// `x/y`, `None` at infinity.
    pub fn affine_value(&self) -> Option<FieldElem> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.x / &self.y)
        }
    }

    /// Canonical coordinates as strings.
    pub fn to_json(&self) -> Json {
        json!([self.x.to_string(), self.y.to_string()])
    }

    pub fn from_json(field: &Field, v: &Json) -> Result<ProjPoint> {
        let bad = || Error::Parse {
            input: v.to_string(),
            reason: "expected a pair of coordinates".into(),
        };
        let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
        let x = crate::field::parse_json_elem(field, &pair[0])?;
        let y = crate::field::parse_json_elem(field, &pair[1])?;
        ProjPoint::new(x, y)
    }
}

/// Written as `(t:1)` or `(1:0)`.
impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine_value() {
            Some(t) => write!(f, "({t}:1)"),
            None => write!(f, "(1:0)"),
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
