use serde::de::Error as _;
use serde_json::{json, Value as Json};

use super::{Field, FieldDescriptor, FieldElem};
use crate::error::{Error, Result};

impl Field {
    /// `{"kind":"rationals"}`, `{"kind":"prime","p":19}` or
    /// `{"kind":"extension","base":{..},"minpoly":[-1,1,1]}`.
    pub fn to_json(&self) -> Json {
        match self.descriptor() {
            FieldDescriptor::Rationals => json!({"kind": "rationals"}),
            FieldDescriptor::Prime { p } => json!({"kind": "prime", "p": p}),
            FieldDescriptor::Extension { base, minpoly, .. } => json!({
                "kind": "extension",
                "base": base.to_json(),
                "minpoly": minpoly.iter().map(coefficient_json).collect::<Vec<_>>(),
            }),
        }
    }

    /// Inverse of [`Field::to_json`]. A missing `base` means the rationals;
    /// minimal polynomial coefficients may be numbers or strings.
    pub fn from_json(v: &Json) -> Result<Field> {
        let bad = |m: &str| Error::InvalidField(format!("{m} in {v}"));
        let kind = v.get("kind").and_then(Json::as_str).ok_or_else(|| bad("missing kind"))?;
        match kind {
            "rationals" => Ok(Field::rationals()),
            "prime" => {
                let p = v.get("p").and_then(Json::as_u64).ok_or_else(|| bad("missing p"))?;
                Field::prime(p)
            }
            "extension" => {
                let base = match v.get("base") {
                    Some(b) => Field::from_json(b)?,
                    None => Field::rationals(),
                };
                let coeffs = v
                    .get("minpoly")
                    .and_then(Json::as_array)
                    .ok_or_else(|| bad("missing minpoly"))?;
                let minpoly = coeffs
                    .iter()
                    .map(|c| parse_json_elem(&base, c))
                    .collect::<Result<Vec<_>>>()?;
                Field::extension(&base, minpoly)
            }
            other => Err(bad(&format!("unknown kind {other:?}"))),
        }
    }
}

fn coefficient_json(c: &FieldElem) -> Json {
    let s = c.to_string();
    match s.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(s),
    }
}

/// Reads a field element from a JSON number or string.
pub fn parse_json_elem(field: &Field, v: &Json) -> Result<FieldElem> {
    match v {
        Json::String(s) => field.parse(s),
        Json::Number(n) if n.is_i64() => Ok(field.from_i64(n.as_i64().unwrap())),
        other => Err(Error::Parse {
            input: other.to_string(),
            reason: "expected an integer or a string".into(),
        }),
    }
}

impl serde::Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Json::deserialize(d)?;
        Field::from_json(&v).map_err(D::Error::custom)
    }
}
