use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::elliptic::{CubicPoint, FermatCubic};
use crate::error::{Error, Result};
use crate::field::{parse_json_elem, Field, FieldDescriptor};
use crate::projective::{FiniteMoebiusGroup, Moebius, ProjPoint, DEFAULT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    Rational,
    FermatCubic,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Inner,
    Outer,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g2: Option<String>,
}

/// A scenario as read from JSON. Field elements stay as JSON values (strings
/// or integers) until the field is known.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub field: Json,
    pub curve: CurveKind,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub generators_g1: Vec<Vec<Json>>,
    #[serde(default)]
    pub generators_g2: Vec<Vec<Json>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<Vec<Json>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<Vec<Json>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Json>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<Vec<Vec<Json>>>,
    #[serde(default)]
    pub forbidden_characteristics: Vec<u64>,
    #[serde(default)]
    pub expect: Expectations,
}

const BUILTINS: [(&str, &str); 5] = [
    ("rational-z4z4", include_str!("../../scenarios/rational-z4z4.json")),
    ("rational-klein", include_str!("../../scenarios/rational-klein.json")),
    ("rational-mixed", include_str!("../../scenarios/rational-mixed.json")),
    ("rational-z5z5", include_str!("../../scenarios/rational-z5z5.json")),
    ("elliptic-fermat", include_str!("../../scenarios/elliptic-fermat.json")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

pub fn builtin(name: &str) -> Result<ScenarioConfig> {
    let (_, text) = BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Config(format!("unknown scenario {name:?}; try `gpl list`")))?;
    ScenarioConfig::from_json_str(text)
}

/// A rational-curve configuration with every value parsed.
#[derive(Clone, Debug)]
pub struct RationalSetup {
    pub field: Field,
    pub g1: FiniteMoebiusGroup,
    pub g2: FiniteMoebiusGroup,
    pub p1: Option<ProjPoint>,
    pub p2: Option<ProjPoint>,
    pub q: Option<ProjPoint>,
    pub candidates: Option<Vec<ProjPoint>>,
}

/// A Fermat-cubic configuration with every value parsed.
#[derive(Clone, Debug)]
pub struct FermatSetup {
    pub curve: FermatCubic,
    pub q: Option<CubicPoint>,
}

#[derive(Clone, Debug)]
pub enum Setup {
    Rational(RationalSetup),
    Fermat(FermatSetup),
}

impl ScenarioConfig {
    pub fn from_json_str(text: &str) -> Result<ScenarioConfig> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &std::path::Path) -> Result<ScenarioConfig> {
        let text = std::fs::read_to_string(path)?;
        ScenarioConfig::from_json_str(&text)
    }

    pub fn to_json(&self) -> Json {
        serde_json::to_value(self).expect("config is plain data")
    }

    /// Parses the field, groups and points and enforces the characteristic
    /// restrictions. Every failure here is a configuration error.
    pub fn resolve(&self) -> Result<Setup> {
        self.resolve_inner().map_err(|e| match e {
            Error::Config(_) | Error::Io(_) => e,
            other => Error::Config(other.to_string()),
        })
    }

    fn resolve_inner(&self) -> Result<Setup> {
        let field = Field::from_json(&self.field)?;
        let ch = field.characteristic();
        if ch != 0 && self.forbidden_characteristics.contains(&ch) {
            return Err(Error::Config(format!(
                "scenario {} requires characteristic other than {}",
                self.name,
                self.forbidden_characteristics
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        match self.curve {
            CurveKind::Rational => self.resolve_rational(field).map(Setup::Rational),
            CurveKind::FermatCubic => self.resolve_fermat(field).map(Setup::Fermat),
        }
    }

    fn resolve_rational(&self, field: Field) -> Result<RationalSetup> {
        let group = |gens: &[Vec<Json>], label: &str| -> Result<FiniteMoebiusGroup> {
            if gens.is_empty() {
                return Err(Error::Config(format!("{label} needs at least one generator")));
            }
            let ms = gens
                .iter()
                .map(|g| Moebius::from_json(&field, &Json::Array(g.clone())))
                .collect::<Result<Vec<_>>>()?;
            FiniteMoebiusGroup::generate(&field, &ms, DEFAULT_CAP)
        };
        let point = |v: &Option<Vec<Json>>| -> Result<Option<ProjPoint>> {
            v.as_ref()
                .map(|c| ProjPoint::from_json(&field, &Json::Array(c.clone())))
                .transpose()
        };
        let g1 = group(&self.generators_g1, "generators_g1")?;
        let g2 = group(&self.generators_g2, "generators_g2")?;
        let p1 = point(&self.p1)?;
        let p2 = point(&self.p2)?;
        let q = point(&self.q)?;
        if let (Some(a), Some(b)) = (&p1, &p2) {
            if a == b {
                return Err(Error::Config(format!("P1 and P2 coincide at {a}")));
            }
        }
        let candidates = self
            .candidates
            .as_ref()
            .map(|list| {
                list.iter()
                    .map(|c| ProjPoint::from_json(&field, &Json::Array(c.clone())))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(RationalSetup {
            field,
            g1,
            g2,
            p1,
            p2,
            q,
            candidates,
        })
    }

    fn resolve_fermat(&self, field: Field) -> Result<FermatSetup> {
        let p = match field.descriptor() {
            FieldDescriptor::Prime { p } => *p,
            _ => {
                return Err(Error::Config(
                    "the Fermat cubic is supported over prime fields only".into(),
                ))
            }
        };
        if !self.generators_g1.is_empty() || !self.generators_g2.is_empty() {
            return Err(Error::Config(
                "Fermat cubic groups are fixed as <sigma> and <tau>; remove the generator lists".into(),
            ));
        }
        let curve = FermatCubic::new(p)?;
        let q = self
            .q
            .as_ref()
            .map(|c| -> Result<CubicPoint> {
                if c.len() != 3 {
                    return Err(Error::Config("Q needs three coordinates".into()));
                }
                let e = c
                    .iter()
                    .map(|v| parse_json_elem(curve.field(), v))
                    .collect::<Result<Vec<_>>>()?;
                let [x, y, z]: [_; 3] = e.try_into().expect("length checked");
                let q = CubicPoint::new(x, y, z)?;
                curve.index_of(&q)?;
                Ok(q)
            })
            .transpose()?;
        Ok(FermatSetup { curve, q })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_resolve() {
        for name in builtin_names() {
            let c = builtin(name).unwrap();
            assert_eq!(c.name, name);
            c.resolve().unwrap();
        }
        assert!(matches!(builtin("nope"), Err(Error::Config(_))));
    }

    #[test]
    fn characteristic_three_is_rejected() {
        let mut c = builtin("rational-z4z4").unwrap();
        c.field = serde_json::json!({"kind": "prime", "p": 3});
        assert!(matches!(c.resolve(), Err(Error::Config(m)) if m.contains("characteristic")));
        c.field = serde_json::json!({"kind": "prime", "p": 7});
        assert!(c.resolve().is_ok());
    }

    #[test]
    fn unknown_keys_and_singular_matrices() {
        assert!(ScenarioConfig::from_json_str(r#"{"name":"x","field":{"kind":"rationals"},"curve":"rational","bogus":1}"#).is_err());
        let mut c = builtin("rational-z4z4").unwrap();
        c.generators_g1 = vec![vec!["1".into(), "2".into(), "2".into(), "4".into()]];
        assert!(matches!(c.resolve(), Err(Error::Config(_))));
    }
}
