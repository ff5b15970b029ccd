use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value as Json};

/// Points that can appear in a serialized divisor.
pub trait DivisorPoint: Ord + Clone + fmt::Display {
    fn point_json(&self) -> Json;
}

impl DivisorPoint for super::ProjPoint {
    fn point_json(&self) -> Json {
        self.to_json()
    }
}

/// A finite formal sum of points with nonzero integer multiplicities.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Divisor<P: Ord> {
    terms: BTreeMap<P, i64>,
}

impl<P: DivisorPoint> Divisor<P> {
    pub fn zero() -> Self {
        Divisor {
            terms: BTreeMap::new(),
        }
    }

    pub fn point(p: P) -> Self {
        let mut d = Divisor::zero();
        d.add_point(p, 1);
        d
    }

    pub fn from_points(points: impl IntoIterator<Item = P>) -> Self {
        let mut d = Divisor::zero();
        for p in points {
            d.add_point(p, 1);
        }
        d
    }

    pub fn add_point(&mut self, p: P, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, &m) in &other.terms {
            out.add_point(p.clone(), m);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, &m) in &other.terms {
            out.add_point(p.clone(), -m);
        }
        out
    }

    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn multiplicity(&self, p: &P) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &P> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&P, i64)> {
        self.terms.iter().map(|(p, &m)| (p, m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    /// `[{"point": .., "multiplicity": m}, ...]` in point order.
    pub fn to_json(&self) -> Json {
        Json::Array(
            self.terms
                .iter()
                .map(|(p, m)| json!({"point": p.point_json(), "multiplicity": m}))
                .collect(),
        )
    }
}

/// Written like `(2:1) + 2*(0:1) - (1:0)`.
impl<P: DivisorPoint> fmt::Display for Divisor<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, &m)) in self.terms.iter().enumerate() {
            let sign = if m < 0 { "-" } else { "+" };
            if k == 0 {
                if m < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match m.abs() {
                1 => write!(f, "{p}")?,
                n => write!(f, "{n}*{p}")?,
            }
        }
        Ok(())
    }
}

impl<P: DivisorPoint> fmt::Debug for Divisor<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::projective::ProjPoint;

    #[test]
    fn multiset_equality_and_degree() {
        let q = Field::rationals();
        let p = |t: i64| ProjPoint::affine(q.from_i64(t));
        let a = Divisor::from_points([p(1), p(2), p(1)]);
        let b = Divisor::from_points([p(2), p(1), p(1)]);
        assert_eq!(a, b);
        assert_eq!(a.degree(), 3);
        assert_eq!(a.multiplicity(&p(1)), 2);
        assert_eq!(a.minus(&b), Divisor::zero());
        assert_eq!(a.to_string(), "(2:1) + 2*(1:1)");
        let c = Divisor::point(p(0)).minus(&Divisor::point(ProjPoint::infinity(&q)));
        assert_eq!(c.degree(), 0);
        assert!(!c.is_effective());
    }
}
