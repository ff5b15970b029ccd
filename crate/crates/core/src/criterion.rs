//! Decision procedures for the two-Galois-point criterion.
//!
//! For groups `G1`, `G2` acting on a curve `C` and points `P1`, `P2`:
//!
//! * (a) `C/G1` and `C/G2` are rational,
//! * (b) `G1 ∩ G2 = {1}`,
//! * (c) `P1 + Σ_{σ∈G1} σ(P2) = P2 + Σ_{τ∈G2} τ(P1)` as divisors.
//!
//! The outer variant replaces (c) by `Σ σ(Q) = Σ τ(Q)` for one point `Q`.

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::projective::{Divisor, DivisorPoint, FiniteMoebiusGroup, ProjPoint};

/// A finite automorphism group of a curve, as far as the criterion needs it.
pub trait CurveGroup: Sync {
    type Point: DivisorPoint + Send + Sync;

    fn order(&self) -> usize;

    /// Labels of the non-identity elements shared with `other`.
    fn shared_nontrivial(&self, other: &Self) -> Vec<String>;

    /// `Σ_{g∈G} g(p)` with multiplicities.
    fn orbit_sum(&self, p: &Self::Point) -> Divisor<Self::Point>;

    /// Genus of the quotient of a curve of genus `curve_genus` by this group.
    fn quotient_genus(&self, curve_genus: u32) -> Result<u32>;
}

impl CurveGroup for FiniteMoebiusGroup {
    type Point = ProjPoint;

    fn order(&self) -> usize {
        FiniteMoebiusGroup::order(self)
    }

    fn shared_nontrivial(&self, other: &Self) -> Vec<String> {
        self.intersect(other).elements()[1..]
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn orbit_sum(&self, p: &ProjPoint) -> Divisor<ProjPoint> {
        FiniteMoebiusGroup::orbit_sum(self, p)
    }

    fn quotient_genus(&self, curve_genus: u32) -> Result<u32> {
        match curve_genus {
            0 => Ok(0),
            g => Err(Error::UnsupportedGenus(g)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionA {
    pub holds: bool,
    pub justification: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionB {
    pub holds: bool,
    pub intersection_size: usize,
    pub shared: Vec<String>,
}

/// Outcome of comparing the two sides of the divisor identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionC<P: DivisorPoint> {
    pub holds: bool,
    pub lhs: Divisor<P>,
    pub rhs: Divisor<P>,
    /// Set when the check was refused before comparing divisors.
    pub reason: Option<String>,
}

impl<P: DivisorPoint> ConditionC<P> {
    /// The common divisor `D` when the identity holds.
    pub fn divisor(&self) -> Option<&Divisor<P>> {
        self.holds.then_some(&self.lhs)
    }

    /// `lhs - rhs`; zero exactly when the identity holds.
    pub fn mismatch(&self) -> Divisor<P> {
        self.lhs.minus(&self.rhs)
    }

    pub fn to_json(&self) -> Json {
        let mut v = json!({
            "holds": self.holds,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        });
        if !self.holds {
            v["mismatch"] = self.mismatch().to_json();
        }
        if let Some(r) = &self.reason {
            v["reason"] = json!(r);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport<P: DivisorPoint> {
    pub cond_a: ConditionA,
    pub cond_b: ConditionB,
    pub cond_c: ConditionC<P>,
    pub degree_d: i64,
}

impl<P: DivisorPoint> CriterionReport<P> {
    pub fn holds(&self) -> bool {
        self.cond_a.holds && self.cond_b.holds && self.cond_c.holds
    }

    pub fn to_json(&self) -> Json {
        json!({
            "holds": self.holds(),
            "cond_a": {"holds": self.cond_a.holds, "justification": self.cond_a.justification},
            "cond_b": {
                "holds": self.cond_b.holds,
                "intersection_size": self.cond_b.intersection_size,
                "shared": self.cond_b.shared,
            },
            "cond_c": self.cond_c.to_json(),
            "degree_D": self.degree_d,
        })
    }
}

/// Condition (a) for one group.
pub fn check_a<G: CurveGroup>(genus: u32, group: &G) -> Result<ConditionA> {
    match genus {
        0 => Ok(ConditionA {
            holds: true,
            justification: "automatic, Lüroth: every quotient of a rational curve is rational".into(),
        }),
        1 => {
            let g = group.quotient_genus(1)?;
            Ok(ConditionA {
                holds: g == 0,
                justification: format!(
                    "Riemann-Hurwitz: quotient by a group of order {} has genus {g}",
                    group.order()
                ),
            })
        }
        g => Err(Error::UnsupportedGenus(g)),
    }
}

/// Condition (a) for both groups at once.
pub fn check_a_pair<G: CurveGroup>(genus: u32, g1: &G, g2: &G) -> Result<ConditionA> {
    let a1 = check_a(genus, g1)?;
    let a2 = check_a(genus, g2)?;
    Ok(ConditionA {
        holds: a1.holds && a2.holds,
        justification: if a1.justification == a2.justification {
            a1.justification
        } else {
            format!("G1: {}; G2: {}", a1.justification, a2.justification)
        },
    })
}

pub fn check_b<G: CurveGroup>(g1: &G, g2: &G) -> ConditionB {
    let shared = g1.shared_nontrivial(g2);
    ConditionB {
        holds: shared.is_empty(),
        intersection_size: shared.len() + 1,
        shared,
    }
}

pub fn check_c_inner<G: CurveGroup>(g1: &G, g2: &G, p1: &G::Point, p2: &G::Point) -> ConditionC<G::Point> {
    let lhs = Divisor::point(p1.clone()).plus(&g1.orbit_sum(p2));
    let rhs = Divisor::point(p2.clone()).plus(&g2.orbit_sum(p1));
    if p1 == p2 {
        return ConditionC {
            holds: false,
            lhs,
            rhs,
            reason: Some("P1 and P2 must be different points".into()),
        };
    }
    ConditionC {
        holds: lhs == rhs,
        lhs,
        rhs,
        reason: None,
    }
}

pub fn check_c_outer<G: CurveGroup>(g1: &G, g2: &G, q: &G::Point) -> ConditionC<G::Point> {
    let lhs = g1.orbit_sum(q);
    let rhs = g2.orbit_sum(q);
    ConditionC {
        holds: lhs == rhs,
        lhs,
        rhs,
        reason: None,
    }
}

/// All three conditions for an inner pair `(P1, P2)`.
pub fn check_inner<G: CurveGroup>(
    genus: u32,
    g1: &G,
    g2: &G,
    p1: &G::Point,
    p2: &G::Point,
) -> Result<CriterionReport<G::Point>> {
    let cond_a = check_a_pair(genus, g1, g2)?;
    let cond_b = check_b(g1, g2);
    let cond_c = check_c_inner(g1, g2, p1, p2);
    let degree_d = cond_c.lhs.degree();
    Ok(CriterionReport {
        cond_a,
        cond_b,
        cond_c,
        degree_d,
    })
}

/// Same as [`check_inner`] with the outer condition at `q`.
pub fn check_outer<G: CurveGroup>(genus: u32, g1: &G, g2: &G, q: &G::Point) -> Result<CriterionReport<G::Point>> {
    let cond_a = check_a_pair(genus, g1, g2)?;
    let cond_b = check_b(g1, g2);
    let cond_c = check_c_outer(g1, g2, q);
    let degree_d = cond_c.lhs.degree();
    Ok(CriterionReport {
        cond_a,
        cond_b,
        cond_c,
        degree_d,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerWitness<P: DivisorPoint> {
    pub p1: P,
    pub p2: P,
    pub divisor: Divisor<P>,
}

impl<P: DivisorPoint> InnerWitness<P> {
    pub fn to_json(&self) -> Json {
        json!({
            "P1": self.p1.point_json(),
            "P2": self.p2.point_json(),
            "D": self.divisor.to_json(),
            "degree": self.divisor.degree(),
        })
    }
}

/// Every ordered pair of distinct candidates satisfying condition (c), in
/// candidate order. Rows are checked in parallel.
pub fn search_inner<G: CurveGroup>(g1: &G, g2: &G, candidates: &[G::Point]) -> Vec<InnerWitness<G::Point>> {
    candidates
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, p1)| {
            candidates
                .iter()
                .enumerate()
                .filter(move |&(j, _)| j != i)
                .filter_map(move |(_, p2)| {
                    let c = check_c_inner(g1, g2, p1, p2);
                    c.holds.then(|| InnerWitness {
                        p1: p1.clone(),
                        p2: p2.clone(),
                        divisor: c.lhs,
                    })
                })
        })
        .collect()
}

/// Candidates `Q` satisfying the outer condition, in candidate order.
pub fn search_outer<G: CurveGroup>(g1: &G, g2: &G, candidates: &[G::Point]) -> Vec<(G::Point, Divisor<G::Point>)> {
    candidates
        .par_iter()
        .filter_map(|q| {
            let c = check_c_outer(g1, g2, q);
            c.holds.then(|| (q.clone(), c.lhs))
        })
        .collect()
}
