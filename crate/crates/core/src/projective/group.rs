use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{Divisor, Moebius, ProjPoint};
use crate::error::{Error, Result};
use crate::field::Field;

/// Default bound on the size of a generated group.
pub const DEFAULT_CAP: usize = 120;

/// Isomorphism type of a small finite group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupStructure {
    Trivial,
    Cyclic(usize),
    Klein,
    /// Dihedral of order `2n`.
    Dihedral(usize),
    Other(usize),
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupStructure::Trivial => write!(f, "1"),
            GroupStructure::Cyclic(n) => write!(f, "Z/{n}"),
            GroupStructure::Klein => write!(f, "Z/2xZ/2"),
            GroupStructure::Dihedral(n) => write!(f, "D_{n}"),
            GroupStructure::Other(n) => write!(f, "order {n}"),
        }
    }
}

/// A finite subgroup of `PGL(2, k)`, stored as its list of elements with the
/// identity first and the rest in breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct FiniteMoebiusGroup {
    field: Field,
    generators: Vec<Moebius>,
    elements: Vec<Moebius>,
}

impl FiniteMoebiusGroup {
    pub fn trivial(field: &Field) -> FiniteMoebiusGroup {
        FiniteMoebiusGroup {
            field: field.clone(),
            generators: Vec::new(),
            elements: vec![Moebius::identity(field)],
        }
    }

    /// Closes `generators` under composition, failing once more than `cap`
    /// elements have been found.
    pub fn generate(field: &Field, generators: &[Moebius], cap: usize) -> Result<FiniteMoebiusGroup> {
        if let Some(g) = generators.iter().find(|g| g.field() != field) {
            return Err(Error::DescriptorMismatch(field.to_string(), g.field().to_string()));
        }
        let id = Moebius::identity(field);
        let mut seen: HashSet<Moebius> = HashSet::from([id.clone()]);
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in generators {
                let next = g.compose(&current);
                if seen.insert(next.clone()) {
                    if elements.len() == cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    elements.push(next);
                }
            }
        }
        Ok(FiniteMoebiusGroup {
            field: field.clone(),
            generators: generators.to_vec(),
            elements,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generators(&self) -> &[Moebius] {
        &self.generators
    }

    pub fn elements(&self) -> &[Moebius] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Moebius) -> bool {
        self.elements.contains(m)
    }

    /// Elements of `self` that also lie in `other`, in the order of `self`.
    pub fn intersect(&self, other: &FiniteMoebiusGroup) -> FiniteMoebiusGroup {
        let elements: Vec<Moebius> = self
            .elements
            .iter()
            .filter(|m| other.contains(m))
            .cloned()
            .collect();
        FiniteMoebiusGroup {
            field: self.field.clone(),
            generators: elements[1..].to_vec(),
            elements,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Distinct images of `p`, starting with `p` itself.
    pub fn orbit(&self, p: &ProjPoint) -> Vec<ProjPoint> {
        let mut out: Vec<ProjPoint> = Vec::new();
        for g in &self.elements {
            let q = g.apply(p);
            if !out.contains(&q) {
                out.push(q);
            }
        }
        out
    }

    /// `sum_{g in G} g(p)`, counted with multiplicity.
    pub fn orbit_sum(&self, p: &ProjPoint) -> Divisor<ProjPoint> {
        Divisor::from_points(self.elements.iter().map(|g| g.apply(p)))
    }

    pub fn stabilizer_order(&self, p: &ProjPoint) -> usize {
        self.elements.iter().filter(|g| &g.apply(p) == p).count()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| {
            self.generators
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements
            .iter()
            .map(|g| g.order(self.order()).expect("element order divides group order"))
            .collect()
    }

    pub fn structure(&self) -> GroupStructure {
        let n = self.order();
        let orders = self.element_orders();
        if n == 1 {
            return GroupStructure::Trivial;
        }
        if orders.contains(&n) {
            return GroupStructure::Cyclic(n);
        }
        if n == 4 && orders.iter().all(|&o| o <= 2) {
            return GroupStructure::Klein;
        }
        if n.is_multiple_of(2) && !self.is_abelian() {
            let half = n / 2;
            if let Some(r) = self.elements.iter().zip(&orders).find(|(_, &o)| o == half) {
                let rotations: HashSet<Moebius> = (0..half as u32).map(|k| r.0.pow(k)).collect();
                let reflections_ok = self
                    .elements
                    .iter()
                    .zip(&orders)
                    .filter(|(g, _)| !rotations.contains(g))
                    .all(|(_, &o)| o == 2);
                if reflections_ok {
                    return GroupStructure::Dihedral(half);
                }
            }
        }
        GroupStructure::Other(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_of_order_four() {
        let q = Field::rationals();
        let s = Moebius::parse(&q, ["1", "-1", "1", "1"]).unwrap();
        let g = FiniteMoebiusGroup::generate(&q, &[s], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.structure(), GroupStructure::Cyclic(4));
        let p = ProjPoint::parse(&q, "-1", "1").unwrap();
        let orbit = g.orbit(&p);
        assert_eq!(orbit.len(), 4);
        assert_eq!(g.orbit_sum(&p).degree(), 4);
    }

    #[test]
    fn klein_four_and_dihedral() {
        let q = Field::rationals();
        let a = Moebius::parse(&q, ["-1", "0", "0", "1"]).unwrap();
        let b = Moebius::parse(&q, ["0", "1", "1", "0"]).unwrap();
        let k = FiniteMoebiusGroup::generate(&q, &[a.clone(), b.clone()], DEFAULT_CAP).unwrap();
        assert_eq!(k.structure(), GroupStructure::Klein);
        assert_eq!(k.structure().to_string(), "Z/2xZ/2");
        // t -> -1/(t+1) has order three; with t -> 1/t it generates S_3
        let r = Moebius::parse(&q, ["0", "-1", "1", "1"]).unwrap();
        let d = FiniteMoebiusGroup::generate(&q, &[r, b], DEFAULT_CAP).unwrap();
        assert_eq!(d.order(), 6);
        assert_eq!(d.structure(), GroupStructure::Dihedral(3));
        assert_eq!(k.intersect(&d).order(), 2);
    }

    #[test]
    fn infinite_group_hits_cap() {
        let q = Field::rationals();
        let t = Moebius::parse(&q, ["1", "1", "0", "1"]).unwrap();
        assert_eq!(
            FiniteMoebiusGroup::generate(&q, &[t], 50).unwrap_err(),
            Error::CapExceeded(50)
        );
    }
}
