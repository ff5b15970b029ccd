use std::collections::HashSet;
use std::fmt;

use serde_json::{json, Value as Json};

use super::{CubicPoint, FermatCubic};
use crate::criterion::CurveGroup;
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::projective::{Divisor, GroupStructure};

/// Building blocks of automorphism words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `(X:Y:Z) ↦ (ωX:Y:Z)`.
    Sigma,
    /// `(X:Y:Z) ↦ (ω²X:Y:Z)`.
    Sigma2,
    /// The involution swapping the given point `Q` and `σ Q`.
    Eta(CubicPoint),
    /// `P ↦ P ⊞ T`.
    Translate(CubicPoint),
    /// Multiplies coordinate `i` by `ω`.
    Scale(usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Sigma => write!(f, "sigma"),
            Letter::Sigma2 => write!(f, "sigma^2"),
            Letter::Eta(_) => write!(f, "eta"),
            Letter::Translate(t) => write!(f, "translate{t}"),
            Letter::Scale(i) => write!(f, "scale{}", ["X", "Y", "Z"][*i]),
        }
    }
}

/// An automorphism of `E(F_p)` written as a composition of letters (applied
/// right to left) together with its table of point indices. Equality is
/// equality of tables.
#[derive(Clone)]
pub struct EllAut {
    word: Vec<Letter>,
    image: Vec<usize>,
}

impl EllAut {
    pub fn identity(curve: &FermatCubic) -> EllAut {
        EllAut {
            word: Vec::new(),
            image: (0..curve.len()).collect(),
        }
    }

    pub fn letter(curve: &FermatCubic, letter: Letter) -> Result<EllAut> {
        let map = |p: &CubicPoint| match &letter {
            Letter::Sigma => curve.sigma(p, 1),
            Letter::Sigma2 => curve.sigma(p, 2),
            Letter::Eta(q) => curve.eta(p, q),
            Letter::Translate(t) => curve.add(p, t),
            Letter::Scale(i) => curve.scale(p, *i),
        };
        match &letter {
            Letter::Eta(q) | Letter::Translate(q) => {
                curve.index_of(q)?;
            }
            Letter::Scale(i) if *i > 2 => {
                return Err(Error::Config(format!("no coordinate {i} to scale")));
            }
            _ => {}
        }
        let image = curve
            .points()
            .iter()
            .map(|p| curve.index_of(&map(p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(EllAut {
            word: vec![letter],
            image,
        })
    }

    /// Composes letters written left to right, applying the rightmost first.
    pub fn word(curve: &FermatCubic, letters: &[Letter]) -> Result<EllAut> {
        letters.iter().try_fold(EllAut::identity(curve), |acc, l| {
            Ok(acc.compose(&EllAut::letter(curve, l.clone())?))
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &EllAut) -> EllAut {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        EllAut {
            word,
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn apply(&self, curve: &FermatCubic, p: &CubicPoint) -> Result<CubicPoint> {
        Ok(curve.point(self.image[curve.index_of(p)?]).clone())
    }

    pub fn image_table(&self) -> &[usize] {
        &self.image
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.compose(self);
            n += 1;
        }
        n
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.image.len()).filter(|&i| self.image[i] == i).collect()
    }

    pub fn to_json(&self) -> Json {
        json!({"word": self.to_string(), "image": self.image})
    }
}

impl PartialEq for EllAut {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl Eq for EllAut {}

impl fmt::Display for EllAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.word.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("∘"))
    }
}

impl fmt::Debug for EllAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EllAut({self})")
    }
}

/// Genus of `E/G` for a group of prime order `order` with `fixed` fixed
/// points, from Riemann-Hurwitz `0 = n(2g' - 2) + r(n - 1)`.
pub fn quotient_genus(order: u64, fixed: u64) -> Result<u32> {
    let bad = Error::InconsistentRamification { order, fixed };
    if !is_prime(order) {
        return Err(bad);
    }
    let ramification = fixed * (order - 1);
    let two_n = 2 * order;
    if !ramification.is_multiple_of(two_n) || ramification / two_n > 1 {
        return Err(bad);
    }
    Ok(1 - (ramification / two_n) as u32)
}

/// A finite group of automorphisms of `E(F_p)`, listed with the identity first.
#[derive(Clone, Debug)]
pub struct EllAutGroup {
    curve: FermatCubic,
    elements: Vec<EllAut>,
}

impl EllAutGroup {
    pub fn generate(curve: &FermatCubic, generators: &[EllAut]) -> EllAutGroup {
        let id = EllAut::identity(curve);
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.image.clone()]);
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in generators {
                let next = g.compose(&current);
                if seen.insert(next.image.clone()) {
                    elements.push(next);
                }
            }
        }
        EllAutGroup {
            curve: curve.clone(),
            elements,
        }
    }

    pub fn curve(&self) -> &FermatCubic {
        &self.curve
    }

    pub fn elements(&self) -> &[EllAut] {
        &self.elements
    }

    pub fn orbit(&self, p: &CubicPoint) -> Result<Vec<CubicPoint>> {
        let i = self.curve.index_of(p)?;
        let mut out: Vec<CubicPoint> = Vec::new();
        for g in &self.elements {
            let q = self.curve.point(g.apply_index(i)).clone();
            if !out.contains(&q) {
                out.push(q);
            }
        }
        Ok(out)
    }

    pub fn structure(&self) -> GroupStructure {
        let n = self.elements.len();
        match n {
            1 => GroupStructure::Trivial,
            _ if self.elements.iter().any(|g| g.order() == n) => GroupStructure::Cyclic(n),
            _ => GroupStructure::Other(n),
        }
    }

    /// Points fixed by every element.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.curve.len())
            .filter(|&i| self.elements.iter().all(|g| g.apply_index(i) == i))
            .collect()
    }
}

impl CurveGroup for EllAutGroup {
    type Point = CubicPoint;

    fn order(&self) -> usize {
        self.elements.len()
    }

    fn shared_nontrivial(&self, other: &Self) -> Vec<String> {
        self.elements[1..]
            .iter()
            .filter(|g| other.elements.contains(g))
            .map(ToString::to_string)
            .collect()
    }

    /// Panics if `p` is not on the curve.
    fn orbit_sum(&self, p: &CubicPoint) -> Divisor<CubicPoint> {
        let i = self.curve.index_of(p).expect("orbit of a point on the curve");
        Divisor::from_points(
            self.elements
                .iter()
                .map(|g| self.curve.point(g.apply_index(i)).clone()),
        )
    }

    fn quotient_genus(&self, curve_genus: u32) -> Result<u32> {
        if curve_genus != 1 {
            return Err(Error::UnsupportedGenus(curve_genus));
        }
        quotient_genus(self.elements.len() as u64, self.fixed_points().len() as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riemann_hurwitz() {
        assert_eq!(quotient_genus(3, 3), Ok(0));
        assert_eq!(quotient_genus(3, 0), Ok(1));
        assert_eq!(quotient_genus(2, 4), Ok(0));
        assert!(quotient_genus(3, 1).is_err());
        assert!(quotient_genus(4, 2).is_err());
    }

    #[test]
    fn sigma_group_and_translation() {
        let e = FermatCubic::new(19).unwrap();
        let s = EllAut::letter(&e, Letter::Sigma).unwrap();
        assert_eq!(s.order(), 3);
        assert_eq!(s.fixed_points().len(), 3);
        let g = EllAutGroup::generate(&e, std::slice::from_ref(&s));
        assert_eq!(g.quotient_genus(1), Ok(0));
        assert_eq!(EllAut::word(&e, &[Letter::Sigma, Letter::Sigma]).unwrap(), EllAut::letter(&e, Letter::Sigma2).unwrap());
        // a point of order three gives a fixed-point-free translation
        let t = e
            .points()
            .iter()
            .find(|p| {
                let two = e.add(p, p);
                *p != e.origin() && &e.add(&two, p) == e.origin()
            })
            .unwrap()
            .clone();
        let tr = EllAut::letter(&e, Letter::Translate(t)).unwrap();
        assert_eq!(tr.order(), 3);
        assert!(tr.fixed_points().is_empty());
        assert_eq!(EllAutGroup::generate(&e, &[tr]).quotient_genus(1), Ok(1));
    }
}
