//! Construction of the plane model `φ = (f:g:1)` for a rational curve.
//!
//! `f` generates the invariant field `k(t)^G1` with pole divisor the
//! `G1`-orbit of `P2`, and `g` generates `k(t)^G2` with pole divisor the
//! `G2`-orbit of `P1`. Projection of the image from `φ(P1)` is `f` and from
//! `φ(P2)` is `g`, so both centres are Galois points when the criterion holds.

use std::collections::HashMap;

use serde_json::{json, Value as Json};

use crate::criterion::{self, CriterionReport};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{resultant, BiPoly, Poly, RatFunc};
use crate::projective::{Divisor, FiniteMoebiusGroup, GroupStructure, Moebius, ProjPoint};

/// Largest finite field scanned exhaustively when checking fibers.
pub const EXHAUSTIVE_FIBER_LIMIT: u128 = 20_000;

/// Number of sample points used for the fiber check over infinite fields.
pub const FIBER_SAMPLES: usize = 3;

/// First element of `G` under which `h` is not invariant.
pub fn invariance_failure<'a>(h: &RatFunc, group: &'a FiniteMoebiusGroup) -> Option<&'a Moebius> {
    group.elements().iter().find(|m| &h.compose(&m.pullback()) != h)
}

fn is_generator(h: &RatFunc, group: &FiniteMoebiusGroup) -> bool {
    !h.is_constant()
        && h.map_degree().ok() == Some(group.order())
        && invariance_failure(h, group).is_none()
}

/// A generator of `k(t)^G` together with the name of the symmetric function
/// that produced it.
///
/// Candidates are tried in order: `Σ g*(t)`, `Σ g*(t)^2`, `Π g*(t)`, then the
/// remaining elementary symmetric functions of the `g*(t)`. Each is accepted
/// only after invariance and `deg = |G|` are checked.
pub fn invariant_generator_labeled(group: &FiniteMoebiusGroup) -> Result<(String, RatFunc)> {
    let n = group.order();
    if n < 2 {
        return Err(Error::NoGeneratorFound);
    }
    let field = group.field();
    let pulls: Vec<RatFunc> = group.elements().iter().map(Moebius::pullback).collect();
    let zero = RatFunc::constant(field.zero());
    let sum = pulls.iter().fold(zero.clone(), |acc, p| acc.add(p));
    if is_generator(&sum, group) {
        return Ok(("sum".into(), sum));
    }
    let squares = pulls.iter().fold(zero, |acc, p| acc.add(&p.mul(p)));
    if is_generator(&squares, group) {
        return Ok(("sum of squares".into(), squares));
    }
    // coefficients of Π (X + g*(t)): e[k] is the k-th elementary symmetric function
    let mut e = vec![RatFunc::constant(field.one())];
    for p in &pulls {
        let mut next = e.clone();
        next.push(RatFunc::constant(field.zero()));
        for k in 1..next.len() {
            next[k] = next[k].add(&e[k - 1].mul(p));
        }
        e = next;
    }
    if is_generator(&e[n], group) {
        return Ok(("product".into(), e[n].clone()));
    }
    for (k, h) in e.iter().enumerate().take(n).skip(2) {
        if is_generator(h, group) {
            return Ok((format!("e_{k}"), h.clone()));
        }
    }
    Err(Error::NoGeneratorFound)
}

pub fn invariant_generator(group: &FiniteMoebiusGroup) -> Result<RatFunc> {
    invariant_generator_labeled(group).map(|(_, h)| h)
}

/// The monic polynomial `Π (t - q)` over the finite points of `points`.
fn affine_vanishing(field: &Field, points: &[ProjPoint]) -> Poly {
    points
        .iter()
        .filter_map(ProjPoint::affine_value)
        .fold(Poly::one(field), |acc, q| &acc * &Poly::linear_root(&q))
}

/// Moves the poles of a `G`-invariant generator `h` onto the orbit of `p`.
///
/// Returns `h` when `h(p) = ∞` and `1/(h - h(p))` otherwise, then checks that
/// the pole divisor is exactly the orbit, each point with multiplicity one.
pub fn pole_align(h: &RatFunc, group: &FiniteMoebiusGroup, p: &ProjPoint) -> Result<RatFunc> {
    let orbit = group.orbit(p);
    if orbit.len() != group.order() {
        return Err(Error::NonFreeOrbit {
            point: p.to_string(),
            orbit: orbit.len(),
            order: group.order(),
        });
    }
    let f = match h.eval_point(p).affine_value() {
        None => h.clone(),
        Some(c) => h.sub(&RatFunc::constant(c)).recip()?,
    };
    let expected = affine_vanishing(h.field(), &orbit);
    if f.den() != &expected {
        return Err(Error::PoleMismatch(format!(
            "denominator {} differs from the orbit polynomial {}",
            f.den(),
            expected
        )));
    }
    let at_infinity = orbit.iter().any(ProjPoint::is_infinity);
    let (dn, dd) = (f.num().deg0(), f.den().deg0());
    let ok = if at_infinity { dn == dd + 1 } else { dn <= dd };
    if !ok {
        return Err(Error::PoleMismatch(format!(
            "numerator degree {dn} against denominator degree {dd} gives the wrong order at (1:0)"
        )));
    }
    Ok(f)
}

/// A homogeneous polynomial triple `(F0:F1:F2)` with no common zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub coords: [Poly; 3],
    pub degree: usize,
}

impl Parametrization {
    /// Clears denominators of `(f:g:1)` without checking base points.
    pub fn from_functions(f: &RatFunc, g: &RatFunc) -> Parametrization {
        let f2 = f.den().lcm(g.den());
        let f0 = f.num() * &f2.exact_div(f.den()).expect("lcm is a multiple");
        let f1 = g.num() * &f2.exact_div(g.den()).expect("lcm is a multiple");
        let degree = f0.deg0().max(f1.deg0()).max(f2.deg0());
        Parametrization {
            coords: [f0, f1, f2],
            degree,
        }
    }

    /// Image of a point of the line, as a homogeneous triple.
    pub fn eval_point(&self, p: &ProjPoint) -> [crate::field::FieldElem; 3] {
        self.coords
            .clone()
            .map(|c| c.eval_homogeneous(p.x(), p.y(), self.degree))
    }

    pub fn render(&self) -> String {
        let [a, b, c] = &self.coords;
        format!("({} : {} : {})", a.render("t"), b.render("t"), c.render("t"))
    }

    pub fn to_json(&self) -> Json {
        json!(self.coords.iter().map(poly_json).collect::<Vec<_>>())
    }
}

fn poly_json(p: &Poly) -> Json {
    json!(p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn ratfunc_json(f: &RatFunc) -> Json {
    json!({"num": poly_json(f.num()), "den": poly_json(f.den()), "text": f.render("t")})
}

/// Clears denominators of `(f:g:1)` and checks the triple has degree `deg D`
/// and no base point.
pub fn build_map(f: &RatFunc, g: &RatFunc, d: &Divisor<ProjPoint>) -> Result<Parametrization> {
    let par = Parametrization::from_functions(f, g);
    let expected = usize::try_from(d.degree()).unwrap_or(0);
    if par.degree != expected {
        return Err(Error::DegreeMismatch {
            expected,
            found: par.degree,
        });
    }
    let [f0, f1, f2] = &par.coords;
    let common = f0.gcd(f1).gcd(f2);
    if !common.is_constant() {
        return Err(Error::BasePointFound(format!("roots of {}", common.render("t"))));
    }
    if [f0, f1, f2].iter().all(|p| p.deg0() < par.degree) {
        return Err(Error::BasePointFound("(1:0)".into()));
    }
    Ok(par)
}

/// The reduced equation of the image of `t ↦ (f(t), g(t))`.
///
/// Computed as the squarefree part of `Res_t(num_f - X den_f, num_g - Y den_g)`
/// and normalized so the first coefficient in `(i+j, i)` order is one. The
/// result is checked to vanish on the parametrization, and its degree must
/// equal the degree of the parametrization; a smaller image degree means the
/// map is not birational onto its image.
pub fn implicitize(f: &RatFunc, g: &RatFunc) -> Result<BiPoly> {
    if f.is_constant() || g.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let field = f.field();
    let column = |r: &RatFunc, var: BiPoly| -> Vec<BiPoly> {
        let len = r.num().coeffs().len().max(r.den().coeffs().len());
        (0..len)
            .map(|k| {
                let c = BiPoly::constant(r.num().coeff(k));
                &c - &(&var * &BiPoly::constant(r.den().coeff(k)))
            })
            .collect()
    };
    let a = column(f, BiPoly::x(field));
    let b = column(g, BiPoly::y(field));
    let res = resultant(&a, &b);
    if res.is_zero() {
        return Err(Error::DegreeMismatch {
            expected: Parametrization::from_functions(f, g).degree,
            found: 0,
        });
    }
    let curve = res.squarefree_part().normalized();
    let par = Parametrization::from_functions(f, g);
    let [f0, f1, f2] = &par.coords;
    if !curve.eval_homogeneous(f0, f1, f2).is_zero() {
        return Err(Error::PoleMismatch(
            "implicit equation does not vanish on the parametrization".into(),
        ));
    }
    let found = curve.total_degree().unwrap_or(0);
    if found != par.degree {
        return Err(Error::DegreeMismatch {
            expected: par.degree,
            found,
        });
    }
    Ok(curve)
}

/// Evidence that a coordinate function is the quotient map by `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisCertificate {
    pub holds: bool,
    pub group_order: usize,
    pub structure: GroupStructure,
    pub map_degree: Option<usize>,
    pub invariance_failure: Option<String>,
    /// `"exhaustive"` over a finite field, `"sampled"` otherwise.
    pub fiber_mode: &'static str,
    pub fibers_checked: usize,
    pub fiber_failure: Option<String>,
}

impl GaloisCertificate {
    pub fn to_json(&self) -> Json {
        json!({
            "holds": self.holds,
            "group_order": self.group_order,
            "structure": self.structure.to_string(),
            "map_degree": self.map_degree,
            "invariance_failure": self.invariance_failure,
            "fiber_mode": self.fiber_mode,
            "fibers_checked": self.fibers_checked,
            "fiber_failure": self.fiber_failure,
        })
    }
}

/// Sample points `0, 1, -1, 2, -2, ...` whose orbits are free.
fn sample_points(group: &FiniteMoebiusGroup, count: usize) -> Vec<ProjPoint> {
    let field = group.field();
    (0..200i64)
        .map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
        .map(|t| ProjPoint::affine(field.from_i64(t)))
        .filter(|p| group.orbit(p).len() == group.order())
        .take(count)
        .collect()
}

/// Checks that the fiber of `coord` through `p` is the orbit of `p`, using
/// the homogeneous equation `num(t) v_b - v_a den(t)` of that fiber.
fn fiber_is_orbit(coord: &RatFunc, group: &FiniteMoebiusGroup, p: &ProjPoint) -> bool {
    let n = coord.homogeneous_degree();
    let v = coord.eval_point(p);
    let eq = &coord.num().scale(v.y()) - &coord.den().scale(v.x());
    if eq.is_zero() {
        return false;
    }
    let orbit = group.orbit(p);
    orbit.len() == n
        && orbit.iter().all(|o| match o.affine_value() {
            Some(t) => eq.eval(&t).is_zero(),
            None => eq.deg0() < n,
        })
}

fn exhaustive_fibers(coord: &RatFunc, group: &FiniteMoebiusGroup) -> Result<(usize, Option<String>)> {
    let points = ProjPoint::all(group.field())?;
    let mut index: HashMap<ProjPoint, usize> = HashMap::new();
    let mut fibers: Vec<Vec<ProjPoint>> = Vec::new();
    for p in points {
        let v = coord.eval_point(&p);
        let slot = *index.entry(v).or_insert_with(|| {
            fibers.push(Vec::new());
            fibers.len() - 1
        });
        fibers[slot].push(p);
    }
    for fiber in &fibers {
        let orbit = group.orbit(&fiber[0]);
        if orbit.len() != fiber.len() || !orbit.iter().all(|o| fiber.contains(o)) {
            return Ok((
                fibers.len(),
                Some(format!("fiber through {} is not its orbit", fiber[0])),
            ));
        }
    }
    Ok((fibers.len(), None))
}

/// Certifies that `coord` is invariant under `G`, has degree `|G|`, and has
/// the `G`-orbits as its fibers. Fibers are checked over every point of a
/// small finite field, or at a few sample points otherwise.
pub fn verify_galois_projection(coord: &RatFunc, group: &FiniteMoebiusGroup) -> GaloisCertificate {
    let order = group.order();
    let map_degree = coord.map_degree().ok();
    let invariance_failure = invariance_failure(coord, group).map(ToString::to_string);
    let small = group
        .field()
        .order()
        .is_some_and(|q| q <= EXHAUSTIVE_FIBER_LIMIT);
    let (fiber_mode, fibers_checked, fiber_failure) = if map_degree.is_none() {
        ("sampled", 0, Some("coordinate is constant".to_string()))
    } else if small {
        match exhaustive_fibers(coord, group) {
            Ok((n, failure)) => ("exhaustive", n, failure),
            Err(e) => ("exhaustive", 0, Some(e.to_string())),
        }
    } else {
        let samples = sample_points(group, FIBER_SAMPLES);
        let failure = samples
            .iter()
            .find(|p| !fiber_is_orbit(coord, group, p))
            .map(|p| format!("fiber through {p} is not its orbit"))
            .or_else(|| (samples.len() < FIBER_SAMPLES).then(|| "too few free sample orbits".to_string()));
        ("sampled", samples.len(), failure)
    };
    GaloisCertificate {
        holds: map_degree == Some(order) && invariance_failure.is_none() && fiber_failure.is_none(),
        group_order: order,
        structure: group.structure(),
        map_degree,
        invariance_failure,
        fiber_mode,
        fibers_checked,
        fiber_failure,
    }
}

/// The certified plane model of a rational curve with two Galois points.
#[derive(Clone, Debug)]
pub struct PlaneModel {
    pub p1: ProjPoint,
    pub p2: ProjPoint,
    pub generator_f: String,
    pub generator_g: String,
    pub f: RatFunc,
    pub g: RatFunc,
    pub divisor: Divisor<ProjPoint>,
    pub parametrization: Parametrization,
    pub implicit: BiPoly,
    pub cert_f: GaloisCertificate,
    pub cert_g: GaloisCertificate,
}

impl PlaneModel {
    pub fn degree(&self) -> usize {
        self.parametrization.degree
    }

    pub fn certified(&self) -> bool {
        self.cert_f.holds && self.cert_g.holds
    }

    pub fn to_json(&self) -> Json {
        json!({
            "P1": self.p1.to_json(),
            "P2": self.p2.to_json(),
            "f": ratfunc_json(&self.f),
            "g": ratfunc_json(&self.g),
            "generator_f": self.generator_f,
            "generator_g": self.generator_g,
            "D": self.divisor.to_json(),
            "degree": self.degree(),
            "parametrization": self.parametrization.to_json(),
            "implicit": self.implicit.to_json(),
            "certificates": {"P1": self.cert_f.to_json(), "P2": self.cert_g.to_json()},
        })
    }

    pub fn render_text(&self) -> String {
        let cert = |c: &GaloisCertificate| {
            format!(
                "{} (G = {}, order {}, {} fiber check over {} fibers)",
                if c.holds { "Galois" } else { "NOT Galois" },
                c.structure,
                c.group_order,
                c.fiber_mode,
                c.fibers_checked
            )
        };
        [
            format!("f = {}", self.f.render("t")),
            format!("g = {}", self.g.render("t")),
            format!("D = {}", self.divisor),
            format!("phi = {}", self.parametrization.render()),
            format!("phi(C): {} = 0", self.implicit.render()),
            format!("deg phi(C) = {}", self.implicit.total_degree().unwrap_or(0)),
            format!("projection from phi(P1) = phi{}: {}", self.p1, cert(&self.cert_f)),
            format!("projection from phi(P2) = phi{}: {}", self.p2, cert(&self.cert_g)),
        ]
        .join("\n")
    }
}

/// Result of the full pipeline: the criterion report, and the model when the
/// criterion holds.
#[derive(Clone, Debug)]
pub struct Construction {
    pub report: CriterionReport<ProjPoint>,
    pub model: Option<PlaneModel>,
}

/// Checks the criterion for `(G1, G2, P1, P2)` on the projective line and,
/// if it holds, builds and certifies the plane model.
pub fn run_construction(
    g1: &FiniteMoebiusGroup,
    g2: &FiniteMoebiusGroup,
    p1: &ProjPoint,
    p2: &ProjPoint,
) -> Result<Construction> {
    let report = criterion::check_inner(0, g1, g2, p1, p2)?;
    if !report.holds() {
        return Ok(Construction { report, model: None });
    }
    let divisor = report.cond_c.lhs.clone();
    let (generator_f, h1) = invariant_generator_labeled(g1)?;
    let (generator_g, h2) = invariant_generator_labeled(g2)?;
    let f = pole_align(&h1, g1, p2)?;
    let g = pole_align(&h2, g2, p1)?;
    let parametrization = build_map(&f, &g, &divisor)?;
    let implicit = implicitize(&f, &g)?;
    let cert_f = verify_galois_projection(&f, g1);
    let cert_g = verify_galois_projection(&g, g2);
    let model = PlaneModel {
        p1: p1.clone(),
        p2: p2.clone(),
        generator_f,
        generator_g,
        f,
        g,
        divisor,
        parametrization,
        implicit,
        cert_f,
        cert_g,
    };
    Ok(Construction {
        report,
        model: Some(model),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::DEFAULT_CAP;

    fn group(field: &Field, gens: &[[&str; 4]]) -> FiniteMoebiusGroup {
        let gens: Vec<Moebius> = gens.iter().map(|e| Moebius::parse(field, *e).unwrap()).collect();
        FiniteMoebiusGroup::generate(field, &gens, DEFAULT_CAP).unwrap()
    }

    fn rf(field: &Field, num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::reduce(Poly::from_i64s(field, num), Poly::from_i64s(field, den)).unwrap()
    }

    #[test]
    fn generators_of_scenario_one() {
        let q = Field::rationals();
        let g1 = group(&q, &[["1", "-1", "1", "1"]]);
        let g2 = group(&q, &[["0", "1", "-1/2", "1"]]);
        assert_eq!(invariant_generator(&g1).unwrap(), rf(&q, &[1, 0, -6, 0, 1], &[0, -1, 0, 1]));
        // oracle: t + 2/(2-t) + (t-2)/(t-1) + (2t-2)/t summed by hand
        assert_eq!(
            invariant_generator(&g2).unwrap(),
            rf(&q, &[-4, 16, -12, 0, 1], &[0, 2, -3, 1])
        );
    }

    #[test]
    fn sum_degenerates_for_sign_change() {
        let q = Field::rationals();
        let g = group(&q, &[["-1", "0", "0", "1"]]);
        let (label, h) = invariant_generator_labeled(&g).unwrap();
        assert_eq!(label, "sum of squares");
        assert_eq!(h, rf(&q, &[0, 0, 2], &[1]));
    }

    #[test]
    fn pole_alignment() {
        let q = Field::rationals();
        let g = group(&q, &[["-1", "0", "0", "1"]]);
        let h = rf(&q, &[0, 0, 1], &[1]);
        let f = pole_align(&h, &g, &ProjPoint::affine(q.one())).unwrap();
        assert_eq!(f, rf(&q, &[1], &[-1, 0, 1]));
        let err = pole_align(&h, &g, &ProjPoint::affine(q.zero())).unwrap_err();
        assert!(matches!(err, Error::NonFreeOrbit { orbit: 1, order: 2, .. }));
    }

    #[test]
    fn circle_and_line() {
        let q = Field::rationals();
        let f = rf(&q, &[1, 0, -1], &[1, 0, 1]);
        let g = rf(&q, &[0, 2], &[1, 0, 1]);
        let c = implicitize(&f, &g).unwrap();
        let one = q.one();
        let expected = BiPoly::from_terms(&q, [(0, 0, one.clone()), (0, 2, -&one), (2, 0, -&one)]);
        assert_eq!(c, expected);
        let t = RatFunc::var(&q);
        assert_eq!(implicitize(&t, &t).unwrap().total_degree(), Some(1));
    }

    #[test]
    fn non_birational_map_is_flagged() {
        let q = Field::rationals();
        let t2 = rf(&q, &[0, 0, 1], &[1]);
        let t4 = rf(&q, &[0, 0, 0, 0, 1], &[1]);
        assert_eq!(
            implicitize(&t2, &t4),
            Err(Error::DegreeMismatch { expected: 4, found: 2 })
        );
    }

    #[test]
    fn base_point_free_conic() {
        let q = Field::rationals();
        let t = RatFunc::var(&q);
        let t2 = rf(&q, &[0, 0, 1], &[1]);
        let d = Divisor::point(ProjPoint::infinity(&q)).plus(&Divisor::point(ProjPoint::infinity(&q)));
        let par = build_map(&t, &t2, &d).unwrap();
        assert_eq!(par.render(), "(t : t^2 : 1)");
    }

    #[test]
    fn identity_coordinate_is_not_galois() {
        let q = Field::rationals();
        let g = group(&q, &[["1", "-1", "1", "1"]]);
        let cert = verify_galois_projection(&RatFunc::var(&q), &g);
        assert!(!cert.holds);
        assert_eq!(cert.map_degree, Some(1));
    }

    #[test]
    fn scenario_one_pipeline() {
        let q = Field::rationals();
        let g1 = group(&q, &[["1", "-1", "1", "1"]]);
        let g2 = group(&q, &[["0", "1", "-1/2", "1"]]);
        let p1 = ProjPoint::parse(&q, "2", "1").unwrap();
        let p2 = ProjPoint::parse(&q, "-1", "1").unwrap();
        let c = run_construction(&g1, &g2, &p1, &p2).unwrap();
        let m = c.model.unwrap();
        assert_eq!(m.degree(), 5);
        assert!(m.certified());
        assert_eq!(m.implicit.total_degree(), Some(5));
    }

    #[test]
    fn exhaustive_fibers_over_f13() {
        let f = Field::prime(13).unwrap();
        let g = group(&f, &[["1", "-1", "1", "1"]]);
        let h = invariant_generator(&g).unwrap();
        let cert = verify_galois_projection(&h, &g);
        assert!(cert.holds, "{cert:?}");
        assert_eq!(cert.fiber_mode, "exhaustive");
    }
}
