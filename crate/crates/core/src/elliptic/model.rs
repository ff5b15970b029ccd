use std::collections::HashMap;

use serde_json::{json, Value as Json};

use super::curve::cross;
use super::{CubicPoint, EllAut, EllAutGroup, FermatCubic, Letter};
use crate::criterion::{self, CriterionReport, CurveGroup};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::{BiPoly, ExactMatrix};
use crate::projective::Divisor;

/// Evidence that `Q` yields two Galois points on the Fermat cubic: `G1 = ⟨σ⟩`,
/// `G2 = ⟨τ⟩` with `τ = η∘σ²∘η`, `P1 = τ²(Q)` and `P2 = σ²(Q)`.
#[derive(Clone, Debug)]
pub struct FermatCertificate {
    pub curve: FermatCubic,
    pub q: CubicPoint,
    pub p1: CubicPoint,
    pub p2: CubicPoint,
    pub sigma: EllAut,
    pub eta: EllAut,
    pub tau: EllAut,
    pub g1: EllAutGroup,
    pub g2: EllAutGroup,
    pub tau_order: usize,
    pub tau_q_is_sigma_q: bool,
    pub fixed_sigma: usize,
    pub fixed_tau: usize,
    pub report: CriterionReport<CubicPoint>,
}

impl FermatCertificate {
    pub fn holds(&self) -> bool {
        self.tau_order == 3
            && self.tau_q_is_sigma_q
            && self.fixed_sigma == 3
            && self.fixed_tau == 3
            && self.report.holds()
            && self.report.degree_d == 4
    }

    pub fn to_json(&self) -> Json {
        json!({
            "holds": self.holds(),
            "p": self.curve.p(),
            "omega": self.curve.omega().to_string(),
            "points": self.curve.points().iter().map(CubicPoint::to_json).collect::<Vec<_>>(),
            "Q": self.q.to_json(),
            "P1": self.p1.to_json(),
            "P2": self.p2.to_json(),
            "sigma": self.sigma.to_json(),
            "eta": self.eta.to_json(),
            "tau": self.tau.to_json(),
            "tau_order": self.tau_order,
            "tau_Q_equals_sigma_Q": self.tau_q_is_sigma_q,
            "fixed_points": {"sigma": self.fixed_sigma, "tau": self.fixed_tau},
            "criterion": self.report.to_json(),
        })
    }
}

/// Checks the two-Galois-point criterion on `X^3 + Y^3 + Z^3 = 0` for `Q`.
///
/// `Q` must satisfy `YZ ≠ 0`, `σ(Q) ≠ Q` and `σ²(Q) ≠ Q`. Over a finite field
/// a particular `Q` may have `σ²(Q) = τ²(Q)`; that is reported as
/// [`Error::DegenerateQ`] so a caller can move on to another point.
pub fn verify_fermat_criterion(curve: &FermatCubic, q: &CubicPoint) -> Result<FermatCertificate> {
    curve.index_of(q)?;
    if q.y().is_zero() || q.z().is_zero() {
        return Err(Error::HypothesisViolated(format!("{q} lies on YZ = 0")));
    }
    if &curve.sigma(q, 1) == q || &curve.sigma(q, 2) == q {
        return Err(Error::HypothesisViolated(format!("{q} is fixed by sigma")));
    }
    let sigma = EllAut::letter(curve, Letter::Sigma)?;
    let eta = EllAut::letter(curve, Letter::Eta(q.clone()))?;
    let tau = EllAut::word(curve, &[Letter::Eta(q.clone()), Letter::Sigma2, Letter::Eta(q.clone())])?;
    let p2 = curve.sigma(q, 2);
    let p1 = tau.compose(&tau).apply(curve, q)?;
    if p1 == p2 {
        return Err(Error::DegenerateQ(q.to_string()));
    }
    let g1 = EllAutGroup::generate(curve, std::slice::from_ref(&sigma));
    let g2 = EllAutGroup::generate(curve, std::slice::from_ref(&tau));
    let report = criterion::check_inner(1, &g1, &g2, &p1, &p2)?;
    Ok(FermatCertificate {
        curve: curve.clone(),
        q: q.clone(),
        tau_order: tau.order(),
        tau_q_is_sigma_q: tau.apply(curve, q)? == curve.sigma(q, 1),
        fixed_sigma: sigma.fixed_points().len(),
        fixed_tau: tau.fixed_points().len(),
        p1,
        p2,
        sigma,
        eta,
        tau,
        g1,
        g2,
        report,
    })
}

/// First passing certificate in enumeration order, with the reasons other
/// points were skipped.
#[derive(Clone, Debug)]
pub struct FermatScan {
    pub certificate: FermatCertificate,
    pub skipped: Vec<(CubicPoint, String)>,
}

pub fn scan_admissible(curve: &FermatCubic) -> Result<FermatScan> {
    let mut skipped = Vec::new();
    for q in curve.points() {
        match verify_fermat_criterion(curve, q) {
            Ok(cert) if cert.holds() => {
                return Ok(FermatScan {
                    certificate: cert,
                    skipped,
                })
            }
            Ok(_) => skipped.push((q.clone(), "certificate checks failed".to_string())),
            Err(e @ (Error::HypothesisViolated(_) | Error::DegenerateQ(_))) => {
                skipped.push((q.clone(), e.to_string()))
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::HypothesisViolated(format!(
        "no admissible point passes over F_{}",
        curve.p()
    )))
}

/// `Z/(Y - cZ)` on the pencil of lines through `(1:0:0)`, or `Y/Z` when `c`
/// is infinite. `None` marks a pole.
fn pencil(p: &CubicPoint, c: Option<&FieldElem>) -> Option<FieldElem> {
    let (y, z) = (p.y(), p.z());
    let (top, bottom) = match c {
        Some(c) => (z.clone(), y - &(c * z)),
        None => (y.clone(), z.clone()),
    };
    (!bottom.is_zero()).then(|| &top / &bottom)
}

/// `Y/Z` of a point, `None` when `Z = 0`.
fn y_over_z(p: &CubicPoint) -> Option<FieldElem> {
    (!p.z().is_zero()).then(|| p.y() / p.z())
}

/// Monomials `X^i Y^j` with `i + j ≤ 4`, ordered by `(i + j, i)`.
pub fn quartic_monomials() -> Vec<(usize, usize)> {
    (0..=4).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect()
}

/// The plane quartic through the image of `φ = (f:g:1)`.
#[derive(Clone, Debug)]
pub struct QuarticModel {
    pub poles_f: Divisor<CubicPoint>,
    pub poles_g: Divisor<CubicPoint>,
    /// Curve point index and the affine image `(f, g)`.
    pub image: Vec<(usize, FieldElem, FieldElem)>,
    pub kernel_dim: usize,
    pub quartic: BiPoly,
}

impl QuarticModel {
    pub fn distinct_images(&self) -> usize {
        let mut v: Vec<(&FieldElem, &FieldElem)> = self.image.iter().map(|(_, x, y)| (x, y)).collect();
        v.sort();
        v.dedup();
        v.len()
    }

    pub fn vanishes_on_image(&self) -> bool {
        self.image.iter().all(|(_, x, y)| self.quartic.eval(x, y).is_zero())
    }

    pub fn to_json(&self) -> Json {
        json!({
            "poles_f": self.poles_f.to_json(),
            "poles_g": self.poles_g.to_json(),
            "image_points": self.image.len(),
            "distinct_image_points": self.distinct_images(),
            "kernel_dim": self.kernel_dim,
            "quartic": self.quartic.to_json(),
            "quartic_text": self.quartic.render(),
        })
    }
}

/// Builds `f` and `g` from the pencil through `(1:0:0)` and fits the quartic
/// through the image of `(f:g:1)` over `E(F_p)`.
///
/// `f = 1/(y - y(P2))` with `y = Y/Z` is `σ`-invariant with poles on the
/// `σ`-orbit of `P2`; `g` is the same construction after `η`, based at
/// `η(P1)`, so it is `τ`-invariant with poles on the `τ`-orbit of `P1`.
pub fn build_quartic_model(cert: &FermatCertificate) -> Result<QuarticModel> {
    let curve = &cert.curve;
    let c_f = y_over_z(&cert.p2);
    let eta_p1 = cert.eta.apply(curve, &cert.p1)?;
    let c_g = y_over_z(&eta_p1);
    let f_vals: Vec<Option<FieldElem>> = curve.points().iter().map(|p| pencil(p, c_f.as_ref())).collect();
    let g_vals: Vec<Option<FieldElem>> = (0..curve.len())
        .map(|i| pencil(curve.point(cert.eta.apply_index(i)), c_g.as_ref()))
        .collect();

    for (vals, group, name) in [(&f_vals, &cert.g1, "f"), (&g_vals, &cert.g2, "g")] {
        for g in group.elements() {
            if let Some(i) = (0..curve.len()).find(|&i| vals[g.apply_index(i)] != vals[i]) {
                return Err(Error::PoleVerificationFailed(format!(
                    "{name} is not invariant under {g} at {}",
                    curve.point(i)
                )));
            }
        }
    }

    let poles = |vals: &[Option<FieldElem>]| {
        Divisor::from_points(
            (0..curve.len())
                .filter(|&i| vals[i].is_none())
                .map(|i| curve.point(i).clone()),
        )
    };
    let poles_f = poles(&f_vals);
    let poles_g = poles(&g_vals);
    let d = cert
        .report
        .cond_c
        .divisor()
        .ok_or_else(|| Error::PoleVerificationFailed("criterion does not hold".into()))?;
    if poles_f != cert.g1.orbit_sum(&cert.p2) || poles_f != d.minus(&Divisor::point(cert.p1.clone())) {
        return Err(Error::PoleVerificationFailed(format!(
            "poles of f are {poles_f}, expected D - P1"
        )));
    }
    if poles_g != cert.g2.orbit_sum(&cert.p1) || poles_g != d.minus(&Divisor::point(cert.p2.clone())) {
        return Err(Error::PoleVerificationFailed(format!(
            "poles of g are {poles_g}, expected D - P2"
        )));
    }

    let image: Vec<(usize, FieldElem, FieldElem)> = (0..curve.len())
        .filter_map(|i| Some((i, f_vals[i].clone()?, g_vals[i].clone()?)))
        .collect();
    let monomials = quartic_monomials();
    let rows = image
        .iter()
        .map(|(_, x, y)| {
            monomials
                .iter()
                .map(|&(i, j)| &x.pow(i as u64) * &y.pow(j as u64))
                .collect()
        })
        .collect();
    let matrix = ExactMatrix::new(curve.field(), monomials.len(), rows);
    let kernel = matrix.kernel();
    if kernel.len() != 1 {
        return Err(Error::FitFailed(kernel.len()));
    }
    let quartic = BiPoly::from_terms(
        curve.field(),
        monomials
            .iter()
            .zip(&kernel[0])
            .map(|(&(i, j), c)| (i, j, c.clone())),
    )
    .normalized();
    let found = quartic.total_degree().unwrap_or(0);
    if found != 4 {
        return Err(Error::DegreeMismatch { expected: 4, found });
    }
    let model = QuarticModel {
        poles_f,
        poles_g,
        image,
        kernel_dim: kernel.len(),
        quartic,
    };
    if !model.vanishes_on_image() {
        return Err(Error::FitFailed(kernel.len()));
    }
    Ok(model)
}

/// Whether projection from `center` is the quotient map by `group` on `E(F_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterCheck {
    pub center: String,
    pub invariant: bool,
    pub fibers: usize,
    pub fibers_are_orbits: bool,
}

impl CenterCheck {
    pub fn holds(&self) -> bool {
        self.invariant && self.fibers_are_orbits
    }

    pub fn to_json(&self) -> Json {
        json!({
            "center": self.center,
            "holds": self.holds(),
            "invariant": self.invariant,
            "fibers": self.fibers,
            "fibers_are_orbits": self.fibers_are_orbits,
        })
    }
}

/// Compares the fibers of projection from `center` with the orbits of
/// `group`. The line through the centre and `P` is `center × P`; a centre
/// lying on the curve is left out of its own fiber.
pub fn center_fiber_check(curve: &FermatCubic, center: &[FieldElem; 3], group: &EllAutGroup) -> CenterCheck {
    let line = |i: usize| CubicPoint::from_array(cross(center, curve.point(i).coords())).ok();
    let keys: Vec<Option<CubicPoint>> = (0..curve.len()).map(line).collect();
    let invariant = group
        .elements()
        .iter()
        .all(|g| (0..curve.len()).all(|i| keys[g.apply_index(i)] == keys[i]));
    let mut slots: HashMap<&CubicPoint, usize> = HashMap::new();
    let mut fibers: Vec<Vec<usize>> = Vec::new();
    for (i, key) in keys.iter().enumerate() {
        let Some(key) = key else { continue };
        let slot = *slots.entry(key).or_insert_with(|| {
            fibers.push(Vec::new());
            fibers.len() - 1
        });
        fibers[slot].push(i);
    }
    let fibers_are_orbits = fibers.iter().all(|fiber| {
        let orbit = group.orbit(curve.point(fiber[0])).expect("point is on the curve");
        orbit.len() == fiber.len() && fiber.iter().all(|&i| orbit.contains(curve.point(i)))
    });
    let center_text = match CubicPoint::from_array(center.clone()) {
        Ok(p) => p.to_string(),
        Err(_) => "(0:0:0)".into(),
    };
    CenterCheck {
        center: center_text,
        invariant,
        fibers: fibers.len(),
        fibers_are_orbits,
    }
}

/// Witness that `R1 = (1:0:0)`, `R2 = (0:1:0)` and `R3 = (0:0:1)` are outer
/// Galois points: projection from `Ri` is the quotient by scaling the
/// `i`-th coordinate by `ω`. Completeness of this set is not checked.
pub fn outer_delta_check(curve: &FermatCubic) -> Result<Vec<CenterCheck>> {
    (0..3)
        .map(|i| {
            let mut center = [0, 1, 2].map(|_| curve.field().zero());
            center[i] = curve.field().one();
            let g = EllAutGroup::generate(curve, &[EllAut::letter(curve, Letter::Scale(i))?]);
            debug_assert_eq!(g.order(), 3);
            Ok(center_fiber_check(curve, &center, &g))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_admissible_point_over_f19() {
        let e = FermatCubic::new(19).unwrap();
        let scan = scan_admissible(&e).unwrap();
        let c = &scan.certificate;
        assert_eq!(c.q, CubicPoint::parse(e.field(), "1", "4", "5").unwrap());
        assert_eq!(c.p1, CubicPoint::parse(e.field(), "1", "6", "5").unwrap());
        assert_eq!(c.p2, CubicPoint::parse(e.field(), "1", "9", "16").unwrap());
        assert_eq!(c.report.degree_d, 4);
        assert!(c.holds());
    }

    #[test]
    fn hypotheses_are_enforced() {
        let e = FermatCubic::new(19).unwrap();
        let fixed = CubicPoint::parse(e.field(), "0", "-1", "1").unwrap();
        assert!(matches!(verify_fermat_criterion(&e, &fixed), Err(Error::HypothesisViolated(_))));
        let off = CubicPoint::parse(e.field(), "1", "1", "1").unwrap();
        assert!(matches!(verify_fermat_criterion(&e, &off), Err(Error::NotOnCurve(_))));
    }

    #[test]
    fn quartic_fit() {
        let e = FermatCubic::new(19).unwrap();
        let scan = scan_admissible(&e).unwrap();
        let m = build_quartic_model(&scan.certificate).unwrap();
        assert_eq!(m.kernel_dim, 1);
        assert_eq!(m.image.len(), 23);
        assert_eq!(m.distinct_images(), 21);
        assert_eq!(m.poles_f.degree(), 3);
        assert!(m.vanishes_on_image());
    }

    #[test]
    fn outer_points_and_negative_control() {
        let e = FermatCubic::new(19).unwrap();
        let checks = outer_delta_check(&e).unwrap();
        assert!(checks.iter().all(CenterCheck::holds));
        assert_eq!(checks[0].fibers, 11);
        let g = EllAutGroup::generate(&e, &[EllAut::letter(&e, Letter::Sigma).unwrap()]);
        let inner = CubicPoint::parse(e.field(), "0", "-1", "1").unwrap();
        assert!(!center_fiber_check(&e, inner.coords(), &g).holds());
    }
}
