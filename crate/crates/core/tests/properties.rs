use galois_points::criterion::check_c_inner;
use galois_points::poly::resultant;
use galois_points::projective::DEFAULT_CAP;
use galois_points::{BiPoly, Field, FieldElem, FiniteMoebiusGroup, Moebius, Poly, ProjPoint, RatFunc};
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![2u64, 3, 7, 11, 13, 19]).prop_map(|p| Field::prime(p).unwrap())
}

fn golden() -> Field {
    let q = Field::rationals();
    Field::extension(&q, vec![q.from_i64(-1), q.from_i64(1), q.from_i64(1)]).unwrap()
}

fn elem_q() -> impl Strategy<Value = FieldElem> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| {
        let q = Field::rationals();
        q.from_i64(n).try_div(&q.from_i64(d)).unwrap()
    })
}

fn elem_ext() -> impl Strategy<Value = FieldElem> {
    (elem_q(), elem_q()).prop_map(|(c0, c1)| golden().from_coefficients(vec![c0, c1]).unwrap())
}

fn check_axioms(a: FieldElem, b: FieldElem, c: FieldElem) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
    prop_assert_eq!(a.clone() - a.clone(), a.field().zero());
    if !a.is_zero() {
        prop_assert_eq!(a.clone() * a.try_inv().unwrap(), a.field().one());
    } else {
        prop_assert!(a.try_inv().is_err());
    }
    Ok(())
}

fn poly_over(field: &Field, max_deg: usize) -> impl Strategy<Value = Poly> {
    let f = field.clone();
    prop::collection::vec(-6i64..6, 1..=max_deg + 1).prop_map(move |c| Poly::from_i64s(&f, &c))
}

fn nonconstant_ratfunc(max_deg: usize) -> impl Strategy<Value = RatFunc> {
    let q = Field::rationals();
    (poly_over(&q, max_deg), poly_over(&q, max_deg))
        .prop_filter_map("constant or zero denominator", |(n, d)| {
            let r = RatFunc::reduce(n, d).ok()?;
            (!r.is_constant()).then_some(r)
        })
}

fn moebius_over(field: Field) -> impl Strategy<Value = Moebius> {
    let p = field.characteristic() as i64;
    prop::array::uniform4(0..p).prop_filter_map("singular", move |e| {
        let [a, b, c, d] = e.map(|x| field.from_i64(x));
        Moebius::new(a, b, c, d).ok()
    })
}

fn as_bipoly(p: &Poly) -> Vec<BiPoly> {
    p.coeffs()
        .iter()
        .map(|c| BiPoly::from_terms(p.field(), [(0, 0, c.clone())]))
        .collect()
}

proptest! {
    #[test]
    fn prime_field_axioms((f, a, b, c) in prime().prop_flat_map(|f| {
        let p = f.characteristic() as i64;
        (Just(f), 0..p, 0..p, 0..p)
    })) {
        check_axioms(f.from_i64(a), f.from_i64(b), f.from_i64(c))?;
    }

    #[test]
    fn rational_axioms(a in elem_q(), b in elem_q(), c in elem_q()) {
        check_axioms(a, b, c)?;
    }

    #[test]
    fn extension_axioms(a in elem_ext(), b in elem_ext(), c in elem_ext()) {
        check_axioms(a, b, c)?;
    }

    #[test]
    fn moebius_apply_respects_composition(
        (m, n, x) in prop::sample::select(vec![7u64, 11, 13]).prop_flat_map(|p| {
            let f = Field::prime(p).unwrap();
            (moebius_over(f.clone()), moebius_over(f.clone()), 0..=p as i64)
        })
    ) {
        let f = m.field().clone();
        let p = f.characteristic() as i64;
        let pt = if x == p { ProjPoint::infinity(&f) } else { ProjPoint::affine(f.from_i64(x)) };
        prop_assert_eq!(m.compose(&n).apply(&pt), m.apply(&n.apply(&pt)));
        prop_assert_eq!(m.inverse().apply(&m.apply(&pt)), pt);
    }

    #[test]
    fn map_degree_is_multiplicative(f in nonconstant_ratfunc(3), g in nonconstant_ratfunc(3)) {
        let fg = f.compose(&g);
        prop_assert_eq!(fg.map_degree().unwrap(), f.map_degree().unwrap() * g.map_degree().unwrap());
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(
        (a, b) in prime().prop_flat_map(|f| (poly_over(&f, 4), poly_over(&f, 4)))
    ) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let r = resultant(&as_bipoly(&a), &as_bipoly(&b));
        prop_assert_eq!(r.is_zero(), !a.gcd(&b).is_constant());
    }

    #[test]
    fn divisor_identity_is_symmetric(
        (x1, x2, p) in prop::sample::select(vec![7u64, 11, 13]).prop_flat_map(|p| (0..=p as i64, 0..=p as i64, Just(p)))
    ) {
        let f = Field::prime(p).unwrap();
        let point = |x: i64| if x == p as i64 { ProjPoint::infinity(&f) } else { ProjPoint::affine(f.from_i64(x)) };
        let g1 = FiniteMoebiusGroup::generate(&f, &[Moebius::parse(&f, ["1", "-1", "1", "1"]).unwrap()], DEFAULT_CAP).unwrap();
        let g2 = FiniteMoebiusGroup::generate(&f, &[Moebius::parse(&f, ["0", "1", "-1/2", "1"]).unwrap()], DEFAULT_CAP).unwrap();
        let (p1, p2) = (point(x1), point(x2));
        let a = check_c_inner(&g1, &g2, &p1, &p2);
        let b = check_c_inner(&g2, &g1, &p2, &p1);
        prop_assert_eq!(a.holds, b.holds);
        prop_assert_eq!(&a.lhs, &b.rhs);
        prop_assert_eq!(&a.rhs, &b.lhs);
        prop_assert_eq!(a.lhs.degree(), g1.order() as i64 + 1);
    }
}
