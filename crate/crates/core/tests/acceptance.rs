//! Acceptance suite. Prints one `[PASS]` or `[FAIL]` line per criterion and
//! fails if any criterion fails. Run with `--nocapture` to see the lines.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use galois_points::criterion::{check_c_inner, search_inner};
use galois_points::elliptic::{build_quartic_model, quartic_monomials, scan_admissible, FermatCubic};
use galois_points::embedding::{invariant_generator, run_construction, verify_galois_projection, PlaneModel};
use galois_points::harness::{builtin, run_scenario, run_search, ScenarioConfig, Setup, Status};
use galois_points::projective::DEFAULT_CAP;
use galois_points::{Field, FiniteMoebiusGroup, Moebius, Poly, ProjPoint, RatFunc};
use rand::{rngs::StdRng, Rng, SeedableRng};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rational_setup(name: &str) -> galois_points::harness::RationalSetup {
    match builtin(name).unwrap().resolve().unwrap() {
        Setup::Rational(s) => s,
        Setup::Fermat(_) => panic!("{name} is not a rational scenario"),
    }
}

fn build(name: &str) -> Result<PlaneModel, String> {
    let s = rational_setup(name);
    let c = run_construction(&s.g1, &s.g2, s.p1.as_ref().unwrap(), s.p2.as_ref().unwrap()).map_err(|e| e.to_string())?;
    ensure(c.report.holds(), format!("{name}: criterion fails"))?;
    c.model.ok_or_else(|| format!("{name}: no model"))
}

/// True when `a` is a nonzero constant multiple of `b`.
fn proportional(a: &Poly, b: &Poly) -> bool {
    match (a.lc(), b.lc()) {
        (Some(la), Some(lb)) => a.scale(lb) == b.scale(la),
        _ => false,
    }
}

/// True when the rational functions differ by a nonzero constant factor.
fn ratfunc_proportional(a: &RatFunc, b: &RatFunc) -> bool {
    proportional(&(a.num() * b.den()), &(b.num() * a.den()))
}

fn poly_from_roots(field: &Field, roots: &[i64]) -> Poly {
    roots.iter().fold(Poly::one(field), |acc, r| &acc * &Poly::from_i64s(field, &[-r, 1]))
}

fn common_model_checks(m: &PlaneModel, degree: usize, order: usize) -> Check {
    ensure(m.degree() == degree, format!("model degree {} != {degree}", m.degree()))?;
    ensure(
        m.implicit.total_degree() == Some(degree),
        format!("implicit degree {:?} != {degree}", m.implicit.total_degree()),
    )?;
    let [x, y, z] = &m.parametrization.coords;
    ensure(
        m.implicit.eval_homogeneous(x, y, z).is_zero(),
        "implicit curve does not vanish on the parametrization",
    )?;
    for (label, cert) in [("f", &m.cert_f), ("g", &m.cert_g)] {
        ensure(cert.holds, format!("certificate for {label} fails"))?;
        ensure(cert.group_order == order, format!("certificate for {label} has order {}", cert.group_order))?;
    }
    Ok(())
}

fn criterion_1() -> Check {
    let m = build("rational-z4z4")?;
    let q = Field::rationals();
    common_model_checks(&m, 5, 4)?;
    ensure(m.divisor.degree() == 5, "deg D != 5")?;
    let expect_f = RatFunc::reduce(Poly::from_i64s(&q, &[1, 0, -6, 0, 1]), Poly::from_i64s(&q, &[0, -1, 0, 1])).unwrap();
    ensure(m.f == expect_f, format!("f = {}", m.f.render("t")))?;

    // First and third coordinates of the reference triple, before clearing.
    let first = &(&Poly::from_i64s(&q, &[1, 0, -6, 0, 1]) * &Poly::from_i64s(&q, &[-1, 2])).scale(&q.from_i64(2));
    let third = poly_from_roots(&q, &[0, -1, 1]).scale(&q.from_i64(2));
    let third = &third * &Poly::from_i64s(&q, &[-1, 2]);
    let reference = RatFunc::reduce(first.clone(), third).unwrap();
    ensure(ratfunc_proportional(&m.f, &reference), "f is not proportional to the reference first/third ratio")?;

    let frozen: [(usize, usize, i64); 19] = [
        (0, 0, 799),
        (0, 1, -132),
        (1, 0, -3216),
        (0, 2, -688),
        (1, 1, 6153),
        (2, 0, -5204),
        (0, 3, 328),
        (1, 2, -3225),
        (2, 1, 4961),
        (3, 0, -1776),
        (0, 4, -28),
        (1, 3, 522),
        (2, 2, -1216),
        (3, 1, 810),
        (4, 0, -124),
        (1, 4, -24),
        (2, 3, 84),
        (3, 2, -84),
        (4, 1, 24),
    ];
    let d = q.from_i64(799);
    for (i, j, c) in frozen {
        let want = q.from_i64(c).try_div(&d).unwrap();
        ensure(m.implicit.coeff(i, j) == want, format!("implicit coefficient of X^{i}Y^{j}"))?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    let s = rational_setup("rational-klein");
    for (label, g) in [("G1", &s.g1), ("G2", &s.g2)] {
        let order2 = g.elements().iter().all(|e| e.is_identity() || e.order(DEFAULT_CAP) == Ok(2));
        ensure(g.order() == 4 && order2 && g.is_abelian(), format!("{label} is not a Klein four group"))?;
    }
    let m = build("rational-klein")?;
    common_model_checks(&m, 5, 4)?;

    // The reference triple with alpha = 2, alpha' = 3, read in s = 1/t.
    let q = Field::rationals();
    let (a, b) = (2, 3);
    let sq = |c: i64| Poly::from_i64s(&q, &[-c, 0, 1]);
    let lin = |c: i64| Poly::from_i64s(&q, &[-c, 1]);
    let r0 = &sq(a).pow(2) * &lin(b);
    let r1 = &sq(b).pow(2) * &lin(a);
    let r2 = poly_from_roots(&q, &[0, 1, a, b]);
    let inv = RatFunc::reduce(Poly::one(&q), Poly::var(&q)).unwrap();
    let f_s = m.f.compose(&inv);
    let g_s = m.g.compose(&inv);
    ensure(
        ratfunc_proportional(&f_s, &RatFunc::reduce(r0, r2.clone()).unwrap()),
        format!("f(1/s) = {} is not a multiple of R0/R2", f_s.render("s")),
    )?;
    ensure(
        ratfunc_proportional(&g_s, &RatFunc::reduce(r1, r2).unwrap()),
        format!("g(1/s) = {} is not a multiple of R1/R2", g_s.render("s")),
    )
}

fn criterion_3() -> Check {
    let m = build("rational-mixed")?;
    common_model_checks(&m, 5, 4)?;
    ensure(m.cert_f.structure.to_string() == "Z/4", format!("G at P1 is {}", m.cert_f.structure))?;
    ensure(m.cert_g.structure.to_string() == "Z/2xZ/2", format!("G at P2 is {}", m.cert_g.structure))
}

fn criterion_4() -> Check {
    let s = rational_setup("rational-z5z5");
    for (label, g) in [("sigma", &s.g1), ("tau", &s.g2)] {
        let o = g.generators()[0].order(DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(o == 5, format!("{label} has order {o}"))?;
    }
    let (p1, p2) = (s.p1.clone().unwrap(), s.p2.clone().unwrap());
    let a = s.field.generator().unwrap();
    let expected: BTreeSet<ProjPoint> = [
        ProjPoint::new(s.field.one(), s.field.zero()).unwrap(),
        ProjPoint::new(s.field.zero(), s.field.one()).unwrap(),
        ProjPoint::new(s.field.one(), s.field.one()).unwrap(),
        ProjPoint::new(s.field.one(), a).unwrap(),
    ]
    .into_iter()
    .collect();
    let rest = |g: &FiniteMoebiusGroup, p: &ProjPoint| -> BTreeSet<ProjPoint> {
        g.orbit(p).into_iter().filter(|x| x != p).collect()
    };
    ensure(rest(&s.g1, &p2) == expected, "G1-orbit of P2 without P2 differs")?;
    ensure(rest(&s.g2, &p1) == expected, "G2-orbit of P1 without P1 differs")?;
    let m = build("rational-z5z5")?;
    ensure(m.divisor.degree() == 6, "deg D != 6")?;
    common_model_checks(&m, 6, 5)
}

fn criterion_5() -> Check {
    let curve = FermatCubic::new(19).map_err(|e| e.to_string())?;
    let scan = scan_admissible(&curve).map_err(|e| e.to_string())?;
    let cert = &scan.certificate;
    ensure(cert.q.to_string() == "(1:4:5)", format!("first admissible Q is {}", cert.q))?;
    ensure(cert.holds(), "criterion fails")?;
    ensure(cert.report.degree_d == 4, "divisor degree != 4")?;
    ensure(cert.fixed_sigma == 3 && cert.fixed_tau == 3, "fixed-point counts differ from 3/3")?;
    let model = build_quartic_model(cert).map_err(|e| e.to_string())?;
    ensure(model.kernel_dim == 1, format!("kernel dimension {}", model.kernel_dim))?;
    ensure(model.vanishes_on_image(), "quartic does not vanish on the image")?;
    let f = curve.field();
    let frozen = [1, 10, 10, 8, 16, 8, 4, 14, 14, 4, 0, 6, 13, 6, 0];
    for ((i, j), c) in quartic_monomials().into_iter().zip(frozen) {
        ensure(model.quartic.coeff(i, j) == f.from_i64(c), format!("quartic coefficient of X^{i}Y^{j}"))?;
    }
    let run = run_scenario(&builtin("elliptic-fermat").unwrap());
    ensure(run.status == Status::Ok, format!("harness status {:?}", run.status))
}

/// Groups the points of P^1(F_p) by the value of `h`.
fn fibers(h: &RatFunc, points: &[ProjPoint]) -> BTreeSet<BTreeSet<ProjPoint>> {
    let mut by_value: BTreeMap<ProjPoint, BTreeSet<ProjPoint>> = BTreeMap::new();
    for p in points {
        by_value.entry(h.eval_point(p)).or_default().insert(p.clone());
    }
    by_value.into_values().collect()
}

fn criterion_6() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut done = 0;
    let primes = [7u64, 11, 13];
    while done < 100 {
        let p = primes[done % 3];
        let field = Field::prime(p).unwrap();
        let e: Vec<_> = (0..4).map(|_| field.from_i64(rng.gen_range(0..p as i64))).collect();
        let Ok(m) = Moebius::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) else {
            continue;
        };
        if m.is_identity() {
            continue;
        }
        let g = FiniteMoebiusGroup::generate(&field, std::slice::from_ref(&m), DEFAULT_CAP).map_err(|e| e.to_string())?;
        let h = invariant_generator(&g).map_err(|e| format!("{m} over F_{p}: {e}"))?;
        let deg = h.map_degree().map_err(|e| e.to_string())?;
        ensure(deg == g.order(), format!("{m} over F_{p}: map degree {deg} != {}", g.order()))?;
        let points = ProjPoint::all(&field).unwrap();
        let orbits: BTreeSet<BTreeSet<ProjPoint>> = points.iter().map(|x| g.orbit(x).into_iter().collect()).collect();
        ensure(fibers(&h, &points) == orbits, format!("{m} over F_{p}: fibers differ from orbits"))?;
        done += 1;
    }
    Ok(())
}

fn search_config(p: u64, g1: &[[&str; 4]], g2: &[[&str; 4]]) -> ScenarioConfig {
    let gens = |g: &[[&str; 4]]| serde_json::json!(g);
    let text = serde_json::json!({
        "name": format!("search-f{p}"),
        "field": {"kind": "prime", "p": p},
        "curve": "rational",
        "generators_g1": gens(g1),
        "generators_g2": gens(g2),
    });
    ScenarioConfig::from_json_str(&text.to_string()).unwrap()
}

fn criterion_7() -> Check {
    let sigma = ["1", "-1", "1", "1"];
    let tau = ["0", "1", "-1/2", "1"];
    let klein2 = [["0", "1", "2", "0"], ["1", "-1/2", "1", "-1"]];
    let klein3 = [["0", "1", "3", "0"], ["1", "-1/3", "1", "-1"]];
    let mut total = 0;
    let mut klein_hits_f11 = 0;
    for p in [7u64, 11] {
        for (label, g1, g2) in [
            ("cyclic", vec![sigma], vec![tau]),
            ("klein", klein2.to_vec(), klein3.to_vec()),
            ("mixed", vec![sigma], klein2.to_vec()),
        ] {
            let config = search_config(p, &g1, &g2);
            let report = run_search(&config);
            ensure(report.status == Status::Ok, format!("{label} over F_{p}: status {:?}", report.status))?;
            let Setup::Rational(s) = config.resolve().unwrap() else { unreachable!() };
            let hits = search_inner(&s.g1, &s.g2, &ProjPoint::all(&s.field).unwrap());
            ensure(hits.len() == report.hits.len(), format!("{label} over F_{p}: hit counts differ"))?;
            for w in &hits {
                let a = check_c_inner(&s.g1, &s.g2, &w.p1, &w.p2);
                let b = check_c_inner(&s.g2, &s.g1, &w.p2, &w.p1);
                ensure(
                    a.holds && b.holds && a.lhs == b.rhs && a.rhs == b.lhs,
                    format!("{label} over F_{p}: asymmetric at P1 = {}, P2 = {}", w.p1, w.p2),
                )?;
                let free = s.g1.orbit(&w.p2).len() == s.g1.order() && s.g2.orbit(&w.p1).len() == s.g2.order();
                if free {
                    ensure(
                        w.divisor.degree() == s.g1.order() as i64 + 1,
                        format!("{label} over F_{p}: deg D = {}", w.divisor.degree()),
                    )?;
                }
            }
            total += hits.len();
            if p == 11 && label == "klein" {
                klein_hits_f11 = hits.len();
            }
        }
    }
    ensure(total > 0, "no witnesses at all")?;
    ensure(klein_hits_f11 > 0, "no Klein witnesses over F_11")
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let curve = FermatCubic::new(19).map_err(|e| e.to_string())?;
    let n = curve.len();
    let table = curve.addition_table();
    let o = curve.index_of(curve.origin()).unwrap();
    for a in 0..n {
        let pa = curve.point(a);
        ensure(table[a][o] == a, format!("identity fails at {pa}"))?;
        let na = curve.index_of(&curve.neg(pa)).unwrap();
        ensure(table[a][na] == o, format!("inverse fails at {pa}"))?;
        for b in 0..n {
            ensure(table[a][b] == table[b][a], "addition is not commutative")?;
            ensure(
                curve.index_of(&curve.add(pa, curve.point(b))).unwrap() == table[a][b],
                "table disagrees with the chord-tangent law",
            )?;
            for c in 0..n {
                ensure(table[table[a][b]][c] == table[a][table[b][c]], "addition is not associative")?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))
}

fn criterion_9() -> Check {
    let s = rational_setup("rational-z4z4");
    let q = &s.field;
    let p1 = s.p1.clone().unwrap();
    let p2 = s.p2.clone().unwrap();
    let wrong = ProjPoint::parse(q, "0", "1").unwrap();
    for (label, a, b) in [("swapped", &p2, &p1), ("incorrect P2", &p1, &wrong)] {
        let c = check_c_inner(&s.g1, &s.g2, a, b);
        ensure(!c.holds, format!("{label}: condition (c) holds"))?;
        ensure(!c.mismatch().is_zero(), format!("{label}: no mismatch witness"))?;
    }

    let mut groups = vec![s.g1.clone(), s.g2.clone()];
    groups.push(rational_setup("rational-klein").g1);
    groups.push(rational_setup("rational-z5z5").g1);
    let f7 = Field::prime(7).unwrap();
    groups.push(
        FiniteMoebiusGroup::generate(&f7, &[Moebius::parse(&f7, ["1", "-1", "1", "1"]).unwrap()], DEFAULT_CAP).unwrap(),
    );
    for g in &groups {
        ensure(g.order() > 1, "trivial group in the control set")?;
        let t = RatFunc::var(g.field());
        let cert = verify_galois_projection(&t, g);
        ensure(!cert.holds, format!("f = t passes for a group of order {}", g.order()))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("1 scenario z4z4: quintic model with two Z/4 points", criterion_1),
        ("2 scenario klein: reference triple up to scalars", criterion_2),
        ("3 scenario mixed: Z/4 and Klein four certificates", criterion_3),
        ("4 scenario z5z5: order-5 groups over Q(a)", criterion_4),
        ("5 Fermat cubic over F_19: criterion and quartic", criterion_5),
        ("6 invariant generators: fibers equal orbits", criterion_6),
        ("7 search witnesses: divisor identity symmetry", criterion_7),
        ("8 Fermat cubic group law", criterion_8),
        ("9 negative controls", criterion_9),
    ];
    let mut failed = Vec::new();
    for (label, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("[PASS] {label} ({:.2?})", start.elapsed()),
            Err(e) => {
                println!("[FAIL] {label}: {e}");
                failed.push(label);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
