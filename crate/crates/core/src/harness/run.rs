use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde_json::{json, Value as Json};

use super::config::{FermatSetup, Mode, RationalSetup, ScenarioConfig, Setup};
use crate::criterion::{self, CriterionReport};
use crate::elliptic::{self, FermatCertificate};
use crate::embedding::run_construction;
use crate::error::{Error, Result};
use crate::projective::{DivisorPoint, FiniteMoebiusGroup, ProjPoint};

/// Process exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    CriterionFailed = 2,
    ConstructionFailed = 3,
    ExpectationMismatch = 4,
    ConfigError = 5,
    IoError = 6,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::CriterionFailed => "criterion failed",
            Status::ConstructionFailed => "construction failed",
            Status::ExpectationMismatch => "expectation mismatch",
            Status::ConfigError => "configuration error",
            Status::IoError => "i/o error",
        }
    }

    /// Status for an error raised outside configuration parsing.
    pub fn for_error(e: &Error) -> Status {
        match e {
            Error::Config(_) => Status::ConfigError,
            Error::Io(_) => Status::IoError,
            _ => Status::ConstructionFailed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectationCheck {
    pub name: &'static str,
    pub expected: String,
    pub found: String,
}

impl ExpectationCheck {
    pub fn ok(&self) -> bool {
        self.expected == self.found
    }
}

/// Everything a scenario run produced.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub name: String,
    pub field: String,
    pub status: Status,
    pub error: Option<String>,
    /// Lines of the human-readable rendering, without the status line.
    pub text: Vec<String>,
    pub criterion: Option<Json>,
    pub model: Option<Json>,
    pub expectations: Vec<ExpectationCheck>,
    /// Degree of the plane model, or of `D` when no model was built.
    pub degree: Option<usize>,
}

impl RunReport {
    fn new(config: &ScenarioConfig) -> RunReport {
        RunReport {
            name: config.name.clone(),
            field: String::new(),
            status: Status::Ok,
            error: None,
            text: Vec::new(),
            criterion: None,
            model: None,
            expectations: Vec::new(),
            degree: None,
        }
    }

    fn fail(mut self, status: Status, e: &Error) -> RunReport {
        self.status = status;
        self.error = Some(e.to_string());
        self
    }

    pub fn to_json(&self) -> Json {
        json!({
            "name": self.name,
            "field": self.field,
            "status": self.status.label(),
            "exit_code": self.status.code(),
            "error": self.error,
            "degree": self.degree,
            "criterion": self.criterion,
            "model": self.model,
            "expectations": self.expectations.iter().map(|e| json!({
                "name": e.name,
                "expected": e.expected,
                "found": e.found,
                "ok": e.ok(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("scenario: {}\n", self.name);
        if !self.field.is_empty() {
            let _ = writeln!(out, "field: {}", self.field);
        }
        for line in &self.text {
            let _ = writeln!(out, "{line}");
        }
        for e in &self.expectations {
            let _ = writeln!(
                out,
                "expect {}: {} (found {}) {}",
                e.name,
                e.expected,
                e.found,
                if e.ok() { "ok" } else { "MISMATCH" }
            );
        }
        if let Some(err) = &self.error {
            let _ = writeln!(out, "error: {err}");
        }
        let _ = writeln!(out, "status: {} (exit {})", self.status.label(), self.status.code());
        out
    }
}

fn criterion_lines<P: DivisorPoint>(r: &CriterionReport<P>) -> Vec<String> {
    let yes = |b: bool| if b { "holds" } else { "FAILS" };
    let mut lines = vec![
        format!("condition (a): {} ({})", yes(r.cond_a.holds), r.cond_a.justification),
        format!(
            "condition (b): {} (|G1 ∩ G2| = {})",
            yes(r.cond_b.holds),
            r.cond_b.intersection_size
        ),
    ];
    if !r.cond_b.shared.is_empty() {
        lines.push(format!("  shared elements: {}", r.cond_b.shared.join(", ")));
    }
    lines.push(format!("condition (c): {}", yes(r.cond_c.holds)));
    lines.push(format!("  lhs = {}", r.cond_c.lhs));
    lines.push(format!("  rhs = {}", r.cond_c.rhs));
    if let Some(reason) = &r.cond_c.reason {
        lines.push(format!("  {reason}"));
    } else if !r.cond_c.holds {
        lines.push(format!("  lhs - rhs = {}", r.cond_c.mismatch()));
    }
    lines.push(format!("deg D = {}", r.degree_d));
    lines
}

fn group_line(label: &str, g: &FiniteMoebiusGroup) -> String {
    let gens: Vec<String> = g.generators().iter().map(ToString::to_string).collect();
    format!("{label} = <{}> ({}, order {})", gens.join(", "), g.structure(), g.order())
}

fn check_expectations(report: &mut RunReport, config: &ScenarioConfig, degree: usize, g1: String, g2: String) {
    let e = &config.expect;
    if let Some(d) = e.degree {
        report.expectations.push(ExpectationCheck {
            name: "degree",
            expected: d.to_string(),
            found: degree.to_string(),
        });
    }
    for (name, want, got) in [("G1", &e.g1, g1), ("G2", &e.g2, g2)] {
        if let Some(w) = want {
            report.expectations.push(ExpectationCheck {
                name,
                expected: w.clone(),
                found: got,
            });
        }
    }
    if report.expectations.iter().any(|c| !c.ok()) {
        report.status = Status::ExpectationMismatch;
    }
}

fn run_rational(config: &ScenarioConfig, setup: &RationalSetup, mut report: RunReport) -> RunReport {
    let RationalSetup { g1, g2, .. } = setup;
    report.text.push(group_line("G1", g1));
    report.text.push(group_line("G2", g2));
    match config.mode {
        Mode::Outer => {
            let Some(q) = &setup.q else {
                return report.fail(Status::ConfigError, &Error::Config("outer mode needs Q".into()));
            };
            report.text.push(format!("Q = {q}"));
            let r = match criterion::check_outer(0, g1, g2, q) {
                Ok(r) => r,
                Err(e) => return report.fail(Status::for_error(&e), &e),
            };
            report.text.extend(criterion_lines(&r));
            report.criterion = Some(r.to_json());
            report.degree = usize::try_from(r.degree_d).ok();
            if !r.holds() {
                report.status = Status::CriterionFailed;
                return report;
            }
            let d = report.degree.unwrap_or(0);
            check_expectations(&mut report, config, d, g1.structure().to_string(), g2.structure().to_string());
            report
        }
        Mode::Inner => {
            let (Some(p1), Some(p2)) = (&setup.p1, &setup.p2) else {
                return report.fail(Status::ConfigError, &Error::Config("inner mode needs P1 and P2".into()));
            };
            report.text.push(format!("P1 = {p1}, P2 = {p2}"));
            let c = match run_construction(g1, g2, p1, p2) {
                Ok(c) => c,
                Err(e) => {
                    return report.fail(Status::for_error(&e), &e);
                }
            };
            report.text.extend(criterion_lines(&c.report));
            report.criterion = Some(c.report.to_json());
            report.degree = usize::try_from(c.report.degree_d).ok();
            let Some(model) = c.model else {
                report.status = Status::CriterionFailed;
                return report;
            };
            report.text.push(model.render_text());
            report.model = Some(model.to_json());
            if !model.certified() {
                report.status = Status::ConstructionFailed;
                report.error = Some("a projection failed its Galois certificate".into());
                return report;
            }
            report.degree = Some(model.degree());
            check_expectations(
                &mut report,
                config,
                model.degree(),
                model.cert_f.structure.to_string(),
                model.cert_g.structure.to_string(),
            );
            report
        }
    }
}

fn fermat_lines(cert: &FermatCertificate) -> Vec<String> {
    let c = &cert.curve;
    let mut lines = vec![
        format!("curve: X^3 + Y^3 + Z^3 = 0, {} points over F_{}", c.len(), c.p()),
        format!("omega = {}", c.omega()),
        format!("Q = {}", cert.q),
        format!("P1 = tau^2(Q) = {}, P2 = sigma^2(Q) = {}", cert.p1, cert.p2),
        format!(
            "tau = eta∘sigma^2∘eta has order {}; tau(Q) = sigma(Q): {}",
            cert.tau_order, cert.tau_q_is_sigma_q
        ),
        format!("fixed points: sigma {}, tau {}", cert.fixed_sigma, cert.fixed_tau),
    ];
    lines.extend(criterion_lines(&cert.report));
    lines
}

fn run_fermat(config: &ScenarioConfig, setup: &FermatSetup, mut report: RunReport) -> RunReport {
    if config.mode == Mode::Outer {
        return report.fail(
            Status::ConfigError,
            &Error::Config("the Fermat cubic scenario checks inner points; outer points are always reported".into()),
        );
    }
    let curve = &setup.curve;
    let (cert, skipped) = match &setup.q {
        Some(q) => match elliptic::verify_fermat_criterion(curve, q) {
            Ok(c) => (c, Vec::new()),
            Err(e @ Error::HypothesisViolated(_)) => return report.fail(Status::ConfigError, &e),
            Err(e @ Error::DegenerateQ(_)) => return report.fail(Status::CriterionFailed, &e),
            Err(e) => return report.fail(Status::for_error(&e), &e),
        },
        None => match elliptic::scan_admissible(curve) {
            Ok(scan) => (scan.certificate, scan.skipped),
            Err(e) => return report.fail(Status::CriterionFailed, &e),
        },
    };
    report.text.extend(fermat_lines(&cert));
    report.criterion = Some(cert.to_json());
    report.degree = usize::try_from(cert.report.degree_d).ok();
    if !cert.holds() {
        report.status = Status::CriterionFailed;
        return report;
    }
    let model = match elliptic::build_quartic_model(&cert) {
        Ok(m) => m,
        Err(e) => return report.fail(Status::ConstructionFailed, &e),
    };
    let outer = match elliptic::outer_delta_check(curve) {
        Ok(o) => o,
        Err(e) => return report.fail(Status::ConstructionFailed, &e),
    };
    report.text.push(format!("poles of f = {}", model.poles_f));
    report.text.push(format!("poles of g = {}", model.poles_g));
    report.text.push(format!(
        "image: {} points ({} distinct), kernel dimension {}",
        model.image.len(),
        model.distinct_images(),
        model.kernel_dim
    ));
    report.text.push(format!("phi(E): {} = 0", model.quartic.render()));
    let degree = model.quartic.total_degree().unwrap_or(0);
    report.text.push(format!("deg phi(E) = {degree}"));
    for c in &outer {
        report.text.push(format!(
            "projection of E from {}: {} ({} fibers)",
            c.center,
            if c.holds() { "Galois" } else { "NOT Galois" },
            c.fibers
        ));
    }
    report.model = Some(json!({
        "quartic": model.to_json(),
        "outer_points": outer.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "skipped": skipped.iter().map(|(p, why)| json!({"Q": p.to_json(), "reason": why})).collect::<Vec<_>>(),
    }));
    if !model.vanishes_on_image() || !outer.iter().all(|c| c.holds()) {
        report.status = Status::ConstructionFailed;
        return report;
    }
    report.degree = Some(degree);
    check_expectations(
        &mut report,
        config,
        degree,
        cert.g1.structure().to_string(),
        cert.g2.structure().to_string(),
    );
    report
}

/// Runs a scenario end to end. Never fails: problems are recorded in the
/// report with the matching status.
pub fn run_scenario(config: &ScenarioConfig) -> RunReport {
    let mut report = RunReport::new(config);
    let setup = match config.resolve() {
        Ok(s) => s,
        Err(e) => return report.fail(Status::ConfigError, &e),
    };
    match setup {
        Setup::Rational(s) => {
            report.field = s.field.to_string();
            run_rational(config, &s, report)
        }
        Setup::Fermat(s) => {
            report.field = s.curve.field().to_string();
            run_fermat(config, &s, report)
        }
    }
}

/// Witness list from a search.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub name: String,
    pub field: String,
    pub mode: Mode,
    pub candidates: usize,
    pub cond_b: Option<bool>,
    pub hits: Vec<Json>,
    pub hit_lines: Vec<String>,
    pub status: Status,
    pub error: Option<String>,
}

impl SearchReport {
    pub fn to_json(&self) -> Json {
        json!({
            "name": self.name,
            "field": self.field,
            "mode": match self.mode { Mode::Inner => "inner", Mode::Outer => "outer" },
            "candidates": self.candidates,
            "cond_b": self.cond_b,
            "hit_count": self.hits.len(),
            "hits": self.hits,
            "status": self.status.label(),
            "exit_code": self.status.code(),
            "error": self.error,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("search: {}\n", self.name);
        let _ = writeln!(out, "field: {}", self.field);
        let _ = writeln!(out, "candidates: {}", self.candidates);
        if let Some(b) = self.cond_b {
            let _ = writeln!(out, "condition (b): {}", if b { "holds" } else { "FAILS" });
        }
        let _ = writeln!(out, "hits: {}", self.hits.len());
        for l in &self.hit_lines {
            let _ = writeln!(out, "  {l}");
        }
        if let Some(err) = &self.error {
            let _ = writeln!(out, "error: {err}");
        }
        let _ = writeln!(out, "status: {} (exit {})", self.status.label(), self.status.code());
        out
    }
}

fn search_rational(config: &ScenarioConfig, s: &RationalSetup, report: &mut SearchReport) -> Result<()> {
    let candidates = match &s.candidates {
        Some(c) => c.clone(),
        None => ProjPoint::all(&s.field)?,
    };
    report.candidates = candidates.len();
    match config.mode {
        Mode::Inner => {
            let b = criterion::check_b(&s.g1, &s.g2);
            report.cond_b = Some(b.holds);
            if !b.holds {
                return Ok(());
            }
            for w in criterion::search_inner(&s.g1, &s.g2, &candidates) {
                report.hit_lines.push(format!("P1 = {}, P2 = {}: D = {}", w.p1, w.p2, w.divisor));
                report.hits.push(w.to_json());
            }
        }
        Mode::Outer => {
            for (q, d) in criterion::search_outer(&s.g1, &s.g2, &candidates) {
                report.hit_lines.push(format!("Q = {q}: D = {d}"));
                report.hits.push(json!({"Q": q.to_json(), "D": d.to_json(), "degree": d.degree()}));
            }
        }
    }
    Ok(())
}

fn search_fermat(s: &FermatSetup, report: &mut SearchReport) {
    let curve = &s.curve;
    report.candidates = curve.len();
    for q in curve.points() {
        if let Ok(cert) = elliptic::verify_fermat_criterion(curve, q) {
            if cert.holds() {
                let d = cert.report.cond_c.lhs.clone();
                report.hit_lines.push(format!("Q = {q}: P1 = {}, P2 = {}, D = {d}", cert.p1, cert.p2));
                report.hits.push(json!({
                    "Q": q.to_json(),
                    "P1": cert.p1.to_json(),
                    "P2": cert.p2.to_json(),
                    "D": d.to_json(),
                    "degree": d.degree(),
                }));
            }
        }
    }
}

/// Lists every witness over the candidate set; finite fields default to all
/// of their points. Finding nothing is a successful search.
pub fn run_search(config: &ScenarioConfig) -> SearchReport {
    let mut report = SearchReport {
        name: config.name.clone(),
        field: String::new(),
        mode: config.mode,
        candidates: 0,
        cond_b: None,
        hits: Vec::new(),
        hit_lines: Vec::new(),
        status: Status::Ok,
        error: None,
    };
    let outcome = config.resolve().and_then(|setup| match setup {
        Setup::Rational(s) => {
            report.field = s.field.to_string();
            search_rational(config, &s, &mut report).map_err(|e| match e {
                Error::InfiniteField => Error::Config(
                    "search over an infinite field needs an explicit candidates list".into(),
                ),
                other => other,
            })
        }
        Setup::Fermat(s) => {
            report.field = s.curve.field().to_string();
            search_fermat(&s, &mut report);
            Ok(())
        }
    });
    if let Err(e) = outcome {
        report.status = match e {
            Error::Config(_) => Status::ConfigError,
            ref other => Status::for_error(other),
        };
        report.error = Some(e.to_string());
    }
    report
}

/// Serializes a JSON value with sorted keys and a trailing newline.
pub fn to_stable_json(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes `text` to `out`, or to standard output when `out` is `None`.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Renders a scenario report in the requested format.
pub fn render_run(report: &RunReport, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Json => to_stable_json(&report.to_json()),
    }
}

pub fn render_search(report: &SearchReport, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Json => to_stable_json(&report.to_json()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::builtin;

    #[test]
    fn builtins_exit_zero() {
        for name in crate::harness::builtin_names() {
            let r = run_scenario(&builtin(name).unwrap());
            assert_eq!(r.status, Status::Ok, "{}", r.render_text());
        }
    }

    #[test]
    fn text_mentions_degree() {
        let r = run_scenario(&builtin("rational-z4z4").unwrap());
        assert!(r.render_text().lines().any(|l| l == "deg D = 5"));
    }

    #[test]
    fn wrong_expectation_is_flagged() {
        let mut c = builtin("rational-z4z4").unwrap();
        c.expect.degree = Some(6);
        assert_eq!(run_scenario(&c).status, Status::ExpectationMismatch);
    }

    #[test]
    fn failing_criterion_exit() {
        let mut c = builtin("rational-z4z4").unwrap();
        c.p2 = Some(vec!["0".into(), "1".into()]);
        let r = run_scenario(&c);
        assert_eq!(r.status, Status::CriterionFailed);
        assert!(r.render_text().contains("lhs - rhs"));
    }

    #[test]
    fn search_needs_candidates_over_q() {
        let c = builtin("rational-z4z4").unwrap();
        assert_eq!(run_search(&c).status, Status::ConfigError);
    }
}
