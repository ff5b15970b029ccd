//! Scenario configurations, the run and search pipelines, and report output.

mod config;
mod run;

pub use config::{
    builtin, builtin_names, CurveKind, Expectations, FermatSetup, Mode, RationalSetup, ScenarioConfig, Setup,
};
pub use run::{
    emit, render_run, render_search, run_scenario, run_search, to_stable_json, ExpectationCheck, Format, RunReport,
    SearchReport, Status,
};
