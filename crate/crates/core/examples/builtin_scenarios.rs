//! Running every built-in scenario through the harness.

use galois_points::harness::{builtin, builtin_names, run_scenario};

fn main() {
    for name in builtin_names() {
        let config = builtin(name).expect("built-in scenarios parse");
        let report = run_scenario(&config);
        println!(
            "{name:16} degree {:>2}  {}",
            report.degree.map_or("-".to_string(), |d| d.to_string()),
            report.status.label()
        );
    }
}
