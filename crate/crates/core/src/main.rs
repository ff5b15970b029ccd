use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use galois_points::harness::{self, Format, ScenarioConfig, Status};

#[derive(Parser)]
#[command(name = "gpl", version, about = "Two Galois points: criterion checks and plane models")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in scenario by name, or one loaded from a JSON file.
    Scenario {
        #[arg(required_unless_present = "config", conflicts_with = "config")]
        name: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// List every witness allowed by a configuration's groups.
    Search {
        #[arg(long)]
        config: PathBuf,
    },
    /// Show the built-in scenarios.
    List,
}

fn load(name: Option<String>, config: Option<PathBuf>) -> galois_points::Result<ScenarioConfig> {
    match (name, config) {
        (_, Some(path)) => ScenarioConfig::from_file(&path),
        (Some(name), None) => harness::builtin(&name),
        (None, None) => unreachable!("clap requires a name or --config"),
    }
}

fn finish(text: &str, cli: &Cli, status: Status) -> ExitCode {
    match harness::emit(text, cli.out.as_deref()) {
        Ok(()) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("gpl: {e}");
            ExitCode::from(Status::IoError.code() as u8)
        }
    }
}

fn load_failure(e: galois_points::Error) -> ExitCode {
    eprintln!("gpl: {e}");
    let status = match e {
        galois_points::Error::Io(_) => Status::IoError,
        _ => Status::ConfigError,
    };
    ExitCode::from(status.code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
    };
    match &cli.command {
        Command::List => {
            let mut text = String::new();
            for name in harness::builtin_names() {
                let c = harness::builtin(name).expect("built-in scenarios parse");
                text.push_str(&format!("{name}\t{}\n", c.comment.unwrap_or_default()));
            }
            if format == Format::Json {
                let names = serde_json::json!(harness::builtin_names());
                text = harness::to_stable_json(&names);
            }
            finish(&text, &cli, Status::Ok)
        }
        Command::Scenario { name, config } => {
            let config = match load(name.clone(), config.clone()) {
                Ok(c) => c,
                Err(e) => return load_failure(e),
            };
            let report = harness::run_scenario(&config);
            finish(&harness::render_run(&report, format), &cli, report.status)
        }
        Command::Search { config } => {
            let config = match ScenarioConfig::from_file(config) {
                Ok(c) => c,
                Err(e) => return load_failure(e),
            };
            let report = harness::run_search(&config);
            finish(&harness::render_search(&report, format), &cli, report.status)
        }
    }
}
