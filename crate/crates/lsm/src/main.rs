//! `lsm`: evaluate recorded or synthesized lane-detection scenarios.
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O error. Diagnostic
//! verbosity is controlled through the `LSM_LOG` environment variable.

use clap::{Parser, Subcommand, ValueEnum};
use lsm::report::{aggregate, evaluate_scenario, synthesize_frames, ScenarioSummary};
use lsm::scenario::{
    parse_scenario, write_results, write_scenario, ResultFormat, ScenarioError, ScenarioFile,
    ScenarioInput,
};
use lsm::{fixtures, scenario::Issue};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lsm", version, about = "Safety evaluation for lane detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a scenario file and write per-frame results.
    Evaluate {
        /// Input `.scenario.json` (recorded frames or trajectory+sensor).
        scenario: PathBuf,
        /// Output path; defaults to the input with a `.results.<format>`
        /// extension.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Promote validation warnings to errors.
        #[arg(long)]
        strict: bool,
    },
    /// Synthesize a detection trace from a trajectory+sensor scenario.
    Simulate {
        scenario: PathBuf,
        /// Output path; defaults to the input with a `.frames.scenario.json`
        /// extension.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the four bundled showcase fixtures and print a
    /// safety-vs-performance comparison table.
    TestCases,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

const EXIT_VALIDATION: u8 = 1;
const EXIT_IO: u8 = 2;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("LSM_LOG")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evaluate {
            scenario,
            out,
            format,
            strict,
        } => cmd_evaluate(&scenario, out.as_deref(), format, strict),
        Command::Simulate { scenario, out } => cmd_simulate(&scenario, out.as_deref()),
        Command::TestCases => cmd_test_cases(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Scenario {
        path: PathBuf,
        #[source]
        source: ScenarioError,
    },
    #[error("{path}: scenario carries recorded frames; `simulate` needs a trajectory and sensor model")]
    NotSynthesis { path: PathBuf },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Scenario { .. } | CliError::NotSynthesis { .. } => EXIT_VALIDATION,
        }
    }
}

fn load(path: &Path, strict: bool) -> Result<ScenarioFile, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let (scenario, warnings) = parse_scenario(&bytes, strict).map_err(|source| CliError::Scenario {
        path: path.to_path_buf(),
        source,
    })?;
    report_warnings(path, &warnings);
    Ok(scenario)
}

fn report_warnings(path: &Path, warnings: &[Issue]) {
    for w in warnings {
        log::warn!("{}: {w}", path.display());
        eprintln!("warning: {}: {w}", path.display());
    }
}

fn write_out(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn derived_out(input: &Path, suffix: &str) -> PathBuf {
    let name = input
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("scenario");
    let stem = name.strip_suffix(".scenario.json").unwrap_or(name);
    input.with_file_name(format!("{stem}{suffix}"))
}

fn scenario_name(scenario: &ScenarioFile, path: &Path) -> String {
    scenario
        .name
        .clone()
        .unwrap_or_else(|| path.display().to_string())
}

fn cmd_evaluate(
    path: &Path,
    out: Option<&Path>,
    format: OutputFormat,
    strict: bool,
) -> Result<(), CliError> {
    let scenario = load(path, strict)?;
    let records = evaluate_scenario(&scenario);
    let (result_format, ext) = match format {
        OutputFormat::Csv => (ResultFormat::Csv, ".results.csv"),
        OutputFormat::Json => (ResultFormat::Json, ".results.json"),
    };
    let out_path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| derived_out(path, ext));
    write_out(&out_path, &write_results(&records, result_format))?;

    let summary = aggregate(&scenario_name(&scenario, path), &records)
        .expect("scenario has at least one frame");
    print_summary(&summary);
    println!("results written to {}", out_path.display());
    Ok(())
}

fn print_summary(s: &ScenarioSummary) {
    println!(
        "{}: frames {} (no detection {}), S (mean {:.4}, min {:.4}, max {:.4}), \
         precision {:.4}, recall {:.4}, F1 {:.4}",
        s.scenario_name,
        s.frame_count,
        s.no_detection_count,
        s.safety_mean,
        s.safety_min,
        s.safety_max,
        s.precision,
        s.recall,
        s.f1
    );
}

fn cmd_simulate(path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let scenario = load(path, false)?;
    let synth = match &scenario.input {
        ScenarioInput::Synthesis(s) => s,
        ScenarioInput::Frames(_) => {
            return Err(CliError::NotSynthesis {
                path: path.to_path_buf(),
            })
        }
    };
    let frames = synthesize_frames(&scenario.lane, synth);
    let trace = ScenarioFile {
        schema_version: scenario.schema_version,
        name: scenario.name.clone(),
        lane: scenario.lane.clone(),
        eval_config: scenario.eval_config.clone(),
        input: ScenarioInput::Frames(frames),
    };
    let out_path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| derived_out(path, ".frames.scenario.json"));
    write_out(&out_path, &write_scenario(&trace))?;
    println!("trace written to {}", out_path.display());
    Ok(())
}

fn cmd_test_cases() -> Result<(), CliError> {
    println!(
        "{:<5} {:>8} {:>8} {:>8} {:>10} {:>8} {:>8}",
        "case", "S_mean", "S_min", "S_max", "precision", "recall", "F1"
    );
    for (name, text) in fixtures::all() {
        let (scenario, _) =
            parse_scenario(text.as_bytes(), true).expect("bundled fixtures are valid");
        let records = evaluate_scenario(&scenario);
        let s = aggregate(name, &records).expect("fixtures are non-empty");
        println!(
            "{:<5} {:>8.4} {:>8.4} {:>8.4} {:>10.4} {:>8.4} {:>8.4}",
            name, s.safety_mean, s.safety_min, s.safety_max, s.precision, s.recall, s.f1
        );
    }
    Ok(())
}
