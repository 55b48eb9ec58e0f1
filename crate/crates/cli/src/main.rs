//! lndcert: exact non-rigidity certificates for kernels of locally
//! nilpotent derivations of polynomial rings over Q[t1..tm].

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lndcert_core::{
    run_pipeline, verify_report, DerivationSpec, PipelineOptions, Report, Status, Strategy,
};

#[derive(Parser)]
#[command(
    name = "lndcert",
    version,
    about = "Analyze derivations of Q[t..][x..], certify local nilpotency, and emit \
             machine-checkable non-rigidity certificates for their kernels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a derivation spec file, or every .json spec in a directory
    Analyze(AnalyzeArgs),
    /// Re-check every claim in an emitted JSON report
    Verify {
        /// Report file produced by `analyze --format json`
        report: PathBuf,
    },
    /// Print the built-in example specs
    Catalog,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Spec file, or a directory containing *.json spec files
    spec: PathBuf,
    /// Iteration budget for every nilpotency check
    #[arg(long, default_value_t = 64)]
    max_iter: usize,
    /// Number of random Dixmier probes for kernel sampling
    #[arg(long, default_value_t = 4)]
    samples: usize,
    /// Seed for the random probes
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Witness constructions to try
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Missing,
    Triangular,
    Divergence,
    Linear,
    All,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Missing => Strategy::Missing,
            StrategyArg::Triangular => Strategy::Triangular,
            StrategyArg::Divergence => Strategy::Divergence,
            StrategyArg::Linear => Strategy::Linear,
            StrategyArg::All => Strategy::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Certified => 0,
        Status::Inconclusive => 2,
        Status::NotLnd => 3,
        Status::Unsupported | Status::BudgetExceeded => 4,
    }
}

fn main() -> ExitCode {
    // die quietly on a closed pipe instead of panicking mid-print
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version requests surface as clap "errors" but exit 0
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze(args) => analyze(&args),
        Command::Verify { report } => verify(&report),
        Command::Catalog => catalog(),
    }
}

fn load_spec(path: &Path) -> Result<DerivationSpec> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("{} is not a valid derivation spec", path.display()))
}

fn analyze_file(path: &Path, options: &PipelineOptions) -> Result<Report> {
    let spec = load_spec(path)?;
    run_pipeline(&spec, options).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn analyze(args: &AnalyzeArgs) -> Result<ExitCode> {
    if args.max_iter == 0 {
        bail!("--max-iter must be at least 1");
    }
    let options = PipelineOptions {
        max_iter: args.max_iter,
        samples: args.samples,
        seed: args.seed,
        strategy: args.strategy.into(),
    };
    if args.spec.is_dir() {
        analyze_directory(&args.spec, &options, args.format)
    } else {
        let report = analyze_file(&args.spec, &options)?;
        match args.format {
            FormatArg::Json => println!("{}", report.to_json()),
            FormatArg::Text => print!("{}", report.render_text()),
        }
        Ok(ExitCode::from(exit_for(report.status)))
    }
}

/// Directory mode: every .json file is analyzed on its own thread; the
/// aggregate output and exit code follow file-name order regardless of
/// completion order. The exit code is the most severe per-file code,
/// with any unreadable spec forcing 1.
fn analyze_directory(
    dir: &Path,
    options: &PipelineOptions,
    format: FormatArg,
) -> Result<ExitCode> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().map(|e| e == "json").unwrap_or(false))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no .json spec files in {}", dir.display());
    }

    let results: Vec<Result<Report>> = thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| scope.spawn(move || analyze_file(path, options)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis thread panicked"))
            .collect()
    });

    let mut worst = 0u8;
    let mut had_error = false;
    match format {
        FormatArg::Text => {
            for (i, (path, result)) in files.iter().zip(results).enumerate() {
                if i > 0 {
                    println!();
                }
                println!("== {}", path.display());
                match result {
                    Ok(report) => {
                        print!("{}", report.render_text());
                        worst = worst.max(exit_for(report.status));
                    }
                    Err(e) => {
                        println!("error: {e:#}");
                        had_error = true;
                    }
                }
            }
        }
        FormatArg::Json => {
            let mut entries = Vec::with_capacity(files.len());
            for (path, result) in files.iter().zip(results) {
                let name = path
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                match result {
                    Ok(report) => {
                        let value: serde_json::Value =
                            serde_json::from_str(&report.to_json()).expect("own report parses");
                        entries.push(serde_json::json!({ "file": name, "report": value }));
                        worst = worst.max(exit_for(report.status));
                    }
                    Err(e) => {
                        entries.push(serde_json::json!({ "file": name, "error": format!("{e:#}") }));
                        had_error = true;
                    }
                }
            }
            let doc = serde_json::Value::Array(entries);
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
        }
    }
    Ok(ExitCode::from(if had_error { 1 } else { worst }))
}

fn verify(path: &Path) -> Result<ExitCode> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    match verify_report(&text) {
        Ok(passed) => {
            println!("report OK: {passed} checks passed");
            Ok(ExitCode::SUCCESS)
        }
        Err(err) => {
            println!("report INVALID: {err}");
            Ok(ExitCode::from(1))
        }
    }
}

fn make_spec(variables: &[&str], images: &[(&str, &str)]) -> DerivationSpec {
    DerivationSpec {
        constants: Vec::new(),
        variables: variables.iter().map(|s| s.to_string()).collect(),
        images: images
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect::<BTreeMap<String, String>>(),
        kernel_hints: Vec::new(),
    }
}

fn catalog_entries() -> Vec<(&'static str, &'static str, DerivationSpec)> {
    vec![
        (
            "coordinate",
            "the coordinate derivation d/dx1 of Q[x1, x2]; its kernel is Q[x2]",
            make_spec(&["x1", "x2"], &[("x1", "1"), ("x2", "0")]),
        ),
        (
            "weitzenboeck",
            "the Weitzenboeck shift on three variables; kernel contains 2*x1*x3 - x2^2",
            make_spec(
                &["x1", "x2", "x3"],
                &[("x1", "0"), ("x2", "x1"), ("x3", "x2")],
            ),
        ),
        (
            "triangular-deg2",
            "a degree-2 triangular derivation in three variables",
            make_spec(
                &["x1", "x2", "x3"],
                &[("x1", "0"), ("x2", "x1^2"), ("x3", "x1 + x2^2")],
            ),
        ),
        (
            "quasi-translation",
            "a quasi-translation with vanishing divergence; no coordinate is missing",
            make_spec(&["x1", "x2"], &[("x1", "x1 - x2"), ("x2", "x1 - x2")]),
        ),
        (
            "linear-rank1",
            "a rank-1 nilpotent linear derivation of Q[x1, x2]",
            make_spec(
                &["x1", "x2"],
                &[("x1", "2*x1 - 4*x2"), ("x2", "x1 - 2*x2")],
            ),
        ),
    ]
}

fn catalog() -> Result<ExitCode> {
    for (name, blurb, spec) in catalog_entries() {
        println!("## {name}: {blurb}");
        println!("{}", serde_json::to_string_pretty(&spec).expect("serializes"));
        println!();
    }
    Ok(ExitCode::SUCCESS)
}
