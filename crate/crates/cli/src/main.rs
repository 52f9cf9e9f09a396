use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::info;

use tqc_core::bench::{random_clifford_t, run_bench, write_fixtures};
use tqc_core::eliminate::{EliminateOptions, PushPolicy};
use tqc_core::parse::{parse_as, InputFormat};
use tqc_core::pipeline::{run_program, PassList, PipelineConfig};
use tqc_core::report::{report_emit, ReportFormat};
use tqc_core::selfcheck::{self_check, SelfCheckOptions};
use tqc_core::sim::trace;
use tqc_core::vtab::ConjugationFault;
use tqc_core::Error;

#[derive(Debug, Parser)]
#[command(name = "tqc", version, about = "Compile Clifford+T circuits and cost them in QEC rounds")]
struct Cli {
    /// Seed for randomized checks and generated circuits.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimize one circuit and report its cost.
    Run(RunArgs),
    /// Run every circuit in a directory and emit a CSV summary.
    Bench(BenchArgs),
    /// Run the randomized oracle comparisons.
    SelfCheck(SelfCheckArgs),
    /// Write the bundled Toffoli-heavy fixture suite as QASM.
    Fixtures { dir: PathBuf },
    /// Write a random Clifford+T circuit as QASM.
    Gen {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        gates: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
struct PipelineArgs {
    /// Comma-separated pass list, or `none`.
    #[arg(long, default_value = "layer,fuse,reorder,hide")]
    passes: PassList,
    #[arg(long, default_value = "always")]
    push_policy: PushPolicy,
    /// Threads sharing the elimination tableau.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Ancilla lanes; defaults to half the qubit count, rounded up.
    #[arg(long)]
    ancilla: Option<usize>,
    #[arg(long, default_value_t = 1)]
    op_rounds: u64,
    #[arg(long = "rot-rounds", default_value_t = 3)]
    rot_rounds: u64,
}

impl PipelineArgs {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            passes: self.passes.clone(),
            eliminate: EliminateOptions {
                policy: self.push_policy,
                workers: self.workers,
            },
            ancilla: self.ancilla,
            op_rounds: self.op_rounds,
            rotation_rounds: self.rot_rounds,
            ..PipelineConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Auto,
    Qasm,
    Ppc,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EmitArg {
    Json,
    Csv,
    Text,
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    /// Circuit file (`.qasm` or native `.ppc`).
    #[arg(required_unless_present = "input_flag", conflicts_with = "input_flag")]
    input: Option<PathBuf>,
    #[arg(long = "input", value_name = "INPUT")]
    input_flag: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Report path. The circuit and plan dumps are written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    emit: EmitArg,
    /// Also write the optimized schedule as a CSV event trace.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct BenchArgs {
    dir: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FaultArg {
    DropSPhase,
    CnotWrongColumn,
}

#[derive(Debug, clap::Args)]
struct SelfCheckArgs {
    /// Multiplies the trial counts.
    #[arg(long, default_value_t = 1)]
    scale: usize,
    /// Plant a conjugation bug to confirm the checks notice it.
    #[arg(long, value_enum)]
    inject_fault: Option<FaultArg>,
}

/// 2 for malformed input, 3 for a failed internal check, 1 otherwise.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Invariant(_) | Error::InvalidPlan(_) | Error::AnticommutingInsert(_) => 3,
        _ => 1,
    }
}

/// `dir/report.json` -> `dir/report.<suffix>`.
fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.{suffix}"))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(args: &RunArgs) -> Result<(), Error> {
    let input = args.input.as_ref().or(args.input_flag.as_ref()).expect("clap requires one");
    let text = fs::read_to_string(input)?;
    let format = match args.format {
        FormatArg::Auto => InputFormat::Auto,
        FormatArg::Qasm => InputFormat::Qasm,
        FormatArg::Ppc => InputFormat::Ppc,
    };
    let program = parse_as(&text, format)?;
    let name = input.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let cfg = args.pipeline.config();
    let out = run_program(&name, &program, &cfg)?;
    info!(
        "{name}: {} -> {} rounds ({:.2}x)",
        out.report.baseline_rounds, out.report.total_rounds, out.report.speedup
    );
    let emit = match args.emit {
        EmitArg::Json => ReportFormat::Json,
        EmitArg::Csv => ReportFormat::Csv,
        EmitArg::Text => ReportFormat::Text,
    };
    let report = report_emit(&out.report, emit)?;
    if let Some(path) = &args.out {
        fs::write(sibling(path, "circuit.ppc"), out.circuit_dump())?;
        fs::write(sibling(path, "plan.txt"), out.optimized.plan.dump())?;
    }
    if let Some(path) = &args.trace {
        fs::write(path, trace(&out.outcome.events))?;
    }
    write_or_print(args.out.as_deref(), &report)
}

fn bench(args: &BenchArgs) -> Result<bool, Error> {
    let out = run_bench(&args.dir, &args.pipeline.config())?;
    write_or_print(args.out.as_deref(), &out.to_csv()?)?;
    for (file, e) in &out.failures {
        eprintln!("{file}: {e}");
    }
    Ok(out.failures.is_empty())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TQC_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run(args).map(|()| true),
        Command::Bench(args) => bench(args),
        Command::SelfCheck(args) => {
            let summary = self_check(&SelfCheckOptions {
                seed: cli.seed,
                scale: args.scale,
                fault: args.inject_fault.map(|f| match f {
                    FaultArg::DropSPhase => ConjugationFault::DropSPhase,
                    FaultArg::CnotWrongColumn => ConjugationFault::CnotWrongColumn,
                }),
            });
            println!("{summary}");
            Ok(summary.passed())
        }
        Command::Fixtures { dir } => write_fixtures(dir).map(|paths| {
            for p in paths {
                println!("{}", p.display());
            }
            true
        }),
        Command::Gen { qubits, gates, out } => {
            let c = random_clifford_t(*qubits, *gates, cli.seed);
            write_or_print(out.as_deref(), &c.to_qasm()).map(|()| true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Invariant("x".into())), 3);
        assert_eq!(exit_code(&Error::InvalidPlan("x".into())), 3);
        assert_eq!(exit_code(&Error::Config("x".into())), 1);
        let parse_err = tqc_core::parse::parse("qreg q[1];\nfoo q[0];\n").unwrap_err();
        assert_eq!(exit_code(&Error::Parse(parse_err)), 2);
    }

    #[test]
    fn dump_paths() {
        assert_eq!(sibling(Path::new("a/report.json"), "plan.txt"), Path::new("a/report.plan.txt"));
    }
}
