use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tripat::analysis::analyze;
use tripat::deduction::{run_deduction_pipeline, PipelineOptions};
use tripat::engine::{transform, Schedule, TransformOptions};
use tripat::io::{self, IoError};
use tripat::pattern::{check_spec, Specification};
use tripat::rulegen::generate_rules;
use tripat::triple::{validate_triple, Direction};

#[derive(Parser)]
#[command(
    name = "tripat",
    version,
    about = "Compile and run triple-graph-pattern transformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the deduction pipeline and write the annotated patterns.
    Deduce {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile the specification into operational rules.
    Compile {
        spec: PathBuf,
        #[arg(long)]
        direction: Direction,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Transform a model and verify the result.
    Transform {
        spec: PathBuf,
        model: PathBuf,
        #[arg(long)]
        direction: Direction,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Apply matches in a seeded random order instead of the canonical one.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        no_np_deduction: bool,
    },
    /// Check a triple graph against the specification.
    Check {
        spec: PathBuf,
        triple: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Report conflicts, degenerate patterns and language coverage.
    Analyze { spec: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// A failure with its exit code.
struct Failure(u8, String);

impl Failure {
    fn input(msg: impl std::fmt::Display) -> Self {
        Failure(2, msg.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: fn(&str) -> Result<T, IoError>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<Specification, Failure> {
    load(path, io::parse_spec)
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Deduce { spec, output } => {
            let s = load_spec(&spec)?;
            let d = run_deduction_pipeline(&s, PipelineOptions::default()).map_err(Failure::input)?;
            emit(output.as_deref(), &io::deduction_to_json(&d))?;
            Ok(0)
        }
        Command::Compile {
            spec,
            direction,
            output,
        } => {
            let s = load_spec(&spec)?;
            let rs = generate_rules(&s, direction, PipelineOptions::default()).map_err(Failure::input)?;
            emit(output.as_deref(), &io::rules_to_json(&rs))?;
            Ok(0)
        }
        Command::Transform {
            spec,
            model,
            direction,
            output,
            trace,
            seed,
            no_np_deduction,
        } => {
            let s = load_spec(&spec)?;
            let m = load(&model, io::parse_model)?;
            let opts = TransformOptions {
                np_deduction: !no_np_deduction,
                schedule: seed.map_or(Schedule::Canonical, Schedule::Random),
            };
            match transform(&s, &m, direction, opts) {
                Ok(out) => {
                    emit(Some(&output), &io::triple_to_json(&out.triple))?;
                    if let Some(t) = trace {
                        emit(Some(&t), &io::trace_to_json(&out.trace))?;
                    }
                    eprintln!("{} steps; result satisfies the specification", out.trace.steps.len());
                    Ok(0)
                }
                Err(e) if e.is_input_error() => Err(Failure::input(e)),
                Err(e) => Err(Failure(1, e.to_string())),
            }
        }
        Command::Check { spec, triple, format } => {
            let s = load_spec(&spec)?;
            let t = load(&triple, io::parse_triple)?;
            let errs = validate_triple(&t, &s.metamodel);
            if !errs.is_empty() {
                return Err(Failure::input(format!("{}: {}", triple.display(), errs.join("; "))));
            }
            let r = check_spec(&t, &s);
            let text = match format {
                Format::Text => io::report_to_text(&r),
                Format::Structured => io::report_to_json(&r),
            };
            emit(None, &text)?;
            Ok(if r.satisfied() { 0 } else { 1 })
        }
        Command::Analyze { spec } => {
            let s = load_spec(&spec)?;
            emit(None, &io::analysis_to_json(&analyze(&s)))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
