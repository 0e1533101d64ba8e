// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

//! `fgh`: ordinal notation utilities and the K_f derivation machine.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 domain or validation
//! error, 4 fuel exhausted, 5 claim failed, 6 derivation converged.

use std::fmt::Display;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fgh_core::adversary::{analyze, ScheduleCase};
use fgh_core::machine::{Limits, Machine, TraceRecord, DEFAULT_MAX_REGISTER_DIGITS};
use fgh_core::notation::NotationError;
use fgh_core::oracle::{eval_recursive_with, OracleLimits};
use fgh_core::ordinal::DEFAULT_TOWER_LIMIT;
use fgh_core::{fund_seq, parse, BaseFunction, ClaimStatus, DescendingSequence, EvalResult, GuardPolicy, MachineState, Ordinal};
use num_bigint::BigUint;

#[derive(Parser)]
#[command(name = "fgh", version, about = "Ordinals below e0 and the relativised fast-growing hierarchy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Normalize { expr: String },
    /// Compare two ordinals, printing LT, EQ or GT.
    Cmp { a: String, b: String },
    /// Maximal coefficient of an ordinal.
    Mc { expr: String },
    /// Fundamental sequence: the x-th element for a limit ordinal.
    Fs { expr: String, x: String },
    /// The tower w_n.
    Tower { n: String },
    /// Evaluate F^f_alpha(x).
    Eval {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Engine::Machine)]
        engine: Engine,
    },
    /// Print the derivation of F^f_alpha(x) step by step.
    Trace {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build f from a descending sequence and check the claim along its derivation.
    Adversary {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        fuel: u64,
        /// Extend f past the prefix by f(x) = f(x-1) + 1 (the default).
        #[arg(long, conflicts_with = "strict")]
        extend: bool,
        /// Fail with OutOfDomain whenever f is needed past the prefix.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    x: String,
    /// succ | affine:a,b | table:v0,v1,...;affine:a,b
    #[arg(long, default_value = "succ")]
    f: String,
    #[arg(long, default_value_t = 1_000_000)]
    fuel: u64,
    /// Largest register, in decimal digits, a step may produce.
    #[arg(long, default_value_t = DEFAULT_MAX_REGISTER_DIGITS)]
    max_digits: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Machine,
    Recursive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

enum Failure {
    Parse { input: String, error: NotationError },
    Usage(String),
    Domain(String),
    Io(io::Error),
}

impl Failure {
    fn domain(e: impl Display) -> Self {
        Failure::Domain(e.to_string())
    }

    fn report(&self) -> ExitCode {
        match self {
            Failure::Parse { input, error } => {
                eprintln!("error: {error}");
                eprintln!("  {input}");
                eprintln!("  {}^", " ".repeat(input[..error.position().min(input.len())].chars().count()));
                let code = if matches!(error, NotationError::Domain { .. }) { 3 } else { 2 };
                ExitCode::from(code)
            }
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Domain(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
            Failure::Io(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
            Failure::Io(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn ordinal(input: &str) -> Result<Ordinal, Failure> {
    parse(input).map_err(|error| Failure::Parse {
        input: input.to_string(),
        error,
    })
}

fn natural(input: &str) -> Result<BigUint, Failure> {
    if input.is_empty() || !input.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Failure::Usage(format!("expected a natural number, got {input:?}")));
    }
    input.parse().map_err(|_| Failure::Usage(format!("expected a natural number, got {input:?}")))
}

fn base_function(spec: &str) -> Result<BaseFunction, Failure> {
    spec.parse().map_err(|e| Failure::Usage(format!("{e}")))
}

fn limits(max_digits: usize) -> Limits {
    Limits {
        max_register_digits: max_digits,
        ..Limits::default()
    }
}

/// Short description of a state that may be far too large to print whole.
fn summary(state: &MachineState) -> String {
    let top = state.top().map_or_else(|| "-".to_string(), Ordinal::to_string);
    let reg = state.register().to_string();
    let reg = if reg.len() > 40 { format!("<{} digits>", reg.len()) } else { reg };
    format!("top={top} runs={} reg={reg}", state.runs().len())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match execute(cli.command, &mut out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = out.flush();
            return failure.report();
        }
    };
    match out.flush() {
        Ok(()) => code,
        Err(e) => Failure::Io(e).report(),
    }
}

fn execute(command: Command, out: &mut impl Write) -> Result<ExitCode, Failure> {
    match command {
        Command::Normalize { expr } => writeln!(out, "{}", ordinal(&expr)?)?,
        Command::Cmp { a, b } => {
            let label = match ordinal(&a)?.cmp(&ordinal(&b)?) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            writeln!(out, "{label}")?;
        }
        Command::Mc { expr } => {
            let mc = ordinal(&expr)?.max_coefficient().map_err(Failure::domain)?;
            writeln!(out, "{mc}")?;
        }
        Command::Fs { expr, x } => {
            let g = ordinal(&expr)?;
            let x = natural(&x)?;
            writeln!(out, "{}", fund_seq(&g, &x).map_err(Failure::domain)?)?;
        }
        Command::Tower { n } => {
            let n = natural(&n)?;
            let tower = Ordinal::omega_tower_bounded(&n, DEFAULT_TOWER_LIMIT).map_err(Failure::domain)?;
            writeln!(out, "{tower}")?;
        }
        Command::Eval { run, engine } => return eval(&run, engine, out),
        Command::Trace { run, format } => return trace(&run, format, out),
        Command::Adversary {
            seq,
            fuel,
            extend: _,
            strict,
        } => {
            let policy = if strict { GuardPolicy::Fail } else { GuardPolicy::Extend };
            return adversary(&seq, fuel, policy, out);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn eval(args: &RunArgs, engine: Engine, out: &mut impl Write) -> Result<ExitCode, Failure> {
    let alpha = ordinal(&args.alpha)?;
    let x = natural(&args.x)?;
    let f = base_function(&args.f)?;
    let result = match engine {
        Engine::Machine => Machine::with_limits(&f, limits(args.max_digits))
            .run(&alpha, &x, args.fuel)
            .map_err(Failure::domain)?,
        Engine::Recursive => {
            let oracle = OracleLimits {
                machine: limits(args.max_digits),
                ..OracleLimits::default()
            };
            eval_recursive_with(&f, &alpha, &x, args.fuel, oracle).map_err(Failure::domain)?
        }
    };
    match result {
        EvalResult::Value { value, steps } => {
            writeln!(out, "{value} (steps={steps})")?;
            Ok(ExitCode::SUCCESS)
        }
        EvalResult::FuelExhausted { last, steps } => {
            writeln!(out, "FUEL_EXHAUSTED (steps={steps}) {}", summary(&last))?;
            Ok(ExitCode::from(4))
        }
    }
}

fn trace(args: &RunArgs, format: Format, out: &mut impl Write) -> Result<ExitCode, Failure> {
    let alpha = ordinal(&args.alpha)?;
    let x = natural(&args.x)?;
    let f = base_function(&args.f)?;
    let machine = Machine::with_limits(&f, limits(args.max_digits));
    let mut halted = false;
    for entry in machine.trace(&alpha, &x, args.fuel) {
        let entry = match entry {
            Ok(entry) => entry,
            Err(e) => {
                out.flush()?;
                return Err(Failure::domain(e));
            }
        };
        match format {
            Format::Text => writeln!(out, "{}\t{}\th={}", entry.index, entry.state, entry.measure)?,
            Format::Jsonl => writeln!(out, "{}", TraceRecord::from(&entry).to_json_line())?,
        }
        halted = entry.state.is_halted();
    }
    Ok(if halted { ExitCode::SUCCESS } else { ExitCode::from(4) })
}

fn adversary(path: &PathBuf, fuel: u64, policy: GuardPolicy, out: &mut impl Write) -> Result<ExitCode, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    let seq = DescendingSequence::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let analysis = analyze(&seq, fuel, policy).map_err(Failure::domain)?;

    writeln!(out, "f:")?;
    for (x, v) in analysis.f.values().iter().enumerate() {
        writeln!(out, "  f({x}) = {v}")?;
    }
    writeln!(out, "schedule:")?;
    for e in &analysis.schedule {
        let case = match &e.case {
            None => "-".to_string(),
            Some(ScheduleCase::One) => "One".to_string(),
            Some(ScheduleCase::Two { b, beta, n }) => format!("Two(b={b}, beta={beta}, n={n})"),
        };
        writeln!(out, "  i={} a={} {case}", e.i, e.a)?;
    }
    let json = serde_json::to_string_pretty(&analysis.report.to_json()).expect("json value serializes");
    writeln!(out, "report: {json}")?;
    let status = &analysis.report.status;
    writeln!(out, "status: {}", status.label())?;
    Ok(ExitCode::from(match status {
        ClaimStatus::AllVerified => 0,
        ClaimStatus::OutOfDomain { .. } => 3,
        ClaimStatus::FuelExhausted { .. } => 4,
        ClaimStatus::FailedAt(_) => 5,
        ClaimStatus::Converged { .. } => 6,
    }))
}
