mod analyze;
mod checkpoint;
mod expr;
mod scan;
mod tables;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use collatz_forms::cascades::{
    classify_form, mcs, pmcs, run_cascade, seeds, symbolic_cascade_transform, FormClass,
    DEFAULT_PMCS_LIMIT,
};
use collatz_forms::columns::column_trace;
use collatz_forms::forms::{decompose, expand_dotted};
use collatz_forms::sequence::{
    stopping_time, total_stopping_time, DEFAULT_STOPPING_LIMIT, DEFAULT_TOTAL_LIMIT,
};
use collatz_forms::stopping::{symbolic_stopping_time, SymbolicStop, SYMBOLIC_STEP_LIMIT};
use collatz_forms::{Nat, Outcome};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] collatz_forms::Error),
    #[error("cannot parse '{input}': {source}")]
    Expr {
        input: String,
        source: expr::ExprError,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Limit(String),
    #[error("{0}")]
    Io(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Expr { .. } | CliError::Usage(_) => 2,
            CliError::Limit(_) => 3,
            CliError::Io(_) | CliError::Checkpoint(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub fn parse_expr(input: &str) -> Result<Nat, CliError> {
    expr::eval(input).map_err(|source| CliError::Expr {
        input: input.to_string(),
        source,
    })
}

#[derive(Parser)]
#[command(
    name = "collatz-forms",
    version,
    about = "Form-based analysis of Collatz sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Forms, column, stopping data, ladders and seed status of a number
    Analyze {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Trace the cascade starting at a number
    Cascade { expr: String },
    /// Reverse-cascade ladder up to the maximum cascade start
    Ladder {
        expr: String,
        /// Repeat ladders until an odd multiple of 3 is reached
        #[arg(long)]
        primary: bool,
    },
    /// Column-annotated sequence
    Columns {
        expr: String,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
    /// Stopping time, even steps and total stopping time
    Stoptime { expr: String },
    /// First seeds 1, 5, 21, 85, ...
    Seeds {
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Expand and classify a dotted composite form such as 16.4.8
    Form { spec: String },
    /// Regenerate a reference table (1, 3, 4, 8, 9, 10, 11, 17, 18, 20, 21, 22)
    Table {
        id: u32,
        #[arg(long)]
        csv: bool,
    },
    /// Count principal forms per window over a range
    Scan(scan::ScanArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out)
        .and_then(|code| out.flush().map(|_| code).map_err(CliError::from))
    {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs one command; `Ok` carries the exit code (3 when a limit was hit but output was produced).
fn run(command: Command, out: &mut impl Write) -> Result<u8, CliError> {
    match command {
        Command::Analyze { expr, json } => analyze::run(&parse_expr(&expr)?, json, out),
        Command::Cascade { expr } => cascade(&parse_expr(&expr)?, out),
        Command::Ladder { expr, primary } => ladder(&parse_expr(&expr)?, primary, out),
        Command::Columns { expr, steps } => {
            for step in column_trace(&parse_expr(&expr)?, steps)? {
                writeln!(out, "{} {} {}", step.value, step.column_form(), step.column)?;
            }
            Ok(0)
        }
        Command::Stoptime { expr } => stoptime(&parse_expr(&expr)?, out),
        Command::Seeds { count } => {
            for seed in seeds(count) {
                let target: Nat = &seed * 3u32 + 1u32;
                writeln!(out, "{seed} => {target} = 2^{}", target.bits() - 1)?;
            }
            Ok(0)
        }
        Command::Form { spec } => form(&spec, out),
        Command::Table { id, csv } => {
            let table = tables::build(id)?;
            let text = if csv {
                table.render_csv()
            } else {
                table.render_text()
            };
            out.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Scan(args) => scan::run(&args, out),
    }
}

fn cascade(value: &Nat, out: &mut impl Write) -> Result<u8, CliError> {
    for v in &run_cascade(value)?.values {
        writeln!(out, "{v}={}", decompose(v)?)?;
    }
    Ok(0)
}

fn ladder(value: &Nat, primary: bool, out: &mut impl Write) -> Result<u8, CliError> {
    if !primary {
        let trace = mcs(value)?;
        for rung in &trace.rungs {
            writeln!(out, "{}={}", rung.value, rung.form)?;
        }
        writeln!(out, "mcs {}", trace.mcs())?;
        return Ok(0);
    }
    match pmcs(value, DEFAULT_PMCS_LIMIT)? {
        Outcome::Found(start) => {
            for v in &start.chain {
                writeln!(out, "{v}={}", decompose(v)?)?;
            }
            writeln!(out, "pmcs {}", start.value())?;
            Ok(0)
        }
        Outcome::NotFoundWithinLimit { limit } => Err(CliError::Limit(format!(
            "no odd multiple of 3 within {limit} ladders from {value}"
        ))),
    }
}

fn stoptime(value: &Nat, out: &mut impl Write) -> Result<u8, CliError> {
    let mut code = 0;
    writeln!(out, "value {value}")?;
    if *value == Nat::from(1u32) {
        writeln!(out, "stopping time: none (1 never drops below itself)")?;
    } else {
        match stopping_time(value, DEFAULT_STOPPING_LIMIT)? {
            Outcome::Found(r) => {
                writeln!(out, "stopping time {}", r.stopping_time)?;
                writeln!(out, "even steps {}", r.even_steps)?;
                writeln!(out, "odd steps {}", r.odd_steps())?;
                writeln!(out, "first smaller value {}", r.final_value)?;
            }
            Outcome::NotFoundWithinLimit { limit } => {
                writeln!(out, "stopping time: not found within {limit} steps")?;
                code = 3;
            }
        }
    }
    match total_stopping_time(value, DEFAULT_TOTAL_LIMIT)? {
        Outcome::Found(t) => writeln!(out, "total stopping time {t}")?,
        Outcome::NotFoundWithinLimit { limit } => {
            writeln!(out, "total stopping time: not found within {limit} steps")?;
            code = 3;
        }
    }
    Ok(code)
}

fn parse_dotted(spec: &str) -> Result<Vec<Nat>, CliError> {
    spec.split('.')
        .map(|part| {
            part.trim().parse::<Nat>().map_err(|_| {
                CliError::Usage(format!("bad component '{part}' in dotted form '{spec}'"))
            })
        })
        .collect()
}

fn form(spec: &str, out: &mut impl Write) -> Result<u8, CliError> {
    let start = expand_dotted(&parse_dotted(spec)?)?;
    writeln!(out, "{spec} = {start}")?;
    let class = classify_form(&start);
    match class {
        FormClass::Fixed { .. } => writeln!(out, "standard base {}", class.base())?,
        FormClass::Mix { .. } => writeln!(out, "standard base mixed, smallest {}", class.base())?,
    }
    if let Ok(result) = symbolic_cascade_transform(&start) {
        let result_class = classify_form(&result);
        writeln!(out, "cascade result {result}")?;
        match result_class {
            FormClass::Fixed { .. } => writeln!(out, "result base {}", result_class.base())?,
            FormClass::Mix { .. } => writeln!(out, "result base Mix, {}+", result_class.base())?,
        }
    }
    match symbolic_stopping_time(&start, SYMBOLIC_STEP_LIMIT)? {
        SymbolicStop::Stopped {
            stopping_time,
            form,
        } => writeln!(out, "stops after {stopping_time} steps at {form}")?,
        SymbolicStop::IndeterminateAt { step, form } => {
            writeln!(out, "indeterminate after {step} steps at {form}")?
        }
        SymbolicStop::NotFoundWithinLimit { limit } => {
            writeln!(out, "no stop within {limit} steps")?
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capture(command: Command) -> (u8, String) {
        let mut buf = Vec::new();
        let code = run(command, &mut buf).unwrap();
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn dotted_parsing() {
        assert_eq!(
            parse_dotted("16.4.8").unwrap(),
            [16u32, 4, 8].map(Nat::from).to_vec()
        );
        assert!(matches!(parse_dotted("16..8"), Err(CliError::Usage(_))));
        assert!(matches!(parse_dotted("16.x"), Err(CliError::Usage(_))));
    }

    #[test]
    fn form_report() {
        let (_, text) = capture(Command::Form {
            spec: "16.4.8".into(),
        });
        assert!(text.starts_with("16.4.8 = 512n+215\n"), "{text}");
        let (_, text) = capture(Command::Form { spec: "4.4".into() });
        assert!(text.contains("cascade result 12n+4\n"), "{text}");
        assert!(text.contains("result base 2\n"), "{text}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            CliError::Domain(collatz_forms::Error::ZeroWindow).exit_code(),
            1
        );
        assert_eq!(parse_expr("2-3").unwrap_err().exit_code(), 2);
        assert_eq!(CliError::Limit(String::new()).exit_code(), 3);
        assert_eq!(CliError::Checkpoint(String::new()).exit_code(), 4);
    }
}
