//! `branchfoam`: run identity suites and evaluate diagram expressions.
//!
//! Exit codes: 0 when every selected law holds, 1 when one fails, 2 on
//! malformed input.

mod report;
mod spec;

use std::fs;
use std::process::ExitCode;

use branchfoam_core::foamlang::{self, FoamError};
use branchfoam_core::lawsuite::{self, LawKind};
use branchfoam_core::LawReport;
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::EvalJson;
use spec::{Setup, SpecError};

#[derive(Parser)]
#[command(
    name = "branchfoam",
    version,
    about = "Exact Frobenius-algebra and branch-foam computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity checks and print one line per law.
    Laws {
        #[command(flatten)]
        target: Target,
        /// Comma-separated laws (antisym, jacobi, twosided, skein, trace,
        /// resolution, bialgebra) or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compile a diagram expression and print its matrix or scalar.
    Eval {
        #[command(flatten)]
        target: Target,
        /// Expression source, or `@path` to read it from a file.
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the full suite and emit a single JSON document.
    Report {
        #[command(flatten)]
        target: Target,
    },
}

#[derive(Args)]
struct Target {
    /// mv, aN:<n>, group:<o1,o2,...> or a JSON config file.
    #[arg(long)]
    algebra: String,
    /// mv, lie, group, zero or custom; defaults per algebra.
    #[arg(long)]
    theta: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Suite {
    Law(LawKind),
    Bialgebra,
}

fn parse_suite(list: &str, setup: &Setup) -> Result<Vec<Suite>, SpecError> {
    if list == "all" {
        let mut all: Vec<Suite> = LawKind::ALL.iter().map(|&k| Suite::Law(k)).collect();
        if setup.algebra.group().is_some() {
            all.push(Suite::Bialgebra);
        }
        return Ok(all);
    }
    list.split(',')
        .map(str::trim)
        .map(|name| match name {
            "bialgebra" if setup.algebra.group().is_some() => Ok(Suite::Bialgebra),
            "bialgebra" => Err(SpecError(
                "bialgebra checks need a group:<orders> algebra".into(),
            )),
            _ => LawKind::from_name(name)
                .map(Suite::Law)
                .ok_or_else(|| SpecError(format!("unknown law {:?}", name))),
        })
        .collect()
}

fn run_suite(setup: &Setup, suite: &[Suite]) -> Result<Vec<LawReport>, SpecError> {
    let mut out = Vec::new();
    for s in suite {
        match s {
            Suite::Law(k) => out.extend(lawsuite::run(&setup.ctx, &[*k])),
            Suite::Bialgebra => {
                let g = setup.algebra.group().expect("checked in parse_suite");
                out.push(
                    g.check_bialgebra(&setup.ctx)
                        .map_err(|e| SpecError(e.to_string()))?,
                );
            }
        }
    }
    Ok(out)
}

fn exit_for(reports: &[LawReport]) -> ExitCode {
    if reports.iter().any(LawReport::is_blocking_failure) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

fn read_expr(arg: &str) -> Result<String, SpecError> {
    match arg.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| SpecError(format!("cannot read {}: {}", path, e)))
        }
        None => Ok(arg.to_string()),
    }
}

fn foam_error(e: FoamError) -> SpecError {
    SpecError(e.to_string())
}

fn cmd_laws(target: &Target, suite: &str, format: Format) -> Result<ExitCode, SpecError> {
    let setup = spec::setup(&target.algebra, target.theta.as_deref())?;
    let suite = parse_suite(suite, &setup)?;
    let reports = run_suite(&setup, &suite)?;
    let name = &setup.algebra.name;
    match format {
        Format::Text => print!("{}", report::report_text(name, &setup.theta_name, &reports)),
        Format::Json => print_json(&report::report_json(name, &setup.theta_name, &reports)),
    }
    Ok(exit_for(&reports))
}

fn cmd_report(target: &Target) -> Result<ExitCode, SpecError> {
    let setup = spec::setup(&target.algebra, target.theta.as_deref())?;
    let suite = parse_suite("all", &setup)?;
    let reports = run_suite(&setup, &suite)?;
    print_json(&report::report_json(
        &setup.algebra.name,
        &setup.theta_name,
        &reports,
    ));
    Ok(exit_for(&reports))
}

fn cmd_eval(target: &Target, expr: &str, format: Format) -> Result<ExitCode, SpecError> {
    let setup = spec::setup(&target.algebra, target.theta.as_deref())?;
    let src = read_expr(expr)?;
    let e = foamlang::parse(&src).map_err(|e| foam_error(FoamError::Parse(e)))?;
    let map = e.compile(&setup.ctx).map_err(foam_error)?;
    let alg = setup.ctx.algebra();
    let closed = map.inputs() == 0 && map.outputs() == 0;
    match format {
        Format::Text if closed => println!("{}", map.scalar().expect("closed map")),
        Format::Text => print!("{}", report::map_text(alg, &map)),
        Format::Json => print_json(&EvalJson {
            algebra: setup.algebra.name.clone(),
            theta: setup.theta_name.clone(),
            expr: e.to_string(),
            inputs: map.inputs(),
            outputs: map.outputs(),
            scalar: closed.then(|| map.scalar().expect("closed map").to_string()),
            matrix: (!closed).then(|| report::matrix_rows(&map)),
        }),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Laws {
            target,
            suite,
            format,
        } => cmd_laws(target, suite, *format),
        Command::Eval {
            target,
            expr,
            format,
        } => cmd_eval(target, expr, *format),
        Command::Report { target } => cmd_report(target),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
