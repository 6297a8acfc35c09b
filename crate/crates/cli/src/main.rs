//! `piradical`: experiments on π-radicals, Baer–Suzuki width and generation
//! widths of conjugates.
//!
//! Exit codes: 0 success, 1 a checked statement failed, 2 input error,
//! 3 budget exhausted.

mod commands;
mod error;
mod report;
mod resolve;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use piradical::search::SearchBudget;

use crate::error::{CliError, Status};
use crate::report::{ExperimentReport, Record};
use crate::resolve::{resolve, Source};

#[derive(Parser, Debug)]
#[command(version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Largest tuple width searched
    #[arg(long, default_value_t = 12, global = true)]
    budget_width: usize,

    /// Distinct subgroups a single search may record
    #[arg(long, default_value_t = 100_000, global = true)]
    budget_states: usize,

    /// Classes larger than this are sampled
    #[arg(long, default_value_t = 100_000, global = true)]
    budget_class: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order and generators of the π-radical
    Radical {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        pi: Option<String>,
    },
    /// Fewest conjugates of x generating a subgroup of order divisible by r
    Beta {
        #[command(flatten)]
        source: Source,
        /// Cycle notation or a named element such as outer-involution
        #[arg(long)]
        aut: Option<String>,
        #[arg(long)]
        r: u64,
    },
    /// Fewest conjugates of x generating ⟨x, L⟩
    Alpha {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        aut: Option<String>,
    },
    /// Whether every m conjugates characterize the π-radical
    BsCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        pi: Option<String>,
        #[arg(long)]
        m: usize,
        /// Skip computing the least m that works
        #[arg(long)]
        no_minimal: bool,
    },
    /// Subsets of transpositions of S_r against the primes below r
    Prop1 {
        #[arg(long)]
        r: u64,
    },
    /// β_r for prime-order elements against A_n
    Prop4Table {
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Comma-separated primes; all primes up to n when omitted
        #[arg(long, value_delimiter = ',')]
        r: Option<Vec<u64>>,
    },
    /// Classical Baer–Suzuki check for one group and prime
    VerifyBs {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p: u64,
    },
    /// Classical Baer–Suzuki check over the catalog
    VerifyBsSweep {
        #[arg(long, default_value_t = 2000)]
        order_cap: u128,
    },
}

fn run(cli: &Cli) -> Result<(ExperimentReport, Status), CliError> {
    let budget = SearchBudget {
        max_width: cli.budget_width,
        max_subgroup_states: cli.budget_states,
        max_class_size: cli.budget_class,
        seed: cli.seed,
    };
    budget.validate()?;
    let source_inputs = |s: &Source| {
        Record::new()
            .with("group", s.group.clone())
            .with("spec", s.spec.as_ref().map(|p| p.display().to_string()))
    };
    let start = Instant::now();
    let (mut report, status) = match &cli.command {
        Command::Radical { source, pi } => {
            let target = resolve(source)?;
            let pi = target.pi(pi.as_deref())?;
            let mut report = ExperimentReport::new("radical", source_inputs(source).with("pi", pi.to_string()), &budget);
            let status = commands::radical(&target, &pi, &mut report)?;
            (report, status)
        }
        Command::Beta { source, aut, r } => {
            let target = resolve(source)?;
            let ctx = target.context(aut.as_deref())?;
            let inputs = source_inputs(source).with("aut", ctx.x().to_string()).with("r", *r);
            let mut report = ExperimentReport::new("beta", inputs, &budget);
            let status = commands::beta_cmd(&target, &ctx, *r, &budget, &mut report)?;
            (report, status)
        }
        Command::Alpha { source, aut } => {
            let target = resolve(source)?;
            let ctx = target.context(aut.as_deref())?;
            let inputs = source_inputs(source).with("aut", ctx.x().to_string());
            let mut report = ExperimentReport::new("alpha", inputs, &budget);
            let status = commands::alpha_cmd(&target, &ctx, &budget, &mut report)?;
            (report, status)
        }
        Command::BsCheck {
            source,
            pi,
            m,
            no_minimal,
        } => {
            let target = resolve(source)?;
            let pi = target.pi(pi.as_deref())?;
            let inputs = source_inputs(source).with("pi", pi.to_string()).with("m", *m);
            let mut report = ExperimentReport::new("bs-check", inputs, &budget);
            let status = commands::bs_check(&target, &pi, *m, !no_minimal, &budget, &mut report)?;
            (report, status)
        }
        Command::Prop1 { r } => {
            let mut report = ExperimentReport::new("prop1", Record::new().with("r", *r), &budget);
            let status = commands::prop1(*r, cli.seed, &mut report)?;
            (report, status)
        }
        Command::Prop4Table { n_min, n_max, r } => {
            let inputs = Record::new()
                .with("n_min", *n_min)
                .with("n_max", *n_max)
                .with("r", r.as_ref().map(|rs| rs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")));
            let mut report = ExperimentReport::new("prop4-table", inputs, &budget);
            let status = commands::prop4_table(*n_min, *n_max, r.as_deref(), &budget, &mut report)?;
            (report, status)
        }
        Command::VerifyBs { source, p } => {
            let target = resolve(source)?;
            let mut report = ExperimentReport::new("verify-bs", source_inputs(source).with("p", *p), &budget);
            let status = commands::verify_bs(&target, *p, &mut report)?;
            (report, status)
        }
        Command::VerifyBsSweep { order_cap } => {
            let inputs = Record::new().with("order_cap", order_cap.to_string());
            let mut report = ExperimentReport::new("verify-bs-sweep", inputs, &budget);
            let status = commands::verify_bs_sweep(*order_cap, &mut report)?;
            (report, status)
        }
    };
    report.set_wall_time(start.elapsed());
    Ok((report, status))
}

fn emit(cli: &Cli, report: &ExperimentReport) -> Result<(), CliError> {
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv()?,
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(CliError::output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|(report, status)| emit(&cli, &report).map(|()| status)) {
        Ok(status) => status.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
