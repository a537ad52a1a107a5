//! `longknot`: knot catalog listing, rack colorings, Heisenberg ideals and
//! the quantum double invariant from the command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a computed value
//! disagrees with its reference, 3 a resource cap was hit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use longknot::catalog::Catalog;
use longknot::heisenberg::DEFAULT_STEP_CAP;
use longknot::laurent::Q;
use longknot::report::{self, ReportError, SetBackend, Table1Profile};
use longknot::Execution;

#[derive(Parser, Debug)]
#[command(name = "longknot", version, about = "Long knot invariants from rigid R-matrices")]
struct Cli {
    /// Knot catalog JSON file [default: the builtin catalog]
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
    /// Print JSON (the default)
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Print a plain-text table instead of JSON
    #[arg(long, global = true)]
    table: bool,
    /// Run everything on one thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog knots with their crossing counts
    List,
    /// Count colorings by the conjugation rack of a pointed group
    Rack(RackArgs),
    /// Compute the Heisenberg representation ideal of a knot
    Heisenberg(HeisenbergArgs),
    /// Recompute the reference table of Alexander polynomials and ideals
    Table1(Table1Args),
    /// Evaluate the quantum double invariant on a truncated module
    Universal(UniversalArgs),
}

#[derive(Args, Debug)]
struct RackArgs {
    /// Catalog name (`3_1`, `unknot`, ...) or a diagram file
    #[arg(long)]
    knot: String,
    /// `Sn`, `Zn`, `Dn` (order 2n) or a group table JSON file
    #[arg(long, default_value = "S3")]
    group: String,
    /// Element label of the meridian image
    #[arg(long, default_value = "(1 2)")]
    mu: String,
    /// Element label of the longitude image, or ALL
    #[arg(long, default_value = "ALL")]
    lambda: String,
    /// `rel` or `span`
    #[arg(long, default_value = "span")]
    backend: String,
}

#[derive(Args, Debug)]
struct HeisenbergArgs {
    #[arg(long)]
    knot: String,
    /// Maximum number of S-polynomial reductions
    #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
    groebner_step_cap: usize,
}

#[derive(Args, Debug)]
struct Table1Args {
    /// `core` (3_1, 4_1, 6_2, 8_10, 8_20) or `extended` (every row)
    #[arg(long, default_value = "extended")]
    profile: String,
    #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
    groebner_step_cap: usize,
}

#[derive(Args, Debug)]
struct UniversalArgs {
    #[arg(long)]
    knot: String,
    /// Truncation order N of the ε-series
    #[arg(long, default_value_t = 6)]
    trunc: usize,
    /// Module rank d [default: N]
    #[arg(long)]
    rank: Option<usize>,
    /// Offset c of the ψ̇-eigenvalues, a rational such as `0` or `1/2`
    #[arg(long, default_value = "0")]
    offset: String,
}

struct Output {
    text: String,
    mismatch: bool,
}

fn render<T: serde::Serialize>(cli: &Cli, value: &T, table: impl FnOnce(&T) -> String) -> String {
    if cli.table {
        table(value)
    } else {
        serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
    }
}

fn run(cli: &Cli) -> Result<Output, ReportError> {
    let catalog = match &cli.catalog {
        Some(p) => Catalog::load(p)?,
        None => Catalog::builtin(),
    };
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let out = match &cli.command {
        Command::List => {
            let r = report::cmd_list(&catalog);
            Output { text: render(cli, &r, |r| r.table()), mismatch: false }
        }
        Command::Rack(a) => {
            let backend: SetBackend = a.backend.parse()?;
            let r = report::cmd_rack(&catalog, &a.knot, &a.group, &a.mu, Some(&a.lambda), backend, exec)?;
            Output { text: render(cli, &r, |r| r.table()), mismatch: !r.agree }
        }
        Command::Heisenberg(a) => {
            let r = report::cmd_heisenberg(&catalog, &a.knot, a.groebner_step_cap)?;
            Output { text: render(cli, &r, |r| r.table()), mismatch: r.table1_match == Some(false) }
        }
        Command::Table1(a) => {
            let profile: Table1Profile = a.profile.parse()?;
            let r = report::cmd_table1(&catalog, profile, a.groebner_step_cap, exec)?;
            Output { text: render(cli, &r, |r| r.table()), mismatch: !r.all_match }
        }
        Command::Universal(a) => {
            let offset: Q = a.offset.parse().map_err(|_| ReportError::Usage(format!("bad offset `{}`", a.offset)))?;
            let r = report::cmd_universal(&catalog, &a.knot, a.trunc, a.rank.unwrap_or(a.trunc), offset, exec)?;
            Output { text: render(cli, &r, |r| r.table()), mismatch: !r.equal }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.mismatch { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_cap() { 3 } else { 1 })
        }
    }
}
