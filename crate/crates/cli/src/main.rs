//! `derivalg`: reports on polynomial derivations, their Jacobians, the
//! formal inverse of `X + tF` and noncommutative symmetric functions.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 a checked identity failed.

mod commands;
mod golden;
mod mapfile;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use derivalg::liealg::ClosureConfig;
use derivalg::nsymm::{Family, DEFAULT_BOUND};

use commands::{NSymmOp, RouteArg, Side};
use mapfile::MapFile;
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "derivalg", version, about = "Exact algebra of polynomial derivations")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true, env = "DERIVALG_JSON")]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ClosureArgs {
    /// Bracketing rounds.
    #[arg(long, env = "DERIVALG_DEPTH", default_value_t = 6)]
    depth: usize,
    /// Largest total degree kept in the closure.
    #[arg(long, env = "DERIVALG_DEGREE_CAP", default_value_t = 24)]
    degree_cap: i64,
    /// Number of right powers tried as generators.
    #[arg(long, env = "DERIVALG_POWER_BOUND", default_value_t = 12)]
    power_bound: usize,
}

impl ClosureArgs {
    fn config(&self) -> Result<ClosureConfig, String> {
        if self.depth < 1 {
            return Err("--depth must be at least 1".into());
        }
        if self.power_bound < 1 {
            return Err("--power-bound must be at least 1".into());
        }
        Ok(ClosureConfig {
            depth: self.depth,
            degree_cap: self.degree_cap,
            power_bound: self.power_bound,
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Power traces and nilpotency of J(F), divergences of the right powers.
    CheckJacobian {
        file: PathBuf,
        /// Right powers whose divergence is listed (at least n are always listed).
        #[arg(long, env = "DERIVALG_POWER_BOUND", default_value_t = 8)]
        bound: usize,
    },
    /// Left power tuples H_m or right powers D^[m] up to the first zero.
    Powers {
        file: PathBuf,
        #[arg(long, env = "DERIVALG_MAX_POWER", default_value_t = 8)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// Coefficients F_1 .. F_M of the inverse of X + tF.
    FormalInverse {
        file: PathBuf,
        #[arg(long, env = "DERIVALG_ORDER", default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::All)]
        route: RouteArg,
        /// Also print the exploratory left-normed variant of the reduced sum.
        #[arg(long)]
        left_normed: bool,
    },
    /// Noncommutative symmetric functions.
    Nsymm {
        #[arg(value_enum)]
        op: NSymmOp,
        /// z, theta, psi or u.
        #[arg(value_parser = parse_family)]
        family: Family,
        /// Weight of the generator.
        weight: u32,
        #[arg(long, env = "DERIVALG_BOUND", default_value_t = DEFAULT_BOUND)]
        bound: u32,
        /// Target family for convert and lie-express.
        #[arg(long, value_parser = parse_family, default_value = "theta")]
        to: Family,
    },
    /// Divergences of the Lie algebra generated by the right powers.
    DivergenceAudit {
        file: PathBuf,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Bracket closure of the right powers, optionally specialized at VAR=VALUE.
    Closure {
        file: PathBuf,
        #[command(flatten)]
        closure: ClosureArgs,
        #[arg(long, value_name = "VAR=VALUE")]
        specialize: Option<String>,
    },
    /// Golden suite for the two worked examples and the Psi expressions.
    VerifyPaper,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: derivalg::Error| e.to_string())
}

fn load(path: &PathBuf) -> Result<MapFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    MapFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(command: &Command) -> Result<Report, String> {
    match command {
        Command::CheckJacobian { file, bound } => commands::check_jacobian(&load(file)?, *bound),
        Command::Powers { file, max, side } => commands::powers(&load(file)?, *max, *side),
        Command::FormalInverse {
            file,
            order,
            route,
            left_normed,
        } => commands::formal_inverse_cmd(&load(file)?, *order, *route, *left_normed),
        Command::Nsymm {
            op,
            family,
            weight,
            bound,
            to,
        } => commands::nsymm(*op, *family, *weight, *bound, *to),
        Command::DivergenceAudit { file, closure } => {
            commands::divergence_audit_cmd(&load(file)?, closure.config()?)
        }
        Command::Closure {
            file,
            closure,
            specialize,
        } => commands::closure(&load(file)?, closure.config()?, specialize.as_deref()),
        Command::VerifyPaper => golden::verify_paper(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("JSON value serializes"));
            } else {
                print!("{}", report.to_text());
            }
            if report.consistent {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
