//! Command-line front end.
//!
//! Exit codes: 0 for a positive outcome, 2 for a clean negative outcome
//! (`analyze` found no models, `check` found violations), 1 for any error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::problem::{self, format_dim_expr};
use crate::rational::approx_decimal;
use crate::report::Report;
use crate::units::{UnitExpr, UnitRegistry};

#[derive(Parser)]
#[command(name = "dimcalc", version, about = "Exact dimensional analysis calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the dimensional models of a problem and their power-law relations
    Analyze {
        /// Problem file
        file: PathBuf,
        /// Emit the report as a single JSON line
        #[arg(long)]
        json: bool,
    },
    /// Check an equation over a problem's variables for dimensional homogeneity
    Check {
        /// Problem file
        file: PathBuf,
        /// Equation to check, e.g. "E = m*c^2"
        #[arg(long)]
        eq: String,
    },
    /// Print the rank of a problem's dimensional matrix
    Rank {
        /// Problem file
        file: PathBuf,
    },
    /// Convert a quantity literal into another unit expression, exactly
    Convert {
        /// Units file
        #[arg(long)]
        units: PathBuf,
        /// Quantity literal, e.g. "200 cm"
        quantity: String,
        /// Target unit expression, e.g. "m" or "kg*m*s^-2"
        #[arg(long)]
        to: String,
    },
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn dispatch(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Analyze { file, json } => {
            let p = problem::parse_problem(&read_file(&file)?).map_err(|e| e.to_string())?;
            let report = Report::from_problem(&p).map_err(|e| e.to_string())?;
            if json {
                println!("{}", report.to_json_string());
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.models.is_empty() { 2 } else { 0 })
        }
        Command::Check { file, eq } => {
            let p = problem::parse_problem(&read_file(&file)?).map_err(|e| e.to_string())?;
            let check = problem::check_equation(&p, &eq).map_err(|e| e.to_string())?;
            for t in &check.terms {
                println!("term {} : {}", t.text, format_dim_expr(&t.dims, &p.bases));
            }
            for v in &check.violations {
                println!(
                    "violation: {} ({}) {} {} ({})",
                    v.left.text,
                    format_dim_expr(&v.left.dims, &p.bases),
                    v.junction,
                    v.right.text,
                    format_dim_expr(&v.right.dims, &p.bases),
                );
            }
            if check.homogeneous() {
                println!("homogeneous");
                Ok(0)
            } else {
                println!("violations: {}", check.violations.len());
                Ok(2)
            }
        }
        Command::Rank { file } => {
            let p = problem::parse_problem(&read_file(&file)?).map_err(|e| e.to_string())?;
            let matrix = p.matrix().map_err(|e| e.to_string())?;
            println!("{}", matrix.rank());
            Ok(0)
        }
        Command::Convert {
            units,
            quantity,
            to,
        } => {
            let reg =
                UnitRegistry::from_units_file(&read_file(&units)?).map_err(|e| e.to_string())?;
            let q = reg
                .parse_quantity_literal(&quantity)
                .map_err(|e| e.to_string())?;
            let target = UnitExpr::parse(&to).map_err(|e| e.to_string())?;
            let value = reg.convert(&q, &target).map_err(|e| e.to_string())?;
            println!("exact: {value} {target}");
            println!("approx: {} {target}", approx_decimal(&value));
            Ok(0)
        }
    }
}
