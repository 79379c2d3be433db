// SPDX-License-Identifier: Apache-2.0

//! gk3: exact lattice computations for generalized K3 surfaces.
//!
//! Exit codes: 0 success, 1 domain validation failure, 2 parse or schema
//! error.

mod commands;
mod document;
mod report;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: exit 2.
    Schema(String),
    /// Input parsed but violates a mathematical condition: exit 1.
    Domain { kind: String, message: String },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    fn report(&self) -> serde_json::Value {
        match self {
            CliError::Schema(m) => json!({ "error": "schema", "message": m }),
            CliError::Domain { kind, message } => json!({ "error": "domain", "kind": kind, "message": message }),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Schema(m) | CliError::Domain { message: m, .. } => m,
        }
    }
}

impl From<gk3::Error> for CliError {
    fn from(e: gk3::Error) -> Self {
        let debug = format!("{e:?}");
        let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        match e {
            gk3::Error::NotSquarefree(_) | gk3::Error::ZeroDenominator | gk3::Error::FieldMismatch(..) => {
                CliError::Schema(e.to_string())
            }
            _ => CliError::Domain { kind, message: e.to_string() },
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "gk3", version, about = "Exact lattice computations for generalized K3 surfaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    group: Group,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Input document; "-" or absent reads standard input.
    pub file: Option<PathBuf>,
}

impl Input {
    pub fn read(&self) -> Result<String, CliError> {
        let mut text = String::new();
        match &self.file {
            Some(p) if p.as_os_str() != "-" => {
                text = std::fs::read_to_string(p).map_err(|e| CliError::Schema(format!("{}: {e}", p.display())))?;
            }
            _ => {
                std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Schema(format!("stdin: {e}")))?;
            }
        }
        Ok(text)
    }
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Integral lattices and sublattices.
    #[command(subcommand)]
    Lattice(commands::LatticeCmd),
    /// Cohomology classes in the Mukai lattice.
    #[command(subcommand)]
    Class(commands::ClassCmd),
    /// Generalized K3 pairs.
    #[command(subcommand)]
    Gk3(commands::Gk3Cmd),
    /// Complex and Kähler rigidity.
    #[command(subcommand)]
    Rigid(commands::RigidCmd),
    /// Lattice polarizations and mirror families.
    #[command(subcommand)]
    Mirror(commands::MirrorCmd),
}

fn emit(v: &serde_json::Value, format: Format) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize"),
        Format::Text => report::text_lines(v).join("\n"),
    };
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.group {
        Group::Lattice(c) => commands::lattice(c),
        Group::Class(c) => commands::class(c),
        Group::Gk3(c) => commands::gk3(c),
        Group::Rigid(c) => commands::rigid(c),
        Group::Mirror(c) => commands::mirror(c),
    };
    match result {
        Ok(v) => {
            emit(&v, cli.format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&e.report(), cli.format);
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
