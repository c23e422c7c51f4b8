use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pkernel::json;
use pkernel::{Caps, Error, Session};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "pkernel", version, about = "Extensions of Clifford semigroups by finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input document, optionally tagged with a role: ROLE=PATH. Roles are
    /// semigroup, algebra, group, kernel, tpa and multiplier; untagged
    /// inputs are recognised by their fields.
    #[arg(long = "input", short = 'i', global = true, value_name = "[ROLE=]PATH")]
    inputs: Vec<String>,
    /// Largest carrier whose multiplier monoid may be enumerated.
    #[arg(long, global = true)]
    cap_multipliers: Option<usize>,
    /// Search nodes allowed in cocycle and coboundary enumeration.
    #[arg(long, global = true)]
    cap_cochains: Option<u64>,
    /// Seed for factor-set selection; without it the least solution is used.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Validate every input against its role.
    Validate,
    /// Structure of a semigroup: inverses, idempotents, center, multipliers.
    Analyze,
    /// Cohomology of C(A) for a kernel or twisted partial action.
    Cohomology {
        /// Only this degree (1, 2 or 3).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Factor set and obstruction class of a kernel.
    Obstruction,
    /// Build an extension of an unobstructed kernel.
    Extend,
    /// One extension per class of H^2.
    Classify,
    /// Tabulate obstruction classes over all kernels for an algebra and group.
    Survey,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Analyze => "analyze",
            Command::Cohomology { .. } => "cohomology",
            Command::Obstruction => "obstruction",
            Command::Extend => "extend",
            Command::Classify => "classify",
            Command::Survey => "survey",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

/// A role-tagged input path.
#[derive(Debug, Clone)]
pub struct InputArg {
    pub role: Option<String>,
    pub path: PathBuf,
}

fn parse_input(s: &str) -> InputArg {
    match s.split_once('=') {
        Some((role, path)) if !role.is_empty() && !role.contains(['/', '\\', '.']) => InputArg {
            role: Some(role.to_string()),
            path: PathBuf::from(path),
        },
        _ => InputArg {
            role: None,
            path: PathBuf::from(s),
        },
    }
}

/// Result of a command: a report, or a mathematically negative report.
pub enum Outcome {
    Done(Value),
    Negative(Value),
}

fn render_text(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                render_text(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => {
            out.push_str(&format!("{prefix} = {other}\n"));
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let defaults = Caps::default();
    let caps = Caps {
        multiplier_order: cli.cap_multipliers.unwrap_or(defaults.multiplier_order),
        cochain_nodes: cli.cap_cochains.unwrap_or(defaults.cochain_nodes),
        ..defaults
    };
    let session = Session::new(caps);
    let inputs: Vec<InputArg> = cli.inputs.iter().map(|s| parse_input(s)).collect();
    let result = if caps.multiplier_order == 0 || caps.cochain_nodes == 0 {
        Err(Error::Malformed("caps must be positive".into()))
    } else {
        commands::run(&session, cli.command, &inputs, cli.seed)
    };
    let usage = session.usage();
    let mut report = json!({
        "command": cli.command.name(),
        "caps": caps,
        "usage": usage,
        "approached_cap": usage.approached(&caps),
        "seed": cli.seed,
    });
    let code = match result {
        Ok(Outcome::Done(v)) => {
            report["result"] = v;
            0
        }
        Ok(Outcome::Negative(v)) => {
            report["result"] = v;
            2
        }
        Err(e) => {
            eprintln!("pkernel: {e}");
            report["error"] = json::error_to_value(&e);
            1
        }
    };
    let out = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => {
            let mut out = String::new();
            render_text("", &report, &mut out);
            out
        }
    };
    let _ = std::io::stdout().write_all(out.as_bytes());
    ExitCode::from(code)
}
