//! Command-line front end. Every subcommand reads JSON (inline, from a
//! file, or from standard input) and writes exactly one JSON value to
//! standard output.
//!
//! Exit codes: 0 on success (whatever the mathematical answer), 2 on
//! malformed or invalid input, 3 when a resource bound is hit.

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::abelian::{primary_decompose, PGroupType};
use crate::equivalence::{are_equivalent_with, canonical_form, classify_all};
use crate::error::{Error, Result};
use crate::exactmat::snf;
use crate::extension::{middle_type, presentation_matrix};
use crate::json;
use crate::limits::Limits;
use crate::oracle::{diagram_equivalent, realize_extension};

#[derive(Debug, Parser)]
#[command(name = "abext", version, about = "Extensions of finite abelian p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smith normal form of a matrix: `[[..], ..]` or `{"matrix": [[..]]}`.
    Snf(CommonArgs),
    /// Primary decomposition of `Z/o_1 + ...`: `[o_1, ...]` or `{"orders": [..]}`.
    Decompose(CommonArgs),
    /// Presentation matrix of an extension.
    Build(CommonArgs),
    /// Type of the middle group of an extension.
    Type(CommonArgs),
    /// Lexicographically least equivalent extension.
    Canonical(CommonArgs),
    /// Equivalence of two extensions `[e1, e2]`, with a witness.
    Equiv(CommonArgs),
    /// All extensions for (p, lambda, mu) up to equivalence.
    Classify(CommonArgs),
    /// Equivalence of two extensions `[e1, e2]` by brute force.
    OracleEquiv(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Read the JSON payload from this file.
    #[arg(long, value_name = "PATH")]
    input: Option<std::path::PathBuf>,
    /// Inline JSON payload.
    #[arg(long, value_name = "JSON", conflicts_with = "input")]
    json: Option<String>,
    /// Prime (classify).
    #[arg(long)]
    p: Option<u64>,
    /// Subgroup type, comma separated (classify).
    #[arg(long, value_parser = parse_parts, allow_hyphen_values = true)]
    lambda: Option<PGroupType>,
    /// Quotient type, comma separated (classify).
    #[arg(long, value_parser = parse_parts, allow_hyphen_values = true)]
    mu: Option<PGroupType>,
    /// Largest explicit group enumerated by the oracle.
    #[arg(long)]
    max_order: Option<u64>,
    /// Largest automorphism search space.
    #[arg(long)]
    max_witnesses: Option<u64>,
    /// Largest number of coefficient matrices in a classification.
    #[arg(long)]
    max_matrices: Option<u64>,
}

fn parse_parts(s: &str) -> std::result::Result<PGroupType, String> {
    let parts = if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?
    };
    PGroupType::new(parts).map_err(|e| e.to_string())
}

impl CommonArgs {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_order: self.max_order.unwrap_or(d.max_order),
            max_witnesses: self.max_witnesses.unwrap_or(d.max_witnesses),
            max_matrices: self.max_matrices.unwrap_or(d.max_matrices),
        }
    }

    fn payload(&self) -> Result<Value> {
        let text = match (&self.json, &self.input) {
            (Some(s), _) => s.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
            (None, None) => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
                s
            }
        };
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Unwraps `{"key": x}` to `x`; anything else is returned as is.
fn unwrap_key<'a>(v: &'a Value, key: &str) -> &'a Value {
    v.as_object()
        .filter(|o| o.len() == 1)
        .and_then(|o| o.get(key))
        .unwrap_or(v)
}

fn execute(cmd: &Command) -> Result<Value> {
    match cmd {
        Command::Snf(args) => {
            let v = args.payload()?;
            let m = json::value_to_matrix(unwrap_key(&v, "matrix"), None)?;
            Ok(json::snf_to_value(&snf(&m)))
        }
        Command::Decompose(args) => {
            let v = args.payload()?;
            let orders = unwrap_key(&v, "orders")
                .as_array()
                .ok_or_else(|| Error::Parse("expected an array of orders".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .ok_or_else(|| Error::Parse(format!("order must be a positive integer, found {x}")))
                })
                .collect::<Result<Vec<u64>>>()?;
            Ok(json::decomposition_to_value(&primary_decompose(&orders)?))
        }
        Command::Build(args) => {
            let e = json::value_to_extension(&args.payload()?)?;
            Ok(json!({ "matrix": json::matrix_to_value(&presentation_matrix(&e)) }))
        }
        Command::Type(args) => {
            let e = json::value_to_extension(&args.payload()?)?;
            Ok(json!({ "middle_type": json::type_to_value(&middle_type(&e)?) }))
        }
        Command::Canonical(args) => {
            let e = json::value_to_extension(&args.payload()?)?;
            Ok(json::extension_to_value(&canonical_form(&e, &args.limits())?))
        }
        Command::Equiv(args) => {
            let (a, b) = json::value_to_extension_pair(&args.payload()?)?;
            let w = are_equivalent_with(&a, &b, &args.limits())?;
            Ok(json!({
                "equivalent": w.is_some(),
                "witness": w.as_ref().map_or(Value::Null, json::witness_to_value),
            }))
        }
        Command::Classify(args) => {
            let (p, lambda, mu) = match (args.p, &args.lambda, &args.mu) {
                (Some(p), Some(l), Some(m)) => (p, l.clone(), m.clone()),
                (None, None, None) => json::value_to_parameters(&args.payload()?)?,
                _ => {
                    return Err(Error::Parse(
                        "classify needs all of --p, --lambda, --mu or a JSON payload".into(),
                    ))
                }
            };
            let c = classify_all(p, &lambda, &mu, &args.limits())?;
            Ok(json::classification_to_value(&c))
        }
        Command::OracleEquiv(args) => {
            let limits = args.limits();
            let (a, b) = json::value_to_extension_pair(&args.payload()?)?;
            let ra = realize_extension(&a, &limits)?;
            let rb = realize_extension(&b, &limits)?;
            Ok(json!({ "equivalent": diagram_equivalent(&ra, &rb, &limits)? }))
        }
    }
}

/// What a CLI invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded { .. } | Error::Overflow(_) => 3,
        _ => 2,
    }
}

fn error_json(code: &str, message: &str) -> String {
    json!({ "error": code, "message": message }).to_string() + "\n"
}

/// Runs the tool on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: String::new(),
                    stderr: rendered,
                },
                _ => Outcome {
                    code: 2,
                    stdout: error_json("usage", rendered.lines().next().unwrap_or("usage error")),
                    stderr: rendered,
                },
            };
        }
    };
    match execute(&cli.command) {
        Ok(v) => Outcome {
            code: 0,
            stdout: v.to_string() + "\n",
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: error_json(e.code(), &e.to_string()),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        run(std::iter::once("abext").chain(args.iter().copied()))
    }

    #[test]
    fn parts_flag() {
        assert_eq!(parse_parts("2,1").unwrap().parts(), &[2, 1]);
        assert_eq!(parse_parts("").unwrap().parts(), &[] as &[u32]);
        assert!(parse_parts("1,2").is_err());
        assert!(parse_parts("x").is_err());
    }

    #[test]
    fn unknown_subcommand() {
        let out = call(&["frobnicate"]);
        assert_eq!(out.code, 2);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"], "usage");
    }

    #[test]
    fn type_subcommand() {
        let out = call(&["type", "--json", r#"{"p":2,"lambda":[1],"mu":[1],"A":[[1]]}"#]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "{\"middle_type\":[2]}\n");
    }
}
