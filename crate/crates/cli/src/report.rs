use std::io::Write;
use std::time::Instant;

use linfrac::Error;
use serde_json::{json, Value};

use crate::Common;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_REFUTED: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

pub struct Context {
    pub argv: Vec<String>,
    pub seed: u64,
    pub precision: u32,
    started: Instant,
}

impl Context {
    pub fn new(argv: Vec<String>, common: &Common) -> Self {
        Context { argv, seed: common.seed, precision: common.precision, started: Instant::now() }
    }
}

/// A finished command: the payload, its inputs and the exit code.
pub struct Run {
    command: &'static str,
    argv: Vec<String>,
    seed: u64,
    precision: u32,
    field: String,
    inputs: Value,
    elapsed_ms: u128,
    pub result: Value,
    pub rows: Vec<(String, String)>,
    pub exit: u8,
}

impl Run {
    pub fn new(ctx: &Context, command: &'static str, field: String, inputs: Value, result: Value) -> Self {
        Run {
            command,
            argv: ctx.argv.clone(),
            seed: ctx.seed,
            precision: ctx.precision,
            field,
            inputs,
            elapsed_ms: ctx.started.elapsed().as_millis(),
            result,
            rows: Vec::new(),
            exit: EXIT_OK,
        }
    }

    pub fn row(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.rows.push((key.into(), value.to_string()));
        self
    }

    pub fn with_exit(mut self, code: u8) -> Self {
        self.exit = code;
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "meta": {
                "tool": "linfrac",
                "version": env!("CARGO_PKG_VERSION"),
                "command": self.command,
                "argv": self.argv,
                "seed": self.seed,
                "precision": self.precision,
                "field": self.field,
                "inputs": self.inputs,
                "elapsed_ms": self.elapsed_ms as u64,
                "exit_code": self.exit,
            },
            "result": self.result,
        })
    }

    pub fn emit(&self, format: Format) {
        // a closed pipe (e.g. `| head`) just ends the output
        let _ = self.write_to(&mut std::io::stdout().lock(), format);
    }

    fn write_to(&self, out: &mut impl Write, format: Format) -> std::io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&self.to_json()).expect("serializable")),
            Format::Table => {
                let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                writeln!(out, "{} (seed {}, field {})", self.command, self.seed, self.field)?;
                for (k, v) in &self.rows {
                    let mut lines = v.lines();
                    writeln!(out, "  {k:<width$}  {}", lines.next().unwrap_or(""))?;
                    for more in lines {
                        writeln!(out, "  {:<width$}  {more}", "")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidArgument(_)
            | Error::Inadmissible(_)
            | Error::FieldMismatch(..)
            | Error::ShapeMismatch(_)
            | Error::NotNormalized(_)
            | Error::UnsupportedOrder(_) => EXIT_INPUT,
            _ => EXIT_INCONCLUSIVE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

pub type Outcome = std::result::Result<Run, Failure>;

/// Serializes any payload; every core report type is serializable.
pub fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
