//! JSON front end for the metastab library.
//!
//! Every command reads one JSON document and writes one JSON envelope
//! `{"ok": …, "result": …, "paper_ref": …}`. Commands with several library
//! operations choose one through an `"op"` field. Exit status is 0 on
//! success, 1 on a domain error or a failing verify report, 2 on malformed
//! input.

mod commands;
pub mod registry;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub use registry::{lookup, CommandSpec, REGISTRY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error("malformed input: {0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::UnknownCommand(_) | CliError::Input(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(_) => "domain",
            CliError::UnknownCommand(_) | CliError::Input(_) => "input",
        }
    }
}

/// Command-line overrides; only `verify` reads them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Options {
    pub seed: Option<u64>,
    pub nmax: Option<u64>,
    pub suite: Option<String>,
}

/// What a handler produced: a result, and whether it counts as a success.
pub(crate) struct Produced {
    pub result: Value,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: u8,
}

#[derive(Serialize)]
struct Envelope<'a> {
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody<'a>>,
    paper_ref: Option<&'static str>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

/// Run `command` on the JSON text `input`. Empty input counts as `{}`.
pub fn run(command: &str, input: &str, opts: &Options) -> Outcome {
    let spec = lookup(command);
    let anchor = spec.map(|s| s.anchor);
    let produced = match spec {
        None => Err(CliError::UnknownCommand(command.to_string())),
        Some(spec) => parse_input(input).and_then(|v| (spec.handler)(v, opts)),
    };
    let (envelope, status) = match produced {
        Ok(p) => (
            Envelope {
                ok: p.ok,
                result: Some(p.result),
                error: None,
                paper_ref: anchor,
            },
            if p.ok { 0 } else { 1 },
        ),
        Err(e) => (
            Envelope {
                ok: false,
                result: None,
                error: Some(ErrorBody {
                    kind: e.kind(),
                    message: e.to_string(),
                }),
                paper_ref: anchor,
            },
            e.exit_code(),
        ),
    };
    let output = serde_json::to_string(&envelope).expect("envelope serializes");
    Outcome { output, status }
}

fn parse_input(input: &str) -> Result<Value, CliError> {
    if input.trim().is_empty() {
        return Ok(Value::Object(Default::default()));
    }
    serde_json::from_str(input).map_err(|e| CliError::Input(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(out: &Outcome) -> Value {
        serde_json::from_str(&out.output).unwrap()
    }

    #[test]
    fn envelope_shapes() {
        let ok = run("iota", r#"{"datum": [1, 1]}"#, &Options::default());
        assert_eq!(ok.status, 0);
        let v = value(&ok);
        assert_eq!(v["ok"], true);
        assert_eq!(v["result"], "1/4");
        assert!(v["paper_ref"].is_string());

        let bad = run("iota", "{", &Options::default());
        assert_eq!(bad.status, 2);
        assert_eq!(value(&bad)["error"]["kind"], "input");

        let unknown = run("no-such-command", "{}", &Options::default());
        assert_eq!(unknown.status, 2);
        assert!(value(&unknown)["paper_ref"].is_null());
    }

    #[test]
    fn empty_input_is_an_empty_object() {
        let out = run("lemma2n", "  ", &Options::default());
        assert_eq!(out.status, 2, "{}", out.output);
        assert!(out.output.contains("missing field"));
    }
}
