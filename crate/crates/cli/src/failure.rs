use std::fmt;
use std::path::Path;

use polyforge_core::ml::MlError;
use polyforge_core::transform::{AnswersError, CatalogError, TransformErrors};
use polyforge_core::{ParseError, ValidationReport};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Parse = 1,
    Invalid = 2,
    Io = 3,
    Generate = 4,
}

/// A failed command: its exit status plus diagnostics in both text and JSON
/// form.
#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub text: String,
    pub json: Value,
}

impl Failure {
    pub fn new(exit: Exit, code: &str, message: impl Into<String>) -> Self {
        let message = message.into();
        Failure {
            exit,
            text: format!("error: {message}"),
            json: json!({ "errors": [{ "code": code, "message": message }] }),
        }
    }

    pub fn io(path: &Path, err: impl fmt::Display) -> Self {
        Failure::new(Exit::Io, "IO_ERROR", format!("{}: {err}", path.display()))
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(Exit::Io, "USAGE", message)
    }

    pub fn parse(path: &Path, err: &ParseError) -> Self {
        Failure {
            exit: Exit::Parse,
            text: format!("error: {}:{err}", path.display()),
            json: json!({ "errors": [parse_json(path, err)] }),
        }
    }

    /// Validation failure of a model the command had to consume.
    pub fn invalid_model(path: &Path, report: &ValidationReport) -> Self {
        Failure {
            exit: Exit::Invalid,
            text: format!("{}: model is invalid\n{report}", path.display()),
            json: serde_json::to_value(report).unwrap_or(Value::Null),
        }
    }

    pub fn ml(path: &Path, err: &MlError) -> Self {
        match err {
            MlError::Parse(e) => Failure::parse(path, e),
            MlError::Invalid(problems) => Failure {
                exit: Exit::Invalid,
                text: problems
                    .iter()
                    .map(|p| format!("error: {}:{p}", path.display()))
                    .collect::<Vec<_>>()
                    .join("\n"),
                json: json!({
                    "errors": problems.iter().map(|p| json!({
                        "code": p.code,
                        "file": path.display().to_string(),
                        "line": p.span.line,
                        "column": p.span.column,
                        "message": p.message,
                    })).collect::<Vec<_>>()
                }),
            },
        }
    }

    pub fn answers(path: &Path, err: &AnswersError) -> Self {
        match err {
            AnswersError::Syntax(e) => Failure::parse(path, e),
            AnswersError::Invalid { span, message } => Failure::new(
                Exit::Invalid,
                "INVALID_ANSWER",
                format!("{}:{span}: {message}", path.display()),
            ),
        }
    }

    pub fn catalog(path: &Path, err: &CatalogError) -> Self {
        Failure::usage(format!("{}:{err}", path.display()))
    }

    pub fn transform(errors: &TransformErrors) -> Self {
        Failure {
            exit: Exit::Invalid,
            text: errors
                .0
                .iter()
                .map(|e| format!("error: {e}"))
                .collect::<Vec<_>>()
                .join("\n"),
            json: json!({
                "errors": errors.0.iter().map(|e| json!({
                    "code": e.code(),
                    "message": e.to_string(),
                })).collect::<Vec<_>>()
            }),
        }
    }
}

fn parse_json(path: &Path, err: &ParseError) -> Value {
    json!({
        "code": "PARSE_ERROR",
        "file": path.display().to_string(),
        "line": err.span.line,
        "column": err.span.column,
        "expected": err.expected,
        "found": err.found,
        "message": err.to_string(),
    })
}
