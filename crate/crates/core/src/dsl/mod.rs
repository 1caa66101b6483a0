//! Line-oriented model language (`.fis` files).
//!
//! ```text
//! model   := header input+ output rule+
//! header  := "fis" STRING
//! input   := "input" IDENT "range" NUM NUM term+
//! output  := "output" IDENT "range" NUM NUM term+
//! term    := "term" IDENT shape
//! shape   := "tri" NUM NUM NUM | "trap" NUM NUM NUM NUM
//! rule    := "rule" "if" clause ("and" clause)* "then" IDENT "is" IDENT
//! clause  := IDENT "is" IDENT
//! ```
//!
//! One statement per line, `#` starts a comment, identifiers are
//! case-sensitive. Rules carry one clause per input, in input declaration
//! order, and are numbered from 1 in order of appearance.

mod lexer;
mod parser;
mod serialize;

use std::fmt;

pub use serialize::{rule_line, serialize_model};

use crate::fis::FisDefinition;
use crate::validate::Severity;

/// Words with grammatical meaning; not usable as variable or term names.
pub const RESERVED_WORDS: &[&str] = &[
    "fis", "input", "output", "range", "term", "tri", "trap", "rule", "if", "and", "then", "is",
    "gauss", "gauss2", "gbell", "sigmoid",
];

/// Shape keywords set aside for membership functions the engine lacks.
pub const RESERVED_SHAPES: &[&str] = &["gauss", "gauss2", "gbell", "sigmoid"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub message: String,
}

impl ParseDiagnostic {
    pub fn error(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseDiagnostic {
            severity: Severity::Error,
            line,
            column,
            message: message.into(),
        }
    }

    pub fn warning(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseDiagnostic {
            severity: Severity::Warning,
            line,
            column,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.line, self.column, self.severity, self.message
        )
    }
}

/// Parses a model. On failure every error (and any warning) is returned,
/// sorted by position; no partial model is ever produced.
pub fn parse_model(source: &str) -> Result<FisDefinition, Vec<ParseDiagnostic>> {
    parse_model_with_warnings(source).map(|(fis, _)| fis)
}

/// Like [`parse_model`], also returning warnings (missing rule combinations)
/// on success.
pub fn parse_model_with_warnings(
    source: &str,
) -> Result<(FisDefinition, Vec<ParseDiagnostic>), Vec<ParseDiagnostic>> {
    match parser::parse(source) {
        (Some(fis), warnings) => Ok((fis, warnings)),
        (None, diags) => Err(diags),
    }
}
