//! The first-order functional language over the naturals: lexer, parser,
//! validator, pretty-printer and call-site enumeration.
//!
//! Beyond the core grammar the language accepts numeric literals as
//! arguments and equality guards `x = c` for any literal `c`.

mod ast;
mod callsites;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

pub use ast::{
    is_identifier, BoolExpr, CallSiteId, CondExpr, Expr, FunDef, PrimOp, Program, KEYWORDS,
};
pub use callsites::{enumerate_call_sites, CallSite, Fact, GuardContext};
pub use parser::parse_program;

/// A message with an optional 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl Diagnostic {
    pub fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            line: Some(line),
            column: Some(column),
            message: message.into(),
        }
    }

    pub fn general(message: impl Into<String>) -> Self {
        Diagnostic {
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{l}:{c}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("syntax error at {0}")]
    Syntax(Diagnostic),
    #[error("invalid program: {}", join(.0))]
    Invalid(Vec<Diagnostic>),
}

fn join(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
