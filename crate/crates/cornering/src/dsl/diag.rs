//! Diagnostics with source positions.

use std::fmt;

use crate::term::TypeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagKind {
    Syntax,
    UnknownObject,
    UnknownGenerator,
    UnknownProtocol,
    UnknownTerm,
    Duplicate,
    Type,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagKind,
    pub span: Span,
    pub message: String,
    pub expected: Option<String>,
    pub found: Option<String>,
}

impl Diagnostic {
    pub fn error(kind: DiagKind, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { severity: Severity::Error, kind, span, message: message.into(), expected: None, found: None }
    }

    pub fn type_error(span: Span, e: TypeError) -> Diagnostic {
        match e {
            TypeError::Mismatch { rule, expected, found } => Diagnostic {
                severity: Severity::Error,
                kind: DiagKind::Type,
                span,
                message: format!("boundaries do not match in {rule}"),
                expected: Some(expected),
                found: Some(found),
            },
            other => Diagnostic::error(DiagKind::Type, span, other.to_string()),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}: {sev}: {}", self.span, self.message)?;
        if let (Some(e), Some(g)) = (&self.expected, &self.found) {
            write!(f, " (expected {e}, found {g})")?;
        }
        Ok(())
    }
}
