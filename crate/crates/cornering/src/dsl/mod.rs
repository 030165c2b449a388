//! The `.corn` surface language.

mod ast;
mod diag;
mod lex;
mod parse;
mod print;
mod trace;

pub use ast::{print_objspec, print_proto_expr, print_proto_spec, print_term_expr, ProtoExpr, TermExpr};
pub use diag::{DiagKind, Diagnostic, Severity, Span};
pub use parse::{parse_workspace, Decl, Workspace};
pub use print::{print_base, print_protocol, print_protocol_spec, print_term};
pub use trace::{read_trace, term_digest, trace_json, write_trace, TraceError, TRACE_HEADER};
