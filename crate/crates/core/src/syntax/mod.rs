//! Concrete syntax of deployment models (`.tdl`): a recursive-descent
//! parser and the canonical printer.
//!
//! ```text
//! Model       ::= (TypeDecl | DatabaseDecl | PlatformDecl)*
//! TypeDecl    ::= ('platformtype' | 'containertype' | 'dbtype') IDENT
//! DatabaseDecl::= 'database' IDENT ':' IDENT '{' Property* '}'
//! PlatformDecl::= 'platform' IDENT ':' IDENT '{' Cluster* '}'
//! Cluster     ::= 'cluster' IDENT '{' Application* '}'
//! Application ::= 'application' IDENT '{' Container* '}'
//! Container   ::= 'container' IDENT ':' IDENT '{' ('deploys' IDENT)? Property* '}'
//! Property    ::= KEY '=' (Array | List | Scalar)      // value runs to end of line
//! ```

mod cursor;
mod keyvalue;
mod parse;
mod print;

use std::fmt;

use crate::span::Span;

pub(crate) use cursor::Cursor;
pub use keyvalue::parse_key_values;
pub use parse::parse_dl;
pub use print::{print_dl, print_property};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: Span,
    /// Human description of what the parser was looking for.
    pub expected: String,
    /// Offending lexeme; `None` at end of input.
    pub found: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, found ", self.span, self.expected)?;
        match &self.found {
            None => f.write_str("end of input"),
            Some(s) if s == "\n" => f.write_str("end of line"),
            Some(s) => write!(f, "`{}`", s.escape_debug()),
        }
    }
}

impl std::error::Error for ParseError {}
