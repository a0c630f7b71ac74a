//! High-level polystore model (`.tyml`): entities and the abstract databases
//! that hold them.
//!
//! ```text
//! entity Location { id : int  name : string }
//! database locmandb : relational { contains Location }
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::span::Span;
use crate::syntax::{Cursor, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DbKind {
    Relational,
    Document,
    Column,
    Graph,
}

impl DbKind {
    pub const ALL: [DbKind; 4] = [
        DbKind::Relational,
        DbKind::Document,
        DbKind::Column,
        DbKind::Graph,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DbKind::Relational => "relational",
            DbKind::Document => "document",
            DbKind::Column => "column",
            DbKind::Graph => "graph",
        }
    }
}

impl fmt::Display for DbKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DbKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        DbKind::ALL.into_iter().find(|k| k.as_str() == s).ok_or(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitiveType {
    Int,
    Float,
    String,
    Bool,
    Date,
    Text,
}

impl PrimitiveType {
    pub const ALL: [PrimitiveType; 6] = [
        PrimitiveType::Int,
        PrimitiveType::Float,
        PrimitiveType::String,
        PrimitiveType::Bool,
        PrimitiveType::Date,
        PrimitiveType::Text,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PrimitiveType::Int => "int",
            PrimitiveType::Float => "float",
            PrimitiveType::String => "string",
            PrimitiveType::Bool => "bool",
            PrimitiveType::Date => "date",
            PrimitiveType::Text => "text",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlAttribute {
    pub name: String,
    pub ty: PrimitiveType,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlEntity {
    pub name: String,
    pub attributes: Vec<MlAttribute>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityRef {
    pub name: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlDatabase {
    pub name: String,
    pub kind: DbKind,
    pub contains: Vec<EntityRef>,
    pub span: Span,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MlModel {
    pub entities: Vec<MlEntity>,
    pub databases: Vec<MlDatabase>,
}

impl MlModel {
    pub fn database(&self, name: &str) -> Option<&MlDatabase> {
        self.databases.iter().find(|d| d.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlDiagnostic {
    pub code: &'static str,
    pub span: Span,
    pub message: String,
}

impl fmt::Display for MlDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error[{}] {}", self.span, self.code, self.message)
    }
}

#[derive(Debug, Clone, Error)]
pub enum MlError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<MlDiagnostic>),
}

/// One `(database name, kind)` pair per database, in declaration order.
pub fn required_databases(ml: &MlModel) -> Vec<(String, DbKind)> {
    ml.databases
        .iter()
        .map(|d| (d.name.clone(), d.kind))
        .collect()
}

/// Parses and checks `.tyml` source.
pub fn parse_ml(text: &str) -> Result<MlModel, MlError> {
    let model = Parser {
        cur: Cursor::new(text),
    }
    .model()?;
    let problems = check(&model);
    if problems.is_empty() {
        Ok(model)
    } else {
        Err(MlError::Invalid(problems))
    }
}

/// Semantic checks: unique names, declared entities, one database per entity.
pub fn check(model: &MlModel) -> Vec<MlDiagnostic> {
    let mut out = Vec::new();
    let mut entities = HashSet::new();
    for e in &model.entities {
        if !entities.insert(e.name.as_str()) {
            out.push(MlDiagnostic {
                code: "DUP_NAME",
                span: e.span,
                message: format!("entity `{}` is declared more than once", e.name),
            });
        }
        let mut attrs = HashSet::new();
        for a in &e.attributes {
            if !attrs.insert(a.name.as_str()) {
                out.push(MlDiagnostic {
                    code: "DUP_NAME",
                    span: a.span,
                    message: format!("attribute `{}` repeats in entity `{}`", a.name, e.name),
                });
            }
        }
    }
    let mut databases = HashSet::new();
    let mut owner: HashMap<&str, &str> = HashMap::new();
    for d in &model.databases {
        if !databases.insert(d.name.as_str()) {
            out.push(MlDiagnostic {
                code: "DUP_NAME",
                span: d.span,
                message: format!("database `{}` is declared more than once", d.name),
            });
        }
        for r in &d.contains {
            if !entities.contains(r.name.as_str()) {
                out.push(MlDiagnostic {
                    code: "UNKNOWN_ENTITY",
                    span: r.span,
                    message: format!(
                        "database `{}` contains undeclared entity `{}`",
                        d.name, r.name
                    ),
                });
            } else if let Some(first) = owner.insert(&r.name, &d.name) {
                out.push(MlDiagnostic {
                    code: "SHARED_ENTITY",
                    span: r.span,
                    message: format!(
                        "entity `{}` is already contained in database `{first}`",
                        r.name
                    ),
                });
            }
        }
    }
    out
}

struct Parser<'s> {
    cur: Cursor<'s>,
}

impl<'s> Parser<'s> {
    fn model(&mut self) -> Result<MlModel, ParseError> {
        let mut model = MlModel::default();
        loop {
            self.cur.skip_trivia();
            if self.cur.at_eof() {
                return Ok(model);
            }
            match self.cur.peek_ident() {
                Some(("entity", _)) => model.entities.push(self.entity()?),
                Some(("database", _)) => model.databases.push(self.database()?),
                _ => return Err(self.cur.unexpected("`entity` or `database`")),
            }
        }
    }

    /// Model names exclude `.` so they can be embedded in dotted answer keys.
    fn name(&mut self, what: &str) -> Result<(String, Span), ParseError> {
        self.cur.skip_trivia();
        let probe = self.cur;
        let (name, span) = self.cur.expect_ident(what)?;
        if name.contains('.') {
            self.cur = probe;
            return Err(self.cur.unexpected(&format!("{what} without `.`")));
        }
        Ok((name, span))
    }

    fn entity(&mut self) -> Result<MlEntity, ParseError> {
        let start = self.cur.mark();
        self.cur.expect_keyword("entity")?;
        let (name, _) = self.name("entity name")?;
        self.cur.expect_char('{')?;
        let mut attributes = Vec::new();
        loop {
            self.cur.skip_trivia();
            if self.cur.eat('}') {
                break;
            }
            let attr_start = self.cur.mark();
            let (attr, _) = self.name("attribute name or `}`")?;
            self.cur.expect_char(':')?;
            self.cur.skip_trivia();
            let ty = match self.cur.peek_ident() {
                Some((word, _)) => PrimitiveType::ALL.into_iter().find(|t| t.as_str() == word),
                None => None,
            };
            let Some(ty) = ty else {
                return Err(self
                    .cur
                    .unexpected("attribute type (int, float, string, bool, date or text)"));
            };
            self.cur.ident();
            attributes.push(MlAttribute {
                name: attr,
                ty,
                span: self.cur.span_from(attr_start),
            });
        }
        Ok(MlEntity {
            name,
            attributes,
            span: self.cur.span_from(start),
        })
    }

    fn database(&mut self) -> Result<MlDatabase, ParseError> {
        let start = self.cur.mark();
        self.cur.expect_keyword("database")?;
        let (name, _) = self.name("database name")?;
        self.cur.expect_char(':')?;
        self.cur.skip_trivia();
        let kind = self
            .cur
            .peek_ident()
            .and_then(|(word, _)| word.parse::<DbKind>().ok());
        let Some(kind) = kind else {
            return Err(self
                .cur
                .unexpected("database kind (relational, document, column or graph)"));
        };
        self.cur.ident();
        self.cur.expect_char('{')?;
        let mut contains = Vec::new();
        loop {
            self.cur.skip_trivia();
            if self.cur.eat('}') {
                break;
            }
            match self.cur.peek_ident() {
                Some(("contains", _)) => {
                    self.cur.ident();
                }
                _ => return Err(self.cur.unexpected("`contains` or `}`")),
            }
            loop {
                let (entity, span) = self.name("entity name")?;
                contains.push(EntityRef { name: entity, span });
                self.cur.skip_trivia();
                if !self.cur.eat(',') {
                    break;
                }
            }
        }
        Ok(MlDatabase {
            name,
            kind,
            contains,
            span: self.cur.span_from(start),
        })
    }
}
