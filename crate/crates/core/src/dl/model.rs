use std::fmt;

use crate::span::Span;

/// The three kinds of type declarations a deployment model can make.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeCategory {
    PlatformType,
    ContainerType,
    DbType,
}

impl TypeCategory {
    pub const ALL: [TypeCategory; 3] = [
        TypeCategory::PlatformType,
        TypeCategory::ContainerType,
        TypeCategory::DbType,
    ];

    /// Keyword introducing a declaration of this category.
    pub fn keyword(self) -> &'static str {
        match self {
            TypeCategory::PlatformType => "platformtype",
            TypeCategory::ContainerType => "containertype",
            TypeCategory::DbType => "dbtype",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        TypeCategory::ALL.into_iter().find(|c| c.keyword() == word)
    }

    pub fn describe(self) -> &'static str {
        match self {
            TypeCategory::PlatformType => "platform type",
            TypeCategory::ContainerType => "container type",
            TypeCategory::DbType => "database type",
        }
    }
}

impl fmt::Display for TypeCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDecl {
    pub category: TypeCategory,
    pub name: String,
    pub span: Span,
}

impl TypeDecl {
    pub fn new(category: TypeCategory, name: impl Into<String>) -> Self {
        TypeDecl {
            category,
            name: name.into(),
            span: Span::default(),
        }
    }
}

/// Value side of a configuration property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyValue {
    /// Free text running to the end of the line.
    Scalar(String),
    /// Two or more comma separated items on one line.
    List(Vec<String>),
    /// Bracketed, comma separated items; may be empty.
    Array(Vec<String>),
}

impl PropertyValue {
    /// The value as a sequence of items. A scalar is a one-item sequence.
    pub fn items(&self) -> Vec<&str> {
        match self {
            PropertyValue::Scalar(s) => vec![s.as_str()],
            PropertyValue::List(items) | PropertyValue::Array(items) => {
                items.iter().map(String::as_str).collect()
            }
        }
    }

    /// The value as a single line of text, items joined with `", "`.
    pub fn text(&self) -> String {
        match self {
            PropertyValue::Scalar(s) => s.clone(),
            PropertyValue::List(items) | PropertyValue::Array(items) => items.join(", "),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Property {
    pub key: String,
    pub value: PropertyValue,
    pub span: Span,
}

impl Property {
    pub fn new(key: impl Into<String>, value: PropertyValue) -> Self {
        Property {
            key: key.into(),
            value,
            span: Span::default(),
        }
    }

    /// Scalar property; surrounding whitespace of `text` is dropped.
    pub fn scalar(key: impl Into<String>, text: impl AsRef<str>) -> Self {
        Property::new(key, PropertyValue::Scalar(text.as_ref().trim().to_string()))
    }

    /// Keys spelled like `MYSQL_ROOT_PASSWORD` denote environment variables.
    pub fn is_environment(&self) -> bool {
        is_environment_key(&self.key)
    }
}

/// `[A-Z][A-Z0-9_]*`
pub fn is_environment_key(key: &str) -> bool {
    let mut chars = key.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
}

/// `[A-Za-z_][A-Za-z0-9_.-]*`
pub fn is_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    matches!(chars.next(), Some(c) if is_ident_start(c)) && chars.all(is_ident_continue)
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-')
}

/// Looks up the first property with `key`.
pub fn find_property<'a>(properties: &'a [Property], key: &str) -> Option<&'a Property> {
    properties.iter().find(|p| p.key == key)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatabaseDecl {
    pub name: String,
    pub db_type: String,
    pub properties: Vec<Property>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Container {
    pub name: String,
    pub container_type: String,
    pub deploys: Option<String>,
    pub properties: Vec<Property>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Application {
    pub name: String,
    pub containers: Vec<Container>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub name: String,
    pub applications: Vec<Application>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatformDecl {
    pub name: String,
    pub platform_type: String,
    pub clusters: Vec<Cluster>,
    pub span: Span,
}

/// Root of a deployment model.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DlModel {
    pub types: Vec<TypeDecl>,
    pub databases: Vec<DatabaseDecl>,
    pub platforms: Vec<PlatformDecl>,
}

impl DlModel {
    pub fn is_empty(&self) -> bool {
        self.types.is_empty() && self.databases.is_empty() && self.platforms.is_empty()
    }

    pub fn type_decl(&self, name: &str) -> Option<&TypeDecl> {
        self.types.iter().find(|t| t.name == name)
    }

    pub fn database(&self, name: &str) -> Option<&DatabaseDecl> {
        self.databases.iter().find(|d| d.name == name)
    }

    /// Every container in the model with its enclosing platform, cluster and
    /// application, in declaration order.
    pub fn containers(
        &self,
    ) -> impl Iterator<Item = (&PlatformDecl, &Cluster, &Application, &Container)> {
        self.applications().flat_map(|(p, c, a)| {
            a.containers
                .iter()
                .map(move |container| (p, c, a, container))
        })
    }

    pub fn applications(&self) -> impl Iterator<Item = (&PlatformDecl, &Cluster, &Application)> {
        self.platforms.iter().flat_map(|p| {
            p.clusters
                .iter()
                .flat_map(move |c| c.applications.iter().map(move |a| (p, c, a)))
        })
    }
}
