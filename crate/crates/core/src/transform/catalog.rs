//! DBMS catalog: which concrete systems implement each abstract database
//! kind, with their default image, port and credential keys.

use std::collections::HashMap;

use thiserror::Error;

use crate::dl::{is_identifier, Property, PropertyValue};
use crate::ml::DbKind;
use crate::span::Span;
use crate::syntax::{parse_key_values, ParseError};

/// Catalog shipped with the tool.
pub const DEFAULT_CATALOG: &str = include_str!("../../catalog/default.catalog");

const SUPPORTED_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbmsInfo {
    pub name: String,
    pub kind: DbKind,
    pub image: String,
    pub port: u16,
    pub credential_keys: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbmsCatalog {
    /// Grouped by kind in [`DbKind::ALL`] order, catalog order within a kind.
    entries: Vec<DbmsInfo>,
}

#[derive(Debug, Clone, Error)]
pub enum CatalogError {
    #[error("{0}")]
    Syntax(#[from] ParseError),
    #[error("{span}: {message}")]
    Invalid { span: Span, message: String },
}

impl Default for DbmsCatalog {
    fn default() -> Self {
        DbmsCatalog::embedded()
    }
}

impl DbmsCatalog {
    pub fn embedded() -> Self {
        DbmsCatalog::parse(DEFAULT_CATALOG).expect("embedded catalog is well-formed")
    }

    pub fn entries(&self) -> &[DbmsInfo] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&DbmsInfo> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// DBMS offered for `kind`; the first one is the default choice.
    pub fn for_kind(&self, kind: DbKind) -> impl Iterator<Item = &DbmsInfo> {
        self.entries.iter().filter(move |e| e.kind == kind)
    }

    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let entries = parse_key_values(text)?;
        let invalid = |p: &Property, message: String| CatalogError::Invalid {
            span: p.span,
            message,
        };

        let mut version = None;
        let mut kinds: HashMap<DbKind, (&Property, Vec<String>)> = HashMap::new();
        let mut fields: HashMap<&str, HashMap<&str, &Property>> = HashMap::new();
        let mut seen = std::collections::HashSet::new();
        for p in &entries {
            if !seen.insert(p.key.as_str()) {
                return Err(invalid(p, format!("`{}` is set more than once", p.key)));
            }
            if p.key == "catalog.version" {
                version = Some(p);
            } else if let Some(kind) = p.key.strip_prefix("kind.") {
                let kind: DbKind = kind
                    .parse()
                    .map_err(|_| invalid(p, format!("unknown database kind `{kind}`")))?;
                let names: Vec<String> = p.value.items().into_iter().map(String::from).collect();
                kinds.insert(kind, (p, names));
            } else if let Some(rest) = p.key.strip_prefix("dbms.") {
                let (name, field) = rest
                    .rsplit_once('.')
                    .ok_or_else(|| invalid(p, format!("malformed key `{}`", p.key)))?;
                fields.entry(name).or_default().insert(field, p);
            } else {
                return Err(invalid(p, format!("unknown catalog key `{}`", p.key)));
            }
        }

        match version {
            Some(p) if p.value == PropertyValue::Scalar(SUPPORTED_VERSION.into()) => {}
            Some(p) => {
                return Err(invalid(
                    p,
                    format!("unsupported catalog version `{}`", p.value.text()),
                ))
            }
            None => {
                return Err(CatalogError::Invalid {
                    span: Span::default(),
                    message: "missing `catalog.version`".into(),
                })
            }
        }

        let mut catalog = DbmsCatalog {
            entries: Vec::new(),
        };
        for kind in DbKind::ALL {
            let Some((decl, names)) = kinds.get(&kind) else {
                return Err(CatalogError::Invalid {
                    span: Span::default(),
                    message: format!("no DBMS listed for kind `{kind}`"),
                });
            };
            if names.is_empty() {
                return Err(invalid(decl, format!("no DBMS listed for kind `{kind}`")));
            }
            for name in names {
                if !is_identifier(name) {
                    return Err(invalid(decl, format!("`{name}` is not a valid DBMS name")));
                }
                if catalog.get(name).is_some() {
                    return Err(invalid(
                        decl,
                        format!("DBMS `{name}` is listed more than once"),
                    ));
                }
                let Some(f) = fields.remove(name.as_str()) else {
                    return Err(invalid(
                        decl,
                        format!("DBMS `{name}` has no `dbms.{name}.*` entries"),
                    ));
                };
                catalog.entries.push(dbms_info(name, kind, decl, f)?);
            }
        }
        if let Some((name, f)) = fields.into_iter().min_by_key(|(n, _)| *n) {
            let p = f.values().next().expect("non-empty field map");
            return Err(invalid(
                p,
                format!("DBMS `{name}` is not listed under any kind"),
            ));
        }
        Ok(catalog)
    }
}

fn dbms_info(
    name: &str,
    kind: DbKind,
    decl: &Property,
    mut fields: HashMap<&str, &Property>,
) -> Result<DbmsInfo, CatalogError> {
    let missing = |field: &str| CatalogError::Invalid {
        span: decl.span,
        message: format!("missing `dbms.{name}.{field}`"),
    };
    let image = fields.remove("image").ok_or_else(|| missing("image"))?;
    let port = fields.remove("port").ok_or_else(|| missing("port"))?;
    let credentials = fields.remove("credentials");
    if let Some((field, p)) = fields.into_iter().next() {
        return Err(CatalogError::Invalid {
            span: p.span,
            message: format!("unknown DBMS field `{field}`"),
        });
    }
    let PropertyValue::Scalar(image_text) = &image.value else {
        return Err(CatalogError::Invalid {
            span: image.span,
            message: "image must be a single value".into(),
        });
    };
    let port_value = port
        .value
        .text()
        .parse::<u16>()
        .map_err(|_| CatalogError::Invalid {
            span: port.span,
            message: format!("`{}` is not a port number", port.value.text()),
        })?;
    Ok(DbmsInfo {
        name: name.to_string(),
        kind,
        image: image_text.clone(),
        port: port_value,
        credential_keys: credentials
            .map(|p| p.value.items().into_iter().map(String::from).collect())
            .unwrap_or_default(),
    })
}
