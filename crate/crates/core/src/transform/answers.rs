//! Deployment answers: the user choices that complete a polystore model
//! into a deployment model.
//!
//! ```text
//! platform.type = AWS
//! platform.name = myAWSPlatform
//! cluster.name = myAWSCluster
//! application.name = myApplication
//! container.type = Docker
//! deployment.technology = compose
//! db.locmandb.dbms = MariaDB
//! db.locmandb.MYSQL_ROOT_PASSWORD = geheim
//! db.locmandb.volumes = /opt/locman-staging/db:/var/lib
//! ```
//!
//! `db.<name>.dbms` picks the DBMS, `db.<name>.container` names the
//! container (default `<name>-c`), every other `db.<name>.<key>` is a
//! property.

use std::collections::HashSet;
use std::fmt::Write;

use thiserror::Error;

use crate::dl::{is_identifier, Property, PropertyValue};
use crate::span::Span;
use crate::syntax::{parse_key_values, print_property, ParseError};

pub const PLATFORM_TYPE: &str = "platform.type";
pub const PLATFORM_NAME: &str = "platform.name";
pub const CLUSTER_NAME: &str = "cluster.name";
pub const APPLICATION_NAME: &str = "application.name";
pub const CONTAINER_TYPE: &str = "container.type";
pub const TECHNOLOGY: &str = "deployment.technology";

/// Suggested platform types. Any other identifier is accepted as well.
pub const PLATFORM_TYPES: [&str; 3] = ["AWS", "GoogleCloud", "Azure"];
/// Container formats that can be declared. Only Docker has a generator.
pub const CONTAINER_TYPES: [&str; 4] = ["Docker", "rkt", "VirtualBox", "VMWare"];
pub const TECHNOLOGIES: [&str; 2] = ["compose", "kubernetes"];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DatabaseAnswers {
    pub name: String,
    pub dbms: Option<String>,
    pub container: Option<String>,
    pub properties: Vec<Property>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DeploymentAnswers {
    pub platform_type: Option<String>,
    pub platform_name: Option<String>,
    pub cluster_name: Option<String>,
    pub application_name: Option<String>,
    pub container_type: Option<String>,
    pub technology: Option<String>,
    /// In order of first mention.
    pub databases: Vec<DatabaseAnswers>,
}

#[derive(Debug, Clone, Error)]
pub enum AnswersError {
    #[error("{0}")]
    Syntax(#[from] ParseError),
    #[error("{span}: {message}")]
    Invalid { span: Span, message: String },
}

impl DeploymentAnswers {
    pub fn database(&self, name: &str) -> Option<&DatabaseAnswers> {
        self.databases.iter().find(|d| d.name == name)
    }

    pub fn database_mut(&mut self, name: &str) -> &mut DatabaseAnswers {
        let idx = match self.databases.iter().position(|d| d.name == name) {
            Some(i) => i,
            None => {
                self.databases.push(DatabaseAnswers {
                    name: name.to_string(),
                    ..Default::default()
                });
                self.databases.len() - 1
            }
        };
        &mut self.databases[idx]
    }

    pub fn parse(text: &str) -> Result<Self, AnswersError> {
        let mut answers = DeploymentAnswers::default();
        let mut seen = HashSet::new();
        for entry in parse_key_values(text)? {
            let invalid = |message: String| AnswersError::Invalid {
                span: entry.span,
                message,
            };
            if !seen.insert(entry.key.clone()) {
                return Err(invalid(format!(
                    "`{}` is answered more than once",
                    entry.key
                )));
            }
            let scalar = || match &entry.value {
                PropertyValue::Scalar(s) => Ok(s.clone()),
                _ => Err(invalid(format!("`{}` takes a single value", entry.key))),
            };
            match entry.key.as_str() {
                PLATFORM_TYPE => answers.platform_type = Some(scalar()?),
                PLATFORM_NAME => answers.platform_name = Some(scalar()?),
                CLUSTER_NAME => answers.cluster_name = Some(scalar()?),
                APPLICATION_NAME => answers.application_name = Some(scalar()?),
                CONTAINER_TYPE => answers.container_type = Some(scalar()?),
                TECHNOLOGY => {
                    let t = scalar()?;
                    if !TECHNOLOGIES.contains(&t.as_str()) {
                        return Err(invalid(format!(
                            "unknown deployment technology `{t}` (expected compose or kubernetes)"
                        )));
                    }
                    answers.technology = Some(t);
                }
                key => {
                    let Some((db, field)) = key.strip_prefix("db.").and_then(|r| r.split_once('.'))
                    else {
                        return Err(invalid(format!("unknown answer key `{key}`")));
                    };
                    if !is_identifier(field) {
                        return Err(invalid(format!("`{field}` is not a valid property key")));
                    }
                    let value = match field {
                        "dbms" | "container" => Some(scalar()?),
                        _ => None,
                    };
                    let slot = answers.database_mut(db);
                    match (field, value) {
                        ("dbms", v) => slot.dbms = v,
                        ("container", v) => slot.container = v,
                        _ => slot.properties.push(Property {
                            key: field.to_string(),
                            value: entry.value.clone(),
                            span: entry.span,
                        }),
                    }
                }
            }
        }
        Ok(answers)
    }

    /// Renders the answers in the file format read by [`DeploymentAnswers::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in [
            (PLATFORM_TYPE, &self.platform_type),
            (PLATFORM_NAME, &self.platform_name),
            (CLUSTER_NAME, &self.cluster_name),
            (APPLICATION_NAME, &self.application_name),
            (CONTAINER_TYPE, &self.container_type),
            (TECHNOLOGY, &self.technology),
        ] {
            if let Some(v) = value {
                let _ = writeln!(out, "{key} = {v}");
            }
        }
        for db in &self.databases {
            out.push('\n');
            if let Some(dbms) = &db.dbms {
                let _ = writeln!(out, "db.{}.dbms = {dbms}", db.name);
            }
            if let Some(container) = &db.container {
                let _ = writeln!(out, "db.{}.container = {container}", db.name);
            }
            for p in &db.properties {
                let _ = writeln!(out, "db.{}.{}", db.name, print_property(p));
            }
        }
        out
    }
}
