//! Model-to-model transformation from a polystore model to a deployment
//! model. Each abstract database becomes a concrete DBMS installation that
//! runs in its own container.

pub mod answers;
pub mod catalog;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::dl::*;
use crate::ml::{DbKind, MlModel};

pub use answers::{AnswersError, DatabaseAnswers, DeploymentAnswers};
pub use catalog::{CatalogError, DbmsCatalog, DbmsInfo};

/// Value given to credential properties the answers leave open.
pub const PLACEHOLDER: &str = "CHANGEME";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("MISSING_ANSWER: no answer for `{key}`")]
    MissingAnswer { key: String },
    #[error("UNKNOWN_DBMS: {}", describe_unknown(.dbms, .kind))]
    UnknownDbms { dbms: String, kind: Option<DbKind> },
    #[error(
        "UNKNOWN_DATABASE: answers mention database `{name}`, which the model does not declare"
    )]
    UnknownDatabase { name: String },
    #[error("INVALID_ANSWER: `{key}`: {message}")]
    InvalidAnswer { key: String, message: String },
}

fn describe_unknown(dbms: &str, kind: &Option<DbKind>) -> String {
    match kind {
        Some(kind) => format!("`{dbms}` is not a catalog DBMS for {kind} databases"),
        None => format!("`{dbms}` is not in the catalog"),
    }
}

impl TransformError {
    pub fn code(&self) -> &'static str {
        match self {
            TransformError::MissingAnswer { .. } => "MISSING_ANSWER",
            TransformError::UnknownDbms { .. } => "UNKNOWN_DBMS",
            TransformError::UnknownDatabase { .. } => "UNKNOWN_DATABASE",
            TransformError::InvalidAnswer { .. } => "INVALID_ANSWER",
        }
    }
}

/// Every problem found while transforming, in discovery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformErrors(pub Vec<TransformError>);

impl fmt::Display for TransformErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for TransformErrors {}

/// The catalog image as `image`, followed by one `CHANGEME` property per
/// credential key of `dbms`.
pub fn default_properties(
    dbms: &str,
    catalog: &DbmsCatalog,
) -> Result<Vec<Property>, TransformError> {
    let info = catalog
        .get(dbms)
        .ok_or_else(|| TransformError::UnknownDbms {
            dbms: dbms.to_string(),
            kind: None,
        })?;
    let mut props = vec![Property::scalar("image", &info.image)];
    props.extend(
        info.credential_keys
            .iter()
            .map(|k| Property::scalar(k.as_str(), PLACEHOLDER)),
    );
    Ok(props)
}

/// Default container name for a database.
pub fn container_name_for(database: &str) -> String {
    format!("{database}-c")
}

/// `image` and environment keys describe the database installation; every
/// other key (volumes, networks, ports, limits, ...) describes its container.
fn belongs_to_database(p: &Property) -> bool {
    p.key == "image" || p.is_environment()
}

/// Later properties replace earlier ones with the same key, in place.
fn merge_into(target: &mut Vec<Property>, p: Property) {
    match target.iter_mut().find(|q| q.key == p.key) {
        Some(slot) => *slot = p,
        None => target.push(p),
    }
}

/// Builds the deployment model for `ml` from the user's answers.
pub fn ml_to_dl(
    ml: &MlModel,
    answers: &DeploymentAnswers,
    catalog: &DbmsCatalog,
) -> Result<DlModel, TransformErrors> {
    let mut errors = Vec::new();
    let mut required = |key: &str, value: &Option<String>| -> String {
        match value {
            None => {
                errors.push(TransformError::MissingAnswer { key: key.into() });
                String::new()
            }
            Some(v) if !is_identifier(v) => {
                errors.push(TransformError::InvalidAnswer {
                    key: key.into(),
                    message: format!("`{v}` is not a valid identifier"),
                });
                String::new()
            }
            Some(v) => v.clone(),
        }
    };
    let platform_type = required(answers::PLATFORM_TYPE, &answers.platform_type);
    let platform_name = required(answers::PLATFORM_NAME, &answers.platform_name);
    let cluster_name = required(answers::CLUSTER_NAME, &answers.cluster_name);
    let application_name = required(answers::APPLICATION_NAME, &answers.application_name);
    let container_type = required(answers::CONTAINER_TYPE, &answers.container_type);

    for a in &answers.databases {
        if ml.database(&a.name).is_none() {
            errors.push(TransformError::UnknownDatabase {
                name: a.name.clone(),
            });
        }
    }

    let mut databases = Vec::new();
    let mut containers = Vec::new();
    let mut db_types: Vec<String> = Vec::new();
    let mut container_names = HashSet::new();
    for db in &ml.databases {
        let answer = answers.database(&db.name);
        let Some(dbms) = answer.and_then(|a| a.dbms.as_deref()) else {
            errors.push(TransformError::MissingAnswer {
                key: format!("db.{}.dbms", db.name),
            });
            continue;
        };
        if !catalog.for_kind(db.kind).any(|e| e.name == dbms) {
            errors.push(TransformError::UnknownDbms {
                dbms: dbms.to_string(),
                kind: Some(db.kind),
            });
            continue;
        }
        let mut db_props =
            default_properties(dbms, catalog).map_err(|e| TransformErrors(vec![e]))?;
        let mut container_props = Vec::new();
        for p in answer.map(|a| a.properties.as_slice()).unwrap_or_default() {
            if belongs_to_database(p) {
                merge_into(&mut db_props, p.clone());
            } else {
                merge_into(&mut container_props, p.clone());
            }
        }

        let container_name = answer
            .and_then(|a| a.container.clone())
            .unwrap_or_else(|| container_name_for(&db.name));
        let container_key = format!("db.{}.container", db.name);
        if !is_identifier(&container_name) {
            errors.push(TransformError::InvalidAnswer {
                key: container_key,
                message: format!("`{container_name}` is not a valid identifier"),
            });
        } else if !container_names.insert(container_name.clone()) {
            errors.push(TransformError::InvalidAnswer {
                key: container_key,
                message: format!("container name `{container_name}` is already taken"),
            });
        }

        if !db_types.iter().any(|t| t == dbms) {
            db_types.push(dbms.to_string());
        }
        databases.push(DatabaseDecl {
            name: db.name.clone(),
            db_type: dbms.to_string(),
            properties: strip_spans(db_props),
            span: Default::default(),
        });
        containers.push(Container {
            name: container_name,
            container_type: container_type.clone(),
            deploys: Some(db.name.clone()),
            properties: strip_spans(container_props),
            span: Default::default(),
        });
    }

    let mut types = vec![TypeDecl::new(TypeCategory::PlatformType, &platform_type)];
    if !containers.is_empty() {
        types.push(TypeDecl::new(TypeCategory::ContainerType, &container_type));
    }
    types.extend(
        db_types
            .into_iter()
            .map(|t| TypeDecl::new(TypeCategory::DbType, t)),
    );
    let mut type_names = HashSet::new();
    for t in &types {
        if !t.name.is_empty() && !type_names.insert(t.name.as_str()) {
            let key = match t.category {
                TypeCategory::ContainerType => answers::CONTAINER_TYPE.to_string(),
                _ => answers::PLATFORM_TYPE.to_string(),
            };
            errors.push(TransformError::InvalidAnswer {
                key,
                message: format!(
                    "type name `{}` is used for two different kinds of type",
                    t.name
                ),
            });
        }
    }

    if !errors.is_empty() {
        return Err(TransformErrors(errors));
    }

    let model = DlModel {
        types,
        databases,
        platforms: vec![PlatformDecl {
            name: platform_name,
            platform_type,
            clusters: vec![Cluster {
                name: cluster_name,
                applications: vec![Application {
                    name: application_name,
                    containers,
                    span: Default::default(),
                }],
                span: Default::default(),
            }],
            span: Default::default(),
        }],
    };
    let report = validate(&model);
    if !report.is_valid() {
        return Err(TransformErrors(
            report
                .errors
                .into_iter()
                .map(|d| TransformError::InvalidAnswer {
                    key: d.location,
                    message: format!("{}: {}", d.code, d.message),
                })
                .collect(),
        ));
    }
    Ok(model)
}

fn strip_spans(props: Vec<Property>) -> Vec<Property> {
    props
        .into_iter()
        .map(|p| Property {
            span: Default::default(),
            ..p
        })
        .collect()
}
