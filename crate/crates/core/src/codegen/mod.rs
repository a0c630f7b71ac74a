//! Deployment file generation from a resolved model.
//!
//! Output tree, relative to an output directory:
//!
//! ```text
//! <application>/docker-compose.yml
//! <application>/k8s/<container>-deployment.yaml
//! <application>/k8s/<container>-service.yaml
//! <application>/k8s/<container>-pvc.yaml
//! ```

pub mod compose;
pub mod k8s;
pub mod yaml;

use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::dl::resolve::{ResolvedApplication, ResolvedModel};
use crate::transform::DbmsCatalog;

pub use compose::{emit_compose, generate_compose, ComposeOutput, ComposePlan, ComposeService};
pub use k8s::{generate_k8s, K8sManifestSet, Manifest, ManifestKind};

/// The only container type with a generator.
pub const DOCKER: &str = "Docker";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodegenError {
    #[error("UNKNOWN_APPLICATION: no application named `{0}`")]
    UnknownApplication(String),
    #[error("AMBIGUOUS_APPLICATION: {count} applications are named `{name}`")]
    AmbiguousApplication { name: String, count: usize },
    #[error("UNSUPPORTED_CONTAINER_TYPE: container `{container}` is typed `{container_type}`, only Docker can be generated")]
    UnsupportedContainerType {
        container: String,
        container_type: String,
    },
    #[error("INVALID_PORT: container `{container}` has unusable port mapping `{value}`")]
    InvalidPort { container: String, value: String },
    #[error("MISSING_PORT: container `{container}` has no `ports` property and `{dbms}` has no catalog port")]
    MissingPort { container: String, dbms: String },
    #[error(
        "NAME_COLLISION: containers `{first}` and `{second}` both map to manifest name `{label}`"
    )]
    NameCollision {
        first: String,
        second: String,
        label: String,
    },
}

impl CodegenError {
    pub fn code(&self) -> &'static str {
        match self {
            CodegenError::UnknownApplication(_) => "UNKNOWN_APPLICATION",
            CodegenError::AmbiguousApplication { .. } => "AMBIGUOUS_APPLICATION",
            CodegenError::UnsupportedContainerType { .. } => "UNSUPPORTED_CONTAINER_TYPE",
            CodegenError::InvalidPort { .. } => "INVALID_PORT",
            CodegenError::MissingPort { .. } => "MISSING_PORT",
            CodegenError::NameCollision { .. } => "NAME_COLLISION",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Compose,
    Kubernetes,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "compose" => Ok(Target::Compose),
            "kubernetes" | "k8s" => Ok(Target::Kubernetes),
            other => Err(format!("unknown target `{other}`")),
        }
    }
}

/// Looks up a uniquely named application whose containers are all Docker.
pub(crate) fn find_application<'r, 'm>(
    model: &'r ResolvedModel<'m>,
    name: &str,
) -> Result<&'r ResolvedApplication<'m>, CodegenError> {
    let matches: Vec<_> = model.applications_named(name).collect();
    let app = match matches.as_slice() {
        [] => return Err(CodegenError::UnknownApplication(name.to_string())),
        [app] => *app,
        _ => {
            return Err(CodegenError::AmbiguousApplication {
                name: name.to_string(),
                count: matches.len(),
            })
        }
    };
    if let Some(c) = app
        .containers
        .iter()
        .find(|c| c.container_type.name != DOCKER)
    {
        return Err(CodegenError::UnsupportedContainerType {
            container: c.name().to_string(),
            container_type: c.container_type.name.clone(),
        });
    }
    Ok(app)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    /// Relative to the output directory.
    pub path: PathBuf,
    pub contents: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Rendered {
    pub files: Vec<OutputFile>,
    pub warnings: Vec<String>,
}

/// Renders every output file of one application for `target`.
pub fn render_application(
    model: &ResolvedModel<'_>,
    application: &str,
    target: Target,
    catalog: &DbmsCatalog,
) -> Result<Rendered, CodegenError> {
    let dir = PathBuf::from(application);
    match target {
        Target::Compose => {
            let out = generate_compose(model, application)?;
            Ok(Rendered {
                files: vec![OutputFile {
                    path: dir.join("docker-compose.yml"),
                    contents: emit_compose(&out.plan),
                }],
                warnings: out.warnings,
            })
        }
        Target::Kubernetes => {
            let sets = generate_k8s(model, application, catalog)?;
            let files = sets
                .iter()
                .flat_map(K8sManifestSet::manifests)
                .map(|m| OutputFile {
                    path: dir.join("k8s").join(&m.file_name),
                    contents: m.yaml,
                })
                .collect();
            Ok(Rendered {
                files,
                warnings: Vec::new(),
            })
        }
    }
}
