//! Minimal Kubernetes manifests for database containers: a single-replica
//! Deployment, a Service, and a PersistentVolumeClaim when the container
//! declares volumes.

use std::collections::HashMap;

use crate::dl::resolve::{ResolvedContainer, ResolvedModel};
use crate::transform::DbmsCatalog;

use super::compose::service_for;
use super::yaml::{render, Yaml};
use super::{find_application, CodegenError};

pub const DEFAULT_STORAGE: &str = "1Gi";
const MAX_LABEL: usize = 63;
const LONGEST_SUFFIX: &str = "-deployment";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ManifestKind {
    Deployment,
    Service,
    PersistentVolumeClaim,
}

impl ManifestKind {
    fn suffix(self) -> &'static str {
        match self {
            ManifestKind::Deployment => "deployment",
            ManifestKind::Service => "service",
            ManifestKind::PersistentVolumeClaim => "pvc",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub kind: ManifestKind,
    /// `metadata.name`
    pub name: String,
    pub file_name: String,
    pub yaml: String,
}

/// Everything needed to render the manifests of one database container.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K8sManifestSet {
    pub container: String,
    /// DNS-label form of the container name.
    pub label: String,
    pub image: String,
    /// `KEY=VALUE` entries, same as the compose environment.
    pub environment: Vec<String>,
    pub port: u16,
    /// Container-side mount paths of the `volumes` property.
    pub mount_paths: Vec<String>,
    /// Requested size; present iff the container has volumes.
    pub storage: Option<String>,
}

/// Lowercases and replaces everything outside `[a-z0-9-]` so the result is
/// a valid DNS label once a manifest suffix is appended.
pub fn dns_label(name: &str) -> String {
    let mut label = String::with_capacity(name.len());
    for c in name.chars() {
        let c = c.to_ascii_lowercase();
        if c.is_ascii_lowercase() || c.is_ascii_digit() {
            label.push(c);
        } else if !label.ends_with('-') {
            label.push('-');
        }
    }
    let mut label = label.trim_matches('-').to_string();
    label.truncate(MAX_LABEL - LONGEST_SUFFIX.len());
    let label = label.trim_end_matches('-').to_string();
    if label.is_empty() {
        "container".to_string()
    } else {
        label
    }
}

pub fn is_dns_label(s: &str) -> bool {
    !s.is_empty()
        && s.len() <= MAX_LABEL
        && s.chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
        && !s.starts_with('-')
        && !s.ends_with('-')
}

/// Container side of a compose-style mapping: `8086:8086` → `8086`,
/// `127.0.0.1:80:8080/tcp` → `8080`.
fn container_side(mapping: &str) -> &str {
    let last = mapping.rsplit(':').next().unwrap_or(mapping);
    last.split('/').next().unwrap_or(last)
}

/// Mount path of a volume mapping: `/host:/data:ro` → `/data`.
fn mount_path(volume: &str) -> &str {
    let mut parts = volume.split(':');
    let first = parts.next().unwrap_or(volume);
    parts.next().unwrap_or(first)
}

impl K8sManifestSet {
    fn build(
        container: &ResolvedContainer<'_>,
        catalog: &DbmsCatalog,
    ) -> Result<Self, CodegenError> {
        let name = container.name();
        // compose-specific warnings do not apply here
        let service = service_for(container, &mut Vec::new());
        let db = container
            .deploys
            .expect("only database containers get manifests");
        let port =
            match service.ports.first() {
                Some(mapping) => container_side(mapping).parse::<u16>().map_err(|_| {
                    CodegenError::InvalidPort {
                        container: name.to_string(),
                        value: mapping.clone(),
                    }
                })?,
                None => catalog
                    .get(&db.db_type.name)
                    .map(|info| info.port)
                    .ok_or_else(|| CodegenError::MissingPort {
                        container: name.to_string(),
                        dbms: db.db_type.name.clone(),
                    })?,
            };
        let storage = (!service.volumes.is_empty()).then(|| {
            container
                .merged_properties()
                .into_iter()
                .find(|p| p.key == "storage")
                .map(|p| p.value.text())
                .unwrap_or_else(|| DEFAULT_STORAGE.to_string())
        });
        Ok(K8sManifestSet {
            container: name.to_string(),
            label: dns_label(name),
            image: service.image,
            environment: service.environment,
            port,
            mount_paths: service
                .volumes
                .iter()
                .map(|v| mount_path(v).to_string())
                .collect(),
            storage,
        })
    }

    fn name(&self, kind: ManifestKind) -> String {
        format!("{}-{}", self.label, kind.suffix())
    }

    /// Deployment, Service and (with volumes) PersistentVolumeClaim.
    pub fn manifests(&self) -> Vec<Manifest> {
        let mut out = vec![
            self.manifest(ManifestKind::Deployment, self.deployment_yaml()),
            self.manifest(ManifestKind::Service, self.service_yaml()),
        ];
        if let Some(storage) = &self.storage {
            out.push(self.manifest(ManifestKind::PersistentVolumeClaim, self.pvc_yaml(storage)));
        }
        out
    }

    fn manifest(&self, kind: ManifestKind, doc: Yaml) -> Manifest {
        let name = self.name(kind);
        Manifest {
            kind,
            file_name: format!("{name}.yaml"),
            name,
            yaml: render(&doc),
        }
    }

    fn app_labels(&self) -> Yaml {
        Yaml::map([("app", Yaml::str(&self.label))])
    }

    fn deployment_yaml(&self) -> Yaml {
        let mut container = vec![
            ("name".to_string(), Yaml::str(&self.label)),
            ("image".to_string(), Yaml::str(&self.image)),
        ];
        if !self.environment.is_empty() {
            let env = self
                .environment
                .iter()
                .map(|entry| {
                    let (key, value) = entry.split_once('=').unwrap_or((entry, ""));
                    Yaml::map([("name", Yaml::str(key)), ("value", Yaml::str(value))])
                })
                .collect();
            container.push(("env".into(), Yaml::Seq(env)));
        }
        container.push((
            "ports".into(),
            Yaml::Seq(vec![Yaml::map([(
                "containerPort",
                Yaml::Int(self.port.into()),
            )])]),
        ));
        let mut pod_spec = Vec::new();
        if self.storage.is_some() {
            let single = self.mount_paths.len() == 1;
            let mounts = self
                .mount_paths
                .iter()
                .enumerate()
                .map(|(i, path)| {
                    let mut m = vec![
                        ("name".to_string(), Yaml::str("data")),
                        ("mountPath".to_string(), Yaml::str(path)),
                    ];
                    if !single {
                        m.push(("subPath".into(), Yaml::str(format!("volume-{i}"))));
                    }
                    Yaml::Map(m)
                })
                .collect();
            container.push(("volumeMounts".into(), Yaml::Seq(mounts)));
        }
        pod_spec.push((
            "containers".to_string(),
            Yaml::Seq(vec![Yaml::Map(container)]),
        ));
        if self.storage.is_some() {
            pod_spec.push((
                "volumes".into(),
                Yaml::Seq(vec![Yaml::map([
                    ("name", Yaml::str("data")),
                    (
                        "persistentVolumeClaim",
                        Yaml::map([(
                            "claimName",
                            Yaml::str(self.name(ManifestKind::PersistentVolumeClaim)),
                        )]),
                    ),
                ])]),
            ));
        }
        Yaml::map([
            ("apiVersion", Yaml::str("apps/v1")),
            ("kind", Yaml::str("Deployment")),
            (
                "metadata",
                Yaml::map([
                    ("name", Yaml::str(self.name(ManifestKind::Deployment))),
                    ("labels", self.app_labels()),
                ]),
            ),
            (
                "spec",
                Yaml::map([
                    ("replicas", Yaml::Int(1)),
                    ("selector", Yaml::map([("matchLabels", self.app_labels())])),
                    (
                        "template",
                        Yaml::map([
                            ("metadata", Yaml::map([("labels", self.app_labels())])),
                            ("spec", Yaml::Map(pod_spec)),
                        ]),
                    ),
                ]),
            ),
        ])
    }

    fn service_yaml(&self) -> Yaml {
        Yaml::map([
            ("apiVersion", Yaml::str("v1")),
            ("kind", Yaml::str("Service")),
            (
                "metadata",
                Yaml::map([
                    ("name", Yaml::str(self.name(ManifestKind::Service))),
                    ("labels", self.app_labels()),
                ]),
            ),
            (
                "spec",
                Yaml::map([
                    ("selector", self.app_labels()),
                    (
                        "ports",
                        Yaml::Seq(vec![Yaml::map([
                            ("port", Yaml::Int(self.port.into())),
                            ("targetPort", Yaml::Int(self.port.into())),
                        ])]),
                    ),
                ]),
            ),
        ])
    }

    fn pvc_yaml(&self, storage: &str) -> Yaml {
        Yaml::map([
            ("apiVersion", Yaml::str("v1")),
            ("kind", Yaml::str("PersistentVolumeClaim")),
            (
                "metadata",
                Yaml::map([
                    (
                        "name",
                        Yaml::str(self.name(ManifestKind::PersistentVolumeClaim)),
                    ),
                    ("labels", self.app_labels()),
                ]),
            ),
            (
                "spec",
                Yaml::map([
                    ("accessModes", Yaml::seq(["ReadWriteOnce"])),
                    (
                        "resources",
                        Yaml::map([("requests", Yaml::map([("storage", Yaml::str(storage))]))]),
                    ),
                ]),
            ),
        ])
    }
}

/// Manifest sets for every database container of `application`.
pub fn generate_k8s(
    model: &ResolvedModel<'_>,
    application: &str,
    catalog: &DbmsCatalog,
) -> Result<Vec<K8sManifestSet>, CodegenError> {
    let app = find_application(model, application)?;
    let mut sets = Vec::new();
    let mut labels: HashMap<String, &str> = HashMap::new();
    for container in app.containers.iter().filter(|c| c.deploys.is_some()) {
        let set = K8sManifestSet::build(container, catalog)?;
        if let Some(other) = labels.insert(set.label.clone(), container.name()) {
            return Err(CodegenError::NameCollision {
                first: other.to_string(),
                second: container.name().to_string(),
                label: set.label,
            });
        }
        sets.push(set);
    }
    Ok(sets)
}
