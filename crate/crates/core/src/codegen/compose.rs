use indexmap::IndexMap;

use crate::dl::resolve::{ResolvedApplication, ResolvedContainer, ResolvedModel};
use crate::dl::PropertyValue;

use super::yaml::{render, Yaml};
use super::{find_application, CodegenError};

pub const COMPOSE_VERSION: &str = "3.7";

/// Property keys with a dedicated compose field.
pub const RESERVED_KEYS: [&str; 7] = [
    "image",
    "entrypoint",
    "ports",
    "volumes",
    "networks",
    "depends_on",
    "container_name",
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComposeService {
    pub image: String,
    pub container_name: String,
    /// `KEY=VALUE` entries.
    pub environment: Vec<String>,
    pub volumes: Vec<String>,
    pub networks: Vec<String>,
    pub ports: Vec<String>,
    pub depends_on: Vec<String>,
    pub entrypoint: Vec<String>,
    /// Properties without a compose field, copied as-is.
    pub passthrough: Vec<(String, PropertyValue)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeNetwork {
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposePlan {
    pub version: String,
    pub services: IndexMap<String, ComposeService>,
    pub networks: IndexMap<String, ComposeNetwork>,
}

impl Default for ComposePlan {
    fn default() -> Self {
        ComposePlan {
            version: COMPOSE_VERSION.to_string(),
            services: IndexMap::new(),
            networks: IndexMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeOutput {
    pub plan: ComposePlan,
    pub warnings: Vec<String>,
}

/// Maps one container onto a compose service. Database properties come
/// first, container properties override them key by key.
pub fn service_for(
    container: &ResolvedContainer<'_>,
    warnings: &mut Vec<String>,
) -> ComposeService {
    let name = container.name();
    let mut service = ComposeService {
        container_name: name.to_string(),
        ..Default::default()
    };
    for p in container.merged_properties() {
        let items = || {
            p.value
                .items()
                .into_iter()
                .map(String::from)
                .collect::<Vec<_>>()
        };
        match p.key.as_str() {
            "image" => service.image = p.value.text(),
            "entrypoint" => service.entrypoint = items(),
            "ports" => service.ports = items(),
            "volumes" => service.volumes = items(),
            "networks" => service.networks = items(),
            "depends_on" => service.depends_on = items(),
            "container_name" => {
                if p.value.text() != name {
                    warnings.push(format!(
                        "container `{name}`: `container_name = {}` ignored, services are named after their container",
                        p.value.text()
                    ));
                }
            }
            _ if p.is_environment() => {
                service
                    .environment
                    .push(format!("{}={}", p.key, p.value.text()));
            }
            key => {
                warnings.push(format!(
                    "container `{name}`: property `{key}` has no compose field, copied verbatim"
                ));
                service.passthrough.push((key.to_string(), p.value.clone()));
            }
        }
    }
    service
}

pub(super) fn plan_for(app: &ResolvedApplication<'_>) -> ComposeOutput {
    let mut plan = ComposePlan::default();
    let mut warnings = Vec::new();
    for container in &app.containers {
        let service = service_for(container, &mut warnings);
        for network in &service.networks {
            plan.networks
                .entry(network.clone())
                .or_insert_with(|| ComposeNetwork {
                    name: network.clone(),
                });
        }
        plan.services.insert(container.name().to_string(), service);
    }
    ComposeOutput { plan, warnings }
}

/// Builds the compose plan for the Docker containers of `application`.
pub fn generate_compose(
    model: &ResolvedModel<'_>,
    application: &str,
) -> Result<ComposeOutput, CodegenError> {
    let app = find_application(model, application)?;
    Ok(plan_for(app))
}

/// Renders a plan as `docker-compose.yml` text.
pub fn emit_compose(plan: &ComposePlan) -> String {
    let mut root = vec![("version".to_string(), Yaml::Quoted(plan.version.clone()))];
    if plan.services.is_empty() {
        root.push(("services".into(), Yaml::Map(Vec::new())));
        return render(&Yaml::Map(root));
    }
    let services = plan
        .services
        .iter()
        .map(|(key, s)| (key.clone(), service_yaml(s)))
        .collect();
    root.push(("services".into(), Yaml::Map(services)));
    if !plan.networks.is_empty() {
        let networks = plan
            .networks
            .iter()
            .map(|(key, n)| (key.clone(), Yaml::map([("name", Yaml::str(&n.name))])))
            .collect();
        root.push(("networks".into(), Yaml::Map(networks)));
    }
    render(&Yaml::Map(root))
}

fn service_yaml(s: &ComposeService) -> Yaml {
    let mut fields = vec![
        ("image".to_string(), Yaml::str(&s.image)),
        ("container_name".to_string(), Yaml::str(&s.container_name)),
    ];
    for (key, list) in [
        ("entrypoint", &s.entrypoint),
        ("depends_on", &s.depends_on),
        ("environment", &s.environment),
        ("volumes", &s.volumes),
        ("ports", &s.ports),
        ("networks", &s.networks),
    ] {
        if !list.is_empty() {
            fields.push((key.to_string(), Yaml::seq(list.iter().cloned())));
        }
    }
    for (key, value) in &s.passthrough {
        let node = match value {
            PropertyValue::Scalar(text) => Yaml::str(text),
            PropertyValue::List(items) | PropertyValue::Array(items) => {
                Yaml::seq(items.iter().cloned())
            }
        };
        fields.push((key.clone(), node));
    }
    Yaml::Map(fields)
}
