//! Proptest strategies for models, answers and source text.

use std::collections::HashSet;
use std::fmt::Write;

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::select;

use crate::dl::{
    Application, Cluster, Container, DatabaseDecl, DlModel, PlatformDecl, Property, PropertyValue,
    TypeCategory, TypeDecl,
};
use crate::ml::{DbKind, EntityRef, MlAttribute, MlDatabase, MlEntity, MlModel, PrimitiveType};
use crate::span::Span;
use crate::transform::{DatabaseAnswers, DbmsCatalog, DeploymentAnswers};

/// Words the parsers treat specially somewhere; they are still legal names.
const KEYWORDS: &[&str] = &[
    "platformtype",
    "containertype",
    "dbtype",
    "database",
    "platform",
    "cluster",
    "application",
    "container",
    "deploys",
    "entity",
    "contains",
];

pub fn identifier() -> impl Strategy<Value = String> {
    prop_oneof![
        8 => "[A-Za-z_][A-Za-z0-9_.-]{0,10}",
        1 => select(KEYWORDS).prop_map(String::from),
    ]
}

/// Identifier without `.`, as used by the polystore language.
pub fn ml_identifier() -> impl Strategy<Value = String> {
    prop_oneof![
        8 => "[A-Za-z_][A-Za-z0-9_-]{0,10}",
        1 => select(KEYWORDS).prop_map(String::from),
    ]
}

fn property_key() -> impl Strategy<Value = String> {
    prop_oneof![
        select(
            &[
                "image",
                "volumes",
                "networks",
                "ports",
                "depends_on",
                "entrypoint",
                "deploys"
            ][..]
        )
        .prop_map(String::from),
        "[A-Z][A-Z0-9_]{0,12}",
        "[a-z_][a-z0-9_.-]{0,8}",
    ]
}

/// A trimmed, non-empty scalar; it never contains `,` or starts with `[`.
pub fn scalar_text() -> impl Strategy<Value = String> {
    "[A-Za-z0-9:/._=@+#{}()~*!-]([A-Za-z0-9:/._=@+#{}()~*! ]{0,16}[A-Za-z0-9:/._=@+#{}()\\]-])?"
}

fn item_text() -> impl Strategy<Value = String> {
    "[A-Za-z0-9:/._=@+-]([A-Za-z0-9:/._=@+ -]{0,10}[A-Za-z0-9:/._=@+-])?"
}

pub fn property_value() -> impl Strategy<Value = PropertyValue> {
    prop_oneof![
        4 => scalar_text().prop_map(PropertyValue::Scalar),
        2 => vec(item_text(), 2..5).prop_map(PropertyValue::List),
        2 => vec(item_text(), 0..4).prop_map(PropertyValue::Array),
    ]
}

fn properties() -> impl Strategy<Value = Vec<Property>> {
    vec((property_key(), property_value()), 0..4)
        .prop_map(|ps| ps.into_iter().map(|(k, v)| Property::new(k, v)).collect())
}

fn container() -> impl Strategy<Value = Container> {
    (
        identifier(),
        identifier(),
        proptest::option::of(identifier()),
        properties(),
    )
        .prop_map(|(name, container_type, deploys, properties)| Container {
            name,
            container_type,
            deploys,
            properties,
            span: Span::default(),
        })
}

fn application() -> impl Strategy<Value = Application> {
    (identifier(), vec(container(), 0..3)).prop_map(|(name, containers)| Application {
        name,
        containers,
        span: Span::default(),
    })
}

fn cluster() -> impl Strategy<Value = Cluster> {
    (identifier(), vec(application(), 0..3)).prop_map(|(name, applications)| Cluster {
        name,
        applications,
        span: Span::default(),
    })
}

fn platform() -> impl Strategy<Value = PlatformDecl> {
    (identifier(), identifier(), vec(cluster(), 0..3)).prop_map(
        |(name, platform_type, clusters)| PlatformDecl {
            name,
            platform_type,
            clusters,
            span: Span::default(),
        },
    )
}

fn database() -> impl Strategy<Value = DatabaseDecl> {
    (identifier(), identifier(), properties()).prop_map(|(name, db_type, properties)| {
        DatabaseDecl {
            name,
            db_type,
            properties,
            span: Span::default(),
        }
    })
}

fn type_decl() -> impl Strategy<Value = TypeDecl> {
    (select(&TypeCategory::ALL[..]), identifier()).prop_map(|(c, n)| TypeDecl::new(c, n))
}

/// Any syntactically valid deployment model. Names and references are
/// random, so most of these do not validate.
pub fn arb_dl_model() -> impl Strategy<Value = DlModel> {
    (
        vec(type_decl(), 0..5),
        vec(database(), 0..4),
        vec(platform(), 0..3),
    )
        .prop_map(|(types, databases, platforms)| DlModel {
            types,
            databases,
            platforms,
        })
}

fn env_properties() -> impl Strategy<Value = Vec<Property>> {
    vec(("[A-Z][A-Z0-9_]{0,10}", item_text()), 0..4).prop_map(|ps| {
        let mut seen = HashSet::new();
        ps.into_iter()
            .filter(|(k, _)| seen.insert(k.clone()))
            .map(|(k, v)| Property::scalar(k, v))
            .collect()
    })
}

/// A model that passes validation: one platform type, Docker containers,
/// every database deployed by exactly one container that carries an image.
pub fn valid_dl_model() -> impl Strategy<Value = DlModel> {
    (
        vec("[a-z][a-z0-9]{0,6}", 1..6),
        vec(
            select(&["MariaDB", "MongoDB", "Neo4j", "Cassandra", "CouchDB"][..]),
            6,
        ),
        vec(env_properties(), 6),
        vec(proptest::option::of(vec(item_text(), 1..3)), 6),
        vec(proptest::option::of("[a-z]{1,6}"), 6),
        0usize..3,
    )
        .prop_map(|(names, dbms, envs, volumes, networks, extra_images)| {
            let mut seen = HashSet::new();
            let names: Vec<String> = names
                .into_iter()
                .filter(|n| seen.insert(n.clone()))
                .collect();
            let mut model = DlModel::default();
            model
                .types
                .push(TypeDecl::new(TypeCategory::PlatformType, "AWS"));
            model
                .types
                .push(TypeDecl::new(TypeCategory::ContainerType, "Docker"));
            let mut containers = Vec::new();
            for (i, name) in names.iter().enumerate() {
                let db_type = dbms[i].to_string();
                if !model.types.iter().any(|t| t.name == db_type) {
                    model
                        .types
                        .push(TypeDecl::new(TypeCategory::DbType, &db_type));
                }
                let mut props = vec![Property::scalar(
                    "image",
                    format!("{}:latest", db_type.to_lowercase()),
                )];
                props.extend(envs[i].iter().cloned());
                model.databases.push(DatabaseDecl {
                    name: name.clone(),
                    db_type,
                    properties: props,
                    span: Span::default(),
                });
                let mut cprops = Vec::new();
                if let Some(v) = &volumes[i] {
                    let value = match v.as_slice() {
                        [one] => PropertyValue::Scalar(one.clone()),
                        _ => PropertyValue::List(v.clone()),
                    };
                    cprops.push(Property::new("volumes", value));
                }
                if let Some(n) = &networks[i] {
                    cprops.push(Property::scalar("networks", n));
                }
                containers.push(Container {
                    name: format!("{name}-c"),
                    container_type: "Docker".into(),
                    deploys: Some(name.clone()),
                    properties: cprops,
                    span: Span::default(),
                });
            }
            for i in 0..extra_images {
                containers.push(Container {
                    name: format!("app{i}"),
                    container_type: "Docker".into(),
                    deploys: None,
                    properties: vec![Property::scalar("image", format!("app{i}:1.0"))],
                    span: Span::default(),
                });
            }
            model.platforms.push(PlatformDecl {
                name: "platform".into(),
                platform_type: "AWS".into(),
                clusters: vec![Cluster {
                    name: "cluster".into(),
                    applications: vec![Application {
                        name: "app".into(),
                        containers,
                        span: Span::default(),
                    }],
                    span: Span::default(),
                }],
                span: Span::default(),
            });
            model
        })
}

fn primitive() -> impl Strategy<Value = PrimitiveType> {
    select(
        &[
            PrimitiveType::Int,
            PrimitiveType::Float,
            PrimitiveType::String,
            PrimitiveType::Bool,
            PrimitiveType::Date,
            PrimitiveType::Text,
        ][..],
    )
}

fn distinct(names: Vec<String>) -> Vec<String> {
    let mut seen = HashSet::new();
    names
        .into_iter()
        .filter(|n| seen.insert(n.clone()))
        .collect()
}

/// A well-formed polystore model: unique names, every entity in at most one
/// database, every reference resolved.
pub fn valid_ml_model() -> impl Strategy<Value = MlModel> {
    (
        vec(ml_identifier(), 1..8),
        vec(vec((ml_identifier(), primitive()), 0..4), 8),
        vec(ml_identifier(), 1..6),
        vec(select(&DbKind::ALL[..]), 6),
        vec(0usize..6, 8),
    )
        .prop_map(|(entity_names, attrs, db_names, kinds, placement)| {
            let entity_names = distinct(entity_names);
            let db_names = distinct(db_names);
            let entities = entity_names
                .iter()
                .zip(attrs)
                .map(|(name, attrs)| {
                    let mut seen = HashSet::new();
                    MlEntity {
                        name: name.clone(),
                        attributes: attrs
                            .into_iter()
                            .filter(|(n, _)| seen.insert(n.clone()))
                            .map(|(name, ty)| MlAttribute {
                                name,
                                ty,
                                span: Span::default(),
                            })
                            .collect(),
                        span: Span::default(),
                    }
                })
                .collect();
            let mut databases: Vec<MlDatabase> = db_names
                .iter()
                .zip(kinds)
                .map(|(name, kind)| MlDatabase {
                    name: name.clone(),
                    kind,
                    contains: Vec::new(),
                    span: Span::default(),
                })
                .collect();
            // entities whose slot is out of range stay unplaced
            for (entity, slot) in entity_names.iter().zip(placement) {
                if let Some(db) = databases.get_mut(slot) {
                    db.contains.push(EntityRef {
                        name: entity.clone(),
                        span: Span::default(),
                    });
                }
            }
            MlModel {
                entities,
                databases,
            }
        })
}

/// Source text for `model`, in the layout the parser accepts.
pub fn ml_source(model: &MlModel) -> String {
    let mut out = String::new();
    for e in &model.entities {
        let _ = writeln!(out, "entity {} {{", e.name);
        for a in &e.attributes {
            let _ = writeln!(out, "    {} : {}", a.name, a.ty.as_str());
        }
        out.push_str("}\n");
    }
    for d in &model.databases {
        let _ = writeln!(out, "database {} : {} {{", d.name, d.kind.as_str());
        if !d.contains.is_empty() {
            let names: Vec<&str> = d.contains.iter().map(|r| r.name.as_str()).collect();
            let _ = writeln!(out, "    contains {}", names.join(", "));
        }
        out.push_str("}\n");
    }
    out
}

/// Complete answers for `model`: a DBMS of the right kind for every
/// database plus a few random properties.
pub fn answers_for(model: &MlModel) -> impl Strategy<Value = DeploymentAnswers> {
    let catalog = DbmsCatalog::embedded();
    let per_db: Vec<_> = model
        .databases
        .iter()
        .map(|d| {
            let choices: Vec<String> = catalog.for_kind(d.kind).map(|i| i.name.clone()).collect();
            let name = d.name.clone();
            (
                select(choices),
                env_properties(),
                proptest::option::of("[a-z]{1,6}"),
            )
                .prop_map(move |(dbms, mut properties, network)| {
                    if let Some(n) = network {
                        properties.push(Property::scalar("networks", n));
                    }
                    DatabaseAnswers {
                        name: name.clone(),
                        dbms: Some(dbms),
                        container: None,
                        properties,
                    }
                })
        })
        .collect();
    (
        select(&crate::transform::answers::PLATFORM_TYPES[..]),
        "[a-z][A-Za-z0-9]{0,8}",
        "[a-z][A-Za-z0-9]{0,8}",
        "[a-z][A-Za-z0-9]{0,8}",
        per_db,
    )
        .prop_map(
            |(platform_type, platform, cluster, app, databases)| DeploymentAnswers {
                platform_type: Some(platform_type.to_string()),
                platform_name: Some(platform),
                cluster_name: Some(cluster),
                application_name: Some(app),
                container_type: Some("Docker".into()),
                technology: Some("compose".into()),
                databases,
            },
        )
}

/// A valid polystore model together with complete answers for it.
pub fn ml_with_answers() -> impl Strategy<Value = (MlModel, DeploymentAnswers)> {
    valid_ml_model().prop_flat_map(|m| {
        let answers = answers_for(&m);
        (Just(m), answers)
    })
}
