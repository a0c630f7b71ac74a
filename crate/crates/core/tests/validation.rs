use std::collections::HashSet;
use std::ptr;

use polyforge_core::dl::resolve::{resolve, ResolveError};
use polyforge_core::dl::Code;
use polyforge_core::testing::valid_dl_model;
use polyforge_core::{
    parse_dl, validate, Application, Cluster, Container, DatabaseDecl, DlModel, PlatformDecl,
    Property, Span, TypeCategory, TypeDecl,
};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::select;

const NAMES: &[&str] = &["a", "b", "c"];
const TYPES: &[&str] = &["AWS", "Azure", "Docker", "MariaDB", "Ghost"];

fn name() -> impl Strategy<Value = String> {
    select(NAMES).prop_map(String::from)
}

fn type_name() -> impl Strategy<Value = String> {
    select(TYPES).prop_map(String::from)
}

fn maybe_image() -> impl Strategy<Value = Vec<Property>> {
    any::<bool>().prop_map(|b| {
        if b {
            vec![Property::scalar("image", "x:1")]
        } else {
            vec![]
        }
    })
}

/// Models drawn from tiny name pools so that collisions and shared
/// references are common.
fn dense_model() -> impl Strategy<Value = DlModel> {
    let types = vec((select(&TypeCategory::ALL[..]), type_name()), 0..5).prop_map(|ts| {
        ts.into_iter()
            .map(|(c, n)| TypeDecl::new(c, n))
            .collect::<Vec<_>>()
    });
    let databases = vec((name(), type_name(), maybe_image()), 0..4).prop_map(|ds| {
        ds.into_iter()
            .map(|(name, db_type, properties)| DatabaseDecl {
                name,
                db_type,
                properties,
                span: Span::default(),
            })
            .collect::<Vec<_>>()
    });
    let container = (
        name(),
        type_name(),
        proptest::option::of(name()),
        maybe_image(),
    )
        .prop_map(|(name, container_type, deploys, properties)| Container {
            name,
            container_type,
            deploys,
            properties,
            span: Span::default(),
        });
    let application = (name(), vec(container, 0..4)).prop_map(|(name, containers)| Application {
        name,
        containers,
        span: Span::default(),
    });
    let cluster = (name(), vec(application, 0..3)).prop_map(|(name, applications)| Cluster {
        name,
        applications,
        span: Span::default(),
    });
    let platform =
        (name(), type_name(), vec(cluster, 0..2)).prop_map(|(name, platform_type, clusters)| {
            PlatformDecl {
                name,
                platform_type,
                clusters,
                span: Span::default(),
            }
        });
    (types, databases, vec(platform, 0..4)).prop_map(|(types, databases, platforms)| DlModel {
        types,
        databases,
        platforms,
    })
}

fn count(model: &DlModel, code: Code) -> usize {
    let r = validate(model);
    r.errors
        .iter()
        .chain(&r.warnings)
        .filter(|d| d.code == code)
        .count()
}

/// Every container that shares its declared database with an earlier
/// container, found by enumerating all ordered pairs.
fn shared_oracle(model: &DlModel) -> usize {
    let targets: Vec<Option<&str>> = model
        .containers()
        .map(|(_, _, _, k)| k.deploys.as_deref())
        .collect();
    let declared: HashSet<&str> = model.databases.iter().map(|d| d.name.as_str()).collect();
    (0..targets.len())
        .filter(|&j| {
            (0..j).any(|i| match (targets[i], targets[j]) {
                (Some(x), Some(y)) => x == y && declared.contains(y),
                _ => false,
            })
        })
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn shared_database_matches_pair_enumeration(model in dense_model()) {
        prop_assert_eq!(count(&model, Code::SharedDatabase), shared_oracle(&model));
    }

    #[test]
    fn multi_platform_type_iff_two_distinct_types(model in dense_model()) {
        let distinct: HashSet<&str> = model.platforms.iter().map(|p| p.platform_type.as_str()).collect();
        prop_assert_eq!(count(&model, Code::MultiPlatformType) > 0, distinct.len() >= 2);
    }

    #[test]
    fn validation_is_deterministic(model in dense_model()) {
        let a = validate(&model);
        let b = validate(&model);
        prop_assert_eq!(a.to_string(), b.to_string());
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn resolve_succeeds_iff_no_errors(model in dense_model()) {
        let report = validate(&model);
        match resolve(&model) {
            Ok(_) => prop_assert!(report.is_valid()),
            Err(ResolveError::RefusedInvalid(r)) => {
                prop_assert!(!report.is_valid());
                prop_assert_eq!(r, report);
            }
        }
    }

    #[test]
    fn handles_round_trip_by_name(model in valid_dl_model()) {
        let report = validate(&model);
        prop_assert!(report.is_valid(), "{}", report);
        let resolved = resolve(&model).unwrap();
        for p in &resolved.platforms {
            prop_assert!(ptr::eq(p.platform_type, model.type_decl(&p.decl.platform_type).unwrap()));
            for c in &p.clusters {
                for a in &c.applications {
                    for k in &a.containers {
                        prop_assert!(ptr::eq(k.container_type, model.type_decl(&k.decl.container_type).unwrap()));
                        if let Some(db) = k.deploys {
                            let name = k.decl.deploys.as_deref().unwrap();
                            prop_assert!(ptr::eq(db.decl, model.database(name).unwrap()));
                            prop_assert!(ptr::eq(db.db_type, model.type_decl(&db.decl.db_type).unwrap()));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn empty_model_is_clean() {
    let r = validate(&DlModel::default());
    assert!(r.errors.is_empty() && r.warnings.is_empty());
    assert!(resolve(&DlModel::default()).unwrap().platforms.is_empty());
}

#[test]
fn undeclared_container_type() {
    let m = parse_dl(
        "platformtype AWS\nplatform p : AWS {\n cluster c {\n application a {\n container k : Docker {\n image = x\n }\n }\n }\n}\n",
    )
    .unwrap();
    let r = validate(&m);
    assert_eq!(r.codes().collect::<Vec<_>>(), [Code::UnresolvedRef]);
    assert_eq!(
        r.errors[0].location,
        "platform:p/cluster:c/application:a/container:k"
    );
    let err = resolve(&m).unwrap_err();
    assert_eq!(err.code(), "REFUSED_INVALID");
}

#[test]
fn shared_database_counts_each_extra_container() {
    let m = parse_dl(
        "platformtype AWS\ncontainertype Docker\ndbtype M\n\
         database d : M {\n image = x\n}\n\
         platform p : AWS {\n cluster c {\n application a {\n\
         container k1 : Docker {\n deploys d\n }\n\
         container k2 : Docker {\n deploys d\n }\n\
         container k3 : Docker {\n deploys d\n }\n }\n }\n}\n",
    )
    .unwrap();
    assert_eq!(
        validate(&m).codes().collect::<Vec<_>>(),
        [Code::SharedDatabase, Code::SharedDatabase]
    );
}

#[test]
fn unresolved_deploys_is_not_shared() {
    let m = parse_dl(
        "platformtype AWS\ncontainertype Docker\n\
         platform p : AWS {\n cluster c {\n application a {\n\
         container k1 : Docker {\n deploys ghost\n }\n\
         container k2 : Docker {\n deploys ghost\n }\n }\n }\n}\n",
    )
    .unwrap();
    assert_eq!(
        validate(&m).codes().collect::<Vec<_>>(),
        [Code::UnresolvedRef, Code::UnresolvedRef]
    );
}

#[test]
fn report_display() {
    let m = parse_dl("dbtype X\ndbtype X\nplatformtype AWS\nplatform p : AWS {\n}\n").unwrap();
    let text = validate(&m).to_string();
    assert!(text.contains("error[DUP_NAME] dbtype:X"), "{text}");
    assert!(
        text.contains("warning[EMPTY_PLATFORM] platform:p"),
        "{text}"
    );
    assert!(text.ends_with("1 error, 1 warning"), "{text}");
}
