use std::fs;
use std::path::PathBuf;

use polyforge_core::codegen::{
    emit_compose, generate_compose, generate_k8s, render_application, Target,
};
use polyforge_core::dl::resolve::resolve;
use polyforge_core::dl::Code;
use polyforge_core::ml::parse_ml;
use polyforge_core::transform::{ml_to_dl, DbmsCatalog, DeploymentAnswers};
use polyforge_core::{parse_dl, print_dl, validate};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn locman_is_canonical_and_valid() {
    let text = fixture("locman.tdl");
    let model = parse_dl(&text).unwrap();
    assert_eq!(print_dl(&model), text);
    let report = validate(&model);
    assert!(
        report.errors.is_empty() && report.warnings.is_empty(),
        "{report}"
    );
    assert_eq!(model.types.len(), 3);
    assert_eq!(model.databases[0].properties.len(), 5);
}

#[test]
fn locman_deploys_handle() {
    let model = parse_dl(&fixture("locman.tdl")).unwrap();
    let resolved = resolve(&model).unwrap();
    let app = resolved.applications_named("myApplication").next().unwrap();
    let db = app.containers[0].deploys.unwrap();
    assert!(std::ptr::eq(db.decl, &model.databases[0]));
    assert_eq!(db.decl.name, "locmandb");
}

#[test]
fn locman_compose_golden() {
    let model = parse_dl(&fixture("locman.tdl")).unwrap();
    let resolved = resolve(&model).unwrap();
    let out = generate_compose(&resolved, "myApplication").unwrap();
    assert!(out.warnings.is_empty(), "{:?}", out.warnings);
    let service = &out.plan.services["myContainer"];
    assert_eq!(service.environment.len(), 4);
    assert_eq!(service.volumes, ["/opt/locman-staging/db:/var/lib"]);
    assert_eq!(service.networks, ["locman"]);
    assert_eq!(out.plan.networks["locman"].name, "locman");
    assert_eq!(emit_compose(&out.plan), fixture("locman-compose.yml"));
}

#[test]
fn stack_compose_golden() {
    let model = parse_dl(&fixture("locman-stack.tdl")).unwrap();
    assert!(validate(&model).is_valid());
    let resolved = resolve(&model).unwrap();
    let out = generate_compose(&resolved, "locman").unwrap();
    assert_eq!(emit_compose(&out.plan), fixture("locman-stack-compose.yml"));
}

#[test]
fn golden_files_parse_as_yaml() {
    for name in ["locman-compose.yml", "locman-stack-compose.yml"] {
        let doc: serde_yaml::Value = serde_yaml::from_str(&fixture(name)).unwrap();
        assert_eq!(doc["version"], serde_yaml::Value::String("3.7".into()));
    }
}

#[test]
fn transform_reproduces_locman_model() {
    let ml = parse_ml(&fixture("locman.tyml")).unwrap();
    let answers = DeploymentAnswers::parse(&fixture("locman.answers")).unwrap();
    let dl = ml_to_dl(&ml, &answers, &DbmsCatalog::embedded()).unwrap();
    assert_eq!(print_dl(&dl), fixture("locman.tdl"));
}

#[test]
fn kubernetes_manifest_counts() {
    let catalog = DbmsCatalog::embedded();
    for (name, expected) in [("locman.tdl", 3), ("locman-novolumes.tdl", 2)] {
        let model = parse_dl(&fixture(name)).unwrap();
        let resolved = resolve(&model).unwrap();
        let sets = generate_k8s(&resolved, "myApplication", &catalog).unwrap();
        let manifests: Vec<_> = sets.iter().flat_map(|s| s.manifests()).collect();
        assert_eq!(manifests.len(), expected, "{name}");
        for m in &manifests {
            assert!(m.name.starts_with("mycontainer-"), "{}", m.name);
            assert!(polyforge_core::codegen::k8s::is_dns_label(&m.name));
            let _: serde_yaml::Value = serde_yaml::from_str(&m.yaml).unwrap();
        }
        let rendered =
            render_application(&resolved, "myApplication", Target::Kubernetes, &catalog).unwrap();
        assert!(rendered
            .files
            .iter()
            .all(|f| f.path.starts_with("myApplication/k8s")));
    }
}

#[test]
fn validation_corpus() {
    let cases = [
        ("unresolved-ref.tdl", Code::UnresolvedRef),
        ("dup-name.tdl", Code::DupName),
        ("multi-platform-type.tdl", Code::MultiPlatformType),
        ("wrong-category.tdl", Code::WrongCategory),
        ("shared-database.tdl", Code::SharedDatabase),
        ("missing-image.tdl", Code::MissingImage),
        ("empty-platform.tdl", Code::EmptyPlatform),
    ];
    for (name, code) in cases {
        let model = parse_dl(&fixture(&format!("validation/{name}"))).unwrap();
        let report = validate(&model);
        let all: Vec<Code> = report
            .errors
            .iter()
            .chain(&report.warnings)
            .map(|d| d.code)
            .collect();
        assert_eq!(all, [code], "{name}: {report}");
        if code == Code::EmptyPlatform {
            assert!(report.errors.is_empty());
        }
    }
}
