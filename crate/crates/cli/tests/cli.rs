use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use polyforge_core::ValidationReport;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn polyforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyforge"))
        .args(args)
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polyforge"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&polyforge(&["check", s(&fixture("locman.tdl"))])), 0);

    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.tdl");
    fs::write(&empty, "").unwrap();
    assert_eq!(code(&polyforge(&["check", s(&empty)])), 0);

    let dangling = dir.path().join("dangling.tdl");
    let text = fs::read_to_string(fixture("locman.tdl"))
        .unwrap()
        .replace("deploys locmandb", "deploys nosuchdb");
    fs::write(&dangling, text).unwrap();
    let out = polyforge(&["check", s(&dangling)]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("UNRESOLVED_REF"));

    let broken = dir.path().join("broken.tdl");
    fs::write(&broken, "platform p : AWS {\n").unwrap();
    let out = polyforge(&["check", s(&broken)]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("broken.tdl:2:1: expected"),
        "{}",
        stderr(&out)
    );

    assert_eq!(
        code(&polyforge(&["check", s(&dir.path().join("missing.tdl"))])),
        3
    );
    assert_eq!(code(&polyforge(&["check"])), 3);
    assert_eq!(code(&polyforge(&["--version"])), 0);
}

#[test]
fn json_report_is_a_fixed_point() {
    let out = polyforge(&[
        "--format",
        "json",
        "check",
        s(&fixture("validation/shared-database.tdl")),
    ]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    let report: ValidationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(
        format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
        text
    );
}

#[test]
fn transform_reproduces_fixture() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("out.tdl");
    let out = polyforge(&[
        "transform",
        s(&fixture("locman.tyml")),
        s(&fixture("locman.answers")),
        "-o",
        s(&out_path),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(&out_path).unwrap(),
        fs::read_to_string(fixture("locman.tdl")).unwrap()
    );
    assert_eq!(code(&polyforge(&["check", s(&out_path)])), 0);

    let out = polyforge(&[
        "transform",
        s(&fixture("locman.tyml")),
        s(&fixture("locman.answers")),
    ]);
    assert_eq!(
        stdout(&out),
        fs::read_to_string(fixture("locman.tdl")).unwrap()
    );
}

#[test]
fn transform_missing_dbms() {
    let dir = TempDir::new().unwrap();
    let answers = dir.path().join("a.answers");
    let text = fs::read_to_string(fixture("locman.answers"))
        .unwrap()
        .replace("db.locmandb.dbms = MariaDB\n", "");
    fs::write(&answers, text).unwrap();
    let out = polyforge(&["transform", s(&fixture("locman.tyml")), s(&answers)]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    let err = stderr(&out);
    assert!(
        err.contains("MISSING_ANSWER") && err.contains("db.locmandb.dbms"),
        "{err}"
    );
}

#[test]
fn generate_compose_matches_golden() {
    let dir = TempDir::new().unwrap();
    let out = polyforge(&[
        "generate",
        s(&fixture("locman.tdl")),
        "--target",
        "compose",
        "--outdir",
        s(dir.path()),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let written = dir.path().join("myApplication/docker-compose.yml");
    assert_eq!(stdout(&out), format!("{}\n", written.display()));
    assert_eq!(
        fs::read_to_string(&written).unwrap(),
        fs::read_to_string(fixture("locman-compose.yml")).unwrap()
    );
}

#[test]
fn generate_kubernetes_tree() {
    let dir = TempDir::new().unwrap();
    let out = polyforge(&[
        "generate",
        s(&fixture("locman.tdl")),
        "--target",
        "kubernetes",
        "--outdir",
        s(dir.path()),
    ]);
    assert_eq!(code(&out), 0);
    let mut names: Vec<String> = fs::read_dir(dir.path().join("myApplication/k8s"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "mycontainer-deployment.yaml",
            "mycontainer-pvc.yaml",
            "mycontainer-service.yaml"
        ]
    );
}

#[test]
fn generate_without_applications() {
    let dir = TempDir::new().unwrap();
    let model = dir.path().join("m.tdl");
    fs::write(&model, "platformtype AWS\n").unwrap();
    let outdir = dir.path().join("out");
    let out = polyforge(&[
        "generate",
        s(&model),
        "--target",
        "compose",
        "--outdir",
        s(&outdir),
    ]);
    assert_eq!(code(&out), 0);
    assert!(!outdir.exists());
    assert!(stderr(&out).contains("notice"));
}

#[test]
fn generate_refuses_invalid_and_unsupported() {
    let dir = TempDir::new().unwrap();
    let out = polyforge(&[
        "generate",
        s(&fixture("validation/shared-database.tdl")),
        "--target",
        "compose",
        "--outdir",
        s(dir.path()),
    ]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());

    let model = dir.path().join("rkt.tdl");
    let text = fs::read_to_string(fixture("locman.tdl"))
        .unwrap()
        .replace("containertype Docker", "containertype rkt")
        .replace(": Docker", ": rkt");
    fs::write(&model, text).unwrap();
    let out = polyforge(&[
        "generate",
        s(&model),
        "--target",
        "compose",
        "--outdir",
        s(dir.path()),
    ]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("UNSUPPORTED_CONTAINER_TYPE"));
}

#[test]
fn pipeline_is_deterministic() {
    let run = || {
        let dir = TempDir::new().unwrap();
        let dl = dir.path().join("m.tdl");
        polyforge(&[
            "transform",
            s(&fixture("locman.tyml")),
            s(&fixture("locman.answers")),
            "-o",
            s(&dl),
        ]);
        let mut files = Vec::new();
        for target in ["compose", "kubernetes"] {
            polyforge(&[
                "generate",
                s(&dl),
                "--target",
                target,
                "--outdir",
                s(dir.path()),
            ]);
        }
        for rel in [
            "myApplication/docker-compose.yml",
            "myApplication/k8s/mycontainer-deployment.yaml",
            "myApplication/k8s/mycontainer-service.yaml",
            "myApplication/k8s/mycontainer-pvc.yaml",
        ] {
            files.push(fs::read(dir.path().join(rel)).unwrap());
        }
        files
    };
    assert_eq!(run(), run());
}

#[test]
fn init_with_defaults() {
    let dir = TempDir::new().unwrap();
    let answers = dir.path().join("a.answers");
    let out = polyforge(&[
        "init",
        s(&fixture("locman.tyml")),
        "-o",
        s(&answers),
        "--defaults",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&answers).unwrap();
    assert!(text.contains("db.locmandb.dbms = MariaDB\n"), "{text}");

    let empty = dir.path().join("empty.tyml");
    fs::write(&empty, "").unwrap();
    polyforge(&["init", s(&empty), "-o", s(&answers), "--defaults"]);
    let text = fs::read_to_string(&answers).unwrap();
    assert!(
        text.starts_with("platform.type = AWS\n") && !text.contains("db."),
        "{text}"
    );

    // the answers feed straight into transform
    let dl = dir.path().join("m.tdl");
    polyforge(&[
        "init",
        s(&fixture("locman.tyml")),
        "-o",
        s(&answers),
        "--defaults",
    ]);
    let out = polyforge(&[
        "transform",
        s(&fixture("locman.tyml")),
        s(&answers),
        "-o",
        s(&dl),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(code(&polyforge(&["check", s(&dl)])), 0);
}

#[test]
fn init_scripted_selection() {
    let dir = TempDir::new().unwrap();
    let ml = dir.path().join("m.tyml");
    fs::write(
        &ml,
        "entity Doc {\n    body : text\n}\ndatabase docs : document {\n    contains Doc\n}\n",
    )
    .unwrap();
    let answers = dir.path().join("a.answers");
    let out = with_stdin(
        &["init", s(&ml), "-o", s(&answers)],
        "\n\n\n\n\n\nMongoDB\n",
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    assert!(stderr(&out).contains("DBMS for document database `docs`"));
    assert!(fs::read_to_string(&answers)
        .unwrap()
        .contains("db.docs.dbms = MongoDB\n"));
}

#[test]
fn init_rejects_preset_outside_catalog() {
    let dir = TempDir::new().unwrap();
    let preset = dir.path().join("p.answers");
    fs::write(&preset, "db.locmandb.dbms = MongoDB\n").unwrap();
    let out = polyforge(&[
        "init",
        s(&fixture("locman.tyml")),
        "-o",
        s(&dir.path().join("a.answers")),
        "--defaults",
        "--answers",
        s(&preset),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("UNKNOWN_DBMS") || stderr(&out).contains("MongoDB"));
}

#[test]
fn fmt_rewrites_and_checks() {
    assert_eq!(
        code(&polyforge(&["fmt", "--check", s(&fixture("locman.tdl"))])),
        0
    );

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("m.tdl");
    let canonical = fs::read_to_string(fixture("locman.tdl")).unwrap();
    fs::write(
        &path,
        canonical
            .replace("\n\n", "\n\n\n\n")
            .replace("    image", "image"),
    )
    .unwrap();
    assert_eq!(code(&polyforge(&["fmt", "--check", s(&path)])), 2);
    assert_eq!(code(&polyforge(&["fmt", s(&path)])), 0);
    assert_eq!(fs::read_to_string(&path).unwrap(), canonical);
    let out = polyforge(&["fmt", s(&path)]);
    assert_eq!(code(&out), 0);
    assert!(!stderr(&out).contains("formatted"));

    let broken = dir.path().join("b.tdl");
    fs::write(&broken, "platform {").unwrap();
    assert_eq!(code(&polyforge(&["fmt", s(&broken)])), 1);
    assert_eq!(fs::read_to_string(&broken).unwrap(), "platform {");
}

fn daily_column(csv: &str) -> Vec<String> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect()
}

#[test]
fn estimate_fleets() {
    let out = polyforge(&["estimate", "--fleet", "1000", "--csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        daily_column(&stdout(&out)),
        ["12", "210", "80", "80", "382"]
    );

    let zero = stdout(&polyforge(&["estimate", "--fleet", "0", "--csv"]));
    assert!(daily_column(&zero).iter().all(|v| v == "0"));

    let double = stdout(&polyforge(&["estimate", "--fleet", "2000", "--csv"]));
    assert_eq!(daily_column(&double), ["24", "420", "160", "160", "764"]);

    let table = stdout(&polyforge(&["estimate", "--fleet", "1000"]));
    assert!(table.contains("MOST") && table.contains("382"));

    let json: serde_json::Value = serde_json::from_str(&stdout(&polyforge(&[
        "--format", "json", "estimate", "--fleet", "1000",
    ])))
    .unwrap();
    assert_eq!(json["daily_tb_total"], "382");
    assert_eq!(code(&polyforge(&["estimate", "--fleet", "-3"])), 3);
}
