//! Reference resolution checks and structural constraints of a deployment
//! model. Every problem is collected into a [`ValidationReport`]; nothing is
//! raised as an error.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::model::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Code {
    UnresolvedRef,
    DupName,
    MultiPlatformType,
    WrongCategory,
    SharedDatabase,
    MissingImage,
    EmptyPlatform,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::UnresolvedRef => "UNRESOLVED_REF",
            Code::DupName => "DUP_NAME",
            Code::MultiPlatformType => "MULTI_PLATFORM_TYPE",
            Code::WrongCategory => "WRONG_CATEGORY",
            Code::SharedDatabase => "SHARED_DATABASE",
            Code::MissingImage => "MISSING_IMAGE",
            Code::EmptyPlatform => "EMPTY_PLATFORM",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: Code,
    /// Slash separated path from the model root, e.g.
    /// `platform:p/cluster:c/application:a/container:x`.
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub errors: Vec<Diagnostic>,
    pub warnings: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    /// Codes of all errors followed by all warnings.
    pub fn codes(&self) -> impl Iterator<Item = Code> + '_ {
        self.errors.iter().chain(&self.warnings).map(|d| d.code)
    }

    fn error(&mut self, code: Code, location: &str, message: String) {
        self.errors.push(Diagnostic {
            code,
            location: location.to_string(),
            message,
        });
    }

    fn warning(&mut self, code: Code, location: &str, message: String) {
        self.warnings.push(Diagnostic {
            code,
            location: location.to_string(),
            message,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.errors {
            writeln!(f, "error[{}] {}: {}", d.code, d.location, d.message)?;
        }
        for d in &self.warnings {
            writeln!(f, "warning[{}] {}: {}", d.code, d.location, d.message)?;
        }
        let plural = |n: usize| if n == 1 { "" } else { "s" };
        write!(
            f,
            "{} error{}, {} warning{}",
            self.errors.len(),
            plural(self.errors.len()),
            self.warnings.len(),
            plural(self.warnings.len())
        )
    }
}

/// Checks every constraint of the deployment metamodel.
pub fn validate(model: &DlModel) -> ValidationReport {
    let mut v = Validator {
        model,
        report: ValidationReport::default(),
    };
    v.check_types();
    v.check_databases();
    v.check_platforms();
    v.report
}

struct Validator<'m> {
    model: &'m DlModel,
    report: ValidationReport,
}

impl<'m> Validator<'m> {
    fn check_types(&mut self) {
        let mut seen = HashSet::new();
        for t in &self.model.types {
            if !seen.insert(t.name.as_str()) {
                let loc = format!("{}:{}", t.category, t.name);
                self.report.error(
                    Code::DupName,
                    &loc,
                    format!("type `{}` is declared more than once", t.name),
                );
            }
        }
    }

    fn check_databases(&mut self) {
        let mut seen = HashSet::new();
        for db in &self.model.databases {
            let loc = format!("database:{}", db.name);
            if !seen.insert(db.name.as_str()) {
                self.report.error(
                    Code::DupName,
                    &loc,
                    format!("database `{}` is declared more than once", db.name),
                );
            }
            self.check_type_ref(&loc, &db.db_type, TypeCategory::DbType);
            self.check_property_keys(&loc, &db.properties);
        }
    }

    fn check_platforms(&mut self) {
        let platforms = &self.model.platforms;
        let mut seen = HashSet::new();
        for p in platforms {
            let loc = format!("platform:{}", p.name);
            if !seen.insert(p.name.as_str()) {
                self.report.error(
                    Code::DupName,
                    &loc,
                    format!("platform `{}` is declared more than once", p.name),
                );
            }
            self.check_type_ref(&loc, &p.platform_type, TypeCategory::PlatformType);
        }

        if let Some(first) = platforms.first() {
            for p in &platforms[1..] {
                if p.platform_type != first.platform_type {
                    self.report.error(
                        Code::MultiPlatformType,
                        &format!("platform:{}", p.name),
                        format!(
                            "platform `{}` is typed `{}` but `{}` is typed `{}`; all platforms must share one platform type",
                            p.name, p.platform_type, first.name, first.platform_type
                        ),
                    );
                }
            }
        }

        // database name -> location of the first container deploying it
        let mut deployed_by: HashMap<&str, String> = HashMap::new();
        for p in platforms {
            let ploc = format!("platform:{}", p.name);
            if p.clusters.is_empty() {
                self.report.warning(
                    Code::EmptyPlatform,
                    &ploc,
                    format!("platform `{}` declares no clusters", p.name),
                );
            }
            let mut clusters = HashSet::new();
            for c in &p.clusters {
                let cloc = format!("{ploc}/cluster:{}", c.name);
                if !clusters.insert(c.name.as_str()) {
                    self.report.error(
                        Code::DupName,
                        &cloc,
                        format!(
                            "cluster `{}` is declared more than once in `{}`",
                            c.name, p.name
                        ),
                    );
                }
                let mut apps = HashSet::new();
                for a in &c.applications {
                    let aloc = format!("{cloc}/application:{}", a.name);
                    if !apps.insert(a.name.as_str()) {
                        self.report.error(
                            Code::DupName,
                            &aloc,
                            format!(
                                "application `{}` is declared more than once in `{}`",
                                a.name, c.name
                            ),
                        );
                    }
                    let mut containers = HashSet::new();
                    for k in &a.containers {
                        let kloc = format!("{aloc}/container:{}", k.name);
                        if !containers.insert(k.name.as_str()) {
                            self.report.error(
                                Code::DupName,
                                &kloc,
                                format!(
                                    "container `{}` is declared more than once in `{}`",
                                    k.name, a.name
                                ),
                            );
                        }
                        self.check_container(&kloc, k, &mut deployed_by);
                    }
                }
            }
        }
    }

    fn check_container<'a>(
        &mut self,
        loc: &str,
        container: &'a Container,
        deployed_by: &mut HashMap<&'a str, String>,
    ) {
        self.check_type_ref(loc, &container.container_type, TypeCategory::ContainerType);
        self.check_property_keys(loc, &container.properties);

        let has_image = find_property(&container.properties, "image").is_some();
        match &container.deploys {
            None if !has_image => self.report.error(
                Code::MissingImage,
                loc,
                format!(
                    "container `{}` deploys no database and has no `image` property",
                    container.name
                ),
            ),
            None => {}
            Some(db_name) => match self.model.database(db_name) {
                None => self.report.error(
                    Code::UnresolvedRef,
                    loc,
                    format!("deployed database `{db_name}` is not declared"),
                ),
                Some(db) => {
                    if !has_image && find_property(&db.properties, "image").is_none() {
                        self.report.error(
                            Code::MissingImage,
                            loc,
                            format!(
                                "neither container `{}` nor database `{}` has an `image` property",
                                container.name, db.name
                            ),
                        );
                    }
                    match deployed_by.get(db_name.as_str()) {
                        Some(first) => self.report.error(
                            Code::SharedDatabase,
                            loc,
                            format!("database `{db_name}` is already deployed by {first}"),
                        ),
                        None => {
                            deployed_by.insert(db_name, loc.to_string());
                        }
                    }
                }
            },
        }
    }

    fn check_type_ref(&mut self, loc: &str, name: &str, expected: TypeCategory) {
        match self.model.type_decl(name) {
            None => self.report.error(
                Code::UnresolvedRef,
                loc,
                format!("{} `{name}` is not declared", expected.describe()),
            ),
            Some(t) if t.category != expected => self.report.error(
                Code::WrongCategory,
                loc,
                format!(
                    "`{name}` is declared as a {}, expected a {}",
                    t.category.describe(),
                    expected.describe()
                ),
            ),
            Some(_) => {}
        }
    }

    fn check_property_keys(&mut self, loc: &str, properties: &[Property]) {
        let mut keys = HashSet::new();
        for p in properties {
            if !keys.insert(p.key.as_str()) {
                self.report.error(
                    Code::DupName,
                    &format!("{loc}/property:{}", p.key),
                    format!("property `{}` is set more than once", p.key),
                );
            }
        }
    }
}
