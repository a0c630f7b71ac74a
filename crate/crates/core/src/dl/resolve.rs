//! A view of a validated model in which every by-name reference has been
//! replaced by a borrow of the declaration it names.

use thiserror::Error;

use super::model::*;
use super::validate::{validate, ValidationReport};

#[derive(Debug, Error)]
pub enum ResolveError {
    #[error("REFUSED_INVALID: model has {} validation error(s)", .0.errors.len())]
    RefusedInvalid(ValidationReport),
}

impl ResolveError {
    pub fn code(&self) -> &'static str {
        "REFUSED_INVALID"
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedModel<'m> {
    pub model: &'m DlModel,
    pub platforms: Vec<ResolvedPlatform<'m>>,
}

#[derive(Debug, Clone)]
pub struct ResolvedPlatform<'m> {
    pub decl: &'m PlatformDecl,
    pub platform_type: &'m TypeDecl,
    pub clusters: Vec<ResolvedCluster<'m>>,
}

#[derive(Debug, Clone)]
pub struct ResolvedCluster<'m> {
    pub decl: &'m Cluster,
    pub applications: Vec<ResolvedApplication<'m>>,
}

#[derive(Debug, Clone)]
pub struct ResolvedApplication<'m> {
    pub decl: &'m Application,
    pub containers: Vec<ResolvedContainer<'m>>,
}

#[derive(Debug, Clone)]
pub struct ResolvedContainer<'m> {
    pub decl: &'m Container,
    pub container_type: &'m TypeDecl,
    pub deploys: Option<ResolvedDatabase<'m>>,
}

#[derive(Debug, Clone, Copy)]
pub struct ResolvedDatabase<'m> {
    pub decl: &'m DatabaseDecl,
    pub db_type: &'m TypeDecl,
}

impl<'m> ResolvedModel<'m> {
    pub fn applications(
        &self,
    ) -> impl Iterator<
        Item = (
            &ResolvedPlatform<'m>,
            &ResolvedCluster<'m>,
            &ResolvedApplication<'m>,
        ),
    > {
        self.platforms.iter().flat_map(|p| {
            p.clusters
                .iter()
                .flat_map(move |c| c.applications.iter().map(move |a| (p, c, a)))
        })
    }

    /// All applications called `name`, across every platform and cluster.
    pub fn applications_named<'s, 'n>(
        &'s self,
        name: &'n str,
    ) -> impl Iterator<Item = &'s ResolvedApplication<'m>> + use<'s, 'n, 'm> {
        self.applications()
            .map(|(_, _, a)| a)
            .filter(move |a| a.decl.name == name)
    }
}

impl<'m> ResolvedContainer<'m> {
    pub fn name(&self) -> &'m str {
        &self.decl.name
    }

    /// Database properties followed by container properties; a container
    /// property replaces a database property with the same key in place.
    pub fn merged_properties(&self) -> Vec<&'m Property> {
        let mut merged: Vec<&'m Property> = match &self.deploys {
            Some(db) => db.decl.properties.iter().collect(),
            None => Vec::new(),
        };
        for p in &self.decl.properties {
            match merged.iter_mut().find(|q| q.key == p.key) {
                Some(slot) => *slot = p,
                None => merged.push(p),
            }
        }
        merged
    }
}

/// Builds the resolved view. Refuses models that do not validate.
pub fn resolve(model: &DlModel) -> Result<ResolvedModel<'_>, ResolveError> {
    let report = validate(model);
    if !report.is_valid() {
        return Err(ResolveError::RefusedInvalid(report));
    }
    let ty = |name: &str| model.type_decl(name).expect("validated type reference");
    let platforms = model
        .platforms
        .iter()
        .map(|p| ResolvedPlatform {
            decl: p,
            platform_type: ty(&p.platform_type),
            clusters: p
                .clusters
                .iter()
                .map(|c| ResolvedCluster {
                    decl: c,
                    applications: c
                        .applications
                        .iter()
                        .map(|a| ResolvedApplication {
                            decl: a,
                            containers: a
                                .containers
                                .iter()
                                .map(|k| ResolvedContainer {
                                    decl: k,
                                    container_type: ty(&k.container_type),
                                    deploys: k.deploys.as_deref().map(|name| {
                                        let decl = model.database(name).expect("validated deploys");
                                        ResolvedDatabase {
                                            decl,
                                            db_type: ty(&decl.db_type),
                                        }
                                    }),
                                })
                                .collect(),
                        })
                        .collect(),
                })
                .collect(),
        })
        .collect();
    Ok(ResolvedModel { model, platforms })
}
