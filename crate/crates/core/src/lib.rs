//! Polystore deployment toolchain.
//!
//! The pipeline reads a high-level polystore model (`.tyml`), turns it into a
//! deployment model (`.tdl`) using a set of deployment answers and a DBMS
//! catalog, validates the result, and renders container orchestration files
//! (docker-compose and Kubernetes manifests). A small fleet data-volume
//! estimator lives in [`capacity`].

pub mod capacity;
pub mod codegen;
pub mod dl;
pub mod ml;
pub mod span;
pub mod syntax;
pub mod transform;

#[cfg(any(test, feature = "testing"))]
pub mod testing;

pub use dl::{
    validate, Application, Cluster, Container, DatabaseDecl, DlModel, PlatformDecl, Property,
    PropertyValue, TypeCategory, TypeDecl, ValidationReport,
};
pub use span::Span;
pub use syntax::{parse_dl, print_dl, ParseError};
