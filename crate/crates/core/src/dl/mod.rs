//! Deployment model: the metamodel as a syntax tree, its validation rules,
//! and the resolved view consumed by the generators.

mod model;
pub mod resolve;
pub mod validate;

pub use model::*;
pub use resolve::{resolve, ResolveError, ResolvedModel};
pub use validate::{validate, Code, Diagnostic, ValidationReport};
