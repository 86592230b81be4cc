//! Jacobi diagram spaces, their relations and generator families, exact
//! linear algebra over the rationals, and degree-bound bookkeeping for
//! clasper surgery.

pub mod bounds;
pub mod canon;
pub mod classform;
pub mod cli;
pub mod diagram;
pub mod relations;
pub mod space;
pub mod enumerate;
pub mod error;
pub mod formal;
pub mod generators;
pub mod linalg;
pub mod oracle;
pub mod text;

pub use canon::{canonical_form, is_isomorphic, CanonicalCode};
pub use classform::{class_form, ClassCode, ClassForm};
pub use diagram::{Diagram, DiagramBuilder, Endpoint};
pub use error::{Error, Result};
