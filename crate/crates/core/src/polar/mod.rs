//! Rank-3 polar spaces: forms, enumeration, relations and caching.

pub mod cache;
pub mod form;
pub mod relation;
pub mod space;

pub use form::{Family, FormSpec};
pub use relation::{Eigenspace, LabelTable, Relation};
pub use space::{BuildOptions, PolarSpace};
