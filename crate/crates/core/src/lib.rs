//! Regular sets of lines in finite classical polar spaces of rank 3.
//!
//! The crate enumerates the six families of rank-3 polar spaces over small
//! fields, realizes the five-class association scheme on their lines and
//! provides exact tools to analyse, construct, bound and search for line
//! sets whose characteristic vectors live in few eigenspaces.

pub mod algebra;
pub mod analysis;
pub mod constructions;
pub mod error;
pub mod lp;
pub mod params;
pub mod polar;
pub mod scheme;
pub mod search;

pub use error::{Error, Result};
pub use params::SchemeParams;
pub use polar::{Eigenspace, Family, PolarSpace, Relation};
pub use scheme::SchemeTables;
