//! Exact computations with `FI^m`-modules over a prime field, truncated to a
//! finite box of degrees: homology, torsion, local cohomology and
//! regularity sets.

pub mod category;
pub mod cohomology;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod module;
pub mod regularity;
pub mod report;
pub mod upset;

pub use category::{DegreeBox, DegreeVector, InjectionTuple, Window};
pub use error::{Error, Result};
pub use linalg::{FieldSpec, Matrix};
pub use module::{ModuleMap, SymmetricGroupRep, TruncatedModule};
pub use report::DimTable;
pub use upset::UpSet;
