//! Quiver down-up algebras on the doubled cyclic quiver: exact normal forms,
//! Hilbert series, explicit model checks and graded isomorphism decisions.

pub mod cyclotomic;
pub mod element;
pub mod error;
pub mod gwa;
pub mod hilbert;
pub mod iso;
pub mod linalg;
pub mod maps;
pub mod params;
pub mod quiver;
pub mod rewrite;
pub mod scalar;
pub mod skewgroup;
pub mod structure;

pub use element::{compose, Element};
pub use error::{Error, Result};
pub use params::Parameters;
pub use quiver::{adjacency_matrix, Arrow, Family, Path};
pub use rewrite::{build_system, Preset, ReductionSystem};
pub use scalar::Scalar;
