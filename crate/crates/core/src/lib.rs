//! Isonemal prefabrics: symmetry groups, coherence, striping and the
//! catalogue of designs that fall apart.

pub mod error;
pub mod isometry;
pub mod lattice;
pub mod catalogue;
pub mod colouring;
pub mod naming;
pub mod pattern;
pub mod render;
pub mod search;
pub mod species;
pub mod topology;
pub mod symmetry;
pub mod word;

pub use error::{Result, WeaveError};
pub use isometry::{PointOp, SignedIsometry};
pub use pattern::{parse_pattern, Colour, PeriodicPattern, Role, StrandKind, StrandRef};
pub use word::StrandWord;
