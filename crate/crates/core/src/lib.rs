//! Simplicial Z/2 cohomology, characteristic classes, the toric code and
//! generalized double semion lattice models, and the gauge-gravity TQFTs
//! that describe their ground states.

pub mod catalog;
pub mod char_classes;
pub mod cohomology;
pub mod error;
pub mod exact;
pub mod gf2;
pub mod lattice;
pub mod reports;
pub mod simplicial;
pub mod tqft;
pub mod validation;

pub use catalog::{parse_manifold, ManifoldRecord};
pub use char_classes::Lagrangian;
pub use cohomology::{Cochain, CohomologyBasis, CohomologyClass, CohomologyRing};
pub use error::{Error, Result};
pub use gf2::{BitVector, Gf2Matrix};
pub use lattice::{GroundStateReport, Model, SpinConfiguration};
pub use simplicial::{Simplex, SimplicialComplex};
pub use tqft::{PreparedManifold, TheoryHandle};
