//! Shifted Young diagrams, generalized Lagrangian flag schemes, and additive
//! bases for K-theory and Grothendieck-Witt theory of Lagrangian Grassmannians.

pub mod basis;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod marked;
pub mod picard;
pub mod registry;
pub mod scheme;

pub use basis::{gw_basis, k_basis, verify_geometry, verify_recursions, witt_table, Decomposition, MapLabel, Summand};
pub use diagram::{enumerate_diagrams, ShiftedDiagram, Step};
pub use error::{Error, Result};
pub use picard::{canonical_sheaf, twist_alignment, PicElement, Twist, Variant};
pub use scheme::{named_scheme, FlagDescriptor};
