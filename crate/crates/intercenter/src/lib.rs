//! Barycentric frame components, center distances and metric formulas for
//! triangles and tetrahedra, computed from side or edge lengths only.
//!
//! A coordinate oracle in [`oracle`] embeds the same lengths and computes
//! each center from its definition; [`verify`] compares the two on seeded
//! random instances.

pub mod error;
pub mod model;
pub mod oracle;
pub mod tet_centers;
pub mod tet_metrics;
pub mod tolerance;
pub mod tri_centers;
pub mod tri_metrics;
pub mod verify;

pub use error::{GeometryError, Result};
pub use model::{
    validate_tetrahedron, validate_triangle, Components, Components3, Components4, Face, IrTensor4, IrVector3,
    TetraEdges, TriangleSides,
};
pub use tet_centers::TetCenterKind;
pub use tolerance::Tolerance;
pub use tri_centers::TriCenterKind;
