//! Maurer–Cartan data for dgas and (through `ν_n`) A∞ models: residual,
//! gauge fields, the tangent complex, the symplectic pairing and
//! Hamiltonian fields.

pub mod find;
pub mod linfty;
pub mod mc;
pub mod tangent;

pub use find::{grid, integer_grid, nilpotent_iteration, verify_points, McPoint, Origin, Strategy};
pub use linfty::Linfty;
pub use mc::Mc;
pub use tangent::{Duality, TangentComplex};
