//! Hochschild chains and cochains: differentials, Connes' operator, cup
//! product, the trace transfer `ω_♯`, and truncated homology.

pub mod chains;
pub mod cochains;
pub mod homology;
pub mod pieces;
pub mod space;
pub mod total;
pub mod unnormalized;

pub use chains::{chain_degree, chain_weight, connes_b, delta, Chain, Path, Tuple};
pub use cochains::{cup, dstar, omega_sharp, ACochain};
pub use homology::{chain_complete, hochschild_table, Coefficients, DimEntry, DualHochschild, ValueHochschild};
pub use pieces::{Grading, LengthBound};
pub use space::ChainSpace;
pub use total::{Total, UChain};
pub use unnormalized::Unnormalized;
