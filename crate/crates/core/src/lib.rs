//! Exact Hochschild and negative cyclic (co)homology of finite-dimensional
//! dgas and cyclic A∞ algebras with trace, the BV and string brackets,
//! Maurer–Cartan data and the map ρ into functions on the MC moduli.

pub mod algebra_models;
pub mod cli_harness;
pub mod cyclic;
pub mod error;
pub mod graded_core;
pub mod hochschild;
pub mod mc_moduli;
pub mod rho_bridge;

pub use error::{Error, Result};
