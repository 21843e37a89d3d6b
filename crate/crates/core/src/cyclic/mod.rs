//! Negative cyclic homology, Connes' sequences, the BV structure on
//! `HH^•(A, A*)` and the string bracket on `HC⁻`.

pub mod bv;
pub mod les;
pub mod negative;
pub mod string;

pub use bv::{Bv, DualClass};
pub use les::{connes_les_chains, connes_les_cochains, LesNode};
pub use negative::{hc_minus_dims, hc_minus_table, NegativeCyclic, Side};
pub use string::{CyclicClass, StringBracket};
