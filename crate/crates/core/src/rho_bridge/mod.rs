//! The maps `P`, `R` and `ρ` from negative cyclic cohomology to functions on
//! Maurer–Cartan points, gauge invariance of `ρ(α)` and its compatibility
//! with the brackets.

pub mod rho;
pub mod theorem;

pub use rho::{
    along_flow, gauge_derivative, map_p, map_r, p_cycle_defect, p_derivative, rho_derivative, rho_eval, rho_poly,
    verify_gauge_invariance, witness_defect, GaugeReport,
};
pub use theorem::{resolve_classes, verify_theorem1, ClassChoice, Bridge, FieldCheck, Theorem1Record, Theorem1Summary};
