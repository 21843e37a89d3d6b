//! Input structures: dgas and cyclic A∞ algebras with trace.

pub mod fixtures;
pub mod format;
pub mod model;
pub mod pairing;
pub mod validate;

pub use fixtures::{fixture, fixture_source};
pub use format::{parse_model, serialize_model};
pub use model::{AlgebraModel, Convention, Field, ModelKind, OpTable};
pub use pairing::{pairing, PairingForm};
pub use validate::{cyclicity_defect, stasheff_defect, tuples, validate, validate_a_infinity, validate_dga, ValidationReport};

use crate::error::{Error, Result};

/// Parses and validates; axiom failures under the configured convention are errors.
pub fn load_model(text: &str) -> Result<(AlgebraModel, ValidationReport)> {
    let m = parse_model(text)?;
    let r = validate(&m);
    if !r.passes_under(m.convention) {
        let f: Vec<String> = r
            .failures()
            .filter(|c| c.convention.is_none() || c.convention == Some(m.convention))
            .map(|c| format!("{} at {}", c.axiom, c.witness.clone().unwrap_or_default()))
            .collect();
        return Err(Error::Axiom { axiom: "model".into(), witness: f.join("; ") });
    }
    Ok((m, r))
}
