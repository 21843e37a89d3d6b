use super::format::parse_model;
use super::model::AlgebraModel;
use crate::error::{Error, Result};

pub const FIXTURES: &[(&str, &str)] = &[
    ("ground", include_str!("../../fixtures/ground.alg")),
    ("eps", include_str!("../../fixtures/eps.alg")),
    ("dual", include_str!("../../fixtures/dual.alg")),
    ("xy", include_str!("../../fixtures/xy.alg")),
    ("m2", include_str!("../../fixtures/m2.alg")),
    ("ainf", include_str!("../../fixtures/ainf.alg")),
    ("cone", include_str!("../../fixtures/cone.alg")),
    ("moment", include_str!("../../fixtures/moment.alg")),
    ("broken", include_str!("../../fixtures/broken.alg")),
];

/// Valid bundled models, in a fixed order.
pub const VALID: &[&str] = &["ground", "eps", "dual", "xy", "m2", "ainf", "cone", "moment"];

pub fn fixture_source(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn fixture(name: &str) -> Result<AlgebraModel> {
    let src = fixture_source(name).ok_or_else(|| Error::Input(format!("no bundled fixture `{name}`")))?;
    parse_model(src)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::{serialize_model, validate, Convention};

    #[test]
    fn bundled_models_validate() {
        for name in VALID {
            let m = fixture(name).unwrap();
            let r = validate(&m);
            let bad: Vec<_> = r.failures().filter(|c| c.convention != Some(Convention::PaperLiteral)).collect();
            assert!(bad.is_empty(), "{name}: {bad:?}");
        }
    }

    #[test]
    fn canonical_serialization_is_a_fixed_point() {
        for (name, _) in FIXTURES {
            let m = fixture(name).unwrap();
            let s = serialize_model(&m);
            assert_eq!(serialize_model(&parse_model(&s).unwrap()), s, "{name}");
        }
    }

    #[test]
    fn broken_fixture_names_its_axioms() {
        let m = fixture("broken").unwrap();
        let r = validate(&m);
        for ax in ["leibniz", "d-squared", "trace-closed", "degree"] {
            assert!(!r.get(ax, None).unwrap().passed, "{ax}");
        }
        assert!(r.passing_conventions().is_empty());
    }

    #[test]
    fn matrix_algebra_conventions() {
        let r = validate(&fixture("m2").unwrap());
        assert!(r.passes_under(Convention::GradedSymmetric));
        assert!(!r.get("trace-symmetry", Some(Convention::PaperLiteral)).unwrap().passed);
    }
}
