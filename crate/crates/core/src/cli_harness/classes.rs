//! Serialized classes and MC points, with basis labels in place of indices.

use serde::{Deserialize, Serialize};

use crate::algebra_models::AlgebraModel;
use crate::cyclic::CyclicClass;
use crate::error::{Error, Result};
use crate::graded_core::{Scalar, Vector};
use crate::hochschild::Chain;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub chain: Vec<String>,
    pub coeff: Scalar,
}

/// A cochain `Σ α_j v^{-j}` of `HC⁻`; `components[j]` lists the terms of `α_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFile {
    pub degree: i64,
    pub weight: i64,
    pub components: Vec<Vec<Term>>,
}

pub fn chain_terms(m: &AlgebraModel, c: &Chain) -> Vec<Term> {
    c.iter()
        .map(|(t, x)| Term { chain: t.iter().map(|&i| m.label(i).to_string()).collect(), coeff: x.clone() })
        .collect()
}

impl ClassFile {
    pub fn from_class(m: &AlgebraModel, c: &CyclicClass) -> Self {
        ClassFile { degree: c.degree, weight: c.weight, components: c.comps.iter().map(|phi| chain_terms(m, phi)).collect() }
    }

    pub fn to_class(&self, m: &AlgebraModel) -> Result<CyclicClass> {
        let mut comps = Vec::new();
        for terms in &self.components {
            let mut phi = Chain::new();
            for t in terms {
                let tuple = t
                    .chain
                    .iter()
                    .map(|l| m.index_of(l).ok_or_else(|| Error::Input(format!("unknown basis label `{l}`"))))
                    .collect::<Result<Vec<usize>>>()?;
                if tuple.is_empty() {
                    return Err(Error::Input("empty chain in a class file".into()));
                }
                phi.add_term(tuple, t.coeff.clone());
            }
            comps.push(phi);
        }
        Ok(CyclicClass { degree: self.degree, weight: self.weight, comps })
    }
}

/// `x=1,y=-1/2` as an element; `0` or the empty string is zero.
pub fn parse_element(m: &AlgebraModel, s: &str) -> Result<Vector<usize>> {
    let s = s.trim();
    let mut v = Vector::new();
    if s.is_empty() || s == "0" {
        return Ok(v);
    }
    for part in s.split(',') {
        let (l, c) = part
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("`{part}` is not of the form label=coefficient")))?;
        let i = m.index_of(l.trim()).ok_or_else(|| Error::Input(format!("unknown basis label `{}`", l.trim())))?;
        let c: Scalar = c.trim().parse().map_err(|e| Error::Input(format!("bad coefficient `{}`: {e}", c.trim())))?;
        v.add_term(i, c);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::fixture;

    #[test]
    fn class_files_round_trip() {
        let m = fixture("xy").unwrap();
        let mut phi = Chain::new();
        phi.add_term(vec![m.unit(), 1, 2], Scalar::from(3));
        let c = CyclicClass { degree: 0, weight: 2, comps: vec![phi, Chain::new()] };
        let f = ClassFile::from_class(&m, &c);
        let json = serde_json::to_string(&f).unwrap();
        let back: ClassFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_class(&m).unwrap(), c);
    }

    #[test]
    fn elements_parse() {
        let m = fixture("xy").unwrap();
        let v = parse_element(&m, "x=1, y=-1/2").unwrap();
        assert_eq!(m.format_element(&v), m.format_element(&m.element(&[("x", Scalar::one()), ("y", "-1/2".parse().unwrap())]).unwrap()));
        assert!(parse_element(&m, "0").unwrap().is_zero());
        assert!(parse_element(&m, "q=1").is_err());
        assert!(parse_element(&m, "x").is_err());
    }
}
