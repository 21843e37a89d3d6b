use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::linalg::Vector;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBasis {
    labels: Vec<String>,
    degrees: Vec<i64>,
    unit: Option<usize>,
    #[serde(skip)]
    index: BTreeMap<String, usize>,
}

impl GradedBasis {
    pub fn new(labels: Vec<String>, degrees: Vec<i64>, unit: Option<usize>) -> Result<Self> {
        if labels.len() != degrees.len() {
            return Err(Error::Input("labels and degrees differ in length".into()));
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate basis label `{l}`")));
            }
        }
        if let Some(u) = unit {
            if u >= labels.len() {
                return Err(Error::Input("unit index out of range".into()));
            }
            if degrees[u] != 0 {
                return Err(Error::Input(format!("unit `{}` must have degree 0", labels[u])));
            }
        }
        Ok(GradedBasis { labels, degrees, unit, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Same labels with negated degrees, as the dual basis.
    pub fn dual(&self) -> GradedBasis {
        GradedBasis {
            labels: self.labels.iter().map(|l| format!("{l}*")).collect(),
            degrees: self.degrees.iter().map(|d| -d).collect(),
            unit: None,
            index: self.labels.iter().enumerate().map(|(i, l)| (format!("{l}*"), i)).collect(),
        }
    }
}

/// Sparse map between graded bases, column `j` is the image of source label `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLinearMap {
    pub shift: i64,
    pub columns: Vec<Vector<usize>>,
}

impl GradedLinearMap {
    pub fn new(src: &GradedBasis, tgt: &GradedBasis, shift: i64, columns: Vec<Vector<usize>>) -> Result<Self> {
        if columns.len() != src.len() {
            return Err(Error::Input("column count differs from source dimension".into()));
        }
        for (j, col) in columns.iter().enumerate() {
            for &i in col.keys() {
                if i >= tgt.len() {
                    return Err(Error::Input("target index out of range".into()));
                }
                if tgt.degree(i) != src.degree(j) + shift {
                    return Err(Error::Input(format!(
                        "entry {} -> {} violates degree shift {shift}",
                        src.label(j),
                        tgt.label(i)
                    )));
                }
            }
        }
        Ok(GradedLinearMap { shift, columns })
    }

    pub fn zero(src: &GradedBasis, shift: i64) -> Self {
        GradedLinearMap { shift, columns: vec![Vector::new(); src.len()] }
    }

    pub fn apply(&self, v: &Vector<usize>) -> Vector<usize> {
        let mut out = Vector::new();
        for (j, c) in v {
            out.add_scaled(&self.columns[*j], c);
        }
        out
    }

    pub fn compose(&self, first: &GradedLinearMap) -> GradedLinearMap {
        GradedLinearMap {
            shift: self.shift + first.shift,
            columns: first.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_core::Scalar;

    #[test]
    fn basis_rules() {
        assert!(GradedBasis::new(vec!["1".into(), "1".into()], vec![0, 0], None).is_err());
        assert!(GradedBasis::new(vec!["u".into()], vec![1], Some(0)).is_err());
        let b = GradedBasis::new(vec!["1".into(), "e".into()], vec![0, 1], Some(0)).unwrap();
        assert_eq!(b.index_of("e"), Some(1));
        assert_eq!(b.dual().degree(1), -1);
    }

    #[test]
    fn degree_shift_enforced() {
        let b = GradedBasis::new(vec!["1".into(), "e".into()], vec![0, 1], Some(0)).unwrap();
        let ok = GradedLinearMap::new(&b, &b, 1, vec![Vector::single(1, Scalar::one()), Vector::new()]);
        assert!(ok.is_ok());
        let bad = GradedLinearMap::new(&b, &b, 0, vec![Vector::single(1, Scalar::one()), Vector::new()]);
        assert!(bad.is_err());
    }
}
