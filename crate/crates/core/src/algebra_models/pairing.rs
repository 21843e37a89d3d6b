use serde::Serialize;

use super::model::AlgebraModel;
use crate::error::{Error, Result};
use crate::graded_core::{induced_map_on_homology, sign, FiniteComplex, GradedLinearMap, Scalar, Vector};

#[derive(Clone, Debug, Serialize)]
pub struct QuasiIso {
    pub is_iso: bool,
    pub rank: usize,
    pub source_dims: Vec<(i64, usize)>,
    pub target_dims: Vec<(i64, usize)>,
}

#[derive(Clone, Debug)]
pub struct PairingForm {
    /// `gram[i][j] = ω(i, j)`.
    pub gram: Vec<Vec<Scalar>>,
    /// `ω: A → A*` into the dual basis; degree `-D`.
    pub map: GradedLinearMap,
    pub degree: i64,
    pub nondegenerate: bool,
    pub quasi_iso: QuasiIso,
}

impl PairingForm {
    pub fn require_quasi_iso(&self) -> Result<()> {
        if self.quasi_iso.is_iso {
            Ok(())
        } else {
            Err(Error::Integrity(format!(
                "ω is not a quasi-isomorphism: homology {:?} vs {:?}, induced rank {}",
                self.quasi_iso.source_dims, self.quasi_iso.target_dims, self.quasi_iso.rank
            )))
        }
    }
}

/// Complexes `(A, μ₁)` and `(A*, μ₁^∨)` with `A*` shifted by `D` so that the
/// sign-twisted `ω` preserves degree.
fn complexes(m: &AlgebraModel, dd: i64) -> Result<(FiniteComplex, FiniteComplex, Vec<(i64, Vec<usize>)>)> {
    let n = m.dim();
    let mut by_deg: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    for i in 0..n {
        by_deg.entry(m.deg(i)).or_default().push(i);
    }
    let lo = *by_deg.keys().next().unwrap_or(&0) - 1;
    let hi = *by_deg.keys().last().unwrap_or(&0) + 1;
    let pos = |i: usize| by_deg[&m.deg(i)].iter().position(|&x| x == i).unwrap();
    // dual basis label j sits at functional degree -|j|, shifted by D
    let mut dual_by_deg: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    for i in 0..n {
        dual_by_deg.entry(dd - m.deg(i)).or_default().push(i);
    }
    let dpos = |i: usize| dual_by_deg[&(dd - m.deg(i))].iter().position(|&x| x == i).unwrap();
    let mut a = FiniteComplex::new();
    let mut b = FiniteComplex::new();
    let klo = lo.min(dd - hi);
    let khi = hi.max(dd - lo);
    for k in klo..=khi {
        a.set_dim(k, by_deg.get(&k).map_or(0, |v| v.len()));
        b.set_dim(k, dual_by_deg.get(&k).map_or(0, |v| v.len()));
    }
    for k in klo..khi {
        let mut cols = Vec::new();
        for &i in by_deg.get(&k).map_or(&[][..], |v| v) {
            let mut col = Vector::new();
            for (o, c) in m.d(i).cloned().unwrap_or_default().iter() {
                col.add_term(pos(*o), c.clone());
            }
            cols.push(col);
        }
        a.set_differential(k, cols)?;
        // (μ₁^∨ φ)(b) = -(-1)^{|φ|} φ(μ₁ b)
        let mut cols = Vec::new();
        for &j in dual_by_deg.get(&k).map_or(&[][..], |v| v) {
            let s = -sign::sign_of(m.deg(j));
            let mut col = Vector::new();
            for i in 0..n {
                if let Some(c) = m.d(i).and_then(|d| d.get(&j)) {
                    col.add_term(dpos(i), c * &s);
                }
            }
            cols.push(col);
        }
        b.set_differential(k, cols)?;
    }
    let degs = by_deg.into_iter().collect();
    Ok((a, b, degs))
}

pub fn quasi_iso_check(m: &AlgebraModel) -> Result<QuasiIso> {
    let dd = m.trace_degree().ok_or_else(|| Error::Integrity("trace has no single degree".into()))?;
    let (a, b, _) = complexes(m, dd)?;
    let n = m.dim();
    let mut dual_by_deg: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    for i in 0..n {
        dual_by_deg.entry(dd - m.deg(i)).or_default().push(i);
    }
    let mut is_iso = true;
    let mut rank = 0;
    let mut sd = Vec::new();
    let mut td = Vec::new();
    let map_at = |k: i64| -> Vec<Vector<usize>> {
        let src: Vec<usize> = (0..n).filter(|&i| m.deg(i) == k).collect();
        let tgt = dual_by_deg.get(&k).cloned().unwrap_or_default();
        src.iter()
            .map(|&i| {
                let s = sign::sign_of(dd * k);
                let mut col = Vector::new();
                for (p, &j) in tgt.iter().enumerate() {
                    col.add_term(p, m.omega(i, j).neg_if(!s.is_one()));
                }
                col
            })
            .collect()
    };
    let ks: Vec<i64> = a.degrees().map(|(k, _)| k).collect();
    for &k in &ks {
        let f = map_at(k);
        let prev = map_at(k - 1);
        let next = map_at(k + 1);
        let im = induced_map_on_homology(
            &a,
            &b,
            k,
            &f,
            (a.dim(k - 1) > 0).then_some(&prev[..]),
            (a.dim(k + 1) > 0 || b.dim(k + 1) > 0).then_some(&next[..]),
        )?;
        let hs = a.homology(k)?.dim();
        let ht = b.homology(k)?.dim();
        if hs > 0 {
            sd.push((k, hs));
        }
        if ht > 0 {
            td.push((k, ht));
        }
        rank += im.rank;
        is_iso &= im.is_iso;
    }
    Ok(QuasiIso { is_iso, rank, source_dims: sd, target_dims: td })
}

pub fn pairing(m: &AlgebraModel) -> Result<PairingForm> {
    let n = m.dim();
    let gram: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| m.omega(i, j)).collect()).collect();
    let dd = m.trace_degree().ok_or_else(|| Error::Integrity("trace has no single degree".into()))?;
    let dual = m.basis.dual();
    let cols = (0..n).map(|i| (0..n).map(|j| (j, gram[i][j].clone())).collect()).collect();
    let map = GradedLinearMap::new(&m.basis, &dual, -dd, cols)?;
    let rows: Vec<Vector<usize>> = gram.iter().map(|r| r.iter().cloned().enumerate().collect()).collect();
    let nondegenerate = crate::graded_core::linalg::rank(&rows) == n;
    let quasi_iso = quasi_iso_check(m)?;
    Ok(PairingForm { gram, map, degree: -dd, nondegenerate, quasi_iso })
}
