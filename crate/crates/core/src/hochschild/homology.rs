//! Hochschild homology and cohomology tables, and class-level access to
//! `HH^•(A, A*)` and `HH^•(A, A)` at one weight.

use std::ops::RangeInclusive;

use serde::Serialize;

use super::chains::Chain;
use super::cochains::ACochain;
use super::space::{ChainSpace, CochainBlock};
use super::total::Total;
use crate::error::{Error, Result};
use crate::graded_core::{ColumnSolver, FiniteComplex, Homology, Vector};
use std::rc::Rc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coefficients {
    /// `HH_•(A, A)`, chain degrees.
    Chains,
    /// `HH^•(A, A*)`, cochain degrees.
    Dual,
    /// `HH^•(A, A)`, cochain degrees.
    Values,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimEntry {
    pub degree: i64,
    pub weight: i64,
    pub dim: usize,
    /// The truncated piece is provably the whole piece.
    pub complete: bool,
    /// Complete, or unchanged when the window grows by one step.
    pub stabilized: bool,
}

/// Chain-side completeness of degree `k` for window `(w, u)`; `cyclic` adds
/// the requirement that nothing lives beyond `u^U`.
pub fn chain_complete(space: &ChainSpace, k: i64, weight: i64, w: usize, u: usize, cyclic: bool) -> bool {
    let g = &space.grading;
    let m = space.model;
    (k - 1..=k + 1).all(|kk| {
        (0..=u).all(|j| g.chain_bound(m, kk - 2 * j as i64, weight).within(w + j))
            && (!cyclic || g.u_tail_empty(m, kk, weight, u))
    })
}

pub fn values_complete(space: &ChainSpace, q: i64, weight: i64, w: usize) -> bool {
    (q - 1..=q + 1).all(|qq| space.grading.cochain_bound(space.model, qq, weight).within(w))
}

fn homology_dim(cx: &FiniteComplex, k: i64) -> Result<usize> {
    cx.homology_dim(k)
}

pub fn values_complex(block: &CochainBlock) -> Result<FiniteComplex> {
    let mut cx = FiniteComplex::new();
    let (Some(&lo), Some(&hi)) = (block.pieces.keys().next(), block.pieces.keys().last()) else {
        return Ok(cx);
    };
    for q in lo - 1..=hi + 1 {
        cx.set_dim(q, block.count(q));
    }
    for q in lo..=hi {
        if let Some(cols) = block.dstar.get(&q) {
            cx.set_differential(q, cols.clone())?;
        }
    }
    Ok(cx)
}

/// Dimension of Hochschild (co)homology at window `w`.
pub fn hochschild_dim(space: &ChainSpace, coeff: Coefficients, degree: i64, weight: i64, w: usize) -> Result<usize> {
    match coeff {
        Coefficients::Chains => homology_dim(&Total::new(space, weight, w, 0, degree..=degree)?.complex, degree),
        Coefficients::Dual => homology_dim(&Total::new(space, weight, w, 0, -degree..=-degree)?.dual()?, degree),
        Coefficients::Values => homology_dim(&values_complex(&space.cochain_block(weight, w))?, degree),
    }
}

/// Table over the given degrees and weights. The space must allow chains of
/// length `w + 1` so the stabilization test can run.
pub fn hochschild_table(
    space: &ChainSpace,
    coeff: Coefficients,
    degrees: RangeInclusive<i64>,
    weights: RangeInclusive<i64>,
    w: usize,
) -> Result<Vec<DimEntry>> {
    let mut out = Vec::new();
    let chain_range = match coeff {
        Coefficients::Dual => -*degrees.end()..=-*degrees.start(),
        _ => degrees.clone(),
    };
    for weight in weights {
        let (now, next): (FiniteComplex, FiniteComplex) = match coeff {
            Coefficients::Chains => (
                Total::new(space, weight, w, 0, chain_range.clone())?.complex,
                Total::new(space, weight, w + 1, 0, chain_range.clone())?.complex,
            ),
            Coefficients::Dual => (
                Total::new(space, weight, w, 0, chain_range.clone())?.dual()?,
                Total::new(space, weight, w + 1, 0, chain_range.clone())?.dual()?,
            ),
            Coefficients::Values => (
                values_complex(&space.cochain_block(weight, w))?,
                values_complex(&space.cochain_block(weight, w + 1))?,
            ),
        };
        for k in degrees.clone() {
            let dim = homology_dim(&now, k)?;
            let complete = match coeff {
                Coefficients::Chains => chain_complete(space, k, weight, w, 0, false),
                Coefficients::Dual => chain_complete(space, -k, weight, w, 0, false),
                Coefficients::Values => values_complete(space, k, weight, w),
            };
            let stabilized = complete || dim == homology_dim(&next, k)?;
            out.push(DimEntry { degree: k, weight, dim, complete, stabilized });
        }
    }
    Ok(out)
}

/// `HH^•(A, A*)` at one weight with classes as functionals on chain tuples.
pub struct DualHochschild<'a> {
    pub total: Total<'a>,
    pub complex: FiniteComplex,
}

impl<'a> DualHochschild<'a> {
    /// Cohomology available in cochain degrees `degrees`.
    pub fn new(space: &ChainSpace<'a>, weight: i64, w: usize, degrees: RangeInclusive<i64>) -> Result<Self> {
        let total = Total::new(space, weight, w, 0, -*degrees.end()..=-*degrees.start())?;
        let complex = total.dual()?;
        Ok(DualHochschild { total, complex })
    }

    pub fn weight(&self) -> i64 {
        self.total.weight
    }

    pub fn homology(&self, p: i64) -> Result<Homology> {
        self.complex.homology(p)
    }

    /// Functional of degree `p` from window coordinates.
    pub fn functional(&self, p: i64, v: &Vector<usize>) -> Chain {
        self.total.component(-p, v, 0)
    }

    /// Window coordinates of a functional; values on chains outside the window are dropped.
    pub fn coords(&self, p: i64, phi: &Chain) -> Vector<usize> {
        let n = self.complex.dim(p);
        let piece = self.total.block.piece(-p);
        phi.filter_map_keys(|t| piece.index_of(t).filter(|&i| i < n))
    }

    /// `p`-cocycle test and class coordinates.
    pub fn class_of(&self, p: i64, phi: &Chain) -> Result<Option<Vector<usize>>> {
        Ok(self.homology(p)?.coords(&self.coords(p, phi)))
    }

    pub fn is_null(&self, p: i64, phi: &Chain) -> Result<bool> {
        let h = self.homology(p)?;
        let v = self.coords(p, phi);
        if !h.is_cycle(&v) {
            return Err(Error::Verification(format!("functional of degree {p} is not a cocycle")));
        }
        Ok(h.is_boundary(&v))
    }

    /// `φ ∘ B` as a functional of degree `p - 1`.
    pub fn after_b(&self, p: i64, phi: &Chain) -> Chain {
        let k = 1 - p;
        let mut out = Chain::new();
        let piece = self.total.block.piece(k);
        let src = self.total.block.piece(-p);
        let conn = self.total.block.conn(k);
        let n = self.total.dim(k);
        for (i, t) in piece.keys.iter().enumerate().take(n) {
            let mut acc = crate::graded_core::Scalar::zero();
            for (r, c) in &conn[i] {
                let key = &src.keys[*r];
                acc += &(c * &phi.coeff(key));
            }
            out.add_term(t.clone(), acc);
        }
        out
    }
}

/// `HH^•(A, A)` at one weight, arity `≤ w`.
pub struct ValueHochschild {
    pub block: Rc<CochainBlock>,
    pub complex: FiniteComplex,
}

impl ValueHochschild {
    pub fn new(space: &ChainSpace, weight: i64, w: usize) -> Result<Self> {
        let block = space.cochain_block(weight, w);
        let complex = values_complex(&block)?;
        Ok(ValueHochschild { block, complex })
    }

    /// Basis of cocycles of degree `q`.
    pub fn cocycles(&self, q: i64) -> Vec<ACochain> {
        let n = self.block.count(q);
        let cols = self.block.dstar.get(&q).cloned().unwrap_or_else(|| vec![Vector::new(); n]);
        ColumnSolver::new(&cols).kernel().iter().map(|z| self.block.cochain(q, z)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::fixture;
    use crate::hochschild::Path;

    // HKR: HH_•(Λ(odd generators)) = Λ ⊗ k[dx..], with dx in chain degree 0
    fn exterior_hkr(gens: usize, degree: i64, weight: i64) -> usize {
        let a = degree;
        if a < 0 || a as usize > gens || weight < a {
            return 0;
        }
        let binom = |n: i64, k: i64| (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1));
        let poly = weight - a;
        (binom(gens as i64, a) * binom(poly + gens as i64 - 1, gens as i64 - 1)) as usize
    }

    #[test]
    fn exterior_algebras_match_hkr() {
        for (name, gens) in [("eps", 1), ("xy", 2)] {
            let m = fixture(name).unwrap();
            let sp = ChainSpace::new(&m, Path::Dga, 8).unwrap();
            let t = hochschild_table(&sp, Coefficients::Chains, -1..=3, 0..=5, 6).unwrap();
            for e in &t {
                assert!(e.complete, "{name} {e:?}");
                assert_eq!(e.dim, exterior_hkr(gens, e.degree, e.weight), "{name} {e:?}");
            }
            let d = hochschild_table(&sp, Coefficients::Dual, -3..=1, 0..=5, 6).unwrap();
            for e in &d {
                assert_eq!(e.dim, exterior_hkr(gens, -e.degree, e.weight), "{name} dual {e:?}");
            }
        }
    }

    #[test]
    fn ground_field_is_one_dimensional() {
        let m = fixture("ground").unwrap();
        let sp = ChainSpace::new(&m, Path::Dga, 4).unwrap();
        let t = hochschild_table(&sp, Coefficients::Chains, -2..=2, 0..=0, 3).unwrap();
        let dims: Vec<usize> = t.iter().map(|e| e.dim).collect();
        assert_eq!(dims, vec![0, 0, 1, 0, 0]);
        assert!(t.iter().all(|e| e.complete));
    }
}
