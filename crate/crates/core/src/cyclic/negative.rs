//! Negative cyclic homology `H(C[u]/u^{U+1}, δ + uB)` and its dual
//! `H(Hom(C[u]/u^{U+1}, k))` with components `α_i` of degree `p + 2i`.

use std::ops::RangeInclusive;

use crate::error::Result;
use crate::graded_core::{FiniteComplex, Homology, Vector};
use crate::hochschild::homology::{chain_complete, DimEntry};
use crate::hochschild::{Chain, ChainSpace, Total};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Chains,
    Cochains,
}

fn chain_range(side: Side, degrees: &RangeInclusive<i64>) -> RangeInclusive<i64> {
    match side {
        Side::Chains => degrees.clone(),
        Side::Cochains => -*degrees.end()..=-*degrees.start(),
    }
}

fn window_complex(space: &ChainSpace, side: Side, degrees: &RangeInclusive<i64>, weight: i64, w: usize, u: usize) -> Result<FiniteComplex> {
    let t = Total::new(space, weight, w, u, chain_range(side, degrees))?;
    match side {
        Side::Chains => Ok(t.complex),
        Side::Cochains => t.dual(),
    }
}

/// `dim HC⁻` at one weight for each degree in `degrees`, window `(w, u)`.
pub fn hc_minus_dims(
    space: &ChainSpace,
    side: Side,
    degrees: RangeInclusive<i64>,
    weight: i64,
    w: usize,
    u: usize,
) -> Result<Vec<usize>> {
    let cx = window_complex(space, side, &degrees, weight, w, u)?;
    degrees.map(|k| cx.homology_dim(k)).collect()
}

/// Dimensions of `HC⁻` per degree and weight, with completeness and
/// stabilization against the window `(w + 1, u + 1)`. The larger window is
/// only built when some entry is not complete.
pub fn hc_minus_table(
    space: &ChainSpace,
    side: Side,
    degrees: RangeInclusive<i64>,
    weights: RangeInclusive<i64>,
    w: usize,
    u: usize,
) -> Result<Vec<DimEntry>> {
    let mut out = Vec::new();
    for weight in weights {
        let now = window_complex(space, side, &degrees, weight, w, u)?;
        let mut next: Option<FiniteComplex> = None;
        for k in degrees.clone() {
            let dim = now.homology_dim(k)?;
            let ck = if side == Side::Chains { k } else { -k };
            let complete = chain_complete(space, ck, weight, w, u, true);
            let stabilized = complete || {
                if next.is_none() {
                    next = Some(window_complex(space, side, &degrees, weight, w + 1, u + 1)?);
                }
                dim == next.as_ref().unwrap().homology_dim(k)?
            };
            out.push(DimEntry { degree: k, weight, dim, complete, stabilized });
        }
    }
    Ok(out)
}

/// Dual negative cyclic complex at one weight.
pub struct NegativeCyclic<'a> {
    pub total: Total<'a>,
    pub complex: FiniteComplex,
}

impl<'a> NegativeCyclic<'a> {
    /// Cohomology available in cochain degrees `degrees`.
    pub fn new(space: &ChainSpace<'a>, weight: i64, w: usize, u: usize, degrees: RangeInclusive<i64>) -> Result<Self> {
        let total = Total::new(space, weight, w, u, -*degrees.end()..=-*degrees.start())?;
        let complex = total.dual()?;
        Ok(NegativeCyclic { total, complex })
    }

    pub fn weight(&self) -> i64 {
        self.total.weight
    }

    pub fn homology(&self, p: i64) -> Result<Homology> {
        self.complex.homology(p)
    }

    /// Components `α_0, …, α_U` of a degree-`p` cochain.
    pub fn components(&self, p: i64, v: &Vector<usize>) -> Vec<Chain> {
        (0..=self.total.u).map(|j| self.total.component(-p, v, j)).collect()
    }

    /// Window coordinates from components; values outside the window are dropped.
    pub fn coords(&self, p: i64, comps: &[Chain]) -> Vector<usize> {
        let k = -p;
        let mut out = Vector::new();
        for s in self.total.slots(k) {
            let Some(phi) = comps.get(s.power) else { continue };
            let piece = self.total.block.piece(s.degree);
            for (t, c) in phi {
                if let Some(l) = piece.index_of(t).filter(|&l| l < s.count) {
                    out.add_term(s.offset + l, c.clone());
                }
            }
        }
        out
    }
}
