//! Connes' long exact sequences, from the short exact sequence of windows
//! `0 → (W+1, U-1) -u-> (W, U) -I-> (W, 0) → 0` and its dual.

use std::ops::RangeInclusive;

use serde::Serialize;

use super::negative::Side;
use crate::error::{Error, Result};
use crate::graded_core::{exact_at, induced_between, FiniteComplex, InducedMap, Vector};
use crate::hochschild::{ChainSpace, Total};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesNode {
    pub side: Side,
    /// `"HH"`, `"HC-"` (window `(W, U)`) or `"HC-'"` (window `(W+1, U-1)`).
    pub group: &'static str,
    pub degree: i64,
    pub weight: i64,
    pub exact: bool,
}

struct Windows<'a> {
    c: Total<'a>,
    cc: Total<'a>,
    ccp: Total<'a>,
}

impl<'a> Windows<'a> {
    /// Chain degrees `lo..=hi` of every group are covered.
    fn new(space: &ChainSpace<'a>, weight: i64, w: usize, u: usize, (lo, hi): (i64, i64)) -> Result<Self> {
        if u == 0 {
            return Err(Error::Input("the Connes sequence needs U ≥ 1".into()));
        }
        Ok(Windows {
            c: Total::new(space, weight, w, 0, lo..=hi)?,
            cc: Total::new(space, weight, w, u, lo..=hi)?,
            ccp: Total::new(space, weight, w + 1, u - 1, lo..=hi)?,
        })
    }

    /// `u: CC'_{k-2} → CC_k`.
    fn u_map(&self, k: i64) -> Result<Vec<Vector<usize>>> {
        (0..self.ccp.dim(k - 2))
            .map(|i| {
                let (s, l) = self.ccp.slot_of(k - 2, i);
                Ok(Vector::unit(self.cc.index(k, s.power + 1, s.degree, l)?))
            })
            .collect()
    }

    /// `I: CC_k → C_k`.
    fn i_map(&self, k: i64) -> Result<Vec<Vector<usize>>> {
        (0..self.cc.dim(k))
            .map(|i| {
                let (s, l) = self.cc.slot_of(k, i);
                if s.power == 0 {
                    Ok(Vector::unit(self.c.index(k, 0, k, l)?))
                } else {
                    Ok(Vector::new())
                }
            })
            .collect()
    }

    /// `B: C_k → CC'_{k-1}`, the connecting map.
    fn b_map(&self, k: i64) -> Result<Vec<Vector<usize>>> {
        (0..self.c.dim(k))
            .map(|l| {
                let mut col = Vector::new();
                for (r, c) in &self.c.block.conn(k)[l] {
                    col.add_term(self.ccp.index(k - 1, 0, k - 1, *r)?, c.clone());
                }
                Ok(col)
            })
            .collect()
    }
}

fn transpose(cols: &[Vector<usize>], rows: usize) -> Vec<Vector<usize>> {
    let mut out = vec![Vector::new(); rows];
    for (j, col) in cols.iter().enumerate() {
        for (r, c) in col {
            out[*r].add_term(j, c.clone());
        }
    }
    out
}

fn induced(src: &FiniteComplex, a: i64, tgt: &FiniteComplex, b: i64, f: &[Vector<usize>]) -> Result<(InducedMap, usize)> {
    let hs = src.homology(a)?;
    let ht = tgt.homology(b)?;
    Ok((induced_between(&hs, &ht, f)?, ht.dim()))
}

/// Exactness at every group of the chain-side sequence around the given degrees.
pub fn connes_les_chains(
    space: &ChainSpace,
    weight: i64,
    w: usize,
    u: usize,
    degrees: RangeInclusive<i64>,
) -> Result<Vec<LesNode>> {
    let win = Windows::new(space, weight, w, u, (*degrees.start() - 2, *degrees.end() + 1))?;
    let (c, cc, ccp) = (&win.c.complex, &win.cc.complex, &win.ccp.complex);
    let mut out = Vec::new();
    let node = |group, degree, exact| LesNode { side: Side::Chains, group, degree, weight, exact };
    for k in degrees {
        // HC'_{k-2} -u-> HC_k -I-> HH_k
        let (fu, _) = induced(ccp, k - 2, cc, k, &win.u_map(k)?)?;
        let (fi, _) = induced(cc, k, c, k, &win.i_map(k)?)?;
        out.push(node("HC-", k, exact_at(&fu, &fi, cc.homology(k)?.dim())));
        // HC_k -I-> HH_k -B-> HC'_{k-1}
        let (fb, _) = induced(c, k, ccp, k - 1, &win.b_map(k)?)?;
        out.push(node("HH", k, exact_at(&fi, &fb, c.homology(k)?.dim())));
        // HH_k -B-> HC'_{k-1} -u-> HC_{k+1}
        let (fu2, _) = induced(ccp, k - 1, cc, k + 1, &win.u_map(k + 1)?)?;
        out.push(node("HC-'", k - 1, exact_at(&fb, &fu2, ccp.homology(k - 1)?.dim())));
    }
    Ok(out)
}

/// Exactness for the dual sequence `HH^p -I-> HC^p -Q-> HC'^{p+2} -𝓑-> HH^{p+1}`.
pub fn connes_les_cochains(
    space: &ChainSpace,
    weight: i64,
    w: usize,
    u: usize,
    degrees: RangeInclusive<i64>,
) -> Result<Vec<LesNode>> {
    let win = Windows::new(space, weight, w, u, (-*degrees.end() - 2, -*degrees.start() + 1))?;
    let (c, cc, ccp) = (win.c.dual()?, win.cc.dual()?, win.ccp.dual()?);
    let mut out = Vec::new();
    let node = |group, degree, exact| LesNode { side: Side::Cochains, group, degree, weight, exact };
    // cochain degree p is chain degree -p; maps are transposes of the chain maps
    let i_dual = |p: i64| -> Result<Vec<Vector<usize>>> { Ok(transpose(&win.i_map(-p)?, win.c.dim(-p))) };
    let q_dual = |p: i64| -> Result<Vec<Vector<usize>>> { Ok(transpose(&win.u_map(-p)?, win.cc.dim(-p))) };
    let b_dual = |p: i64| -> Result<Vec<Vector<usize>>> { Ok(transpose(&win.b_map(-p + 1)?, win.ccp.dim(-p))) };
    for p in degrees {
        // HC'^{p-2} -𝓑-> HH^{p-1} ... start at HC^p: HH^p -I-> HC^p -Q-> HC'^{p+2}
        let (fi, _) = induced(&c, p, &cc, p, &i_dual(p)?)?;
        let (fq, _) = induced(&cc, p, &ccp, p + 2, &q_dual(p)?)?;
        out.push(node("HC-", p, exact_at(&fi, &fq, cc.homology(p)?.dim())));
        // HC^p -Q-> HC'^{p+2} -𝓑-> HH^{p+1}
        let (fb, _) = induced(&ccp, p + 2, &c, p + 1, &b_dual(p + 2)?)?;
        out.push(node("HC-'", p + 2, exact_at(&fq, &fb, ccp.homology(p + 2)?.dim())));
        // HC'^{p+2} -𝓑-> HH^{p+1} -I-> HC^{p+1}
        let (fi2, _) = induced(&c, p + 1, &cc, p + 1, &i_dual(p + 1)?)?;
        out.push(node("HH", p + 1, exact_at(&fb, &fi2, c.homology(p + 1)?.dim())));
    }
    Ok(out)
}
