//! Finite windows of `C[u]/u^{U+1}` with differential `δ + uB` at one weight.
//! The `u^j` component holds chains of bar length `≤ W + j`; this window is a
//! subcomplex, and `U = 0` gives the Hochschild complex itself.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::rc::Rc;

use super::chains::{Chain, Tuple};
use super::space::{ChainBlock, ChainSpace};
use crate::error::{Error, Result};
use crate::graded_core::{sign, FiniteComplex, Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub power: usize,
    pub degree: i64,
    pub offset: usize,
    pub count: usize,
}

/// Total complex (chain side) for one weight and window `(W, U)`.
#[derive(Clone, Debug)]
pub struct Total<'a> {
    pub weight: i64,
    pub w: usize,
    pub u: usize,
    pub block: Rc<ChainBlock<'a>>,
    pub complex: FiniteComplex,
    layout: BTreeMap<i64, Vec<Slot>>,
}

/// Element of the total complex: `(u-power, tuple) -> coefficient`.
pub type UChain = Vector<(usize, Tuple)>;

impl<'a> Total<'a> {
    /// Window for homology in chain degrees `degrees`; the layout covers one
    /// more degree on each side.
    pub fn new(space: &ChainSpace<'a>, weight: i64, w: usize, u: usize, degrees: RangeInclusive<i64>) -> Result<Self> {
        if w + u > space.max_len() {
            return Err(Error::Input(format!(
                "window ({w}, {u}) needs chains of length {} but the space stops at {}",
                w + u,
                space.max_len()
            )));
        }
        let block = space.block(weight);
        let mut layout: BTreeMap<i64, Vec<Slot>> = BTreeMap::new();
        let (lo, hi) = (*degrees.start() - 1, *degrees.end() + 1);
        for k in lo..=hi {
            let mut off = 0;
            let mut slots = Vec::new();
            for j in 0..=u {
                let d = k - 2 * j as i64;
                let count = block.count(d, w + j);
                if count > 0 {
                    slots.push(Slot { power: j, degree: d, offset: off, count });
                    off += count;
                }
            }
            layout.insert(k, slots);
        }
        let mut complex = FiniteComplex::new();
        for (k, slots) in &layout {
            complex.set_dim(*k, slots.iter().map(|s| s.count).sum());
        }
        let mut t = Total { weight, w, u, block, complex, layout };
        for k in lo..hi {
            let mut cols = Vec::new();
            for s in t.layout[&k].clone() {
                let delta = t.block.delta(s.degree);
                let conn = (s.power < u).then(|| t.block.conn(s.degree));
                for i in 0..s.count {
                    let mut col = Vector::new();
                    for (r, c) in &delta[i] {
                        col.add_term(t.index(k + 1, s.power, s.degree + 1, *r)?, c.clone());
                    }
                    if let Some(conn) = &conn {
                        for (r, c) in &conn[i] {
                            col.add_term(t.index(k + 1, s.power + 1, s.degree - 1, *r)?, c.clone());
                        }
                    }
                    cols.push(col);
                }
            }
            t.complex.set_differential(k, cols)?;
        }
        Ok(t)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.layout.keys().copied()
    }

    pub fn slots(&self, k: i64) -> &[Slot] {
        self.layout.get(&k).map_or(&[], |v| v)
    }

    pub fn dim(&self, k: i64) -> usize {
        self.complex.dim(k)
    }

    pub fn index(&self, k: i64, power: usize, degree: i64, local: usize) -> Result<usize> {
        self.slots(k)
            .iter()
            .find(|s| s.power == power && s.degree == degree && local < s.count)
            .map(|s| s.offset + local)
            .ok_or_else(|| Error::Integrity(format!("index ({power}, {degree}, {local}) outside the window at degree {k}")))
    }

    pub fn slot_of(&self, k: i64, idx: usize) -> (Slot, usize) {
        let s = *self.slots(k).iter().find(|s| idx >= s.offset && idx < s.offset + s.count).expect("index in range");
        (s, idx - s.offset)
    }

    pub fn to_uchain(&self, k: i64, v: &Vector<usize>) -> UChain {
        v.map_keys(|&i| {
            let (s, l) = self.slot_of(k, i);
            (s.power, self.block.tuple(s.degree, l))
        })
    }

    pub fn from_uchain(&self, k: i64, x: &UChain) -> Result<Vector<usize>> {
        let mut out = Vector::new();
        for ((j, t), c) in x {
            let d = k - 2 * *j as i64;
            let l = self
                .block
                .piece(d)
                .index_of(t)
                .ok_or_else(|| Error::Truncation(format!("tuple {t:?} is not in degree {d}")))?;
            out.add_term(self.index(k, *j, d, l)?, c.clone());
        }
        Ok(out)
    }

    /// Component of power `j` as a plain chain.
    pub fn component(&self, k: i64, v: &Vector<usize>, j: usize) -> Chain {
        let mut out = Chain::new();
        for (i, c) in v {
            let (s, l) = self.slot_of(k, *i);
            if s.power == j {
                out.add_term(self.block.tuple(s.degree, l), c.clone());
            }
        }
        out
    }

    /// Dual cochain complex: degree `p` is the dual of chain degree `-p`, and
    /// `d^p = -(-1)^p (d_{-p-1})^T`.
    pub fn dual(&self) -> Result<FiniteComplex> {
        let mut dual = FiniteComplex::new();
        for k in self.degrees() {
            dual.set_dim(-k, self.dim(k));
        }
        for k in self.degrees() {
            // d_k: chain k -> k+1 dualizes to cochain -(k+1) -> -k
            if !self.layout.contains_key(&(k + 1)) {
                continue;
            }
            let p = -(k + 1);
            let s = -sign::sign_of(p);
            let mut cols = vec![Vector::new(); self.dim(k + 1)];
            for j in 0..self.dim(k) {
                for (r, c) in &self.complex.apply(k, &Vector::unit(j)) {
                    cols[*r].add_term(j, c * &s);
                }
            }
            dual.set_differential(p, cols)?;
        }
        Ok(dual)
    }
}

/// Plain evaluation of a cochain (dual coordinates) on a chain (coordinates).
pub fn evaluate(alpha: &Vector<usize>, c: &Vector<usize>) -> Scalar {
    alpha.dot(c)
}
