//! Per-weight bases and differential matrices, cached.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use super::chains::{self, Chain, Path, Tuple};
use super::cochains::{self, cochain_degree, ACochain};
use super::pieces::{bar_tuples, Grading, Piece};
use crate::algebra_models::AlgebraModel;
use crate::error::{Error, Result};
use crate::graded_core::Vector;

/// Chains of one weight, up to the space's maximal length, built lazily by degree.
#[derive(Debug)]
pub struct ChainBlock<'a> {
    pub weight: i64,
    model: &'a AlgebraModel,
    path: Path,
    max_len: usize,
    pieces: RefCell<BTreeMap<i64, Rc<Piece<Tuple>>>>,
    delta: RefCell<BTreeMap<i64, Rc<Vec<Vector<usize>>>>>,
    conn: RefCell<BTreeMap<i64, Rc<Vec<Vector<usize>>>>>,
}

impl<'a> ChainBlock<'a> {
    fn new(model: &'a AlgebraModel, path: Path, max_len: usize, weight: i64) -> Self {
        ChainBlock {
            weight,
            model,
            path,
            max_len,
            pieces: RefCell::default(),
            delta: RefCell::default(),
            conn: RefCell::default(),
        }
    }

    /// Chains of degree `k`, ordered by (length, lexicographic).
    pub fn piece(&self, k: i64) -> Rc<Piece<Tuple>> {
        if let Some(p) = self.pieces.borrow().get(&k) {
            return p.clone();
        }
        let m = self.model;
        let mut ts = Vec::new();
        for a0 in 0..m.dim() {
            for v in bar_tuples(m, self.weight - m.weight(a0), Some(k - m.deg(a0)), self.max_len) {
                let mut t = vec![a0];
                t.extend(v);
                ts.push(t);
            }
        }
        ts.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let p = Rc::new(Piece::new(ts, |t| t.len() - 1, self.max_len));
        self.pieces.borrow_mut().insert(k, p.clone());
        p
    }

    pub fn count(&self, k: i64, len: usize) -> usize {
        self.piece(k).count_upto(len)
    }

    pub fn tuple(&self, k: i64, i: usize) -> Tuple {
        self.piece(k).keys[i].clone()
    }

    /// Column `i`: `δ` of the `i`-th chain of degree `k`, in degree `k+1` indices.
    pub fn delta(&self, k: i64) -> Rc<Vec<Vector<usize>>> {
        if let Some(d) = self.delta.borrow().get(&k) {
            return d.clone();
        }
        let src = self.piece(k);
        let tgt = self.piece(k + 1);
        let cols: Vec<Vector<usize>> = src
            .keys
            .iter()
            .map(|t| {
                let d = chains::delta(self.model, self.path, &chains::unit_chain(t.clone()));
                let di = d.filter_map_keys(|x| tgt.index_of(x));
                assert_eq!(di.len(), d.len(), "δ left the weight block");
                di
            })
            .collect();
        let cols = Rc::new(cols);
        self.delta.borrow_mut().insert(k, cols.clone());
        cols
    }

    /// Column `i`: `B` of the `i`-th chain of degree `k`, in degree `k-1`
    /// indices; images longer than the maximal length are dropped.
    pub fn conn(&self, k: i64) -> Rc<Vec<Vector<usize>>> {
        if let Some(d) = self.conn.borrow().get(&k) {
            return d.clone();
        }
        let src = self.piece(k);
        let tgt = self.piece(k - 1);
        let cols: Vec<Vector<usize>> = src
            .keys
            .iter()
            .map(|t| chains::connes_b(self.model, &chains::unit_chain(t.clone())).filter_map_keys(|x| tgt.index_of(x)))
            .collect();
        let cols = Rc::new(cols);
        self.conn.borrow_mut().insert(k, cols.clone());
        cols
    }

    /// Coordinates of a chain supported in degree `k`.
    pub fn coords(&self, k: i64, x: &Chain) -> Result<Vector<usize>> {
        let p = self.piece(k);
        let mut out = Vector::new();
        for (t, c) in x {
            let i = p
                .index_of(t)
                .ok_or_else(|| Error::Truncation(format!("chain {t:?} is outside degree {k}, weight {}", self.weight)))?;
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn chain(&self, k: i64, v: &Vector<usize>) -> Chain {
        let p = self.piece(k);
        v.map_keys(|&i| p.keys[i].clone())
    }
}

/// `A`-valued cochains of one weight, arities `≤ w`, with `δ*` truncated at `w`.
#[derive(Debug)]
pub struct CochainBlock {
    pub weight: i64,
    pub arity: usize,
    pub pieces: BTreeMap<i64, Piece<(Tuple, usize)>>,
    pub dstar: BTreeMap<i64, Vec<Vector<usize>>>,
}

impl CochainBlock {
    pub fn count(&self, q: i64) -> usize {
        self.pieces.get(&q).map_or(0, |p| p.len())
    }

    pub fn coords(&self, q: i64, f: &ACochain) -> Result<Vector<usize>> {
        let p = self.pieces.get(&q);
        let mut out = Vector::new();
        for (key, c) in f {
            let i = p.and_then(|p| p.index_of(key)).ok_or_else(|| {
                Error::Truncation(format!("cochain entry {key:?} is outside degree {q}, weight {}", self.weight))
            })?;
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn cochain(&self, q: i64, v: &Vector<usize>) -> ACochain {
        v.map_keys(|&i| self.pieces[&q].keys[i].clone())
    }
}

pub struct ChainSpace<'a> {
    pub model: &'a AlgebraModel,
    pub path: Path,
    pub grading: Grading,
    max_len: usize,
    blocks: RefCell<BTreeMap<i64, Rc<ChainBlock<'a>>>>,
    cblocks: RefCell<BTreeMap<(i64, usize), Rc<CochainBlock>>>,
}

impl<'a> ChainSpace<'a> {
    /// Chains of bar length up to `max_len` are enumerated.
    pub fn new(model: &'a AlgebraModel, path: Path, max_len: usize) -> Result<Self> {
        if path == Path::Dga && !model.is_dga() {
            return Err(Error::Input(format!("model `{}` has higher operations; use the bar path", model.name)));
        }
        Ok(ChainSpace {
            model,
            path,
            grading: Grading::new(model),
            max_len,
            blocks: RefCell::default(),
            cblocks: RefCell::default(),
        })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn block(&self, weight: i64) -> Rc<ChainBlock<'a>> {
        self.blocks
            .borrow_mut()
            .entry(weight)
            .or_insert_with(|| Rc::new(ChainBlock::new(self.model, self.path, self.max_len, weight)))
            .clone()
    }

    /// `A`-valued cochains of the given weight with arity `≤ w`.
    pub fn cochain_block(&self, weight: i64, w: usize) -> Rc<CochainBlock> {
        if let Some(b) = self.cblocks.borrow().get(&(weight, w)) {
            return b.clone();
        }
        let b = Rc::new(self.build_cochain_block(weight, w));
        self.cblocks.borrow_mut().insert((weight, w), b.clone());
        b
    }

    fn build_cochain_block(&self, weight: i64, w: usize) -> CochainBlock {
        let m = self.model;
        let top = m.trace_weight().unwrap_or(0);
        let mut by_deg: BTreeMap<i64, Vec<(Tuple, usize)>> = BTreeMap::new();
        let mut memo: BTreeMap<i64, Vec<Tuple>> = BTreeMap::new();
        for o in 0..m.dim() {
            let target = weight - top + m.weight(o);
            let ins = memo.entry(target).or_insert_with(|| bar_tuples(m, target, None, w));
            for v in ins.iter() {
                by_deg.entry(cochain_degree(m, v, o)).or_default().push((v.clone(), o));
            }
        }
        let pieces: BTreeMap<i64, Piece<(Tuple, usize)>> = by_deg
            .into_iter()
            .map(|(q, mut ks)| {
                ks.sort_by(|a, b| (a.0.len(), a).cmp(&(b.0.len(), b)));
                (q, Piece::new(ks, |k| k.0.len(), w))
            })
            .collect();
        let mut dstar = BTreeMap::new();
        for (&q, p) in &pieces {
            let tgt = pieces.get(&(q + 1));
            let cols = p
                .keys
                .iter()
                .map(|key| {
                    let f = ACochain::single(key.clone(), crate::graded_core::Scalar::one());
                    let d = cochains::dstar(m, self.path, &f, w);
                    let di = d.filter_map_keys(|k| tgt.and_then(|t| t.index_of(k)));
                    assert_eq!(di.len(), d.len(), "δ* left the weight block");
                    di
                })
                .collect();
            dstar.insert(q, cols);
        }
        CochainBlock { weight, arity: w, pieces, dstar }
    }
}
