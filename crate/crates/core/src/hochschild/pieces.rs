//! Splitting (co)chains into finite pieces by degree and internal weight, and
//! certifying when a length-truncated piece is the whole piece.
//!
//! If `λ = p/q` makes `c(b) = q·w(b) - p·sh(b)` positive on every augmentation
//! label, a chain `a₀ ⊗ v` with prescribed degree and weight satisfies
//! `Σ c(vᵢ) = q(m - w(a₀)) - p(k - |a₀|)`, which bounds its length.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::chains::Tuple;
use crate::algebra_models::AlgebraModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "length")]
pub enum LengthBound {
    Empty,
    AtMost(usize),
    Unbounded,
}

impl LengthBound {
    pub fn within(self, w: usize) -> bool {
        match self {
            LengthBound::Empty => true,
            LengthBound::AtMost(l) => l <= w,
            LengthBound::Unbounded => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Grading {
    slopes: Vec<(i64, i64)>,
    bar: Vec<usize>,
    unit_only: bool,
}

fn candidate_slopes() -> Vec<(i64, i64)> {
    let mut set = BTreeSet::new();
    let gcd = |mut a: i64, mut b: i64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    };
    for q in 1..=4i64 {
        for p in -8 * q..=8 * q {
            let g = gcd(p, q).max(1);
            set.insert((p / g, q / g));
        }
    }
    for e in 4..=10 {
        set.insert((1 << e, 1));
        set.insert((-(1 << e), 1));
    }
    // order by |λ| so that the first admissible slope is the mildest one
    let mut v: Vec<(i64, i64)> = set.into_iter().collect();
    v.sort_by_key(|&(p, q)| (p.abs() * 1024 / q, p < 0));
    v
}

impl Grading {
    pub fn new(m: &AlgebraModel) -> Grading {
        let bar = m.bar_labels();
        let slopes = candidate_slopes()
            .into_iter()
            .filter(|&(p, q)| bar.iter().all(|&b| q * m.weight(b) - p * m.sh(b) > 0))
            .collect();
        Grading { slopes, unit_only: bar.is_empty(), bar }
    }

    /// Some admissible slope exists (or there is nothing to bound).
    pub fn certifiable(&self) -> bool {
        self.unit_only || !self.slopes.is_empty()
    }

    pub fn slopes(&self) -> &[(i64, i64)] {
        &self.slopes
    }

    /// Bound for bar tuples with `Σw = bw`, `Σsh = bs`, one budget per prefix choice.
    fn bound(&self, m: &AlgebraModel, budgets: &[(i64, i64)]) -> LengthBound {
        if self.unit_only {
            return if budgets.iter().any(|&(bw, bs)| bw == 0 && bs == 0) {
                LengthBound::AtMost(0)
            } else {
                LengthBound::Empty
            };
        }
        let mut best = LengthBound::Unbounded;
        for &(p, q) in &self.slopes {
            let cmin = self.bar.iter().map(|&b| q * m.weight(b) - p * m.sh(b)).min().unwrap();
            let mut here = LengthBound::Empty;
            for &(bw, bs) in budgets {
                let n = q * bw - p * bs;
                if n >= 0 {
                    here = here.max(LengthBound::AtMost((n / cmin) as usize));
                }
            }
            best = best.min(here);
        }
        best
    }

    /// Longest bar part of a chain of degree `k` and weight `w`.
    pub fn chain_bound(&self, m: &AlgebraModel, k: i64, w: i64) -> LengthBound {
        let b: Vec<(i64, i64)> = (0..m.dim()).map(|a| (w - m.weight(a), k - m.deg(a))).collect();
        self.bound(m, &b)
    }

    /// Largest arity of an `A`-valued cochain of degree `q` and weight `w`.
    pub fn cochain_bound(&self, m: &AlgebraModel, q: i64, w: i64) -> LengthBound {
        let top = m.trace_weight().unwrap_or(0);
        let b: Vec<(i64, i64)> = (0..m.dim()).map(|o| (w - top + m.weight(o), m.deg(o) - q)).collect();
        self.bound(m, &b)
    }

    /// No chain of weight `w` sits in any degree `k - 2j` with `j > u`.
    pub fn u_tail_empty(&self, m: &AlgebraModel, k: i64, w: i64, u: usize) -> bool {
        let j0 = u as i64 + 1;
        if self.unit_only {
            return !(0..m.dim()).any(|a| m.weight(a) == w && (k - m.deg(a)) >= 2 * j0 && (k - m.deg(a)) % 2 == 0);
        }
        self.slopes.iter().filter(|&&(p, _)| p <= 0).any(|&(p, q)| {
            (0..m.dim()).all(|a| q * (w - m.weight(a)) - p * (k - 2 * j0 - m.deg(a)) < 0)
        })
    }
}

/// Bar tuples (labels other than the unit) of total weight `target_w`, total
/// shifted degree `target_sh` (if given) and length at most `max_len`, in
/// (length, lexicographic) order.
pub fn bar_tuples(m: &AlgebraModel, target_w: i64, target_sh: Option<i64>, max_len: usize) -> Vec<Tuple> {
    struct Ctx<'a> {
        m: &'a AlgebraModel,
        bar: Vec<usize>,
        w: (i64, i64),
        s: (i64, i64),
        target: (i64, Option<i64>),
        max_len: usize,
        out: Vec<Tuple>,
    }
    fn range(vals: impl Iterator<Item = i64> + Clone) -> (i64, i64) {
        (vals.clone().min().unwrap_or(0).min(0), vals.max().unwrap_or(0).max(0))
    }
    fn rec(c: &mut Ctx, cur: &mut Vec<usize>, aw: i64, ash: i64) {
        if aw == c.target.0 && c.target.1.is_none_or(|t| t == ash) {
            c.out.push(cur.clone());
        }
        if cur.len() == c.max_len {
            return;
        }
        let left = (c.max_len - cur.len() - 1) as i64;
        for bi in 0..c.bar.len() {
            let b = c.bar[bi];
            let (nw, ns) = (aw + c.m.weight(b), ash + c.m.sh(b));
            if c.target.0 < nw + left * c.w.0 || c.target.0 > nw + left * c.w.1 {
                continue;
            }
            if let Some(t) = c.target.1 {
                if t < ns + left * c.s.0 || t > ns + left * c.s.1 {
                    continue;
                }
            }
            cur.push(b);
            rec(c, cur, nw, ns);
            cur.pop();
        }
    }
    let bar = m.bar_labels();
    let w = range(bar.iter().map(|&b| m.weight(b)));
    let s = range(bar.iter().map(|&b| m.sh(b)));
    let mut c = Ctx { m, bar, w, s, target: (target_w, target_sh), max_len, out: Vec::new() };
    rec(&mut c, &mut Vec::new(), 0, 0);
    let mut out = c.out;
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Basis of one piece, ordered by (length, lexicographic) so that every
/// length truncation is a prefix.
#[derive(Clone, Debug, Default)]
pub struct Piece<K: std::hash::Hash + Eq + Clone> {
    pub keys: Vec<K>,
    index: HashMap<K, usize>,
    /// `upto[l]` = number of keys of length `≤ l`.
    upto: Vec<usize>,
}

impl<K: std::hash::Hash + Eq + Clone> Piece<K> {
    pub fn new(keys: Vec<K>, len_of: impl Fn(&K) -> usize, max_len: usize) -> Self {
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut upto = vec![0; max_len + 1];
        for k in &keys {
            let l = len_of(k);
            for u in upto.iter_mut().skip(l) {
                *u += 1;
            }
        }
        Piece { keys, index, upto }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn count_upto(&self, l: usize) -> usize {
        if l >= self.upto.len() {
            self.keys.len()
        } else {
            self.upto[l]
        }
    }

    pub fn index_of(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }
}
