//! The textbook (non-normalized) Hochschild complex of a graded algebra with
//! zero differential, used as an independent check on the normalized one.
//!
//! Chains `a₀⊗a₁⊗…⊗aₙ` run over the full basis (unit included) with the
//! classical boundary
//! `b = Σ_{i<n} (-1)^i a₀⊗…⊗aᵢaᵢ₊₁⊗… + (-1)^{n + |aₙ|(|a₀|+…+|aₙ₋₁|)} aₙa₀⊗a₁⊗…⊗aₙ₋₁`
//! and degree `Σ|aᵢ| − n`, so `b` raises degree by one.

use std::collections::BTreeMap;

use crate::algebra_models::AlgebraModel;
use crate::error::{Error, Result};
use crate::graded_core::{rank, sign, Scalar, Vector};

use super::chains::Tuple;

pub struct Unnormalized<'a> {
    model: &'a AlgebraModel,
    /// Every tuple in a piece has at most `(wt − k + slack) / step` bar entries.
    step: i64,
    slack: i64,
}

impl<'a> Unnormalized<'a> {
    pub fn new(model: &'a AlgebraModel) -> Result<Self> {
        if !model.is_dga() || (0..model.dim()).any(|i| model.d(i).is_some_and(|v| !v.is_zero())) {
            return Err(Error::Input("the non-normalized oracle handles graded algebras with d = 0".into()));
        }
        let step = (0..model.dim()).map(|i| model.weight(i) - model.deg(i) + 1).min().unwrap_or(1);
        if step < 1 {
            return Err(Error::Input("no length bound: some basis element has weight below its shifted degree".into()));
        }
        let slack = (0..model.dim()).map(|i| model.deg(i) - model.weight(i)).max().unwrap_or(0);
        Ok(Unnormalized { model, step, slack })
    }

    fn degree(&self, t: &[usize]) -> i64 {
        t.iter().map(|&i| self.model.deg(i)).sum::<i64>() - (t.len() as i64 - 1)
    }

    fn weight(&self, t: &[usize]) -> i64 {
        t.iter().map(|&i| self.model.weight(i)).sum()
    }

    /// All tuples of chain degree `k` and weight `wt`, in lexicographic order.
    pub fn basis(&self, k: i64, wt: i64) -> Vec<Tuple> {
        let budget = wt - k + self.slack;
        if budget < 0 {
            return Vec::new();
        }
        let max_n = (budget / self.step) as usize;
        let mut out = Vec::new();
        let mut t: Tuple = Vec::new();
        self.extend(&mut t, max_n + 1, k, wt, &mut out);
        out.sort();
        out
    }

    fn extend(&self, t: &mut Tuple, max_len: usize, k: i64, wt: i64, out: &mut Vec<Tuple>) {
        if !t.is_empty() && self.degree(t) == k && self.weight(t) == wt {
            out.push(t.clone());
        }
        if t.len() == max_len {
            return;
        }
        for i in 0..self.model.dim() {
            t.push(i);
            self.extend(t, max_len, k, wt, out);
            t.pop();
        }
    }

    pub fn boundary(&self, t: &[usize]) -> BTreeMap<Tuple, Scalar> {
        let m = self.model;
        let n = t.len() - 1;
        let mut out: BTreeMap<Tuple, Scalar> = BTreeMap::new();
        let mut push = |key: Tuple, c: Scalar| {
            let e = out.entry(key).or_insert_with(Scalar::zero);
            *e += &c;
        };
        for i in 0..n {
            if let Some(p) = m.product(t[i], t[i + 1]) {
                for (r, c) in p {
                    let mut key = t[..i].to_vec();
                    key.push(*r);
                    key.extend_from_slice(&t[i + 2..]);
                    push(key, c * &sign::sign_of(i as i64));
                }
            }
        }
        if n > 0 {
            let before: i64 = t[..n].iter().map(|&i| m.deg(i)).sum();
            let s = sign::sign_of(n as i64 + m.deg(t[n]) * before);
            if let Some(p) = m.product(t[n], t[0]) {
                for (r, c) in p {
                    let mut key = vec![*r];
                    key.extend_from_slice(&t[1..n]);
                    push(key, c * &s);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Matrix of `b` from degree `k` to `k + 1` as columns.
    fn columns(&self, k: i64, wt: i64) -> (Vec<Vector<usize>>, usize) {
        let src = self.basis(k, wt);
        let tgt = self.basis(k + 1, wt);
        let index: BTreeMap<&Tuple, usize> = tgt.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let cols = src
            .iter()
            .map(|t| {
                let mut v = Vector::new();
                for (key, c) in self.boundary(t) {
                    v.add_term(index[&key], c);
                }
                v
            })
            .collect();
        (cols, tgt.len())
    }

    /// `b∘b` vanishes on every chain of degree `k`.
    pub fn square_zero(&self, k: i64, wt: i64) -> bool {
        let (first, _) = self.columns(k, wt);
        let (second, _) = self.columns(k + 1, wt);
        first.iter().all(|col| {
            let mut v = Vector::new();
            for (j, c) in col {
                v.add_scaled(&second[*j], c);
            }
            v.is_zero()
        })
    }

    pub fn homology_dim(&self, k: i64, wt: i64) -> usize {
        let dim = self.basis(k, wt).len();
        let (out, _) = self.columns(k, wt);
        let (inc, _) = self.columns(k - 1, wt);
        dim - rank(&out) - rank(&inc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::fixture;

    #[test]
    fn dual_numbers_by_hand() {
        // k[x]/x², |x| = 0, characteristic 0: HH_0 = A and every higher HH_n is one-dimensional
        let m = fixture("dual").unwrap();
        let o = Unnormalized::new(&m).unwrap();
        assert_eq!(o.homology_dim(0, 0), 1);
        assert_eq!(o.homology_dim(0, 1), 1);
        for n in 1..4 {
            let total: usize = (0..=2 * n + 2).map(|wt| o.homology_dim(-n, wt)).sum();
            assert_eq!(total, 1, "degree {}", -n);
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        for name in ["eps", "dual", "xy", "ground"] {
            let m = fixture(name).unwrap();
            let o = Unnormalized::new(&m).unwrap();
            for k in -3..=2 {
                for wt in 0..=3 {
                    assert!(o.square_zero(k, wt), "{name} {k} {wt}");
                }
            }
        }
    }

    #[test]
    fn refuses_models_with_a_differential() {
        assert!(Unnormalized::new(&fixture("cone").unwrap()).is_err());
    }
}
