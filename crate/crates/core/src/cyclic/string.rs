//! The string bracket `{α,β} = I•(𝓑•α ⊔ 𝓑•β)` on negative cyclic cohomology.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use super::bv::{Bv, DualClass};
use super::negative::{hc_minus_table, NegativeCyclic, Side};
use crate::error::{Error, Result};
use crate::graded_core::{sign, Homology, Scalar};
use crate::hochschild::homology::chain_complete;
use crate::hochschild::Chain;

/// Representative of a class in `HC⁻^p`: components `α_j` of degree `p + 2j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicClass {
    pub degree: i64,
    pub weight: i64,
    pub comps: Vec<Chain>,
}

impl CyclicClass {
    pub fn zero(degree: i64, weight: i64) -> Self {
        CyclicClass { degree, weight, comps: Vec::new() }
    }

    pub fn leading(&self) -> Chain {
        self.comps.first().cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn combine(terms: &[(Scalar, &CyclicClass)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::Input("empty combination".into()));
        };
        let mut comps: Vec<Chain> = Vec::new();
        for (c, x) in terms {
            if x.degree != first.degree || x.weight != first.weight {
                return Err(Error::Integrity(format!(
                    "combining classes of (degree, weight) ({}, {}) and ({}, {})",
                    first.degree, first.weight, x.degree, x.weight
                )));
            }
            if comps.len() < x.comps.len() {
                comps.resize(x.comps.len(), Chain::new());
            }
            for (j, phi) in x.comps.iter().enumerate() {
                comps[j].add_scaled(phi, c);
            }
        }
        Ok(CyclicClass { degree: first.degree, weight: first.weight, comps })
    }
}

/// Class-level operations on `HC⁻^•` for window `(w, u)`, reusing the BV
/// context of window `w` for the `u⁰` components.
pub struct StringBracket<'b, 's, 'a> {
    pub bv: &'b Bv<'s, 'a>,
    pub u: usize,
    hcs: RefCell<BTreeMap<(i64, i64), Rc<NegativeCyclic<'a>>>>,
    homs: RefCell<BTreeMap<(i64, i64), Rc<Homology>>>,
}

impl<'b, 's, 'a> StringBracket<'b, 's, 'a> {
    pub fn new(bv: &'b Bv<'s, 'a>, u: usize) -> Result<Self> {
        if bv.w + u > bv.space.max_len() {
            return Err(Error::Input(format!(
                "window ({}, {u}) exceeds the chain space ({})",
                bv.w,
                bv.space.max_len()
            )));
        }
        Ok(StringBracket { bv, u, hcs: RefCell::default(), homs: RefCell::default() })
    }

    pub fn hc(&self, weight: i64, p: i64) -> Result<Rc<NegativeCyclic<'a>>> {
        if let Some(h) = self.hcs.borrow().get(&(weight, p)) {
            return Ok(h.clone());
        }
        let h = Rc::new(NegativeCyclic::new(self.bv.space, weight, self.bv.w, self.u, p..=p)?);
        self.hcs.borrow_mut().insert((weight, p), h.clone());
        Ok(h)
    }

    pub fn homology(&self, weight: i64, p: i64) -> Result<Rc<Homology>> {
        if let Some(h) = self.homs.borrow().get(&(weight, p)) {
            return Ok(h.clone());
        }
        let h = Rc::new(self.hc(weight, p)?.homology(p)?);
        self.homs.borrow_mut().insert((weight, p), h.clone());
        Ok(h)
    }

    pub fn complete(&self, p: i64, weight: i64) -> bool {
        chain_complete(self.bv.space, -p, weight, self.bv.w, self.u, true)
    }

    pub fn basis(&self, p: i64, weight: i64) -> Result<Vec<CyclicClass>> {
        let hc = self.hc(weight, p)?;
        let h = self.homology(weight, p)?;
        Ok(h.reps.iter().map(|v| CyclicClass { degree: p, weight, comps: hc.components(p, v) }).collect())
    }

    /// The piece is complete, or its dimension is unchanged at `(w + 1, u + 1)`.
    pub fn stabilized(&self, p: i64, weight: i64) -> Result<bool> {
        let e = hc_minus_table(self.bv.space, Side::Cochains, p..=p, weight..=weight, self.bv.w, self.u)?;
        Ok(e.iter().all(|e| e.stabilized))
    }

    /// Basis classes of every piece in `degrees × weights` whose dimension
    /// stabilizes at this window, and the nonzero pieces that do not.
    pub fn stabilized_basis(
        &self,
        degrees: &[i64],
        weights: std::ops::RangeInclusive<i64>,
    ) -> Result<(Vec<CyclicClass>, Vec<(i64, i64)>)> {
        let mut classes = Vec::new();
        let mut skipped = Vec::new();
        for &p in degrees {
            for e in hc_minus_table(self.bv.space, Side::Cochains, p..=p, weights.clone(), self.bv.w, self.u)? {
                if e.dim == 0 {
                    continue;
                }
                if e.stabilized {
                    classes.extend(self.basis(p, e.weight)?);
                } else {
                    skipped.push((p, e.weight));
                }
            }
        }
        Ok((classes, skipped))
    }

    pub fn is_cocycle(&self, c: &CyclicClass) -> Result<bool> {
        let hc = self.hc(c.weight, c.degree)?;
        Ok(self.homology(c.weight, c.degree)?.is_cycle(&hc.coords(c.degree, &c.comps)))
    }

    pub fn is_null(&self, c: &CyclicClass) -> Result<bool> {
        if c.is_zero() {
            return Ok(true);
        }
        let hc = self.hc(c.weight, c.degree)?;
        let h = self.homology(c.weight, c.degree)?;
        let v = hc.coords(c.degree, &c.comps);
        if !h.is_cycle(&v) {
            return Err(Error::Verification(format!(
                "cyclic cochain of degree {} and weight {} is not a cocycle",
                c.degree, c.weight
            )));
        }
        Ok(h.is_boundary(&v))
    }

    /// `𝓑•α = (-1)^p α₀∘B`.
    pub fn script_b(&self, a: &CyclicClass) -> Result<DualClass> {
        let hh = self.bv.hh(a.weight, a.degree)?;
        let rep = hh.after_b(a.degree, &a.leading()).scaled(&sign::sign_of(a.degree));
        Ok(DualClass { degree: a.degree - 1, weight: a.weight, rep })
    }

    /// `I•`: a Hochschild cocycle placed at `v⁰`.
    pub fn inclusion(&self, c: &DualClass) -> CyclicClass {
        CyclicClass { degree: c.degree, weight: c.weight, comps: vec![c.rep.clone()] }
    }

    /// `{α,β} = I•∘⊔∘(𝓑•⊗𝓑•)(α⊗β) = (-1)^{|α|} I•(𝓑•α ⊔ 𝓑•β)`, the sign
    /// coming from `𝓑•` passing `α`.
    pub fn bracket(&self, a: &CyclicClass, b: &CyclicClass) -> Result<CyclicClass> {
        let x = self.bv.cup(&self.script_b(a)?, &self.script_b(b)?)?;
        Ok(self.inclusion(&x.scaled(&sign::sign_of(a.degree))))
    }

    /// Degree of the bracket: `|{α,β}| = |α| + |β| + D − 2`.
    pub fn bracket_shift(&self) -> i64 {
        self.bv.trace_degree - 2
    }

    /// Lie degree: shifted so that the bracket has degree zero.
    pub fn lie_degree(&self, a: &CyclicClass) -> i64 {
        a.degree + self.bracket_shift()
    }

    /// `{α,β} + (-1)^{|α||β|} {β,α}` in Lie degrees.
    pub fn antisymmetry_defect(&self, a: &CyclicClass, b: &CyclicClass) -> Result<CyclicClass> {
        let s = sign::sign_of(self.lie_degree(a) * self.lie_degree(b));
        CyclicClass::combine(&[(Scalar::one(), &self.bracket(a, b)?), (s, &self.bracket(b, a)?)])
    }

    /// `{α,{β,γ}} − {{α,β},γ} − (-1)^{|α||β|} {β,{α,γ}}` in Lie degrees.
    pub fn jacobi_defect(&self, a: &CyclicClass, b: &CyclicClass, c: &CyclicClass) -> Result<CyclicClass> {
        let s = sign::sign_of(self.lie_degree(a) * self.lie_degree(b));
        let lhs = self.bracket(a, &self.bracket(b, c)?)?;
        let r1 = self.bracket(&self.bracket(a, b)?, c)?;
        let r2 = self.bracket(b, &self.bracket(a, c)?)?;
        CyclicClass::combine(&[(Scalar::one(), &lhs), (-Scalar::one(), &r1), (-s, &r2)])
    }
}
