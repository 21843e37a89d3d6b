//! BV structure on `HH^•(A, A*)`: `Δ`, the product `⊔` transported through
//! `ω_♯` and the bracket. Everything is computed on representatives and
//! compared at class level.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::graded_core::{sign, ColumnSolver, Homology, Scalar, Vector};
use crate::hochschild::homology::chain_complete;
use crate::hochschild::{cochains, ACochain, Chain, ChainSpace, DualHochschild, ValueHochschild};

/// Representative of a class in `HH^p(A, A*)` at one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualClass {
    pub degree: i64,
    pub weight: i64,
    pub rep: Chain,
}

impl DualClass {
    pub fn zero(degree: i64, weight: i64) -> Self {
        DualClass { degree, weight, rep: Chain::new() }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        DualClass { rep: self.rep.scaled(c), ..self.clone() }
    }

    /// `Σ c_i x_i`; all terms must share degree and weight.
    pub fn combine(terms: &[(Scalar, &DualClass)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::Input("empty combination".into()));
        };
        let mut rep = Chain::new();
        for (c, x) in terms {
            if x.degree != first.degree || x.weight != first.weight {
                return Err(Error::Integrity(format!(
                    "combining classes of (degree, weight) ({}, {}) and ({}, {})",
                    first.degree, first.weight, x.degree, x.weight
                )));
            }
            rep.add_scaled(&x.rep, c);
        }
        Ok(DualClass { degree: first.degree, weight: first.weight, rep })
    }
}

type Inverter = (ColumnSolver<usize>, Vec<ACochain>);

/// Class-level BV operations for window `w`, with per-piece caches.
pub struct Bv<'s, 'a> {
    pub space: &'s ChainSpace<'a>,
    pub w: usize,
    pub trace_degree: i64,
    pub trace_weight: i64,
    duals: RefCell<BTreeMap<(i64, i64), Rc<DualHochschild<'a>>>>,
    homs: RefCell<BTreeMap<(i64, i64), Rc<Homology>>>,
    values: RefCell<BTreeMap<i64, Rc<ValueHochschild>>>,
    inverters: RefCell<BTreeMap<(i64, i64), Rc<Inverter>>>,
    inverses: RefCell<HashMap<(i64, i64, Chain), Rc<ACochain>>>,
}

impl<'s, 'a> Bv<'s, 'a> {
    pub fn new(space: &'s ChainSpace<'a>, w: usize) -> Result<Self> {
        let m = space.model;
        let trace_degree = m.trace_degree().ok_or_else(|| Error::Integrity("trace has no single degree".into()))?;
        if w > space.max_len() {
            return Err(Error::Input(format!("window {w} exceeds the chain space ({})", space.max_len())));
        }
        Ok(Bv {
            space,
            w,
            trace_degree,
            trace_weight: m.trace_weight().unwrap_or(0),
            duals: RefCell::default(),
            homs: RefCell::default(),
            values: RefCell::default(),
            inverters: RefCell::default(),
            inverses: RefCell::default(),
        })
    }

    pub fn hh(&self, weight: i64, p: i64) -> Result<Rc<DualHochschild<'a>>> {
        if let Some(h) = self.duals.borrow().get(&(weight, p)) {
            return Ok(h.clone());
        }
        let h = Rc::new(DualHochschild::new(self.space, weight, self.w, p..=p)?);
        self.duals.borrow_mut().insert((weight, p), h.clone());
        Ok(h)
    }

    pub fn homology(&self, weight: i64, p: i64) -> Result<Rc<Homology>> {
        if let Some(h) = self.homs.borrow().get(&(weight, p)) {
            return Ok(h.clone());
        }
        let h = Rc::new(self.hh(weight, p)?.homology(p)?);
        self.homs.borrow_mut().insert((weight, p), h.clone());
        Ok(h)
    }

    /// Degree `p` at this weight is computed on the whole (untruncated) piece.
    pub fn complete(&self, p: i64, weight: i64) -> bool {
        chain_complete(self.space, -p, weight, self.w, 0, false)
    }

    pub fn basis(&self, p: i64, weight: i64) -> Result<Vec<DualClass>> {
        let hh = self.hh(weight, p)?;
        let h = self.homology(weight, p)?;
        Ok(h.reps.iter().map(|v| DualClass { degree: p, weight, rep: hh.functional(p, v) }).collect())
    }

    pub fn is_cocycle(&self, c: &DualClass) -> Result<bool> {
        let hh = self.hh(c.weight, c.degree)?;
        Ok(self.homology(c.weight, c.degree)?.is_cycle(&hh.coords(c.degree, &c.rep)))
    }

    /// The class of `c` vanishes; `c` must be a cocycle.
    pub fn is_null(&self, c: &DualClass) -> Result<bool> {
        if c.rep.is_zero() {
            return Ok(true);
        }
        let hh = self.hh(c.weight, c.degree)?;
        let h = self.homology(c.weight, c.degree)?;
        let v = hh.coords(c.degree, &c.rep);
        if !h.is_cycle(&v) {
            return Err(Error::Verification(format!(
                "functional of degree {} and weight {} is not a cocycle",
                c.degree, c.weight
            )));
        }
        Ok(h.is_boundary(&v))
    }

    pub fn bv_degree(&self, c: &DualClass) -> i64 {
        c.degree + self.trace_degree
    }

    /// `Δφ = (-1)^p φ∘B`.
    pub fn delta(&self, c: &DualClass) -> Result<DualClass> {
        let hh = self.hh(c.weight, c.degree)?;
        let rep = hh.after_b(c.degree, &c.rep).scaled(&sign::sign_of(c.degree));
        Ok(DualClass { degree: c.degree - 1, weight: c.weight, rep })
    }

    fn values(&self, weight: i64) -> Result<Rc<ValueHochschild>> {
        if let Some(v) = self.values.borrow().get(&weight) {
            return Ok(v.clone());
        }
        let v = Rc::new(ValueHochschild::new(self.space, weight, self.w)?);
        self.values.borrow_mut().insert(weight, v.clone());
        Ok(v)
    }

    fn inverter(&self, weight: i64, p: i64) -> Result<Rc<Inverter>> {
        if let Some(s) = self.inverters.borrow().get(&(weight, p)) {
            return Ok(s.clone());
        }
        let m = self.space.model;
        let hh = self.hh(weight, p)?;
        let z = self.values(weight)?.cocycles(p + self.trace_degree);
        let mut cols: Vec<Vector<usize>> = z.iter().map(|f| hh.coords(p, &cochains::omega_sharp(m, f))).collect();
        for j in 0..hh.complex.dim(p - 1) {
            cols.push(hh.complex.apply(p - 1, &Vector::unit(j)));
        }
        let s = Rc::new((ColumnSolver::new(&cols), z));
        self.inverters.borrow_mut().insert((weight, p), s.clone());
        Ok(s)
    }

    /// `ω_♯⁻¹`: an `A`-valued cocycle `F` of degree `p + D` with `ω_♯F ~ c`.
    pub fn omega_inverse(&self, c: &DualClass) -> Result<Rc<ACochain>> {
        let key = (c.degree, c.weight, c.rep.clone());
        if let Some(f) = self.inverses.borrow().get(&key) {
            return Ok(f.clone());
        }
        let hh = self.hh(c.weight, c.degree)?;
        let inv = self.inverter(c.weight, c.degree)?;
        let sol = inv.0.solve(&hh.coords(c.degree, &c.rep)).ok_or_else(|| {
            Error::Verification(format!("ω_♯ does not reach the class at degree {}, weight {}", c.degree, c.weight))
        })?;
        let mut f = ACochain::new();
        for (j, x) in &sol {
            if let Some(z) = inv.1.get(*j) {
                f.add_scaled(z, x);
            }
        }
        let f = Rc::new(f);
        self.inverses.borrow_mut().insert(key, f.clone());
        Ok(f)
    }

    /// `ω_♯` of the cup product of two `A`-valued cochains.
    pub fn sharp_cup(&self, f: &ACochain, g: &ACochain) -> Chain {
        let m = self.space.model;
        cochains::omega_sharp(m, &cochains::cup(m, self.space.path, f, g, self.w))
    }

    /// `a ⊔ b = ω_♯(ω_♯⁻¹a ∪ ω_♯⁻¹b)`.
    pub fn cup(&self, a: &DualClass, b: &DualClass) -> Result<DualClass> {
        let f = self.omega_inverse(a)?;
        let g = self.omega_inverse(b)?;
        Ok(DualClass {
            degree: a.degree + b.degree + self.trace_degree,
            weight: a.weight + b.weight - self.trace_weight,
            rep: self.sharp_cup(&f, &g),
        })
    }

    /// `{a,b} = (-1)^{|a|}Δ(a⊔b) − (-1)^{|a|}Δa⊔b − a⊔Δb`, `|a|` the BV degree.
    pub fn bracket(&self, a: &DualClass, b: &DualClass) -> Result<DualClass> {
        let s = sign::sign_of(self.bv_degree(a));
        let t1 = self.delta(&self.cup(a, b)?)?;
        let t2 = self.cup(&self.delta(a)?, b)?;
        let t3 = self.cup(a, &self.delta(b)?)?;
        DualClass::combine(&[(s.clone(), &t1), (-&s, &t2), (-Scalar::one(), &t3)])
    }

    /// `a⊔b − (-1)^{|a||b|} b⊔a`.
    pub fn commutativity_defect(&self, a: &DualClass, b: &DualClass) -> Result<DualClass> {
        let s = sign::sign_of(self.bv_degree(a) * self.bv_degree(b));
        DualClass::combine(&[(Scalar::one(), &self.cup(a, b)?), (-s, &self.cup(b, a)?)])
    }

    /// `{a,b} + (-1)^{(|a|+1)(|b|+1)} {b,a}`.
    pub fn antisymmetry_defect(&self, a: &DualClass, b: &DualClass) -> Result<DualClass> {
        let s = sign::sign_of((self.bv_degree(a) + 1) * (self.bv_degree(b) + 1));
        DualClass::combine(&[(Scalar::one(), &self.bracket(a, b)?), (s, &self.bracket(b, a)?)])
    }

    /// `{a, b⊔c} − {a,b}⊔c − (-1)^{(|a|+1)|b|} b⊔{a,c}`.
    pub fn derivation_defect(&self, a: &DualClass, b: &DualClass, c: &DualClass) -> Result<DualClass> {
        let s = sign::sign_of((self.bv_degree(a) + 1) * self.bv_degree(b));
        let lhs = self.bracket(a, &self.cup(b, c)?)?;
        let r1 = self.cup(&self.bracket(a, b)?, c)?;
        let r2 = self.cup(b, &self.bracket(a, c)?)?;
        DualClass::combine(&[(Scalar::one(), &lhs), (-Scalar::one(), &r1), (-s, &r2)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::fixture;
    use crate::hochschild::Path;

    #[test]
    fn unit_class_is_annihilated_by_delta() {
        for name in ["eps", "xy"] {
            let m = fixture(name).unwrap();
            let sp = ChainSpace::new(&m, Path::Dga, 6).unwrap();
            let bv = Bv::new(&sp, 4).unwrap();
            // ω_♯(1) is the trace, a degree -D functional on (x0) at the trace weight
            let mut tr = Chain::new();
            for i in 0..m.dim() {
                tr.add_term(vec![i], m.trace[i].clone());
            }
            let c = DualClass { degree: -bv.trace_degree, weight: bv.trace_weight, rep: tr };
            assert!(bv.is_cocycle(&c).unwrap());
            assert!(!bv.is_null(&c).unwrap());
            assert!(bv.is_null(&bv.delta(&c).unwrap()).unwrap());
        }
    }
}
