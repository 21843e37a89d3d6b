//! The Hamiltonian field of `ρ(α)` two ways, and the bracket identity
//! `ρ({α,β}) = {ρ(α), ρ(β)}` at a point.

use std::rc::Rc;

use serde::Serialize;

use super::rho::{rho_derivative, rho_eval};
use crate::algebra_models::AlgebraModel;
use crate::cyclic::{Bv, CyclicClass, StringBracket};
use crate::error::{Error, Result};
use crate::graded_core::{Scalar, Vector};
use crate::hochschild::{cochains, ACochain, ChainSpace, Path};
use crate::mc_moduli::{Mc, TangentComplex};

pub struct Bridge<'c, 'b, 's, 'a> {
    pub sb: &'c StringBracket<'b, 's, 'a>,
    pub mc: &'c Mc<'a>,
}

/// Both Hamiltonian fields of `ρ(α)` at one point.
#[derive(Clone, Debug, Serialize)]
pub struct FieldCheck {
    /// `f_α(Σ a^{⊗n})`.
    pub from_f: String,
    /// Gram solve of `ω(X, ·) = dρ(α)_a`, or why it failed.
    pub from_gram: std::result::Result<String, String>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Record {
    pub alpha: (i64, i64),
    pub beta: (i64, i64),
    pub point: String,
    /// `ρ({α,β})(a)`.
    pub lhs: Scalar,
    /// `ω(X^α, X^β)` with Gram-solve fields.
    pub rhs: Option<Scalar>,
    /// `Tr(f_α(Σaⁿ)·f_β(Σaⁿ))`.
    pub rhs_f: Scalar,
    pub field_alpha: FieldCheck,
    pub field_beta: FieldCheck,
    /// Term counts of `𝓑•α`, `𝓑•β`, `f_α`, `f_β` and `{α,β}`.
    pub sizes: [usize; 5],
    pub holds: bool,
}

impl<'c, 'b, 's, 'a> Bridge<'c, 'b, 's, 'a> {
    pub fn new(sb: &'c StringBracket<'b, 's, 'a>, mc: &'c Mc<'a>) -> Result<Self> {
        if !std::ptr::eq(sb.bv.space.model, mc.model) {
            return Err(Error::Input("bracket and Maurer–Cartan data use different models".into()));
        }
        Ok(Bridge { sb, mc })
    }

    /// `f_α = ω_♯⁻¹ 𝓑•α`.
    pub fn f_alpha(&self, alpha: &CyclicClass) -> Result<Rc<ACochain>> {
        self.sb.bv.omega_inverse(&self.sb.script_b(alpha)?)
    }

    pub fn field_from_f(&self, alpha: &CyclicClass, a: &Vector<usize>) -> Result<Vector<usize>> {
        Ok(cochains::evaluate_on_powers(&*self.f_alpha(alpha)?, a))
    }

    pub fn field_from_gram(&self, tc: &TangentComplex, alpha: &CyclicClass) -> Result<Vector<usize>> {
        let m = self.mc.model;
        tc.hamiltonian(|y| rho_derivative(m, alpha, &tc.base, y))
    }

    pub fn check_field(&self, tc: &TangentComplex, alpha: &CyclicClass) -> Result<(FieldCheck, Vector<usize>, Option<Vector<usize>>)> {
        let m = self.mc.model;
        let f = self.field_from_f(alpha, &tc.base)?;
        let g = self.field_from_gram(tc, alpha);
        let agree = matches!(&g, Ok(g) if tc.same_class(&f, g));
        let check = FieldCheck {
            from_f: m.format_element(&f),
            from_gram: g.as_ref().map(|v| m.format_element(v)).map_err(|e| e.to_string()),
            agree,
        };
        Ok((check, f, g.ok()))
    }

    pub fn theorem1(&self, tc: &TangentComplex, alpha: &CyclicClass, beta: &CyclicClass) -> Result<Theorem1Record> {
        let m = self.mc.model;
        let br = self.sb.bracket(alpha, beta)?;
        let lhs = rho_eval(m, &br, &tc.base);
        let (fa, xa_f, xa) = self.check_field(tc, alpha)?;
        let (fb, xb_f, xb) = self.check_field(tc, beta)?;
        let rhs = match (&xa, &xb) {
            (Some(x), Some(y)) => Some(tc.poisson(x, y)),
            _ => None,
        };
        let rhs_f = tc.poisson(&xa_f, &xb_f);
        let sizes = [
            self.sb.script_b(alpha)?.rep.len(),
            self.sb.script_b(beta)?.rep.len(),
            self.f_alpha(alpha)?.len(),
            self.f_alpha(beta)?.len(),
            br.leading().len(),
        ];
        let holds = rhs.as_ref() == Some(&lhs);
        Ok(Theorem1Record {
            alpha: (alpha.degree, alpha.weight),
            beta: (beta.degree, beta.weight),
            point: m.format_element(&tc.base),
            lhs,
            rhs,
            rhs_f,
            field_alpha: fa,
            field_beta: fb,
            sizes,
            holds,
        })
    }
}

/// Outcome of checking every pair of stabilized classes at every point.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Summary {
    pub path: Path,
    pub window: (usize, usize),
    /// `(degree, weight)` of each basis class, in evaluation order.
    pub classes: Vec<(i64, i64)>,
    /// `(degree, weight)` pieces skipped because they did not stabilize.
    pub unstabilized: Vec<(i64, i64)>,
    pub points: usize,
    pub pairs: usize,
    pub holds: usize,
    pub nonzero: usize,
    pub fields: usize,
    pub fields_agree: usize,
    pub records: Vec<Theorem1Record>,
}

impl Theorem1Summary {
    pub fn verified(&self) -> bool {
        self.holds == self.pairs && self.fields_agree == self.fields
    }

    pub fn failures(&self) -> impl Iterator<Item = &Theorem1Record> {
        self.records.iter().filter(|r| !r.holds)
    }
}

/// Which classes enter the pairwise check.
#[derive(Clone, Debug)]
pub enum ClassChoice {
    /// Every basis class of every stabilized piece.
    Stabilized { degrees: Vec<i64>, weights: std::ops::RangeInclusive<i64> },
    /// `(degree, weight, index)` into the basis of one piece.
    Basis(Vec<(i64, i64, usize)>),
    /// Explicit cocycles.
    Given(Vec<CyclicClass>),
}

/// Checks the bracket identity for all pairs of the chosen classes of `HC⁻`
/// at window `(w, u)` and every point.
pub fn verify_theorem1(
    m: &AlgebraModel,
    path: Path,
    (w, u): (usize, usize),
    choice: &ClassChoice,
    points: &[Vector<usize>],
) -> Result<Theorem1Summary> {
    let sp = ChainSpace::new(m, path, w + u + 2)?;
    let bv = Bv::new(&sp, w)?;
    let sb = StringBracket::new(&bv, u)?;
    let mc = Mc::new(m, path)?;
    let bridge = Bridge::new(&sb, &mc)?;
    let (classes, unstabilized) = resolve_classes(&sb, choice)?;
    let mut out = Theorem1Summary {
        path,
        window: (w, u),
        classes: classes.iter().map(|c| (c.degree, c.weight)).collect(),
        unstabilized,
        points: points.len(),
        pairs: 0,
        holds: 0,
        nonzero: 0,
        fields: 0,
        fields_agree: 0,
        records: Vec::new(),
    };
    for a in points {
        let tc = TangentComplex::new(&mc, a)?;
        for alpha in &classes {
            out.fields += 1;
            out.fields_agree += usize::from(bridge.check_field(&tc, alpha)?.0.agree);
            for beta in &classes {
                let r = bridge.theorem1(&tc, alpha, beta)?;
                out.pairs += 1;
                out.holds += usize::from(r.holds);
                out.nonzero += usize::from(!r.lhs.is_zero());
                out.records.push(r);
            }
        }
    }
    Ok(out)
}

/// The classes of a [`ClassChoice`] and the nonzero pieces among them that
/// did not stabilize.
pub fn resolve_classes(sb: &StringBracket, choice: &ClassChoice) -> Result<(Vec<CyclicClass>, Vec<(i64, i64)>)> {
    let mut skipped = Vec::new();
    let mut note = |c: &CyclicClass| {
        let key = (c.degree, c.weight);
        if !sb.stabilized(c.degree, c.weight)? && !skipped.contains(&key) {
            skipped.push(key);
        }
        Ok::<(), Error>(())
    };
    match choice {
        ClassChoice::Stabilized { degrees, weights } => sb.stabilized_basis(degrees, weights.clone()),
        ClassChoice::Basis(picks) => {
            let mut out = Vec::new();
            for &(p, wt, i) in picks {
                let basis = sb.basis(p, wt)?;
                let c = basis.get(i).cloned().ok_or_else(|| {
                    Error::Input(format!("HC⁻ at degree {p}, weight {wt} has {} basis classes; index {i} is out of range", basis.len()))
                })?;
                note(&c)?;
                out.push(c);
            }
            Ok((out, skipped))
        }
        ClassChoice::Given(classes) => {
            for c in classes {
                if !sb.is_cocycle(c)? {
                    return Err(Error::Input(format!("class of degree {} and weight {} is not a cocycle", c.degree, c.weight)));
                }
                note(c)?;
            }
            Ok((classes.clone(), skipped))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::fixture;
    use crate::mc_moduli::{grid, integer_grid};

    fn stab(weights: std::ops::RangeInclusive<i64>) -> ClassChoice {
        ClassChoice::Stabilized { degrees: vec![0], weights }
    }

    fn points(m: &AlgebraModel, path: Path, lo: i64, hi: i64) -> Vec<Vector<usize>> {
        grid(&Mc::new(m, path).unwrap(), &integer_grid(lo, hi)).into_iter().map(|p| p.element).collect()
    }

    #[test]
    fn exterior_on_two_generators_small_window() {
        let m = fixture("xy").unwrap();
        let pts = points(&m, Path::Dga, -1, 1);
        let s = verify_theorem1(&m, Path::Dga, (4, 2), &stab(0..=3), &pts).unwrap();
        assert!(s.verified(), "{:?}", s.failures().next());
        assert!(s.nonzero > 0);
        assert_eq!(s.pairs, s.classes.len() * s.classes.len() * 9);
    }

    #[test]
    fn bar_path_reproduces_dga_verdicts() {
        let m = fixture("xy").unwrap();
        let bar = m.as_a_infinity();
        let pts = points(&m, Path::Dga, -1, 1);
        let d = verify_theorem1(&m, Path::Dga, (4, 2), &stab(0..=2), &pts).unwrap();
        let b = verify_theorem1(&bar, Path::Bar, (4, 2), &stab(0..=2), &pts).unwrap();
        assert_eq!(d.classes, b.classes);
        let key = |r: &Theorem1Record| (r.alpha, r.beta, r.point.clone(), r.lhs.clone(), r.rhs.clone(), r.holds);
        assert_eq!(d.records.iter().map(key).collect::<Vec<_>>(), b.records.iter().map(key).collect::<Vec<_>>());
    }

    #[test]
    fn moment_fixture_via_linfty() {
        let m = fixture("moment").unwrap();
        let pts = points(&m, Path::Bar, -1, 1);
        let s = verify_theorem1(&m, Path::Bar, (4, 2), &stab(0..=4), &pts).unwrap();
        assert!(s.verified(), "{:?}", s.failures().next());
        assert!(s.nonzero > 0);
    }

    #[test]
    fn explicit_choices_match_the_basis() {
        let m = fixture("xy").unwrap();
        let pts = points(&m, Path::Dga, 0, 1);
        let picked = ClassChoice::Basis(vec![(0, 2, 0), (0, 2, 1)]);
        let s = verify_theorem1(&m, Path::Dga, (4, 2), &picked, &pts).unwrap();
        assert_eq!(s.classes, vec![(0, 2), (0, 2)]);
        assert!(s.verified());
        let bad = ClassChoice::Basis(vec![(0, 2, 99)]);
        assert!(matches!(verify_theorem1(&m, Path::Dga, (4, 2), &bad, &pts), Err(Error::Input(_))));
    }

    #[test]
    fn degenerate_pairing_leaves_fields_unsolved() {
        // eps: the tangent space is its own radical, so nonzero differentials have no field
        let m = fixture("eps").unwrap();
        let pts = points(&m, Path::Dga, 0, 1);
        let s = verify_theorem1(&m, Path::Dga, (4, 2), &stab(0..=2), &pts).unwrap();
        assert!(!s.verified());
        for r in s.failures() {
            assert!(r.rhs.is_none());
            assert!(r.field_alpha.from_gram.is_err() || r.field_beta.from_gram.is_err());
        }
    }
}
