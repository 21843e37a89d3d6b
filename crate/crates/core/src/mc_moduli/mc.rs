//! Maurer–Cartan residual, gauge vector fields and the linearized operator.

use crate::algebra_models::AlgebraModel;
use crate::error::{Error, Result};
use crate::graded_core::{odd, sign, Scalar, VecPoly, Vector};
use crate::hochschild::Path;

use super::linfty::Linfty;

/// MC data of a model. `Path::Dga` uses `da + a·a` and `[x,a] − dx` on
/// `A^odd`/`A^even`; `Path::Bar` uses the `ν_n` series on `A¹`/`A⁰`.
pub struct Mc<'a> {
    pub model: &'a AlgebraModel,
    pub path: Path,
    linfty: Option<Linfty>,
}

impl<'a> Mc<'a> {
    pub fn new(model: &'a AlgebraModel, path: Path) -> Result<Self> {
        let linfty = match path {
            Path::Dga if !model.is_dga() => {
                return Err(Error::Input("dga formulas need a model without higher operations".into()))
            }
            Path::Dga => None,
            Path::Bar => Some(Linfty::new(model)),
        };
        Ok(Mc { model, path, linfty })
    }

    pub fn linfty(&self) -> Option<&Linfty> {
        self.linfty.as_ref()
    }

    /// Basis directions of the MC variable: odd degrees, or degree 1.
    pub fn odd_directions(&self) -> Vec<usize> {
        let m = self.model;
        match self.path {
            Path::Dga => (0..m.dim()).filter(|&i| odd(m.deg(i))).collect(),
            Path::Bar => (0..m.dim()).filter(|&i| m.deg(i) == 1).collect(),
        }
    }

    /// Basis directions of the gauge algebra: even degrees, or degree 0.
    pub fn even_directions(&self) -> Vec<usize> {
        let m = self.model;
        match self.path {
            Path::Dga => (0..m.dim()).filter(|&i| !odd(m.deg(i))).collect(),
            Path::Bar => (0..m.dim()).filter(|&i| m.deg(i) == 0).collect(),
        }
    }

    fn check_support(&self, v: &Vector<usize>, dirs: &[usize], what: &str) -> Result<()> {
        match v.keys().find(|i| !dirs.contains(i)) {
            Some(&i) => Err(Error::Input(format!(
                "{what} has a component along `{}` of degree {}",
                self.model.label(i),
                self.model.deg(i)
            ))),
            None => Ok(()),
        }
    }

    pub fn check_odd(&self, a: &Vector<usize>) -> Result<()> {
        let what = if self.path == Path::Dga { "odd element" } else { "degree-1 element" };
        self.check_support(a, &self.odd_directions(), what)
    }

    pub fn check_even(&self, x: &Vector<usize>) -> Result<()> {
        let what = if self.path == Path::Dga { "even element" } else { "degree-0 element" };
        self.check_support(x, &self.even_directions(), what)
    }

    /// `[x, y] = xy − (-1)^{|x||y|} yx`, termwise in the degrees.
    fn commutator(&self, x: &Vector<usize>, y: &Vector<usize>) -> Vector<usize> {
        let m = self.model;
        let mut out = Vector::new();
        for (i, c) in x {
            for (j, e) in y {
                let ce = c * e;
                if let Some(p) = m.product(*i, *j) {
                    out.add_scaled(p, &ce);
                }
                if let Some(p) = m.product(*j, *i) {
                    out.add_scaled(p, &-(&sign::sign_of(m.deg(*i) * m.deg(*j)) * &ce));
                }
            }
        }
        out
    }

    /// `Σ_n ν_{n+k}(aⁿ, rest)/n!` with polynomial arguments.
    fn series(&self, l: &Linfty, a: &VecPoly, rest: &[&VecPoly]) -> VecPoly {
        let mut out = VecPoly::default();
        let mut fact = Scalar::one();
        for n in 0..=l.max_arity() {
            if n > 0 {
                fact = &fact * &Scalar::from(n as i64);
            }
            if n + rest.len() == 0 {
                continue;
            }
            let mut args: Vec<&VecPoly> = vec![a; n];
            args.extend_from_slice(rest);
            let v = VecPoly::multilinear(&args, |xs| l.apply(xs.len(), xs));
            out = out.add(&v.scaled(&fact.inv().expect("n! is nonzero")));
        }
        out
    }

    /// MC residual along a polynomial family `a(s)`.
    pub fn residual_poly(&self, a: &VecPoly) -> VecPoly {
        let m = self.model;
        match &self.linfty {
            None => VecPoly::multilinear(&[a], |v| m.d_vec(v[0])).add(&VecPoly::multilinear(&[a, a], |v| m.mul_vec(v[0], v[1]))),
            Some(l) => self.series(l, a, &[]),
        }
    }

    pub fn residual(&self, a: &Vector<usize>) -> Vector<usize> {
        self.residual_poly(&VecPoly::constant(a.clone())).coeff(0)
    }

    pub fn is_mc(&self, a: &Vector<usize>) -> bool {
        self.residual(a).is_zero()
    }

    /// `ξ_x` along `a(s)`: `[x,a] − dx`, or `Σ ν_{n+1}(aⁿ ∧ x)/n!`.
    pub fn gauge_poly(&self, x: &Vector<usize>, a: &VecPoly) -> VecPoly {
        let m = self.model;
        match &self.linfty {
            None => {
                let br = VecPoly::multilinear(&[a], |v| self.commutator(x, v[0]));
                br.add(&VecPoly::constant(m.d_vec(x).neg()))
            }
            Some(l) => self.series(l, a, &[&VecPoly::constant(x.clone())]),
        }
    }

    pub fn gauge(&self, x: &Vector<usize>, a: &Vector<usize>) -> Vector<usize> {
        self.gauge_poly(x, &VecPoly::constant(a.clone())).coeff(0)
    }

    /// `μ′_a(b)`: `db + [a, b]`, or `Σ ν_{n+1}(aⁿ ∧ b)/n!`.
    pub fn mu_prime(&self, a: &Vector<usize>, b: &Vector<usize>) -> Vector<usize> {
        let m = self.model;
        match &self.linfty {
            None => {
                let mut out = m.d_vec(b);
                out.add_vec(&self.commutator(a, b));
                out
            }
            Some(l) => self.series(l, &VecPoly::constant(a.clone()), &[&VecPoly::constant(b.clone())]).coeff(0),
        }
    }

    /// `x ↦ ω(residual(a), x)` on the gauge directions.
    pub fn moment_map(&self, a: &Vector<usize>) -> Vec<(usize, Scalar)> {
        let r = self.residual(a);
        self.even_directions().into_iter().map(|x| (x, self.model.omega_vec(&r, &Vector::unit(x)))).collect()
    }

    /// The `s`-linear term of the residual along `a + s·ξ_x(a)`.
    pub fn first_order_gauge_defect(&self, x: &Vector<usize>, a: &Vector<usize>) -> Vector<usize> {
        let line = VecPoly::line(a, &self.gauge(x, a));
        self.residual_poly(&line).coeff(1)
    }

    /// Exact flow of `ξ_x` through `a`, found by Picard iteration; it
    /// terminates when the flow is polynomial.
    pub fn flow(&self, x: &Vector<usize>, a: &Vector<usize>, max_steps: usize) -> Result<VecPoly> {
        let start = VecPoly::constant(a.clone());
        let mut cur = start.clone();
        for _ in 0..max_steps {
            let next = start.add(&self.gauge_poly(x, &cur).integral());
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::Truncation(format!(
            "the flow of ξ_x through {} is not polynomial of degree < {max_steps}",
            self.model.format_element(a)
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::fixture;

    fn el(m: &AlgebraModel, terms: &[(&str, i64)]) -> Vector<usize> {
        let t: Vec<(&str, Scalar)> = terms.iter().map(|(l, c)| (*l, Scalar::from(*c))).collect();
        m.element(&t).unwrap()
    }

    #[test]
    fn exterior_points_are_all_mc() {
        let m = fixture("xy").unwrap();
        for path in [Path::Dga, Path::Bar] {
            let mc = Mc::new(&m, path).unwrap();
            let a = el(&m, &[("x", 2), ("y", -1)]);
            assert!(mc.is_mc(&a));
            assert!(mc.moment_map(&a).iter().all(|(_, c)| c.is_zero()));
        }
    }

    #[test]
    fn cone_residual_is_the_t_coefficient() {
        let m = fixture("cone").unwrap();
        let mc = Mc::new(&m, Path::Dga).unwrap();
        let a = el(&m, &[("t", 3), ("e", 1), ("eh", 2)]);
        assert_eq!(mc.residual(&a), el(&m, &[("h", 3)]));
        assert!(mc.check_odd(&el(&m, &[("h", 1)])).is_err());
        // moment map pairs the residual 3h against et
        let mm = mc.moment_map(&a);
        let et = m.index_of("et").unwrap();
        assert_eq!(mm.iter().find(|(i, _)| *i == et).unwrap().1, Scalar::from(3));
    }

    #[test]
    fn ainf_mc_points_lie_on_the_x2_line() {
        let m = fixture("ainf").unwrap();
        let mc = Mc::new(&m, Path::Bar).unwrap();
        assert!(mc.is_mc(&el(&m, &[("x2", 5)])));
        // μ₃(x1,x1,x1) = p survives
        assert_eq!(mc.residual(&el(&m, &[("x1", 1)])), el(&m, &[("p", 1)]));
    }

    #[test]
    fn gauge_fields_preserve_mc_to_first_order() {
        for (name, path) in [("xy", Path::Dga), ("xy", Path::Bar), ("cone", Path::Dga), ("ainf", Path::Bar)] {
            let m = fixture(name).unwrap();
            let mc = Mc::new(&m, path).unwrap();
            let odd = mc.odd_directions();
            let a: Vector<usize> = match name {
                "ainf" => el(&m, &[("x2", 2)]),
                _ => odd.iter().filter(|&&i| m.label(i) != "t").map(|&i| (i, Scalar::from(i as i64 - 2))).collect(),
            };
            assert!(mc.is_mc(&a), "{name}");
            for x in mc.even_directions() {
                assert!(mc.first_order_gauge_defect(&Vector::unit(x), &a).is_zero(), "{name} {x}");
            }
        }
    }

    #[test]
    fn cone_flow_is_a_translation() {
        let m = fixture("cone").unwrap();
        let mc = Mc::new(&m, Path::Dga).unwrap();
        let a = el(&m, &[("e", 1), ("th", 2)]);
        let f = mc.flow(&el(&m, &[("et", 1)]), &a, 8).unwrap();
        assert_eq!(f.coeffs().to_vec(), vec![a.clone(), el(&m, &[("eh", 1)])]);
        assert!(mc.residual_poly(&f).is_zero());
    }
}
