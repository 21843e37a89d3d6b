//! The tangent complex `A^even →ξ A^odd →μ′ A` at an MC point, the pairing
//! `ω(X, Y) = Tr(X·Y)` on its middle term and Hamiltonian fields.

use serde::Serialize;

use super::mc::Mc;
use crate::error::{Error, Result};
use crate::graded_core::{linalg, ColumnSolver, Scalar, Vector};

/// How `ω(ξ_x(a), Y)` compares with `ω(μ′_a(Y), x)` over all basis `x`, `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Duality {
    /// Equal up to this global sign.
    Sign(Scalar),
    /// Both sides vanish identically.
    Vacuous,
    /// No single sign works.
    Fails,
}

impl Duality {
    pub fn holds(&self) -> bool {
        !matches!(self, Duality::Fails)
    }
}

pub struct TangentComplex<'m, 'a> {
    pub mc: &'m Mc<'a>,
    pub base: Vector<usize>,
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
    /// `ξ_x(a)` for each gauge direction `x`.
    pub xi: Vec<Vector<usize>>,
    /// `μ′_a(e_y)` for each odd direction `y`.
    pub mu_prime: Vec<Vector<usize>>,
    /// Basis of `ker μ′_a` as elements of `A`.
    pub kernel: Vec<Vector<usize>>,
    pub image_rank: usize,
    /// Elements of `ker μ′_a` pairing to zero with all of `ker μ′_a`.
    pub radical: Vec<Vector<usize>>,
    pub duality: Duality,
}

impl<'m, 'a> TangentComplex<'m, 'a> {
    pub fn new(mc: &'m Mc<'a>, a: &Vector<usize>) -> Result<Self> {
        let m = mc.model;
        mc.check_odd(a)?;
        let r = mc.residual(a);
        if !r.is_zero() {
            return Err(Error::Verification(format!(
                "{} is not a Maurer–Cartan point: residual {}",
                m.format_element(a),
                m.format_element(&r)
            )));
        }
        let even = mc.even_directions();
        let odd = mc.odd_directions();
        let xi: Vec<Vector<usize>> = even.iter().map(|&x| mc.gauge(&Vector::unit(x), a)).collect();
        let mu_prime: Vec<Vector<usize>> = odd.iter().map(|&y| mc.mu_prime(a, &Vector::unit(y))).collect();
        for (x, v) in even.iter().zip(&xi) {
            let z = mc.mu_prime(a, v);
            if !z.is_zero() {
                return Err(Error::Integrity(format!(
                    "μ′∘ξ ≠ 0 at {}: direction `{}` gives {}",
                    m.format_element(a),
                    m.label(*x),
                    m.format_element(&z)
                )));
            }
        }
        let kernel: Vec<Vector<usize>> =
            ColumnSolver::new(&mu_prime).kernel().iter().map(|c| c.map_keys(|&j| odd[j])).collect();
        let image_rank = linalg::rank(&xi);
        let gram_cols: Vec<Vector<usize>> = kernel
            .iter()
            .map(|ki| kernel.iter().enumerate().map(|(j, kj)| (j, m.omega_vec(ki, kj))).filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let radical = ColumnSolver::new(&gram_cols).kernel().iter().map(|c| linalg::combine(&kernel, c)).collect();
        let mut duality = Duality::Vacuous;
        'outer: for (xi_x, &x) in xi.iter().zip(&even) {
            for (mu_y, &y) in mu_prime.iter().zip(&odd) {
                let l = m.omega_vec(xi_x, &Vector::unit(y));
                let r = m.omega_vec(mu_y, &Vector::unit(x));
                if l.is_zero() && r.is_zero() {
                    continue;
                }
                let s = if l == r {
                    Scalar::one()
                } else if l == -&r {
                    -Scalar::one()
                } else {
                    duality = Duality::Fails;
                    break 'outer;
                };
                match &duality {
                    Duality::Vacuous => duality = Duality::Sign(s),
                    Duality::Sign(t) if *t != s => {
                        duality = Duality::Fails;
                        break 'outer;
                    }
                    _ => {}
                }
            }
        }
        Ok(TangentComplex { mc, base: a.clone(), even, odd, xi, mu_prime, kernel, image_rank, radical, duality })
    }

    /// `dim H⁰ = dim ker μ′_a − rank ξ(a)`.
    pub fn h0_dim(&self) -> usize {
        self.kernel.len() - self.image_rank
    }

    /// Dimension of the radical of `ω` on `H⁰`.
    pub fn h0_radical_dim(&self) -> usize {
        self.radical.len().saturating_sub(self.image_rank)
    }

    pub fn nondegenerate(&self) -> bool {
        self.h0_radical_dim() == 0
    }

    pub fn pairing(&self, x: &Vector<usize>, y: &Vector<usize>) -> Scalar {
        self.mc.model.omega_vec(x, y)
    }

    pub fn is_tangent(&self, y: &Vector<usize>) -> bool {
        self.mc.check_odd(y).is_ok() && self.mc.mu_prime(&self.base, y).is_zero()
    }

    fn format_all(&self, vs: &[Vector<usize>]) -> String {
        let parts: Vec<String> = vs.iter().map(|v| self.mc.model.format_element(v)).collect();
        format!("[{}]", parts.join(", "))
    }

    /// The field `X ∈ ker μ′_a` with `ω(X, Y) = dψ(Y)` for all tangent `Y`,
    /// determined modulo the radical.
    pub fn hamiltonian(&self, dpsi: impl Fn(&Vector<usize>) -> Scalar) -> Result<Vector<usize>> {
        let m = self.mc.model;
        for (v, &x) in self.xi.iter().zip(&self.even) {
            let c = dpsi(v);
            if !c.is_zero() {
                return Err(Error::Verification(format!(
                    "functional is {c} on the gauge direction ξ_{}(a) = {}",
                    m.label(x),
                    m.format_element(v)
                )));
            }
        }
        let cols: Vec<Vector<usize>> = self
            .kernel
            .iter()
            .map(|ki| self.kernel.iter().enumerate().map(|(j, kj)| (j, m.omega_vec(ki, kj))).filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let rhs: Vector<usize> =
            self.kernel.iter().enumerate().map(|(j, kj)| (j, dpsi(kj))).filter(|(_, c)| !c.is_zero()).collect();
        let c = ColumnSolver::new(&cols).solve(&rhs).ok_or_else(|| {
            Error::Verification(format!(
                "no Hamiltonian lift: the functional is nonzero on the radical {}",
                self.format_all(&self.radical)
            ))
        })?;
        Ok(linalg::combine(&self.kernel, &c))
    }

    /// `x` and `y` are tangent and agree modulo the radical of `ω`.
    pub fn same_class(&self, x: &Vector<usize>, y: &Vector<usize>) -> bool {
        let mut d = x.clone();
        d.sub_vec(y);
        self.is_tangent(&d) && self.kernel.iter().all(|k| self.pairing(&d, k).is_zero())
    }

    /// `{ψ, χ}(a) = ω(X^ψ, X^χ)`.
    pub fn poisson(&self, x: &Vector<usize>, y: &Vector<usize>) -> Scalar {
        self.pairing(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::fixture;
    use crate::hochschild::Path;

    #[test]
    fn exterior_on_one_generator_is_degenerate() {
        let m = fixture("eps").unwrap();
        let mc = Mc::new(&m, Path::Dga).unwrap();
        let e = m.element(&[("e", Scalar::from(3))]).unwrap();
        let tc = TangentComplex::new(&mc, &e).unwrap();
        assert!(tc.xi.iter().all(|v| v.is_zero()) && tc.mu_prime.iter().all(|v| v.is_zero()));
        assert_eq!(tc.h0_dim(), 1);
        assert!(!tc.nondegenerate());
        assert_eq!(tc.duality, Duality::Vacuous);
        assert!(tc.hamiltonian(|y| y.coeff(&1)).is_err());
        assert!(tc.hamiltonian(|_| Scalar::zero()).unwrap().is_zero());
    }

    #[test]
    fn xy_gram_solve_at_the_origin() {
        let m = fixture("xy").unwrap();
        let mc = Mc::new(&m, Path::Dga).unwrap();
        let tc = TangentComplex::new(&mc, &Vector::new()).unwrap();
        assert_eq!(tc.h0_dim(), 2);
        assert!(tc.nondegenerate());
        let x = m.element(&[("x", Scalar::one())]).unwrap();
        let y = m.element(&[("y", Scalar::one())]).unwrap();
        assert_eq!(tc.pairing(&x, &y), Scalar::one());
        assert_eq!(tc.pairing(&y, &x), -Scalar::one());
        let fx = tc.hamiltonian(|v| m.omega_vec(&x, v)).unwrap();
        let fy = tc.hamiltonian(|v| m.omega_vec(&y, v)).unwrap();
        assert!(tc.same_class(&fx, &x));
        assert_eq!(tc.poisson(&fx, &fy), Scalar::one());
        assert_eq!(tc.poisson(&fx, &fx), Scalar::zero());
    }

    #[test]
    fn cone_tangent_complex() {
        let m = fixture("cone").unwrap();
        let mc = Mc::new(&m, Path::Dga).unwrap();
        let a = m.element(&[("e", Scalar::one()), ("eh", Scalar::from(2))]).unwrap();
        let tc = TangentComplex::new(&mc, &a).unwrap();
        assert!(tc.duality.holds());
        // round trip through the Gram solve on every tangent basis vector
        for k in &tc.kernel {
            let f = tc.hamiltonian(|v| tc.pairing(k, v)).unwrap();
            assert!(tc.same_class(&f, k));
        }
    }
}
