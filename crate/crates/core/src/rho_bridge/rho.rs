//! `P(a) = Σ 1⊗a^{⊗n}`, `R(a)` and `ρ(α)(a) = ⟨α, R(a)⟩`, evaluated exactly
//! along polynomial families `a(s)`.

use serde::Serialize;

use crate::algebra_models::AlgebraModel;
use crate::cyclic::CyclicClass;
use crate::error::{Error, Result};
use crate::graded_core::{Poly, Scalar, VecPoly, Vector};
use crate::hochschild::{connes_b, delta, Chain, Path, UChain};
use crate::mc_moduli::Mc;

/// `Σ_{n ≤ w} 1⊗a^{⊗n}`.
pub fn map_p(m: &AlgebraModel, a: &Vector<usize>, w: usize) -> Chain {
    let mut out = Chain::new();
    let mut layer: Vec<(Vec<usize>, Scalar)> = vec![(vec![m.unit()], Scalar::one())];
    for n in 0..=w {
        for (t, c) in &layer {
            out.add_term(t.clone(), c.clone());
        }
        if n == w {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|(t, c)| {
                a.iter().map(move |(q, x)| {
                    let mut t = t.clone();
                    t.push(*q);
                    (t, c * x)
                })
            })
            .collect();
    }
    out
}

/// `P(a)` at `u⁰`.
pub fn map_r(m: &AlgebraModel, a: &Vector<usize>, w: usize) -> UChain {
    map_p(m, a, w).map_keys(|t| (0, t.clone()))
}

/// `δP_w(a)` on tuples of at most `w + 1 − N` bar entries (`N` the top arity),
/// which the truncation does not affect; zero at MC points.
pub fn p_cycle_defect(m: &AlgebraModel, path: Path, a: &Vector<usize>, w: usize) -> Chain {
    let top = m.arities().max().unwrap_or(2).max(2);
    let keep = (w + 1).saturating_sub(top);
    let d = delta(m, path, &map_p(m, a, w));
    d.filter_map_keys(|t| (t.len() - 1 <= keep).then(|| t.clone()))
}

/// `ρ(α)(a(s)) = Σ_t α₀(1⊗t)·Π a_{tᵢ}(s)`; only the `u⁰` component of `α`
/// meets `R(a)`.
pub fn rho_poly(m: &AlgebraModel, alpha: &CyclicClass, a: &VecPoly) -> Poly {
    let unit = m.unit();
    let comps: Vec<Poly> = (0..m.dim()).map(|i| a.component(i)).collect();
    let mut out = Poly::default();
    for (t, c) in &alpha.leading() {
        if t[0] != unit {
            continue;
        }
        let mut p = Poly::constant(c.clone());
        for q in &t[1..] {
            p = p.mul(&comps[*q]);
            if p.is_zero() {
                break;
            }
        }
        out = out.add(&p);
    }
    out
}

pub fn rho_eval(m: &AlgebraModel, alpha: &CyclicClass, a: &Vector<usize>) -> Scalar {
    rho_poly(m, alpha, &VecPoly::constant(a.clone())).coeff(0)
}

/// `dρ(α)_a(y)`: the `s`-linear coefficient along `a + s·y`.
pub fn rho_derivative(m: &AlgebraModel, alpha: &CyclicClass, a: &Vector<usize>, y: &Vector<usize>) -> Scalar {
    rho_poly(m, alpha, &VecPoly::line(a, y)).coeff(1)
}

/// Derivative of `ρ(α)` along the gauge field `ξ_x` at `a`.
pub fn gauge_derivative(mc: &Mc, alpha: &CyclicClass, x: &Vector<usize>, a: &Vector<usize>) -> Result<Scalar> {
    mc.check_even(x)?;
    Ok(rho_derivative(mc.model, alpha, a, &mc.gauge(x, a)))
}

/// `ρ(α)` along the integrated flow of `ξ_x` through `a`, with the flow.
pub fn along_flow(mc: &Mc, alpha: &CyclicClass, x: &Vector<usize>, a: &Vector<usize>) -> Result<(VecPoly, Poly)> {
    mc.check_even(x)?;
    let f = mc.flow(x, a, 64)?;
    let r = mc.residual_poly(&f);
    if !r.is_zero() {
        return Err(Error::Integrity(format!("the flow of ξ_x leaves the Maurer–Cartan locus at order {:?}", r.degree())));
    }
    let p = rho_poly(mc.model, alpha, &f);
    Ok((f, p))
}

/// Derivative chain `Σ 1⊗a⊗…⊗y⊗…⊗a` of `P` along `y`, `n ≤ w`.
pub fn p_derivative(m: &AlgebraModel, a: &Vector<usize>, y: &Vector<usize>, w: usize) -> Chain {
    let mut support: Vec<usize> = a.keys().chain(y.keys()).copied().collect();
    support.sort_unstable();
    support.dedup();
    let mut out = Chain::new();
    // (tuple, value of Π a, s-derivative of Π (a + s y))
    let mut layer = vec![(vec![m.unit()], Scalar::one(), Scalar::zero())];
    for n in 0..=w {
        for (t, _, d) in &layer {
            out.add_term(t.clone(), d.clone());
        }
        if n == w {
            break;
        }
        let mut next = Vec::new();
        for (t, c, d) in &layer {
            for &q in &support {
                let (aq, yq) = (a.coeff(&q), y.coeff(&q));
                let mut u = t.clone();
                u.push(q);
                next.push((u, c * &aq, d * &aq + c * &yq));
            }
        }
        layer = next;
    }
    out
}

/// `D − σ·B δ(Σ_{n≤w} x⊗a^{⊗n})` with `D` the derivative chain of `P` along
/// `ξ_x(a)`, on tuples with at most `w + 2 − N` bar entries. `σ = 1` for the
/// dga gauge field and `−1` for the L∞ one.
pub fn witness_defect(mc: &Mc, x: &Vector<usize>, a: &Vector<usize>, w: usize) -> Chain {
    let m = mc.model;
    let top = m.arities().max().unwrap_or(2).max(2);
    let keep = (w + 2).saturating_sub(top);
    let mut witness = Chain::new();
    for (xi, cx) in x {
        for (t, c) in &map_p(m, a, w) {
            let mut t = t.clone();
            t[0] = *xi;
            witness.add_term(t, c * cx);
        }
    }
    let sigma = if mc.path == Path::Dga { Scalar::one() } else { -Scalar::one() };
    let bd = connes_b(m, &delta(m, mc.path, &witness));
    let mut out = p_derivative(m, a, &mc.gauge(x, a), w);
    out.add_scaled(&bd, &-sigma);
    out.filter_map_keys(|t| (t.len() - 1 <= keep).then(|| t.clone()))
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeReport {
    pub direction: String,
    pub point: String,
    /// `dρ(α)_a(ξ_x(a))`, zero for a well-defined `ρ(α)`.
    pub derivative: Scalar,
    /// The derivative chain equals `σ·Bδ` of the witness.
    pub witness: bool,
    /// `ρ(α)` is constant along the integrated flow, when it integrates.
    pub flow_constant: Option<bool>,
}

impl GaugeReport {
    pub fn holds(&self) -> bool {
        self.derivative.is_zero() && self.witness && self.flow_constant != Some(false)
    }
}

pub fn verify_gauge_invariance(mc: &Mc, alpha: &CyclicClass, x: &Vector<usize>, a: &Vector<usize>, w: usize) -> Result<GaugeReport> {
    let m = mc.model;
    let derivative = gauge_derivative(mc, alpha, x, a)?;
    let witness = witness_defect(mc, x, a, w).is_zero();
    let flow_constant = match along_flow(mc, alpha, x, a) {
        Ok((_, p)) => Some(p.degree().unwrap_or(0) == 0),
        Err(Error::Truncation(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(GaugeReport { direction: m.format_element(x), point: m.format_element(a), derivative, witness, flow_constant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::fixture;
    use crate::cyclic::{Bv, StringBracket};
    use crate::graded_core::Vector;
    use crate::hochschild::ChainSpace;
    use crate::mc_moduli::{grid, integer_grid};

    #[test]
    fn p_is_a_cycle_exactly_at_mc_points() {
        for name in ["eps", "xy", "cone", "moment", "ainf"] {
            let m = fixture(name).unwrap();
            let mc = Mc::new(&m, Path::for_model(&m)).unwrap();
            for pt in grid(&mc, &integer_grid(-1, 1)) {
                assert!(p_cycle_defect(&m, mc.path, &pt.element, 5).is_zero(), "{name}");
                let r = map_r(&m, &pt.element, 5);
                assert!(r.keys().all(|(j, t)| *j == 0 && t[0] == m.unit()));
                assert!(connes_b(&m, &map_p(&m, &pt.element, 5)).is_zero());
            }
        }
        let m = fixture("cone").unwrap();
        let t = m.element(&[("t", Scalar::one())]).unwrap();
        assert!(!p_cycle_defect(&m, Path::Dga, &t, 5).is_zero());
    }

    #[test]
    fn p_on_one_odd_generator() {
        let m = fixture("eps").unwrap();
        let a = m.element(&[("e", Scalar::from(3))]).unwrap();
        let p = map_p(&m, &a, 4);
        for n in 0..=4 {
            let mut t = vec![m.unit()];
            t.extend(std::iter::repeat_n(1, n));
            assert_eq!(p.coeff(&t), Scalar::from(3).pow(n as u32));
        }
        assert_eq!(p.len(), 5);
    }

    #[test]
    fn rho_values_on_one_odd_generator() {
        let m = fixture("eps").unwrap();
        let sp = ChainSpace::new(&m, Path::Dga, 8).unwrap();
        let bv = Bv::new(&sp, 5).unwrap();
        let sb = StringBracket::new(&bv, 2).unwrap();
        let a = m.element(&[("e", Scalar::from(-2))]).unwrap();
        let unit = &sb.basis(0, 0).unwrap()[0];
        let lin = &sb.basis(0, 1).unwrap()[0];
        // normalize so that the class pairs to 1 with 1⊗ε
        let c = lin.leading().coeff(&vec![m.unit(), 1]);
        assert_eq!(rho_eval(&m, unit, &a) / unit.leading().coeff(&vec![m.unit()]), Scalar::one());
        assert_eq!(rho_eval(&m, lin, &a) / c, Scalar::from(-2));
    }

    #[test]
    fn rho_ignores_coboundaries() {
        let m = fixture("xy").unwrap();
        let sp = ChainSpace::new(&m, Path::Dga, 8).unwrap();
        let bv = Bv::new(&sp, 5).unwrap();
        let sb = StringBracket::new(&bv, 2).unwrap();
        let mc = Mc::new(&m, Path::Dga).unwrap();
        for weight in 1..=3 {
            let hc = sb.hc(weight, 0).unwrap();
            for alpha in sb.basis(0, weight).unwrap() {
                for j in 0..hc.complex.dim(-1) {
                    let b = hc.complex.apply(-1, &Vector::unit(j));
                    let cob = CyclicClass { degree: 0, weight, comps: hc.components(0, &b) };
                    let moved = CyclicClass::combine(&[(Scalar::one(), &alpha), (Scalar::from(3), &cob)]).unwrap();
                    for pt in grid(&mc, &integer_grid(-1, 1)) {
                        assert_eq!(rho_eval(&m, &alpha, &pt.element), rho_eval(&m, &moved, &pt.element));
                    }
                }
            }
        }
    }

    #[test]
    fn gauge_reports_on_nilpotent_models() {
        for name in ["cone", "moment"] {
            let m = fixture(name).unwrap();
            let path = Path::for_model(&m);
            let sp = ChainSpace::new(&m, path, 8).unwrap();
            let bv = Bv::new(&sp, 5).unwrap();
            let sb = StringBracket::new(&bv, 2).unwrap();
            let mc = Mc::new(&m, path).unwrap();
            let classes: Vec<CyclicClass> =
                (0..=3).flat_map(|wt| (-2..=2).filter(|&p| sb.complete(p, wt)).flat_map(|p| sb.basis(p, wt).unwrap()).collect::<Vec<_>>()).collect();
            assert!(!classes.is_empty());
            let mut moved = 0;
            for pt in grid(&mc, &integer_grid(-1, 1)) {
                for x in mc.even_directions() {
                    let x = Vector::unit(x);
                    moved += usize::from(!mc.gauge(&x, &pt.element).is_zero());
                    for alpha in &classes {
                        let r = verify_gauge_invariance(&mc, alpha, &x, &pt.element, 5).unwrap();
                        assert!(r.holds(), "{name} {r:?}");
                    }
                }
            }
            assert!(moved > 0, "{name}");
        }
    }
}
