//! The L∞ operations `ν_n = μ_n ∘ Sⁿ` of an A∞ model.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::algebra_models::{tuples, AlgebraModel, OpTable};
use crate::graded_core::{sign, Scalar, Vector};

/// `ν_n(x₁…x_n) = Σ_σ sgn(σ)·ε(σ) μ_n(x_σ(1)…x_σ(n))`, `ε` the Koszul sign in
/// the unshifted degrees.
#[derive(Clone, Debug)]
pub struct Linfty {
    pub tables: BTreeMap<usize, OpTable>,
    degrees: Vec<i64>,
}

/// Sign of `sgn(σ)·ε(σ)` for moving `x_perm[k]` to slot `k`.
fn antisymmetric_sign(perm: &[usize], degrees: &[i64]) -> Scalar {
    let mut e = 0i64;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                e += degrees[perm[i]] * degrees[perm[j]] + 1;
            }
        }
    }
    sign::sign_of(e)
}

impl Linfty {
    pub fn new(m: &AlgebraModel) -> Self {
        let degrees: Vec<i64> = (0..m.dim()).map(|i| m.deg(i)).collect();
        let mut tables = BTreeMap::new();
        for n in m.arities().collect::<Vec<_>>() {
            let mut tab = OpTable::new();
            for t in tuples(m.dim(), n) {
                let degs: Vec<i64> = t.iter().map(|&i| degrees[i]).collect();
                let mut out = Vector::new();
                for perm in (0..n).permutations(n) {
                    let z: Vec<usize> = perm.iter().map(|&k| t[k]).collect();
                    if let Some(v) = m.op(n, &z) {
                        out.add_scaled(v, &antisymmetric_sign(&perm, &degs));
                    }
                }
                if !out.is_zero() {
                    tab.insert(t, out);
                }
            }
            tables.insert(n, tab);
        }
        Linfty { tables, degrees }
    }

    pub fn max_arity(&self) -> usize {
        self.tables.keys().last().copied().unwrap_or(0)
    }

    pub fn get(&self, n: usize, t: &[usize]) -> Option<&Vector<usize>> {
        self.tables.get(&n).and_then(|tab| tab.get(t))
    }

    /// `ν_n` applied multilinearly.
    pub fn apply(&self, n: usize, args: &[&Vector<usize>]) -> Vector<usize> {
        let mut out = Vector::new();
        let Some(tab) = self.tables.get(&n) else { return out };
        for (z, val) in tab {
            let mut c = Scalar::one();
            for (slot, q) in z.iter().enumerate() {
                match args[slot].get(q) {
                    Some(x) => c = &c * x,
                    None => {
                        c = Scalar::zero();
                        break;
                    }
                }
            }
            if !c.is_zero() {
                out.add_scaled(val, &c);
            }
        }
        out
    }

    /// `Σ_n ν_{n+k}(aⁿ, rest)/n!` with `rest` of length `k`.
    pub fn exp_apply(&self, a: &Vector<usize>, rest: &[&Vector<usize>]) -> Vector<usize> {
        let mut out = Vector::new();
        let mut fact = Scalar::one();
        for n in 0..=self.max_arity() {
            if n > 0 {
                fact = &fact * &Scalar::from(n as i64);
            }
            if n + rest.len() == 0 {
                continue;
            }
            let mut args: Vec<&Vector<usize>> = vec![a; n];
            args.extend_from_slice(rest);
            let v = self.apply(n + rest.len(), &args);
            if !v.is_zero() {
                out.add_scaled(&v, &fact.inv().expect("n! is nonzero"));
            }
        }
        out
    }

    /// Generalized Jacobi relation on basis labels `t`:
    /// `Σ_{i+j=n+1} Σ_{σ ∈ Sh(i,n−i)} sgn(σ)ε(σ)(-1)^{i(j−1)} ν_j(ν_i(x_σ…), x_σ…)`.
    pub fn jacobi_defect(&self, t: &[usize]) -> Vector<usize> {
        let n = t.len();
        let degs: Vec<i64> = t.iter().map(|&i| self.degrees[i]).collect();
        let mut out = Vector::new();
        for i in 1..=n {
            let j = n + 1 - i;
            for first in (0..n).combinations(i) {
                let rest: Vec<usize> = (0..n).filter(|k| !first.contains(k)).collect();
                let perm: Vec<usize> = first.iter().chain(rest.iter()).copied().collect();
                let s = &antisymmetric_sign(&perm, &degs) * &sign::sign_of((i * (j - 1)) as i64);
                let Some(inner) = self.get(i, &first.iter().map(|&k| t[k]).collect::<Vec<_>>()) else {
                    continue;
                };
                let units: Vec<Vector<usize>> = rest.iter().map(|&k| Vector::unit(t[k])).collect();
                let mut args: Vec<&Vector<usize>> = vec![inner];
                args.extend(units.iter());
                out.add_scaled(&self.apply(j, &args), &s);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::fixture;

    // graded tensor product of two dgas, as model text
    fn tensor(a: &AlgebraModel, b: &AlgebraModel) -> AlgebraModel {
        let lab = |i: usize, j: usize| {
            if i == a.unit() && j == b.unit() {
                "1".to_string()
            } else {
                format!("{}.{}", a.label(i), b.label(j))
            }
        };
        let pairs: Vec<(usize, usize)> = (0..a.dim()).flat_map(|i| (0..b.dim()).map(move |j| (i, j))).collect();
        let mut s = String::from("name = t\n[basis]\n");
        for &(i, j) in &pairs {
            let unit = if lab(i, j) == "1" { " unit" } else { "" };
            s += &format!("{} {}{unit} w={}\n", lab(i, j), a.deg(i) + b.deg(j), a.weight(i) + b.weight(j));
        }
        s += "[product]\n";
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                if lab(i, j) == "1" || lab(k, l) == "1" {
                    continue;
                }
                let (Some(p), Some(q)) = (a.product(i, k), b.product(j, l)) else { continue };
                let s0 = sign::sign_of(b.deg(j) * a.deg(k));
                for (x, c) in p {
                    for (y, e) in q {
                        s += &format!("{} {} {} {}\n", lab(i, j), lab(k, l), lab(*x, *y), &(&s0 * c) * e);
                    }
                }
            }
        }
        s += "[differential]\n";
        for &(i, j) in &pairs {
            for (x, c) in a.d(i).cloned().unwrap_or_default().iter() {
                s += &format!("{} {} {c}\n", lab(i, j), lab(*x, j));
            }
            for (y, c) in b.d(j).cloned().unwrap_or_default().iter() {
                s += &format!("{} {} {}\n", lab(i, j), lab(i, *y), &sign::sign_of(a.deg(i)) * c);
            }
        }
        s += &format!("[trace]\n{} 1\n", lab(a.unit(), b.unit()));
        crate::algebra_models::parse_model(&s).unwrap()
    }

    fn assert_jacobi(name: &str, m: &AlgebraModel, max_n: usize) {
        let l = Linfty::new(m);
        for n in 1..=max_n {
            for t in tuples(m.dim(), n) {
                assert!(l.jacobi_defect(&t).is_zero(), "{name} {t:?}");
            }
        }
    }

    #[test]
    fn jacobi_holds_on_bundled_models() {
        for name in ["xy", "cone", "m2"] {
            assert_jacobi(name, &fixture(name).unwrap(), 4);
        }
        // ν₃∘ν₃ first appears in arity 5
        assert_jacobi("ainf", &fixture("ainf").unwrap(), 5);
    }

    #[test]
    fn jacobi_holds_on_a_noncommutative_dga() {
        let m = tensor(&fixture("m2").unwrap(), &fixture("cone").unwrap());
        let l = Linfty::new(&m);
        assert!(!l.tables[&2].is_empty() && !l.tables[&1].is_empty());
        for n in 1..=3 {
            for t in tuples(m.dim(), n) {
                assert!(l.jacobi_defect(&t).is_zero(), "{t:?}");
            }
        }
    }

    #[test]
    fn binary_operation_is_the_graded_commutator() {
        let m = fixture("cone").unwrap();
        let l = Linfty::new(&m);
        for a in 0..m.dim() {
            for b in 0..m.dim() {
                let mut want = m.product(a, b).cloned().unwrap_or_default();
                if let Some(p) = m.product(b, a) {
                    want.add_scaled(p, &-sign::sign_of(m.deg(a) * m.deg(b)));
                }
                assert_eq!(l.get(2, &[a, b]).cloned().unwrap_or_default(), want);
            }
        }
    }
}
