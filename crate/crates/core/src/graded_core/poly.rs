//! Polynomials in one parameter `s`, scalar- and vector-valued.

use super::linalg::Vector;
use super::scalar::Scalar;

/// `Σ c_k s^k`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(Vec<Scalar>);

impl Poly {
    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    pub fn from_coeffs(cs: Vec<Scalar>) -> Self {
        let mut p = Poly(cs);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn scaled(&self, c: &Scalar) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn eval(&self, s: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| acc * s + c)
    }
}

/// `Σ v_k s^k` with `v_k` sparse vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VecPoly(Vec<Vector<usize>>);

impl VecPoly {
    pub fn constant(v: Vector<usize>) -> Self {
        VecPoly::from_coeffs(vec![v])
    }

    /// `a + s·y`.
    pub fn line(a: &Vector<usize>, y: &Vector<usize>) -> Self {
        VecPoly::from_coeffs(vec![a.clone(), y.clone()])
    }

    pub fn from_coeffs(vs: Vec<Vector<usize>>) -> Self {
        let mut p = VecPoly(vs);
        while p.0.last().is_some_and(|v| v.is_zero()) {
            p.0.pop();
        }
        p
    }

    pub fn coeff(&self, k: usize) -> Vector<usize> {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Vector<usize>] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, o: &VecPoly) -> VecPoly {
        let n = self.0.len().max(o.0.len());
        VecPoly::from_coeffs(
            (0..n)
                .map(|k| {
                    let mut v = self.coeff(k);
                    v.add_vec(&o.coeff(k));
                    v
                })
                .collect(),
        )
    }

    pub fn scaled(&self, c: &Scalar) -> VecPoly {
        VecPoly::from_coeffs(self.0.iter().map(|v| v.scaled(c)).collect())
    }

    /// Coordinate `i` as a scalar polynomial.
    pub fn component(&self, i: usize) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|v| v.coeff(&i)).collect())
    }

    /// `∫₀^s`.
    pub fn integral(&self) -> VecPoly {
        let mut out = vec![Vector::new()];
        for (k, v) in self.0.iter().enumerate() {
            let c = Scalar::from_frac(1, k as i64 + 1);
            out.push(v.scaled(&c));
        }
        VecPoly::from_coeffs(out)
    }

    pub fn eval(&self, s: &Scalar) -> Vector<usize> {
        let mut out = Vector::new();
        let mut p = Scalar::one();
        for v in &self.0 {
            out.add_scaled(v, &p);
            p = &p * s;
        }
        out
    }

    /// `f(args)` for a multilinear `f` on vectors, expanded in `s`.
    pub fn multilinear(args: &[&VecPoly], f: impl Fn(&[&Vector<usize>]) -> Vector<usize>) -> VecPoly {
        let mut out: Vec<Vector<usize>> = Vec::new();
        if args.iter().any(|a| a.is_zero()) {
            return VecPoly::default();
        }
        let mut idx = vec![0usize; args.len()];
        loop {
            let picked: Vec<&Vector<usize>> = idx.iter().zip(args).map(|(&k, a)| &a.0[k]).collect();
            let v = f(&picked);
            if !v.is_zero() {
                let k: usize = idx.iter().sum();
                if out.len() <= k {
                    out.resize(k + 1, Vector::new());
                }
                out[k].add_vec(&v);
            }
            // odometer over the coefficient indices
            let mut slot = 0;
            loop {
                if slot == args.len() {
                    return VecPoly::from_coeffs(out);
                }
                idx[slot] += 1;
                if idx[slot] < args[slot].0.len() {
                    break;
                }
                idx[slot] = 0;
                slot += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-5i64..5, 0..5).prop_map(|v| Poly::from_coeffs(v.into_iter().map(Scalar::from).collect()))
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(p in poly(), q in poly(), s in -4i64..4) {
            let s = Scalar::from(s);
            prop_assert_eq!(p.mul(&q).eval(&s), p.eval(&s) * q.eval(&s));
            prop_assert_eq!(p.add(&q).eval(&s), p.eval(&s) + q.eval(&s));
        }
    }

    #[test]
    fn bilinear_expansion_of_lines() {
        let a = Vector::unit(0);
        let y = Vector::unit(1);
        let l = VecPoly::line(&a, &y);
        // (e0 + s e1) ⊗ (e0 + s e1) tracked through keys 2*i + j
        let sq = VecPoly::multilinear(&[&l, &l], |v| {
            let mut out = Vector::new();
            for (i, x) in v[0] {
                for (j, z) in v[1] {
                    out.add_term(2 * i + j, x * z);
                }
            }
            out
        });
        assert_eq!(sq.coeff(0), Vector::unit(0));
        assert_eq!(sq.coeff(1), [(1, Scalar::one()), (2, Scalar::one())].into_iter().collect());
        assert_eq!(sq.coeff(2), Vector::unit(3));
        assert_eq!(l.integral().coeff(2), Vector::single(1, Scalar::from_frac(1, 2)));
    }
}
