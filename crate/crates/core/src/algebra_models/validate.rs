use serde::Serialize;

use super::model::{AlgebraModel, Convention};
use super::pairing::quasi_iso_check;
use crate::graded_core::{sign, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<Convention>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    fn push(&mut self, axiom: impl Into<String>, convention: Option<Convention>, witness: Option<String>) {
        self.checks.push(AxiomCheck { axiom: axiom.into(), convention, passed: witness.is_none(), witness });
    }

    /// Every convention-free check passes and so does every check for `c`.
    pub fn passes_under(&self, c: Convention) -> bool {
        self.checks.iter().all(|k| k.passed || k.convention.is_some_and(|x| x != c))
    }

    pub fn passing_conventions(&self) -> Vec<Convention> {
        Convention::ALL.into_iter().filter(|&c| self.passes_under(c)).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|k| k.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|k| !k.passed)
    }

    pub fn get(&self, axiom: &str, c: Option<Convention>) -> Option<&AxiomCheck> {
        self.checks.iter().find(|k| k.axiom == axiom && k.convention == c)
    }
}

fn tuple(m: &AlgebraModel, t: &[usize]) -> String {
    format!("({})", t.iter().map(|&i| m.label(i)).collect::<Vec<_>>().join(", "))
}

fn first_failure<I: IntoIterator<Item = Vec<usize>>>(
    m: &AlgebraModel,
    tuples: I,
    mut bad: impl FnMut(&[usize]) -> bool,
) -> Option<String> {
    tuples.into_iter().find(|t| bad(t)).map(|t| tuple(m, &t))
}

fn all_tuples(m: &AlgebraModel, n: usize) -> Vec<Vec<usize>> {
    tuples(m.dim(), n)
}

/// Every tuple of length `n` over `0..dim`, lexicographic.
pub fn tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

fn unit_vec(i: usize) -> Vector<usize> {
    Vector::unit(i)
}

fn grading_checks(m: &AlgebraModel, r: &mut ValidationReport) {
    let mut bad = None;
    let mut wbad = None;
    'outer: for (&k, tab) in &m.ops {
        for (z, out) in tab {
            let want = z.iter().map(|&q| m.deg(q)).sum::<i64>() + 2 - k as i64;
            let wwant: i64 = z.iter().map(|&q| m.weight(q)).sum();
            for o in out.keys() {
                if m.deg(*o) != want && bad.is_none() {
                    bad = Some(format!("mu{k}{} -> {}", tuple(m, z), m.label(*o)));
                }
                if m.weight(*o) != wwant && wbad.is_none() {
                    wbad = Some(format!("mu{k}{} -> {}", tuple(m, z), m.label(*o)));
                }
                if bad.is_some() && wbad.is_some() {
                    break 'outer;
                }
            }
        }
    }
    r.push("degree", None, bad);
    if m.weights_declared {
        let tw = (m.trace_weight().is_none() && m.trace.iter().any(|c| !c.is_zero()))
            .then(|| "trace is not concentrated in one weight".to_string());
        r.push("weight", None, wbad.or(tw));
    }
}

fn trace_checks(m: &AlgebraModel, r: &mut ValidationReport) {
    let conc = (m.trace_degree().is_none()).then(|| {
        if m.trace.iter().all(|c| c.is_zero()) {
            "trace is identically zero".to_string()
        } else {
            "trace is not concentrated in one degree".to_string()
        }
    });
    r.push("trace-homogeneous", None, conc);
    let closed = first_failure(m, (0..m.dim()).map(|i| vec![i]), |t| !m.trace_of(&m.d_vec(&unit_vec(t[0]))).is_zero());
    r.push("trace-closed", None, closed);
    for c in Convention::ALL {
        let sym = first_failure(m, all_tuples(m, 2), |t| {
            let (a, b) = (t[0], t[1]);
            let s = sign::odd(m.deg(a) * m.deg(b)) ^ c.extra_sign();
            m.omega(a, b) != m.omega(b, a).neg_if(s)
        });
        r.push("trace-symmetry", Some(c), sym);
        // left module compatibility: Tr((ba)c) = ± Tr(a(cb))
        let bim = first_failure(m, all_tuples(m, 3), |t| {
            let (a, b, cc) = (t[0], t[1], t[2]);
            let ba = m.mul_vec(&unit_vec(b), &unit_vec(a));
            let lhs = m.trace_of(&m.mul_vec(&ba, &unit_vec(cc)));
            let cb = m.mul_vec(&unit_vec(cc), &unit_vec(b));
            let rhs = m.trace_of(&m.mul_vec(&unit_vec(a), &cb));
            let s = sign::odd(m.deg(b) * (m.deg(a) + m.deg(cc))) ^ c.extra_sign();
            lhs != rhs.neg_if(s)
        });
        r.push("bimodule-map", Some(c), bim);
    }
    let qi = match quasi_iso_check(m) {
        Ok(q) if q.is_iso => None,
        Ok(q) => Some(format!("homology ranks {:?} -> {:?}, induced rank {}", q.source_dims, q.target_dims, q.rank)),
        Err(e) => Some(e.to_string()),
    };
    r.push("quasi-isomorphism", None, qi);
}

pub fn validate_dga(m: &AlgebraModel) -> ValidationReport {
    let mut r = ValidationReport::default();
    let u = m.unit();
    r.push("dga-arity", None, (!m.is_dga()).then(|| "operations of arity >= 3 present".to_string()));
    grading_checks(m, &mut r);
    let unit = first_failure(m, (0..m.dim()).map(|i| vec![i]), |t| {
        let a = unit_vec(t[0]);
        m.mul_vec(&unit_vec(u), &a) != a || m.mul_vec(&a, &unit_vec(u)) != a
    })
    .or_else(|| m.d(u).map(|_| "d(1) != 0".to_string()));
    r.push("unit", None, unit);
    let assoc = first_failure(m, all_tuples(m, 3), |t| {
        let (a, b, c) = (unit_vec(t[0]), unit_vec(t[1]), unit_vec(t[2]));
        m.mul_vec(&m.mul_vec(&a, &b), &c) != m.mul_vec(&a, &m.mul_vec(&b, &c))
    });
    r.push("associativity", None, assoc);
    let leib = first_failure(m, all_tuples(m, 2), |t| {
        let (a, b) = (unit_vec(t[0]), unit_vec(t[1]));
        let lhs = m.d_vec(&m.mul_vec(&a, &b));
        let mut rhs = m.mul_vec(&m.d_vec(&a), &b);
        rhs.add_vec(&m.mul_vec(&a, &m.d_vec(&b)).scaled(&sign::sign_of(m.deg(t[0]))));
        lhs != rhs
    });
    r.push("leibniz", None, leib);
    let dd = first_failure(m, (0..m.dim()).map(|i| vec![i]), |t| !m.d_vec(&m.d_vec(&unit_vec(t[0]))).is_zero());
    r.push("d-squared", None, dd);
    trace_checks(m, &mut r);
    r
}

/// `Σ b_k(1^r ⊗ b_l ⊗ 1^t)` on the tuple `t`.
pub fn stasheff_defect(m: &AlgebraModel, t: &[usize]) -> Vector<usize> {
    let n = t.len();
    let mut out = Vector::new();
    for l in 1..=n {
        for r in 0..=(n - l) {
            let Some(inner) = m.bar_op(l, &t[r..r + l]) else { continue };
            let pre: i64 = t[..r].iter().map(|&q| m.sh(q)).sum();
            let s = sign::sign_of(pre);
            for (o, v) in inner {
                let mut nt = t[..r].to_vec();
                nt.push(*o);
                nt.extend_from_slice(&t[r + l..]);
                if let Some(outer) = m.bar_op(nt.len(), &nt) {
                    out.add_scaled(outer, &(v * &s));
                }
            }
        }
    }
    out
}

/// `⟨b_n(v_1..v_n), v_{n+1}⟩` with `⟨x, y⟩ = (-1)^{|x|} Tr(μ₂(x, y))`.
pub fn cyclic_form(m: &AlgebraModel, t: &[usize]) -> Scalar {
    let n = t.len() - 1;
    let mut acc = Scalar::zero();
    if let Some(out) = m.bar_op(n, &t[..n]) {
        for (o, c) in out {
            acc += &(c * &m.omega(*o, t[n])).neg_if(sign::odd(m.deg(*o)));
        }
    }
    acc
}

/// Cyclic invariance of [`cyclic_form`] under rotation, Koszul sign in shifted degrees.
pub fn cyclicity_defect(m: &AlgebraModel, t: &[usize]) -> Scalar {
    let n = t.len() - 1;
    let last = t[n];
    let rest: i64 = t[..n].iter().map(|&q| m.sh(q)).sum();
    let mut rot = vec![last];
    rot.extend_from_slice(&t[..n]);
    cyclic_form(m, t) - cyclic_form(m, &rot).neg_if(sign::odd(m.sh(last) * rest))
}

pub fn validate_a_infinity(m: &AlgebraModel) -> ValidationReport {
    let mut r = ValidationReport::default();
    let u = m.unit();
    grading_checks(m, &mut r);
    let mut unit = None;
    for (&k, tab) in &m.ops {
        for (z, out) in tab {
            if !z.contains(&u) {
                continue;
            }
            let ok = if k == 2 {
                let other = if z[0] == u { z[1] } else { z[0] };
                *out == Vector::unit(other)
            } else {
                out.is_zero()
            };
            if !ok && unit.is_none() {
                unit = Some(format!("mu{k}{}", tuple(m, z)));
            }
        }
    }
    for a in 0..m.dim() {
        if unit.is_none() && (m.product(u, a) != Some(&Vector::unit(a)) || m.product(a, u) != Some(&Vector::unit(a))) {
            unit = Some(format!("mu2 with unit on {}", m.label(a)));
        }
    }
    r.push("unit", None, unit);
    let top = (2 * m.max_arity - 1).max(4);
    for n in 1..=top {
        let w = first_failure(m, all_tuples(m, n), |t| !stasheff_defect(m, t).is_zero());
        r.push(format!("stasheff-{n}"), None, w);
    }
    for n in 1..=m.max_arity {
        let w = first_failure(m, all_tuples(m, n + 1), |t| !cyclicity_defect(m, t).is_zero());
        r.push(format!("cyclicity-{n}"), None, w);
    }
    trace_checks(m, &mut r);
    r
}

/// Dispatches on the model kind.
pub fn validate(m: &AlgebraModel) -> ValidationReport {
    match m.kind {
        super::ModelKind::Dga => validate_dga(m),
        super::ModelKind::AInfinity => validate_a_infinity(m),
    }
}
