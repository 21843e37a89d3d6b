use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded_core::{sign, GradedBasis, GradedLinearMap, Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Field {
    Rational,
    GaussianRational,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Rational => "rational",
            Field::GaussianRational => "gaussian-rational",
        })
    }
}

/// Trace symmetry convention: `graded-symmetric` is `Tr(ab) = (-1)^{|a||b|} Tr(ba)`,
/// `paper-literal` carries an extra minus sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    PaperLiteral,
    GradedSymmetric,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::PaperLiteral, Convention::GradedSymmetric];

    pub fn parse(s: &str) -> Option<Convention> {
        match s {
            "paper-literal" => Some(Convention::PaperLiteral),
            "graded-symmetric" => Some(Convention::GradedSymmetric),
            _ => None,
        }
    }

    /// Extra sign factor relative to the graded-symmetric rule.
    pub fn extra_sign(self) -> bool {
        matches!(self, Convention::PaperLiteral)
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::PaperLiteral => "paper-literal",
            Convention::GradedSymmetric => "graded-symmetric",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Dga,
    AInfinity,
}

pub type OpTable = BTreeMap<Vec<usize>, Vector<usize>>;

/// Finite-dimensional algebra with unit and trace. A dga stores `μ₁ = d` and
/// `μ₂ = product`; an A∞ model additionally stores `μ_n` for `3 ≤ n ≤ max_arity`.
#[derive(Clone, Debug)]
pub struct AlgebraModel {
    pub name: String,
    pub field: Field,
    pub kind: ModelKind,
    pub convention: Convention,
    pub basis: GradedBasis,
    pub weights: Vec<i64>,
    pub weights_declared: bool,
    pub max_arity: usize,
    pub ops: BTreeMap<usize, OpTable>,
    pub trace: Vec<Scalar>,
    bar: BTreeMap<usize, OpTable>,
    bar_by_output: Vec<Vec<(usize, Vec<usize>, Scalar)>>,
    bar_by_input: Vec<Vec<BarSlot>>,
    ops_by_output: Vec<Vec<(usize, Vec<usize>, Scalar)>>,
}

/// A bar-table entry `b_k(z)` with `z[slot]` equal to a given label.
#[derive(Clone, Debug)]
pub struct BarSlot {
    pub arity: usize,
    pub inputs: Vec<usize>,
    pub slot: usize,
}

impl AlgebraModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: String,
        field: Field,
        kind: ModelKind,
        convention: Convention,
        basis: GradedBasis,
        weights: Option<Vec<i64>>,
        max_arity: usize,
        ops: BTreeMap<usize, OpTable>,
        trace: Vec<Scalar>,
    ) -> Result<Self> {
        let n = basis.len();
        if basis.unit().is_none() {
            return Err(Error::Input("the basis must contain a unit".into()));
        }
        if trace.len() != n {
            return Err(Error::Input("trace table has the wrong length".into()));
        }
        let weights_declared = weights.is_some();
        let weights = weights.unwrap_or_else(|| vec![0; n]);
        let mut m = AlgebraModel {
            name,
            field,
            kind,
            convention,
            basis,
            weights,
            weights_declared,
            max_arity: max_arity.max(2),
            ops: ops.into_iter().filter(|(_, t)| !t.is_empty()).collect(),
            trace,
            bar: BTreeMap::new(),
            bar_by_output: Vec::new(),
            bar_by_input: Vec::new(),
            ops_by_output: Vec::new(),
        };
        m.build_bar();
        Ok(m)
    }

    fn build_bar(&mut self) {
        let n = self.dim();
        let unit = self.unit();
        let mut bar = BTreeMap::new();
        for (&k, tab) in &self.ops {
            let mut bt = OpTable::new();
            for (z, out) in tab {
                let e: i64 = z.iter().enumerate().map(|(j, &q)| (k as i64 - 1 - j as i64) * self.sh(q)).sum();
                bt.insert(z.clone(), out.scaled(&-sign::sign_of(e)));
            }
            bar.insert(k, bt);
        }
        let mut by_out = vec![Vec::new(); n];
        let mut by_in = vec![Vec::new(); n];
        for (&k, tab) in &bar {
            for (z, out) in tab {
                if !z.contains(&unit) {
                    for (q, c) in out {
                        by_out[*q].push((k, z.clone(), c.clone()));
                    }
                }
                for (slot, &q) in z.iter().enumerate() {
                    let others_unit = z.iter().enumerate().any(|(i, &x)| i != slot && x == unit);
                    if !others_unit {
                        by_in[q].push(BarSlot { arity: k, inputs: z.clone(), slot });
                    }
                }
            }
        }
        let mut raw_out = vec![Vec::new(); n];
        for (&k, tab) in &self.ops {
            for (z, out) in tab {
                if !z.contains(&unit) {
                    for (q, c) in out {
                        raw_out[*q].push((k, z.clone(), c.clone()));
                    }
                }
            }
        }
        self.ops_by_output = raw_out;
        self.bar = bar;
        self.bar_by_output = by_out;
        self.bar_by_input = by_in;
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit(&self) -> usize {
        self.basis.unit().expect("validated model has a unit")
    }

    pub fn deg(&self, i: usize) -> i64 {
        self.basis.degree(i)
    }

    /// Shifted degree `|a| - 1`.
    pub fn sh(&self, i: usize) -> i64 {
        self.basis.degree(i) - 1
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn label(&self, i: usize) -> &str {
        self.basis.label(i)
    }

    pub fn index_of(&self, l: &str) -> Option<usize> {
        self.basis.index_of(l)
    }

    /// Labels spanning `Ā`, i.e. every label except the unit.
    pub fn bar_labels(&self) -> Vec<usize> {
        let u = self.unit();
        (0..self.dim()).filter(|&i| i != u).collect()
    }

    pub fn is_dga(&self) -> bool {
        self.ops.keys().all(|&k| k <= 2)
    }

    pub fn op(&self, k: usize, inputs: &[usize]) -> Option<&Vector<usize>> {
        self.ops.get(&k).and_then(|t| t.get(inputs))
    }

    pub fn op_table(&self, k: usize) -> Option<&OpTable> {
        self.ops.get(&k)
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.ops.keys().copied()
    }

    pub fn bar_op(&self, k: usize, inputs: &[usize]) -> Option<&Vector<usize>> {
        self.bar.get(&k).and_then(|t| t.get(inputs))
    }

    pub fn bar_tables(&self) -> &BTreeMap<usize, OpTable> {
        &self.bar
    }

    /// Entries `b_k(z)` with non-unit inputs whose output has a `q` component.
    pub fn bar_producing(&self, q: usize) -> &[(usize, Vec<usize>, Scalar)] {
        &self.bar_by_output[q]
    }

    /// Entries `μ_k(z)` with non-unit inputs whose output has a `q` component.
    pub fn ops_producing(&self, q: usize) -> &[(usize, Vec<usize>, Scalar)] {
        &self.ops_by_output[q]
    }

    /// Entries `b_k(z)` with `z[slot] = q` and no unit elsewhere in `z`.
    pub fn bar_consuming(&self, q: usize) -> &[BarSlot] {
        &self.bar_by_input[q]
    }

    pub fn d(&self, i: usize) -> Option<&Vector<usize>> {
        self.op(1, &[i])
    }

    pub fn product(&self, i: usize, j: usize) -> Option<&Vector<usize>> {
        self.op(2, &[i, j])
    }

    pub fn d_vec(&self, v: &Vector<usize>) -> Vector<usize> {
        let mut out = Vector::new();
        for (i, c) in v {
            if let Some(d) = self.d(*i) {
                out.add_scaled(d, c);
            }
        }
        out
    }

    pub fn mul_vec(&self, a: &Vector<usize>, b: &Vector<usize>) -> Vector<usize> {
        let mut out = Vector::new();
        for (i, x) in a {
            for (j, y) in b {
                if let Some(p) = self.product(*i, *j) {
                    out.add_scaled(p, &(x * y));
                }
            }
        }
        out
    }

    /// `μ_k` applied multilinearly to a list of vectors.
    pub fn op_vec(&self, k: usize, args: &[&Vector<usize>]) -> Vector<usize> {
        let mut out = Vector::new();
        let Some(tab) = self.ops.get(&k) else { return out };
        for (z, val) in tab {
            let mut c = Scalar::one();
            for (slot, &q) in z.iter().enumerate() {
                match args[slot].get(&q) {
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

    pub fn trace_of(&self, v: &Vector<usize>) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, c) in v {
            acc += &(c * &self.trace[*i]);
        }
        acc
    }

    /// `ω(a, b) = Tr(μ₂(a, b))` on basis labels.
    pub fn omega(&self, i: usize, j: usize) -> Scalar {
        self.product(i, j).map(|p| self.trace_of(p)).unwrap_or_else(Scalar::zero)
    }

    pub fn omega_vec(&self, a: &Vector<usize>, b: &Vector<usize>) -> Scalar {
        self.trace_of(&self.mul_vec(a, b))
    }

    /// Degree `D` carrying the trace, if the trace is nonzero and homogeneous.
    pub fn trace_degree(&self) -> Option<i64> {
        let mut degs = (0..self.dim()).filter(|&i| !self.trace[i].is_zero()).map(|i| self.deg(i));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Weight carrying the trace, if homogeneous.
    pub fn trace_weight(&self) -> Option<i64> {
        let mut ws = (0..self.dim()).filter(|&i| !self.trace[i].is_zero()).map(|i| self.weight(i));
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn differential_map(&self) -> Result<GradedLinearMap> {
        let cols = (0..self.dim()).map(|i| self.d(i).cloned().unwrap_or_default()).collect();
        GradedLinearMap::new(&self.basis, &self.basis, 1, cols)
    }

    /// The same data viewed as an A∞ model with `μ_{n≥3} = 0`.
    pub fn as_a_infinity(&self) -> AlgebraModel {
        let mut m = self.clone();
        m.kind = ModelKind::AInfinity;
        m
    }

    /// Element with the given `(label, coefficient)` pairs.
    pub fn element(&self, terms: &[(&str, Scalar)]) -> Result<Vector<usize>> {
        let mut v = Vector::new();
        for (l, c) in terms {
            let i = self.index_of(l).ok_or_else(|| Error::Input(format!("unknown label `{l}`")))?;
            v.add_term(i, c.clone());
        }
        Ok(v)
    }

    pub fn format_element(&self, v: &Vector<usize>) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter().map(|(i, c)| format!("{c}*{}", self.label(*i))).collect::<Vec<_>>().join(" + ")
    }
}
