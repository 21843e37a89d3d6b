//! Text format for algebra models.
//!
//! ```text
//! # comments start with '#'
//! name = xy
//! kind = dga              # or a-infinity; inferred from [muN] sections
//! field = rational        # or gaussian-rational
//! convention = graded-symmetric
//! arity = 3               # highest A∞ arity, a-infinity only
//!
//! [basis]
//! 1  0 unit               # label degree [unit] [w=weight]
//! x  1 w=1
//!
//! [product]
//! x y xy 1                # x·y += 1·xy
//!
//! [differential]
//! t h 1                   # d(t) += 1·h
//!
//! [mu3]
//! x1 x1 x1 p 1            # μ₃(x1,x1,x1) += 1·p
//!
//! [trace]
//! xy 1
//! ```
//!
//! Products with the unit that are not listed follow the unit law. Repeated
//! entries add up. The canonical serialization writes header keys in the
//! order above, the basis in declaration order and every table sorted by
//! basis index, omitting unit-law products.

use std::collections::BTreeMap;

use super::model::{AlgebraModel, Convention, Field, ModelKind, OpTable};
use crate::error::{Error, Result};
use crate::graded_core::{GradedBasis, Scalar, Vector};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

#[derive(PartialEq)]
enum Section {
    Header,
    Basis,
    Product,
    Differential,
    Mu(usize),
    Trace,
}

struct RawBasis {
    label: String,
    degree: i64,
    unit: bool,
    weight: Option<i64>,
}

pub fn parse_model(text: &str) -> Result<AlgebraModel> {
    let mut section = Section::Header;
    let mut name = String::new();
    let mut kind: Option<ModelKind> = None;
    let mut field = Field::Rational;
    let mut convention = Convention::GradedSymmetric;
    let mut arity: Option<usize> = None;
    let mut basis: Vec<RawBasis> = Vec::new();
    let mut products: Vec<(usize, Vec<String>, String, String)> = Vec::new();
    let mut diffs: Vec<(usize, String, String, String)> = Vec::new();
    let mut mus: Vec<(usize, usize, Vec<String>, String, String)> = Vec::new();
    let mut traces: Vec<(usize, String, String)> = Vec::new();

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('[') {
            let h = h.strip_suffix(']').ok_or_else(|| perr(ln, "unterminated section header"))?.trim();
            section = match h {
                "basis" => Section::Basis,
                "product" => Section::Product,
                "differential" => Section::Differential,
                "trace" => Section::Trace,
                _ => match h.strip_prefix("mu").and_then(|n| n.parse::<usize>().ok()) {
                    Some(n) if n >= 3 => Section::Mu(n),
                    _ => return Err(perr(ln, format!("unknown section `{h}`"))),
                },
            };
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match section {
            Section::Header => {
                let (k, v) = line.split_once('=').ok_or_else(|| perr(ln, "expected `key = value`"))?;
                let (k, v) = (k.trim(), v.trim());
                match k {
                    "name" => name = v.to_string(),
                    "kind" => {
                        kind = Some(match v {
                            "dga" => ModelKind::Dga,
                            "a-infinity" => ModelKind::AInfinity,
                            _ => return Err(perr(ln, format!("unknown kind `{v}`"))),
                        })
                    }
                    "field" => {
                        field = match v {
                            "rational" => Field::Rational,
                            "gaussian-rational" => Field::GaussianRational,
                            _ => return Err(perr(ln, format!("unknown field `{v}`"))),
                        }
                    }
                    "convention" => {
                        convention = Convention::parse(v).ok_or_else(|| perr(ln, format!("unknown convention `{v}`")))?
                    }
                    "arity" => arity = Some(v.parse().map_err(|_| perr(ln, format!("bad arity `{v}`")))?),
                    _ => return Err(perr(ln, format!("unknown key `{k}`"))),
                }
            }
            Section::Basis => {
                if toks.len() < 2 {
                    return Err(perr(ln, "basis line needs a label and a degree"));
                }
                let degree = toks[1].parse().map_err(|_| perr(ln, format!("bad degree `{}`", toks[1])))?;
                let mut unit = false;
                let mut weight = None;
                for t in &toks[2..] {
                    if *t == "unit" {
                        unit = true;
                    } else if let Some(w) = t.strip_prefix("w=") {
                        weight = Some(w.parse().map_err(|_| perr(ln, format!("bad weight `{w}`")))?);
                    } else {
                        return Err(perr(ln, format!("unexpected token `{t}`")));
                    }
                }
                basis.push(RawBasis { label: toks[0].to_string(), degree, unit, weight });
            }
            Section::Product => {
                if toks.len() != 4 {
                    return Err(perr(ln, "product line is `left right output coefficient`"));
                }
                products.push((ln, vec![toks[0].into(), toks[1].into()], toks[2].into(), toks[3].into()));
            }
            Section::Differential => {
                if toks.len() != 3 {
                    return Err(perr(ln, "differential line is `source target coefficient`"));
                }
                diffs.push((ln, toks[0].into(), toks[1].into(), toks[2].into()));
            }
            Section::Mu(n) => {
                if toks.len() != n + 2 {
                    return Err(perr(ln, format!("mu{n} line needs {n} inputs, an output and a coefficient")));
                }
                let ins = toks[..n].iter().map(|s| s.to_string()).collect();
                mus.push((ln, n, ins, toks[n].into(), toks[n + 1].into()));
            }
            Section::Trace => {
                if toks.len() != 2 {
                    return Err(perr(ln, "trace line is `label coefficient`"));
                }
                traces.push((ln, toks[0].into(), toks[1].into()));
            }
        }
    }

    if basis.is_empty() {
        return Err(perr(0, "empty basis"));
    }
    let units: Vec<usize> = basis.iter().enumerate().filter(|(_, b)| b.unit).map(|(i, _)| i).collect();
    if units.len() != 1 {
        return Err(perr(0, "exactly one basis label must be marked `unit`"));
    }
    let declared = basis.iter().any(|b| b.weight.is_some());
    let gb = GradedBasis::new(
        basis.iter().map(|b| b.label.clone()).collect(),
        basis.iter().map(|b| b.degree).collect(),
        Some(units[0]),
    )
    .map_err(|e| perr(0, e.to_string()))?;
    let weights = declared.then(|| basis.iter().map(|b| b.weight.unwrap_or(0)).collect());
    let n = gb.len();
    let unit = units[0];

    let idx = |ln: usize, l: &str| gb.index_of(l).ok_or_else(|| perr(ln, format!("unknown label `{l}`")));
    let scalar = |ln: usize, s: &str| -> Result<Scalar> {
        let c: Scalar = s.parse().map_err(|_| perr(ln, format!("bad coefficient `{s}`")))?;
        if field == Field::Rational && !c.is_real() {
            return Err(perr(ln, format!("coefficient `{s}` is not rational")));
        }
        Ok(c)
    };

    let mut ops: BTreeMap<usize, OpTable> = BTreeMap::new();
    let mut add = |k: usize, ins: Vec<usize>, out: usize, c: Scalar| {
        let e = ops.entry(k).or_default().entry(ins.clone()).or_default();
        e.add_term(out, c);
        if e.is_zero() {
            ops.get_mut(&k).unwrap().remove(&ins);
        }
    };
    let mut listed = std::collections::BTreeSet::new();
    for (ln, ins, out, c) in &products {
        let ins = vec![idx(*ln, &ins[0])?, idx(*ln, &ins[1])?];
        listed.insert(ins.clone());
        add(2, ins, idx(*ln, out)?, scalar(*ln, c)?);
    }
    for a in 0..n {
        for key in [vec![unit, a], vec![a, unit]] {
            if !listed.contains(&key) {
                listed.insert(key.clone());
                add(2, key, a, Scalar::one());
            }
        }
    }
    for (ln, s, t, c) in &diffs {
        add(1, vec![idx(*ln, s)?], idx(*ln, t)?, scalar(*ln, c)?);
    }
    let mut max_mu = 2;
    for (ln, k, ins, out, c) in &mus {
        let ins = ins.iter().map(|l| idx(*ln, l)).collect::<Result<Vec<_>>>()?;
        add(*k, ins, idx(*ln, out)?, scalar(*ln, c)?);
        max_mu = max_mu.max(*k);
    }
    let mut trace = vec![Scalar::zero(); n];
    for (ln, l, c) in &traces {
        let i = idx(*ln, l)?;
        trace[i] += &scalar(*ln, c)?;
    }
    let kind = kind.unwrap_or(if mus.is_empty() { ModelKind::Dga } else { ModelKind::AInfinity });
    if kind == ModelKind::Dga && !mus.is_empty() {
        return Err(perr(0, "a dga cannot declare [muN] sections"));
    }
    let max_arity = match (kind, arity) {
        (ModelKind::Dga, _) => 2,
        (ModelKind::AInfinity, Some(a)) => {
            if a < max_mu {
                return Err(perr(0, format!("arity {a} is below the highest declared operation mu{max_mu}")));
            }
            a
        }
        (ModelKind::AInfinity, None) => max_mu,
    };
    AlgebraModel::new(name, field, kind, convention, gb, weights, max_arity, ops, trace)
}

/// Canonical text form; parsing it reproduces the same model.
pub fn serialize_model(m: &AlgebraModel) -> String {
    let mut s = String::new();
    if !m.name.is_empty() {
        s += &format!("name = {}\n", m.name);
    }
    s += &format!(
        "kind = {}\n",
        match m.kind {
            ModelKind::Dga => "dga",
            ModelKind::AInfinity => "a-infinity",
        }
    );
    s += &format!("field = {}\n", m.field);
    s += &format!("convention = {}\n", m.convention);
    if m.kind == ModelKind::AInfinity {
        s += &format!("arity = {}\n", m.max_arity);
    }
    s += "\n[basis]\n";
    for i in 0..m.dim() {
        s += &format!("{} {}", m.label(i), m.deg(i));
        if i == m.unit() {
            s += " unit";
        }
        if m.weights_declared {
            s += &format!(" w={}", m.weight(i));
        }
        s += "\n";
    }
    let u = m.unit();
    let unit_law = |z: &[usize], out: &Vector<usize>| {
        let other = if z[0] == u { z[1] } else { z[0] };
        *out == Vector::unit(other)
    };
    let mut missing_unit_law = Vec::new();
    let mut prod = String::new();
    if let Some(t) = m.op_table(2) {
        for (z, out) in t {
            if z.contains(&u) && unit_law(z, out) {
                continue;
            }
            for (o, c) in out {
                prod += &format!("{} {} {} {}\n", m.label(z[0]), m.label(z[1]), m.label(*o), c);
            }
        }
    }
    for a in 0..m.dim() {
        for z in [[u, a], [a, u]] {
            if m.product(z[0], z[1]).is_none() {
                missing_unit_law.push(z);
            }
        }
    }
    for z in missing_unit_law {
        // a listed product that vanishes; the explicit zero keeps the unit law from applying
        let other = if z[0] == u { z[1] } else { z[0] };
        prod += &format!("{} {} {} 0\n", m.label(z[0]), m.label(z[1]), m.label(other));
    }
    if !prod.is_empty() {
        s += "\n[product]\n";
        s += &prod;
    }
    if let Some(t) = m.op_table(1) {
        s += "\n[differential]\n";
        for (z, out) in t {
            for (o, c) in out {
                s += &format!("{} {} {}\n", m.label(z[0]), m.label(*o), c);
            }
        }
    }
    for (&k, t) in &m.ops {
        if k < 3 {
            continue;
        }
        s += &format!("\n[mu{k}]\n");
        for (z, out) in t {
            for (o, c) in out {
                let ins: Vec<&str> = z.iter().map(|&q| m.label(q)).collect();
                s += &format!("{} {} {}\n", ins.join(" "), m.label(*o), c);
            }
        }
    }
    s += "\n[trace]\n";
    for i in 0..m.dim() {
        if !m.trace[i].is_zero() {
            s += &format!("{} {}\n", m.label(i), m.trace[i]);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: &str = "name = eps\n[basis]\n1 0 unit\ne 1 w=1\n[trace]\ne 1\n";

    #[test]
    fn parses_exterior_algebra_on_one_generator() {
        let m = parse_model(EPS).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.is_dga());
        assert_eq!(m.product(0, 1), Some(&Vector::unit(1)));
        assert_eq!(m.product(1, 1), None);
        assert_eq!(m.trace_degree(), Some(1));
    }

    #[test]
    fn round_trip_is_stable() {
        let m = parse_model(EPS).unwrap();
        let s = serialize_model(&m);
        let m2 = parse_model(&s).unwrap();
        assert_eq!(serialize_model(&m2), s);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_model("[basis]\n1 0 unit\nx one\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, msg: "bad degree `one`".into() });
        let e = parse_model("[basis]\n1 0 unit\n[product]\n1 q 1 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
        let e = parse_model("[basis]\n1 0 unit\nx 0\n[trace]\nx i\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 5, .. }));
    }
}
