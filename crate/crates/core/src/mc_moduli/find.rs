//! Producing verified Maurer–Cartan points.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use super::mc::Mc;
use crate::error::{Error, Result};
use crate::graded_core::{ColumnSolver, Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    VerifyOnly,
    NilpotentIteration,
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    Supplied,
    Found,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McPoint {
    pub element: Vector<usize>,
    pub origin: Origin,
}

/// Checks user-supplied points; the first non-solution is an error.
pub fn verify_points(mc: &Mc, points: &[Vector<usize>]) -> Result<Vec<McPoint>> {
    let m = mc.model;
    points
        .iter()
        .map(|a| {
            mc.check_odd(a)?;
            let r = mc.residual(a);
            if !r.is_zero() {
                return Err(Error::Verification(format!(
                    "{} is not a Maurer–Cartan point: residual {}",
                    m.format_element(a),
                    m.format_element(&r)
                )));
            }
            Ok(McPoint { element: a.clone(), origin: Origin::Supplied })
        })
        .collect()
}

/// All points with every coordinate in `values`, lexicographic in the
/// coordinates along the odd directions.
pub fn grid(mc: &Mc, values: &[Scalar]) -> Vec<McPoint> {
    let dirs = mc.odd_directions();
    if dirs.is_empty() {
        return vec![McPoint { element: Vector::new(), origin: Origin::Found }];
    }
    dirs.iter()
        .map(|_| values.iter())
        .multi_cartesian_product()
        .map(|cs| dirs.iter().zip(cs).map(|(&i, c)| (i, c.clone())).collect::<Vector<usize>>())
        .filter(|a| mc.is_mc(a))
        .map(|element| McPoint { element, origin: Origin::Found })
        .collect()
}

fn coordinate_cmp(dirs: &[usize], a: &Vector<usize>, b: &Vector<usize>) -> Ordering {
    for i in dirs {
        match a.coeff(i).canonical_cmp(&b.coeff(i)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn refuse(why: String) -> Error {
    Error::Input(format!("nilpotent iteration refused: {why}"))
}

/// Solves weight by weight. All odd directions must have positive weight and
/// every operation must add weights, so the residual in weight `w` is
/// affine in the weight-`w` coordinates. Free directions of each affine
/// solution set range over `values` in a fixed kernel basis.
pub fn nilpotent_iteration(mc: &Mc, values: &[Scalar]) -> Result<Vec<McPoint>> {
    let m = mc.model;
    if !m.weights_declared {
        return Err(refuse("the model declares no weights".into()));
    }
    for k in m.arities() {
        for (z, out) in m.op_table(k).into_iter().flatten() {
            let w: i64 = z.iter().map(|&q| m.weight(q)).sum();
            if let Some(o) = out.keys().find(|&&o| m.weight(o) != w) {
                return Err(refuse(format!("μ_{k} sends weight {w} to weight {} at `{}`", m.weight(*o), m.label(*o))));
            }
        }
    }
    let dirs = mc.odd_directions();
    if let Some(&i) = dirs.iter().find(|&&i| m.weight(i) <= 0) {
        return Err(refuse(format!("odd direction `{}` has weight {}", m.label(i), m.weight(i))));
    }
    let mut levels: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for &i in &dirs {
        levels.entry(m.weight(i)).or_default().push(i);
    }
    let at_weight = |v: &Vector<usize>, w: i64| v.filter_map_keys(|&i| (m.weight(i) == w).then_some(i));
    let mut partial = vec![Vector::new()];
    for (&w, level) in &levels {
        let mut next = Vec::new();
        for a in &partial {
            // every residual component below w is final
            let r = mc.residual(a);
            if r.keys().any(|&i| m.weight(i) < w) {
                continue;
            }
            let cols: Vec<Vector<usize>> = level.iter().map(|&d| at_weight(&mc.mu_prime(a, &Vector::unit(d)), w)).collect();
            let solver = ColumnSolver::new(&cols);
            let Some(part) = solver.solve(&at_weight(&r, w).neg()) else { continue };
            let kernel = solver.kernel();
            let lift = |c: &Vector<usize>| c.map_keys(|&j| level[j]);
            let base = {
                let mut b = a.clone();
                b.add_vec(&lift(&part));
                b
            };
            if kernel.is_empty() {
                next.push(base);
                continue;
            }
            for cs in kernel.iter().map(|_| values.iter()).multi_cartesian_product() {
                let mut b = base.clone();
                for (k, c) in kernel.iter().zip(cs) {
                    b.add_scaled(&lift(k), c);
                }
                next.push(b);
            }
        }
        partial = next;
    }
    let mut out: Vec<Vector<usize>> = partial.into_iter().filter(|a| mc.is_mc(a)).collect();
    out.sort_by(|a, b| coordinate_cmp(&dirs, a, b));
    out.dedup();
    Ok(out.into_iter().map(|element| McPoint { element, origin: Origin::Found }).collect())
}

/// Integers `lo..=hi` as scalars.
pub fn integer_grid(lo: i64, hi: i64) -> Vec<Scalar> {
    (lo..=hi).map(Scalar::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_models::fixture;
    use crate::hochschild::Path;

    #[test]
    fn grids_on_bundled_models() {
        let vals = integer_grid(-2, 2);
        for (name, path, n) in [("eps", Path::Dga, 5), ("xy", Path::Dga, 25), ("ainf", Path::Bar, 5), ("cone", Path::Dga, 125)] {
            let m = fixture(name).unwrap();
            let mc = Mc::new(&m, path).unwrap();
            let g = grid(&mc, &vals);
            assert_eq!(g.len(), n, "{name}");
            let it = nilpotent_iteration(&mc, &vals).unwrap();
            assert_eq!(it, g, "{name}");
        }
    }

    #[test]
    fn verify_only_rejects_non_solutions() {
        let m = fixture("cone").unwrap();
        let mc = Mc::new(&m, Path::Dga).unwrap();
        let bad = m.element(&[("t", Scalar::one())]).unwrap();
        let good = m.element(&[("e", Scalar::one())]).unwrap();
        assert!(verify_points(&mc, std::slice::from_ref(&good)).is_ok());
        assert!(matches!(verify_points(&mc, &[good, bad]), Err(Error::Verification(_))));
    }

    #[test]
    fn iteration_refuses_unweighted_odd_directions() {
        let m = fixture("m2").unwrap();
        let mc = Mc::new(&m, Path::Dga).unwrap();
        // no odd directions at all: the origin is the only point
        assert_eq!(nilpotent_iteration(&mc, &integer_grid(0, 1)).unwrap().len(), 1);
        let mut m = fixture("eps").unwrap();
        m.weights_declared = false;
        let mc = Mc::new(&m, Path::Dga).unwrap();
        assert!(nilpotent_iteration(&mc, &integer_grid(0, 1)).is_err());
    }
}
