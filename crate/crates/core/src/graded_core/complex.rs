use std::collections::BTreeMap;

use super::linalg::{ColumnSolver, Echelon, Vector};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Cochain complex with finite-dimensional components. `d_k` maps degree `k`
/// to degree `k+1` and is stored column by column over basis indices.
#[derive(Clone, Debug, Default)]
pub struct FiniteComplex {
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Vec<Vector<usize>>>,
}

impl FiniteComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_dim(&mut self, k: i64, dim: usize) {
        self.dims.insert(k, dim);
    }

    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().map(|(k, d)| (*k, *d))
    }

    pub fn set_differential(&mut self, k: i64, cols: Vec<Vector<usize>>) -> Result<()> {
        if cols.len() != self.dim(k) {
            return Err(Error::Integrity(format!(
                "differential at degree {k} has {} columns, expected {}",
                cols.len(),
                self.dim(k)
            )));
        }
        let target = self.dim(k + 1);
        if cols.iter().any(|c| c.keys().any(|&r| r >= target)) {
            return Err(Error::Integrity(format!("differential at degree {k} leaves degree {}", k + 1)));
        }
        self.diffs.insert(k, cols);
        Ok(())
    }

    pub fn apply(&self, k: i64, v: &Vector<usize>) -> Vector<usize> {
        let mut out = Vector::new();
        if let Some(cols) = self.diffs.get(&k) {
            for (j, c) in v {
                out.add_scaled(&cols[*j], c);
            }
        }
        out
    }

    fn columns(&self, k: i64) -> Vec<Vector<usize>> {
        match self.diffs.get(&k) {
            Some(c) => c.clone(),
            None => vec![Vector::new(); self.dim(k)],
        }
    }

    /// `d_k ∘ d_{k-1} = 0`, checked on every basis vector of degree `k-1`.
    pub fn check_square_zero(&self, k: i64) -> Result<()> {
        for j in 0..self.dim(k - 1) {
            let once = self.apply(k - 1, &Vector::unit(j));
            if !self.apply(k, &once).is_zero() {
                return Err(Error::Integrity(format!("d∘d is nonzero at degree {k} (basis vector {j} of degree {})", k - 1)));
            }
        }
        Ok(())
    }

    pub fn rank(&self, k: i64) -> usize {
        self.diffs.get(&k).map_or(0, |c| super::linalg::rank(c))
    }

    /// `dim H^k` by rank count, without building class representatives.
    pub fn homology_dim(&self, k: i64) -> Result<usize> {
        self.check_square_zero(k)?;
        self.check_square_zero(k + 1)?;
        Ok(self.dim(k) - self.rank(k) - self.rank(k - 1))
    }

    pub fn homology(&self, k: i64) -> Result<Homology> {
        self.check_square_zero(k)?;
        self.check_square_zero(k + 1)?;
        let cycles = ColumnSolver::new(&self.columns(k)).kernel();
        let boundaries: Vec<Vector<usize>> = self.columns(k - 1).into_iter().filter(|b| !b.is_zero()).collect();
        Ok(Homology::from_spaces(k, cycles, boundaries))
    }
}

/// Homology at one degree: a basis of classes and a coordinate solver.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    pub reps: Vec<Vector<usize>>,
    boundary_count: usize,
    solver: ColumnSolver<usize>,
    boundaries: Echelon<usize>,
    cycle_span: Echelon<usize>,
}

impl Homology {
    /// Classes from a cycle basis and a spanning set of boundaries.
    pub fn from_spaces(degree: i64, cycles: Vec<Vector<usize>>, boundaries: Vec<Vector<usize>>) -> Homology {
        let bech = Echelon::from_vectors(boundaries.iter());
        let mut ech = bech.clone();
        let mut reps = Vec::new();
        for z in &cycles {
            let r = ech.reduce(z.clone());
            if let Some(p) = r.first_key() {
                let inv = r.coeff(p).inv().expect("nonzero pivot");
                let r = r.scaled(&inv);
                ech.insert(r.clone());
                reps.push(r);
            }
        }
        let bcols: Vec<Vector<usize>> = bech.rows().map(|(_, r)| r.clone()).collect();
        let boundary_count = bcols.len();
        let mut cols = reps.clone();
        cols.extend(bcols);
        Homology {
            degree,
            solver: ColumnSolver::new(&cols),
            reps,
            boundary_count,
            boundaries: bech,
            cycle_span: Echelon::from_vectors(cycles.iter()),
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundary_count
    }

    pub fn is_cycle(&self, z: &Vector<usize>) -> bool {
        self.cycle_span.contains(z)
    }

    pub fn is_boundary(&self, z: &Vector<usize>) -> bool {
        self.boundaries.contains(z)
    }

    /// Class coordinates of a cycle; `None` if `z` is not a cycle.
    pub fn coords(&self, z: &Vector<usize>) -> Option<Vector<usize>> {
        if !self.is_cycle(z) {
            return None;
        }
        let sol = self.solver.solve(z)?;
        let n = self.reps.len();
        Some(sol.filter_map_keys(|&j| (j < n).then_some(j)))
    }

    /// Echelon basis of the boundaries.
    pub fn boundary_basis(&self) -> Vec<Vector<usize>> {
        self.boundaries.rows().map(|(_, r)| r.clone()).collect()
    }

    /// Cycle with the given class coordinates.
    pub fn lift(&self, coords: &Vector<usize>) -> Vector<usize> {
        let mut out = Vector::new();
        for (j, c) in coords {
            out.add_scaled(&self.reps[*j], c);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct InducedMap {
    /// Column `j` holds the class coordinates of the image of class `j`.
    pub matrix: Vec<Vector<usize>>,
    pub rank: usize,
    pub is_iso: bool,
}

/// Matrix of `H(f)` at degree `k`. `f` maps source basis index `j` at degree
/// `k` to `f[j]`; the neighbours `f_prev`, `f_next` (if given) are used to
/// check the commuting squares, and cycles/boundaries are always checked.
pub fn induced_map_on_homology(
    src: &FiniteComplex,
    tgt: &FiniteComplex,
    k: i64,
    f: &[Vector<usize>],
    f_prev: Option<&[Vector<usize>]>,
    f_next: Option<&[Vector<usize>]>,
) -> Result<InducedMap> {
    if f.len() != src.dim(k) {
        return Err(Error::Input(format!("map at degree {k} has {} columns, expected {}", f.len(), src.dim(k))));
    }
    let apply = |m: &[Vector<usize>], v: &Vector<usize>| {
        let mut out = Vector::new();
        for (j, c) in v {
            out.add_scaled(&m[*j], c);
        }
        out
    };
    if let Some(fn_) = f_next {
        for j in 0..src.dim(k) {
            let e = Vector::unit(j);
            if tgt.apply(k, &apply(f, &e)) != apply(fn_, &src.apply(k, &e)) {
                return Err(Error::Integrity(format!("not a chain map at degree {k}")));
            }
        }
    }
    if let Some(fp) = f_prev {
        for j in 0..src.dim(k - 1) {
            let e = Vector::unit(j);
            if tgt.apply(k - 1, &apply(fp, &e)) != apply(f, &src.apply(k - 1, &e)) {
                return Err(Error::Integrity(format!("not a chain map at degree {}", k - 1)));
            }
        }
    }
    let hs = src.homology(k)?;
    let ht = tgt.homology(k)?;
    for j in 0..src.dim(k - 1) {
        let b = src.apply(k - 1, &Vector::unit(j));
        if !ht.is_boundary(&apply(f, &b)) {
            return Err(Error::Integrity(format!("boundary not sent to a boundary at degree {k}")));
        }
    }
    let mut matrix = Vec::new();
    for z in &hs.reps {
        let img = apply(f, z);
        let c = ht
            .coords(&img)
            .ok_or_else(|| Error::Integrity(format!("cycle not sent to a cycle at degree {k}")))?;
        matrix.push(c);
    }
    let rank = super::linalg::rank(&matrix);
    Ok(InducedMap { is_iso: rank == hs.dim() && rank == ht.dim(), rank, matrix })
}

/// Matrix of the map induced by `f` between two homologies, which may sit in
/// different degrees or complexes. Checks that `f` sends boundaries to
/// boundaries and cycles to cycles.
pub fn induced_between(hs: &Homology, ht: &Homology, f: &[Vector<usize>]) -> Result<InducedMap> {
    let apply = |v: &Vector<usize>| {
        let mut out = Vector::new();
        for (j, c) in v {
            out.add_scaled(&f[*j], c);
        }
        out
    };
    for b in hs.boundary_basis() {
        if !ht.is_boundary(&apply(&b)) {
            return Err(Error::Integrity(format!("boundary not sent to a boundary ({} -> {})", hs.degree, ht.degree)));
        }
    }
    let mut matrix = Vec::new();
    for z in &hs.reps {
        let c = ht
            .coords(&apply(z))
            .ok_or_else(|| Error::Integrity(format!("cycle not sent to a cycle ({} -> {})", hs.degree, ht.degree)))?;
        matrix.push(c);
    }
    let rank = super::linalg::rank(&matrix);
    Ok(InducedMap { is_iso: rank == hs.dim() && rank == ht.dim(), rank, matrix })
}

/// Exactness of `X -f-> Y -g-> Z` on homology, `dim Y` given.
pub fn exact_at(f: &InducedMap, g: &InducedMap, dim_y: usize) -> bool {
    let composite_zero = f.matrix.iter().all(|col| {
        let mut out: Vector<usize> = Vector::new();
        for (j, c) in col {
            out.add_scaled(&g.matrix[*j], c);
        }
        out.is_zero()
    });
    composite_zero && f.rank + g.rank == dim_y
}

/// Identity-like helper: `n` unit columns.
pub fn identity_columns(n: usize) -> Vec<Vector<usize>> {
    (0..n).map(Vector::unit).collect()
}

pub fn zero_columns(n: usize) -> Vec<Vector<usize>> {
    vec![Vector::new(); n]
}

pub fn scalar_columns(n: usize, c: &Scalar) -> Vec<Vector<usize>> {
    (0..n).map(|j| Vector::single(j, c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term(c: i64) -> FiniteComplex {
        let mut cx = FiniteComplex::new();
        cx.set_dim(0, 1);
        cx.set_dim(1, 1);
        cx.set_differential(0, vec![Vector::single(0, Scalar::from_int(c))]).unwrap();
        cx
    }

    #[test]
    fn acyclic_two_term() {
        let cx = two_term(1);
        assert_eq!(cx.homology(0).unwrap().dim(), 0);
        assert_eq!(cx.homology(1).unwrap().dim(), 0);
    }

    #[test]
    fn zero_differential_keeps_basis() {
        let cx = two_term(0);
        let h = cx.homology(1).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.reps[0], Vector::unit(0));
    }

    #[test]
    fn square_zero_violation_is_reported() {
        let mut cx = FiniteComplex::new();
        for k in 0..3 {
            cx.set_dim(k, 1);
        }
        cx.set_differential(0, vec![Vector::unit(0)]).unwrap();
        cx.set_differential(1, vec![Vector::unit(0)]).unwrap();
        let err = cx.homology(1).unwrap_err().to_string();
        assert!(err.contains("at degree 1"), "{err}");
    }

    #[test]
    fn identity_and_zero_maps() {
        let cx = two_term(0);
        let id = induced_map_on_homology(&cx, &cx, 0, &identity_columns(1), None, Some(&identity_columns(1))).unwrap();
        assert!(id.is_iso);
        assert_eq!(id.matrix, vec![Vector::unit(0)]);
        let z = induced_map_on_homology(&cx, &cx, 0, &zero_columns(1), None, None).unwrap();
        assert_eq!(z.rank, 0);
        assert!(!z.is_iso);
    }

    #[test]
    fn non_chain_map_rejected() {
        let cx = two_term(1);
        let r = induced_map_on_homology(&cx, &cx, 0, &identity_columns(1), None, Some(&zero_columns(1)));
        assert!(r.is_err());
    }
}
