use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;

use super::scalar::Scalar;

/// Sparse vector with exact coefficients; zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord> Default for Vector<K> {
    fn default() -> Self {
        Vector(BTreeMap::new())
    }
}

impl<K: Ord + std::fmt::Debug> std::fmt::Debug for Vector<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl<K: Ord + Clone> Vector<K> {
    pub fn new() -> Self {
        Vector(BTreeMap::new())
    }

    pub fn unit(k: K) -> Self {
        let mut m = BTreeMap::new();
        m.insert(k, Scalar::one());
        Vector(m)
    }

    pub fn single(k: K, c: Scalar) -> Self {
        let mut v = Vector::new();
        v.add_term(k, c);
        v
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.0 {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn add_vec(&mut self, other: &Vector<K>) {
        for (k, x) in &other.0 {
            self.add_term(k.clone(), x.clone());
        }
    }

    pub fn sub_vec(&mut self, other: &Vector<K>) {
        for (k, x) in &other.0 {
            self.add_term(k.clone(), -x);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector<K> {
        if c.is_zero() {
            return Vector::new();
        }
        Vector(self.0.iter().map(|(k, x)| (k.clone(), x * c)).collect())
    }

    pub fn neg(&self) -> Vector<K> {
        Vector(self.0.iter().map(|(k, x)| (k.clone(), -x)).collect())
    }

    pub fn get(&self, k: &K) -> Option<&Scalar> {
        self.0.get(k)
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.0.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.0.keys()
    }

    pub fn first_key(&self) -> Option<&K> {
        self.0.keys().next()
    }

    pub fn remove(&mut self, k: &K) -> Option<Scalar> {
        self.0.remove(k)
    }

    pub fn map_keys<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> J) -> Vector<J> {
        let mut out = Vector::new();
        for (k, x) in &self.0 {
            out.add_term(f(k), x.clone());
        }
        out
    }

    pub fn filter_map_keys<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<J>) -> Vector<J> {
        let mut out = Vector::new();
        for (k, x) in &self.0 {
            if let Some(j) = f(k) {
                out.add_term(j, x.clone());
            }
        }
        out
    }

    /// Sum of `self[k] * other[k]`.
    pub fn dot(&self, other: &Vector<K>) -> Scalar {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Scalar::zero();
        for (k, x) in &small.0 {
            if let Some(y) = big.0.get(k) {
                acc += &(x * y);
            }
        }
        acc
    }

    pub fn into_map(self) -> BTreeMap<K, Scalar> {
        self.0
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Vector<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut v = Vector::new();
        for (k, c) in iter {
            v.add_term(k, c);
        }
        v
    }
}

impl<'a, K: Ord> IntoIterator for &'a Vector<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Reduced row echelon form, one row per pivot key. Pivots are the smallest
/// key of each row and no row mentions another row's pivot.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord> {
    rows: BTreeMap<K, Vector<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a Vector<K>>) -> Self
    where
        K: 'a,
    {
        let mut e = Echelon::new();
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&K, &Vector<K>)> {
        self.rows.iter()
    }

    pub fn reduce(&self, mut v: Vector<K>) -> Vector<K> {
        let hits: Vec<K> = v.keys().filter(|k| self.rows.contains_key(k)).cloned().collect();
        for p in hits {
            if let Some(c) = v.get(&p).cloned() {
                v.add_scaled(&self.rows[&p], &-c);
            }
        }
        v
    }

    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` to the span; returns the new pivot if `v` was independent.
    pub fn insert(&mut self, v: Vector<K>) -> Option<K> {
        let r = self.reduce(v);
        let p = r.first_key()?.clone();
        let inv = r.coeff(&p).inv().expect("nonzero pivot");
        let r = r.scaled(&inv);
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                row.add_scaled(&r, &-c);
            }
        }
        self.rows.insert(p.clone(), r);
        Some(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Aug<K> {
    Row(K),
    Tag(usize),
}

/// Column system `Σ c_j col_j`: rank, kernel and particular solutions.
#[derive(Clone, Debug)]
pub struct ColumnSolver<K: Ord> {
    ncols: usize,
    ech: Echelon<Aug<K>>,
}

impl<K: Ord + Clone> ColumnSolver<K> {
    pub fn new(cols: &[Vector<K>]) -> Self {
        let mut ech = Echelon::new();
        for (j, c) in cols.iter().enumerate() {
            let mut v: Vector<Aug<K>> = c.map_keys(|k| Aug::Row(k.clone()));
            v.add_term(Aug::Tag(j), Scalar::one());
            ech.insert(v);
        }
        ColumnSolver { ncols: cols.len(), ech }
    }

    pub fn rank(&self) -> usize {
        self.ech.pivots().filter(|p| matches!(p, Aug::Row(_))).count()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Basis of relations `c` with `Σ c_j col_j = 0`, in pivot order.
    pub fn kernel(&self) -> Vec<Vector<usize>> {
        self.ech
            .rows()
            .filter(|(p, _)| matches!(p, Aug::Tag(_)))
            .map(|(_, row)| {
                row.filter_map_keys(|k| match k {
                    Aug::Tag(j) => Some(*j),
                    Aug::Row(_) => None,
                })
            })
            .collect()
    }

    pub fn solve(&self, target: &Vector<K>) -> Option<Vector<usize>> {
        let t = target.map_keys(|k| Aug::Row(k.clone()));
        let r = self.ech.reduce(t);
        let mut out = Vector::new();
        for (k, x) in &r {
            match k {
                Aug::Row(_) => return None,
                Aug::Tag(j) => out.add_term(*j, -x),
            }
        }
        Some(out)
    }

    pub fn in_span(&self, target: &Vector<K>) -> bool {
        self.solve(target).is_some()
    }
}

/// Rank through a semi-echelon form: each vector is reduced only until its
/// leading key is not yet a pivot.
pub fn rank<K: Ord + Clone>(vs: &[Vector<K>]) -> usize {
    let mut rows: BTreeMap<K, Vector<K>> = BTreeMap::new();
    for v in vs {
        let mut v = v.clone();
        while let Some(p) = v.first_key().cloned() {
            match rows.get(&p) {
                Some(row) => {
                    let c = v.coeff(&p);
                    v.add_scaled(row, &-c);
                }
                None => {
                    let inv = v.coeff(&p).inv().expect("nonzero pivot");
                    rows.insert(p, v.scaled(&inv));
                    break;
                }
            }
        }
    }
    rows.len()
}

pub fn kernel<K: Ord + Clone>(cols: &[Vector<K>]) -> Vec<Vector<usize>> {
    ColumnSolver::new(cols).kernel()
}

pub fn solve<K: Ord + Clone>(cols: &[Vector<K>], target: &Vector<K>) -> Option<Vector<usize>> {
    ColumnSolver::new(cols).solve(target)
}

/// `Σ c_j cols[j]` for a coefficient vector indexed by column.
pub fn combine<K: Ord + Clone>(cols: &[Vector<K>], coeffs: &Vector<usize>) -> Vector<K> {
    let mut out = Vector::new();
    for (j, c) in coeffs {
        out.add_scaled(&cols[*j], c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(entries: &[(usize, i64)]) -> Vector<usize> {
        entries.iter().map(|&(k, c)| (k, Scalar::from_int(c))).collect()
    }

    #[test]
    fn kernel_and_solve() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(0, 2), (1, 2)]), v(&[(1, 1)])];
        let s = ColumnSolver::new(&cols);
        assert_eq!(s.rank(), 2);
        let ker = s.kernel();
        assert_eq!(ker.len(), 1);
        assert!(combine(&cols, &ker[0]).is_zero());
        let t = v(&[(0, 3), (1, 5)]);
        let c = s.solve(&t).unwrap();
        assert_eq!(combine(&cols, &c), t);
        assert!(s.solve(&v(&[(2, 1)])).is_none());
    }

    #[test]
    fn echelon_is_reduced() {
        let mut e = Echelon::new();
        e.insert(v(&[(1, 2), (2, 4)]));
        e.insert(v(&[(2, 1), (3, 1)]));
        e.insert(v(&[(0, 1), (1, 1)]));
        for (p, row) in e.rows() {
            assert!(row.coeff(p).is_one());
            for q in e.pivots() {
                if q != p {
                    assert!(row.get(q).is_none());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec((0usize..5, 0usize..6, -3i64..4), 0..25)) {
            let mut cols = vec![Vector::new(); 6];
            for (r, c, x) in entries {
                cols[c].add_term(r, Scalar::from_int(x));
            }
            let s = ColumnSolver::new(&cols);
            let ker = s.kernel();
            prop_assert_eq!(s.rank() + ker.len(), cols.len());
            prop_assert_eq!(s.rank(), rank(&cols));
            prop_assert_eq!(s.rank(), Echelon::from_vectors(cols.iter()).rank());
            for k in &ker {
                prop_assert!(combine(&cols, k).is_zero());
            }
            let t = combine(&cols, &v(&[(0, 1), (3, -2), (5, 7)]));
            let c = s.solve(&t).unwrap();
            prop_assert_eq!(combine(&cols, &c), t);
        }
    }
}
