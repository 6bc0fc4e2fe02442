//! Sparse matrices over a [`FieldSpec`] with exact elimination.
//!
//! Elimination inserts rows one at a time into an echelon structure keyed by
//! leading column (leftmost pivoting). The matrices built by this crate are
//! ±1-sparse and block-structured by vertex and internal degree, so fill-in
//! stays inside blocks and no reordering heuristic is needed.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::scalar::{FieldSpec, Scalar};

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Self::zeros(n, n, field);
        for (i, row) in m.data.iter_mut().enumerate() {
            row.push((i, field.one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed
    /// and zeros dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, field: FieldSpec, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            assert!(field.contains(&v), "entry from a different field");
            match acc[r].entry(c) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += &v;
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
            }
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Dense integer constructor, mostly for tests and fixtures.
    pub fn from_i64_rows(field: FieldSpec, cols: usize, rows: &[Vec<i64>]) -> Self {
        let triplets = rows.iter().enumerate().flat_map(|(r, row)| {
            assert_eq!(row.len(), cols);
            row.iter()
                .enumerate()
                .map(move |(c, &v)| (r, c, field.from_i64(v)))
        });
        Self::from_triplets(rows.len(), cols, field, triplets)
    }

    /// Builds a `rows x columns.len()` matrix whose columns are the given dense vectors.
    pub fn from_columns(rows: usize, field: FieldSpec, columns: &[Vec<Scalar>]) -> Self {
        let triplets = columns.iter().enumerate().flat_map(|(c, col)| {
            assert_eq!(col.len(), rows, "column length mismatch");
            col.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(r, v)| (r, c, v.clone()))
        });
        Self::from_triplets(rows, columns.len(), field, triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(idx) => self.data[r][idx].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            data[c].push((r, v.clone()));
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            data,
        }
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols, "vector length does not match column count");
        self.data
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (c, v) in row {
                    if !x[*c].is_zero() {
                        acc += &(v * &x[*c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        assert_eq!(self.field, other.field, "matrices over different fields");
        let mut triplets = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let p = a * b;
                    acc.entry(*c)
                        .and_modify(|e| *e += &p)
                        .or_insert(p);
                }
            }
            triplets.extend(acc.into_iter().map(|(c, v)| (r, c, v)));
        }
        Matrix::from_triplets(self.rows, other.cols, self.field, triplets)
    }

    /// Submatrix keeping the listed columns, in the listed order.
    pub fn select_columns(&self, columns: &[usize]) -> Matrix {
        let position: HashMap<usize, usize> =
            columns.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut out: SparseVec = row
                    .iter()
                    .filter_map(|(c, v)| position.get(c).map(|&n| (n, v.clone())))
                    .collect();
                out.sort_by_key(|(c, _)| *c);
                out
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: columns.len(),
            field: self.field,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row counts differ");
        assert_eq!(self.field, other.field, "matrices over different fields");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.extend(b.iter().map(|(c, v)| (c + self.cols, v.clone())));
                row
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            field: self.field,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new();
        for row in &self.data {
            if !row.is_empty() {
                ech.insert(row.clone());
            }
        }
        ech.len()
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> RowEchelon {
        let mut ech = Echelon::new();
        for row in &self.data {
            if !row.is_empty() {
                ech.insert(row.clone());
            }
        }
        ech.into_reduced()
    }

    /// Basis of the right null space, one vector per free column in increasing
    /// column order; each vector has a `1` at its free column and zeros at the
    /// other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        let pivot_set: BTreeSet<usize> = rref.pivots.iter().copied().collect();
        // column -> [(pivot column, entry)] for entries in non-pivot columns
        let mut by_free: HashMap<usize, Vec<(usize, &Scalar)>> = HashMap::new();
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            for (c, v) in row.iter().skip(1) {
                by_free.entry(*c).or_default().push((p, v));
            }
        }
        (0..self.cols)
            .filter(|c| !pivot_set.contains(c))
            .map(|f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                if let Some(entries) = by_free.get(&f) {
                    for (p, x) in entries {
                        v[*p] = -*x;
                    }
                }
                v
            })
            .collect()
    }

    /// Particular solution of `self * x = b` with free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solve_many(std::slice::from_ref(&b.to_vec()))
            .pop()
            .flatten()
    }

    /// Solves `self * x = b` for every right-hand side with one elimination.
    pub fn solve_many(&self, rhs: &[Vec<Scalar>]) -> Vec<Option<Vec<Scalar>>> {
        for b in rhs {
            assert_eq!(b.len(), self.rows, "right-hand side length does not match row count");
        }
        let sparse: Vec<SparseVec> = rhs
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, v.clone()))
                    .collect()
            })
            .collect();
        self.solve_many_sparse(&sparse)
            .into_iter()
            .map(|sol| {
                sol.map(|s| {
                    let mut x = vec![self.field.zero(); self.cols];
                    for (c, v) in s {
                        x[c] = v;
                    }
                    x
                })
            })
            .collect()
    }

    /// Sparse variant of [`Matrix::solve_many`]; right-hand sides and solutions are sparse.
    pub fn solve_many_sparse(&self, rhs: &[SparseVec]) -> Vec<Option<SparseVec>> {
        let n = self.cols;
        let mut extra: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (t, b) in rhs.iter().enumerate() {
            for (r, v) in b {
                assert!(*r < self.rows, "right-hand side index out of range");
                if !v.is_zero() {
                    extra[*r].push((n + t, v.clone()));
                }
            }
        }
        let mut ech = Echelon::new();
        let mut inconsistent = vec![false; rhs.len()];
        for (row, ext) in self.data.iter().zip(extra) {
            let mut aug = row.clone();
            aug.extend(ext);
            if aug.is_empty() {
                continue;
            }
            if let Some(residue) = ech.insert_bounded(aug, n) {
                // zero coefficient part: every surviving entry witnesses inconsistency
                for (c, _) in residue {
                    inconsistent[c - n] = true;
                }
            }
        }
        let reduced = ech.into_reduced();
        let mut sols: Vec<SparseVec> = vec![Vec::new(); rhs.len()];
        for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
            for (c, v) in row {
                if *c >= n {
                    sols[c - n].push((p, v.clone()));
                }
            }
        }
        sols.into_iter()
            .zip(inconsistent)
            .map(|(mut s, bad)| {
                if bad {
                    None
                } else {
                    s.sort_by_key(|(c, _)| *c);
                    Some(s)
                }
            })
            .collect()
    }
}

/// Reduced row echelon form: `rows[k]` has leading `1` at `pivots[k]` and zeros
/// in every other pivot column; pivots strictly increase.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseVec>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Incremental echelon structure; rows are normalized to leading coefficient 1.
struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, row: SparseVec) {
        let residue = self.insert_bounded(row, usize::MAX);
        debug_assert!(residue.is_none());
    }

    /// Reduces `row` against existing pivots. If the reduced row has a leading
    /// column `< limit` it becomes a new pivot row and `None` is returned. If it
    /// reduces to zero, `None` is returned. Otherwise the residue (all entries at
    /// columns `>= limit`) is returned and not inserted.
    fn insert_bounded(&mut self, mut row: SparseVec, limit: usize) -> Option<SparseVec> {
        loop {
            let Some((lead, coef)) = row.first().cloned() else {
                return None;
            };
            if lead >= limit {
                return Some(row);
            }
            match self.pivot_row.get(&lead) {
                Some(&p) => {
                    row = sub_scaled(&row, &coef, &self.rows[p]);
                }
                None => {
                    let inv = coef.inverse().expect("nonzero leading entry");
                    let normalized: SparseVec =
                        row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
                    self.pivot_row.insert(lead, self.rows.len());
                    self.rows.push(normalized);
                    return None;
                }
            }
        }
    }

    fn into_reduced(self) -> RowEchelon {
        let mut order: Vec<(usize, usize)> =
            self.pivot_row.iter().map(|(&c, &r)| (c, r)).collect();
        order.sort_unstable();
        let mut rows: Vec<Option<SparseVec>> = self.rows.into_iter().map(Some).collect();
        let mut done: HashMap<usize, SparseVec> = HashMap::new();
        // back substitution from the rightmost pivot
        for &(col, r) in order.iter().rev() {
            let mut row = rows[r].take().unwrap();
            let targets: Vec<(usize, Scalar)> = row
                .iter()
                .skip(1)
                .filter(|(c, _)| done.contains_key(c))
                .cloned()
                .collect();
            for (c, v) in targets {
                row = sub_scaled(&row, &v, &done[&c]);
            }
            done.insert(col, row);
        }
        let pivots: Vec<usize> = order.iter().map(|(c, _)| *c).collect();
        let rows = pivots.iter().map(|c| done.remove(c).unwrap()).collect();
        RowEchelon { pivots, rows }
    }
}

/// `a - k * b` for sorted sparse vectors.
fn sub_scaled(a: &SparseVec, k: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -&(k * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(k * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f2() -> FieldSpec {
        FieldSpec::prime(2)
    }

    fn circulant(field: FieldSpec) -> Matrix {
        Matrix::from_i64_rows(field, 3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]])
    }

    fn ints(field: FieldSpec, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        assert_eq!(Matrix::zeros(0, 0, q()).rank(), 0);
        assert!(Matrix::zeros(0, 0, q()).kernel_basis().is_empty());
        assert!(Matrix::zeros(0, 3, q()).kernel_basis().len() == 3);
        assert_eq!(Matrix::zeros(4, 0, q()).solve(&ints(q(), &[0, 0, 0, 0])), Some(vec![]));
        assert_eq!(Matrix::zeros(1, 0, q()).solve(&ints(q(), &[1])), None);
    }

    #[test]
    fn identity_rank() {
        assert_eq!(Matrix::identity(2, f2()).rank(), 2);
        assert!(Matrix::identity(2, f2()).kernel_basis().is_empty());
    }

    #[test]
    fn zero_row_kernel() {
        let k = Matrix::zeros(1, 2, q()).kernel_basis();
        assert_eq!(k, vec![ints(q(), &[1, 0]), ints(q(), &[0, 1])]);
    }

    #[test]
    fn circulant_rank_depends_on_characteristic() {
        assert_eq!(circulant(q()).rank(), 3);
        assert_eq!(circulant(f2()).rank(), 2);
        assert!(circulant(q()).kernel_basis().is_empty());
        assert_eq!(circulant(f2()).kernel_basis(), vec![ints(f2(), &[1, 1, 1])]);
    }

    #[test]
    fn solve_examples() {
        let b = ints(q(), &[3, -1]);
        assert_eq!(Matrix::identity(2, q()).solve(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(1, 1, q()).solve(&ints(q(), &[1])), None);
        let x = circulant(q()).solve(&ints(q(), &[2, 2, 2])).unwrap();
        assert_eq!(x, ints(q(), &[1, 1, 1]));
        assert_eq!(circulant(q()).mul_vec(&x), ints(q(), &[2, 2, 2]));
    }

    #[test]
    fn solve_many_separates_systems() {
        // second row is zero: rhs with a nonzero second entry is inconsistent
        let m = Matrix::from_i64_rows(q(), 2, &[vec![1, 2], vec![0, 0]]);
        let out = m.solve_many(&[ints(q(), &[1, 1]), ints(q(), &[4, 0]), ints(q(), &[0, 1])]);
        assert_eq!(out[0], None);
        assert_eq!(out[1], Some(ints(q(), &[4, 0])));
        assert_eq!(out[2], None);
    }

    #[test]
    #[should_panic]
    fn solve_dimension_mismatch_panics() {
        let _ = Matrix::identity(2, q()).solve(&ints(q(), &[1]));
    }

    #[test]
    fn rref_is_reduced() {
        let m = Matrix::from_i64_rows(q(), 4, &[vec![2, 4, 0, 2], vec![1, 2, 1, 0], vec![0, 0, 3, -3]]);
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 2]);
        for (row, p) in r.rows.iter().zip(&r.pivots) {
            assert_eq!(row[0].0, *p);
            assert!(row[0].1.is_one());
            for other in &r.pivots {
                if other != p {
                    assert!(row.iter().all(|(c, _)| c != other));
                }
            }
        }
    }

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_i64_rows(q(), 2, &[vec![1, 2], vec![3, 4]]);
        let b = Matrix::from_i64_rows(q(), 2, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b), Matrix::from_i64_rows(q(), 2, &[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose().get(0, 1), q().from_i64(3));
        assert_eq!(a.select_columns(&[1]).column(0), ints(q(), &[2, 4]));
        assert_eq!(a.hstack(&b).cols(), 4);
    }
}
