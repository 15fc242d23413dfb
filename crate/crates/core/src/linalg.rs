//! Dense exact matrices, canonical subspaces, and the elimination routines
//! everything else is built on.
//!
//! Conventions: a [`LinearMap`] is a [`Matrix`] whose columns are indexed by
//! the domain basis, so it acts on column vectors. A [`Subspace`] is stored
//! as the rows of its reduced row-echelon basis, which makes equality of
//! subspaces plain entrywise equality.

use std::ops::{Index, IndexMut};

use crate::error::Error;
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// A linear map `k^domain -> k^codomain`; columns index the domain.
pub type LinearMap = Matrix;

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds from row vectors; `cols` is needed to shape an empty list.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row);
        }
        Matrix { field, rows: n, cols, data }
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Row-major flattening.
    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data has wrong length");
        Matrix { field, rows, cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self[(i, t)];
                if a.is_zero() {
                    continue;
                }
                let neg = -a;
                for j in 0..rhs.cols {
                    let b = &rhs[(t, j)];
                    if !b.is_zero() {
                        out[(i, j)].sub_mul_assign(&neg, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, x) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    o.sub_mul_assign(&-a, x);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (r2, c2) = (rhs.rows, rhs.cols);
        Matrix::from_fn(self.field, self.rows * r2, self.cols * c2, |r, c| {
            &self[(r / r2, c / c2)] * &rhs[(r % r2, c % c2)]
        })
    }

    /// Stacks `self` on top of `rhs`.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - self.cols)].clone()
            }
        })
    }

    /// Columns `range` of `self`.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    pub fn rank(&self) -> usize {
        let mut red = RowReducer::new(self.field, self.cols);
        for r in 0..self.rows {
            red.push(self.row(r).to_vec());
        }
        red.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_bijective(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

/// Incremental Gauss-Jordan elimination.
///
/// Stored rows are always in reduced row-echelon form, sorted by pivot.
#[derive(Clone, Debug)]
pub(crate) struct RowReducer {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub(crate) fn new(field: Field, cols: usize) -> Self {
        RowReducer {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Subtracts the stored rows so that `v` vanishes on every pivot column.
    pub(crate) fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    x.sub_mul_assign(&f, y);
                }
            }
        }
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub(crate) fn push(&mut self, mut v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v).skip(p) {
                if !y.is_zero() {
                    x.sub_mul_assign(&f, y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub(crate) fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub(crate) fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub(crate) fn into_matrix(self) -> (Matrix, Vec<usize>) {
        (Matrix::from_rows(self.field, self.cols, self.rows), self.pivots)
    }

    /// Basis of `{x : R x = 0}` for the stored rows `R`, restricted to the
    /// first `unknowns` columns.
    pub(crate) fn null_vectors(&self, unknowns: usize) -> Vec<Vec<Scalar>> {
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; unknowns];
            for &p in &self.pivots {
                if p < unknowns {
                    s[p] = true;
                }
            }
            s
        };
        let mut out = Vec::new();
        for free in (0..unknowns).filter(|&c| !pivot_set[c]) {
            let mut v = vec![self.field.zero(); unknowns];
            v[free] = self.field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if p < unknowns && !row[free].is_zero() {
                    v[p] = -&row[free];
                }
            }
            out.push(v);
        }
        out
    }
}

/// Reduced row-echelon form of `m` (zero rows dropped) and its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut red = RowReducer::new(m.field, m.cols);
    for r in 0..m.rows {
        red.push(m.row(r).to_vec());
    }
    red.into_matrix()
}

/// `{v : f v = 0}` in canonical form.
pub fn kernel(f: &LinearMap) -> Subspace {
    let mut red = RowReducer::new(f.field, f.cols);
    for r in 0..f.rows {
        red.push(f.row(r).to_vec());
    }
    Subspace::span(f.field, f.cols, red.null_vectors(f.cols))
}

/// Column space of `f` in canonical form.
pub fn image(f: &LinearMap) -> Subspace {
    Subspace::span(f.field, f.rows, f.columns())
}

/// A solution set `particular + kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub kernel: Subspace,
}

impl AffineSolution {
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let diff: Vec<Scalar> = v.iter().zip(&self.particular).map(|(a, b)| a - b).collect();
        self.kernel.contains(&diff)
    }
}

/// Solves `f x = b`. Returns `Ok(None)` when the system is inconsistent.
pub fn solve_affine(f: &LinearMap, b: &[Scalar]) -> Result<Option<AffineSolution>, Error> {
    if b.len() != f.rows {
        return Err(Error::DimensionMismatch {
            context: "right-hand side".into(),
            expected: f.rows,
            found: b.len(),
        });
    }
    let mut sys = LinearSystem::new(f.field, f.cols);
    for (r, rhs) in b.iter().enumerate() {
        sys.add_equation(f.row(r).to_vec(), rhs.clone());
    }
    Ok(sys.solve())
}

/// Accumulates linear equations `a · x = c` in `unknowns` variables.
///
/// Used for the larger intertwining systems, where the equation list is long
/// but the rank is bounded by the number of unknowns.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: usize,
    reducer: RowReducer,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new(field: Field, unknowns: usize) -> Self {
        LinearSystem {
            unknowns,
            reducer: RowReducer::new(field, unknowns + 1),
            inconsistent: false,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn field(&self) -> Field {
        self.reducer.field
    }

    pub fn add_equation(&mut self, mut coeffs: Vec<Scalar>, rhs: Scalar) {
        if self.inconsistent {
            return;
        }
        debug_assert_eq!(coeffs.len(), self.unknowns);
        coeffs.push(rhs);
        self.reducer.push(coeffs);
        if self.reducer.pivots().last() == Some(&self.unknowns) {
            self.inconsistent = true;
        }
    }

    pub fn add_homogeneous(&mut self, coeffs: Vec<Scalar>) {
        let zero = self.reducer.field.zero();
        self.add_equation(coeffs, zero);
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn solve(&self) -> Option<AffineSolution> {
        if self.inconsistent {
            return None;
        }
        let field = self.reducer.field;
        let mut particular = vec![field.zero(); self.unknowns];
        for (row, &p) in self.reducer.rows().iter().zip(self.reducer.pivots()) {
            particular[p] = row[self.unknowns].clone();
        }
        let kernel = Subspace::span(field, self.unknowns, self.reducer.null_vectors(self.unknowns));
        Some(AffineSolution { particular, kernel })
    }

    /// Solution space of the homogeneous part.
    pub fn solution_space(&self) -> Subspace {
        Subspace::span(
            self.reducer.field,
            self.unknowns,
            self.reducer.null_vectors(self.unknowns),
        )
    }
}

/// A subspace of `k^ambient`, stored by its canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(field: Field, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut red = RowReducer::new(field, ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector outside ambient space");
            red.push(v);
        }
        let (basis, pivots) = red.into_matrix();
        Subspace { ambient, basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reducer(&self) -> RowReducer {
        RowReducer {
            field: self.field(),
            cols: self.ambient,
            rows: self.basis.row_vectors(),
            pivots: self.pivots.clone(),
        }
    }

    /// `v` minus its component along the canonical basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(self.basis.row(i)) {
                if !y.is_zero() {
                    x.sub_mul_assign(&f, y);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the canonical basis; these are the pivot entries.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn vector(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let mut out = vec![self.field().zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = -c;
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    o.sub_mul_assign(&neg, b);
                }
            }
        }
        out
    }

    /// Inclusion map `k^dim -> k^ambient`.
    pub fn inclusion(&self) -> Matrix {
        self.basis.transpose()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut red = self.reducer();
        for v in other.basis_vectors() {
            red.push(v);
        }
        let (basis, pivots) = red.into_matrix();
        Subspace {
            ambient: self.ambient,
            basis,
            pivots,
        }
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let field = self.field();
        // a·A = b·B  <=>  [A^T | -B^T] (a, b) = 0
        let stacked = self.inclusion().hstack(&other.inclusion().scale(&-field.one()));
        let sols = kernel(&stacked);
        let d = self.dim();
        Subspace::span(
            field,
            self.ambient,
            sols.basis_vectors().into_iter().map(|s| self.vector(&s[..d])),
        )
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// Image of the subspace under `f`.
    pub fn map(&self, f: &LinearMap) -> Subspace {
        Subspace::span(
            self.field(),
            f.rows(),
            self.basis_vectors().iter().map(|v| f.apply(v)),
        )
    }
}

/// The quotient `k^ambient / n` in coordinates given by the non-pivot columns
/// of `n`'s canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub projection: Matrix,
    pub section: Matrix,
    pub free_columns: Vec<usize>,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.free_columns.len()
    }
}

pub fn quotient(ambient: usize, n: &Subspace) -> Result<Quotient, Error> {
    if n.ambient_dim() != ambient {
        return Err(Error::DimensionMismatch {
            context: "quotient subspace".into(),
            expected: ambient,
            found: n.ambient_dim(),
        });
    }
    let field = n.field();
    let mut is_pivot = vec![false; ambient];
    for &p in n.pivots() {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
    let q = free.len();
    // projection(v) = free entries of reduce(v); reduce(e_c) = e_c - sum_i [c = p_i] row_i
    let mut projection = Matrix::zeros(field, q, ambient);
    for c in 0..ambient {
        let mut e = vec![field.zero(); ambient];
        e[c] = field.one();
        let r = n.reduce(&e);
        for (k, &f) in free.iter().enumerate() {
            projection[(k, c)] = r[f].clone();
        }
    }
    let mut section = Matrix::zeros(field, ambient, q);
    for (k, &f) in free.iter().enumerate() {
        section[(f, k)] = field.one();
    }
    Ok(Quotient {
        projection,
        section,
        free_columns: free,
    })
}

/// The map `V/src -> W/tgt` induced by `f`, provided `f(src) ⊆ tgt`.
pub fn induced_map(f: &LinearMap, src: &Subspace, tgt: &Subspace) -> Result<Matrix, Error> {
    if !src.map(f).is_subspace_of(tgt) {
        return Err(Error::InvalidParameter(
            "map does not send the source subspace into the target subspace".into(),
        ));
    }
    let qs = quotient(f.cols(), src)?;
    let qt = quotient(f.rows(), tgt)?;
    Ok(qt.projection.mul(&f.mul(&qs.section)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(q(), 2);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_zero_drops_rows() {
        let (r, p) = rref(&Matrix::zeros(q(), 3, 3));
        assert_eq!(r.rows(), 0);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_hand_elimination() {
        let m = Matrix::from_i64(q(), &[&[2, 4], &[1, 2]]);
        let (r, p) = rref(&m);
        assert_eq!(r, Matrix::from_i64(q(), &[&[1, 2]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_back_substitutes() {
        let m = Matrix::from_i64(q(), &[&[0, 1, 2], &[1, 1, 0], &[1, 2, 2]]);
        let (r, p) = rref(&m);
        assert_eq!(r, Matrix::from_i64(q(), &[&[1, 0, -2], &[0, 1, 2]]));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::identity(q(), 3)).is_zero());
        assert!(kernel(&Matrix::zeros(q(), 3, 3)).is_full());
        let k = kernel(&Matrix::from_i64(q(), &[&[1, 1]]));
        assert_eq!(k, Subspace::span(q(), 2, vec![v(&[1, -1])]));
    }

    #[test]
    fn solve_affine_examples() {
        let id = Matrix::identity(q(), 2);
        let s = solve_affine(&id, &v(&[3, -1])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[3, -1]));
        assert!(s.kernel.is_zero());

        let zero = Matrix::zeros(q(), 2, 2);
        assert!(solve_affine(&zero, &v(&[1, 0])).unwrap().is_none());

        let row = Matrix::from_i64(q(), &[&[1, 1]]);
        let s = solve_affine(&row, &v(&[2])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[2, 0]));
        assert_eq!(s.kernel, Subspace::span(q(), 2, vec![v(&[1, -1])]));

        assert!(matches!(
            solve_affine(&row, &v(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quotient_examples() {
        let qz = quotient(2, &Subspace::zero(q(), 2)).unwrap();
        assert_eq!(qz.projection, Matrix::identity(q(), 2));
        assert_eq!(qz.dim(), 2);

        assert_eq!(quotient(2, &Subspace::full(q(), 2)).unwrap().dim(), 0);

        let n = Subspace::span(q(), 2, vec![v(&[1, 1])]);
        let qn = quotient(2, &n).unwrap();
        assert_eq!(qn.dim(), 1);
        assert_eq!(kernel(&qn.projection), n);
        assert_eq!(qn.projection.mul(&qn.section), Matrix::identity(q(), 1));
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(q(), 3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(q(), 3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(q(), 3, vec![v(&[0, 1, 0])]));
        assert!(a.sum(&b).is_full());
        let c = Subspace::span(q(), 3, vec![v(&[1, 1, 1])]);
        assert!(a.intersection(&c).is_zero());
    }

    #[test]
    fn coordinates_are_pivot_entries() {
        let s = Subspace::span(q(), 3, vec![v(&[1, 2, 0]), v(&[0, 0, 1])]);
        let w = v(&[3, 6, -2]);
        let c = s.coords(&w).unwrap();
        assert_eq!(c, v(&[3, -2]));
        assert_eq!(s.vector(&c), w);
        assert!(s.coords(&v(&[0, 1, 0])).is_none());
    }

    #[test]
    fn induced_map_on_quotients() {
        // f = diag(1, 2) maps span{e0} into itself
        let f = Matrix::from_i64(q(), &[&[1, 0], &[0, 2]]);
        let n = Subspace::span(q(), 2, vec![v(&[1, 0])]);
        let m = induced_map(&f, &n, &n).unwrap();
        assert_eq!(m, Matrix::from_i64(q(), &[&[2]]));
        let bad = Subspace::span(q(), 2, vec![v(&[1, 1])]);
        assert!(induced_map(&f, &bad, &bad).is_err());
    }
}
