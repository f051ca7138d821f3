//! Exact dense linear algebra over a [`Field`].
//!
//! Vectors and matrix entries are held as element codes (see [`crate::gf`]); the
//! [`Field`] travels with the matrix or subspace. Subspaces are kept in reduced row
//! echelon form, so two subspaces are equal exactly when their bases are.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf::{Field, FieldElement, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExlinError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix shapes do not fit: {0}")]
    Shape(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error(transparent)]
    Gf(#[from] GfError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&c| self.field.format(self.field.elem(c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Row-major element codes.
    pub fn from_codes(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, ExlinError> {
        if data.len() != rows * cols {
            return Err(ExlinError::Shape(format!("{} entries for {rows}x{cols}", data.len())));
        }
        if data.iter().any(|&c| c >= field.order()) {
            return Err(GfError::InvalidCoefficients(field.order()).into());
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Matrix from rows of code vectors, all of length `cols`.
    pub fn from_code_rows(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Result<Self, ExlinError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ExlinError::Shape(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend_from_slice(r);
        }
        Matrix::from_codes(field, rows.len(), cols, data)
    }

    pub fn from_elements(field: &Field, rows: &[Vec<FieldElement>]) -> Result<Self, ExlinError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ExlinError::Shape("ragged rows".into()));
            }
            for &x in r {
                if !field.contains(x) {
                    return Err(ExlinError::FieldMismatch);
                }
                data.push(x.code());
            }
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn code(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field.elem(self.code(i, j))
    }

    pub fn set_code(&mut self, i: usize, j: usize, c: u32) {
        assert!(c < self.field.order());
        self.data[i * self.cols + j] = c;
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) -> Result<(), ExlinError> {
        if !self.field.contains(x) {
            return Err(ExlinError::FieldMismatch);
        }
        self.data[i * self.cols + j] = x.code();
        Ok(())
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.code(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, ExlinError> {
        if self.field != other.field {
            return Err(ExlinError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(ExlinError::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.code(i, l);
                if a == 0 {
                    continue;
                }
                let src = other.row(l);
                let dst = out.row_mut(i);
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d = f.add_code(*d, f.mul_code(a, b));
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector of codes.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, ExlinError> {
        if v.len() != self.cols {
            return Err(ExlinError::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows).map(|i| dot_codes(f, self.row(i), v)).collect())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, ExlinError> {
        if self.field != other.field {
            return Err(ExlinError::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(ExlinError::Shape("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

pub fn dot_codes(f: &Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add_code(acc, f.mul_code(x, y)))
}

/// `dst -= c * src`, entrywise.
#[inline]
fn axpy_neg(f: &Field, dst: &mut [u32], c: u32, src: &[u32]) {
    let nc = f.neg_code(c);
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = f.add_code(*d, f.mul_code(nc, s));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; zero rows at the bottom.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Gauss-Jordan elimination, pivoting on the first nonzero entry in each column.
pub fn rref(m: &Matrix) -> Rref {
    let f = m.field.clone();
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| a.code(i, c) != 0) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv_code(a.code(r, c)).expect("pivot is nonzero");
        for x in a.row_mut(r) {
            *x = f.mul_code(*x, inv);
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..a.rows {
            if i != r {
                let coef = a.code(i, c);
                if coef != 0 {
                    axpy_neg(&f, a.row_mut(i), coef, &pivot_row);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    Rref { matrix: a, rank: r, pivot_cols }
}

/// Reduced echelon basis grown one row at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    // Sorted by pivot; each row has a 1 at its pivot and zeros at every other pivot.
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(field: &Field, cols: usize) -> Self {
        Echelon { field: field.clone(), cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` against the current basis in place; returns the first nonzero
    /// position of the remainder.
    fn reduce(&self, v: &mut [u32]) -> Option<usize> {
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                axpy_neg(&self.field, v, c, row);
            }
        }
        v.iter().position(|&x| x != 0)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v).is_none()
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn push(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length");
        if self.is_full() {
            return false;
        }
        let mut v = v.to_vec();
        let Some(pc) = self.reduce(&mut v) else {
            return false;
        };
        let f = &self.field;
        let inv = f.inv_code(v[pc]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul_code(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                axpy_neg(f, row, c, &v);
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pc);
        self.rows.insert(at, (pc, v));
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let data: Vec<u32> = self.rows.iter().flat_map(|(_, r)| r.iter().copied()).collect();
        let basis = Matrix { field: self.field.clone(), rows: self.rows.len(), cols: self.cols, data };
        Subspace { ambient: self.cols, pivots: self.rows.iter().map(|(p, _)| *p).collect(), basis }
    }
}

/// A subspace of `F^n`, stored as its RREF basis (one row per basis vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Echelon::new(field, ambient).into_subspace()
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the standard unit vectors at the given coordinates.
    pub fn from_units(field: &Field, ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let mut e = Echelon::new(field, ambient);
        for i in coords {
            let mut v = vec![0; ambient];
            v[i] = 1;
            e.push(&v);
        }
        e.into_subspace()
    }

    /// Span of code vectors of length `ambient`.
    pub fn span<'a>(field: &Field, ambient: usize, rows: impl IntoIterator<Item = &'a [u32]>) -> Self {
        let mut e = Echelon::new(field, ambient);
        for r in rows {
            if e.is_full() {
                break;
            }
            e.push(r);
        }
        e.into_subspace()
    }

    /// Span of the `count` vectors produced by `row(i)`, reduced in chunks on the
    /// rayon pool and merged. The result is canonical, hence identical to the
    /// sequential span in index order.
    pub fn span_from_fn<G>(field: &Field, ambient: usize, count: usize, row: G) -> Self
    where
        G: Fn(usize) -> Vec<u32> + Sync,
    {
        const CHUNK: usize = 512;
        let chunks = count.div_ceil(CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut e = Echelon::new(field, ambient);
                for i in c * CHUNK..count.min((c + 1) * CHUNK) {
                    if e.is_full() {
                        break;
                    }
                    e.push(&row(i));
                }
                e.into_subspace()
            })
            .reduce(|| Subspace::zero(field, ambient), |a, b| a.sum(&b).expect("same ambient"))
    }

    pub fn field(&self) -> &Field {
        &self.basis.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Vector dimension minus one; `-1` for the zero subspace.
    pub fn projective_dim(&self) -> i64 {
        self.dim() as i64 - 1
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn echelon(&self) -> Echelon {
        Echelon {
            field: self.field().clone(),
            cols: self.ambient,
            rows: self.pivots.iter().enumerate().map(|(i, &p)| (p, self.basis.row(i).to_vec())).collect(),
        }
    }

    pub fn contains_codes(&self, v: &[u32]) -> Result<bool, ExlinError> {
        if v.len() != self.ambient {
            return Err(ExlinError::AmbientMismatch(self.ambient, v.len()));
        }
        Ok(self.echelon().contains(v))
    }

    pub fn contains(&self, v: &[FieldElement]) -> Result<bool, ExlinError> {
        let codes = v
            .iter()
            .map(|&x| if self.field().contains(x) { Ok(x.code()) } else { Err(ExlinError::FieldMismatch) })
            .collect::<Result<Vec<_>, _>>()?;
        self.contains_codes(&codes)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), ExlinError> {
        if self.field() != other.field() {
            return Err(ExlinError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(ExlinError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExlinError> {
        self.check_compatible(other)?;
        let mut e = self.echelon();
        for i in 0..other.dim() {
            if e.is_full() {
                break;
            }
            e.push(other.basis.row(i));
        }
        Ok(e.into_subspace())
    }

    /// `{c : c . v = 0 for all v in self}` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        kernel_of_rref(self.field(), self.ambient, &self.basis, &self.pivots)
    }

    /// Intersection as the common kernel of both annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExlinError> {
        self.check_compatible(other)?;
        let constraints = self.annihilator().sum(&other.annihilator())?;
        Ok(constraints.annihilator())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, ExlinError> {
        self.check_compatible(other)?;
        let e = other.echelon();
        Ok((0..self.dim()).all(|i| e.contains(self.basis.row(i))))
    }

    /// Image under the linear map `v -> a v` (column convention).
    pub fn image(&self, a: &Matrix) -> Result<Subspace, ExlinError> {
        if a.cols != self.ambient || a.field != *self.field() {
            return Err(ExlinError::Shape("map does not act on this space".into()));
        }
        let mut e = Echelon::new(self.field(), a.rows);
        for i in 0..self.dim() {
            e.push(&a.mul_vec(self.basis.row(i))?);
        }
        Ok(e.into_subspace())
    }
}

fn kernel_of_rref(field: &Field, cols: usize, basis: &Matrix, pivots: &[usize]) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut e = Echelon::new(field, cols);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = field.neg_code(basis.code(r, free));
        }
        e.push(&v);
    }
    e.into_subspace()
}

/// `{v : m v = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    rowspace(m).annihilator()
}

pub fn rowspace(m: &Matrix) -> Subspace {
    Subspace::span(&m.field, m.cols, (0..m.rows).map(|i| m.row(i)))
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, ExlinError> {
    a.intersect(b)
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace, ExlinError> {
    a.sum(b)
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool, ExlinError> {
    a.check_compatible(b)?;
    Ok(a == b)
}
