//! Dense linear algebra over GF(2^k).
//!
//! Matrices are row-major. Gaussian elimination always pivots on the first
//! row holding a nonzero entry in the current column, so every result here is
//! a deterministic function of its input. Over GF(2) elimination runs on rows
//! packed into 64-bit words.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A column vector of scalars.
pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            let row: Vec<u16> = self.row(r).iter().map(|s| s.0).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// A subspace given by a list of basis vectors in an ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceData {
    pub ambient_dim: usize,
    pub basis: Vec<Vector>,
}

impl SubspaceData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Reduced row echelon form restricted to the first `pivot_limit` columns.
struct Echelon {
    reduced: Matrix,
    /// Pivot column of each of the first `rank` rows.
    pivots: Vec<usize>,
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::ZERO; n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::ONE;
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(|s| s.is_zero())
}

pub fn add_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += *b;
    }
}

pub fn add_scaled_into(field: &Field, acc: &mut [Scalar], c: Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    if c == Scalar::ONE {
        add_into(acc, v);
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += field.mul(c, *b);
    }
}

pub fn scale(field: &Field, c: Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| field.mul(c, *x)).collect()
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vector]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`Matrix::from_rows`] but also fixes the column count, which matters
    /// for matrices with no rows.
    pub fn from_rows_with_cols(field: &Field, rows: &[Vector], cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(field: &Field, rows: usize, columns: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        Ok(m)
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let (f, orow) = (&self.field, other.row(k));
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                add_scaled_into(f, dst, a, orow);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Scalar::ZERO;
                for (a, b) in self.row(r).iter().zip(v) {
                    acc += self.field.mul(*a, *b);
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        add_into(&mut out.data, &other.data);
        Ok(out)
    }

    pub fn scale(&self, c: Scalar) -> Matrix {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = self.field.mul(c, *v);
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "cannot place {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(&self.field, self.rows, cols);
        for r in 0..self.rows {
            out.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            out.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            self.row_mut(r0 + r)[c0..c0 + block.cols].copy_from_slice(block.row(r));
        }
    }

    fn echelon(&self, pivot_limit: usize) -> Echelon {
        if self.field.k() == 1 {
            self.echelon_packed(pivot_limit)
        } else {
            self.echelon_dense(pivot_limit)
        }
    }

    fn echelon_dense(&self, pivot_limit: usize) -> Echelon {
        let f = self.field.clone();
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..pivot_limit.min(cols) {
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    m.data.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(m.get(rank, c)).expect("pivot is nonzero");
            for j in 0..cols {
                let v = m.get(rank, j);
                m.set(rank, j, f.mul(inv, v));
            }
            let prow = m.row(rank).to_vec();
            for r in 0..m.rows {
                if r != rank {
                    let factor = m.get(r, c);
                    if !factor.is_zero() {
                        add_scaled_into(&f, m.row_mut(r), factor, &prow);
                    }
                }
            }
            pivots.push(c);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        Echelon { reduced: m, pivots }
    }

    fn echelon_packed(&self, pivot_limit: usize) -> Echelon {
        let words = self.cols.div_ceil(64).max(1);
        let mut rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                let mut w = vec![0u64; words];
                for (c, v) in self.row(r).iter().enumerate() {
                    if v.0 & 1 == 1 {
                        w[c / 64] |= 1u64 << (c % 64);
                    }
                }
                w
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..pivot_limit.min(self.cols) {
            let (wi, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][wi] & bit != 0) else {
                continue;
            };
            rows.swap(p, rank);
            let prow = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[wi] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(&prow).skip(wi) {
                        *a ^= *b;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        let mut reduced = Matrix::zeros(&self.field, self.rows, self.cols);
        for (r, w) in rows.iter().enumerate() {
            for c in 0..self.cols {
                if w[c / 64] >> (c % 64) & 1 == 1 {
                    reduced.set(r, c, Scalar::ONE);
                }
            }
        }
        Echelon { reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon(self.cols).pivots.len()
    }

    /// Basis of `{x : self x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> SubspaceData {
        let e = self.echelon(self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = unit_vector(self.cols, f);
                for (i, &p) in e.pivots.iter().enumerate() {
                    v[p] = e.reduced.get(i, f);
                }
                v
            })
            .collect();
        SubspaceData {
            ambient_dim: self.cols,
            basis,
        }
    }

    /// Basis of the column space, made of the pivot columns of `self`.
    pub fn column_space(&self) -> SubspaceData {
        let e = self.echelon(self.cols);
        SubspaceData {
            ambient_dim: self.rows,
            basis: e.pivots.iter().map(|&c| self.column(c)).collect(),
        }
    }

    /// One solution of `self x = b` for each column `b` of `rhs`, with free
    /// variables set to zero.
    pub fn solve_columns(&self, rhs: &Matrix) -> Result<Vec<Option<Vector>>> {
        if rhs.rows != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        let aug = self.hstack(rhs)?;
        let e = aug.echelon(self.cols);
        let rank = e.pivots.len();
        Ok((0..rhs.cols)
            .map(|j| {
                let col = self.cols + j;
                if (rank..self.rows).any(|r| !e.reduced.get(r, col).is_zero()) {
                    return None;
                }
                let mut x = zero_vector(self.cols);
                for (i, &p) in e.pivots.iter().enumerate() {
                    x[p] = e.reduced.get(i, col);
                }
                Some(x)
            })
            .collect())
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix::from_columns(&self.field, self.rows, &[b.to_vec()])?;
        Ok(self.solve_columns(&rhs)?.pop().flatten())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let id = Matrix::identity(&self.field, self.rows);
        let cols = self.solve_columns(&id).ok()?;
        if self.rank() != self.rows {
            return None;
        }
        let cols: Option<Vec<Vector>> = cols.into_iter().collect();
        Matrix::from_columns(&self.field, self.rows, &cols?).ok()
    }
}

/// `rank A`, where `A` has the given vectors as columns.
pub fn span_rank(field: &Field, ambient: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(field, ambient, vectors).map_or(0, |m| m.rank())
}

/// `dim span(cocycles) - dim span(coboundaries)`, failing when some
/// coboundary lies outside the span of the cocycles.
pub fn quotient_dim(
    field: &Field,
    cocycles: &SubspaceData,
    coboundaries: &SubspaceData,
) -> Result<usize> {
    if cocycles.ambient_dim != coboundaries.ambient_dim {
        return Err(Error::Dimension(format!(
            "ambient dimensions {} and {} differ",
            cocycles.ambient_dim, coboundaries.ambient_dim
        )));
    }
    let n = cocycles.ambient_dim;
    let zr = span_rank(field, n, &cocycles.basis);
    let br = span_rank(field, n, &coboundaries.basis);
    let mut all = cocycles.basis.clone();
    all.extend(coboundaries.basis.iter().cloned());
    if span_rank(field, n, &all) != zr {
        return Err(Error::NotContained);
    }
    Ok(zr - br)
}

/// Vectors from `candidates` extending `base` to a basis of the joint span,
/// chosen greedily in order.
pub fn complement(
    field: &Field,
    ambient: usize,
    base: &[Vector],
    candidates: &[Vector],
) -> Vec<Vector> {
    let mut current: Vec<Vector> = base.to_vec();
    let mut rank = span_rank(field, ambient, &current);
    let mut out = Vec::new();
    for c in candidates {
        current.push(c.clone());
        let r = span_rank(field, ambient, &current);
        if r > rank {
            rank = r;
            out.push(c.clone());
        } else {
            current.pop();
        }
    }
    out
}
