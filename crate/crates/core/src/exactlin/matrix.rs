//! Dense row-major matrices over a prime field.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

use super::bitmatrix::BitMatrix;
use super::field::PrimeField;

/// Which elimination kernel to use. `Auto` picks the bit-packed one at p = 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Auto,
    Generic,
    BitPacked,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Entries are reduced mod p.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        FpMatrix {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    /// Entries must already be reduced.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must be rows x cols");
        debug_assert!(data.iter().all(|&v| v < field.p()));
        FpMatrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p());
            }
        }
        FpMatrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, len: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), len);
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    /// Add `v` to entry (i, j).
    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: u32) {
        let idx = i * self.cols + j;
        self.data[idx] = self.field.add(self.data[idx], v % self.field.p());
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && &(self * self) == self
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let f = self.field;
        FpMatrix {
            data: self.data.iter().map(|&v| f.mul(v, c)).collect(),
            ..self.clone()
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let acc: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (acc % p) as u32
            })
            .collect()
    }

    fn check_same_shape(&self, other: &FpMatrix) {
        assert_eq!(self.field, other.field, "mixed moduli");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.field, other.field);
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> FpMatrix {
        FpMatrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> FpMatrix {
        FpMatrix::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j))
    }

    /// Reduced row echelon form with first-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        self.rref_with(Backend::Auto)
    }

    pub fn rref_with(&self, backend: Backend) -> Rref {
        let bit = match backend {
            Backend::Auto => self.field.p() == 2,
            Backend::Generic => false,
            Backend::BitPacked => {
                assert_eq!(self.field.p(), 2, "bit-packed backend requires p = 2");
                true
            }
        };
        if bit {
            let (reduced, pivots) = BitMatrix::from_fp(self).rref();
            Rref {
                matrix: reduced.to_fp(),
                pivots,
            }
        } else {
            self.rref_generic()
        }
    }

    fn rref_generic(&self) -> Rref {
        let f = self.field;
        let p = f.p();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in c..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = f.mul(m.data[idx], inv);
            }
            let pivot_row: Vec<u32> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = (p - factor) as u64;
                let row = &mut m.data[i * m.cols + c..(i + 1) * m.cols];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = ((*x as u64 + neg * y as u64) % p as u64) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Rank and a basis of the right kernel, returned as the columns of a
    /// `cols x nullity` matrix. The basis is the canonical one read off the RREF.
    pub fn rank_and_kernel(&self) -> (usize, FpMatrix) {
        self.rank_and_kernel_with(Backend::Auto)
    }

    pub fn rank_and_kernel_with(&self, backend: Backend) -> (usize, FpMatrix) {
        let Rref { matrix, pivots } = self.rref_with(backend);
        let f = self.field;
        let free: Vec<usize> = {
            let mut is_pivot = vec![false; self.cols];
            for &c in &pivots {
                is_pivot[c] = true;
            }
            (0..self.cols).filter(|&c| !is_pivot[c]).collect()
        };
        let mut kernel = FpMatrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            kernel.data[fc * free.len() + j] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                kernel.data[pc * free.len() + j] = f.neg(matrix.get(r, fc));
            }
        }
        (pivots.len(), kernel)
    }

    /// Inverse of a square matrix, or `Error::Singular`.
    pub fn invert(&self) -> Result<FpMatrix> {
        if !self.is_square() {
            return Err(Error::mismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let Rref { matrix, pivots } = aug.rref();
        let rank = pivots.iter().take_while(|&&c| c < n).count();
        if rank < n {
            return Err(Error::Singular { rank, dim: n });
        }
        Ok(FpMatrix::from_fn(self.field, n, n, |i, j| matrix.get(i, n + j)))
    }

    /// Some solution x of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.data[i * (self.cols + 1) + self.cols] = b[i];
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = matrix.get(r, self.cols);
        }
        Some(x)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(32)])?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a FpMatrix> for &'a FpMatrix {
    type Output = FpMatrix;

    fn mul(self, rhs: &'a FpMatrix) -> FpMatrix {
        assert_eq!(self.field, rhs.field, "mixed moduli");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let p = self.field.p() as u64;
        let n = rhs.cols;
        let mut out = vec![0u32; self.rows * n];
        let mut acc = vec![0u64; n];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                for (x, &b) in acc.iter_mut().zip(rhs.row(k)) {
                    *x += a * b as u64;
                }
            }
            for (o, &x) in out[i * n..(i + 1) * n].iter_mut().zip(&acc) {
                *o = (x % p) as u32;
            }
        }
        FpMatrix {
            rows: self.rows,
            cols: n,
            field: self.field,
            data: out,
        }
    }
}

impl<'a> Add<&'a FpMatrix> for &'a FpMatrix {
    type Output = FpMatrix;
    fn add(self, rhs: &'a FpMatrix) -> FpMatrix {
        self.check_same_shape(rhs);
        let f = self.field;
        FpMatrix {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        }
    }
}

impl<'a> Sub<&'a FpMatrix> for &'a FpMatrix {
    type Output = FpMatrix;
    fn sub(self, rhs: &'a FpMatrix) -> FpMatrix {
        self.check_same_shape(rhs);
        let f = self.field;
        FpMatrix {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
            ..self.clone()
        }
    }
}

/// Free-function form of [`FpMatrix::rank_and_kernel`].
pub fn rank_and_kernel(m: &FpMatrix) -> (usize, FpMatrix) {
    m.rank_and_kernel()
}

/// Free-function form of [`FpMatrix::invert`].
pub fn invert(m: &FpMatrix) -> Result<FpMatrix> {
    m.invert()
}
