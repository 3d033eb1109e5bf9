//! Subspaces of F_p^n held in reduced echelon form.

use crate::error::{Error, Result};

use super::field::PrimeField;
use super::matrix::FpMatrix;

/// A subspace of `F_p^ambient`. The basis rows are in reduced row echelon form,
/// so coordinates of a member are read off at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: FpMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: FpMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &FpMatrix) -> Self {
        let r = m.rref();
        let rank = r.pivots.len();
        let rows: Vec<usize> = (0..rank).collect();
        Subspace {
            basis: r.matrix.select_rows(&rows),
            pivots: r.pivots,
        }
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &FpMatrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let mut m = FpMatrix::zeros(field, vectors.len(), ambient);
        for (i, v) in vectors.iter().enumerate() {
            m.row_mut(i).copy_from_slice(v);
        }
        Self::row_space(&m)
    }

    /// Kernel of `m` acting on column vectors.
    pub fn kernel(m: &FpMatrix) -> Self {
        let (_, k) = m.rank_and_kernel();
        Self::column_space(&k)
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis_vector(&self, i: usize) -> &[u32] {
        self.basis.row(i)
    }

    /// Basis vectors as the rows of a `dim x ambient` matrix.
    pub fn basis_rows(&self) -> &FpMatrix {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_columns(&self) -> FpMatrix {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient());
        let f = self.field();
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut residual = v.to_vec();
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (x, &b) in residual.iter_mut().zip(self.basis.row(i)) {
                *x = f.sub(*x, f.mul(c, b));
            }
        }
        residual.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis_vector(i)))
    }

    /// Vector with the given coordinates.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let f = self.field();
        let mut out = vec![0; self.ambient()];
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (x, &b) in out.iter_mut().zip(self.basis.row(i)) {
                *x = f.add(*x, f.mul(c, b));
            }
        }
        out
    }

    /// Image of this subspace under `op` (acting on column vectors).
    pub fn image_under(&self, op: &FpMatrix) -> Subspace {
        assert_eq!(op.cols(), self.ambient());
        let images: Vec<Vec<u32>> = (0..self.dim())
            .map(|i| op.mul_vec(self.basis_vector(i)))
            .collect();
        Subspace::span(self.field(), op.rows(), &images)
    }

    /// Matrix of `op` from `self` to `target`, in the stored bases.
    /// Fails if `op` does not carry `self` into `target`.
    pub fn restrict(&self, op: &FpMatrix, target: &Subspace) -> Result<FpMatrix> {
        if op.cols() != self.ambient() || op.rows() != target.ambient() {
            return Err(Error::mismatch("operator shape does not match ambient spaces"));
        }
        let mut out = FpMatrix::zeros(self.field(), target.dim(), self.dim());
        for j in 0..self.dim() {
            let image = op.mul_vec(self.basis_vector(j));
            let coords = target
                .coordinates(&image)
                .ok_or_else(|| Error::mismatch("operator leaves the target subspace"))?;
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::row_space(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x in both iff x = A^T a = B^T b; solve [A^T | -B^T] (a, b) = 0
        let f = self.field();
        let n = self.ambient();
        let (da, db) = (self.dim(), other.dim());
        let mut m = FpMatrix::zeros(f, n, da + db);
        for i in 0..da {
            for (r, &v) in self.basis_vector(i).iter().enumerate() {
                m.set(r, i, v);
            }
        }
        for i in 0..db {
            for (r, &v) in other.basis_vector(i).iter().enumerate() {
                m.set(r, da + i, f.neg(v));
            }
        }
        let (_, k) = m.rank_and_kernel();
        let vecs: Vec<Vec<u32>> = (0..k.cols())
            .map(|j| self.combine(&k.column(j)[..da]))
            .collect();
        Subspace::span(f, n, &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_roundtrip() {
        let f = PrimeField::new(5).unwrap();
        let s = Subspace::span(f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        assert_eq!(s.dim(), 2);
        let v = vec![2, 0, 2];
        assert!(s.contains(&v) == s.coordinates(&v).is_some());
        let c = s.coordinates(&[1, 3, 1]).unwrap();
        assert_eq!(s.combine(&c), vec![1, 3, 1]);
        assert!(!s.contains(&[0, 0, 1]));
    }

    #[test]
    fn restrict_projection() {
        let f = PrimeField::TWO;
        let proj = FpMatrix::from_rows(f, &[[1, 0, 0], [0, 1, 0], [0, 0, 0]]);
        let img = Subspace::column_space(&proj);
        assert_eq!(img.dim(), 2);
        let r = img.restrict(&proj, &img).unwrap();
        assert!(r.is_identity());
        let full = Subspace::full(f, 3);
        assert!(full.restrict(&FpMatrix::identity(f, 3), &img).is_err());
    }

    #[test]
    fn intersection_dimension() {
        let f = PrimeField::new(3).unwrap();
        let a = Subspace::span(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::span(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 2, 0]));
        assert_eq!(a.sum(&b).dim(), 3);
    }
}
