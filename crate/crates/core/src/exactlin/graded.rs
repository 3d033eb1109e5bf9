//! Graded bookkeeping: Hilbert series, graded bases and per-degree operator families.

use std::collections::BTreeMap;

use serde::Serialize;

use super::matrix::FpMatrix;

/// Degree to dimension up to an explicit bound. Zero dimensions are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub bound: u32,
    dims: BTreeMap<u32, usize>,
}

impl HilbertSeries {
    pub fn new(bound: u32) -> Self {
        HilbertSeries {
            bound,
            dims: BTreeMap::new(),
        }
    }

    pub fn from_fn(bound: u32, mut f: impl FnMut(u32) -> usize) -> Self {
        let mut s = Self::new(bound);
        for d in 0..=bound {
            s.set(d, f(d));
        }
        s
    }

    pub fn set(&mut self, degree: u32, dim: usize) {
        assert!(degree <= self.bound, "degree {degree} beyond bound {}", self.bound);
        if dim == 0 {
            self.dims.remove(&degree);
        } else {
            self.dims.insert(degree, dim);
        }
    }

    pub fn get(&self, degree: u32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    /// Nonzero entries in ascending degree.
    pub fn entries(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.dims.iter().map(|(&d, &n)| (d, n))
    }

    /// Lowest degree with nonzero dimension.
    pub fn bottom(&self) -> Option<(u32, usize)> {
        self.entries().next()
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Degrees in which the two series differ, with both values.
    pub fn differences(&self, other: &HilbertSeries) -> Vec<(u32, usize, usize)> {
        let bound = self.bound.min(other.bound);
        (0..=bound)
            .filter_map(|d| {
                let (a, b) = (self.get(d), other.get(d));
                (a != b).then_some((d, a, b))
            })
            .collect()
    }
}

/// A graded vector space with opaque basis labels per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace<L> {
    d_min: u32,
    slices: Vec<Vec<L>>,
}

impl<L> GradedSpace<L> {
    pub fn new(d_min: u32) -> Self {
        GradedSpace {
            d_min,
            slices: Vec::new(),
        }
    }

    pub fn push_degree(&mut self, labels: Vec<L>) {
        self.slices.push(labels);
    }

    pub fn d_min(&self) -> u32 {
        self.d_min
    }

    /// Top degree, or `None` if no degree has been pushed.
    pub fn d_max(&self) -> Option<u32> {
        (!self.slices.is_empty()).then(|| self.d_min + self.slices.len() as u32 - 1)
    }

    pub fn labels(&self, d: u32) -> &[L] {
        d.checked_sub(self.d_min)
            .and_then(|i| self.slices.get(i as usize))
            .map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, d: u32) -> usize {
        self.labels(d).len()
    }

    pub fn hilbert(&self) -> HilbertSeries {
        let bound = self.d_max().unwrap_or(self.d_min);
        HilbertSeries::from_fn(bound, |d| self.dim(d))
    }
}

/// Per-degree matrices of an operator that raises degree by `shift`.
/// The matrix stored at `d` maps degree `d` to degree `d + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrixFamily {
    pub shift: u32,
    mats: BTreeMap<u32, FpMatrix>,
}

impl GradedMatrixFamily {
    pub fn new(shift: u32) -> Self {
        GradedMatrixFamily {
            shift,
            mats: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, d: u32, m: FpMatrix) {
        self.mats.insert(d, m);
    }

    pub fn at(&self, d: u32) -> Option<&FpMatrix> {
        self.mats.get(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &FpMatrix)> {
        self.mats.iter().map(|(&d, m)| (d, m))
    }
}
