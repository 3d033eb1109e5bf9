//! Right cosets B\GL_n in echelon normal form and the Bruhat decomposition.

use std::collections::HashMap;

use crate::error::{check_guard, Result};
use crate::exactlin::{FpMatrix, PrimeField};

use super::weyl::{all_permutations, WeylPermutation};
use super::{gl_order, GLElement, SubgroupDescriptor};

/// Largest coset space the enumerator will build.
pub const COSET_LIMIT: u128 = 100_000;

/// Canonical representative of `B g`, together with the pivot column of each row.
///
/// Left multiplication by an upper triangular matrix adds multiples of lower rows
/// to higher ones and rescales rows. Working bottom-up, each row is cleared at the
/// pivot columns of the rows below it and scaled to have leading entry 1.
fn echelon(g: &FpMatrix) -> (FpMatrix, Vec<usize>) {
    let f = g.field();
    let n = g.rows();
    let mut m = g.clone();
    let mut piv = vec![usize::MAX; n];
    for i in (0..n).rev() {
        for j in (i + 1..n).rev() {
            let c = piv[j];
            let factor = m.get(i, c);
            if factor == 0 {
                continue;
            }
            for col in c..n {
                let v = f.sub(m.get(i, col), f.mul(factor, m.get(j, col)));
                m.set(i, col, v);
            }
        }
        let lead = (0..n)
            .find(|&c| m.get(i, c) != 0)
            .expect("canonical form needs an invertible matrix");
        let inv = f.inv(m.get(i, lead)).unwrap();
        for col in lead..n {
            m.set(i, col, f.mul(inv, m.get(i, col)));
        }
        piv[i] = lead;
    }
    (m, piv)
}

pub fn canonical_coset_rep(g: &FpMatrix) -> FpMatrix {
    echelon(g).0
}

/// The Weyl element `w` with `g ∈ B w B`.
pub fn bruhat_cell(g: &GLElement) -> WeylPermutation {
    let (_, piv) = echelon(g.matrix());
    // row i of the normal form is e_{piv(i)} plus later columns, so it equals M_w u
    // with w(piv(i)) = i.
    WeylPermutation::new(piv).unwrap().inverse()
}

/// Exhaustive test of `g ∈ B w B` given the elements of B.
pub fn in_double_coset(g: &FpMatrix, w: &WeylPermutation, borel: &[FpMatrix]) -> bool {
    let field = g.field();
    let n = g.rows();
    let desc = SubgroupDescriptor::borel(n, field);
    let w_inv = w.inverse().matrix(field);
    borel.iter().any(|b| {
        let candidate = &(&w_inv * b) * g;
        desc.contains(&candidate)
    })
}

/// Ordered canonical representatives of `B\GL_n(F_p)`, grouped by Bruhat cell
/// (cells by length, then lexicographically), free entries in lexicographic order.
pub fn enumerate_cosets(n: usize, field: PrimeField) -> Result<Vec<FpMatrix>> {
    let p = field.p() as u128;
    let borel = (p - 1).pow(n as u32) * p.pow((n * n.saturating_sub(1) / 2) as u32);
    check_guard("coset count", gl_order(n, field.p()) / borel, COSET_LIMIT)?;

    let mut cells = all_permutations(n);
    cells.sort_by_key(|w| w.length());
    let mut reps = Vec::new();
    for w in cells {
        let piv = w.inverse();
        let mut base = FpMatrix::zeros(field, n, n);
        let mut free = Vec::new();
        for i in 0..n {
            base.set(i, piv.apply(i), 1);
            for c in piv.apply(i) + 1..n {
                if !(i + 1..n).any(|j| piv.apply(j) == c) {
                    free.push((i, c));
                }
            }
        }
        let total = field.p().pow(free.len() as u32);
        for mut code in 0..total {
            let mut m = base.clone();
            // most significant digit first, so the order is lexicographic
            for &(i, c) in free.iter().rev() {
                m.set(i, c, code % field.p());
                code /= field.p();
            }
            reps.push(m);
        }
    }
    Ok(reps)
}

/// The right `GL_n`-set `B\GL_n` with indexed representatives.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    n: usize,
    field: PrimeField,
    reps: Vec<FpMatrix>,
    index: HashMap<FpMatrix, usize>,
}

impl CosetSpace {
    pub fn new(n: usize, field: PrimeField) -> Result<Self> {
        let reps = enumerate_cosets(n, field)?;
        let index = reps.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(CosetSpace {
            n,
            field,
            reps,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> &FpMatrix {
        &self.reps[i]
    }

    pub fn reps(&self) -> &[FpMatrix] {
        &self.reps
    }

    /// Index of the coset `B g`.
    pub fn index_of(&self, g: &FpMatrix) -> usize {
        self.index[&canonical_coset_rep(g)]
    }

    /// Index of `B (rep_i h)`.
    pub fn act(&self, i: usize, h: &FpMatrix) -> usize {
        self.index_of(&(&self.reps[i] * h))
    }

    /// Bruhat cell of the coset `i`.
    pub fn cell(&self, i: usize) -> WeylPermutation {
        bruhat_cell(&GLElement::new(self.reps[i].clone()).unwrap())
    }
}
