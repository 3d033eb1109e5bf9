//! Matrix representations of H_n: the defining coset module, the left-regular
//! module, and any module presented by its ê(i) matrices.

use std::sync::Arc;

use serde::Serialize;

use crate::chevalley::{CosetSpace, GLElement, bruhat_cell};
use crate::error::{Error, Result};
use crate::exactlin::{FpMatrix, PrimeField, Subspace};

use super::algebra::{HeckeAlgebra, HeckeElement};
use super::idempotents::{corner_summands, multiplication_matrix, NodeIdempotents};

/// A finite-dimensional module over H_rank, given by the matrices of the ê(i)
/// acting on column vectors.
pub trait HeckeModule {
    fn rank(&self) -> usize;
    fn field(&self) -> PrimeField;
    fn dim(&self) -> usize;
    /// Matrix of ê(i), 1 <= i < rank.
    fn e_hat_matrix(&self, i: usize) -> FpMatrix;
}

/// The images of every T_w, built from `ρ(T_i) = ρ(ê(i)) - 1` and
/// `ρ(T_w) = ρ(T_s) ρ(T_{sw})`.
#[derive(Clone, Debug)]
pub struct Representation {
    alg: Arc<HeckeAlgebra>,
    dim: usize,
    t: Vec<FpMatrix>,
}

impl Representation {
    pub fn new<M: HeckeModule + ?Sized>(alg: &Arc<HeckeAlgebra>, module: &M) -> Result<Self> {
        if module.rank() != alg.n() || module.field() != alg.field() {
            return Err(Error::mismatch(format!(
                "module over H_{} cannot represent H_{}",
                module.rank(),
                alg.n()
            )));
        }
        let dim = module.dim();
        let id = FpMatrix::identity(alg.field(), dim);
        let gens: Vec<FpMatrix> = (1..alg.n())
            .map(|i| &module.e_hat_matrix(i) - &id)
            .collect();
        let tables = alg.tables();
        let mut t: Vec<FpMatrix> = Vec::with_capacity(tables.len());
        for w in 0..tables.len() {
            let m = match tables.left_descent(w) {
                None => id.clone(),
                Some((i, sw)) => &gens[i - 1] * &t[sw],
            };
            t.push(m);
        }
        Ok(Representation {
            alg: Arc::clone(alg),
            dim,
            t,
        })
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t(&self, w: usize) -> &FpMatrix {
        &self.t[w]
    }

    pub fn image(&self, x: &HeckeElement) -> FpMatrix {
        let f = self.alg.field();
        let mut out = FpMatrix::zeros(f, self.dim, self.dim);
        for (w, c) in x.support() {
            out = &out + &self.t[w].scale(c);
        }
        out
    }

    /// Rank of the span of the n! matrices ρ(T_w).
    pub fn span_rank(&self) -> usize {
        let f = self.alg.field();
        let flat: Vec<Vec<u32>> = self.t.iter().map(|m| m.data().to_vec()).collect();
        Subspace::span(f, self.dim * self.dim, &flat).dim()
    }
}

/// The permutation module F_p[B\GL_n] with H_n acting by double-coset sums:
/// `T_w (B g) = sum of the cosets B h inside B w B g`.
#[derive(Clone, Debug)]
pub struct CosetModule {
    space: CosetSpace,
    /// `cells[j][i]` is the Bruhat cell of `rep_j rep_i^{-1}`, as an index into
    /// the algebra's permutation table.
    cells: Vec<Vec<usize>>,
    alg: Arc<HeckeAlgebra>,
}

impl CosetModule {
    pub fn new(alg: &Arc<HeckeAlgebra>) -> Result<Self> {
        let space = CosetSpace::new(alg.n(), alg.field())?;
        let inverses: Vec<FpMatrix> = space
            .reps()
            .iter()
            .map(|r| r.invert().expect("coset representatives are invertible"))
            .collect();
        let cells = space
            .reps()
            .iter()
            .map(|rj| {
                inverses
                    .iter()
                    .map(|ri| {
                        let g = GLElement::new(rj * ri).expect("invertible");
                        alg.tables().index_of(&bruhat_cell(&g))
                    })
                    .collect()
            })
            .collect();
        Ok(CosetModule {
            space,
            cells,
            alg: Arc::clone(alg),
        })
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    /// Matrix of `T_w` from the double coset `B w B` directly.
    pub fn t_direct(&self, w: usize) -> FpMatrix {
        let len = self.space.len();
        FpMatrix::from_fn(self.alg.field(), len, len, |j, i| u32::from(self.cells[j][i] == w))
    }
}

impl HeckeModule for CosetModule {
    fn rank(&self) -> usize {
        self.alg.n()
    }

    fn field(&self) -> PrimeField {
        self.alg.field()
    }

    fn dim(&self) -> usize {
        self.space.len()
    }

    fn e_hat_matrix(&self, i: usize) -> FpMatrix {
        let s = self
            .alg
            .tables()
            .index_of(&crate::chevalley::WeylPermutation::simple(i, self.alg.n()));
        let id = FpMatrix::identity(self.alg.field(), self.dim());
        &id + &self.t_direct(s)
    }
}

/// H_n acting on itself by left multiplication, in the T_w basis.
#[derive(Clone, Debug)]
pub struct RegularModule {
    alg: Arc<HeckeAlgebra>,
}

impl RegularModule {
    pub fn new(alg: &Arc<HeckeAlgebra>) -> Self {
        RegularModule {
            alg: Arc::clone(alg),
        }
    }
}

impl HeckeModule for RegularModule {
    fn rank(&self) -> usize {
        self.alg.n()
    }

    fn field(&self) -> PrimeField {
        self.alg.field()
    }

    fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn e_hat_matrix(&self, i: usize) -> FpMatrix {
        multiplication_matrix(&self.alg.e_hat(i), true)
    }
}

/// The node operator `λ ê_n e_{k+1} ê_n + μ e_k ê_{n+1} e_k` at (n, k). At an end
/// node only the available summand appears; for n = k = 0 it is 1.
pub fn node_operator(alg: &Arc<HeckeAlgebra>, n: usize, k: usize, lambda: u32, mu: u32) -> HeckeElement {
    let ids = NodeIdempotents::new(alg, n, k);
    match (n, k) {
        (0, 0) => alg.one(),
        (0, _) => ids.e_k.scale(mu),
        (_, 0) => ids.e_hat_n.scale(lambda),
        _ => {
            let (a, b) = corner_summands(alg, n, k).expect("interior node");
            &a.scale(lambda) + &b.scale(mu)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerVerdict {
    pub dim: usize,
    pub rank: usize,
    pub invertible: bool,
}

/// Rank of `x` restricted to the image of the idempotent `corner`.
pub fn restricted_rank(rep: &Representation, corner: &HeckeElement, x: &HeckeElement) -> Result<CornerVerdict> {
    let image = Subspace::column_space(&rep.image(corner));
    let restricted = image.restrict(&rep.image(x), &image)?;
    let rank = restricted.rank();
    Ok(CornerVerdict {
        dim: image.dim(),
        rank,
        invertible: rank == image.dim(),
    })
}

/// Whether the node operator is invertible on the node's corner of `rep`.
pub fn corner_invertible(rep: &Representation, n: usize, k: usize, lambda: u32, mu: u32) -> Result<CornerVerdict> {
    let alg = rep.algebra();
    let corner = NodeIdempotents::new(alg, n, k).corner();
    restricted_rank(rep, &corner, &node_operator(alg, n, k, lambda, mu))
}
