//! The p = 2 polynomial model: `F_2[x_1..x_n]` with GL_n acting by linear
//! substitution, subgroup invariants, the top Dickson class `c_n`, the Hecke
//! action on `c_m F_2[x_1..x_m]^{B_m}` through transfers, and Steenrod squares.
//!
//! Homological degree d corresponds to polynomial degree d - 1.

mod model;
mod poly;

use std::sync::Arc;

use rayon::prelude::*;

use crate::chevalley::{all_vectors, elements, SubgroupDescriptor, SubgroupTag, WeylPermutation};
use crate::error::{Error, Result};
use crate::exactlin::{FpMatrix, PrimeField, Subspace};
use crate::hecke::HeckeModule;

pub use model::{
    hecke_span_rank, module_model, truncated_hom, truncated_hom_profile, HomReport, ModuleModel, HOM_UNKNOWN_LIMIT,
    MAX_MODEL_DEGREE,
    MAX_MODEL_TOTAL,
};
pub use poly::{monomial_count, monomial_degree, Monomial, Poly, PolySlice, MAX_VARS, SLICE_LIMIT};

fn require_two(field: PrimeField) -> Result<()> {
    if field.p() != 2 {
        return Err(Error::invalid(format!(
            "the polynomial model is implemented at p = 2 only, got p = {}",
            field.p()
        )));
    }
    Ok(())
}

fn elementary(n: usize, i: usize, j: usize) -> FpMatrix {
    let mut g = FpMatrix::identity(PrimeField::TWO, n);
    g.set(i, j, 1);
    g
}

/// A generating set of the subgroup (empty when it acts trivially).
pub fn generators(desc: &SubgroupDescriptor) -> Vec<FpMatrix> {
    let n = desc.n;
    let upper = || (0..n.saturating_sub(1)).map(move |i| elementary(n, i, i + 1));
    match desc.tag {
        SubgroupTag::Trivial | SubgroupTag::ElementaryAbelian => Vec::new(),
        SubgroupTag::Borel | SubgroupTag::Unipotent => upper().collect(),
        SubgroupTag::Parabolic(i) => upper().chain([elementary(n, i, i - 1)]).collect(),
        SubgroupTag::Full => upper()
            .chain((0..n.saturating_sub(1)).map(|i| elementary(n, i + 1, i)))
            .collect(),
        SubgroupTag::Weyl => (1..n)
            .map(|i| WeylPermutation::simple(i, n).matrix(PrimeField::TWO))
            .collect(),
    }
}

/// The invariants of a subgroup in one degree, as a subspace of the monomial
/// coordinates of the slice.
#[derive(Clone, Debug)]
pub struct InvariantSlice {
    pub slice: PolySlice,
    pub space: Subspace,
}

impl InvariantSlice {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Poly> {
        (0..self.dim())
            .map(|i| self.slice.to_poly(self.space.basis_vector(i)))
            .collect()
    }
}

/// Matrix of `g^*` on a slice.
pub fn substitution_matrix(slice: &PolySlice, g: &FpMatrix) -> FpMatrix {
    let cols: Vec<Vec<u32>> = slice
        .monomials()
        .iter()
        .map(|&m| slice.to_vector(&Poly::monomial(m).substitute(g)))
        .collect();
    FpMatrix::from_columns(PrimeField::TWO, slice.len(), &cols)
}

pub fn invariant_basis(desc: &SubgroupDescriptor, d: u32) -> Result<InvariantSlice> {
    require_two(desc.field)?;
    let slice = PolySlice::new(desc.n, d)?;
    let gens = generators(desc);
    if gens.is_empty() {
        let space = Subspace::full(PrimeField::TWO, slice.len());
        return Ok(InvariantSlice { slice, space });
    }
    let id = FpMatrix::identity(PrimeField::TWO, slice.len());
    let mut stacked = FpMatrix::zeros(PrimeField::TWO, 0, slice.len());
    for g in &gens {
        stacked = stacked.vstack(&(&substitution_matrix(&slice, g) - &id));
    }
    let space = Subspace::kernel(&stacked);
    Ok(InvariantSlice { slice, space })
}

/// Product of the `2^n - 1` nonzero linear forms in n variables.
pub fn euler_class(n: usize) -> Result<Poly> {
    if n > MAX_VARS {
        return Err(Error::guard("Euler class rank", n as u128, MAX_VARS as u128));
    }
    let mut c = Poly::one();
    for v in all_vectors(PrimeField::TWO, n) {
        if v.iter().any(|&a| a != 0) {
            c = c.mul(&Poly::linear_form(&v));
        }
    }
    Ok(c)
}

/// Representatives of the left cosets `g B` in the minimal parabolic `P_i`.
pub fn parabolic_coset_reps(m: usize, i: usize) -> Result<Vec<FpMatrix>> {
    let field = PrimeField::TWO;
    let borel = SubgroupDescriptor::borel(m, field);
    let parabolic = SubgroupDescriptor::new(SubgroupTag::Parabolic(i), m, field)?;
    let mut reps: Vec<(FpMatrix, FpMatrix)> = Vec::new();
    for g in elements(&parabolic)? {
        if !reps.iter().any(|(_, inv)| borel.contains(&(inv * &g))) {
            let inv = g.invert().expect("group elements are invertible");
            reps.push((g, inv));
        }
    }
    Ok(reps.into_iter().map(|(g, _)| g).collect())
}

/// One homological degree of `c_m F_2[x_1..x_m]^{B_m}`.
#[derive(Clone, Debug)]
pub struct ModelSlice {
    pub degree: u32,
    pub poly: PolySlice,
    pub space: Subspace,
    /// `ê(i)` for `1 <= i < m`, at index `i - 1`.
    pub e_hat: Vec<FpMatrix>,
}

impl ModelSlice {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn element(&self, j: usize) -> Poly {
        self.poly.to_poly(self.space.basis_vector(j))
    }

    /// Coordinates of a polynomial of this degree in the slice basis.
    pub fn coordinates(&self, f: &Poly) -> Option<Vec<u32>> {
        self.space.coordinates(&self.poly.to_vector(f))
    }
}

/// `c_m F_2[x_1..x_m]^{B_m}` in homological degrees `1..=max_degree`.
#[derive(Clone, Debug)]
pub struct InvariantModel {
    m: usize,
    max_degree: u32,
    euler: Poly,
    slices: Vec<ModelSlice>,
}

fn transfer(f: &Poly, reps: &[FpMatrix]) -> Poly {
    reps.iter().fold(Poly::zero(), |acc, r| acc.add(&f.substitute(r)))
}

impl InvariantModel {
    pub fn new(m: usize, max_degree: u32) -> Result<Arc<Self>> {
        let reps = (1..m).map(|i| parabolic_coset_reps(m, i)).collect::<Result<Vec<_>>>()?;
        Self::with_reps(m, max_degree, &reps)
    }

    /// Builds the model with the given coset representatives for each `P_i / B`.
    pub fn with_reps(m: usize, max_degree: u32, reps: &[Vec<FpMatrix>]) -> Result<Arc<Self>> {
        if m > MAX_VARS {
            return Err(Error::guard("model rank", m as u128, MAX_VARS as u128));
        }
        let euler = euler_class(m)?;
        let shift = (1u32 << m) - 1;
        let slices = (1..=max_degree)
            .into_par_iter()
            .map(|d| -> Result<ModelSlice> {
                let e = d - 1;
                let poly = PolySlice::new(m, e)?;
                let space = if e < shift {
                    Subspace::zero(PrimeField::TWO, poly.len())
                } else {
                    let inv = invariant_basis(&SubgroupDescriptor::borel(m, PrimeField::TWO), e - shift)?;
                    let vectors: Vec<Vec<u32>> =
                        inv.basis().iter().map(|f| poly.to_vector(&euler.mul(f))).collect();
                    Subspace::span(PrimeField::TWO, poly.len(), &vectors)
                };
                let e_hat = reps
                    .iter()
                    .map(|r| {
                        let cols: Vec<Vec<u32>> = (0..space.dim())
                            .map(|j| {
                                let f = poly.to_poly(space.basis_vector(j));
                                space
                                    .coordinates(&poly.to_vector(&transfer(&f, r)))
                                    .expect("transfer of an invariant lies in the model")
                            })
                            .collect();
                        FpMatrix::from_columns(PrimeField::TWO, space.dim(), &cols)
                    })
                    .collect();
                Ok(ModelSlice {
                    degree: d,
                    poly,
                    space,
                    e_hat,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(InvariantModel {
            m,
            max_degree,
            euler,
            slices,
        }))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn euler(&self) -> &Poly {
        &self.euler
    }

    /// Slice at homological degree `1 <= d <= max_degree`.
    pub fn slice(&self, d: u32) -> &ModelSlice {
        &self.slices[(d - 1) as usize]
    }

    pub fn dim(&self, d: u32) -> usize {
        if d == 0 || d > self.max_degree {
            0
        } else {
            self.slice(d).dim()
        }
    }

    pub fn hilbert(&self) -> crate::exactlin::HilbertSeries {
        crate::exactlin::HilbertSeries::from_fn(self.max_degree, |d| self.dim(d))
    }

    /// `ê(i)` on degree d.
    pub fn hecke_operator(&self, i: usize, d: u32) -> &FpMatrix {
        &self.slice(d).e_hat[i - 1]
    }

    /// `e(i) = 1 - ê(i)` on degree d.
    pub fn e_operator(&self, i: usize, d: u32) -> FpMatrix {
        let eh = self.hecke_operator(i, d);
        &FpMatrix::identity(PrimeField::TWO, eh.rows()) - eh
    }

    /// `Sq^k` from degree d to degree `d + k`.
    pub fn steenrod_matrix(&self, k: u32, d: u32) -> FpMatrix {
        assert!(d + k <= self.max_degree, "degree {} beyond the model bound", d + k);
        let src = self.slice(d);
        let dst = self.slice(d + k);
        let cols: Vec<Vec<u32>> = (0..src.dim())
            .map(|j| {
                dst.coordinates(&src.element(j).sq(k))
                    .expect("Steenrod squares preserve the model")
            })
            .collect();
        FpMatrix::from_columns(PrimeField::TWO, dst.dim(), &cols)
    }

    /// One degree as a module over H_m, with the letter `ê(i)` acting by the
    /// transfer through `P_{m-i}`. Strand 1 of the algebra is the last
    /// variable, so that `e_k` on the first k strands matches the innermost k
    /// operations of a word.
    pub fn degree_module(&self, d: u32) -> SliceModule<'_> {
        SliceModule { model: self, d }
    }
}

pub struct SliceModule<'a> {
    model: &'a InvariantModel,
    d: u32,
}

impl HeckeModule for SliceModule<'_> {
    fn rank(&self) -> usize {
        self.model.m
    }

    fn field(&self) -> PrimeField {
        PrimeField::TWO
    }

    fn dim(&self) -> usize {
        self.model.dim(self.d)
    }

    fn e_hat_matrix(&self, i: usize) -> FpMatrix {
        self.model.hecke_operator(self.model.m - i, self.d).clone()
    }
}
