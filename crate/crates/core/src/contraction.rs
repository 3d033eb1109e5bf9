//! The total-length-m complex `L_m -> R_1 L_{m-1} -> ... -> R_m L_0` with the
//! maps d and their partners s realized by Hecke elements, and its exactness
//! certificate.
//!
//! Node (n, k) is the image of `ê_n e_k`. The map d goes from (n, k) to
//! (n+1, k-1) by `ê_{n+1} e_k`, and s goes back by `e_k ê_{n+1}`. At a node the
//! contracting operator is `λ d∘s + μ s∘d`, with only the available composite at
//! the two ends.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_guard, Error, Result};
use crate::exactlin::{FpMatrix, PrimeField, Subspace};
use crate::hecke::{ds_elements, HeckeAlgebra, NodeIdempotents, RegularModule, Representation};
use crate::invariants::InvariantModel;

pub const MAX_REGULAR_TOTAL: usize = 5;
pub const MAX_INVARIANT_TOTAL: usize = 4;
pub const MAX_DEGREE: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Backend {
    /// H_m acting on itself; no grading.
    #[serde(rename = "hecke-regular")]
    HeckeRegular,
    /// The graded polynomial model at p = 2.
    #[serde(rename = "invariants")]
    Invariants,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::HeckeRegular => "hecke-regular",
            Backend::Invariants => "invariants",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hecke-regular" => Ok(Backend::HeckeRegular),
            "invariants" => Ok(Backend::Invariants),
            _ => Err(Error::invalid(format!(
                "unknown backend {s:?} (expected hecke-regular or invariants)"
            ))),
        }
    }
}

/// One grading piece: a representation of H_m and, per node, its summand.
#[derive(Clone, Debug)]
struct Piece {
    degree: Option<u32>,
    rep: Representation,
    /// Indexed by n.
    nodes: Vec<Subspace>,
    /// `d[n]`: node n -> node n + 1.
    d: Vec<FpMatrix>,
    /// `s[n]`: node n + 1 -> node n.
    s: Vec<FpMatrix>,
}

#[derive(Clone, Debug)]
pub struct TotalComplex {
    m: usize,
    field: PrimeField,
    backend: Backend,
    max_degree: Option<u32>,
    alg: Arc<HeckeAlgebra>,
    pieces: Vec<Piece>,
}

fn build_piece(alg: &Arc<HeckeAlgebra>, degree: Option<u32>, rep: Representation) -> Result<Piece> {
    let m = alg.n();
    let nodes: Vec<Subspace> = (0..=m)
        .map(|n| Subspace::column_space(&rep.image(&NodeIdempotents::new(alg, n, m - n).corner())))
        .collect();
    let mut d = Vec::with_capacity(m);
    let mut s = Vec::with_capacity(m);
    for n in 0..m {
        let pair = ds_elements(alg, n, m - n);
        d.push(nodes[n].restrict(&rep.image(&pair.d), &nodes[n + 1])?);
        s.push(nodes[n + 1].restrict(&rep.image(&pair.s), &nodes[n])?);
    }
    Ok(Piece {
        degree,
        rep,
        nodes,
        d,
        s,
    })
}

pub fn build_total_complex(m: usize, field: PrimeField, backend: Backend, max_degree: Option<u32>) -> Result<TotalComplex> {
    let alg = HeckeAlgebra::new(m, field)?;
    let pieces = match backend {
        Backend::HeckeRegular => {
            check_guard("total length (hecke-regular)", m as u128, MAX_REGULAR_TOTAL as u128)?;
            if max_degree.is_some() {
                return Err(Error::invalid("the hecke-regular backend is ungraded; omit the degree bound"));
            }
            let rep = Representation::new(&alg, &RegularModule::new(&alg))?;
            vec![build_piece(&alg, None, rep)?]
        }
        Backend::Invariants => {
            check_guard("total length (invariants)", m as u128, MAX_INVARIANT_TOTAL as u128)?;
            if field.p() != 2 {
                return Err(Error::invalid("the invariants backend runs at p = 2 only"));
            }
            let bound = max_degree.ok_or_else(|| Error::invalid("the invariants backend needs a degree bound"))?;
            check_guard("degree bound", u128::from(bound), u128::from(MAX_DEGREE))?;
            let base = InvariantModel::new(m, bound)?;
            (1..=bound)
                .into_par_iter()
                .map(|d| {
                    let rep = Representation::new(&alg, &base.degree_module(d))?;
                    build_piece(&alg, Some(d), rep)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(TotalComplex {
        m,
        field,
        backend,
        max_degree,
        alg,
        pieces,
    })
}

impl TotalComplex {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    /// Grading labels in order (`None` for the ungraded backend).
    pub fn degrees(&self) -> Vec<Option<u32>> {
        self.pieces.iter().map(|p| p.degree).collect()
    }

    fn piece(&self, degree: Option<u32>) -> &Piece {
        self.pieces
            .iter()
            .find(|p| p.degree == degree)
            .unwrap_or_else(|| panic!("no piece at degree {degree:?}"))
    }

    /// Dimension of node (n, m - n) in the given degree.
    pub fn node_dim(&self, n: usize, degree: Option<u32>) -> usize {
        self.piece(degree).nodes[n].dim()
    }

    /// Matrix of d from node n to node n + 1.
    pub fn d_matrix(&self, n: usize, degree: Option<u32>) -> &FpMatrix {
        &self.piece(degree).d[n]
    }

    /// Matrix of s from node n + 1 to node n.
    pub fn s_matrix(&self, n: usize, degree: Option<u32>) -> &FpMatrix {
        &self.piece(degree).s[n]
    }

    /// The representation the nodes live in.
    pub fn representation(&self, degree: Option<u32>) -> &Representation {
        &self.piece(degree).rep
    }
}

/// `(d² = 0, s² = 0)` on every degree.
pub fn verify_chain(c: &TotalComplex) -> (bool, bool) {
    let mut d_ok = true;
    let mut s_ok = true;
    for piece in &c.pieces {
        for n in 0..c.m.saturating_sub(1) {
            d_ok &= (&piece.d[n + 1] * &piece.d[n]).is_zero();
            s_ok &= (&piece.s[n] * &piece.s[n + 1]).is_zero();
        }
    }
    (d_ok, s_ok)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Invertible,
    Singular { kernel: Vec<u32> },
}

impl Verdict {
    pub fn is_invertible(&self) -> bool {
        matches!(self, Verdict::Invertible)
    }
}

/// `λ d∘s + μ s∘d` at node n in one piece.
fn homotopy_operator(c: &TotalComplex, piece: &Piece, n: usize, lambda: u32, mu: u32) -> FpMatrix {
    let f = c.field;
    let dim = piece.nodes[n].dim();
    if c.m == 0 {
        return FpMatrix::identity(f, dim);
    }
    let mut op = FpMatrix::zeros(f, dim, dim);
    if n > 0 {
        op = &op + &(&piece.d[n - 1] * &piece.s[n - 1]).scale(f.reduce(i64::from(lambda)));
    }
    if n < c.m {
        op = &op + &(&piece.s[n] * &piece.d[n]).scale(f.reduce(i64::from(mu)));
    }
    op
}

fn verdict(op: &FpMatrix) -> Verdict {
    let (rank, kernel) = op.rank_and_kernel();
    if rank == op.cols() {
        Verdict::Invertible
    } else {
        Verdict::Singular {
            kernel: kernel.column(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeVerdict {
    pub n: usize,
    pub k: usize,
    pub degree: Option<u32>,
    pub verdict: Verdict,
}

/// Invertibility of `λ d∘s + μ s∘d` at every node and degree.
pub fn verify_homotopy(c: &TotalComplex, lambda: u32, mu: u32) -> Result<Vec<NodeVerdict>> {
    let f = c.field;
    if f.reduce(i64::from(lambda)) == 0 || f.reduce(i64::from(mu)) == 0 {
        return Err(Error::invalid("λ and μ must be nonzero in F_p"));
    }
    Ok(homotopy_verdicts(c, lambda, mu))
}

fn homotopy_verdicts(c: &TotalComplex, lambda: u32, mu: u32) -> Vec<NodeVerdict> {
    let mut out = Vec::new();
    for n in 0..=c.m {
        for piece in &c.pieces {
            out.push(NodeVerdict {
                n,
                k: c.m - n,
                degree: piece.degree,
                verdict: verdict(&homotopy_operator(c, piece, n, lambda, mu)),
            });
        }
    }
    out
}

/// At interior nodes where both composites are nonzero, dropping either scalar
/// makes the operator singular.
pub fn degenerate_scalars_singular(c: &TotalComplex) -> bool {
    c.pieces.iter().all(|piece| {
        (1..c.m).all(|n| {
            let ds = &piece.d[n - 1] * &piece.s[n - 1];
            let sd = &piece.s[n] * &piece.d[n];
            if ds.is_zero() || sd.is_zero() {
                return true;
            }
            !verdict(&homotopy_operator(c, piece, n, 1, 0)).is_invertible()
                && !verdict(&homotopy_operator(c, piece, n, 0, 1)).is_invertible()
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeEntry {
    pub d: Option<u32>,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub homotopy: BTreeMap<String, Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeEntry {
    pub n: usize,
    pub k: usize,
    pub degrees: Vec<DegreeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub m: usize,
    pub p: u32,
    pub backend: Backend,
    #[serde(rename = "D")]
    pub max_degree: Option<u32>,
    pub nodes: Vec<NodeEntry>,
    pub d_squared_zero: bool,
    pub s_squared_zero: bool,
    pub exact: bool,
}

impl Certificate {
    pub fn all_invertible(&self) -> bool {
        self.nodes
            .iter()
            .flat_map(|n| &n.degrees)
            .flat_map(|d| d.homotopy.values())
            .all(Verdict::is_invertible)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }
}

/// Ranks, homotopy verdicts for every pair of nonzero scalars, and the
/// exactness rank equation `rank_in + rank_out = dim` at every node. For m = 0
/// the augmentation onto the single class counts as the outgoing map.
pub fn exactness_certificate(c: &TotalComplex) -> Certificate {
    let (d_squared_zero, s_squared_zero) = verify_chain(c);
    let units: Vec<u32> = c.field.units().collect();
    let pairs: Vec<(u32, u32)> = units
        .iter()
        .flat_map(|&l| units.iter().map(move |&u| (l, u)))
        .collect();
    let per_piece: Vec<Vec<DegreeEntry>> = c
        .pieces
        .par_iter()
        .map(|piece| {
            (0..=c.m)
                .map(|n| {
                    let dim = piece.nodes[n].dim();
                    let rank_in = if n > 0 { piece.d[n - 1].rank() } else { 0 };
                    let rank_out = if n < c.m {
                        piece.d[n].rank()
                    } else if c.m == 0 {
                        dim
                    } else {
                        0
                    };
                    let homotopy = pairs
                        .iter()
                        .map(|&(l, u)| (format!("{l},{u}"), verdict(&homotopy_operator(c, piece, n, l, u))))
                        .collect();
                    DegreeEntry {
                        d: piece.degree,
                        dim,
                        rank_in,
                        rank_out,
                        homotopy,
                    }
                })
                .collect()
        })
        .collect();
    let nodes: Vec<NodeEntry> = (0..=c.m)
        .map(|n| NodeEntry {
            n,
            k: c.m - n,
            degrees: per_piece.iter().map(|entries| entries[n].clone()).collect(),
        })
        .collect();
    let exact = nodes
        .iter()
        .flat_map(|node| &node.degrees)
        .all(|e| e.rank_in + e.rank_out == e.dim);
    Certificate {
        m: c.m,
        p: c.field.p(),
        backend: c.backend,
        max_degree: c.max_degree,
        nodes,
        d_squared_zero,
        s_squared_zero,
        exact,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraChainReport {
    pub m: usize,
    pub p: u32,
    pub d_squared_zero: bool,
    pub s_squared_zero: bool,
}

/// `d∘d = 0` and `s∘s = 0` as products in H_m itself.
pub fn algebra_chain_check(m: usize, field: PrimeField) -> Result<AlgebraChainReport> {
    let alg = HeckeAlgebra::new(m, field)?;
    let pairs: Vec<_> = (0..m).map(|n| ds_elements(&alg, n, m - n)).collect();
    let mut d_ok = true;
    let mut s_ok = true;
    for n in 0..m.saturating_sub(1) {
        d_ok &= (&pairs[n + 1].d * &pairs[n].d).is_zero();
        s_ok &= (&pairs[n].s * &pairs[n + 1].s).is_zero();
    }
    Ok(AlgebraChainReport {
        m,
        p: field.p(),
        d_squared_zero: d_ok,
        s_squared_zero: s_ok,
    })
}
