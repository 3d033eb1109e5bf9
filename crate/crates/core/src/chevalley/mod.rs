//! GL_n(F_p) and its standard subgroups, Borel cosets and Bruhat cells, and
//! the counting combinatorics of epimorphisms between elementary abelian groups.

mod cosets;
mod counting;
mod weyl;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{check_guard, Error, Result};
use crate::exactlin::{FpMatrix, PrimeField};

pub use cosets::{
    bruhat_cell, canonical_coset_rep, enumerate_cosets, in_double_coset, CosetSpace, COSET_LIMIT,
};
pub use counting::{
    count_epis, count_epis_brute, transrep_injectivity, TransRepReport, WreathGroup,
    EPI_BRUTE_LIMIT, WREATH_LIMIT,
};
pub use weyl::{all_permutations, word_lengths_by_search, WeylPermutation};

/// Largest group the enumerators will build.
pub const GROUP_ORDER_LIMIT: u128 = 10_000_000;

/// An invertible n x n matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GLElement {
    matrix: FpMatrix,
}

impl fmt::Debug for GLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

impl GLElement {
    pub fn new(matrix: FpMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::invalid("GL element must be square"));
        }
        if matrix.rank() < matrix.rows() {
            return Err(Error::Singular {
                rank: matrix.rank(),
                dim: matrix.rows(),
            });
        }
        Ok(GLElement { matrix })
    }

    pub fn identity(n: usize, field: PrimeField) -> Self {
        GLElement {
            matrix: FpMatrix::identity(field, n),
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Result<Self> {
        Self::new(FpMatrix::from_rows(field, rows))
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> FpMatrix {
        self.matrix
    }

    pub fn mul(&self, other: &GLElement) -> GLElement {
        GLElement {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn inverse(&self) -> GLElement {
        GLElement {
            matrix: self.matrix.invert().expect("GL elements are invertible"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SubgroupTag {
    Trivial,
    Borel,
    Unipotent,
    /// The minimal parabolic generated by the Borel subgroup and the i-th simple reflection.
    Parabolic(usize),
    Full,
    Weyl,
    /// Translations of F_p^n. Not a linear subgroup; it acts trivially on cohomology.
    ElementaryAbelian,
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupTag::Trivial => write!(f, "trivial"),
            SubgroupTag::Borel => write!(f, "borel"),
            SubgroupTag::Unipotent => write!(f, "unipotent"),
            SubgroupTag::Parabolic(i) => write!(f, "parabolic{i}"),
            SubgroupTag::Full => write!(f, "full"),
            SubgroupTag::Weyl => write!(f, "weyl"),
            SubgroupTag::ElementaryAbelian => write!(f, "elementary"),
        }
    }
}

impl std::str::FromStr for SubgroupTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "trivial" => SubgroupTag::Trivial,
            "borel" => SubgroupTag::Borel,
            "unipotent" => SubgroupTag::Unipotent,
            "full" => SubgroupTag::Full,
            "weyl" => SubgroupTag::Weyl,
            "elementary" => SubgroupTag::ElementaryAbelian,
            _ => match s.strip_prefix("parabolic").map(str::parse) {
                Some(Ok(i)) => SubgroupTag::Parabolic(i),
                _ => return Err(Error::invalid(format!("unknown subgroup tag '{s}'"))),
            },
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubgroupDescriptor {
    pub tag: SubgroupTag,
    pub n: usize,
    pub field: PrimeField,
}

fn pow(p: u128, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(p))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

/// |GL_n(F_p)| = prod_{i<n} (p^n - p^i).
pub fn gl_order(n: usize, p: u32) -> u128 {
    let q = pow(p as u128, n);
    (0..n).fold(1u128, |acc, i| acc.saturating_mul(q - pow(p as u128, i)))
}

impl SubgroupDescriptor {
    pub fn new(tag: SubgroupTag, n: usize, field: PrimeField) -> Result<Self> {
        if let SubgroupTag::Parabolic(i) = tag {
            if i < 1 || i >= n {
                return Err(Error::invalid(format!(
                    "parabolic index {i} needs 1 <= i <= n - 1 = {}",
                    n as i64 - 1
                )));
            }
        }
        Ok(SubgroupDescriptor { tag, n, field })
    }

    pub fn full(n: usize, field: PrimeField) -> Self {
        SubgroupDescriptor {
            tag: SubgroupTag::Full,
            n,
            field,
        }
    }

    pub fn borel(n: usize, field: PrimeField) -> Self {
        SubgroupDescriptor {
            tag: SubgroupTag::Borel,
            n,
            field,
        }
    }

    /// Order from closed forms, saturating on overflow.
    pub fn order_estimate(&self) -> u128 {
        let p = self.field.p() as u128;
        let n = self.n;
        let upper = n * n.saturating_sub(1) / 2;
        let borel = pow(p - 1, n).saturating_mul(pow(p, upper));
        match self.tag {
            SubgroupTag::Trivial => 1,
            SubgroupTag::Borel => borel,
            SubgroupTag::Unipotent => pow(p, upper),
            SubgroupTag::Parabolic(_) => borel.saturating_mul(p + 1),
            SubgroupTag::Full => gl_order(n, self.field.p()),
            SubgroupTag::Weyl => factorial(n),
            SubgroupTag::ElementaryAbelian => pow(p, n),
        }
    }

    /// Membership of a matrix. Always false for the translation group.
    pub fn contains(&self, g: &FpMatrix) -> bool {
        if g.rows() != self.n || g.cols() != self.n || g.field() != self.field {
            return false;
        }
        let n = self.n;
        let lower_zero = |skip: Option<(usize, usize)>| {
            (0..n).all(|i| (0..i).all(|j| Some((i, j)) == skip || g.get(i, j) == 0))
        };
        match self.tag {
            SubgroupTag::Trivial => g.is_identity(),
            SubgroupTag::Borel => lower_zero(None) && (0..n).all(|i| g.get(i, i) != 0),
            SubgroupTag::Unipotent => lower_zero(None) && (0..n).all(|i| g.get(i, i) == 1),
            SubgroupTag::Parabolic(i) => lower_zero(Some((i, i - 1))) && g.rank() == n,
            SubgroupTag::Full => g.rank() == n,
            SubgroupTag::Weyl => {
                (0..n).all(|i| {
                    let row = g.row(i);
                    row.iter().filter(|&&v| v == 1).count() == 1
                        && row.iter().filter(|&&v| v != 0).count() == 1
                }) && g.rank() == n
            }
            SubgroupTag::ElementaryAbelian => false,
        }
    }
}

/// Order of the described group; refuses above [`GROUP_ORDER_LIMIT`].
pub fn group_order(desc: &SubgroupDescriptor) -> Result<u128> {
    let est = desc.order_estimate();
    check_guard("group order", est, GROUP_ORDER_LIMIT)?;
    Ok(est)
}

/// [P_i : B_n], counted by enumeration.
pub fn parabolic_index(i: usize, n: usize, field: PrimeField) -> Result<u128> {
    let parabolic = SubgroupDescriptor::new(SubgroupTag::Parabolic(i), n, field)?;
    let borel = SubgroupDescriptor::borel(n, field);
    let big = elements(&parabolic)?.len() as u128;
    let small = elements(&borel)?.len() as u128;
    Ok(big / small)
}

/// All vectors of F_p^n in lexicographic order.
pub fn all_vectors(field: PrimeField, n: usize) -> Vec<Vec<u32>> {
    let p = field.p();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn gl_elements(n: usize, field: PrimeField) -> Vec<FpMatrix> {
    let vectors = all_vectors(field, n);
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let span = HashSet::from([vec![0u32; n]]);
    gl_rec(n, field, &vectors, &mut rows, &span, &mut out);
    out
}

fn gl_rec(
    n: usize,
    field: PrimeField,
    vectors: &[Vec<u32>],
    rows: &mut Vec<Vec<u32>>,
    span: &HashSet<Vec<u32>>,
    out: &mut Vec<FpMatrix>,
) {
    if rows.len() == n {
        let data = rows.concat();
        out.push(FpMatrix::from_data(field, n, n, data));
        return;
    }
    for v in vectors {
        if span.contains(v) {
            continue;
        }
        let mut next = HashSet::with_capacity(span.len() * field.p() as usize);
        for s in span {
            for c in 0..field.p() {
                next.insert(
                    s.iter()
                        .zip(v)
                        .map(|(&a, &b)| field.add(a, field.mul(c, b)))
                        .collect::<Vec<u32>>(),
                );
            }
        }
        rows.push(v.clone());
        gl_rec(n, field, vectors, rows, &next, out);
        rows.pop();
    }
}

/// Upper-triangular matrices with the given diagonal choices, plus an optional
/// free lower entry.
fn triangular_elements(
    n: usize,
    field: PrimeField,
    diagonal: &[u32],
    extra: Option<(usize, usize)>,
) -> Vec<FpMatrix> {
    let mut slots: Vec<(usize, usize, Vec<u32>)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                slots.push((i, j, diagonal.to_vec()));
            } else if i < j || Some((i, j)) == extra {
                slots.push((i, j, (0..field.p()).collect()));
            }
        }
    }
    let mut out = Vec::new();
    let mut m = FpMatrix::zeros(field, n, n);
    fn rec(k: usize, slots: &[(usize, usize, Vec<u32>)], m: &mut FpMatrix, out: &mut Vec<FpMatrix>) {
        if k == slots.len() {
            out.push(m.clone());
            return;
        }
        let (i, j, ref vals) = slots[k];
        for &v in vals {
            m.set(i, j, v);
            rec(k + 1, slots, m, out);
        }
    }
    rec(0, &slots, &mut m, &mut out);
    out
}

/// Every element of the described subgroup, in a fixed deterministic order.
/// The translation group is not linear and is refused.
pub fn elements(desc: &SubgroupDescriptor) -> Result<Vec<FpMatrix>> {
    group_order(desc)?;
    let (n, field) = (desc.n, desc.field);
    let units: Vec<u32> = field.units().collect();
    Ok(match desc.tag {
        SubgroupTag::Trivial => vec![FpMatrix::identity(field, n)],
        SubgroupTag::Borel => triangular_elements(n, field, &units, None),
        SubgroupTag::Unipotent => triangular_elements(n, field, &[1], None),
        SubgroupTag::Parabolic(i) => {
            let all: Vec<u32> = (0..field.p()).collect();
            triangular_elements(n, field, &all, Some((i, i - 1)))
                .into_iter()
                .filter(|g| desc.contains(g))
                .collect()
        }
        SubgroupTag::Full => gl_elements(n, field),
        SubgroupTag::Weyl => all_permutations(n)
            .into_iter()
            .map(|w| w.matrix(field))
            .collect(),
        SubgroupTag::ElementaryAbelian => {
            return Err(Error::invalid(
                "the translation group has no matrix elements in GL_n",
            ))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn orders_match_enumeration() {
        for p in [2, 3] {
            for n in 1..=3 {
                for tag in [
                    SubgroupTag::Trivial,
                    SubgroupTag::Borel,
                    SubgroupTag::Unipotent,
                    SubgroupTag::Full,
                    SubgroupTag::Weyl,
                ] {
                    let d = SubgroupDescriptor::new(tag, n, f(p)).unwrap();
                    let elems = elements(&d).unwrap();
                    assert_eq!(elems.len() as u128, group_order(&d).unwrap(), "{d:?}");
                    assert!(elems.iter().all(|g| d.contains(g)));
                }
                for i in 1..n {
                    let d = SubgroupDescriptor::new(SubgroupTag::Parabolic(i), n, f(p)).unwrap();
                    assert_eq!(elements(&d).unwrap().len() as u128, group_order(&d).unwrap());
                }
            }
        }
    }

    #[test]
    fn small_orders() {
        assert_eq!(group_order(&SubgroupDescriptor::full(2, f(2))).unwrap(), 6);
        assert_eq!(group_order(&SubgroupDescriptor::full(3, f(2))).unwrap(), 168);
        for p in [2, 3, 5, 7] {
            assert_eq!(group_order(&SubgroupDescriptor::full(1, f(p))).unwrap(), p as u128 - 1);
        }
        let big = SubgroupDescriptor::full(5, f(3));
        assert!(matches!(group_order(&big), Err(Error::Guard { .. })));
    }

    #[test]
    fn parabolic_indices() {
        assert_eq!(parabolic_index(1, 2, f(2)).unwrap(), 3);
        assert_eq!(parabolic_index(1, 3, f(2)).unwrap(), 3);
        assert_eq!(parabolic_index(2, 3, f(2)).unwrap(), 3);
        assert_eq!(parabolic_index(1, 2, f(3)).unwrap(), 4);
        assert!(SubgroupDescriptor::new(SubgroupTag::Parabolic(0), 2, f(2)).is_err());
        assert!(SubgroupDescriptor::new(SubgroupTag::Parabolic(2), 2, f(2)).is_err());
    }

    #[test]
    fn gl_elements_rejects_singular() {
        assert!(GLElement::from_rows(f(2), &[[1, 1], [1, 1]]).is_err());
        let g = GLElement::from_rows(f(3), &[[1, 2], [0, 1]]).unwrap();
        assert_eq!(g.mul(&g.inverse()), GLElement::identity(2, f(3)));
    }

    #[test]
    fn tag_parsing() {
        for t in [SubgroupTag::Borel, SubgroupTag::Parabolic(2), SubgroupTag::ElementaryAbelian] {
            assert_eq!(t.to_string().parse::<SubgroupTag>().unwrap(), t);
        }
        assert!("bogus".parse::<SubgroupTag>().is_err());
    }
}
