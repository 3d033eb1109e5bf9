//! Group rings of subgroups of GL_n(F_p) over F_p or Q, the Steinberg
//! idempotent, and coinvariant quotients with their transfers.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::{
    all_permutations, elements, CosetSpace, SubgroupDescriptor, SubgroupTag,
};
use crate::error::{Error, Result};
use crate::exactlin::{CoefficientRing, ExactRational, FpMatrix, PrimeField, Rationals};
use crate::hecke::{longest_idempotent, CosetModule, HeckeAlgebra, Representation};

/// Groups up to this order get a full Cayley table.
const CAYLEY_LIMIT: usize = 2048;

/// A finite matrix group with its elements interned to dense indices.
pub struct FiniteGroup {
    desc: SubgroupDescriptor,
    elements: Vec<FpMatrix>,
    index: HashMap<FpMatrix, usize>,
    cayley: Option<Vec<u32>>,
    identity: usize,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({:?}, order {})", self.desc, self.elements.len())
    }
}

impl FiniteGroup {
    pub fn new(desc: SubgroupDescriptor) -> Result<Arc<Self>> {
        let elements = elements(&desc)?;
        let index: HashMap<FpMatrix, usize> =
            elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let identity = index[&FpMatrix::identity(desc.field, desc.n)];
        let order = elements.len();
        let cayley = (order <= CAYLEY_LIMIT).then(|| {
            let mut table = vec![0u32; order * order];
            table.par_chunks_mut(order).enumerate().for_each(|(a, row)| {
                for (b, slot) in row.iter_mut().enumerate() {
                    *slot = index[&(&elements[a] * &elements[b])] as u32;
                }
            });
            table
        });
        Ok(Arc::new(FiniteGroup {
            desc,
            elements,
            index,
            cayley,
            identity,
        }))
    }

    pub fn gl(n: usize, field: PrimeField) -> Result<Arc<Self>> {
        Self::new(SubgroupDescriptor::full(n, field))
    }

    pub fn descriptor(&self) -> &SubgroupDescriptor {
        &self.desc
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &FpMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &FpMatrix) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.cayley {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&(&self.elements[a] * &self.elements[b])],
        }
    }

    /// Indices of the elements of a subgroup given by descriptor.
    pub fn subgroup_indices(&self, sub: &SubgroupDescriptor) -> Result<Vec<usize>> {
        elements(sub)?
            .iter()
            .map(|g| {
                self.index_of(g)
                    .ok_or_else(|| Error::invalid(format!("{:?} is not contained in {:?}", sub.tag, self.desc.tag)))
            })
            .collect()
    }
}

/// An element of `R[G]`, dense over the interned elements of G.
#[derive(Clone)]
pub struct GroupRingElement<R: CoefficientRing> {
    group: Arc<FiniteGroup>,
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoefficientRing> fmt::Debug for GroupRingElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({:?}, support {})", self.group, self.support().count())
    }
}

impl<R: CoefficientRing> PartialEq for GroupRingElement<R> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl<R: CoefficientRing> GroupRingElement<R> {
    pub fn zero(group: &Arc<FiniteGroup>, ring: R) -> Self {
        GroupRingElement {
            coeffs: vec![ring.zero(); group.order()],
            group: Arc::clone(group),
            ring,
        }
    }

    /// The basis element `[g]`.
    pub fn basis(group: &Arc<FiniteGroup>, ring: R, g: usize) -> Self {
        let mut x = Self::zero(group, ring);
        x.coeffs[g] = x.ring.one();
        x
    }

    pub fn one(group: &Arc<FiniteGroup>, ring: R) -> Self {
        Self::basis(group, ring, group.identity())
    }

    /// `sum_{g in S} [g]`.
    pub fn sum_of(group: &Arc<FiniteGroup>, ring: R, subset: &[usize]) -> Self {
        let mut x = Self::zero(group, ring);
        for &g in subset {
            x.coeffs[g] = x.ring.add(&x.coeffs[g], &x.ring.one());
        }
        x
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeff(&self, g: usize) -> &R::Elem {
        &self.coeffs[g]
    }

    pub fn set_coeff(&mut self, g: usize, c: R::Elem) {
        self.coeffs[g] = c;
    }

    /// Nonzero coefficients by element index.
    pub fn support(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
    }

    pub fn is_zero(&self) -> bool {
        self.support().next().is_none()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::mismatch("group ring elements over different groups"));
        }
        if self.ring != other.ring {
            return Err(Error::mismatch(format!(
                "coefficient rings {:?} and {:?}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(GroupRingElement {
            group: Arc::clone(&self.group),
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| self.ring.add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        GroupRingElement {
            group: Arc::clone(&self.group),
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect(),
        }
    }

    /// Convolution product, parallel over the support of `self`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let ring = &self.ring;
        let group = &self.group;
        let order = group.order();
        let left: Vec<(usize, &R::Elem)> = self.support().collect();
        let right: Vec<(usize, &R::Elem)> = other.support().collect();
        let coeffs = left
            .par_chunks(16)
            .map(|chunk| {
                let mut acc = vec![ring.zero(); order];
                for &(g, a) in chunk {
                    for &(h, b) in &right {
                        let gh = group.mul(g, h);
                        acc[gh] = ring.add(&acc[gh], &ring.mul(a, b));
                    }
                }
                acc
            })
            .reduce(
                || vec![ring.zero(); order],
                |x, y| x.iter().zip(&y).map(|(a, b)| ring.add(a, b)).collect(),
            );
        Ok(GroupRingElement {
            group: Arc::clone(group),
            ring: ring.clone(),
            coeffs,
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).map(|sq| &sq == self).unwrap_or(false)
    }
}

impl GroupRingElement<Rationals> {
    /// Every coefficient lies in Z_(p).
    pub fn is_p_integral(&self, p: u32) -> bool {
        self.support().all(|(_, c)| c.is_p_local(p))
    }

    /// Reduction to `F_p[G]`; `None` if some coefficient is not p-integral.
    pub fn reduce_mod(&self, field: PrimeField) -> Option<GroupRingElement<PrimeField>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.reduce_mod(field))
            .collect::<Option<Vec<u32>>>()?;
        Some(GroupRingElement {
            group: Arc::clone(&self.group),
            ring: field,
            coeffs,
        })
    }
}

/// `e^St = [GL_n : U_n]^{-1} (sum_w (-1)^{l(w)} [w]) (sum_{b in B} [b])` in `Q[GL_n(F_p)]`.
pub fn steinberg_in(group: &Arc<FiniteGroup>) -> Result<GroupRingElement<Rationals>> {
    let desc = *group.descriptor();
    if desc.tag != SubgroupTag::Full {
        return Err(Error::invalid("the Steinberg element lives in the full linear group"));
    }
    let (n, field) = (desc.n, desc.field);
    let mut w_tilde = GroupRingElement::zero(group, Rationals);
    for w in all_permutations(n) {
        let g = group.index_of(&w.matrix(field)).expect("permutation matrices lie in GL_n");
        let sign = if w.length() % 2 == 0 { 1 } else { -1 };
        w_tilde.set_coeff(g, ExactRational::from_integer(sign));
    }
    let borel = group.subgroup_indices(&SubgroupDescriptor::borel(n, field))?;
    let b = GroupRingElement::sum_of(group, Rationals, &borel);
    let unipotent = SubgroupDescriptor::new(SubgroupTag::Unipotent, n, field)?.order_estimate();
    let index = group.order() as u128 / unipotent;
    let scale = ExactRational::new(1, i64::try_from(index).expect("index fits in i64"));
    Ok(w_tilde.mul(&b)?.scale(&scale))
}

pub fn steinberg(n: usize, field: PrimeField) -> Result<GroupRingElement<Rationals>> {
    steinberg_in(&FiniteGroup::gl(n, field)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinbergReport {
    pub n: usize,
    pub p: u32,
    pub group_order: usize,
    pub support: usize,
    pub idempotent: bool,
    pub p_integral: bool,
}

pub fn steinberg_check(n: usize, field: PrimeField) -> Result<SteinbergReport> {
    let group = FiniteGroup::gl(n, field)?;
    let e = steinberg_in(&group)?;
    Ok(SteinbergReport {
        n,
        p: field.p(),
        group_order: group.order(),
        support: e.support().count(),
        idempotent: e.is_idempotent(),
        p_integral: e.is_p_integral(field.p()),
    })
}

/// `diag(g, 1)`.
fn embed_block(g: &FpMatrix) -> FpMatrix {
    let n = g.rows();
    FpMatrix::from_fn(g.field(), n + 1, n + 1, |i, j| {
        if i < n && j < n {
            g.get(i, j)
        } else {
            u32::from(i == j)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub k: usize,
    pub p: u32,
    pub left: bool,
    pub right: bool,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.left && self.right
    }
}

/// `e^St_k e^St_{k+1} = e^St_{k+1} = e^St_{k+1} e^St_k`, with `GL_k` inside
/// `GL_{k+1}` as `g -> diag(g, 1)`.
pub fn steinberg_chain(k: usize, field: PrimeField) -> Result<ChainReport> {
    let small = FiniteGroup::gl(k, field)?;
    let big = FiniteGroup::gl(k + 1, field)?;
    let ek_small = steinberg_in(&small)?;
    let mut ek = GroupRingElement::zero(&big, Rationals);
    for (g, c) in ek_small.support() {
        let image = big
            .index_of(&embed_block(small.element(g)))
            .expect("block embedding lands in GL_(k+1)");
        ek.set_coeff(image, c.clone());
    }
    let ek1 = steinberg_in(&big)?;
    Ok(ChainReport {
        k,
        p: field.p(),
        left: ek.mul(&ek1)? == ek1,
        right: ek1.mul(&ek)? == ek1,
    })
}

/// The coinvariant module `F_p[H\G]` of the regular module: right cosets
/// labelled by their least element index, in increasing order.
#[derive(Clone, Debug)]
pub struct CoinvariantSpace {
    pub subgroup: SubgroupDescriptor,
    /// Least element index of each coset.
    pub labels: Vec<usize>,
    /// Coset index of every group element.
    pub coset_of: Vec<usize>,
}

impl CoinvariantSpace {
    pub fn new(group: &Arc<FiniteGroup>, subgroup: &SubgroupDescriptor) -> Result<Self> {
        let h = group.subgroup_indices(subgroup)?;
        let mut least = vec![usize::MAX; group.order()];
        for g in 0..group.order() {
            if least[g] != usize::MAX {
                continue;
            }
            // g is the least element of its coset H g
            for &x in &h {
                least[group.mul(x, g)] = g;
            }
        }
        let mut labels: Vec<usize> = least.clone();
        labels.sort_unstable();
        labels.dedup();
        let pos: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let coset_of = least.iter().map(|l| pos[l]).collect();
        Ok(CoinvariantSpace {
            subgroup: *subgroup,
            labels,
            coset_of,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Matrix of right multiplication by the element `g`.
    pub fn right_action(&self, group: &FiniteGroup, g: usize, field: PrimeField) -> FpMatrix {
        let mut m = FpMatrix::zeros(field, self.dim(), self.dim());
        for (i, &rep) in self.labels.iter().enumerate() {
            m.set(self.coset_of[group.mul(rep, g)], i, 1);
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct QuotientTransfer {
    pub big: CoinvariantSpace,
    pub small: CoinvariantSpace,
    /// `M_K -> M_H`, `K g -> H g`.
    pub quotient: FpMatrix,
    /// `M_H -> M_K`, `H g -> sum of the K-cosets inside H g`.
    pub transfer: FpMatrix,
}

/// Quotient and transfer between the coinvariants of `K <= H` on the regular module.
pub fn coinvariants_and_transfer(
    group: &Arc<FiniteGroup>,
    h: &SubgroupDescriptor,
    k: &SubgroupDescriptor,
) -> Result<QuotientTransfer> {
    let h_elems = group.subgroup_indices(h)?;
    let k_elems = group.subgroup_indices(k)?;
    let in_h: std::collections::HashSet<usize> = h_elems.iter().copied().collect();
    if !k_elems.iter().all(|g| in_h.contains(g)) {
        return Err(Error::invalid(format!("{:?} is not a subgroup of {:?}", k.tag, h.tag)));
    }
    let field = group.descriptor().field;
    let big = CoinvariantSpace::new(group, h)?;
    let small = CoinvariantSpace::new(group, k)?;
    let mut quotient = FpMatrix::zeros(field, big.dim(), small.dim());
    let mut transfer = FpMatrix::zeros(field, small.dim(), big.dim());
    for g in 0..group.order() {
        quotient.set(big.coset_of[g], small.coset_of[g], 1);
        transfer.set(small.coset_of[g], big.coset_of[g], 1);
    }
    Ok(QuotientTransfer {
        big,
        small,
        quotient,
        transfer,
    })
}

/// Matrix of `B g -> sum_h c_h B (h s(Bg))` on `F_p[B\GL_n]` in the basis of
/// [`CosetSpace`], for the section `s` given by `section(i) = b_i rep_i`.
pub fn steinberg_on_borel_cosets(
    group: &Arc<FiniteGroup>,
    space: &CosetSpace,
    e_mod_p: &GroupRingElement<PrimeField>,
    section: impl Fn(usize) -> FpMatrix,
) -> FpMatrix {
    let field = space.field();
    let mut m = FpMatrix::zeros(field, space.len(), space.len());
    for i in 0..space.len() {
        let g = group.index_of(&section(i)).expect("section lands in the group");
        for (h, &c) in e_mod_p.support() {
            let target = space.index_of(group.element(group.mul(h, g)));
            m.add_at(target, i, c);
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinbergHeckeReport {
    pub n: usize,
    pub p: u32,
    pub cosets: usize,
    pub matches: bool,
    pub section_independent: bool,
}

/// The composite `M_B -> M -> M_B` through `e^St` equals the matrix of `e_n` in
/// the coset representation.
pub fn steinberg_vs_hecke(n: usize, field: PrimeField) -> Result<SteinbergHeckeReport> {
    let group = FiniteGroup::gl(n, field)?;
    let e = steinberg_in(&group)?
        .reduce_mod(field)
        .ok_or_else(|| Error::invalid("Steinberg element is not p-integral"))?;
    let alg = HeckeAlgebra::new(n, field)?;
    let module = CosetModule::new(&alg)?;
    let space = module.space();
    let rep = Representation::new(&alg, &module)?;
    let expected = rep.image(&longest_idempotent(&alg));

    let canonical = steinberg_on_borel_cosets(&group, space, &e, |i| space.rep(i).clone());
    // a second section: multiply each representative by a Borel element on the left
    let borel = crate::chevalley::elements(&SubgroupDescriptor::borel(n, field))?;
    let shifted = steinberg_on_borel_cosets(&group, space, &e, |i| {
        &borel[(7 * i + 3) % borel.len()] * space.rep(i)
    });
    Ok(SteinbergHeckeReport {
        n,
        p: field.p(),
        cosets: space.len(),
        matches: canonical == expected,
        section_independent: canonical == shifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::SubgroupTag;
    use crate::hecke::HeckeModule;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn basic_products() {
        let g = FiniteGroup::gl(2, f(3)).unwrap();
        let ring = f(3);
        for a in [0, 5, 17, 40] {
            let inv = g.index_of(&g.element(a).invert().unwrap()).unwrap();
            let x = GroupRingElement::basis(&g, ring, a);
            let y = GroupRingElement::basis(&g, ring, inv);
            assert_eq!(x.mul(&y).unwrap(), GroupRingElement::one(&g, ring));
        }
        let borel = g.subgroup_indices(&SubgroupDescriptor::borel(2, f(3))).unwrap();
        let b = GroupRingElement::sum_of(&g, Rationals, &borel);
        for &x in &borel {
            let bx = b.mul(&GroupRingElement::basis(&g, Rationals, x)).unwrap();
            assert_eq!(bx, b);
        }
        let all: Vec<usize> = (0..g.order()).collect();
        let s = GroupRingElement::sum_of(&g, Rationals, &all);
        let order = ExactRational::from_integer(g.order() as i64);
        assert_eq!(s.mul(&s).unwrap(), s.scale(&order));
    }

    #[test]
    fn mixed_operands_refused() {
        let g = FiniteGroup::gl(2, f(2)).unwrap();
        let h = FiniteGroup::gl(2, f(2)).unwrap();
        let a = GroupRingElement::one(&g, f(2));
        let b = GroupRingElement::one(&h, f(2));
        assert!(a.mul(&b).is_err());
        let c = GroupRingElement::one(&g, f(3));
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn convolution_is_associative() {
        let g = FiniteGroup::gl(2, f(3)).unwrap();
        let ring = f(5);
        let mk = |seed: usize| {
            let mut x = GroupRingElement::zero(&g, ring);
            for i in 0..g.order() {
                x.set_coeff(i, ((i * 31 + seed * 17) % 5) as u32);
            }
            x
        };
        let (a, b, c) = (mk(1), mk(2), mk(3));
        assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn steinberg_rank_one_averages_the_torus() {
        for p in [2, 3, 5] {
            let e = steinberg(1, f(p)).unwrap();
            let all: Vec<usize> = (0..e.group().order()).collect();
            let avg = GroupRingElement::sum_of(e.group(), Rationals, &all)
                .scale(&ExactRational::new(1, i64::from(p) - 1));
            assert_eq!(e, avg);
            assert!(e.is_idempotent());
        }
    }

    #[test]
    fn steinberg_idempotents() {
        for (n, p) in [(2, 2), (2, 3), (3, 2)] {
            let r = steinberg_check(n, f(p)).unwrap();
            assert!(r.idempotent && r.p_integral, "{r:?}");
        }
    }

    #[test]
    fn steinberg_chains() {
        for (k, p) in [(1, 2), (2, 2), (1, 3)] {
            assert!(steinberg_chain(k, f(p)).unwrap().holds());
        }
    }

    #[test]
    fn steinberg_matches_hecke() {
        for (n, p) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
            let r = steinberg_vs_hecke(n, f(p)).unwrap();
            assert!(r.matches && r.section_independent, "{r:?}");
        }
    }

    #[test]
    fn transfer_composites() {
        let field = f(2);
        let g = FiniteGroup::gl(3, field).unwrap();
        let borel = SubgroupDescriptor::borel(3, field);
        let same = coinvariants_and_transfer(&g, &borel, &borel).unwrap();
        assert!(same.quotient.is_identity() && same.transfer.is_identity());
        assert_eq!(same.small.dim(), 21);

        for i in 1..3 {
            let parabolic = SubgroupDescriptor::new(SubgroupTag::Parabolic(i), 3, field).unwrap();
            let qt = coinvariants_and_transfer(&g, &parabolic, &borel).unwrap();
            // index p + 1 = 3 = 1 mod 2
            assert!((&qt.quotient * &qt.transfer).is_identity());
            for x in [0, 11, 100, 167] {
                let lhs = &qt.small.right_action(&g, x, field) * &qt.transfer;
                let rhs = &qt.transfer * &qt.big.right_action(&g, x, field);
                assert_eq!(lhs, rhs);
            }
        }
        let field3 = f(3);
        let g3 = FiniteGroup::gl(2, field3).unwrap();
        let qt = coinvariants_and_transfer(
            &g3,
            &SubgroupDescriptor::full(2, field3),
            &SubgroupDescriptor::borel(2, field3),
        )
        .unwrap();
        // index 4 = 1 mod 3
        assert!((&qt.quotient * &qt.transfer).is_identity());
        let err = coinvariants_and_transfer(&g, &borel, &SubgroupDescriptor::full(3, field));
        assert!(err.is_err());
    }

    #[test]
    fn transfer_composite_is_e_hat() {
        for (n, p) in [(2, 2), (3, 2), (2, 3)] {
            let field = f(p);
            let g = FiniteGroup::gl(n, field).unwrap();
            let alg = HeckeAlgebra::new(n, field).unwrap();
            let module = CosetModule::new(&alg).unwrap();
            let borel = SubgroupDescriptor::borel(n, field);
            for i in 1..n {
                let parabolic = SubgroupDescriptor::new(SubgroupTag::Parabolic(i), n, field).unwrap();
                let qt = coinvariants_and_transfer(&g, &parabolic, &borel).unwrap();
                let composite = &qt.transfer * &qt.quotient;
                // reindex: coset space rep -> groupring coset label
                let perm: Vec<usize> = (0..module.dim())
                    .map(|c| qt.small.coset_of[g.index_of(module.space().rep(c)).unwrap()])
                    .collect();
                let e_hat = module.e_hat_matrix(i);
                for a in 0..module.dim() {
                    for b in 0..module.dim() {
                        assert_eq!(e_hat.get(a, b), composite.get(perm[a], perm[b]));
                    }
                }
            }
        }
    }
}
