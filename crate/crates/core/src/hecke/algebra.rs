//! The Hecke algebra H_n in the T_w basis.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::chevalley::{all_permutations, WeylPermutation};
use crate::error::{Error, Result};
use crate::exactlin::{CoefficientRing, ExactRational, PrimeField, Rationals};

/// Largest rank whose multiplication tables are built.
pub const MAX_RANK: usize = 7;

/// Permutation tables for S_n, ordered by length and then lexicographically,
/// so the identity has index 0.
#[derive(Debug)]
pub struct WeylTables {
    n: usize,
    perms: Vec<WeylPermutation>,
    index: HashMap<WeylPermutation, usize>,
    /// `left[i - 1][w]` is the index of `s_i ∘ w`.
    left: Vec<Vec<usize>>,
    /// `right[i - 1][w]` is the index of `w ∘ s_i`.
    right: Vec<Vec<usize>>,
    /// Some `i` with `l(s_i w) < l(w)`, or 0 for the identity.
    descent: Vec<usize>,
}

impl WeylTables {
    fn new(n: usize) -> Self {
        let mut perms = all_permutations(n);
        perms.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
        let index: HashMap<WeylPermutation, usize> =
            perms.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut left: Vec<Vec<usize>> = Vec::new();
        let mut right: Vec<Vec<usize>> = Vec::new();
        for i in 1..n {
            let s = WeylPermutation::simple(i, n);
            left.push(perms.iter().map(|w| index[&s.compose(w)]).collect());
            right.push(perms.iter().map(|w| index[&w.compose(&s)]).collect());
        }
        let descent = perms
            .iter()
            .enumerate()
            .map(|(wi, w)| {
                (1..n)
                    .find(|&i| perms[left[i - 1][wi]].length() < w.length())
                    .unwrap_or(0)
            })
            .collect();
        WeylTables {
            n,
            perms,
            index,
            left,
            right,
            descent,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perm(&self, i: usize) -> &WeylPermutation {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[WeylPermutation] {
        &self.perms
    }

    pub fn index_of(&self, w: &WeylPermutation) -> usize {
        self.index[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.perms[w].length()
    }

    /// `(s_i, s_i w)` with `l(s_i w) < l(w)`; `None` for the identity.
    pub fn left_descent(&self, w: usize) -> Option<(usize, usize)> {
        let i = self.descent[w];
        (i != 0).then(|| (i, self.left[i - 1][w]))
    }

    /// `T_i x` with `T_i^2 = (q - 1) T_i + q`.
    pub fn left_simple<R: CoefficientRing>(
        &self,
        ring: &R,
        q: &R::Elem,
        i: usize,
        x: &[R::Elem],
    ) -> Vec<R::Elem> {
        let q1 = ring.sub(q, &ring.one());
        let mut y = vec![ring.zero(); x.len()];
        for (w, c) in x.iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            let sw = self.left[i - 1][w];
            if self.length(sw) > self.length(w) {
                y[sw] = ring.add(&y[sw], c);
            } else {
                y[sw] = ring.add(&y[sw], &ring.mul(q, c));
                y[w] = ring.add(&y[w], &ring.mul(&q1, c));
            }
        }
        y
    }

    /// `x T_i`.
    pub fn right_simple<R: CoefficientRing>(
        &self,
        ring: &R,
        q: &R::Elem,
        i: usize,
        x: &[R::Elem],
    ) -> Vec<R::Elem> {
        let q1 = ring.sub(q, &ring.one());
        let mut y = vec![ring.zero(); x.len()];
        for (w, c) in x.iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            let ws = self.right[i - 1][w];
            if self.length(ws) > self.length(w) {
                y[ws] = ring.add(&y[ws], c);
            } else {
                y[ws] = ring.add(&y[ws], &ring.mul(q, c));
                y[w] = ring.add(&y[w], &ring.mul(&q1, c));
            }
        }
        y
    }

    /// `a b`. Each `T_w b` is built as `T_s (T_{sw} b)` in order of length.
    pub fn multiply<R: CoefficientRing>(
        &self,
        ring: &R,
        q: &R::Elem,
        a: &[R::Elem],
        b: &[R::Elem],
    ) -> Vec<R::Elem> {
        let len = self.len();
        let top = (0..len).rev().find(|&w| !ring.is_zero(&a[w]));
        let mut out = vec![ring.zero(); len];
        let Some(top) = top else {
            return out;
        };
        let mut tw_b: Vec<Vec<R::Elem>> = Vec::with_capacity(top + 1);
        for w in 0..=top {
            let v = match self.left_descent(w) {
                None => b.to_vec(),
                Some((i, sw)) => self.left_simple(ring, q, i, &tw_b[sw]),
            };
            if !ring.is_zero(&a[w]) {
                for (o, x) in out.iter_mut().zip(&v) {
                    *o = ring.add(o, &ring.mul(&a[w], x));
                }
            }
            tw_b.push(v);
        }
        out
    }
}

/// The mod-p Hecke algebra of type A_{n-1}, with parameter p reducing to 0.
#[derive(Debug)]
pub struct HeckeAlgebra {
    tables: WeylTables,
    field: PrimeField,
}

impl HeckeAlgebra {
    pub fn new(n: usize, field: PrimeField) -> Result<Arc<Self>> {
        if n > MAX_RANK {
            return Err(Error::guard("Hecke algebra rank", n as u128, MAX_RANK as u128));
        }
        let tables = WeylTables::new(n);
        let factorial: usize = (1..=n).product();
        assert_eq!(tables.len(), factorial, "algebra dimension must be n!");
        Ok(Arc::new(HeckeAlgebra { tables, field }))
    }

    pub fn n(&self) -> usize {
        self.tables.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.tables.len()
    }

    pub fn tables(&self) -> &WeylTables {
        &self.tables
    }

    pub fn zero(self: &Arc<Self>) -> HeckeElement {
        HeckeElement {
            alg: Arc::clone(self),
            coeffs: vec![0; self.dim()],
        }
    }

    pub fn one(self: &Arc<Self>) -> HeckeElement {
        self.basis(0)
    }

    /// The basis element `T_w` by index.
    pub fn basis(self: &Arc<Self>, w: usize) -> HeckeElement {
        let mut x = self.zero();
        x.coeffs[w] = 1;
        x
    }

    pub fn t(self: &Arc<Self>, w: &WeylPermutation) -> HeckeElement {
        self.basis(self.tables.index_of(w))
    }

    pub fn t_simple(self: &Arc<Self>, i: usize) -> HeckeElement {
        self.t(&WeylPermutation::simple(i, self.n()))
    }

    /// `e(i) = -T_i`.
    pub fn e(self: &Arc<Self>, i: usize) -> HeckeElement {
        self.t_simple(i).scale(self.field.p() - 1)
    }

    /// `ê(i) = 1 + T_i`.
    pub fn e_hat(self: &Arc<Self>, i: usize) -> HeckeElement {
        &self.one() + &self.t_simple(i)
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<u32>) -> HeckeElement {
        assert_eq!(coeffs.len(), self.dim());
        HeckeElement {
            alg: Arc::clone(self),
            coeffs: coeffs.into_iter().map(|c| c % self.field.p()).collect(),
        }
    }
}

/// An element of H_n, dense in the T_w basis.
#[derive(Clone)]
pub struct HeckeElement {
    alg: Arc<HeckeAlgebra>,
    coeffs: Vec<u32>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.n() == other.alg.n()
            && self.alg.field == other.alg.field
            && self.coeffs == other.coeffs
    }
}

impl Eq for HeckeElement {}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .map(|(w, c)| format!("{c}·T{:?}", self.alg.tables.perm(w)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl HeckeElement {
    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, w: &WeylPermutation) -> u32 {
        self.coeffs[self.alg.tables.index_of(w)]
    }

    /// Nonzero coefficients by basis index.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_compatible(&self, other: &HeckeElement) -> Result<()> {
        if self.alg.n() != other.alg.n() || self.alg.field != other.alg.field {
            return Err(Error::mismatch(format!(
                "H_{} over {:?} vs H_{} over {:?}",
                self.alg.n(),
                self.alg.field,
                other.alg.n(),
                other.alg.field
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_compatible(other)?;
        let f = self.alg.field;
        Ok(HeckeElement {
            alg: Arc::clone(&self.alg),
            coeffs: self.alg.tables.multiply(&f, &0, &self.coeffs, &other.coeffs),
        })
    }

    pub fn try_add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_compatible(other)?;
        let f = self.alg.field;
        Ok(HeckeElement {
            alg: Arc::clone(&self.alg),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: u32) -> HeckeElement {
        let f = self.alg.field;
        HeckeElement {
            alg: Arc::clone(&self.alg),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c % f.p())).collect(),
        }
    }

    pub fn neg(&self) -> HeckeElement {
        self.scale(self.alg.field.p() - 1)
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    /// The algebra involution fixed by `T_i -> -1 - T_i`, which swaps e(i) and ê(i).
    pub fn involution(&self) -> HeckeElement {
        let alg = &self.alg;
        let f = alg.field;
        let t = &alg.tables;
        let minus_one = f.p() - 1;
        // images of T_w, built as ι(T_s) ι(T_{sw}) = -(1 + T_s) ι(T_{sw})
        let mut images: Vec<Vec<u32>> = Vec::with_capacity(t.len());
        let mut out = vec![0u32; t.len()];
        for w in 0..t.len() {
            let v = match t.left_descent(w) {
                None => alg.one().coeffs,
                Some((i, sw)) => {
                    let prev = &images[sw];
                    let ts = t.left_simple(&f, &0, i, prev);
                    prev.iter()
                        .zip(&ts)
                        .map(|(&a, &b)| f.mul(minus_one, f.add(a, b)))
                        .collect()
                }
            };
            let c = self.coeffs[w];
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(&v) {
                    *o = f.add(*o, f.mul(c, x));
                }
            }
            images.push(v);
        }
        HeckeElement {
            alg: Arc::clone(alg),
            coeffs: out,
        }
    }

    /// The anti-involution `T_w -> T_{w^{-1}}`.
    pub fn anti_involution(&self) -> HeckeElement {
        let t = &self.alg.tables;
        let mut out = vec![0u32; t.len()];
        for (w, c) in self.support() {
            out[t.index_of(&t.perm(w).inverse())] = c;
        }
        HeckeElement {
            alg: Arc::clone(&self.alg),
            coeffs: out,
        }
    }

    /// Image under the block inclusion H_r -> H_total on letters
    /// `offset + 1 .. offset + r - 1`.
    pub fn block_embed(&self, offset: usize, target: &Arc<HeckeAlgebra>) -> Result<HeckeElement> {
        let r = self.alg.n();
        if offset + r > target.n() || target.field != self.alg.field {
            return Err(Error::invalid(format!(
                "cannot place H_{r} at offset {offset} in H_{}",
                target.n()
            )));
        }
        let mut out = target.zero();
        for (w, c) in self.support() {
            let shifted = self.alg.tables.perm(w).shift(offset, target.n());
            out.coeffs[target.tables.index_of(&shifted)] = c;
        }
        Ok(out)
    }
}

impl<'a> std::ops::Mul<&'a HeckeElement> for &'a HeckeElement {
    type Output = HeckeElement;
    fn mul(self, rhs: &'a HeckeElement) -> HeckeElement {
        self.try_mul(rhs).expect("Hecke product of incompatible elements")
    }
}

impl<'a> std::ops::Add<&'a HeckeElement> for &'a HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &'a HeckeElement) -> HeckeElement {
        self.try_add(rhs).expect("Hecke sum of incompatible elements")
    }
}

impl<'a> std::ops::Sub<&'a HeckeElement> for &'a HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &'a HeckeElement) -> HeckeElement {
        self.try_add(&rhs.neg()).expect("Hecke difference of incompatible elements")
    }
}

/// Product of a word of elements, left to right. The empty product is 1.
pub fn product<'a>(alg: &Arc<HeckeAlgebra>, factors: impl IntoIterator<Item = &'a HeckeElement>) -> HeckeElement {
    factors.into_iter().fold(alg.one(), |acc, x| &acc * x)
}

/// Integral relations for `e(i) = p - T_i` with `T_i^2 = (p-1) T_i + p`, over Q.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IntegralLiftReport {
    pub n: usize,
    pub p: u32,
    /// `e(i)^2 = (p+1) e(i)`.
    pub quadratic: bool,
    /// `e(i)e(i+1)e(i) - p e(i) = e(i+1)e(i)e(i+1) - p e(i+1)`.
    pub braid_minus_p: bool,
    /// `e(i)e(i+1)e(i) + p e(i) = e(i+1)e(i)e(i+1) + p e(i+1)`.
    pub braid_plus_p: bool,
}

pub fn integral_relations(n: usize, p: u32) -> IntegralLiftReport {
    let tables = WeylTables::new(n);
    let ring = Rationals;
    let q = ExactRational::from_integer(p as i64);
    let len = tables.len();
    let e = |i: usize| {
        let mut v = vec![ExactRational::zero(); len];
        v[0] = q.clone();
        v[tables.index_of(&WeylPermutation::simple(i, n))] = ExactRational::from_integer(-1);
        v
    };
    let mul = |a: &[ExactRational], b: &[ExactRational]| tables.multiply(&ring, &q, a, b);
    let axpy = |a: &[ExactRational], c: i64, b: &[ExactRational]| -> Vec<ExactRational> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x + &(y * &ExactRational::from_integer(c)))
            .collect()
    };
    let zero = vec![ExactRational::zero(); len];
    let mut report = IntegralLiftReport {
        n,
        p,
        quadratic: true,
        braid_minus_p: true,
        braid_plus_p: true,
    };
    for i in 1..n {
        let ei = e(i);
        report.quadratic &= mul(&ei, &ei) == axpy(&zero, p as i64 + 1, &ei);
        if i + 1 < n {
            let ej = e(i + 1);
            let iji = mul(&mul(&ei, &ej), &ei);
            let jij = mul(&mul(&ej, &ei), &ej);
            report.braid_minus_p &= axpy(&iji, -(p as i64), &ei) == axpy(&jij, -(p as i64), &ej);
            report.braid_plus_p &= axpy(&iji, p as i64, &ei) == axpy(&jij, p as i64, &ej);
        }
    }
    report
}
