//! Polynomials over F_2 in at most five variables.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::FpMatrix;

pub const MAX_VARS: usize = 5;
/// Monomial count above which a slice is refused.
pub const SLICE_LIMIT: u128 = 1_000_000;

/// Exponent vector; unused trailing variables stay 0.
pub type Monomial = [u8; MAX_VARS];

pub fn monomial_degree(m: &Monomial) -> u32 {
    m.iter().map(|&a| u32::from(a)).sum()
}

/// A polynomial over F_2 as its set of monomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeSet<Monomial>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for m in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut wrote = false;
            for (i, &a) in m.iter().enumerate() {
                match a {
                    0 => {}
                    1 => {
                        write!(f, "x{}", i + 1)?;
                        wrote = true;
                    }
                    _ => {
                        write!(f, "x{}^{}", i + 1, a)?;
                        wrote = true;
                    }
                }
            }
            if !wrote {
                write!(f, "1")?;
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::monomial([0; MAX_VARS])
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly {
            terms: BTreeSet::from([m]),
        }
    }

    /// The variable `x_{i+1}` (0-based index i).
    pub fn var(i: usize) -> Self {
        let mut m = [0; MAX_VARS];
        m[i] = 1;
        Self::monomial(m)
    }

    /// `sum_i v_i x_i`.
    pub fn linear_form(v: &[u32]) -> Self {
        let mut out = Poly::zero();
        for (i, &c) in v.iter().enumerate() {
            if c % 2 == 1 {
                out.toggle(Self::var_monomial(i, 1));
            }
        }
        out
    }

    fn var_monomial(i: usize, a: u8) -> Monomial {
        let mut m = [0; MAX_VARS];
        m[i] = a;
        m
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut out = Poly::zero();
        for m in ms {
            out.toggle(m);
        }
        out
    }

    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.iter().map(monomial_degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        Poly {
            terms: self.terms.symmetric_difference(&other.terms).copied().collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for a in &self.terms {
            for b in &other.terms {
                let mut m = [0u8; MAX_VARS];
                for i in 0..MAX_VARS {
                    m[i] = a[i].checked_add(b[i]).expect("exponent overflow");
                }
                out.toggle(m);
            }
        }
        out
    }

    pub fn square(&self) -> Poly {
        // Frobenius: cross terms cancel in characteristic 2
        Poly {
            terms: self
                .terms
                .iter()
                .map(|m| m.map(|a| a.checked_mul(2).expect("exponent overflow")))
                .collect(),
        }
    }

    /// `g^* f` with `g^* x_j = sum_i g_ij x_i`.
    pub fn substitute(&self, g: &FpMatrix) -> Poly {
        let mut out = Poly::zero();
        for m in &self.terms {
            out = out.add(&substitute_monomial(m, g));
        }
        out
    }

    /// `Sq^k`, expanded through the Cartan formula on monomials.
    pub fn sq(&self, k: u32) -> Poly {
        let mut out = Poly::zero();
        for m in &self.terms {
            sq_monomial(m, k, 0, [0; MAX_VARS], &mut out);
        }
        out
    }
}

fn substitute_monomial(m: &Monomial, g: &FpMatrix) -> Poly {
    let n = g.rows();
    let mut acc = Poly::one();
    for j in 0..n {
        let a = m[j];
        let mut t = 0;
        while (a >> t) > 0 {
            if (a >> t) & 1 == 1 {
                // (sum_i g_ij x_i)^{2^t} = sum_i g_ij x_i^{2^t}
                let form = Poly::from_monomials(
                    (0..n)
                        .filter(|&i| g.get(i, j) == 1)
                        .map(|i| Poly::var_monomial(i, 1 << t)),
                );
                acc = acc.mul(&form);
            }
            t += 1;
        }
    }
    for (j, &a) in m.iter().enumerate().skip(n) {
        assert_eq!(a, 0, "monomial uses variable x{} outside GL_{}", j + 1, n);
    }
    acc
}

/// `Sq^j x^a = C(a, j) x^{a+j}`, combined over variables.
fn sq_monomial(m: &Monomial, k: u32, var: usize, acc: Monomial, out: &mut Poly) {
    if var == MAX_VARS {
        if k == 0 {
            out.toggle(acc);
        }
        return;
    }
    let a = u32::from(m[var]);
    for j in 0..=k.min(a) {
        if a & j == j {
            let mut next = acc;
            next[var] = u8::try_from(a + j).expect("exponent overflow");
            sq_monomial(m, k - j, var + 1, next, out);
        }
    }
}

/// All monomials of degree d in n variables, in increasing lexicographic order
/// of exponent vectors.
#[derive(Clone, Debug)]
pub struct PolySlice {
    n: usize,
    d: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

pub fn monomial_count(n: usize, d: u32) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    // C(d + n - 1, n - 1)
    let mut c: u128 = 1;
    for i in 0..(n as u128 - 1) {
        c = c * (u128::from(d) + 1 + i) / (i + 1);
    }
    c
}

impl PolySlice {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::guard("polynomial variables", n as u128, MAX_VARS as u128));
        }
        crate::error::check_guard("monomials in slice", monomial_count(n, d), SLICE_LIMIT)?;
        let mut monomials = Vec::new();
        fn rec(n: usize, var: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if var + 1 == n {
                cur[var] = left as u8;
                out.push(*cur);
                cur[var] = 0;
                return;
            }
            for a in 0..=left {
                cur[var] = a as u8;
                rec(n, var + 1, left - a, cur, out);
            }
            cur[var] = 0;
        }
        if n == 0 {
            if d == 0 {
                monomials.push([0; MAX_VARS]);
            }
        } else {
            if d > u32::from(u8::MAX) {
                return Err(Error::guard("polynomial degree", u128::from(d), u128::from(u8::MAX)));
            }
            rec(n, 0, d, &mut [0; MAX_VARS], &mut monomials);
        }
        let index = monomials.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(PolySlice {
            n,
            d,
            monomials,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coefficient vector of a polynomial homogeneous of this degree.
    pub fn to_vector(&self, f: &Poly) -> Vec<u32> {
        let mut v = vec![0u32; self.len()];
        for m in f.terms() {
            let i = self
                .index_of(m)
                .unwrap_or_else(|| panic!("monomial {m:?} is not in the degree-{} slice", self.d));
            v[i] = 1;
        }
        v
    }

    pub fn to_poly(&self, v: &[u32]) -> Poly {
        Poly::from_monomials(
            v.iter()
                .zip(&self.monomials)
                .filter(|(&c, _)| c % 2 == 1)
                .map(|(_, &m)| m),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use proptest::prelude::*;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn slices() {
        assert_eq!(PolySlice::new(3, 4).unwrap().len(), 15);
        assert_eq!(monomial_count(3, 4), 15);
        assert_eq!(PolySlice::new(0, 0).unwrap().len(), 1);
        assert_eq!(PolySlice::new(0, 3).unwrap().len(), 0);
        assert!(PolySlice::new(5, 200).is_err());
        let s = PolySlice::new(2, 3).unwrap();
        let f = x(0).mul(&x(1)).mul(&x(1)).add(&x(0).square().mul(&x(0)));
        assert_eq!(s.to_poly(&s.to_vector(&f)), f);
    }

    #[test]
    fn squares() {
        let f = x(0);
        assert_eq!(f.sq(0), f);
        assert_eq!(f.sq(1), x(0).square());
        let g = x(0).mul(&x(1));
        assert!(g.sq(3).is_zero());
        assert_eq!(g.sq(2), g.square());
        // Sq^1(xy) = x^2 y + x y^2
        assert_eq!(g.sq(1), x(0).square().mul(&x(1)).add(&x(0).mul(&x(1).square())));
    }

    #[test]
    fn substitution_is_multiplicative() {
        let f2 = PrimeField::TWO;
        let g = FpMatrix::from_rows(f2, &[[1, 1, 0], [0, 1, 1], [0, 0, 1]]);
        let a = x(0).add(&x(1).mul(&x(2)));
        let b = x(2).mul(&x(2)).mul(&x(1)).add(&x(0));
        assert_eq!(a.mul(&b).substitute(&g), a.substitute(&g).mul(&b.substitute(&g)));
        // g^* x_2 = x_1 + x_2
        assert_eq!(x(1).substitute(&g), x(0).add(&x(1)));
    }

    fn poly_strategy(n: usize, d: u32) -> impl Strategy<Value = Poly> {
        let slice = PolySlice::new(n, d).unwrap();
        let len = slice.len();
        proptest::collection::vec(0u32..2, len).prop_map(move |v| slice.to_poly(&v))
    }

    proptest! {
        #[test]
        fn cartan_formula(a in poly_strategy(3, 3), b in poly_strategy(3, 2), k in 0u32..6) {
            let lhs = a.mul(&b).sq(k);
            let mut rhs = Poly::zero();
            for i in 0..=k {
                rhs = rhs.add(&a.sq(i).mul(&b.sq(k - i)));
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn top_square_and_instability(a in poly_strategy(3, 4)) {
            prop_assert_eq!(a.sq(4), a.square());
            prop_assert!(a.sq(5).is_zero());
        }

        #[test]
        fn squares_commute_with_substitution(a in poly_strategy(3, 3), k in 0u32..4, bits in 0u32..512) {
            let f2 = PrimeField::TWO;
            let g = FpMatrix::from_fn(f2, 3, 3, |i, j| (bits >> (3 * i + j)) & 1);
            prop_assert_eq!(a.sq(k).substitute(&g), a.substitute(&g).sq(k));
        }
    }
}
