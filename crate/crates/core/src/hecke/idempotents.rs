//! Longest-word idempotents, the presentation, and the identities between the
//! block idempotents e_k and ê_n inside H_{k+n}.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{FpMatrix, PrimeField};

use super::algebra::{product, HeckeAlgebra, HeckeElement};

/// The longest word in the generators on letters `first .. first + letters - 1`,
/// written as `(g(a) .. g(a+r-1)) (g(a) .. g(a+r-2)) .. (g(a))`.
pub fn longest_word(first: usize, letters: usize) -> Vec<usize> {
    (1..=letters)
        .rev()
        .flat_map(|j| first..first + j)
        .collect()
}

fn word_product(alg: &Arc<HeckeAlgebra>, word: &[usize], hatted: bool) -> HeckeElement {
    let gens: Vec<HeckeElement> = word
        .iter()
        .map(|&i| if hatted { alg.e_hat(i) } else { alg.e(i) })
        .collect();
    product(alg, &gens)
}

/// `e_k` on the strands `offset .. offset + k`, i.e. letters `offset + 1 .. offset + k - 1`.
/// Equal to 1 for `k <= 1`.
pub fn e_block(alg: &Arc<HeckeAlgebra>, k: usize, offset: usize) -> HeckeElement {
    assert!(k <= 1 || offset + k <= alg.n(), "block exceeds the rank");
    word_product(alg, &longest_word(offset + 1, k.saturating_sub(1)), false)
}

/// `ê_n` on the strands `offset .. offset + n`.
pub fn e_hat_block(alg: &Arc<HeckeAlgebra>, n: usize, offset: usize) -> HeckeElement {
    assert!(n <= 1 || offset + n <= alg.n(), "block exceeds the rank");
    word_product(alg, &longest_word(offset + 1, n.saturating_sub(1)), true)
}

/// `e_n ∈ H_n`.
pub fn longest_idempotent(alg: &Arc<HeckeAlgebra>) -> HeckeElement {
    e_block(alg, alg.n(), 0)
}

/// `ê_n ∈ H_n`.
pub fn longest_hat_idempotent(alg: &Arc<HeckeAlgebra>) -> HeckeElement {
    e_hat_block(alg, alg.n(), 0)
}

/// Matrix of `x -> g x` (or `x -> x g`) in the T_w basis.
pub fn multiplication_matrix(g: &HeckeElement, on_left: bool) -> FpMatrix {
    let alg = g.algebra();
    let dim = alg.dim();
    let mut m = FpMatrix::zeros(alg.field(), dim, dim);
    for w in 0..dim {
        let b = alg.basis(w);
        let img = if on_left { g * &b } else { &b * g };
        for (v, c) in img.support() {
            m.set(v, w, c);
        }
    }
    m
}

/// Dimension of `{x : e(i) x = x = x e(i) for all i}`.
pub fn absorption_solution_dim(alg: &Arc<HeckeAlgebra>) -> usize {
    let dim = alg.dim();
    let id = FpMatrix::identity(alg.field(), dim);
    let mut system = FpMatrix::zeros(alg.field(), 0, dim);
    for i in 1..alg.n() {
        let e = alg.e(i);
        system = system.vstack(&(&multiplication_matrix(&e, true) - &id));
        system = system.vstack(&(&multiplication_matrix(&e, false) - &id));
    }
    dim - system.rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub n: usize,
    pub p: u32,
    pub dimension: usize,
    pub idempotent: bool,
    pub braid: bool,
    pub commuting: bool,
    pub complementary: bool,
    pub holds: bool,
}

/// Check `e(i)^2 = e(i)`, the braid relation, distant commutation, and `e(i) + ê(i) = 1`.
pub fn verify_presentation(n: usize, field: PrimeField) -> Result<PresentationReport> {
    if n > 6 {
        return Err(Error::guard("presentation rank", n as u128, 6));
    }
    let alg = HeckeAlgebra::new(n, field)?;
    let e: Vec<HeckeElement> = (1..n).map(|i| alg.e(i)).collect();
    let idempotent = e.iter().all(|x| x.is_idempotent());
    let braid = (0..e.len().saturating_sub(1)).all(|i| {
        let (a, b) = (&e[i], &e[i + 1]);
        &(a * b) * a == &(b * a) * b
    });
    let commuting = (0..e.len()).all(|i| (i + 2..e.len()).all(|j| &e[i] * &e[j] == &e[j] * &e[i]));
    let complementary = (1..n).all(|i| &alg.e(i) + &alg.e_hat(i) == alg.one());
    let dimension = alg.dim();
    let factorial: usize = (1..=n).product();
    Ok(PresentationReport {
        n,
        p: field.p(),
        dimension,
        idempotent,
        braid,
        commuting,
        complementary,
        holds: idempotent && braid && commuting && complementary && dimension == factorial,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub k: usize,
    pub total: usize,
    pub p: u32,
    pub plain: bool,
    pub hatted: bool,
}

/// In H_total with n = total - k: `e_k e(k) e_k = e_{k+1}` and `ê_n ê(k) ê_n = ê_{n+1}`.
pub fn ek_recursion_check(k: usize, total: usize, field: PrimeField) -> Result<RecursionReport> {
    if k < 1 || total < k + 1 {
        return Err(Error::invalid(format!("need 1 <= k < total, got k={k}, total={total}")));
    }
    let alg = HeckeAlgebra::new(total, field)?;
    let n = total - k;
    let ek = e_block(&alg, k, 0);
    let plain = &(&ek * &alg.e(k)) * &ek == e_block(&alg, k + 1, 0);
    let en = e_hat_block(&alg, n, k);
    let hatted = &(&en * &alg.e_hat(k)) * &en == e_hat_block(&alg, n + 1, k - 1);
    Ok(RecursionReport {
        k,
        total,
        p: field.p(),
        plain,
        hatted,
    })
}

/// The idempotents attached to the node (n, k) of H_{n+k} and its neighbours.
#[derive(Clone, Debug)]
pub struct NodeIdempotents {
    /// `e_k` on strands `0..k`.
    pub e_k: HeckeElement,
    /// `ê_n` on strands `k..k+n`.
    pub e_hat_n: HeckeElement,
    /// `e_{k+1}` on strands `0..k+1`; needs n >= 1.
    pub e_k1: Option<HeckeElement>,
    /// `ê_{n+1}` on strands `k-1..k+n`; needs k >= 1.
    pub e_hat_n1: Option<HeckeElement>,
}

impl NodeIdempotents {
    pub fn new(alg: &Arc<HeckeAlgebra>, n: usize, k: usize) -> Self {
        assert_eq!(alg.n(), n + k, "node must live in H_(n+k)");
        NodeIdempotents {
            e_k: e_block(alg, k, 0),
            e_hat_n: e_hat_block(alg, n, k),
            e_k1: (n >= 1).then(|| e_block(alg, k + 1, 0)),
            e_hat_n1: (k >= 1).then(|| e_hat_block(alg, n + 1, k - 1)),
        }
    }

    /// The corner idempotent `ê_n e_k`.
    pub fn corner(&self) -> HeckeElement {
        &self.e_hat_n * &self.e_k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyIdentityReport {
    pub n: usize,
    pub k: usize,
    pub p: u32,
    pub identity_holds: bool,
    pub orthogonal: bool,
    pub both_idempotent: bool,
}

impl KeyIdentityReport {
    pub fn holds(&self) -> bool {
        self.identity_holds && self.orthogonal && self.both_idempotent
    }
}

/// The two summands `ê_n e_{k+1} ê_n` and `e_k ê_{n+1} e_k` of the corner `ê_n e_k`.
pub fn corner_summands(alg: &Arc<HeckeAlgebra>, n: usize, k: usize) -> Result<(HeckeElement, HeckeElement)> {
    if n < 1 || k < 1 {
        return Err(Error::invalid(format!(
            "the corner splitting needs n, k >= 1, got ({n}, {k})"
        )));
    }
    let ids = NodeIdempotents::new(alg, n, k);
    let a = &(&ids.e_hat_n * ids.e_k1.as_ref().unwrap()) * &ids.e_hat_n;
    let b = &(&ids.e_k * ids.e_hat_n1.as_ref().unwrap()) * &ids.e_k;
    Ok((a, b))
}

/// `ê_n e_{k+1} ê_n + e_k ê_{n+1} e_k = ê_n e_k`, with the two summands
/// orthogonal idempotents, in H_{n+k}.
pub fn key_identity(n: usize, k: usize, field: PrimeField) -> Result<KeyIdentityReport> {
    let alg = HeckeAlgebra::new(n + k, field)?;
    let (a, b) = corner_summands(&alg, n, k)?;
    let corner = NodeIdempotents::new(&alg, n, k).corner();
    Ok(KeyIdentityReport {
        n,
        k,
        p: field.p(),
        identity_holds: &a + &b == corner,
        orthogonal: (&a * &b).is_zero() && (&b * &a).is_zero(),
        both_idempotent: a.is_idempotent() && b.is_idempotent(),
    })
}

/// `d = ê_{n+1} e_k` and `s = e_k ê_{n+1}` in H_{n+k}, mapping between the nodes
/// (n, k) and (n+1, k-1). Both are zero when k = 0.
#[derive(Clone, Debug)]
pub struct DsPair {
    pub d: HeckeElement,
    pub s: HeckeElement,
}

pub fn ds_elements(alg: &Arc<HeckeAlgebra>, n: usize, k: usize) -> DsPair {
    if k == 0 {
        return DsPair {
            d: alg.zero(),
            s: alg.zero(),
        };
    }
    let ids = NodeIdempotents::new(alg, n, k);
    let e_hat = ids.e_hat_n1.expect("k >= 1");
    DsPair {
        d: &e_hat * &ids.e_k,
        s: &ids.e_k * &e_hat,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize, p: u32) -> Arc<HeckeAlgebra> {
        HeckeAlgebra::new(n, PrimeField::new(p).unwrap()).unwrap()
    }

    #[test]
    fn longest_word_shapes() {
        assert_eq!(longest_word(1, 3), vec![1, 2, 3, 1, 2, 1]);
        assert_eq!(longest_word(3, 2), vec![3, 4, 3]);
        assert!(longest_word(1, 0).is_empty());
    }

    #[test]
    fn small_longest_idempotents() {
        let h = alg(2, 2);
        assert_eq!(longest_idempotent(&h), h.e(1));
        for n in 0..=1 {
            let h = alg(n, 3);
            assert_eq!(longest_idempotent(&h), h.one());
            assert_eq!(longest_hat_idempotent(&h), h.one());
        }
    }

    #[test]
    fn explicit_e4() {
        for p in [2, 3] {
            let h = alg(4, p);
            let word = [1, 2, 3, 1, 2, 1].map(|i| h.e(i));
            assert_eq!(longest_idempotent(&h), product(&h, &word));
        }
    }

    #[test]
    fn absorption_characterizes_e_n() {
        for p in [2, 3] {
            for n in 1..=4 {
                let h = alg(n, p);
                let en = longest_idempotent(&h);
                assert!(en.is_idempotent());
                for i in 1..n {
                    assert_eq!(&h.e(i) * &en, en);
                    assert_eq!(&en * &h.e(i), en);
                }
                assert_eq!(absorption_solution_dim(&h), 1, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn involution_swaps_longest_idempotents() {
        let h = alg(3, 2);
        let e3 = longest_idempotent(&h);
        let hat = e3.involution();
        assert_eq!(hat, longest_hat_idempotent(&h));
        for i in 1..3 {
            assert_eq!(&h.e_hat(i) * &hat, hat);
        }
        assert_eq!(h.e(1).involution(), h.e_hat(1));
    }

    #[test]
    fn presentation_examples() {
        for (n, p) in [(2, 2), (3, 2), (4, 3)] {
            let r = verify_presentation(n, PrimeField::new(p).unwrap()).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn recursion_examples() {
        let f2 = PrimeField::TWO;
        let r = ek_recursion_check(1, 2, f2).unwrap();
        assert!(r.plain && r.hatted);
        let r = ek_recursion_check(2, 3, f2).unwrap();
        assert!(r.plain);
        let r = ek_recursion_check(2, 3, PrimeField::new(3).unwrap()).unwrap();
        assert!(r.hatted);
        assert!(ek_recursion_check(3, 3, f2).is_err());
    }

    #[test]
    fn key_identity_examples() {
        let h = alg(2, 2);
        let (a, b) = corner_summands(&h, 1, 1).unwrap();
        assert_eq!(a, h.e(1));
        assert_eq!(b, h.e_hat(1));
        for (n, k, p) in [(1, 1, 2), (2, 1, 2), (2, 2, 3)] {
            let r = key_identity(n, k, PrimeField::new(p).unwrap()).unwrap();
            assert!(r.holds(), "{r:?}");
        }
        assert!(key_identity(0, 2, PrimeField::TWO).is_err());
    }

    #[test]
    fn ds_examples() {
        let h1 = alg(1, 2);
        let pair = ds_elements(&h1, 0, 1);
        assert_eq!(pair.d, h1.one());
        assert_eq!(pair.s, h1.one());

        let h3 = alg(3, 2);
        let first = ds_elements(&h3, 1, 2);
        let second = ds_elements(&h3, 2, 1);
        assert!(!first.d.is_zero() && !first.s.is_zero());
        assert!((&second.d * &first.d).is_zero());
        assert!((&first.s * &second.s).is_zero());
        assert_eq!(first.d.anti_involution(), first.s);
        assert!(ds_elements(&h3, 3, 0).d.is_zero());
    }
}
