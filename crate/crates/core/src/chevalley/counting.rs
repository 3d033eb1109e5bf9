//! Epimorphisms between elementary abelian p-groups, and their transitive
//! representations in the iterated wreath product acting on a p-ary tree.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{check_guard, Result};
use crate::exactlin::{FpMatrix, PrimeField};

use super::all_vectors;

/// Largest number of m x n matrices the brute-force epimorphism count visits.
pub const EPI_BRUTE_LIMIT: u128 = 10_000_000;

/// Largest wreath product the transitive-representation check builds.
pub const WREATH_LIMIT: u128 = 1 << 13;

/// |Epi((Z/p)^m, (Z/p)^n)| = prod_{i<n} (p^m - p^i), or 0 when m < n.
pub fn count_epis(m: usize, n: usize, p: u32) -> u128 {
    if m < n {
        return 0;
    }
    let q = (p as u128).pow(m as u32);
    (0..n).map(|i| q - (p as u128).pow(i as u32)).product()
}

/// The same count by testing every n x m matrix for rank n.
pub fn count_epis_brute(m: usize, n: usize, field: PrimeField) -> Result<u128> {
    let total = (field.p() as u128).saturating_pow((m * n) as u32);
    check_guard("epimorphism enumeration", total, EPI_BRUTE_LIMIT)?;
    if n == 0 {
        return Ok(1);
    }
    let mut count = 0;
    for data in all_vectors(field, m * n) {
        if FpMatrix::from_data(field, n, m, data).rank() == n {
            count += 1;
        }
    }
    Ok(count)
}

/// Leaf permutation of the iterated wreath product Z/p ≀ .. ≀ Z/p on `p^n` leaves.
type LeafPerm = Vec<u16>;

/// The iterated wreath product acting on the leaves `(a_1, .., a_n)` of the
/// depth-n p-ary tree by `a_j -> a_j + c_j(a_1, .., a_{j-1})`. Leaves are indexed
/// by `a_1 + a_2 p + .. + a_n p^{n-1}`.
#[derive(Clone, Debug)]
pub struct WreathGroup {
    p: u32,
    n: usize,
    elements: Vec<LeafPerm>,
}

fn compose(a: &LeafPerm, b: &LeafPerm) -> LeafPerm {
    // a ∘ b
    b.iter().map(|&x| a[x as usize]).collect()
}

fn invert(a: &LeafPerm) -> LeafPerm {
    let mut out = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out
}

impl WreathGroup {
    pub fn order_estimate(p: u32, n: usize) -> u128 {
        let digits: u32 = (0..n).map(|j| p.pow(j as u32)).sum();
        (p as u128).saturating_pow(digits)
    }

    pub fn new(p: u32, n: usize) -> Result<Self> {
        check_guard("wreath product order", Self::order_estimate(p, n), WREATH_LIMIT)?;
        let leaves = p.pow(n as u32) as usize;
        // one digit of c_j per prefix (a_1..a_{j-1})
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..p.pow(j as u32) as usize).map(move |prefix| (j, prefix)))
            .collect();
        let order = Self::order_estimate(p, n) as usize;
        let mut elements = Vec::with_capacity(order);
        for code in 0..order {
            let mut c = vec![0u32; slots.len()];
            let mut x = code;
            for d in c.iter_mut() {
                *d = (x % p as usize) as u32;
                x /= p as usize;
            }
            let perm: LeafPerm = (0..leaves)
                .map(|leaf| {
                    let mut digits: Vec<u32> = (0..n)
                        .map(|j| (leaf / p.pow(j as u32) as usize) as u32 % p)
                        .collect();
                    let orig = digits.clone();
                    for (s, &(j, prefix)) in slots.iter().enumerate() {
                        let pre: usize = (0..j)
                            .map(|i| orig[i] as usize * p.pow(i as u32) as usize)
                            .sum();
                        if pre == prefix {
                            digits[j] = (digits[j] + c[s]) % p;
                        }
                    }
                    digits
                        .iter()
                        .enumerate()
                        .map(|(j, &d)| d as usize * p.pow(j as u32) as usize)
                        .sum::<usize>() as u16
                })
                .collect();
            elements.push(perm);
        }
        Ok(WreathGroup { p, n, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn leaves(&self) -> usize {
        self.p.pow(self.n as u32) as usize
    }

    /// Translation by `v ∈ F_p^n`, an element of the embedded copy of E_n.
    pub fn translation(&self, v: &[u32]) -> LeafPerm {
        let p = self.p as usize;
        (0..self.leaves())
            .map(|leaf| {
                (0..self.n)
                    .map(|j| {
                        let d = (leaf / p.pow(j as u32)) % p;
                        ((d + v[j] as usize) % p) * p.pow(j as u32)
                    })
                    .sum::<usize>() as u16
            })
            .collect()
    }

    fn is_transitive(&self, gens: &[LeafPerm]) -> bool {
        let mut seen = vec![false; self.leaves()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g[x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Least conjugate of the generator tuple, a complete invariant of its
    /// conjugacy class.
    fn canonical(&self, gens: &[LeafPerm]) -> Vec<LeafPerm> {
        self.elements
            .iter()
            .map(|h| {
                let h_inv = invert(h);
                gens.iter()
                    .map(|g| compose(h, &compose(g, &h_inv)))
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap_or_default()
    }

    /// Conjugacy classes of transitive homomorphisms (Z/p)^m -> self, as
    /// canonical generator tuples.
    pub fn transitive_classes(&self, m: usize) -> BTreeSet<Vec<LeafPerm>> {
        let id: LeafPerm = (0..self.leaves() as u16).collect();
        let candidates: Vec<&LeafPerm> = self
            .elements
            .iter()
            .filter(|g| {
                let mut acc = (*g).clone();
                for _ in 1..self.p {
                    acc = compose(g, &acc);
                }
                acc == id
            })
            .collect();
        let mut classes = BTreeSet::new();
        let mut tuple: Vec<LeafPerm> = Vec::new();
        self.extend_commuting(m, &candidates, &mut tuple, &mut classes);
        classes
    }

    fn extend_commuting(
        &self,
        m: usize,
        candidates: &[&LeafPerm],
        tuple: &mut Vec<LeafPerm>,
        classes: &mut BTreeSet<Vec<LeafPerm>>,
    ) {
        if tuple.len() == m {
            if self.is_transitive(tuple) {
                classes.insert(self.canonical(tuple));
            }
            return;
        }
        for &g in candidates {
            if tuple.iter().all(|t| compose(t, g) == compose(g, t)) {
                tuple.push(g.clone());
                self.extend_commuting(m, candidates, tuple, classes);
                tuple.pop();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransRepReport {
    pub p: u32,
    pub n: usize,
    pub m: usize,
    pub epi_orbit_count: usize,
    pub transrep_count: usize,
    /// Rank of the induced map from orbit span to class span.
    pub image_rank: usize,
    /// The map is constant on orbits (it is well defined).
    pub well_defined: bool,
    pub injective: bool,
}

/// Compare `Epi(E_m, E_n) / U_n` with conjugacy classes of transitive
/// representations of `E_m` in the wreath product, via `φ -> ι ∘ φ`.
pub fn transrep_injectivity(p: u32, n: usize, m: usize) -> Result<TransRepReport> {
    let field = PrimeField::new(p)?;
    let wreath = WreathGroup::new(p, n)?;
    check_guard(
        "epimorphism enumeration",
        (p as u128).saturating_pow((m * n) as u32),
        EPI_BRUTE_LIMIT,
    )?;
    let classes = wreath.transitive_classes(m);

    // U_n acts on the target coordinates by x_j -> x_j + sum_{i<j} u_ji x_i,
    // which is conjugation by the corresponding affine tree automorphism.
    let lower_slots: Vec<(usize, usize)> =
        (0..n).flat_map(|j| (0..j).map(move |i| (j, i))).collect();
    let unipotents: Vec<FpMatrix> = all_vectors(field, lower_slots.len())
        .into_iter()
        .map(|vals| {
            let mut u = FpMatrix::identity(field, n);
            for (&(j, i), v) in lower_slots.iter().zip(vals) {
                u.set(j, i, v);
            }
            u
        })
        .collect();

    let epis: Vec<FpMatrix> = all_vectors(field, n * m)
        .into_iter()
        .map(|d| FpMatrix::from_data(field, n, m, d))
        .filter(|a| a.rank() == n)
        .collect();

    // orbit label = least matrix in the orbit
    let mut orbit_images: BTreeMap<Vec<u32>, BTreeSet<Vec<LeafPerm>>> = BTreeMap::new();
    for a in &epis {
        let label = unipotents
            .iter()
            .map(|u| (u * a).data().to_vec())
            .min()
            .unwrap();
        let gens: Vec<LeafPerm> = (0..m).map(|j| wreath.translation(&a.column(j))).collect();
        orbit_images
            .entry(label)
            .or_default()
            .insert(wreath.canonical(&gens));
    }

    let well_defined = orbit_images.values().all(|s| s.len() == 1);
    let images: BTreeSet<&Vec<LeafPerm>> = orbit_images.values().flatten().collect();
    debug_assert!(images.iter().all(|c| classes.contains(*c)));
    let epi_orbit_count = orbit_images.len();
    let image_rank = images.len();
    Ok(TransRepReport {
        p,
        n,
        m,
        epi_orbit_count,
        transrep_count: classes.len(),
        image_rank,
        well_defined,
        injective: well_defined && image_rank == epi_orbit_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epi_examples() {
        assert_eq!(count_epis(2, 1, 2), 3);
        assert_eq!(count_epis(1, 2, 2), 0);
        assert_eq!(count_epis(2, 2, 2), 6);
        let f2 = PrimeField::TWO;
        assert_eq!(count_epis_brute(2, 1, f2).unwrap(), 3);
        assert_eq!(count_epis_brute(1, 2, f2).unwrap(), 0);
        assert_eq!(count_epis_brute(2, 2, f2).unwrap(), 6);
    }

    #[test]
    fn epi_formula_matches_brute_force() {
        for p in [2, 3] {
            let field = PrimeField::new(p).unwrap();
            for m in 0..=3 {
                for n in 0..=3 {
                    let brute = count_epis_brute(m, n, field).unwrap();
                    assert_eq!(count_epis(m, n, p), brute, "m={m} n={n} p={p}");
                    assert_eq!(brute == 0, m < n);
                }
            }
        }
    }

    #[test]
    fn wreath_orders() {
        assert_eq!(WreathGroup::new(2, 1).unwrap().order(), 2);
        assert_eq!(WreathGroup::new(2, 2).unwrap().order(), 8);
        assert_eq!(WreathGroup::new(3, 2).unwrap().order(), 81);
        assert!(WreathGroup::new(2, 4).is_err());
        // elements are distinct permutations
        let w = WreathGroup::new(2, 3).unwrap();
        let set: BTreeSet<_> = w.elements.iter().collect();
        assert_eq!(set.len(), 128);
    }

    #[test]
    fn transrep_examples() {
        let r = transrep_injectivity(2, 1, 1).unwrap();
        assert_eq!((r.epi_orbit_count, r.transrep_count, r.injective), (1, 1, true));
        let r = transrep_injectivity(2, 1, 0).unwrap();
        assert_eq!((r.epi_orbit_count, r.transrep_count, r.injective), (0, 0, true));
        let r = transrep_injectivity(2, 2, 2).unwrap();
        assert!(r.injective && r.well_defined);
        assert_eq!(r.epi_orbit_count, 3);
    }
}
