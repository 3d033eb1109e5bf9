//! Dyer–Lashof words on the degree-1 class.
//!
//! A word `β^{ε_1}Q^{a_1} ... β^{ε_m}Q^{a_m}` is stored left to right and applied
//! right to left. Conventions:
//!
//! * p = 2: `Q^a` raises degree by a and vanishes on x when `a < |x|`; the pair
//!   `Q^a Q^b` is admissible when `a <= 2b`.
//! * odd p: `Q^s` raises degree by `2s(p-1)`, β lowers it by 1. `β^ε Q^s x`
//!   vanishes when `2s < |x|`, and also when `2s = |x|` with ε = 1 (β of a
//!   p-th power). The pair `(ε, s)(ε', s')` is admissible when `s <= p s' - ε'`.
//!
//! The odd-p inequalities are a convention; they reproduce the bottom class in
//! degree `2p^k - 1 - k` with multiplicity one.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::HilbertSeries;

/// Largest degree accepted by [`enumerate_count`].
pub const MAX_COUNT_DEGREE: u32 = 64;
/// Longest word accepted by [`adem_rewrite`].
pub const MAX_ADEM_LENGTH: usize = 6;
const ADEM_STEP_LIMIT: usize = 1_000_000;

/// One operation `β^ε Q^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QOp {
    pub bockstein: bool,
    pub index: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QWord {
    p: u32,
    ops: Vec<QOp>,
}

impl QWord {
    pub fn new(p: u32, ops: Vec<QOp>) -> Result<Self> {
        check_prime(p)?;
        if let Some(op) = ops.iter().find(|op| op.index == 0 || (p == 2 && op.bockstein)) {
            return Err(Error::invalid(format!("invalid operation {op:?} at p = {p}")));
        }
        Ok(QWord { p, ops })
    }

    /// A p = 2 word from its indices, left to right.
    pub fn from_indices(indices: &[u32]) -> Result<Self> {
        Self::new(
            2,
            indices
                .iter()
                .map(|&index| QOp {
                    bockstein: false,
                    index,
                })
                .collect(),
        )
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ops(&self) -> &[QOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn indices(&self) -> Vec<u32> {
        self.ops.iter().map(|op| op.index).collect()
    }

    pub fn degree(&self) -> u64 {
        word_degree(self)
    }
}

impl fmt::Display for QWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            if op.bockstein {
                write!(f, "β")?;
            }
            write!(f, "Q{}", op.index)?;
        }
        write!(f, "ι")
    }
}

fn step(p: u32, op: QOp) -> u64 {
    if p == 2 {
        u64::from(op.index)
    } else {
        2 * u64::from(p - 1) * u64::from(op.index) - u64::from(op.bockstein)
    }
}

/// Whether `op` is nonzero on a class of degree `deg`.
fn clears(p: u32, op: QOp, deg: u64) -> bool {
    let a = u64::from(op.index);
    if p == 2 {
        a >= deg
    } else {
        2 * a > deg || (2 * a == deg && !op.bockstein)
    }
}

fn admissible(p: u32, left: QOp, right: QOp) -> bool {
    if p == 2 {
        left.index <= 2 * right.index
    } else {
        u64::from(left.index) + u64::from(right.bockstein) <= u64::from(p) * u64::from(right.index)
    }
}

/// Degree of the word applied to the degree-1 class.
pub fn word_degree(w: &QWord) -> u64 {
    1 + w.ops.iter().map(|&op| step(w.p, op)).sum::<u64>()
}

/// Every operation clears the degree of its argument.
pub fn is_unstable(w: &QWord) -> bool {
    let mut deg = 1u64;
    for &op in w.ops.iter().rev() {
        if !clears(w.p, op, deg) {
            return false;
        }
        deg += step(w.p, op);
    }
    true
}

/// Whether the adjacent pair at positions `j, j + 1` (left to right) is admissible.
pub fn is_admissible_pair(w: &QWord, j: usize) -> bool {
    admissible(w.p, w.ops[j], w.ops[j + 1])
}

pub fn is_admissible(w: &QWord) -> bool {
    (0..w.len().saturating_sub(1)).all(|j| is_admissible_pair(w, j))
}

pub fn is_completely_inadmissible(w: &QWord) -> bool {
    (0..w.len().saturating_sub(1)).all(|j| !is_admissible_pair(w, j))
}

/// Adjacency constraint at the boundary of the two blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Bridge {
    Free,
    Admissible,
}

/// Which words of length n + k are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WordShape {
    /// No adjacency constraints.
    Free { length: usize },
    /// Leftmost n operations pairwise admissible, rightmost k completely
    /// inadmissible.
    Block { n: usize, k: usize, bridge: Bridge },
}

impl WordShape {
    pub fn block(n: usize, k: usize) -> Self {
        WordShape::Block {
            n,
            k,
            bridge: Bridge::Free,
        }
    }

    pub fn length(&self) -> usize {
        match *self {
            WordShape::Free { length } => length,
            WordShape::Block { n, k, .. } => n + k,
        }
    }

    /// Constraint on the pair whose left operation sits at position j.
    fn pair(&self, j: usize) -> PairRule {
        match *self {
            WordShape::Free { .. } => PairRule::Any,
            WordShape::Block { n, bridge, .. } => {
                if j + 1 < n {
                    PairRule::Admissible
                } else if j + 1 == n {
                    match bridge {
                        Bridge::Free => PairRule::Any,
                        Bridge::Admissible => PairRule::Admissible,
                    }
                } else {
                    PairRule::Inadmissible
                }
            }
        }
    }

    pub fn accepts(&self, w: &QWord) -> bool {
        w.len() == self.length()
            && is_unstable(w)
            && (0..w.len().saturating_sub(1)).all(|j| match self.pair(j) {
                PairRule::Any => true,
                PairRule::Admissible => is_admissible_pair(w, j),
                PairRule::Inadmissible => !is_admissible_pair(w, j),
            })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairRule {
    Any,
    Admissible,
    Inadmissible,
}

fn op_of(p: u32, slot: usize) -> QOp {
    if p == 2 {
        QOp {
            bockstein: false,
            index: slot as u32,
        }
    } else {
        QOp {
            bockstein: slot % 2 == 1,
            index: (slot / 2) as u32,
        }
    }
}

fn slots(p: u32, max_degree: u32) -> usize {
    if p == 2 {
        max_degree as usize + 1
    } else {
        2 * (max_degree as usize / (2 * (p as usize - 1)) + 2)
    }
}

/// Number of unstable words of each degree `<= max_degree` with the given shape.
///
/// Dynamic programme over (degree, leftmost operation so far), building words
/// from the right.
pub fn count_series_u128(p: u32, shape: WordShape, max_degree: u32) -> Vec<u128> {
    let dmax = max_degree as usize;
    let len = shape.length();
    let mut out = vec![0u128; dmax + 1];
    if len == 0 {
        if dmax >= 1 {
            out[1] = 1;
        }
        return out;
    }
    let nslots = slots(p, max_degree);
    let ops: Vec<Option<QOp>> = (0..nslots)
        .map(|s| {
            let op = op_of(p, s);
            (op.index > 0).then_some(op)
        })
        .collect();
    // table[deg][slot] = number of partial words of degree deg whose leftmost op is slot
    let mut table = vec![vec![0u128; nslots]; dmax + 1];
    for op in ops.iter().flatten() {
        let deg = 1 + step(p, *op);
        if deg as usize <= dmax && clears(p, *op, 1) {
            table[deg as usize][slot_of(p, *op)] += 1;
        }
    }
    // positions counted from the left: the op just placed is at len - 1 - placed
    for placed in 1..len {
        let pos = len - 1 - placed;
        let rule = shape.pair(pos);
        let mut next = vec![vec![0u128; nslots]; dmax + 1];
        for (deg, row) in table.iter().enumerate() {
            for (rs, &count) in row.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let right = ops[rs].expect("occupied slots are operations");
                for left in ops.iter().flatten() {
                    let nd = deg as u64 + step(p, *left);
                    if nd as usize > dmax {
                        continue;
                    }
                    if !clears(p, *left, deg as u64) {
                        continue;
                    }
                    let ok = match rule {
                        PairRule::Any => true,
                        PairRule::Admissible => admissible(p, *left, right),
                        PairRule::Inadmissible => !admissible(p, *left, right),
                    };
                    if ok {
                        next[nd as usize][slot_of(p, *left)] += count;
                    }
                }
            }
        }
        table = next;
    }
    for (deg, row) in table.iter().enumerate() {
        out[deg] = row.iter().sum();
    }
    out
}

fn slot_of(p: u32, op: QOp) -> usize {
    if p == 2 {
        op.index as usize
    } else {
        2 * op.index as usize + usize::from(op.bockstein)
    }
}

/// Counts as a Hilbert series in degrees `<= max_degree`.
pub fn count_series(p: u32, shape: WordShape, max_degree: u32) -> HilbertSeries {
    let counts = count_series_u128(p, shape, max_degree);
    HilbertSeries::from_fn(max_degree, |d| {
        usize::try_from(counts[d as usize]).expect("count fits in usize")
    })
}

fn check_prime(p: u32) -> Result<()> {
    crate::exactlin::PrimeField::new(p).map(|_| ())
}

/// Number of unstable words of degree d: n admissible operations applied to a
/// completely inadmissible word of length k. The boundary pair is unconstrained.
pub fn enumerate_count(p: u32, n: usize, k: usize, d: u32) -> Result<u128> {
    enumerate_count_with(p, WordShape::block(n, k), d)
}

pub fn enumerate_count_free(p: u32, length: usize, d: u32) -> Result<u128> {
    enumerate_count_with(p, WordShape::Free { length }, d)
}

pub fn enumerate_count_with(p: u32, shape: WordShape, d: u32) -> Result<u128> {
    check_prime(p)?;
    if d > MAX_COUNT_DEGREE {
        return Err(Error::guard("word degree", u128::from(d), u128::from(MAX_COUNT_DEGREE)));
    }
    Ok(count_series_u128(p, shape, d)[d as usize])
}

/// All words of the shape in degree d, in lexicographic order of operations.
pub fn enumerate_words(p: u32, shape: WordShape, d: u32) -> Result<Vec<QWord>> {
    check_prime(p)?;
    if d > MAX_COUNT_DEGREE {
        return Err(Error::guard("word degree", u128::from(d), u128::from(MAX_COUNT_DEGREE)));
    }
    let len = shape.length();
    let mut out = Vec::new();
    let mut ops = Vec::with_capacity(len);
    fn rec(p: u32, shape: &WordShape, len: usize, d: u64, deg: u64, ops: &mut Vec<QOp>, out: &mut Vec<QWord>) {
        // ops holds the rightmost operations, rightmost first
        if ops.len() == len {
            if deg == d {
                let w = QWord {
                    p,
                    ops: ops.iter().rev().copied().collect(),
                };
                if shape.accepts(&w) {
                    out.push(w);
                }
            }
            return;
        }
        let max_slot = slots(p, d as u32);
        for s in 0..max_slot {
            let op = op_of(p, s);
            if op.index == 0 || !clears(p, op, deg) {
                continue;
            }
            let nd = deg + step(p, op);
            if nd > d {
                continue;
            }
            ops.push(op);
            rec(p, shape, len, d, nd, ops, out);
            ops.pop();
        }
    }
    rec(p, &shape, len, u64::from(d), 1, &mut ops, &mut out);
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BottomClass {
    pub p: u32,
    pub k: usize,
    pub degree: u32,
    pub count: u128,
    /// `2p^k - 1 - k`.
    pub predicted: u64,
}

impl BottomClass {
    pub fn matches(&self) -> bool {
        u64::from(self.degree) == self.predicted && self.count == 1
    }
}

/// Least degree carrying a completely inadmissible unstable word of length k.
pub fn bottom_degree(p: u32, k: usize) -> Result<BottomClass> {
    check_prime(p)?;
    let limit = match p {
        2 => 8,
        3 => 5,
        _ => 3,
    };
    if k > limit {
        return Err(Error::guard("bottom class length", k as u128, limit as u128));
    }
    let predicted = 2 * u64::from(p).pow(k as u32) - 1 - k as u64;
    // search one degree past the prediction so a miss is reported, not hidden
    let bound = u32::try_from(predicted + 1).expect("small degree");
    let counts = count_series_u128(p, WordShape::block(0, k), bound);
    let (degree, count) = counts
        .iter()
        .enumerate()
        .find(|(_, &c)| c > 0)
        .map(|(d, &c)| (d as u32, c))
        .unwrap_or((bound + 1, 0));
    Ok(BottomClass {
        p,
        k,
        degree,
        count,
        predicted,
    })
}

fn binomial_mod2(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (n & k) == k
}

/// `Q^r Q^s` with `r > 2s` as a sum of `Q^{r+s-i} Q^i`.
fn adem_terms(r: u32, s: u32) -> Vec<(u32, u32)> {
    let (r, s) = (i64::from(r), i64::from(s));
    ((r + 1) / 2..=r - s - 1)
        .filter(|&i| binomial_mod2(i - s - 1, 2 * i - r))
        .map(|i| ((r + s - i) as u32, i as u32))
        .collect()
}

/// Rewrites a p = 2 word as an F_2-sum of admissible unstable words using the
/// Adem relations, discarding words that violate instability.
pub fn adem_rewrite(w: &QWord) -> Result<BTreeSet<QWord>> {
    if w.p != 2 {
        return Err(Error::invalid("Adem rewriting is implemented at p = 2 only"));
    }
    if w.len() > MAX_ADEM_LENGTH {
        return Err(Error::guard("word length", w.len() as u128, MAX_ADEM_LENGTH as u128));
    }
    if w.degree() > u64::from(MAX_COUNT_DEGREE) {
        return Err(Error::guard("word degree", u128::from(w.degree()), u128::from(MAX_COUNT_DEGREE)));
    }
    let mut done: BTreeSet<QWord> = BTreeSet::new();
    let mut pending: BTreeSet<QWord> = BTreeSet::new();
    let toggle = |set: &mut BTreeSet<QWord>, x: QWord| {
        if !set.remove(&x) {
            set.insert(x);
        }
    };
    if is_unstable(w) {
        pending.insert(w.clone());
    }
    let mut steps = 0usize;
    while let Some(x) = pending.pop_first() {
        steps += 1;
        if steps > ADEM_STEP_LIMIT {
            return Err(Error::guard("Adem rewriting steps", steps as u128, ADEM_STEP_LIMIT as u128));
        }
        let Some(j) = (0..x.len().saturating_sub(1)).rev().find(|&j| !is_admissible_pair(&x, j)) else {
            toggle(&mut done, x);
            continue;
        };
        for (a, b) in adem_terms(x.ops[j].index, x.ops[j + 1].index) {
            let mut ops = x.ops.clone();
            ops[j].index = a;
            ops[j + 1].index = b;
            let y = QWord { p: 2, ops };
            if is_unstable(&y) {
                toggle(&mut pending, y);
            }
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(indices: &[u32]) -> QWord {
        QWord::from_indices(indices).unwrap()
    }

    fn op(bockstein: bool, index: u32) -> QOp {
        QOp { bockstein, index }
    }

    #[test]
    fn degrees() {
        assert_eq!(q(&[]).degree(), 1);
        assert_eq!(q(&[1]).degree(), 2);
        let w = QWord::new(3, vec![op(true, 1)]).unwrap();
        assert_eq!(w.degree(), 4);
        assert!(QWord::new(2, vec![op(true, 1)]).is_err());
        assert!(QWord::from_indices(&[0]).is_err());
    }

    #[test]
    fn pair_tests() {
        let w = q(&[2, 1]);
        assert!(is_unstable(&w) && is_admissible(&w));
        let w = q(&[3, 1]);
        assert!(is_unstable(&w) && is_completely_inadmissible(&w));
        assert!(!is_unstable(&q(&[1, 2])));
    }

    /// Direct enumeration over all index tuples, independent of the DP.
    fn brute(p: u32, shape: WordShape, d: u32) -> u128 {
        let len = shape.length();
        let per = slots(p, d);
        let mut count = 0;
        let mut idx = vec![0usize; len];
        loop {
            let ops: Vec<QOp> = idx.iter().map(|&s| op_of(p, s)).collect();
            if ops.iter().all(|o| o.index > 0) {
                let w = QWord { p, ops };
                if w.degree() == u64::from(d) && shape.accepts(&w) {
                    count += 1;
                }
            }
            let mut i = 0;
            loop {
                if i == len {
                    return count;
                }
                idx[i] += 1;
                if idx[i] < per {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn counting_examples() {
        assert_eq!(enumerate_count_free(2, 2, 5).unwrap(), 1);
        assert_eq!(enumerate_count(2, 2, 0, 5).unwrap(), 0);
        assert_eq!(enumerate_count(2, 0, 2, 5).unwrap(), 1);
        assert_eq!(enumerate_count(2, 0, 0, 1).unwrap(), 1);
        assert!(enumerate_count(2, 1, 1, 65).is_err());
        assert!(enumerate_count(4, 1, 1, 5).is_err());
    }

    #[test]
    fn dp_matches_brute_force() {
        for p in [2, 3] {
            for shape in [
                WordShape::Free { length: 2 },
                WordShape::Free { length: 3 },
                WordShape::block(2, 1),
                WordShape::block(1, 2),
                WordShape::block(0, 3),
                WordShape::Block {
                    n: 1,
                    k: 2,
                    bridge: Bridge::Admissible,
                },
            ] {
                let max = if p == 2 { 20 } else { 30 };
                let dp = count_series_u128(p, shape, max);
                for d in 1..=max {
                    assert_eq!(dp[d as usize], brute(p, shape, d), "p={p} {shape:?} d={d}");
                    assert_eq!(
                        dp[d as usize],
                        enumerate_words(p, shape, d).unwrap().len() as u128
                    );
                }
            }
        }
    }

    #[test]
    fn partition_at_length_two() {
        for p in [2, 3, 5] {
            let free = count_series_u128(p, WordShape::Free { length: 2 }, 64);
            let adm = count_series_u128(p, WordShape::block(2, 0), 64);
            let inadm = count_series_u128(p, WordShape::block(0, 2), 64);
            for d in 0..=64 {
                assert_eq!(free[d], adm[d] + inadm[d], "p={p} d={d}");
            }
        }
    }

    #[test]
    fn block_complex_has_zero_euler_characteristic() {
        for p in [2, 3] {
            for m in 1..=4usize {
                let series: Vec<Vec<u128>> =
                    (0..=m).map(|k| count_series_u128(p, WordShape::block(m - k, k), 64)).collect();
                for d in 0..=64 {
                    let even: u128 = series.iter().step_by(2).map(|s| s[d]).sum();
                    let odd: u128 = series.iter().skip(1).step_by(2).map(|s| s[d]).sum();
                    assert_eq!(even, odd, "p={p} m={m} d={d}");
                }
            }
        }
    }

    #[test]
    fn bottom_classes() {
        for k in 0..=6 {
            let b = bottom_degree(2, k).unwrap();
            assert!(b.matches(), "{b:?}");
        }
        for k in 0..=4 {
            let b = bottom_degree(3, k).unwrap();
            assert!(b.matches(), "{b:?}");
        }
        assert_eq!(bottom_degree(2, 3).unwrap().degree, 12);
        assert_eq!(bottom_degree(3, 1).unwrap().degree, 4);
        assert_eq!(bottom_degree(3, 2).unwrap().degree, 15);
        assert_eq!(
            enumerate_words(2, WordShape::block(0, 3), 12).unwrap(),
            vec![q(&[7, 3, 1])]
        );
        assert!(bottom_degree(2, 9).is_err());
    }

    #[test]
    fn adem_examples() {
        let w = q(&[2, 1]);
        assert_eq!(adem_rewrite(&w).unwrap(), BTreeSet::from([w]));
        assert!(adem_rewrite(&q(&[3, 1])).unwrap().is_empty());
        assert!(adem_rewrite(&q(&[1, 2])).unwrap().is_empty());
    }

    fn adem_rank(length: usize, d: u32) -> usize {
        let words = enumerate_words(2, WordShape::Free { length }, d).unwrap();
        let targets = enumerate_words(2, WordShape::block(length, 0), d).unwrap();
        let field = crate::exactlin::PrimeField::TWO;
        let columns: Vec<Vec<u32>> = words
            .iter()
            .map(|w| {
                let image = adem_rewrite(w).unwrap();
                for x in &image {
                    assert!(is_admissible(x) && is_unstable(x) && x.degree() == u64::from(d));
                }
                targets.iter().map(|t| u32::from(image.contains(t))).collect()
            })
            .collect();
        crate::exactlin::Subspace::span(field, targets.len(), &columns).dim()
    }

    #[test]
    fn adem_rank_equals_admissible_count() {
        for length in [2, 3] {
            for d in 1..=16 {
                let admissible = enumerate_count(2, length, 0, d).unwrap() as usize;
                assert_eq!(adem_rank(length, d), admissible, "length {length} d={d}");
            }
        }
    }

    proptest! {
        #[test]
        fn adem_is_idempotent_and_degree_preserving(
            idx in proptest::collection::vec(1u32..12, 1..4)
        ) {
            let w = q(&idx);
            prop_assume!(w.degree() <= 64);
            let image = adem_rewrite(&w).unwrap();
            for x in &image {
                prop_assert!(is_admissible(x) && is_unstable(x));
                prop_assert_eq!(x.degree(), w.degree());
                prop_assert_eq!(adem_rewrite(x).unwrap(), BTreeSet::from([x.clone()]));
            }
        }

        #[test]
        fn length_two_words_are_one_or_the_other(a in 1u32..40, b in 1u32..40) {
            let w = q(&[a, b]);
            prop_assert!(is_admissible(&w) != is_completely_inadmissible(&w));
        }
    }
}
