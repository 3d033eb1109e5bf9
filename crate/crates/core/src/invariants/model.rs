//! Summand models `ê_n e_k · c_m F_2[x_1..x_m]^{B_m}` and truncated Hom spaces.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{check_guard, Error, Result};
use crate::exactlin::{BitMatrix, FpMatrix, HilbertSeries, PrimeField, Subspace};
use crate::hecke::{HeckeAlgebra, HeckeElement, NodeIdempotents, Representation};

use super::InvariantModel;

pub const MAX_MODEL_TOTAL: usize = 4;
pub const MAX_MODEL_DEGREE: u32 = 30;
pub const HOM_UNKNOWN_LIMIT: u128 = 200_000;

/// The image of `ê_n e_k` on the total-`n + k` invariant model, degree by degree.
#[derive(Clone, Debug)]
pub struct ModuleModel {
    n: usize,
    k: usize,
    base: Arc<InvariantModel>,
    alg: Arc<HeckeAlgebra>,
    reps: Vec<Representation>,
    images: Vec<Subspace>,
}

pub fn module_model(n: usize, k: usize, max_degree: u32) -> Result<ModuleModel> {
    check_guard("model total length", (n + k) as u128, MAX_MODEL_TOTAL as u128)?;
    check_guard("model degree", u128::from(max_degree), u128::from(MAX_MODEL_DEGREE))?;
    let base = InvariantModel::new(n + k, max_degree)?;
    ModuleModel::on(&base, n, k)
}

impl ModuleModel {
    /// The summand at `(n, k)` of an already built model of total `n + k`.
    pub fn on(base: &Arc<InvariantModel>, n: usize, k: usize) -> Result<Self> {
        if base.m() != n + k {
            return Err(Error::mismatch(format!(
                "node ({n}, {k}) does not live on the total-{} model",
                base.m()
            )));
        }
        let alg = HeckeAlgebra::new(n + k, PrimeField::TWO)?;
        let corner = NodeIdempotents::new(&alg, n, k).corner();
        let reps = (1..=base.max_degree())
            .map(|d| Representation::new(&alg, &base.degree_module(d)))
            .collect::<Result<Vec<_>>>()?;
        let images = reps
            .iter()
            .map(|rep| Subspace::column_space(&rep.image(&corner)))
            .collect();
        Ok(ModuleModel {
            n,
            k,
            base: Arc::clone(base),
            alg,
            reps,
            images,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_degree(&self) -> u32 {
        self.base.max_degree()
    }

    pub fn base(&self) -> &Arc<InvariantModel> {
        &self.base
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    /// The action of H_m on the whole invariant slice at degree d.
    pub fn representation(&self, d: u32) -> &Representation {
        &self.reps[(d - 1) as usize]
    }

    /// The summand at degree d, inside the invariant slice coordinates.
    pub fn image(&self, d: u32) -> &Subspace {
        &self.images[(d - 1) as usize]
    }

    pub fn dim(&self, d: u32) -> usize {
        if d == 0 || d > self.max_degree() {
            0
        } else {
            self.image(d).dim()
        }
    }

    pub fn hilbert(&self) -> HilbertSeries {
        HilbertSeries::from_fn(self.max_degree(), |d| self.dim(d))
    }

    /// Rank of an element of H_m on the invariant slice at degree d.
    pub fn rank_of(&self, x: &HeckeElement, d: u32) -> usize {
        self.representation(d).image(x).rank()
    }

    /// `Sq^k` restricted to the summand, degree d to `d + k`. Fails if the
    /// square does not preserve the summand.
    pub fn steenrod(&self, k: u32, d: u32) -> Result<FpMatrix> {
        let sq = self.base.steenrod_matrix(k, d);
        self.image(d).restrict(&sq, self.image(d + k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub max_degree: u32,
    pub unknowns: usize,
    pub rank: usize,
    pub dim: usize,
}

/// The linear system of a truncated Hom: unknown offsets per degree and one
/// row per scalar constraint.
struct HomSystem {
    offset: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

impl HomSystem {
    fn unknowns(&self) -> usize {
        *self.offset.last().expect("offsets are nonempty")
    }

    fn bits(&self) -> BitMatrix {
        let mut system = BitMatrix::zeros(self.rows.len(), self.unknowns());
        for (i, row) in self.rows.iter().enumerate() {
            for &v in row {
                system.set(i, v, !system.get(i, v));
            }
        }
        system
    }
}

fn hom_system(source: &ModuleModel, target: &ModuleModel, max_degree: u32) -> Result<HomSystem> {
    if source.max_degree() < max_degree || target.max_degree() < max_degree {
        return Err(Error::mismatch(format!(
            "models built to degrees {} and {} cannot be truncated at {max_degree}",
            source.max_degree(),
            target.max_degree()
        )));
    }
    let s = |d: u32| source.dim(d);
    let t = |d: u32| target.dim(d);
    let mut offset = vec![0usize; max_degree as usize + 2];
    for d in 1..=max_degree {
        offset[d as usize + 1] = offset[d as usize] + s(d) * t(d);
    }
    check_guard(
        "truncated Hom unknowns",
        offset[max_degree as usize + 1] as u128,
        HOM_UNKNOWN_LIMIT,
    )?;
    // φ_d[r][c] is unknown offset[d] + r * t(d) + c
    let var = |d: u32, r: usize, c: usize| offset[d as usize] + r * t(d) + c;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for d in 1..=max_degree {
        for k in 1..=(max_degree - d) {
            let (td, tk, sd, sk) = (t(d), t(d + k), s(d), s(d + k));
            if td == 0 || sk == 0 {
                continue;
            }
            let sq_t = target.steenrod(k, d)?;
            let sq_s = source.steenrod(k, d)?;
            for r in 0..sk {
                for c in 0..td {
                    let mut row = Vec::new();
                    for j in 0..tk {
                        if sq_t.get(j, c) == 1 {
                            row.push(var(d + k, r, j));
                        }
                    }
                    for j in 0..sd {
                        if sq_s.get(r, j) == 1 {
                            row.push(var(d, j, c));
                        }
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    Ok(HomSystem { offset, rows })
}

/// Dimension of the degree-preserving families `φ_d`, `d <= D`, commuting with
/// every `Sq^k` whose source and target degrees are both at most D.
///
/// The models hold cohomology, so a map from `source` to `target` is recorded
/// by its dual `φ_d : target_d -> source_d`, with `φ_{d+k} Sq^k = Sq^k φ_d`.
pub fn truncated_hom(source: &ModuleModel, target: &ModuleModel, max_degree: u32) -> Result<HomReport> {
    let system = hom_system(source, target, max_degree)?;
    let unknowns = system.unknowns();
    let rank = system.bits().rank();
    Ok(HomReport {
        max_degree,
        unknowns,
        rank,
        dim: unknowns - rank,
    })
}

/// For each `w <= D`, the dimension of the truncated Hom space after
/// forgetting every component above degree w.
///
/// Components near the truncation degree are only weakly constrained; the
/// low-degree restrictions shrink as D grows.
pub fn truncated_hom_profile(source: &ModuleModel, target: &ModuleModel, max_degree: u32) -> Result<Vec<usize>> {
    let system = hom_system(source, target, max_degree)?;
    let (_, kernel) = system.bits().to_fp().rank_and_kernel();
    Ok((1..=max_degree)
        .map(|w| {
            let keep: Vec<usize> = (0..system.offset[w as usize + 1]).collect();
            kernel.select_rows(&keep).rank()
        })
        .collect())
}

/// Rank of the span of the `m!` operators `T_w`, each taken on all degrees
/// `<= max_degree` at once.
pub fn hecke_span_rank(base: &Arc<InvariantModel>, max_degree: u32) -> Result<usize> {
    let alg = HeckeAlgebra::new(base.m(), PrimeField::TWO)?;
    let reps = (1..=max_degree.min(base.max_degree()))
        .map(|d| Representation::new(&alg, &base.degree_module(d)))
        .collect::<Result<Vec<_>>>()?;
    let vectors: Vec<Vec<u32>> = (0..alg.dim())
        .map(|w| reps.iter().flat_map(|rep| rep.t(w).data().to_vec()).collect())
        .collect();
    let len = vectors.first().map_or(0, Vec::len);
    Ok(Subspace::span(PrimeField::TWO, len, &vectors).dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::corner_summands;
    use crate::qwords::{count_series_u128, WordShape};

    #[test]
    fn model_examples() {
        let l1 = module_model(0, 1, 16).unwrap();
        assert_eq!(l1.dim(1), 0);
        for d in 2..=16 {
            assert_eq!(l1.dim(d), 1);
        }
        let l2 = module_model(0, 2, 16).unwrap();
        assert_eq!(l2.hilbert().bottom(), Some((5, 1)));
        let r2 = module_model(2, 0, 16).unwrap();
        assert_eq!(r2.dim(5), 0);
        let l0 = module_model(0, 0, 8).unwrap();
        assert_eq!(l0.hilbert().entries().collect::<Vec<_>>(), vec![(1, 1)]);
    }

    #[test]
    fn bottom_classes() {
        for k in 0..=3usize {
            let model = module_model(0, k, 13).unwrap();
            let expected = 2 * (1u32 << k) - 1 - k as u32;
            assert_eq!(model.hilbert().bottom(), Some((expected, 1)), "k={k}");
        }
    }

    #[test]
    fn free_words_match_invariant_dimensions() {
        for m in 0..=3 {
            let base = InvariantModel::new(m, 21).unwrap();
            let words = count_series_u128(2, WordShape::Free { length: m }, 21);
            for d in 1..=21u32 {
                assert_eq!(base.dim(d) as u128, words[d as usize], "m={m} d={d}");
            }
        }
    }

    #[test]
    fn summands_match_block_words() {
        for m in 1..=3usize {
            let base = InvariantModel::new(m, 20).unwrap();
            for k in 0..=m {
                let model = ModuleModel::on(&base, m - k, k).unwrap();
                let words = count_series_u128(2, WordShape::block(m - k, k), 20);
                for d in 1..=20u32 {
                    assert_eq!(model.dim(d) as u128, words[d as usize], "({}, {k}) d={d}", m - k);
                }
            }
        }
    }

    #[test]
    fn corner_rank_splits() {
        for (n, k) in [(1, 1), (1, 2), (2, 1)] {
            let base = InvariantModel::new(n + k, 16).unwrap();
            let model = ModuleModel::on(&base, n, k).unwrap();
            let (a, b) = corner_summands(model.algebra(), n, k).unwrap();
            for d in 1..=16 {
                assert_eq!(
                    model.rank_of(&a, d) + model.rank_of(&b, d),
                    model.dim(d),
                    "({n},{k}) d={d}"
                );
            }
        }
    }

    #[test]
    fn squares_preserve_summands() {
        let base = InvariantModel::new(3, 14).unwrap();
        for k in 0..=3 {
            let model = ModuleModel::on(&base, 3 - k, k).unwrap();
            for d in 1..=14 {
                for j in 0..=(14 - d) {
                    model.steenrod(j, d).unwrap();
                }
            }
        }
    }

    #[test]
    fn hom_of_trivial_module() {
        let l0 = module_model(0, 0, 10).unwrap();
        assert_eq!(truncated_hom(&l0, &l0, 10).unwrap().dim, 1);
    }

    #[test]
    fn low_degree_hom_vanishes_from_shorter_to_longer() {
        let d = 18;
        let bases: Vec<_> = (1..=3).map(|m| InvariantModel::new(m, d).unwrap()).collect();
        for (src, tgt) in [((1, 0), (2, 0)), ((0, 1), (1, 1)), ((2, 0), (3, 0)), ((1, 1), (2, 1)), ((0, 2), (0, 3))] {
            let s = ModuleModel::on(&bases[src.0 + src.1 - 1], src.0, src.1).unwrap();
            let t = ModuleModel::on(&bases[tgt.0 + tgt.1 - 1], tgt.0, tgt.1).unwrap();
            let profile = truncated_hom_profile(&s, &t, d).unwrap();
            assert!(profile[..(d as usize / 2)].iter().all(|&x| x == 0), "{src:?} -> {tgt:?}: {profile:?}");
        }
        let l1 = ModuleModel::on(&bases[0], 0, 1).unwrap();
        assert_eq!(truncated_hom_profile(&l1, &l1, d).unwrap()[8], 1);
    }

    #[test]
    fn hecke_operators_are_independent() {
        for m in 1..=3 {
            let base = InvariantModel::new(m, 12).unwrap();
            let factorial: usize = (1..=m).product();
            assert_eq!(hecke_span_rank(&base, 12).unwrap(), factorial);
        }
    }
}
