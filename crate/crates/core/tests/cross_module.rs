//! Checks that span several modules through the public API only.

use hclab_core::chevalley::{enumerate_cosets, gl_order, CosetSpace};
use hclab_core::contraction::{build_total_complex, exactness_certificate, verify_homotopy};
use hclab_core::hecke::{longest_idempotent, CosetModule, HeckeAlgebra, RegularModule, Representation};
use hclab_core::invariants::{module_model, ModuleModel};
use hclab_core::qwords::count_series_u128;
use hclab_core::{Backend, InvariantModel, PrimeField, WordShape};
use proptest::prelude::*;

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn coset_count_is_the_index_of_the_borel() {
    // |GL_n| / |B_n| with |B_n| = (p-1)^n p^(n(n-1)/2)
    for (n, p) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let borel = u128::from(p - 1).pow(n as u32) * u128::from(p).pow((n * (n - 1) / 2) as u32);
        let cosets = enumerate_cosets(n, f(p)).unwrap();
        assert_eq!(cosets.len() as u128, gl_order(n, p) / borel, "n={n} p={p}");
        assert_eq!(CosetSpace::new(n, f(p)).unwrap().len(), cosets.len());
    }
}

#[test]
fn longest_idempotent_is_a_nonzero_projection_in_faithful_modules() {
    for (n, p) in [(3, 2), (3, 3)] {
        let alg = HeckeAlgebra::new(n, f(p)).unwrap();
        let e = longest_idempotent(&alg);
        for rep in [
            Representation::new(&alg, &CosetModule::new(&alg).unwrap()).unwrap(),
            Representation::new(&alg, &RegularModule::new(&alg)).unwrap(),
        ] {
            let m = rep.image(&e);
            assert_eq!(&m * &m, m);
            assert!(!m.is_zero());
            assert_eq!(rep.span_rank(), alg.dim());
        }
    }
}

#[test]
fn certificate_dimensions_match_block_words() {
    let c = build_total_complex(3, PrimeField::TWO, Backend::Invariants, Some(18)).unwrap();
    let cert = exactness_certificate(&c);
    assert!(cert.exact && cert.all_invertible());
    for node in &cert.nodes {
        let words = count_series_u128(2, WordShape::block(node.n, node.k), 18);
        for entry in &node.degrees {
            let d = entry.d.unwrap();
            assert_eq!(entry.dim as u128, words[d as usize], "({}, {}) d={d}", node.n, node.k);
        }
    }
}

#[test]
fn certificate_json_is_reproducible() {
    let build = || {
        let c = build_total_complex(3, f(3), Backend::HeckeRegular, None).unwrap();
        exactness_certificate(&c).to_json()
    };
    let a = build();
    assert_eq!(a, build());
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["exact"], true);
    assert!(v["D"].is_null());
}

#[test]
fn node_models_on_a_shared_base_match_standalone_models() {
    let base = InvariantModel::new(2, 14).unwrap();
    for (n, k) in [(2, 0), (1, 1), (0, 2)] {
        let shared = ModuleModel::on(&base, n, k).unwrap();
        let alone = module_model(n, k, 14).unwrap();
        assert_eq!(shared.hilbert(), alone.hilbert());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homotopy_is_invertible_for_every_nonzero_scalar_pair(m in 0usize..=4, lambda in 1u32..5, mu in 1u32..5) {
        let c = build_total_complex(m, f(5), Backend::HeckeRegular, None).unwrap();
        let verdicts = verify_homotopy(&c, lambda, mu).unwrap();
        prop_assert!(verdicts.iter().all(|v| v.verdict.is_invertible()));
    }

    #[test]
    fn length_one_blocks_are_free_words(d in 1u32..40) {
        let free = count_series_u128(2, WordShape::Free { length: 1 }, d);
        let a = count_series_u128(2, WordShape::block(1, 0), d);
        let b = count_series_u128(2, WordShape::block(0, 1), d);
        prop_assert_eq!(a[d as usize], free[d as usize]);
        prop_assert_eq!(b[d as usize], free[d as usize]);
    }
}
