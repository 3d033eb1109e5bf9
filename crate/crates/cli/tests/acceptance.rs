//! Acceptance suite: one PASS/FAIL line per criterion, with pinned runtime budgets.
//!
//! Run with `cargo test -p hclab-cli --test acceptance`. All arithmetic is exact,
//! so every numeric tolerance is zero. The process fails if any criterion fails
//! other than the truncated-Hom half of criterion 9, which is a known failure
//! and is reported with its numbers.

use std::process::Command;
use std::time::{Duration, Instant};

use hclab_core::chevalley::{count_epis, count_epis_brute, transrep_injectivity, SubgroupDescriptor};
use hclab_core::contraction::{algebra_chain_check, build_total_complex, exactness_certificate};
use hclab_core::groupring::{steinberg_chain, steinberg_check, steinberg_vs_hecke};
use hclab_core::hecke::{
    absorption_solution_dim, corner_invertible, ek_recursion_check, key_identity, longest_idempotent, product,
    verify_presentation, HeckeAlgebra, RegularModule, Representation,
};
use hclab_core::invariants::{
    hecke_span_rank, invariant_basis, module_model, truncated_hom, truncated_hom_profile, ModuleModel,
};
use hclab_core::qwords::{bottom_degree, count_series_u128};
use hclab_core::{Backend, InvariantModel, PrimeField, SubgroupTag, WordShape};

/// Exact arithmetic: no tolerance anywhere.
const TOLERANCE: u64 = 0;

struct Check {
    ok: bool,
    detail: String,
    /// Failure that is analysed and accepted; does not fail the suite.
    expected_failure: bool,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Check {
            ok,
            detail: detail.into(),
            expected_failure: false,
        }
    }
}

/// Id, name, runtime budget in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Check);

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn c1_presentation() -> Check {
    let mut bad = Vec::new();
    for p in [2, 3, 5] {
        for n in 1..=5 {
            let r = verify_presentation(n, f(p)).unwrap();
            let factorial: usize = (1..=n).product();
            if !r.holds || r.dimension != factorial {
                bad.push(format!("(n={n},p={p})"));
            }
        }
    }
    Check::new(bad.is_empty(), format!("n<=5, p in {{2,3,5}}; failures {bad:?}"))
}

fn c2_longest_idempotents() -> Check {
    let mut notes = Vec::new();
    for p in [2, 3] {
        let h = HeckeAlgebra::new(4, f(p)).unwrap();
        let word = [1, 2, 3, 1, 2, 1].map(|i| h.e(i));
        if longest_idempotent(&h) != product(&h, &word) {
            notes.push(format!("e_4 word p={p}"));
        }
        for n in 1..=4 {
            let h = HeckeAlgebra::new(n, f(p)).unwrap();
            let dim = absorption_solution_dim(&h);
            if dim != 1 {
                notes.push(format!("absorption n={n} p={p}: {dim}"));
            }
        }
        for k in 1..=4 {
            for total in k + 1..=5 {
                let r = ek_recursion_check(k, total, f(p)).unwrap();
                if !(r.plain && r.hatted) {
                    notes.push(format!("recursion k={k} total={total} p={p}"));
                }
            }
        }
    }
    Check::new(notes.is_empty(), format!("e_4 = e(1)e(2)e(3)e(1)e(2)e(1); failures {notes:?}"))
}

fn c3_key_identity() -> Check {
    let mut bad = Vec::new();
    let mut corners = 0;
    for p in [2, 3] {
        let field = f(p);
        for total in 1..=5usize {
            for n in 0..=total {
                let k = total - n;
                if n >= 1 && k >= 1 && !key_identity(n, k, field).unwrap().holds() {
                    bad.push(format!("identity ({n},{k}) p={p}"));
                }
            }
            let alg = HeckeAlgebra::new(total, field).unwrap();
            let rep = Representation::new(&alg, &RegularModule::new(&alg)).unwrap();
            for n in 0..=total {
                for lambda in field.units() {
                    for mu in field.units() {
                        corners += 1;
                        if !corner_invertible(&rep, n, total - n, lambda, mu).unwrap().invertible {
                            bad.push(format!("corner ({n},{}) p={p} ({lambda},{mu})", total - n));
                        }
                    }
                }
            }
        }
    }
    Check::new(bad.is_empty(), format!("{corners} corner operators; failures {bad:?}"))
}

fn c4_chain() -> Check {
    let mut bad = Vec::new();
    for p in [2, 3] {
        for m in 0..=5 {
            let r = algebra_chain_check(m, f(p)).unwrap();
            if !(r.d_squared_zero && r.s_squared_zero) {
                bad.push(format!("m={m} p={p}"));
            }
        }
    }
    Check::new(bad.is_empty(), format!("totals <= 5; failures {bad:?}"))
}

fn c5_steinberg() -> Check {
    let mut bad = Vec::new();
    for (p, n) in [(2, 2), (2, 3), (3, 2)] {
        let r = steinberg_check(n, f(p)).unwrap();
        if !(r.idempotent && r.p_integral) {
            bad.push(format!("idempotent (p={p},n={n})"));
        }
    }
    for (p, k) in [(2, 1), (2, 2), (3, 1)] {
        if !steinberg_chain(k, f(p)).unwrap().holds() {
            bad.push(format!("chain (p={p},k={k})"));
        }
    }
    for n in 1..=3 {
        let r = steinberg_vs_hecke(n, f(2)).unwrap();
        if !(r.matches && r.section_independent) {
            bad.push(format!("vs hecke n={n}"));
        }
    }
    Check::new(bad.is_empty(), format!("failures {bad:?}"))
}

fn c6_two_models() -> Check {
    let mut bad = Vec::new();
    let mut compared = 0;
    for m in 0..=3usize {
        let base = InvariantModel::new(m, 21).unwrap();
        let words = count_series_u128(2, WordShape::Free { length: m }, 21);
        let borel = SubgroupDescriptor::new(SubgroupTag::Borel, m.max(1), f(2)).unwrap();
        let shift = 1u32 << m; // 1 + deg c_m
        for d in 1..=21u32 {
            compared += 1;
            let model = base.dim(d) as u128;
            // second route: the Borel invariants themselves, since multiplying by c_m is injective
            let ring = if m == 0 {
                u128::from(d == 1)
            } else if d >= shift {
                invariant_basis(&borel, d - shift).unwrap().dim() as u128
            } else {
                0
            };
            if model.abs_diff(words[d as usize]) as u64 > TOLERANCE || ring != model {
                bad.push(format!("m={m} d={d}: words {} model {model} ring {ring}", words[d as usize]));
            }
        }
    }
    Check::new(bad.is_empty(), format!("{compared} degrees compared; mismatches {bad:?}"))
}

fn c7_connectivity() -> Check {
    let mut bad = Vec::new();
    for (p, kmax) in [(2u32, 6usize), (3, 4)] {
        for k in 1..=kmax {
            let b = bottom_degree(p, k).unwrap();
            if !b.matches() {
                bad.push(format!("words p={p} k={k}: degree {} count {}", b.degree, b.count));
            }
        }
    }
    for k in 1..=3usize {
        let c = (1u32 << (k + 1)) - 1 - k as u32;
        let model = module_model(0, k, c + 1).unwrap();
        if model.hilbert().bottom() != Some((c, 1)) {
            bad.push(format!("model k={k}: {:?} vs ({c}, 1)", model.hilbert().bottom()));
        }
    }
    Check::new(bad.is_empty(), format!("c(k) = 2p^k - 1 - k; failures {bad:?}"))
}

fn c8_steenrod_hecke() -> Check {
    const D: u32 = 20;
    let mut bad = Vec::new();
    let mut squares = 0;
    for n in 1..=3usize {
        let model = InvariantModel::new(n, D).unwrap();
        for d in 1..=D {
            for k in 0..=(D - d) {
                let sq = model.steenrod_matrix(k, d);
                squares += 1;
                for i in 1..n {
                    let hat = &sq * model.hecke_operator(i, d) == model.hecke_operator(i, d + k) * &sq;
                    let plain = &sq * &model.e_operator(i, d) == &model.e_operator(i, d + k) * &sq;
                    if !(hat && plain) {
                        bad.push(format!("n={n} i={i} Sq^{k} at {d}"));
                    }
                }
            }
        }
    }
    Check::new(bad.is_empty(), format!("{squares} Sq^k matrices, degrees <= {D}; failures {bad:?}"))
}

fn c9_truncated_hom() -> Check {
    const D: u32 = 16;
    const SPAN_DEGREE: u32 = 12;
    let nodes = |t: usize| (0..=t).map(move |k| (t - k, k));
    let models: Vec<Vec<ModuleModel>> = (0..=3)
        .map(|t| {
            let base = InvariantModel::new(t, D).unwrap();
            nodes(t).map(|(n, k)| ModuleModel::on(&base, n, k).unwrap()).collect()
        })
        .collect();
    let mut nonzero = Vec::new();
    for t in 1..=2 {
        for s in &models[t] {
            for g in &models[t + 1] {
                let r = truncated_hom(s, g, D).unwrap();
                if r.dim > 0 {
                    let profile = truncated_hom_profile(s, g, D).unwrap();
                    let lowest = profile.iter().position(|&x| x > 0).unwrap_or(profile.len());
                    nonzero.push(format!(
                        "({},{})->({},{}): {} [nonzero from degree {lowest}]",
                        s.n(),
                        s.k(),
                        g.n(),
                        g.k(),
                        r.dim
                    ));
                }
            }
        }
    }
    let mut spans = Vec::new();
    for m in 1..=3usize {
        let base = InvariantModel::new(m, SPAN_DEGREE).unwrap();
        let rank = hecke_span_rank(&base, SPAN_DEGREE).unwrap();
        spans.push((m, rank, (1..=m).product::<usize>()));
    }
    let span_ok = spans.iter().all(|&(_, r, f)| r == f);
    let hom_ok = nonzero.is_empty();
    Check {
        ok: hom_ok && span_ok,
        detail: format!(
            "Hecke span (m, rank, m!) {spans:?}; truncated Hom at D={D} nonzero {nonzero:?}"
        ),
        expected_failure: !hom_ok && span_ok,
    }
}

fn c10_certificates() -> Check {
    let mut bad = Vec::new();
    let mut certs = 0;
    let runs: Vec<(usize, u32, Backend, Option<u32>)> = (0..=4)
        .flat_map(|m| [(m, 2, Backend::HeckeRegular, None), (m, 3, Backend::HeckeRegular, None)])
        .chain((0..=3).map(|m| (m, 2, Backend::Invariants, Some(24))))
        .collect();
    for (m, p, backend, d) in runs {
        let c = build_total_complex(m, f(p), backend, d).unwrap();
        let cert = exactness_certificate(&c);
        certs += 1;
        if !(cert.exact && cert.d_squared_zero && cert.s_squared_zero && cert.all_invertible()) {
            bad.push(format!("m={m} p={p} {backend}"));
        }
    }
    Check::new(bad.is_empty(), format!("{certs} certificates; failures {bad:?}"))
}

fn c11_counting() -> Check {
    let mut bad = Vec::new();
    for p in [2, 3] {
        for m in 0..=3 {
            for n in 0..=3 {
                if count_epis(m, n, p) != count_epis_brute(m, n, f(p)).unwrap() {
                    bad.push(format!("epi m={m} n={n} p={p}"));
                }
            }
        }
    }
    for n in 1..=2 {
        for m in 1..=2 {
            let r = transrep_injectivity(2, n, m).unwrap();
            if !(r.well_defined && r.injective) {
                bad.push(format!("transrep n={n} m={m}"));
            }
        }
    }
    Check::new(bad.is_empty(), format!("failures {bad:?}"))
}

fn c12_determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_hclab");
    let requests: [&[&str]; 8] = [
        &["hecke", "verify", "--p", "3", "--n", "4"],
        &["hecke", "ds", "--p", "2", "--n", "2", "--k", "2"],
        &["steinberg", "check", "--p", "2", "--n", "3"],
        &["invariants", "hilbert", "--n", "1", "--k", "2", "--max-degree", "18"],
        &["invariants", "hom", "--source", "1,0", "--target", "1,1", "--max-degree", "12"],
        &["words", "count", "--p", "3", "--n", "2", "--k", "1", "--max-degree", "60"],
        &["contraction", "certify", "--p", "2", "--m", "3", "--max-degree", "16", "--backend", "invariants"],
        &["chevalley", "transrep", "--p", "2", "--n", "2", "--m", "2"],
    ];
    let mut bad = Vec::new();
    for args in requests {
        let outputs: Vec<Vec<u8>> = ["1", "4"]
            .iter()
            .map(|jobs| {
                Command::new(bin)
                    .args(args)
                    .args(["--jobs", jobs, "--cache", "off"])
                    .env_remove("HCLAB_CACHE_DIR")
                    .output()
                    .unwrap()
                    .stdout
            })
            .collect();
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            bad.push(args.join(" "));
        }
    }
    Check::new(bad.is_empty(), format!("{} reports at --jobs 1 and 4; differing {bad:?}", requests.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "Hecke presentation", 30, c1_presentation),
        (2, "longest-word idempotents", 10, c2_longest_idempotents),
        (3, "key identity and corner invertibility", 60, c3_key_identity),
        (4, "d^2 = 0 and s^2 = 0 in H_m", 10, c4_chain),
        (5, "Steinberg idempotents", 60, c5_steinberg),
        (6, "two-model Hilbert agreement", 120, c6_two_models),
        (7, "connectivity bottom classes", 30, c7_connectivity),
        (8, "Steenrod-Hecke commutation", 120, c8_steenrod_hecke),
        (9, "truncated Hom and Hecke-to-End", 300, c9_truncated_hom),
        (10, "contraction certificates", 300, c10_certificates),
        (11, "epimorphism and transitive-representation counts", 30, c11_counting),
        (12, "determinism across --jobs", 300, c12_determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget_secs, run) in criteria {
        let start = Instant::now();
        let check = run();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= Duration::from_secs(budget_secs);
        let pass = check.ok && in_budget;
        let tag = match (pass, check.expected_failure && in_budget) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!(
            "[{tag}] {id:>2} {name}: {} ({:.2}s / {budget_secs}s)",
            check.detail,
            elapsed.as_secs_f64()
        );
        if !pass && !(check.expected_failure && in_budget) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
