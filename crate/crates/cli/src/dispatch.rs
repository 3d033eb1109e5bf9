//! One module operation per command.

use hclab_core::chevalley::{count_epis, count_epis_brute, transrep_injectivity, SubgroupDescriptor};
use hclab_core::contraction::{algebra_chain_check, build_total_complex, exactness_certificate, verify_homotopy};
use hclab_core::groupring::{steinberg_chain, steinberg_check, steinberg_vs_hecke};
use hclab_core::hecke::{
    corner_invertible, ds_elements, key_identity, verify_presentation, HeckeAlgebra, HeckeElement,
    RegularModule, Representation,
};
use hclab_core::invariants::{invariant_basis, module_model, truncated_hom, truncated_hom_profile};
use hclab_core::qwords::{adem_rewrite, bottom_degree, count_series, is_admissible, is_unstable};
use hclab_core::{HilbertSeries, PrimeField, QWord, WordShape};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::WorkbenchError;
use crate::request::{Command, Shape};

/// A computed report and whether everything it checks holds.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub payload: Value,
    pub verified: bool,
}

impl Outcome {
    fn info(payload: Value) -> Self {
        Outcome { payload, verified: true }
    }
}

/// `{"computation": name, ..fields of report}`.
fn tagged<T: Serialize>(name: &str, report: &T) -> Value {
    let mut map = Map::new();
    map.insert("computation".into(), json!(name));
    match serde_json::to_value(report).expect("reports serialize") {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("value".into(), other);
        }
    }
    Value::Object(map)
}

fn hilbert(name: &str, p: u32, n: usize, k: Option<usize>, series: &HilbertSeries) -> Value {
    let entries: Vec<(u32, usize)> = series.entries().collect();
    json!({
        "computation": name,
        "p": p,
        "n": n,
        "k": k,
        "max_degree": series.bound,
        "series": entries,
    })
}

/// Terms of a Hecke element as `[reduced word, coefficient]`, by basis index.
fn terms(x: &HeckeElement) -> Value {
    let tables = x.algebra().tables();
    Value::Array(
        x.support()
            .map(|(w, c)| json!([tables.perm(w).reduced_word(), c]))
            .collect(),
    )
}

fn field(p: u32) -> Result<PrimeField, WorkbenchError> {
    Ok(PrimeField::new(p)?)
}

/// Runs a validated command.
pub fn compute(command: &Command) -> Result<Outcome, WorkbenchError> {
    command.validate()?;
    let name = command.name();
    Ok(match command {
        &Command::HeckeVerify { p, n } => {
            let r = verify_presentation(n, field(p)?)?;
            Outcome {
                verified: r.holds,
                payload: tagged(name, &r),
            }
        }
        &Command::HeckeIdentity { p, n, k, lambda, mu } => {
            let f = field(p)?;
            let r = key_identity(n, k, f)?;
            let alg = HeckeAlgebra::new(n + k, f)?;
            let rep = Representation::new(&alg, &RegularModule::new(&alg))?;
            let corner = corner_invertible(&rep, n, k, lambda, mu)?;
            let mut payload = tagged(name, &r);
            payload["holds"] = json!(r.holds());
            payload["lambda"] = json!(lambda);
            payload["mu"] = json!(mu);
            payload["corner"] = serde_json::to_value(&corner).expect("reports serialize");
            Outcome {
                verified: r.holds() && corner.invertible,
                payload,
            }
        }
        &Command::HeckeDs { p, n, k } => {
            let f = field(p)?;
            let alg = HeckeAlgebra::new(n + k, f)?;
            let pair = ds_elements(&alg, n, k);
            let chain = algebra_chain_check(n + k, f)?;
            let payload = json!({
                "computation": name,
                "p": p,
                "n": n,
                "k": k,
                "d": terms(&pair.d),
                "s": terms(&pair.s),
                "d_squared_zero": chain.d_squared_zero,
                "s_squared_zero": chain.s_squared_zero,
            });
            Outcome {
                verified: chain.d_squared_zero && chain.s_squared_zero,
                payload,
            }
        }
        &Command::SteinbergCheck { p, n } => {
            let f = field(p)?;
            let r = steinberg_check(n, f)?;
            let h = steinberg_vs_hecke(n, f)?;
            let mut payload = tagged(name, &r);
            payload["cosets"] = json!(h.cosets);
            payload["matches_hecke"] = json!(h.matches);
            payload["section_independent"] = json!(h.section_independent);
            Outcome {
                verified: r.idempotent && r.p_integral && h.matches && h.section_independent,
                payload,
            }
        }
        &Command::SteinbergChain { p, k } => {
            let r = steinberg_chain(k, field(p)?)?;
            let mut payload = tagged(name, &r);
            payload["holds"] = json!(r.holds());
            Outcome {
                verified: r.holds(),
                payload,
            }
        }
        &Command::InvariantsHilbert { n, k, max_degree, subgroup } => match subgroup {
            None => {
                let model = module_model(n, k, max_degree)?;
                Outcome::info(hilbert(name, 2, n, Some(k), &model.hilbert()))
            }
            Some(tag) => {
                let desc = SubgroupDescriptor::new(tag, n, PrimeField::TWO)?;
                let dims = (0..=max_degree)
                    .into_par_iter()
                    .map(|d| invariant_basis(&desc, d).map(|s| s.dim()))
                    .collect::<Result<Vec<_>, _>>()?;
                let series = HilbertSeries::from_fn(max_degree, |d| dims[d as usize]);
                Outcome::info(hilbert(&format!("{name}.{tag}"), 2, n, None, &series))
            }
        },
        &Command::InvariantsHom { source, target, max_degree } => {
            let s = module_model(source.0, source.1, max_degree)?;
            let t = module_model(target.0, target.1, max_degree)?;
            let r = truncated_hom(&s, &t, max_degree)?;
            let profile = truncated_hom_profile(&s, &t, max_degree)?;
            let payload = json!({
                "computation": name,
                "p": 2,
                "source": [source.0, source.1],
                "target": [target.0, target.1],
                "max_degree": r.max_degree,
                "unknowns": r.unknowns,
                "rank": r.rank,
                "dim": r.dim,
                "profile": profile,
            });
            Outcome::info(payload)
        }
        &Command::WordsCount { p, shape, max_degree } => {
            let (word_shape, n, k) = match shape {
                Shape::Block { n, k } => (WordShape::block(n, k), n, Some(k)),
                Shape::Free { m } => (WordShape::Free { length: m }, m, None),
            };
            let series = count_series(p, word_shape, max_degree);
            Outcome::info(hilbert(name, p, n, k, &series))
        }
        &Command::WordsBottom { p, k } => {
            let r = bottom_degree(p, k)?;
            let mut payload = tagged(name, &r);
            payload["matches"] = json!(r.matches());
            Outcome {
                verified: r.matches(),
                payload,
            }
        }
        Command::WordsAdem { word } => {
            let w = QWord::from_indices(word)?;
            let out = adem_rewrite(&w)?;
            let rewritten: Vec<Vec<u32>> = out.iter().map(QWord::indices).collect();
            let payload = json!({
                "computation": name,
                "p": 2,
                "word": word,
                "degree": w.degree(),
                "unstable": is_unstable(&w),
                "admissible": is_admissible(&w),
                "terms": rewritten,
            });
            Outcome {
                verified: out.iter().all(|t| is_admissible(t) && is_unstable(t)),
                payload,
            }
        }
        &Command::ContractionCertify { p, m, backend, max_degree, scalars } => {
            let complex = build_total_complex(m, field(p)?, backend, max_degree)?;
            let cert = exactness_certificate(&complex);
            let mut verified = cert.exact && cert.d_squared_zero && cert.s_squared_zero && cert.all_invertible();
            let mut payload = tagged(name, &cert);
            if let Some((lambda, mu)) = scalars {
                let verdicts = verify_homotopy(&complex, lambda, mu)?;
                let ok = verdicts.iter().all(|v| v.verdict.is_invertible());
                verified &= ok;
                payload["selected"] = json!({ "lambda": lambda, "mu": mu, "all_invertible": ok });
            }
            payload["all_invertible"] = json!(cert.all_invertible());
            Outcome { verified, payload }
        }
        &Command::ChevalleyEpi { p, m, n } => {
            let formula = count_epis(m, n, p);
            let brute = count_epis_brute(m, n, field(p)?)?;
            let payload = json!({
                "computation": name,
                "p": p,
                "m": m,
                "n": n,
                "formula": u64::try_from(formula).expect("guarded count"),
                "brute_force": u64::try_from(brute).expect("guarded count"),
                "agree": formula == brute,
            });
            Outcome {
                verified: formula == brute,
                payload,
            }
        }
        &Command::ChevalleyTransrep { p, n, m } => {
            let r = transrep_injectivity(p, n, m)?;
            Outcome {
                verified: r.well_defined && r.injective,
                payload: tagged(name, &r),
            }
        }
    })
}
