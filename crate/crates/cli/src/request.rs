//! Requests, their canonical form, and validation.

use hclab_core::chevalley::{gl_order, SubgroupDescriptor, EPI_BRUTE_LIMIT};
use hclab_core::contraction::{MAX_DEGREE, MAX_INVARIANT_TOTAL, MAX_REGULAR_TOTAL};
use hclab_core::invariants::{MAX_MODEL_DEGREE, MAX_MODEL_TOTAL, MAX_VARS};
use hclab_core::qwords::MAX_ADEM_LENGTH;
use hclab_core::{Backend, PrimeField, SubgroupTag};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::WorkbenchError;

/// Largest rank accepted by `hecke verify`.
pub const PRESENTATION_RANK_LIMIT: usize = 6;
/// Largest `n + k` accepted by `hecke identity` (regular representation).
pub const IDENTITY_TOTAL_LIMIT: usize = MAX_REGULAR_TOTAL;
/// Largest `n + k` accepted by `hecke ds`.
pub const DS_TOTAL_LIMIT: usize = 6;
/// Largest |GL_n(F_p)| for Steinberg group-ring products.
pub const STEINBERG_ORDER_LIMIT: u128 = 12_000;
/// Largest degree of a word-count series.
pub const WORD_SERIES_LIMIT: u32 = 512;
/// Largest word length for `words count`.
pub const WORD_LENGTH_LIMIT: usize = 12;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CachePolicy {
    Use,
    Refresh,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum Shape {
    Block { n: usize, k: usize },
    Free { m: usize },
}

/// One module operation with its parameters. Serialization of this value is
/// the canonical form of a request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    HeckeVerify { p: u32, n: usize },
    HeckeIdentity { p: u32, n: usize, k: usize, lambda: u32, mu: u32 },
    HeckeDs { p: u32, n: usize, k: usize },
    SteinbergCheck { p: u32, n: usize },
    SteinbergChain { p: u32, k: usize },
    InvariantsHilbert { n: usize, k: usize, max_degree: u32, subgroup: Option<SubgroupTag> },
    InvariantsHom { source: (usize, usize), target: (usize, usize), max_degree: u32 },
    WordsCount { p: u32, shape: Shape, max_degree: u32 },
    WordsBottom { p: u32, k: usize },
    WordsAdem { word: Vec<u32> },
    ContractionCertify {
        p: u32,
        m: usize,
        backend: Backend,
        max_degree: Option<u32>,
        scalars: Option<(u32, u32)>,
    },
    ChevalleyEpi { p: u32, m: usize, n: usize },
    ChevalleyTransrep { p: u32, n: usize, m: usize },
}

impl Command {
    /// Dotted name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Command::HeckeVerify { .. } => "hecke.verify",
            Command::HeckeIdentity { .. } => "hecke.identity",
            Command::HeckeDs { .. } => "hecke.ds",
            Command::SteinbergCheck { .. } => "steinberg.check",
            Command::SteinbergChain { .. } => "steinberg.chain",
            Command::InvariantsHilbert { subgroup: None, .. } => "invariants.hilbert",
            Command::InvariantsHilbert { subgroup: Some(_), .. } => "invariants.ring",
            Command::InvariantsHom { .. } => "invariants.hom",
            Command::WordsCount { shape: Shape::Block { .. }, .. } => "words.count",
            Command::WordsCount { shape: Shape::Free { .. }, .. } => "words.count.free",
            Command::WordsBottom { .. } => "words.bottom",
            Command::WordsAdem { .. } => "words.adem",
            Command::ContractionCertify { .. } => "contraction.certify",
            Command::ChevalleyEpi { .. } => "chevalley.epi",
            Command::ChevalleyTransrep { .. } => "chevalley.transrep",
        }
    }

    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("commands serialize")
    }

    /// Checks primes, ranges and size guards. Nothing is computed.
    pub fn validate(&self) -> Result<(), WorkbenchError> {
        match *self {
            Command::HeckeVerify { p, n } => {
                prime(p)?;
                at_least("n", n, 1)?;
                guard("presentation rank", n as u128, PRESENTATION_RANK_LIMIT as u128)
            }
            Command::HeckeIdentity { p, n, k, lambda, mu } => {
                let field = prime(p)?;
                at_least("n", n, 1)?;
                at_least("k", k, 1)?;
                unit(field, "lambda", lambda)?;
                unit(field, "mu", mu)?;
                guard("identity total n+k", (n + k) as u128, IDENTITY_TOTAL_LIMIT as u128)
            }
            Command::HeckeDs { p, n, k } => {
                prime(p)?;
                guard("ds total n+k", (n + k) as u128, DS_TOTAL_LIMIT as u128)
            }
            Command::SteinbergCheck { p, n } => {
                prime(p)?;
                at_least("n", n, 1)?;
                guard("|GL_n(F_p)|", gl_order(n, p), STEINBERG_ORDER_LIMIT)
            }
            Command::SteinbergChain { p, k } => {
                prime(p)?;
                at_least("k", k, 1)?;
                guard("|GL_(k+1)(F_p)|", gl_order(k + 1, p), STEINBERG_ORDER_LIMIT)
            }
            Command::InvariantsHilbert { n, k, max_degree, subgroup } => {
                guard("model degree", max_degree as u128, MAX_MODEL_DEGREE as u128)?;
                match subgroup {
                    Some(tag) => {
                        at_least("n", n, 1)?;
                        guard("polynomial variables", n as u128, MAX_VARS as u128)?;
                        SubgroupDescriptor::new(tag, n, PrimeField::TWO)?;
                        Ok(())
                    }
                    None => guard("model total n+k", (n + k) as u128, MAX_MODEL_TOTAL as u128),
                }
            }
            Command::InvariantsHom { source, target, max_degree } => {
                guard("model degree", max_degree as u128, MAX_MODEL_DEGREE as u128)?;
                for (n, k) in [source, target] {
                    guard("model total n+k", (n + k) as u128, MAX_MODEL_TOTAL as u128)?;
                }
                Ok(())
            }
            Command::WordsCount { p, shape, max_degree } => {
                prime(p)?;
                let length = match shape {
                    Shape::Block { n, k } => n + k,
                    Shape::Free { m } => m,
                };
                guard("word length", length as u128, WORD_LENGTH_LIMIT as u128)?;
                guard("word degree", max_degree as u128, WORD_SERIES_LIMIT as u128)
            }
            Command::WordsBottom { p, k } => {
                prime(p)?;
                at_least("k", k, 1)
            }
            Command::WordsAdem { ref word } => {
                if word.is_empty() {
                    return Err(WorkbenchError::Usage("--word needs at least one index".into()));
                }
                guard("word length", word.len() as u128, MAX_ADEM_LENGTH as u128)
            }
            Command::ContractionCertify { p, m, backend, max_degree, scalars } => {
                let field = prime(p)?;
                if let Some((lambda, mu)) = scalars {
                    unit(field, "lambda", lambda)?;
                    unit(field, "mu", mu)?;
                }
                match backend {
                    Backend::HeckeRegular => {
                        if max_degree.is_some() {
                            return Err(WorkbenchError::Usage(
                                "--max-degree applies only to the invariants backend".into(),
                            ));
                        }
                        guard("regular total m", m as u128, MAX_REGULAR_TOTAL as u128)
                    }
                    Backend::Invariants => {
                        if p != 2 {
                            return Err(WorkbenchError::Usage("the invariants backend needs --p 2".into()));
                        }
                        let d = max_degree.ok_or_else(|| {
                            WorkbenchError::Usage("the invariants backend needs --max-degree".into())
                        })?;
                        guard("invariant total m", m as u128, MAX_INVARIANT_TOTAL as u128)?;
                        guard("model degree", d as u128, MAX_DEGREE as u128)
                    }
                }
            }
            Command::ChevalleyEpi { p, m, n } => {
                prime(p)?;
                let estimate = (p as u128).saturating_pow((m * n) as u32);
                guard("epimorphism enumeration p^(mn)", estimate, EPI_BRUTE_LIMIT)
            }
            Command::ChevalleyTransrep { p, n, m } => {
                prime(p)?;
                at_least("n", n, 1)?;
                at_least("m", m, 1)
            }
        }
    }
}

fn prime(p: u32) -> Result<PrimeField, WorkbenchError> {
    Ok(PrimeField::new(p)?)
}

fn unit(field: PrimeField, name: &str, x: u32) -> Result<(), WorkbenchError> {
    if field.reduce(i64::from(x)) == 0 {
        return Err(WorkbenchError::Usage(format!("--{name} must be nonzero mod {}", field.p())));
    }
    Ok(())
}

fn at_least(name: &str, x: usize, min: usize) -> Result<(), WorkbenchError> {
    if x < min {
        return Err(WorkbenchError::Usage(format!("--{name} must be at least {min}, got {x}")));
    }
    Ok(())
}

fn guard(what: &str, estimate: u128, limit: u128) -> Result<(), WorkbenchError> {
    if estimate > limit {
        return Err(WorkbenchError::Guard {
            what: what.to_string(),
            estimate,
            limit,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputationRequest {
    pub command: Command,
    pub format: Format,
    pub cache: CachePolicy,
}

impl ComputationRequest {
    pub fn new(command: Command) -> Self {
        ComputationRequest {
            command,
            format: Format::Json,
            cache: CachePolicy::Use,
        }
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    pub fn with_cache(mut self, cache: CachePolicy) -> Self {
        self.cache = cache;
        self
    }

    /// Hex SHA-256 of the artifact version and the canonical command. The
    /// output format is not part of the key: entries hold the format-free payload.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(ARTIFACT_VERSION.as_bytes());
        h.update(b"\n");
        h.update(self.command.canonical().as_bytes());
        hex::encode(h.finalize())
    }
}

/// Text for `--help` listing every size guard.
pub fn guards_help() -> String {
    use hclab_core::chevalley::{COSET_LIMIT, GROUP_ORDER_LIMIT, WREATH_LIMIT};
    use hclab_core::hecke::MAX_RANK;
    use hclab_core::invariants::{HOM_UNKNOWN_LIMIT, SLICE_LIMIT};
    use hclab_core::qwords::MAX_COUNT_DEGREE;
    let lines = [
        format!("Hecke algebra rank                    <= {MAX_RANK}"),
        format!("hecke verify rank                     <= {PRESENTATION_RANK_LIMIT}"),
        format!("hecke identity n+k (regular module)   <= {IDENTITY_TOTAL_LIMIT}"),
        format!("hecke ds n+k                          <= {DS_TOTAL_LIMIT}"),
        format!("enumerated group order                <= {GROUP_ORDER_LIMIT}"),
        format!("Borel coset count                     <= {COSET_LIMIT}"),
        format!("steinberg |GL_n(F_p)|                 <= {STEINBERG_ORDER_LIMIT}"),
        format!("polynomial variables                  <= {MAX_VARS}"),
        format!("monomials per slice                   <= {SLICE_LIMIT}"),
        format!("invariant model n+k                   <= {MAX_MODEL_TOTAL}"),
        format!("invariant model degree                <= {MAX_MODEL_DEGREE}"),
        format!("truncated Hom unknowns                <= {HOM_UNKNOWN_LIMIT}"),
        format!("words count length                    <= {WORD_LENGTH_LIMIT}"),
        format!("words count degree                    <= {WORD_SERIES_LIMIT}"),
        format!("word enumeration degree               <= {MAX_COUNT_DEGREE}"),
        "words bottom k                        <= 8 (p=2), 5 (p=3), 3 (p>=5)".to_string(),
        format!("words adem length                     <= {MAX_ADEM_LENGTH}"),
        format!("contraction m, hecke-regular          <= {MAX_REGULAR_TOTAL}"),
        format!("contraction m, invariants             <= {MAX_INVARIANT_TOTAL}"),
        format!("contraction max degree                <= {MAX_DEGREE}"),
        format!("chevalley epi p^(mn)                  <= {EPI_BRUTE_LIMIT}"),
        format!("chevalley transrep wreath order       <= {WREATH_LIMIT}"),
    ];
    let mut out = String::from("Guards (requests beyond these exit with code 2):\n");
    for l in lines {
        out.push_str("  ");
        out.push_str(&l);
        out.push('\n');
    }
    out.push_str("\nEnvironment: HCLAB_CACHE_DIR overrides --cache-dir.\n");
    out.push_str("Exit codes: 0 verified, 1 verification failure, 2 guard or usage error.");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_format_and_policy() {
        let c = Command::WordsBottom { p: 3, k: 2 };
        let a = ComputationRequest::new(c.clone());
        let b = ComputationRequest::new(c).with_format(Format::Csv).with_cache(CachePolicy::Refresh);
        assert_eq!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 64);
    }

    #[test]
    fn digest_separates_parameters() {
        let a = ComputationRequest::new(Command::WordsBottom { p: 3, k: 2 });
        let b = ComputationRequest::new(Command::WordsBottom { p: 3, k: 3 });
        assert_ne!(a.digest(), b.digest());
    }

    #[test]
    fn canonical_form_is_stable() {
        let c = Command::HeckeVerify { p: 2, n: 4 };
        assert_eq!(c.canonical(), r#"{"command":"hecke-verify","p":2,"n":4}"#);
    }

    #[test]
    fn validation_rejects_bad_requests() {
        assert!(Command::HeckeVerify { p: 4, n: 3 }.validate().is_err());
        assert!(Command::HeckeIdentity { p: 3, n: 1, k: 1, lambda: 3, mu: 1 }.validate().is_err());
        let e = Command::HeckeVerify { p: 2, n: 9 }.validate().unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(Command::ContractionCertify {
            p: 3,
            m: 2,
            backend: Backend::Invariants,
            max_degree: Some(10),
            scalars: None
        }
        .validate()
        .is_err());
        assert!(Command::WordsAdem { word: vec![] }.validate().is_err());
    }

    #[test]
    fn guards_help_mentions_every_command_family() {
        let text = guards_help();
        for word in ["hecke", "steinberg", "invariant", "words", "contraction", "chevalley"] {
            assert!(text.contains(word), "{word}");
        }
    }
}
