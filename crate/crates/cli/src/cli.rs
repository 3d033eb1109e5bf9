//! Argument parsing and process-level behaviour of the `hclab` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hclab_core::{Backend, SubgroupTag};

use crate::cache::Cache;
use crate::error::WorkbenchError;
use crate::request::{guards_help, CachePolicy, Command, ComputationRequest, Format, Shape};

#[derive(Debug, Parser)]
#[command(name = "hclab", version, about = "Exact Hecke algebra, invariant and word-model computations over F_p")]
#[command(after_help = guards_help())]
pub struct Cli {
    #[command(subcommand)]
    pub group: Group,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Result cache directory (HCLAB_CACHE_DIR takes precedence).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for degreewise computations.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value = "use")]
    pub cache: CachePolicy,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Hecke algebra relations, idempotents and differentials.
    Hecke {
        #[command(subcommand)]
        action: HeckeAction,
    },
    /// Steinberg idempotents in group rings of GL_n(F_p).
    Steinberg {
        #[command(subcommand)]
        action: SteinbergAction,
    },
    /// Invariant-theoretic models at p = 2.
    Invariants {
        #[command(subcommand)]
        action: InvariantsAction,
    },
    /// Word combinatorics of homology operations.
    Words {
        #[command(subcommand)]
        action: WordsAction,
    },
    /// Degreewise certificates for the total complex.
    Contraction {
        #[command(subcommand)]
        action: ContractionAction,
    },
    /// Counting epimorphisms and transitive representations.
    Chevalley {
        #[command(subcommand)]
        action: ChevalleyAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum HeckeAction {
    /// Presentation relations of H_n (--p --n).
    Verify(Params),
    /// Key identity at node (n, k) and corner invertibility (--p --n --k --lambda --mu).
    Identity(Params),
    /// The differential d and homotopy s at node (n, k) (--p --n --k).
    Ds(Params),
}

#[derive(Debug, Subcommand)]
pub enum SteinbergAction {
    /// Idempotency, p-integrality, and agreement with e_n on Borel cosets (--p --n).
    Check(Params),
    /// e_k e_(k+1) = e_(k+1) = e_(k+1) e_k (--p --k).
    Chain(Params),
}

#[derive(Debug, Subcommand)]
pub enum InvariantsAction {
    /// Hilbert series of the model of node (n, k), or of an invariant ring with --subgroup (--n --k --max-degree).
    Hilbert(Params),
    /// Truncated Hom between two node models (--source N,K --target N,K --max-degree).
    Hom(Params),
}

#[derive(Debug, Subcommand)]
pub enum WordsAction {
    /// Hilbert series of block words (--p --n --k --max-degree) or of free words (--free --m).
    Count(Params),
    /// Bottom degree of completely inadmissible words of length k (--p --k).
    Bottom(Params),
    /// Adem rewriting of a p = 2 word (--word 7,3,1).
    Adem(Params),
}

#[derive(Debug, Subcommand)]
pub enum ContractionAction {
    /// Exactness certificate of the total complex of total m (--p --m --backend [--max-degree] [--lambda --mu]).
    Certify(Params),
}

#[derive(Debug, Subcommand)]
pub enum ChevalleyAction {
    /// Epimorphism count, formula against enumeration (--p --m --n).
    Epi(Params),
    /// Injectivity of epimorphism orbits into transitive representations (--p --n --m).
    Transrep(Params),
}

/// Parameters shared by all commands; each command reads the ones it needs.
#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long)]
    pub backend: Option<Backend>,
    #[arg(long)]
    pub lambda: Option<u32>,
    #[arg(long)]
    pub mu: Option<u32>,
    /// Subgroup tag: trivial, borel, unipotent, parabolicI, full, weyl.
    #[arg(long)]
    pub subgroup: Option<SubgroupTag>,
    /// Source node as N,K.
    #[arg(long, value_parser = parse_node)]
    pub source: Option<(usize, usize)>,
    /// Target node as N,K.
    #[arg(long, value_parser = parse_node)]
    pub target: Option<(usize, usize)>,
    /// Comma-separated operation indices, left to right.
    #[arg(long, value_delimiter = ',')]
    pub word: Option<Vec<u32>>,
    /// Count words with no adjacency constraints.
    #[arg(long)]
    pub free: bool,
}

fn parse_node(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected N,K, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, WorkbenchError> {
    value.ok_or_else(|| WorkbenchError::Usage(format!("missing --{flag}")))
}

fn scalars(q: &Params) -> Result<Option<(u32, u32)>, WorkbenchError> {
    match (q.lambda, q.mu) {
        (None, None) => Ok(None),
        (Some(l), Some(u)) => Ok(Some((l, u))),
        _ => Err(WorkbenchError::Usage("--lambda and --mu go together".into())),
    }
}

impl Group {
    /// The canonical command. Parameters a command does not read are dropped.
    pub fn command(&self) -> Result<Command, WorkbenchError> {
        Ok(match self {
            Group::Hecke { action } => match action {
                HeckeAction::Verify(q) => Command::HeckeVerify { p: q.p, n: need(q.n, "n")? },
                HeckeAction::Identity(q) => Command::HeckeIdentity {
                    p: q.p,
                    n: need(q.n, "n")?,
                    k: need(q.k, "k")?,
                    lambda: q.lambda.unwrap_or(1),
                    mu: q.mu.unwrap_or(1),
                },
                HeckeAction::Ds(q) => Command::HeckeDs {
                    p: q.p,
                    n: need(q.n, "n")?,
                    k: need(q.k, "k")?,
                },
            },
            Group::Steinberg { action } => match action {
                SteinbergAction::Check(q) => Command::SteinbergCheck { p: q.p, n: need(q.n, "n")? },
                SteinbergAction::Chain(q) => Command::SteinbergChain { p: q.p, k: need(q.k, "k")? },
            },
            Group::Invariants { action } => match action {
                InvariantsAction::Hilbert(q) => {
                    if q.p != 2 {
                        return Err(WorkbenchError::Usage("invariant models are implemented at --p 2".into()));
                    }
                    Command::InvariantsHilbert {
                        n: need(q.n, "n")?,
                        k: if q.subgroup.is_some() { 0 } else { need(q.k, "k")? },
                        max_degree: need(q.max_degree, "max-degree")?,
                        subgroup: q.subgroup,
                    }
                }
                InvariantsAction::Hom(q) => {
                    if q.p != 2 {
                        return Err(WorkbenchError::Usage("invariant models are implemented at --p 2".into()));
                    }
                    Command::InvariantsHom {
                        source: need(q.source, "source")?,
                        target: need(q.target, "target")?,
                        max_degree: need(q.max_degree, "max-degree")?,
                    }
                }
            },
            Group::Words { action } => match action {
                WordsAction::Count(q) => Command::WordsCount {
                    p: q.p,
                    shape: if q.free {
                        Shape::Free { m: need(q.m, "m")? }
                    } else {
                        Shape::Block {
                            n: need(q.n, "n")?,
                            k: need(q.k, "k")?,
                        }
                    },
                    max_degree: need(q.max_degree, "max-degree")?,
                },
                WordsAction::Bottom(q) => Command::WordsBottom { p: q.p, k: need(q.k, "k")? },
                WordsAction::Adem(q) => {
                    if q.p != 2 {
                        return Err(WorkbenchError::Usage("Adem rewriting is implemented at --p 2".into()));
                    }
                    Command::WordsAdem {
                        word: need(q.word.clone(), "word")?,
                    }
                }
            },
            Group::Contraction { action } => match action {
                ContractionAction::Certify(q) => Command::ContractionCertify {
                    p: q.p,
                    m: need(q.m, "m")?,
                    backend: q.backend.unwrap_or(Backend::HeckeRegular),
                    max_degree: q.max_degree,
                    scalars: scalars(q)?,
                },
            },
            Group::Chevalley { action } => match action {
                ChevalleyAction::Epi(q) => Command::ChevalleyEpi {
                    p: q.p,
                    m: need(q.m, "m")?,
                    n: need(q.n, "n")?,
                },
                ChevalleyAction::Transrep(q) => Command::ChevalleyTransrep {
                    p: q.p,
                    n: need(q.n, "n")?,
                    m: need(q.m, "m")?,
                },
            },
        })
    }
}

fn report_error(e: &WorkbenchError, out: Option<&PathBuf>) -> i32 {
    let mut bytes = serde_json::to_vec_pretty(&e.report()).expect("values serialize");
    bytes.push(b'\n');
    eprintln!("hclab: {e}");
    emit(&bytes, out);
    e.exit_code()
}

fn emit(bytes: &[u8], out: Option<&PathBuf>) {
    match out {
        Some(path) => {
            if let Err(err) = std::fs::write(path, bytes) {
                eprintln!("hclab: cannot write {}: {err}", path.display());
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(bytes);
            let _ = stdout.flush();
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let out = cli.out.as_ref();
    let command = match cli.group.command() {
        Ok(c) => c,
        Err(e) => return report_error(&e, out),
    };
    let request = ComputationRequest {
        command,
        format: cli.format,
        cache: cli.cache,
    };
    let cache = Cache::resolve(cli.cache_dir.as_deref());
    let run = || crate::run(&request, cache.as_ref());
    let result = match cli.jobs {
        Some(0) => Err(WorkbenchError::Usage("--jobs must be at least 1".into())),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(WorkbenchError::Usage(format!("cannot start {jobs} workers: {e}"))),
        },
        None => run(),
    };
    match result {
        Ok(output) => {
            for notice in &output.notices {
                eprintln!("hclab: {notice}");
            }
            emit(&output.bytes, out);
            if output.verified {
                0
            } else {
                1
            }
        }
        Err(e) => report_error(&e, out),
    }
}
