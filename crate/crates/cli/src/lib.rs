//! Command-line workbench: request parsing and validation, dispatch to the
//! compute modules, a content-addressed result cache, and JSON/CSV reports.

pub mod cache;
pub mod cli;
pub mod dispatch;
pub mod error;
pub mod render;
pub mod request;

pub use cache::{Cache, CacheEntry, Lookup, CACHE_DIR_ENV};
pub use dispatch::{compute, Outcome};
pub use error::WorkbenchError;
pub use request::{CachePolicy, Command, ComputationRequest, Format, Shape, ARTIFACT_VERSION};

/// Result of one workbench run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub bytes: Vec<u8>,
    pub verified: bool,
    pub cache_hit: bool,
    pub digest: String,
    /// Cache diagnostics; never part of the report bytes.
    pub notices: Vec<String>,
}

/// Validates, consults the cache, computes if needed, and renders.
pub fn run(request: &ComputationRequest, cache: Option<&Cache>) -> Result<RunOutput, WorkbenchError> {
    request.command.validate()?;
    let digest = request.digest();
    let mut notices = Vec::new();
    let cache = cache.filter(|_| request.cache != CachePolicy::Off);

    if let (Some(c), CachePolicy::Use) = (cache, request.cache) {
        match c.load(&digest) {
            Lookup::Hit(entry) => {
                notices.push(format!("cache hit {digest}"));
                return Ok(RunOutput {
                    bytes: render::render(&entry.payload, request.format)?,
                    verified: entry.verified,
                    cache_hit: true,
                    digest,
                    notices,
                });
            }
            Lookup::Evicted(reason) => {
                notices.push(format!("warning: evicted corrupt cache entry {digest}: {reason}"));
            }
            Lookup::Stale => notices.push(format!("ignoring cache entry {digest} from another version")),
            Lookup::Miss => {}
        }
    }

    let outcome = compute(&request.command)?;
    if let Some(c) = cache {
        let entry = CacheEntry::new(digest.clone(), outcome.verified, outcome.payload.clone());
        match c.store(&entry) {
            Ok(_) => notices.push(format!("cache stored {digest}")),
            Err(e) => notices.push(format!("warning: could not write cache entry {digest}: {e}")),
        }
    }
    Ok(RunOutput {
        bytes: render::render(&outcome.payload, request.format)?,
        verified: outcome.verified,
        cache_hit: false,
        digest,
        notices,
    })
}
