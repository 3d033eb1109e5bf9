use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum WorkbenchError {
    #[error("{0}")]
    Usage(String),
    #[error("guard exceeded: {what} estimate {estimate} > limit {limit}")]
    Guard { what: String, estimate: u128, limit: u128 },
    #[error(transparent)]
    Core(hclab_core::Error),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl From<hclab_core::Error> for WorkbenchError {
    fn from(e: hclab_core::Error) -> Self {
        match e {
            hclab_core::Error::Guard { what, estimate, limit } => WorkbenchError::Guard { what, estimate, limit },
            hclab_core::Error::InvalidArgument(msg) => WorkbenchError::Usage(msg),
            hclab_core::Error::NotPrime(p) => WorkbenchError::Usage(format!("{p} is not prime")),
            other => WorkbenchError::Core(other),
        }
    }
}

/// Integers beyond u64 are written as decimal strings.
fn big(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

impl WorkbenchError {
    pub fn exit_code(&self) -> i32 {
        match self {
            WorkbenchError::Usage(_) | WorkbenchError::Guard { .. } => 2,
            WorkbenchError::Core(_) | WorkbenchError::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            WorkbenchError::Usage(_) => "usage",
            WorkbenchError::Guard { .. } => "guard",
            WorkbenchError::Core(_) => "computation",
            WorkbenchError::Io(_) => "io",
        }
    }

    /// Structured error report.
    pub fn report(&self) -> Value {
        let mut v = json!({
            "error": self.kind(),
            "message": self.to_string(),
        });
        if let WorkbenchError::Guard { what, estimate, limit } = self {
            v["guard"] = json!(what);
            v["estimate"] = big(*estimate);
            v["limit"] = big(*limit);
        }
        v
    }
}
