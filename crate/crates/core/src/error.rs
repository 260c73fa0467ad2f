use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands that do not belong together (wrong arity, mixed moduli, bad table shape).
    #[error("structural error: {0}")]
    Structural(String),

    /// Malformed literal or document.
    #[error("parse error: {0}")]
    Parse(String),

    /// The requested combination is not supported (e.g. element arithmetic in C*).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A precondition of the operation is violated by otherwise well-formed input.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A resource guard rejected the input as too large.
    #[error("resource guard: {what} needs {needed}, limit is {limit}")]
    Resource { what: String, needed: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Environment variable that replaces the limit of every resource guard.
pub const GUARD_ENV: &str = "TWISTALG_GUARD_MAX";

/// Checks `needed` against `default_limit`, or against `TWISTALG_GUARD_MAX` when set.
pub fn guard(what: &str, needed: u128, default_limit: u128) -> Result<()> {
    let limit = std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u128>().ok())
        .unwrap_or(default_limit);
    if needed > limit {
        return Err(Error::Resource { what: what.to_string(), needed, limit });
    }
    Ok(())
}
