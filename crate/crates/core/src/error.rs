use thiserror::Error;

/// Errors produced by the library.
///
/// `SizeCap` marks enumeration requests past the configured desk-scale
/// limits; `Domain` marks violated preconditions (mismatched ground sets,
/// crossing input where a non-crossing partition is required, out-of-range
/// words, non-positive scale factors, and so on).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: n = {n} exceeds the enumeration cap {cap} (NCKIT_MAX_N raises it)")]
    SizeCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
