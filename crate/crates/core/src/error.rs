use thiserror::Error;

/// Errors surfaced by the library.
///
/// The CLI maps these onto process exit codes: domain errors exit 2,
/// conditioning errors exit 3, resource errors exit 4.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the supported domain (e.g. Re(s) < 4, r < 1).
    #[error("domain error: {0}")]
    Domain(String),

    /// The linear system is too ill-conditioned for the requested
    /// precision; the solver refuses to return an uncertified answer.
    #[error("conditioning error: {0}")]
    Conditioning(String),

    /// A brute-force reference would exceed a configured cap.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
